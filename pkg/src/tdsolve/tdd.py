"""Treedepth decompositions: rooted forests whose closure covers the graph."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError, InternalError
from .graph import connected_components, induced_subgraph


class TreedepthDecomposition:
    """A rooted forest whose nodes may carry graph-vertex labels.

    Nodes are 0..k-1; parent[i] is -1 for roots.  label[i] is the graph
    vertex embedded at node i, or -1 for an unlabeled node.  Labels are
    injective.  Unlabeled nodes only occur in decompositions that are still
    trivially improvable.
    """

    __slots__ = ("parent", "label")

    def __init__(self, parent, label):
        parent = tuple(parent)
        label = tuple(label)
        k = len(parent)
        if len(label) != k:
            raise InputError("parent and label length mismatch")
        seen = set()
        for lab in label:
            if lab < -1:
                raise InputError(f"bad label {lab}")
            if lab >= 0:
                if lab in seen:
                    raise InputError(f"label {lab} used twice")
                seen.add(lab)
        for i, p in enumerate(parent):
            if p != -1 and not 0 <= p < k:
                raise InputError(f"parent of node {i} out of range")
        # acyclicity: walk every parent chain with a visited set
        state = [0] * k  # 0 unseen, 1 on stack, 2 done
        for i in range(k):
            path = []
            v = i
            while v != -1 and state[v] == 0:
                state[v] = 1
                path.append(v)
                v = parent[v]
            if v != -1 and state[v] == 1:
                raise InputError("parent links contain a cycle")
            for u in path:
                state[u] = 2
        object.__setattr__(self, "parent", parent)
        object.__setattr__(self, "label", label)

    def __setattr__(self, name, value):
        raise AttributeError("TreedepthDecomposition is immutable")

    @classmethod
    def from_vertex_parents(cls, parents):
        """Build a fully labeled decomposition from {vertex: parent or None}."""
        verts = sorted(parents)
        idx = {v: i for i, v in enumerate(verts)}
        parent = []
        for v in verts:
            p = parents[v]
            parent.append(-1 if p is None else idx[p])
        return cls(parent, verts)

    @property
    def n_nodes(self):
        return len(self.parent)

    def roots(self):
        return [i for i, p in enumerate(self.parent) if p == -1]

    def children(self):
        ch = [[] for _ in range(self.n_nodes)]
        for i, p in enumerate(self.parent):
            if p != -1:
                ch[p].append(i)
        return ch

    def depths(self):
        """Depth of every node in nodes; roots have depth 1."""
        k = self.n_nodes
        depth = [0] * k
        for i in range(k):
            chain = []
            v = i
            while v != -1 and depth[v] == 0:
                chain.append(v)
                v = self.parent[v]
            base = 0 if v == -1 else depth[v]
            for u in reversed(chain):
                base += 1
                depth[u] = base
        return depth

    def height(self):
        if self.n_nodes == 0:
            return 0
        return max(self.depths())

    def node_of_vertex(self):
        return {lab: i for i, lab in enumerate(self.label) if lab >= 0}

    def vertex_parents(self):
        """Vertex-level parent map; requires every node to be labeled."""
        if any(lab < 0 for lab in self.label):
            raise InputError("decomposition has unlabeled nodes")
        out = {}
        for i, lab in enumerate(self.label):
            p = self.parent[i]
            out[lab] = None if p == -1 else self.label[p]
        return out

    def __eq__(self, other):
        if isinstance(other, TreedepthDecomposition):
            return self.parent == other.parent and self.label == other.label
        return NotImplemented

    def __repr__(self):
        return f"TreedepthDecomposition(nodes={self.n_nodes}, height={self.height()})"


@dataclass(frozen=True)
class Closure:
    """Ancestor/descendant pairs of labeled nodes, as graph-vertex pairs."""

    edges: frozenset


@dataclass(frozen=True)
class TddViolation:
    kind: str  # 'missing-vertex' | 'unknown-vertex' | 'uncovered-edge'
    witness: object


def closure(t):
    """Closure of the forest restricted to labeled nodes."""
    pairs = set()
    for i, lab in enumerate(t.label):
        if lab < 0:
            continue
        v = t.parent[i]
        while v != -1:
            a = t.label[v]
            if a >= 0:
                pairs.add((min(a, lab), max(a, lab)))
            v = t.parent[v]
    return Closure(frozenset(pairs))


def validate_tdd(g, t):
    """None if t is a treedepth decomposition of g, else a TddViolation."""
    node_of = {}
    for i, lab in enumerate(t.label):
        if lab >= g.n:
            return TddViolation("unknown-vertex", lab)
        if lab >= 0:
            node_of[lab] = i
    for v in range(g.n):
        if v not in node_of:
            return TddViolation("missing-vertex", v)
    # ancestor sets per node, as bitmask over node ids
    k = t.n_nodes
    anc = [0] * k
    order = []
    ch = t.children()
    stack = [r for r in t.roots()]
    while stack:
        v = stack.pop()
        order.append(v)
        for c in ch[v]:
            anc[c] = anc[v] | (1 << v)
            stack.append(c)
    for u, v in sorted(g.edges):
        nu, nv = node_of[u], node_of[v]
        if not (anc[nu] >> nv) & 1 and not (anc[nv] >> nu) & 1:
            return TddViolation("uncovered-edge", (u, v))
    return None


def height(t):
    """Height in levels; a single node has height 1, the empty forest 0."""
    return t.height()


def strip_improvable(g, t, keep=None):
    """Remove all unlabeled nodes without increasing the height.

    Unlabeled roots are deleted and unlabeled internal nodes are contracted
    into their parents, which amounts to reparenting every kept node onto its
    nearest kept ancestor.  `keep` optionally restricts which labels count as
    kept (used when splitting a decomposition across components).
    """
    kept = [
        lab >= 0 and (keep is None or lab in keep) for lab in t.label
    ]
    idx = {}
    new_labels = []
    for i in range(t.n_nodes):
        if kept[i]:
            idx[i] = len(new_labels)
            new_labels.append(t.label[i])
    parent = []
    for i in range(t.n_nodes):
        if not kept[i]:
            continue
        p = t.parent[i]
        while p != -1 and not kept[p]:
            p = t.parent[p]
        parent.append(-1 if p == -1 else idx[p])
    return TreedepthDecomposition(parent, new_labels)


def is_nice(g, t):
    """None if t is nice for g, else the id of a violating node.

    Nice means: no unlabeled nodes, and the vertices of every subtree induce
    a connected subgraph of g.
    """
    for i, lab in enumerate(t.label):
        if lab < 0:
            return i
    ch = t.children()
    subtree = [None] * t.n_nodes
    for i in _postorder(t.parent, ch):
        vs = {t.label[i]}
        for c in ch[i]:
            vs |= subtree[c]
        subtree[i] = vs
        sub, _ = induced_subgraph(g, vs)
        if len(connected_components(sub)) > 1:
            return i
    return None


def _postorder(parent, ch):
    roots = [i for i, p in enumerate(parent) if p == -1]
    out = []
    stack = [(r, False) for r in reversed(roots)]
    while stack:
        v, done = stack.pop()
        if done:
            out.append(v)
        else:
            stack.append((v, True))
            for c in reversed(ch[v]):
                stack.append((c, False))
    return out


def make_nice_tdd(g, t):
    """Rebuild t into a nice decomposition of no greater height.

    Repeatedly takes the deepest node x whose subtree induces a disconnected
    subgraph, splits that subgraph into components, strips each component's
    part of the subtree down to its own vertices, and re-hangs each part
    below the deepest ancestor of x that has an edge into it.  Components are
    processed in order of their smallest vertex; ties among violating nodes
    go to the smallest vertex id.
    """
    if g.n == 0:
        raise InputError("empty graph")
    if len(connected_components(g)) != 1:
        raise InputError("make_nice_tdd requires a connected graph")
    if validate_tdd(g, t) is not None:
        raise InputError("decomposition does not validate")
    t = strip_improvable(g, t)
    parents = t.vertex_parents()
    adj = g.adj

    for _ in range(g.n * g.n + 10):
        childmap = {v: [] for v in parents}
        roots = []
        for v, p in parents.items():
            if p is None:
                roots.append(v)
            else:
                childmap[p].append(v)
        depth = {}
        stack = [(r, 1) for r in roots]
        order = []
        while stack:
            v, d = stack.pop()
            depth[v] = d
            order.append(v)
            for c in childmap[v]:
                stack.append((c, d + 1))
        # subtree vertex sets, deepest-first scan for a violation
        subtree = {}
        for v in reversed(order):
            vs = {v}
            for c in childmap[v]:
                vs |= subtree[c]
            subtree[v] = vs
        violator = None
        for v in sorted(parents, key=lambda v: (-depth[v], v)):
            sub, _ = induced_subgraph(g, subtree[v])
            if len(connected_components(sub)) > 1:
                violator = v
                break
        if violator is None:
            return TreedepthDecomposition.from_vertex_parents(parents)

        x = violator
        sub, old_of_new = induced_subgraph(g, subtree[x])
        comps = [
            sorted(old_of_new[i] for i in comp)
            for comp in connected_components(sub)
        ]
        # ancestors of x from the root down to x's parent
        path = []
        v = parents[x]
        while v is not None:
            path.append(v)
            v = parents[v]
        path.reverse()
        if not path:
            raise InternalError("violating root in a connected graph")
        sub_parent = {v: parents[v] for v in subtree[x]}
        sub_parent[x] = None
        for comp in comps:
            comp_set = set(comp)
            # strip this component's piece down to its own vertices
            piece = {}
            piece_roots = []
            for v in comp:
                p = sub_parent[v]
                while p is not None and p not in comp_set:
                    p = sub_parent[p]
                piece[v] = p
                if p is None:
                    piece_roots.append(v)
            if len(piece_roots) != 1:
                raise InternalError("component piece is not a single tree")
            rootc = piece_roots[0]
            # deepest ancestor of x with an edge into the component
            y = None
            for a in path:
                if any(w in comp_set for w in adj[a]):
                    y = a
            if y is None:
                raise InternalError("component with no ancestor attachment")
            piece[rootc] = y
            parents.update(piece)
    raise InternalError("nice-decomposition rebuild did not terminate")
