"""Tree decompositions: validation, nice form, clique trees, min-fill."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError
from .graph import _check_peo

NICE_SIZE_CONSTANT = 8  # audited bound: nodes <= 8 * max(1, n) * max(1, width)


class TreeDecomposition:
    """Bags indexed by node id plus a tree over the node ids."""

    __slots__ = ("bags", "edges", "_adj")

    def __init__(self, bags, edges):
        bags = tuple(frozenset(b) for b in bags)
        edges = tuple(tuple(sorted(e)) for e in edges)
        nb = len(bags)
        if nb == 0:
            raise InputError("a tree decomposition needs at least one bag")
        if len(edges) != nb - 1:
            raise InputError("bag tree must have exactly #bags - 1 edges")
        adj = [[] for _ in range(nb)]
        for a, b in edges:
            if not (0 <= a < nb and 0 <= b < nb) or a == b:
                raise InputError(f"bad bag-tree edge ({a},{b})")
            adj[a].append(b)
            adj[b].append(a)
        seen = [False] * nb
        stack = [0]
        seen[0] = True
        cnt = 1
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if not seen[w]:
                    seen[w] = True
                    cnt += 1
                    stack.append(w)
        if cnt != nb:
            raise InputError("bag tree is not connected")
        object.__setattr__(self, "bags", bags)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "_adj", tuple(tuple(sorted(a)) for a in adj))

    def __setattr__(self, name, value):
        raise AttributeError("TreeDecomposition is immutable")

    @property
    def width(self):
        return max(len(b) for b in self.bags) - 1

    @property
    def adj(self):
        return self._adj

    def __repr__(self):
        return f"TreeDecomposition(bags={len(self.bags)}, width={self.width})"


@dataclass(frozen=True)
class TdViolation:
    kind: str  # 'missing-vertex' | 'uncovered-edge' | 'disconnected-trace'
    witness: object


def validate(g, td):
    """None if td is a tree decomposition of g, else the first violation."""
    covered = set().union(*td.bags) if td.bags else set()
    for v in range(g.n):
        if v not in covered:
            return TdViolation("missing-vertex", v)
    for u, v in sorted(g.edges):
        if not any(u in b and v in b for b in td.bags):
            return TdViolation("uncovered-edge", (u, v))
    for v in range(g.n):
        nodes = [i for i, b in enumerate(td.bags) if v in b]
        if not nodes:
            return TdViolation("missing-vertex", v)
        inside = set(nodes)
        seen = {nodes[0]}
        stack = [nodes[0]]
        while stack:
            i = stack.pop()
            for j in td.adj[i]:
                if j in inside and j not in seen:
                    seen.add(j)
                    stack.append(j)
        if len(seen) != len(nodes):
            return TdViolation("disconnected-trace", v)
    return None


class NiceTreeDecomposition:
    """Rooted decomposition whose nodes are leaf/forget/introduce/join.

    vertex[i] is the forgotten or introduced vertex for those kinds, -1
    otherwise.  parent[i] is -1 exactly for the root.
    """

    __slots__ = ("bags", "parent", "kind", "vertex", "root", "_children")

    def __init__(self, bags, parent, kind, vertex, root):
        self.bags = tuple(frozenset(b) for b in bags)
        self.parent = tuple(parent)
        self.kind = tuple(kind)
        self.vertex = tuple(vertex)
        self.root = root
        self._children = None
        n = len(self.bags)
        if not (len(self.parent) == len(self.kind) == len(self.vertex) == n):
            raise InputError("field length mismatch")
        if not 0 <= root < n or self.parent[root] != -1:
            raise InputError("bad root")

    def children(self):
        if self._children is None:
            ch = [[] for _ in self.bags]
            for i, p in enumerate(self.parent):
                if p != -1:
                    ch[p].append(i)
            self._children = tuple(tuple(c) for c in ch)
        return self._children

    @property
    def n_nodes(self):
        return len(self.bags)

    @property
    def width(self):
        return max(len(b) for b in self.bags) - 1

    def __repr__(self):
        return (
            f"NiceTreeDecomposition(nodes={self.n_nodes}, width={self.width})"
        )


def to_tree_decomposition(nt):
    edges = [
        (i, p) for i, p in enumerate(nt.parent) if p != -1
    ]
    return TreeDecomposition(nt.bags, edges)


def _contract_comparable(bags, adj, track=None):
    """Merge adjacent comparable bags until none remain.

    bags: list[set], adj: list[set] mutated in place.  Dead nodes get bag
    None.  `track` is a node id to follow through merges; the surviving
    representative is returned.
    """
    changed = True
    while changed:
        changed = False
        for u in range(len(bags)):
            if bags[u] is None:
                continue
            for v in sorted(adj[u]):
                if bags[v] is None:
                    continue
                if bags[u] <= bags[v] or bags[v] <= bags[u]:
                    # merge u into v, keeping the larger bag on v
                    if not bags[u] <= bags[v]:
                        bags[v] = set(bags[u])
                    adj[v] |= adj[u]
                    adj[v].discard(u)
                    adj[v].discard(v)
                    for w in adj[u]:
                        if w != v:
                            adj[w].discard(u)
                            adj[w].add(v)
                    bags[u] = None
                    adj[u] = set()
                    if track is not None and track == u:
                        track = v
                    changed = True
                    break
            if changed:
                break
    return track


class _NiceBuilder:
    def __init__(self):
        self.bags = []
        self.parent = []
        self.kind = []
        self.vertex = []

    def new(self, bag, kind, vertex=-1):
        i = len(self.bags)
        self.bags.append(frozenset(bag))
        self.parent.append(-1)
        self.kind.append(kind)
        self.vertex.append(vertex)
        return i

    def above(self, child, bag, kind, vertex=-1):
        i = self.new(bag, kind, vertex)
        self.parent[child] = i
        return i

    def leaf_chain(self, bag):
        vs = sorted(bag)
        if not vs:
            raise InputError("cannot build a nice form over an empty leaf bag")
        cur = self.new({vs[0]}, "leaf")
        acc = {vs[0]}
        for x in vs[1:]:
            acc.add(x)
            cur = self.above(cur, acc, "introduce", x)
        return cur

    def chain(self, cur, frombag, tobag):
        acc = set(frombag)
        for x in sorted(frombag - tobag):
            acc.discard(x)
            cur = self.above(cur, acc, "forget", x)
        for x in sorted(tobag - frombag):
            acc.add(x)
            cur = self.above(cur, acc, "introduce", x)
        return cur

    def finish(self, root):
        return NiceTreeDecomposition(
            self.bags, self.parent, self.kind, self.vertex, root
        )


def make_nice(td):
    """Nice form of a valid tree decomposition, same width.

    Comparable adjacent bags are contracted first so the node count stays
    linear; the root is the contraction representative of bag-tree node 0.
    Forget/introduce chains between bags run in increasing vertex order,
    forgets below introduces, and branching nodes are binarized into joins.
    """
    bags = [set(b) for b in td.bags]
    adj = [set(a) for a in td.adj]
    root0 = _contract_comparable(bags, adj, track=0)
    alive = [i for i in range(len(bags)) if bags[i] is not None]
    bplan = {i: frozenset(bags[i]) for i in alive}

    b = _NiceBuilder()
    parentb = {root0: -1}
    order = []
    stack = [(root0, False)]
    while stack:
        v, done = stack.pop()
        if done:
            order.append(v)
            continue
        stack.append((v, True))
        for w in sorted(adj[v]):
            if w != parentb[v]:
                parentb[w] = v
                stack.append((w, False))
    tops = {}
    for v in order:
        kids = [w for w in sorted(adj[v]) if w != parentb[v]]
        if not kids:
            tops[v] = b.leaf_chain(bplan[v])
            continue
        branch_tops = []
        for w in kids:
            branch_tops.append(b.chain(tops[w], bplan[w], bplan[v]))
        top = branch_tops[0]
        for nxt in branch_tops[1:]:
            j = b.new(bplan[v], "join")
            b.parent[top] = j
            b.parent[nxt] = j
            top = j
        tops[v] = top
    return b.finish(tops[root0])


def path_decomposition_from_dfs(t):
    """Path decomposition whose bags are the root-to-vertex paths of a DFS tree."""
    bags = []
    for v in t.preorder:
        bag = []
        u = v
        while u != -1:
            bag.append(u)
            u = t.parent[u]
        bags.append(frozenset(bag))
    edges = [(i, i + 1) for i in range(len(bags) - 1)]
    return TreeDecomposition(bags, edges)


def clique_tree(g, peo):
    """Clique tree of a chordal graph: every bag induces a maximal clique."""
    _check_peo(g, peo)
    if g.n == 0:
        return TreeDecomposition((frozenset(),), ())
    pos = peo.position
    bags = []
    adj = [set() for _ in range(g.n)]
    roots = []
    for v in range(g.n):
        later = [w for w in g.adj[v] if pos[w] > pos[v]]
        bags.append(set(later) | {v})
    for v in range(g.n):
        later = [w for w in g.adj[v] if pos[w] > pos[v]]
        if later:
            p = min(later, key=lambda w: pos[w])
            adj[v].add(p)
            adj[p].add(v)
        else:
            roots.append(v)
    for a, bnode in zip(roots, roots[1:]):
        adj[a].add(bnode)
        adj[bnode].add(a)
    _contract_comparable(bags, adj)
    return _build_td(bags, adj)


def _build_td(bags, adj):
    alive = [i for i in range(len(bags)) if bags[i] is not None]
    compact = {o: i for i, o in enumerate(alive)}
    out_bags = [frozenset(bags[o]) for o in alive]
    out_edges = set()
    for o in alive:
        for w in adj[o]:
            if bags[w] is not None:
                out_edges.add(tuple(sorted((compact[o], compact[w]))))
    return TreeDecomposition(out_bags, sorted(out_edges))


def min_fill_order(g):
    """Min-fill elimination order; ties by degree, then by vertex id.

    Also returns the bag met at each elimination ({v} plus its remaining,
    filled neighborhood).
    """
    work = [set(g.adj[v]) for v in range(g.n)]
    remaining = set(range(g.n))
    order = []
    bags = []
    while remaining:
        best = None
        for v in sorted(remaining):
            nbrs = work[v]
            fill = 0
            ns = sorted(nbrs)
            for i, a in enumerate(ns):
                wa = work[a]
                for c in ns[i + 1 :]:
                    if c not in wa:
                        fill += 1
            cand = (fill, len(nbrs), v)
            if best is None or cand < best:
                best = cand
        v = best[2]
        bags.append(work[v] | {v})
        order.append(v)
        nbrs = sorted(work[v])
        for i, a in enumerate(nbrs):
            work[a].discard(v)
            for c in nbrs[i + 1 :]:
                if c not in work[a]:
                    work[a].add(c)
                    work[c].add(a)
        remaining.discard(v)
    return order, bags


def heuristic_decomposition(g):
    """Min-fill elimination ordering turned into a valid tree decomposition.

    No width guarantee, always valid.
    """
    if g.n == 0:
        return TreeDecomposition((frozenset(),), ())
    order, bags = min_fill_order(g)
    elim_pos = {v: i for i, v in enumerate(order)}
    bag_of = {v: i for i, v in enumerate(order)}
    adj = [set() for _ in bags]
    roots = []
    for v in order:
        later = [w for w in (bags[bag_of[v]] - {v}) if elim_pos[w] > elim_pos[v]]
        if later:
            p = min(later, key=lambda w: elim_pos[w])
            adj[bag_of[v]].add(bag_of[p])
            adj[bag_of[p]].add(bag_of[v])
        else:
            roots.append(bag_of[v])
    for a, bnode in zip(roots, roots[1:]):
        adj[a].add(bnode)
        adj[bnode].add(a)
    bags = [set(b) for b in bags]
    _contract_comparable(bags, adj)
    return _build_td(bags, adj)


def root_and_augment(nt, r):
    """Add vertex r to every bag and a fresh leaf {r} under each old leaf.

    Old leaf bags {v} become introduce(v) nodes above the new leaves; every
    bag of the result contains r and the width grows by exactly one.
    """
    for bag in nt.bags:
        if r in bag:
            raise InputError(f"vertex {r} already present in a bag")
    bags = [set(bag) | {r} for bag in nt.bags]
    parent = list(nt.parent)
    kind = list(nt.kind)
    vertex = list(nt.vertex)
    for i in range(nt.n_nodes):
        if nt.kind[i] == "leaf":
            (v,) = nt.bags[i]
            kind[i] = "introduce"
            vertex[i] = v
            bags.append({r})
            parent.append(i)
            kind.append("leaf")
            vertex.append(-1)
    return NiceTreeDecomposition(bags, parent, kind, vertex, nt.root)


def audit_nice(g, nt):
    """None if nt is a well-formed nice tree decomposition of g, else a reason."""
    bad = validate(g, to_tree_decomposition(nt))
    if bad is not None:
        return f"not a tree decomposition: {bad}"
    ch = nt.children()
    for i in range(nt.n_nodes):
        kids = ch[i]
        kind = nt.kind[i]
        bag = nt.bags[i]
        if kind == "leaf":
            if kids:
                return f"leaf {i} has children"
            if len(bag) != 1:
                return f"leaf {i} bag size {len(bag)}"
        elif kind in ("forget", "introduce"):
            if len(kids) != 1:
                return f"{kind} node {i} has {len(kids)} children"
            cbag = nt.bags[kids[0]]
            v = nt.vertex[i]
            if kind == "forget":
                if bag != cbag - {v} or v not in cbag:
                    return f"forget node {i} bag mismatch"
            else:
                if bag != cbag | {v} or v in cbag:
                    return f"introduce node {i} bag mismatch"
        elif kind == "join":
            if len(kids) != 2:
                return f"join node {i} has {len(kids)} children"
            if any(nt.bags[k] != bag for k in kids):
                return f"join node {i} child bag mismatch"
        else:
            return f"unknown kind {kind!r}"
    bound = NICE_SIZE_CONSTANT * max(1, g.n) * max(1, nt.width)
    if nt.n_nodes > bound:
        return f"node count {nt.n_nodes} exceeds {bound}"
    return None
