"""Partial decompositions: the table entries of the dynamic program.

A partial decomposition is a rooted forest whose nodes either carry a
boundary vertex as a name or are anonymous, together with a height value per
node that strictly decreases from ancestors to descendants.  Entries are
kept in canonical form so that structural equality of the nested encodings
coincides with equivalence (isomorphism fixing the named nodes and the
heights).
"""
from __future__ import annotations

from .errors import InputError


class Forest:
    """Rooted-forest skeleton: parent links and (possibly anonymous) labels.

    Nodes are stored in preorder, so parent[i] < i for every non-root.
    Labels are graph vertices (>= 0) or -1 for anonymous nodes.
    """

    __slots__ = ("parent", "label", "n", "_children", "_anc", "_desc", "_bylabel")

    def __init__(self, parent, label):
        self.parent = tuple(parent)
        self.label = tuple(label)
        self.n = len(self.parent)
        self._children = None
        self._anc = None
        self._desc = None
        self._bylabel = None

    @property
    def children(self):
        if self._children is None:
            ch = [[] for _ in range(self.n)]
            for i, p in enumerate(self.parent):
                if p != -1:
                    ch[p].append(i)
            self._children = tuple(tuple(c) for c in ch)
        return self._children

    def roots(self):
        return [i for i, p in enumerate(self.parent) if p == -1]

    @property
    def anc_masks(self):
        """Strict-ancestor bitmask per node."""
        if self._anc is None:
            anc = [0] * self.n
            for i, p in enumerate(self.parent):
                if p != -1:
                    anc[i] = anc[p] | (1 << p)
            self._anc = anc
        return self._anc

    @property
    def desc_masks(self):
        """Strict-descendant bitmask per node."""
        if self._desc is None:
            desc = [0] * self.n
            for i in range(self.n - 1, -1, -1):
                p = self.parent[i]
                if p != -1:
                    desc[p] |= desc[i] | (1 << i)
            self._desc = desc
        return self._desc

    @property
    def pos_of_label(self):
        if self._bylabel is None:
            self._bylabel = {
                lab: i for i, lab in enumerate(self.label) if lab >= 0
            }
        return self._bylabel


class PartialDecomposition(Forest):
    """Canonical (forest, boundary, heights) triple.

    Use PartialDecomposition.make to build one from raw arrays; the
    constructor trusts that its arguments are already canonical.
    """

    __slots__ = ("h", "key", "boundary")

    def __init__(self, parent, label, h, key):
        super().__init__(parent, label)
        self.h = tuple(h)
        self.key = key
        self.boundary = frozenset(lab for lab in self.label if lab >= 0)

    @classmethod
    def make(cls, parent, label, h):
        """Canonicalize raw arrays; returns (pd, perm) with perm[old] = new."""
        new_parent, new_label, new_h, perm, key = _canonical_arrays(
            parent, label, h
        )
        return cls(new_parent, new_label, new_h, key), perm

    @classmethod
    def singleton(cls, vertex, h=1):
        return cls.make([-1], [vertex], [h])[0]

    @property
    def height(self):
        if not self.parent:
            return 0
        return max(self.h[r] for r in self.roots())

    def check(self):
        """Raise InputError if any entry invariant is broken (test helper)."""
        for i, p in enumerate(self.parent):
            if p != -1 and self.h[p] <= self.h[i]:
                raise InputError(f"h not decreasing at edge {p}->{i}")
        for i, ch in enumerate(self.children):
            if not ch and self.label[i] < 0:
                raise InputError(f"anonymous leaf at node {i}")
            if ch and self.h[i] < 1 + max(self.h[c] for c in ch):
                raise InputError(f"h below subtree depth at node {i}")
        if any(h < 1 for h in self.h):
            raise InputError("h values must be positive")

    def __eq__(self, other):
        if isinstance(other, PartialDecomposition):
            return self.key == other.key
        return NotImplemented

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return (
            f"PartialDecomposition(nodes={self.n}, "
            f"boundary={sorted(self.boundary)}, height={self.height})"
        )


def _canonical_arrays(parent, label, h):
    n = len(parent)
    children = [[] for _ in range(n)]
    roots = []
    for i, p in enumerate(parent):
        if p == -1:
            roots.append(i)
        else:
            children[p].append(i)
    enc = [None] * n
    stack = [(r, False) for r in roots]
    while stack:
        v, done = stack.pop()
        if done:
            enc[v] = (
                label[v],
                h[v],
                tuple(sorted(enc[c] for c in children[v])),
            )
        else:
            stack.append((v, True))
            stack.extend((c, False) for c in children[v])
    getter = enc.__getitem__
    perm = [0] * n
    new_parent = []
    new_label = []
    new_h = []
    stack = [(r, -1) for r in sorted(roots, key=getter, reverse=True)]
    while stack:
        v, p_new = stack.pop()
        i = len(new_parent)
        perm[v] = i
        new_parent.append(p_new)
        new_label.append(label[v])
        new_h.append(h[v])
        for c in sorted(children[v], key=getter, reverse=True):
            stack.append((c, i))
    key = tuple(sorted(enc[r] for r in roots))
    return new_parent, new_label, new_h, perm, key


def canonical_key(pd):
    """Canonical key of a partial decomposition; equal keys <=> equivalent."""
    return pd.key


def restrict(pd, x_new):
    """Restriction to a smaller boundary.

    Iteratively deletes childless nodes whose name is not in x_new (anonymous
    childless nodes included), anonymizes surviving names outside x_new and
    re-canonicalizes.  Returns (restricted, survivors) where survivors[i] is
    the node of `pd` that node i of the restriction came from.
    """
    x_new = frozenset(x_new)
    if not x_new <= pd.boundary:
        raise InputError("restriction target is not a subset of the boundary")
    n = pd.n
    alive = [True] * n
    nchild = [len(c) for c in pd.children]
    queue = [
        i
        for i in range(n)
        if nchild[i] == 0 and pd.label[i] not in x_new
    ]
    while queue:
        v = queue.pop()
        alive[v] = False
        p = pd.parent[v]
        if p != -1:
            nchild[p] -= 1
            if nchild[p] == 0 and pd.label[p] not in x_new:
                queue.append(p)
    old_ids = [i for i in range(n) if alive[i]]
    compact = {o: i for i, o in enumerate(old_ids)}
    parent = []
    label = []
    h = []
    for o in old_ids:
        p = pd.parent[o]
        parent.append(-1 if p == -1 else compact[p])
        lab = pd.label[o]
        label.append(lab if lab in x_new else -1)
        h.append(pd.h[o])
    out, perm = PartialDecomposition.make(parent, label, h)
    survivors = [0] * len(old_ids)
    for j, o in enumerate(old_ids):
        survivors[perm[j]] = o
    return out, tuple(survivors)


def decomposition_restriction(vertex_parents, x=None):
    """Partial decomposition carried by a fully labeled decomposition.

    Heights are the subtree heights of the tree itself; the boundary is the
    full vertex set unless `x` is given, in which case the result is
    restricted to `x`.
    """
    verts = sorted(vertex_parents)
    idx = {v: i for i, v in enumerate(verts)}
    parent = [
        -1 if vertex_parents[v] is None else idx[vertex_parents[v]]
        for v in verts
    ]
    children = [[] for _ in verts]
    for i, p in enumerate(parent):
        if p != -1:
            children[p].append(i)
    h = [0] * len(verts)
    order = sorted(range(len(verts)), key=lambda i: -_depth(parent, i))
    for i in order:
        h[i] = 1 + max((h[c] for c in children[i]), default=0)
    pd, _ = PartialDecomposition.make(parent, verts, h)
    if x is None:
        return pd
    return restrict(pd, frozenset(x))[0]


def _depth(parent, i):
    d = 0
    while i != -1:
        d += 1
        i = parent[i]
    return d


def enumerate_witnesses(big, small, shared, excluded=()):
    """All maps showing that `big` topologically generalizes `small`.

    A witness is an injective map from the nodes of `small` into the nodes
    of `big` that is the identity on the names in `shared` and sends
    ancestors to ancestors.  Returned as tuples indexed by small-node id,
    ordered lexicographically by assigned big-node ids.  `excluded` lists
    big nodes that may not be used.
    """
    ns = small.n
    if ns > big.n:
        return []
    bigpos = big.pos_of_label
    fixed = [None] * ns
    n_fixed = 0
    for i in range(ns):
        lab = small.label[i]
        if lab >= 0 and lab in shared:
            t = bigpos.get(lab)
            if t is None:
                return []
            fixed[i] = t
            n_fixed += 1
    if n_fixed == ns:
        # fully named: the only possible witness is label-forced
        if excluded and set(fixed) & set(excluded):
            return []
        anc = big.anc_masks
        for i in range(ns):
            p = small.parent[i]
            if p != -1 and not (anc[fixed[i]] >> fixed[p]) & 1:
                return []
        return [tuple(fixed)]
    full = (1 << big.n) - 1
    excl = 0
    for e in excluded:
        excl |= 1 << e
    reserved = 0
    for t in fixed:
        if t is not None:
            reserved |= 1 << t
    anc = big.anc_masks
    desc = big.desc_masks
    # positions of fixed strict descendants, for pruning free assignments
    fixed_below = [0] * ns
    for i in range(ns - 1, -1, -1):
        p = small.parent[i]
        if p != -1:
            fixed_below[p] |= fixed_below[i]
            if fixed[i] is not None:
                fixed_below[p] |= 1 << fixed[i]
    req = [full] * ns
    for i in range(ns):
        m = fixed_below[i]
        while m:
            t = (m & -m).bit_length() - 1
            m &= m - 1
            req[i] &= anc[t]
    anon_ok = full & ~reserved & ~excl
    results = []
    assign = [0] * ns

    def go(i, used):
        if i == ns:
            results.append(tuple(assign))
            return
        cand = req[i] & ~used
        if fixed[i] is not None:
            cand &= 1 << fixed[i]
        else:
            cand &= anon_ok
        p = small.parent[i]
        if p != -1:
            cand &= desc[assign[p]]
        while cand:
            t = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            assign[i] = t
            go(i + 1, used | (1 << t))

    go(0, 0)
    return results


class _ShapeEnumerator:
    """Canonical tree skeletons over a fixed alphabet of named nodes.

    Shapes are nested (label, children) tuples with children sorted; labels
    are alphabet indices, -1 for anonymous nodes.  Constraints baked into the
    enumeration: the designated root index is the tree root, every leaf is
    named, no root-to-leaf path exceeds the depth bound, and every required
    pair of names ends up in an ancestor/descendant relation.
    """

    def __init__(self, k, root, req_pairs, path_only):
        self.k = k
        self.root = root
        self.path_only = path_only
        self.pairmask = [0] * k
        for a, b in req_pairs:
            if a == root or b == root:
                continue  # the root is an ancestor of everything
            self.pairmask[a] |= 1 << b
            self.pairmask[b] |= 1 << a
        self._trees_memo = {}
        self._forests_memo = {}
        self._top = {}

    def candidates(self, size, maxdepth):
        got = self._top.get((size, maxdepth))
        if got is None:
            anon = size - self.k
            if anon < 0 or maxdepth < 1:
                got = ()
            else:
                below = ((1 << self.k) - 1) & ~(1 << self.root)
                got = tuple(
                    (self.root, f)
                    for f in self._forests(below, anon, maxdepth - 1)
                )
            self._top[(size, maxdepth)] = got
        return got

    def _split_ok(self, inside, outside):
        m = inside
        while m:
            i = (m & -m).bit_length() - 1
            m &= m - 1
            if self.pairmask[i] & outside:
                return False
        return True

    def _trees(self, names, anon, depth):
        key = (names, anon, depth)
        got = self._trees_memo.get(key)
        if got is not None:
            return got
        out = []
        if depth >= 1:
            m = names
            while m:
                t = (m & -m).bit_length() - 1
                m &= m - 1
                for f in self._forests(names & ~(1 << t), anon, depth - 1):
                    out.append((t, f))
            if anon >= 1:
                for f in self._forests(names, anon - 1, depth - 1):
                    if f:
                        out.append((-1, f))
        got = tuple(out)
        self._trees_memo[key] = got
        return got

    def _forests(self, names, anon, depth):
        key = (names, anon, depth)
        got = self._forests_memo.get(key)
        if got is not None:
            return got
        out = []
        if names == 0:
            if anon == 0:
                out.append(())
        elif self.path_only:
            for t in self._trees(names, anon, depth):
                out.append((t,))
        else:
            low = names & -names
            rest_all = names & ~low
            sub = rest_all
            while True:
                first = sub | low
                others = names & ~first
                if self._split_ok(first, others):
                    for a1 in range(anon + 1):
                        tl = self._trees(first, a1, depth)
                        if tl:
                            for rf in self._forests(others, anon - a1, depth):
                                for t in tl:
                                    out.append(tuple(sorted((t,) + rf)))
                if sub == 0:
                    break
                sub = (sub - 1) & rest_all
        got = tuple(out)
        self._forests_memo[key] = got
        return got


_shape_cache = {}


def candidate_trees(bag, root, graph_edges, size, maxdepth, path_only=False):
    """Candidate trees for the introduce/join operations, as Forests.

    `bag` is the set of names the tree must contain, `root` the name forced
    to be the tree root, `graph_edges` the edges inside the bag that must be
    covered by the closure.  Results contain exactly `size` nodes, every
    leaf named, and no root-to-leaf path longer than `maxdepth` nodes.
    """
    names = sorted(bag)
    k = len(names)
    idx = {v: i for i, v in enumerate(names)}
    pairs = frozenset(
        (min(idx[u], idx[v]), max(idx[u], idx[v]))
        for u, v in graph_edges
        if u in idx and v in idx
    )
    cache_key = (k, idx[root], pairs, path_only)
    enum = _shape_cache.get(cache_key)
    if enum is None:
        enum = _ShapeEnumerator(k, idx[root], pairs, path_only)
        _shape_cache[cache_key] = enum
    shapes = enum.candidates(size, maxdepth)
    out = []
    for shape in shapes:
        parent = []
        label = []
        stack = [(shape, -1)]
        while stack:
            (lab, kids), p = stack.pop()
            i = len(parent)
            parent.append(p)
            label.append(names[lab] if lab >= 0 else -1)
            for kid in reversed(kids):
                stack.append((kid, i))
        out.append(Forest(parent, label))
    return out


def named_pair_mask(forest, idx):
    """Named ancestor pairs packed into one int: bit a*k+b set when the node
    named idx-position a is a strict ancestor of the one named position b.

    A witness into `big` exists only if the small forest's mask is a subset
    of the big one's, since witnesses fix names and preserve ancestors.
    """
    k = len(idx)
    anc = forest.anc_masks
    named = [
        (i, idx[lab])
        for i, lab in enumerate(forest.label)
        if lab >= 0 and lab in idx
    ]
    slot = {}
    for i, j in named:
        slot[i] = j
    mask = 0
    for i, ib in named:
        am = anc[i]
        while am:
            j = (am & -am).bit_length() - 1
            am &= am - 1
            ja = slot.get(j)
            if ja is not None:
                mask |= 1 << (ja * k + ib)
    return mask


def covers_closure(forest, graph_edges, bag):
    """Whether every bag edge joins an ancestor/descendant pair of the tree."""
    pos = forest.pos_of_label
    anc = forest.anc_masks
    for u, v in graph_edges:
        if u in bag and v in bag:
            iu, iv = pos[u], pos[v]
            if not (anc[iu] >> iv) & 1 and not (anc[iv] >> iu) & 1:
                return False
    return True
