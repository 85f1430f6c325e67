"""Table-based dynamic program over a nice tree decomposition.

Each bag holds a table of pairwise inequivalent partial decompositions.
Leaf bags start from the single-node forest on the universal root; forget
restricts and deduplicates; introduce and join enumerate candidate trees
over the bag, match child entries into them via topological-generalization
witnesses, and recompute the height labels bottom-up.  Entries whose height
exceeds the budget are dropped.  Provenance per entry records how to replay
its creation, which is what reconstruction walks afterwards.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InputError, InternalError, ResourceLimit
from .graph import add_universal_root
from .pd import (
    PartialDecomposition,
    candidate_trees,
    covers_closure,
    enumerate_witnesses,
    named_pair_mask,
    restrict,
)
from .tdd import TreedepthDecomposition, validate_tdd
from .treedec import make_nice, root_and_augment, to_tree_decomposition, validate


class Provenance:
    __slots__ = ("kind", "child_keys", "maps", "vertex")

    def __init__(self, kind, child_keys=(), maps=(), vertex=-1):
        self.kind = kind
        self.child_keys = child_keys
        self.maps = maps
        self.vertex = vertex


class TableEntry:
    __slots__ = ("pd", "prov")

    def __init__(self, pd, prov):
        self.pd = pd
        self.prov = prov


class DpTable:
    """Entries keyed by canonical key, all sharing the bag as boundary."""

    __slots__ = ("bag", "entries")

    def __init__(self, bag, entries=None):
        self.bag = frozenset(bag)
        self.entries = {} if entries is None else entries

    def __len__(self):
        return len(self.entries)


def leaf_table(r):
    pd = PartialDecomposition.singleton(r)
    return DpTable(
        frozenset((r,)), {pd.key: TableEntry(pd, Provenance("leaf"))}
    )


def forget_op(table, u):
    """Restrict every entry to the boundary minus u and deduplicate."""
    if u not in table.bag:
        raise InputError(f"vertex {u} not in the boundary")
    new_bag = table.bag - {u}
    out = DpTable(new_bag)
    for key, entry in table.entries.items():
        pd2, survivors = restrict(entry.pd, new_bag)
        if pd2.key not in out.entries:
            out.entries[pd2.key] = TableEntry(
                pd2, Provenance("forget", (key,), (survivors,), u)
            )
    return out


def _bag_edges(g, bag):
    return [e for e in g.edges if e[0] in bag and e[1] in bag]


def _candidates(bag, root, edges, size, budget, path_only, naive):
    if naive:
        cands = candidate_trees(bag, root, (), size, budget, path_only)
        return [c for c in cands if covers_closure(c, edges, bag)]
    return candidate_trees(bag, root, edges, size, budget, path_only)


def _intro_heights(cand, h_small, f, u_idx):
    n = cand.n
    inv = [-1] * n
    for j, z in enumerate(f):
        inv[z] = j
    children = cand.children
    h = [0] * n
    for z in range(n - 1, -1, -1):  # children live at higher indices
        base = 1
        for c in children[z]:
            if h[c] >= base:
                base = h[c] + 1
        j = inv[z]
        if z != u_idx and j >= 0 and h_small[j] > base:
            h[z] = h_small[j]
        else:
            h[z] = base
    return h


def introduce_op(table, u, rooted, budget, *, path_only=False, naive=False, cap=None):
    """All ways of adding vertex u to every entry of the child table.

    Candidate trees over the enlarged bag must be rooted at the universal
    root, keep all leaves named, cover the bag's edges in their closure and
    contain exactly one node more than the child entry; every witness that
    embeds the child forest onto all nodes but u yields one new entry.
    """
    g = rooted.graph
    if u in table.bag:
        raise InputError(f"vertex {u} already in the boundary")
    if not 0 <= u < g.n:
        raise InputError(f"vertex {u} not in the graph")
    r = rooted.root
    if r not in table.bag:
        raise InputError("boundary must contain the root")
    bag = table.bag | {u}
    edges = _bag_edges(g, bag)
    out = DpTable(bag)
    idx = {v: i for i, v in enumerate(sorted(bag))}
    max_nodes = len(bag) * budget
    sizes = sorted({e.pd.n for e in table.entries.values()})
    cands_by_size = {}
    for s in sizes:
        if s + 1 > max_nodes:
            continue
        cands = _candidates(bag, r, edges, s + 1, budget, path_only, naive)
        cands_by_size[s + 1] = [
            (c, c.pos_of_label[u], named_pair_mask(c, idx)) for c in cands
        ]
    wit_cache = {}
    shape_ids = {}
    compat_cache = {}
    seen = set()
    entries_out = out.entries
    for key, entry in table.entries.items():
        small = entry.pd
        size = small.n + 1
        cands = cands_by_size.get(size)
        if not cands:
            continue
        shape = (small.parent, small.label)
        sid = shape_ids.get(shape)
        if sid is None:
            sid = len(shape_ids)
            shape_ids[shape] = sid
        emask = named_pair_mask(small, idx)
        compat = compat_cache.get((size, emask))
        if compat is None:
            compat = [
                ci
                for ci, (_, _, cmask) in enumerate(cands)
                if not emask & ~cmask
            ]
            compat_cache[(size, emask)] = compat
        h_small = small.h
        for ci in compat:
            cand, u_idx, _ = cands[ci]
            wk = (sid, ci)  # a shape fixes its size, so ci is unambiguous
            wits = wit_cache.get(wk)
            if wits is None:
                wits = enumerate_witnesses(
                    cand, small, table.bag, excluded=(u_idx,)
                )
                wit_cache[wk] = wits
            for f in wits:
                h = _intro_heights(cand, h_small, f, u_idx)
                if h[0] > budget:  # node 0 is the root
                    continue
                hkey = (size, ci, tuple(h))
                if hkey in seen:
                    continue
                seen.add(hkey)
                pd, perm = PartialDecomposition.make(cand.parent, cand.label, h)
                if pd.key not in entries_out:
                    wit = tuple(perm[t] for t in f)
                    entries_out[pd.key] = TableEntry(
                        pd, Provenance("introduce", (key,), (wit,), u)
                    )
                    if cap is not None and len(entries_out) > cap:
                        raise ResourceLimit(
                            f"table size exceeded cap {cap} at introduce({u})"
                        )
    return out


def _join_heights(cand, h1, f1, h2, f2):
    n = cand.n
    a = [0] * n
    for j, z in enumerate(f1):
        if h1[j] > a[z]:
            a[z] = h1[j]
    for j, z in enumerate(f2):
        if h2[j] > a[z]:
            a[z] = h2[j]
    children = cand.children
    h = [0] * n
    for z in range(n - 1, -1, -1):
        base = 1
        for c in children[z]:
            if h[c] >= base:
                base = h[c] + 1
        h[z] = base if base >= a[z] else a[z]
    return h


def join_op(t1, t2, rooted, budget, *, path_only=False, naive=False, cap=None):
    """Combine two tables over the same bag.

    For a candidate tree F, a pair of witnesses must partition the nodes of
    F between the two child forests, overlapping exactly on the bag; heights
    take the pointwise max of inherited heights and the depth below.
    """
    if t1.bag != t2.bag:
        raise InputError("join requires equal boundaries")
    bag = t1.bag
    g = rooted.graph
    r = rooted.root
    if r not in bag:
        raise InputError("boundary must contain the root")
    x = len(bag)
    edges = _bag_edges(g, bag)
    out = DpTable(bag)
    idx = {v: i for i, v in enumerate(sorted(bag))}
    max_nodes = x * budget
    by_size1 = {}
    for key, e in t1.entries.items():
        by_size1.setdefault(e.pd.n, []).append((key, e))
    by_size2 = {}
    for key, e in t2.entries.items():
        by_size2.setdefault(e.pd.n, []).append((key, e))
    cand_cache = {}
    wit1_cache = {}
    wit2_cache = {}
    shape_ids = {}
    emask_by_sid = {}
    seen = set()
    entries_out = out.entries

    def shape_of(e):
        shape = (e.pd.parent, e.pd.label)
        sid = shape_ids.get(shape)
        if sid is None:
            sid = len(shape_ids)
            shape_ids[shape] = sid
            emask_by_sid[sid] = named_pair_mask(e.pd, idx)
        return sid

    for s1, group1 in sorted(by_size1.items()):
        group1 = [(k, e, shape_of(e)) for k, e in group1]
        for s2, group2 in sorted(by_size2.items()):
            size = s1 + s2 - x
            if size < max(s1, s2) or size > max_nodes:
                continue
            cands = cand_cache.get(size)
            if cands is None:
                raw = _candidates(bag, r, edges, size, budget, path_only, naive)
                cands = [(c, named_pair_mask(c, idx)) for c in raw]
                cand_cache[size] = cands
            group2s = [(k, e, shape_of(e)) for k, e in group2]
            for ci, (cand, cmask) in enumerate(cands):
                ncm = ~cmask
                named_pos = set(cand.pos_of_label.values())
                g1 = [
                    (k, e, s) for k, e, s in group1
                    if not emask_by_sid[s] & ncm
                ]
                if not g1:
                    continue
                g2 = [
                    (k, e, s) for k, e, s in group2s
                    if not emask_by_sid[s] & ncm
                ]
                if not g2:
                    continue
                for key1, e1, sid1 in g1:
                    wk1 = (sid1, size, ci)
                    wits1 = wit1_cache.get(wk1)
                    if wits1 is None:
                        wits1 = enumerate_witnesses(cand, e1.pd, bag)
                        wit1_cache[wk1] = wits1
                    for f1 in wits1:
                        used_anon = tuple(
                            sorted(t for t in f1 if t not in named_pos)
                        )
                        for key2, e2, sid2 in g2:
                            wk2 = (sid2, size, ci, used_anon)
                            wits2 = wit2_cache.get(wk2)
                            if wits2 is None:
                                wits2 = enumerate_witnesses(
                                    cand, e2.pd, bag, excluded=used_anon
                                )
                                wit2_cache[wk2] = wits2
                            for f2 in wits2:
                                h = _join_heights(
                                    cand, e1.pd.h, f1, e2.pd.h, f2
                                )
                                if h[0] > budget:
                                    continue
                                hkey = (size, ci, tuple(h))
                                if hkey in seen:
                                    continue
                                seen.add(hkey)
                                pd, perm = PartialDecomposition.make(
                                    cand.parent, cand.label, h
                                )
                                if pd.key in entries_out:
                                    continue
                                w1 = tuple(perm[t] for t in f1)
                                w2 = tuple(perm[t] for t in f2)
                                entries_out[pd.key] = TableEntry(
                                    pd,
                                    Provenance(
                                        "join", (key1, key2), (w1, w2)
                                    ),
                                )
                                if cap is not None and len(entries_out) > cap:
                                    raise ResourceLimit(
                                        f"table size exceeded cap {cap} at join"
                                    )
    return out


def table_size_exponent(x, budget):
    """log2 of the admissible table size for boundary size x."""
    if x == 0:
        return 0.0
    return x * budget + x * math.log2(max(budget, 1)) + x * math.log2(x)


@dataclass
class DpRun:
    rooted: object
    nice: object
    budget: int
    root_table: DpTable
    tables: object  # list[DpTable|None] indexed by nice node id, or None
    bag_sizes: tuple  # table size per nice node, post-order positions filled
    order: tuple  # post-order of nice node ids


def run_dp(
    rooted,
    budget,
    nice,
    *,
    keep_tables=True,
    path_only=False,
    naive=False,
    cap=None,
):
    """Evaluate the tables bottom-up and return the root bag's table."""
    if budget < 1:
        raise InputError("budget must be positive")
    r = rooted.root
    for bag in nice.bags:
        if r not in bag:
            raise InputError("every bag must contain the root")
    bad = validate(rooted.graph, to_tree_decomposition(nice))
    if bad is not None:
        raise InputError(f"decomposition invalid: {bad}")
    children = nice.children()
    order = []
    stack = [(nice.root, False)]
    while stack:
        v, done = stack.pop()
        if done:
            order.append(v)
            continue
        stack.append((v, True))
        stack.extend((c, False) for c in children[v])
    tables = [None] * nice.n_nodes
    bag_sizes = [0] * nice.n_nodes
    for v in order:
        kind = nice.kind[v]
        bag = nice.bags[v]
        kids = children[v]
        if kind == "leaf":
            if kids or bag != frozenset((r,)):
                raise InputError("leaf bags must be exactly {root}")
            table = leaf_table(r)
        elif kind == "forget":
            (c,) = kids
            table = forget_op(tables[c], nice.vertex[v])
        elif kind == "introduce":
            (c,) = kids
            table = introduce_op(
                tables[c],
                nice.vertex[v],
                rooted,
                budget,
                path_only=path_only,
                naive=naive,
                cap=cap,
            )
        elif kind == "join":
            c1, c2 = kids
            table = join_op(
                tables[c1],
                tables[c2],
                rooted,
                budget,
                path_only=path_only,
                naive=naive,
                cap=cap,
            )
        else:
            raise InputError(f"unknown bag kind {kind!r}")
        if table.bag != bag:
            raise InputError(f"bag mismatch at node {v}")
        assert math.log2(max(len(table), 1)) <= table_size_exponent(
            len(bag), budget
        ), "table exceeded its counting bound"
        tables[v] = table
        bag_sizes[v] = len(table)
        if not keep_tables:
            for c in kids:
                tables[c] = None
    root_table = tables[nice.root]
    return DpRun(
        rooted=rooted,
        nice=nice,
        budget=budget,
        root_table=root_table,
        tables=tables if keep_tables else None,
        bag_sizes=tuple(bag_sizes),
        order=tuple(order),
    )


def reconstruct(run):
    """Replay provenance from a nonempty root table into a witness.

    Returns a treedepth decomposition of the original (unrooted) graph whose
    height is the chosen root entry's height minus one.
    """
    if run.tables is None:
        raise InputError("tables were not retained; rerun without decide-only")
    entries = run.root_table.entries
    if not entries:
        raise InputError("root table is empty; nothing to reconstruct")
    start_key = min(entries, key=lambda k: (entries[k].pd.height, k))
    children = run.nice.children()
    target = (run.nice.root, start_key)
    memo = {}
    stack = [target]
    while stack:
        node, key = stack[-1]
        if (node, key) in memo:
            stack.pop()
            continue
        entry = run.tables[node].entries.get(key)
        if entry is None:
            raise InternalError("provenance points at a missing entry")
        prov = entry.prov
        kids = children[node]
        if prov.kind == "leaf":
            needed = []
        elif prov.kind in ("forget", "introduce"):
            needed = [(kids[0], prov.child_keys[0])]
        elif prov.kind == "join":
            needed = [
                (kids[0], prov.child_keys[0]),
                (kids[1], prov.child_keys[1]),
            ]
        else:
            raise InternalError(f"bad provenance kind {prov.kind!r}")
        missing = [nk for nk in needed if nk not in memo]
        if missing:
            stack.extend(missing)
            continue
        stack.pop()
        memo[(node, key)] = _replay_step(run, entry, needed, memo)
    pm = memo[target][0]
    g = run.rooted.graph
    r = run.rooted.root
    if set(pm) != set(range(g.n)):
        raise InternalError("reconstructed decomposition misses vertices")
    out = {}
    for v, p in pm.items():
        if v == r:
            continue
        out[v] = None if p == r or p is None else p
    return TreedepthDecomposition.from_vertex_parents(out)


def _replay_step(run, entry, needed, memo):
    prov = entry.prov
    pd = entry.pd
    if prov.kind == "leaf":
        r = run.rooted.root
        return {r: None}, (r,)
    if prov.kind == "forget":
        pm, phi_c = memo[needed[0]]
        survivors = prov.maps[0]
        phi = tuple(phi_c[o] for o in survivors)
        return pm, phi
    if prov.kind == "introduce":
        pm_c, phi_c = memo[needed[0]]
        wit = prov.maps[0]
        u = prov.vertex
        mapped = [None] * pd.n
        for j, z in enumerate(wit):
            mapped[z] = phi_c[j]
        for z in range(pd.n):
            if mapped[z] is None:
                mapped[z] = u
        pm = dict(pm_c)
        for z in range(pd.n):
            p = pd.parent[z]
            pm[mapped[z]] = None if p == -1 else mapped[p]
        return pm, tuple(mapped)
    if prov.kind == "join":
        pm1, phi1 = memo[needed[0]]
        pm2, phi2 = memo[needed[1]]
        w1, w2 = prov.maps
        mapped = [None] * pd.n
        for j, z in enumerate(w1):
            mapped[z] = phi1[j]
        for j, z in enumerate(w2):
            if mapped[z] is None:
                mapped[z] = phi2[j]
            elif mapped[z] != phi2[j]:
                raise InternalError("join witnesses disagree on the boundary")
        if any(v is None for v in mapped):
            raise InternalError("join witnesses do not cover the candidate")
        pm = dict(pm1)
        for v, p in pm2.items():
            if v not in pm:
                pm[v] = p
        for z in range(pd.n):
            p = pd.parent[z]
            pm[mapped[z]] = None if p == -1 else mapped[p]
        return pm, tuple(mapped)
    raise InternalError(f"bad provenance kind {prov.kind!r}")


@dataclass
class DecideResult:
    yes: bool
    witness: object  # TreedepthDecomposition or None
    bag_sizes: tuple
    peak: int
    width: object
    budget: int


def decide(
    g,
    t,
    td,
    *,
    want_witness=True,
    path_only=False,
    naive=False,
    decide_only=False,
    cap=None,
):
    """Whether the treedepth of g is at most t, given a tree decomposition.

    Adds the universal root, upgrades td to a rooted augmented nice form,
    runs the table dynamic program with budget t + 1 and answers from the
    root table; on yes, reconstructs and checks a witness.
    """
    if t < 0:
        raise InputError("t must be nonnegative")
    if g.n == 0:
        return DecideResult(
            True, TreedepthDecomposition((), ()), (), 0, None, t + 1
        )
    bad = validate(g, td)
    if bad is not None:
        raise InputError(f"tree decomposition invalid: {bad}")
    rooted = add_universal_root(g)
    base = make_nice(td)
    width = base.width
    nice = root_and_augment(base, rooted.root)
    run = run_dp(
        rooted,
        t + 1,
        nice,
        keep_tables=not decide_only,
        path_only=path_only,
        naive=naive,
        cap=cap,
    )
    yes = bool(run.root_table.entries)
    witness = None
    if yes and want_witness and not decide_only:
        witness = reconstruct(run)
        if validate_tdd(g, witness) is not None:
            raise InternalError("reconstructed witness does not validate")
        if witness.height() > t:
            raise InternalError("reconstructed witness too tall")
    return DecideResult(
        yes=yes,
        witness=witness,
        bag_sizes=run.bag_sizes,
        peak=max(run.bag_sizes, default=0),
        width=width,
        budget=t + 1,
    )
