"""Brute-force ground truth, independent of the dynamic-programming engine.

Two unrelated exact methods are kept side by side so a bug in one cannot
silently confirm the other: a vertex-removal recursion over induced
subgraphs, and exhaustive minimization of elimination-forest height over all
vertex orders.
"""
from __future__ import annotations

import itertools

from .errors import InputError
from .graph import connected_components
from .tdd import TreedepthDecomposition

_MAX_ORACLE_N = 20


def oracle_treedepth(g):
    """Exact treedepth with a witness decomposition.

    Recursion: the empty graph has treedepth 0, a disconnected graph takes
    the max over components, and a connected graph takes 1 + the best
    vertex deletion, with the deleted vertex becoming the root above the
    recursive decompositions.  Memoized on vertex bitmasks.
    """
    n = g.n
    if n > _MAX_ORACLE_N:
        raise InputError(f"oracle capped at {_MAX_ORACLE_N} vertices")
    nbr = [0] * n
    for u, v in g.edges:
        nbr[u] |= 1 << v
        nbr[v] |= 1 << u

    def split(mask):
        comps = []
        rest = mask
        while rest:
            seed = rest & -rest
            comp = seed
            frontier = seed
            while frontier:
                v = frontier.bit_length() - 1
                frontier &= ~(1 << v)
                new = nbr[v] & mask & ~comp
                comp |= new
                frontier |= new
            comps.append(comp)
            rest &= ~comp
        return comps

    memo = {}
    choice = {}

    def td(mask):
        if mask == 0:
            return 0
        got = memo.get(mask)
        if got is not None:
            return got
        comps = split(mask)
        if len(comps) > 1:
            val = max(td(c) for c in comps)
            choice[mask] = None
        else:
            best, bestv = None, None
            m = mask
            while m:
                v = (m & -m).bit_length() - 1
                m &= m - 1
                x = 1 + td(mask & ~(1 << v))
                if best is None or x < best:
                    best, bestv = x, v
            val = best
            choice[mask] = bestv
        memo[mask] = val
        return val

    full = (1 << n) - 1
    value = td(full)

    parents = {}

    def build(mask, above):
        if mask == 0:
            return
        comps = split(mask)
        if len(comps) > 1:
            for c in comps:
                build(c, above)
            return
        v = choice[mask]
        parents[v] = above
        build(mask & ~(1 << v), v)

    build(full, None)
    return value, TreedepthDecomposition.from_vertex_parents(parents)


def treedepth_by_elimination_orders(g):
    """Exact treedepth as the minimum elimination-forest height over all orders.

    Exhaustive over n! vertex orders; only usable for n <= 8.  Eliminating a
    vertex makes its remaining neighborhood a clique; its forest parent is
    the neighbor eliminated soonest afterwards.
    """
    n = g.n
    if n > 8:
        raise InputError("ordering sweep capped at 8 vertices")
    if n == 0:
        return 0
    base = [set(g.adj[v]) for v in range(n)]
    best = n
    for perm in itertools.permutations(range(n)):
        adj = [set(s) for s in base]
        pos = {v: i for i, v in enumerate(perm)}
        parent = {}
        for v in perm:
            later = adj[v]
            if later:
                parent[v] = min(later, key=lambda w: pos[w])
                for a in later:
                    adj[a].discard(v)
                    adj[a].update(w for w in later if w != a)
            else:
                parent[v] = None
        height = 0
        depth = {}
        for v in reversed(perm):  # parents are eliminated after children
            p = parent[v]
            depth[v] = 1 if p is None else depth[p] + 1
            height = max(height, depth[v])
        best = min(best, height)
        if best == 1:
            break
    return best


def enumerate_nice_tdds(g, root, max_height):
    """All nice treedepth decompositions of connected g rooted at `root`.

    In a nice decomposition the children subtrees of any node carry exactly
    the components of the graph left after deleting that node, so the
    enumeration recurses component by component, choosing a root for each.
    """
    if g.n > 8:
        raise InputError("enumeration capped at 8 vertices")
    if not 0 <= root < g.n:
        raise InputError("root out of range")
    if len(connected_components(g)) != 1:
        raise InputError("enumerate_nice_tdds requires a connected graph")
    nbr = [0] * g.n
    for u, v in g.edges:
        nbr[u] |= 1 << v
        nbr[v] |= 1 << u

    def split(mask):
        comps = []
        rest = mask
        while rest:
            seed = rest & -rest
            comp = seed
            frontier = seed
            while frontier:
                v = frontier.bit_length() - 1
                frontier &= ~(1 << v)
                new = nbr[v] & mask & ~comp
                comp |= new
                frontier |= new
            comps.append(comp)
            rest &= ~comp
        return comps

    def gen(mask, top, budget):
        if budget < 1:
            return
        rest = mask & ~(1 << top)
        if rest == 0:
            yield {top: None}
            return
        per_comp = []
        for comp in split(rest):
            opts = []
            m = comp
            while m:
                croot = (m & -m).bit_length() - 1
                m &= m - 1
                for pm in gen(comp, croot, budget - 1):
                    opts.append((croot, pm))
            if not opts:
                return
            per_comp.append(opts)
        for combo in itertools.product(*per_comp):
            merged = {top: None}
            for croot, pm in combo:
                merged.update(pm)
                merged[croot] = top
            yield merged

    full = (1 << g.n) - 1
    for pm in gen(full, root, max_height):
        yield TreedepthDecomposition.from_vertex_parents(pm)
