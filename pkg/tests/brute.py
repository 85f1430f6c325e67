"""Brute-force reference implementations shared by the tests.

Everything here is deliberately independent of the solver code paths it is
used to check: subset enumeration, permutation sweeps and backtracking
searches only.
"""
from __future__ import annotations

import itertools
import random
from functools import lru_cache

from tdsolve import Graph
from tdsolve.tdd import TreedepthDecomposition


@lru_cache(maxsize=None)
def atlas_graphs(min_n, max_n, connected_only=True):
    """All graphs with min_n..max_n vertices up to isomorphism."""
    import networkx as nx

    out = []
    for G in nx.graph_atlas_g():
        n = G.number_of_nodes()
        if not min_n <= n <= max_n:
            continue
        if connected_only and n > 0 and not nx.is_connected(G):
            continue
        mapping = {v: i for i, v in enumerate(sorted(G.nodes()))}
        out.append(Graph(n, [(mapping[u], mapping[v]) for u, v in G.edges()]))
    return tuple(out)


def random_graph(rng, n, m=None):
    pool = [(i, j) for i in range(n) for j in range(i + 1, n)]
    if m is None:
        m = rng.randrange(0, len(pool) + 1)
    rng.shuffle(pool)
    return Graph(n, pool[:m])


def random_connected_graph(rng, n, extra=2):
    """Random tree plus a few extra edges."""
    edges = set()
    for v in range(1, n):
        edges.add(tuple(sorted((v, rng.randrange(v)))))
    pool = [
        (i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if (i, j) not in edges
    ]
    rng.shuffle(pool)
    for e in pool[: rng.randrange(extra + 1)]:
        edges.add(e)
    return Graph(n, sorted(edges))


def brute_is_chordal(g):
    """No induced cycle with four or more vertices."""
    for size in range(4, g.n + 1):
        for sub in itertools.combinations(range(g.n), size):
            inside = set(sub)
            degs = {
                v: sum(1 for w in g.adj[v] if w in inside) for v in sub
            }
            if any(d != 2 for d in degs.values()):
                continue
            # all degrees 2: connected <=> a single induced cycle
            seen = {sub[0]}
            stack = [sub[0]]
            while stack:
                v = stack.pop()
                for w in g.adj[v]:
                    if w in inside and w not in seen:
                        seen.add(w)
                        stack.append(w)
            if len(seen) == size:
                return False
    return True


def brute_treewidth(g):
    """Minimum over all elimination orders of the largest clique created."""
    best = g.n - 1 if g.n else 0
    for perm in itertools.permutations(range(g.n)):
        adj = [set(g.adj[v]) for v in range(g.n)]
        width = 0
        for v in perm:
            nbrs = adj[v]
            width = max(width, len(nbrs))
            for a in nbrs:
                adj[a].discard(v)
                adj[a].update(w for w in nbrs if w != a)
            adj[v] = set()
        best = min(best, width)
    return best


def brute_max_clique(g):
    best = 0
    for size in range(g.n, 0, -1):
        if size <= best:
            break
        for sub in itertools.combinations(range(g.n), size):
            if all(
                g.has_edge(u, v) for u, v in itertools.combinations(sub, 2)
            ):
                best = size
                break
    return best


def is_valid_peo(g, order):
    pos = {v: i for i, v in enumerate(order)}
    for v in order:
        later = [w for w in g.adj[v] if pos[w] > pos[v]]
        for a, b in itertools.combinations(later, 2):
            if not g.has_edge(a, b):
                return False
    return True


def enumerate_valid_tdds(g, root, max_height):
    """All treedepth decompositions on exactly V(g), rooted at `root`.

    Brute force over parent assignments; used by soundness audits, so it must
    not share anything with the engine.
    """
    n = g.n
    others = [v for v in range(n) if v != root]
    for choice in itertools.product(*[[p for p in range(n) if p != v] for v in others]):
        parent = {root: None}
        for v, p in zip(others, choice):
            parent[v] = p
        # acyclic with root reachable?
        ok = True
        depth = {root: 1}
        for v in others:
            path = []
            u = v
            while u not in depth:
                if u in path:
                    ok = False
                    break
                path.append(u)
                u = parent[u]
            if not ok:
                break
            d = depth[u]
            for w in reversed(path):
                d += 1
                depth[w] = d
        if not ok:
            continue
        if max(depth.values()) > max_height:
            continue
        # every edge must join an ancestor/descendant pair
        anc = {}
        for v in range(n):
            s = set()
            u = parent[v]
            while u is not None:
                s.add(u)
                u = parent[u]
            anc[v] = s
        if all(u in anc[v] or v in anc[u] for u, v in g.edges):
            yield TreedepthDecomposition.from_vertex_parents(parent)


def pds_equivalent(p1, p2):
    """Brute-force equivalence of partial decompositions.

    Searches for an isomorphism that is the identity on named nodes and
    preserves the height labels.
    """
    if p1.n != p2.n:
        return False
    if sorted(p1.label) != sorted(p2.label):
        return False
    if sorted(p1.h) != sorted(p2.h):
        return False
    ch1 = p1.children
    ch2 = p2.children

    def match_groups(g1, g2):
        if len(g1) != len(g2):
            return False
        if not g1:
            return True
        a = g1[0]
        rest = g1[1:]
        for i, b in enumerate(g2):
            if p1.label[a] != p2.label[b] or p1.h[a] != p2.h[b]:
                continue
            if match_groups(list(ch1[a]), list(ch2[b])) and match_groups(
                rest, g2[:i] + g2[i + 1 :]
            ):
                return True
        return False

    return match_groups(p1.roots(), p2.roots())


def random_partial_decomposition(rng, max_nodes=8, max_h=9):
    """Random valid partial decomposition (possibly a multi-tree forest)."""
    n = rng.randint(1, max_nodes)
    parent = [-1] * n
    for i in range(1, n):
        parent[i] = rng.randrange(i) if rng.random() < 0.75 else -1
    children = [[] for _ in range(n)]
    for i, p in enumerate(parent):
        if p != -1:
            children[p].append(i)
    # heights: strictly decreasing downward, above the subtree depth
    h = [0] * n
    for i in range(n - 1, -1, -1):
        base = 1 + max((h[c] for c in children[i]), default=0)
        h[i] = base + rng.randrange(0, 3)
        if h[i] > max_h:
            h[i] = max(base, max_h)
    for i in range(1, n):
        if parent[i] != -1 and h[parent[i]] <= h[i]:
            h[parent[i]] = h[i] + 1
    # fix upward again to keep ancestors strictly larger
    for i in range(n - 1, 0, -1):
        p = parent[i]
        if p != -1 and h[p] <= h[i]:
            h[p] = h[i] + 1
    # names: leaves must be named; some internal nodes named too
    labels = [-1] * n
    next_name = 0
    for i in range(n):
        if not children[i] or rng.random() < 0.4:
            labels[i] = next_name
            next_name += 1
    from tdsolve.pd import PartialDecomposition

    pd, _ = PartialDecomposition.make(parent, labels, h)
    pd.check()
    return pd
