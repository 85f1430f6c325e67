"""Deterministic instance generators for testing and benchmarking."""
from __future__ import annotations

import random

from .errors import InputError
from .graph import Graph

FAMILIES = (
    "path",
    "cycle",
    "clique",
    "star",
    "random-gnm",
    "random-tree",
    "k-tree",
    "interval",
)


def path_graph(n):
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n):
    if n < 3:
        raise InputError("cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def clique_graph(n):
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star_graph(n):
    """K_{1,n-1}: vertex 0 is the center."""
    if n < 1:
        raise InputError("star needs at least 1 vertex")
    return Graph(n, [(0, i) for i in range(1, n)])


def random_gnm_graph(n, seed, m=None):
    rng = random.Random(seed)
    maxm = n * (n - 1) // 2
    if m is None:
        m = min(maxm, round(1.5 * n))
    if m > maxm:
        raise InputError(f"m={m} exceeds the {maxm} possible edges")
    pool = [(i, j) for i in range(n) for j in range(i + 1, n)]
    rng.shuffle(pool)
    return Graph(n, pool[:m])


def random_tree_graph(n, seed):
    """Uniform labeled tree from a random Pruefer sequence."""
    rng = random.Random(seed)
    if n <= 1:
        return Graph(n)
    if n == 2:
        return Graph(2, [(0, 1)])
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    edges = []
    import heapq

    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    for v in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, v))
        degree[v] -= 1
        if degree[v] == 1:
            heapq.heappush(leaves, v)
    u = heapq.heappop(leaves)
    w = heapq.heappop(leaves)
    edges.append((u, w))
    return Graph(n, edges)


def k_tree_graph(n, seed, k=2):
    """Random k-tree: a (k+1)-clique grown one simplicial vertex at a time."""
    if k < 1:
        raise InputError("k must be positive")
    if n < k + 1:
        raise InputError(f"a {k}-tree needs at least {k + 1} vertices")
    rng = random.Random(seed)
    edges = [(i, j) for i in range(k + 1) for j in range(i + 1, k + 1)]
    cliques = [tuple(range(k + 1))]
    for v in range(k + 1, n):
        base = list(rng.choice(cliques))
        drop = rng.randrange(len(base))
        face = [x for i, x in enumerate(base) if i != drop]
        for x in face:
            edges.append((x, v))
        cliques.append(tuple(sorted(face + [v])))
    return Graph(n, edges)


def interval_graph(n, seed):
    """Random interval graph: vertices are intervals, edges are overlaps."""
    rng = random.Random(seed)
    intervals = []
    for _ in range(n):
        a = rng.random()
        b = a + rng.random() * 0.5
        intervals.append((a, b))
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            a1, b1 = intervals[i]
            a2, b2 = intervals[j]
            if a1 <= b2 and a2 <= b1:
                edges.append((i, j))
    return Graph(n, edges)


def generate(family, size, seed=0, k=2, m=None):
    """Dispatch on the family name; deterministic under (family, size, seed)."""
    if family == "path":
        return path_graph(size)
    if family == "cycle":
        return cycle_graph(size)
    if family == "clique":
        return clique_graph(size)
    if family == "star":
        return star_graph(size)
    if family == "random-gnm":
        return random_gnm_graph(size, seed, m)
    if family == "random-tree":
        return random_tree_graph(size, seed)
    if family == "k-tree":
        return k_tree_graph(size, seed, k)
    if family == "interval":
        return interval_graph(size, seed)
    raise InputError(f"unknown family {family!r}")
