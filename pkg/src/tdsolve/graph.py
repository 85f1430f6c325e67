"""Simple undirected graphs and the graph primitives the solvers build on."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError


class Graph:
    """Immutable simple graph on vertices 0..n-1 with sorted adjacency lists."""

    __slots__ = ("n", "edges", "adj")

    def __init__(self, n, edges=()):
        if n < 0:
            raise InputError("vertex count must be nonnegative")
        seen = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            e = (u, v) if u < v else (v, u)
            if e in seen:
                raise InputError(f"duplicate edge ({u},{v})")
            seen.add(e)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", frozenset(seen))
        adj = [[] for _ in range(n)]
        for u, v in seen:
            adj[u].append(v)
            adj[v].append(u)
        object.__setattr__(self, "adj", tuple(tuple(sorted(a)) for a in adj))

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    @property
    def m(self):
        return len(self.edges)

    def has_edge(self, u, v):
        e = (u, v) if u < v else (v, u)
        return e in self.edges

    def degree(self, v):
        return len(self.adj[v])

    def vertices(self):
        return range(self.n)

    def __eq__(self, other):
        if isinstance(other, Graph):
            return self.n == other.n and self.edges == other.edges
        return NotImplemented

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class RootedGraph:
    """A graph together with a designated universal vertex."""

    graph: Graph
    root: int

    def __post_init__(self):
        g, r = self.graph, self.root
        if not 0 <= r < g.n:
            raise InputError(f"root {r} out of range")
        if len(g.adj[r]) != g.n - 1:
            raise InputError(f"root {r} is not universal")


@dataclass(frozen=True)
class DfsTree:
    """DFS tree of a connected graph; root has depth 1."""

    parent: tuple  # parent[v], -1 for the root
    depth: tuple  # depth[v] in nodes
    root: int
    preorder: tuple  # discovery order

    @property
    def height(self):
        return max(self.depth)


@dataclass(frozen=True)
class EliminationOrder:
    """A vertex permutation with its inverse; order[i] is eliminated i-th."""

    order: tuple
    position: tuple

    def __post_init__(self):
        n = len(self.order)
        if sorted(self.order) != list(range(n)) or len(self.position) != n:
            raise InputError("order is not a permutation")
        for i, v in enumerate(self.order):
            if self.position[v] != i:
                raise InputError("position is not the inverse of order")


def induced_subgraph(g, s):
    """Subgraph induced by the vertex set `s`, relabeled to 0..|s|-1.

    Returns (subgraph, old_of_new) where old_of_new[i] is the original id of
    the new vertex i; new ids follow the sorted order of `s`.
    """
    old = sorted(set(s))
    for v in old:
        if not 0 <= v < g.n:
            raise InputError(f"vertex {v} out of range")
    new_of_old = {v: i for i, v in enumerate(old)}
    edges = [
        (new_of_old[u], new_of_old[v])
        for u, v in g.edges
        if u in new_of_old and v in new_of_old
    ]
    return Graph(len(old), edges), tuple(old)


def connected_components(g):
    """Components as sorted vertex lists, ordered by smallest member."""
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        comp = []
        stack = [s]
        seen[s] = True
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in g.adj[v]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def add_universal_root(g):
    """Add a fresh vertex adjacent to every existing vertex; it gets id n."""
    r = g.n
    edges = list(g.edges) + [(v, r) for v in range(g.n)]
    return RootedGraph(Graph(g.n + 1, edges), r)


def dfs_tree_capped(g, depth_cap):
    """Depth-first search tree of a connected graph, aborted beyond a depth cap.

    Starts at the smallest vertex and always descends into the smallest
    unvisited neighbor.  Returns None as soon as any vertex would sit at
    depth depth_cap + 1; otherwise returns the full DfsTree.
    """
    if depth_cap < 1:
        raise InputError("depth cap must be positive")
    if g.n == 0:
        raise InputError("empty graph has no DFS tree")
    if len(connected_components(g)) != 1:
        raise InputError("dfs_tree_capped requires a connected graph")
    root = 0
    parent = [-1] * g.n
    depth = [0] * g.n
    depth[root] = 1
    preorder = [root]
    stack = [(root, iter(g.adj[root]))]
    while stack:
        v, it = stack[-1]
        advanced = False
        for w in it:
            if depth[w]:
                continue
            d = depth[v] + 1
            if d > depth_cap:
                return None
            parent[w] = v
            depth[w] = d
            preorder.append(w)
            stack.append((w, iter(g.adj[w])))
            advanced = True
            break
        if not advanced:
            stack.pop()
    return DfsTree(tuple(parent), tuple(depth), root, tuple(preorder))


def is_chordal(g):
    """Maximum-cardinality search followed by a perfect-elimination check.

    Returns an EliminationOrder on success and None if the graph is not
    chordal.  order[i] is the i-th vertex eliminated, so later neighbors of
    every vertex form a clique.
    """
    n = g.n
    if n == 0:
        return EliminationOrder((), ())
    weight = [0] * n
    picked = [False] * n
    selection = []
    for _ in range(n):
        z = max(
            (v for v in range(n) if not picked[v]),
            key=lambda v: (weight[v], -v),
        )
        picked[z] = True
        selection.append(z)
        for w in g.adj[z]:
            if not picked[w]:
                weight[w] += 1
    order = tuple(reversed(selection))
    position = [0] * n
    for i, v in enumerate(order):
        position[v] = i
    for i, v in enumerate(order):
        later = [w for w in g.adj[v] if position[w] > i]
        if not later:
            continue
        w0 = min(later, key=lambda w: position[w])
        wnbr = set(g.adj[w0])
        for w in later:
            if w != w0 and w not in wnbr:
                return None
    return EliminationOrder(order, tuple(position))


def _check_peo(g, peo):
    if len(peo.order) != g.n:
        raise InputError("elimination order does not cover the graph")
    pos = peo.position
    for i, v in enumerate(peo.order):
        later = [w for w in g.adj[v] if pos[w] > i]
        if not later:
            continue
        w0 = min(later, key=lambda w: pos[w])
        wnbr = set(g.adj[w0])
        for w in later:
            if w != w0 and w not in wnbr:
                raise InputError("not a perfect elimination order")


def max_clique_size_chordal(g, peo):
    """Clique number of a chordal graph from a perfect elimination order."""
    _check_peo(g, peo)
    if g.n == 0:
        return 0
    pos = peo.position
    best = 0
    for v in range(g.n):
        later = sum(1 for w in g.adj[v] if pos[w] > pos[v])
        best = max(best, 1 + later)
    return best
