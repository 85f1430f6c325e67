"""Parsers and writers for .gr graphs, .td decompositions, .tree forests,
and the machine-readable run report.

Vertices are 1-based on disk and 0-based in memory.  Any run of blanks
separates tokens; fully blank lines are ignored; the trailing newline is
optional.  The first line of a .tree file is the height in levels (a single
root counts as height 1).
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass

from .errors import InputError, ParseError
from .graph import Graph
from .tdd import TreedepthDecomposition


@dataclass(frozen=True)
class GrDocument:
    n: int
    m: int
    edges: tuple
    comments: tuple


def parse_gr_document(text):
    """PACE-style graph file: comments 'c ...', one 'p tdp <n> <m>' header,
    then m lines '<u> <v>' with 1-based endpoints."""
    header = None
    edges = []
    comments = []
    seen = set()
    n = m = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "c":
            comments.append(raw)
            continue
        if parts[0] == "p":
            if header is not None:
                raise ParseError(lineno, "duplicate header")
            if len(parts) != 4 or parts[1] != "tdp":
                raise ParseError(lineno, "header must be 'p tdp <n> <m>'")
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise ParseError(lineno, "non-integer counts in header")
            if n < 0 or m < 0:
                raise ParseError(lineno, "negative counts in header")
            header = lineno
            continue
        if header is None:
            raise ParseError(lineno, "edge line before header")
        if len(parts) != 2:
            raise ParseError(lineno, "edge line must have two endpoints")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(lineno, "non-integer endpoint")
        if not (1 <= u <= n and 1 <= v <= n):
            raise ParseError(lineno, f"endpoint out of range 1..{n}")
        if u == v:
            raise ParseError(lineno, "self-loop")
        e = (min(u, v) - 1, max(u, v) - 1)
        if e in seen:
            raise ParseError(lineno, "duplicate edge")
        seen.add(e)
        edges.append(e)
        if len(edges) > m:
            raise ParseError(lineno, f"more than the declared {m} edges")
    last = len(text.splitlines()) + 1
    if header is None:
        raise ParseError(last, "missing 'p tdp' header")
    if len(edges) != m:
        raise ParseError(last, f"declared {m} edges but found {len(edges)}")
    return GrDocument(n, m, tuple(edges), tuple(comments))


def parse_gr(text):
    doc = parse_gr_document(text)
    return Graph(doc.n, doc.edges)


def write_gr(g, comments=()):
    lines = [f"c {c}" for c in comments]
    lines.append(f"p tdp {g.n} {g.m}")
    for u, v in sorted(g.edges):
        lines.append(f"{u + 1} {v + 1}")
    return "\n".join(lines) + "\n"


def parse_td(text):
    """PACE-style .td file.

    Returns (bags, edges, declared_width) with 0-based vertices and bag ids.
    Structural validation only: dense bag ids, tree shape, declared counts
    consistent.  Whether the decomposition fits a graph is checked separately.
    """
    header = None
    nbags = maxbag = n = 0
    bags = {}
    edges = []
    eseen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "c":
            continue
        if parts[0] == "s":
            if header is not None:
                raise ParseError(lineno, "duplicate header")
            if len(parts) != 5 or parts[1] != "td":
                raise ParseError(
                    lineno, "header must be 's td <bags> <max-bag-size> <n>'"
                )
            try:
                nbags, maxbag, n = int(parts[2]), int(parts[3]), int(parts[4])
            except ValueError:
                raise ParseError(lineno, "non-integer counts in header")
            if nbags < 1 or maxbag < 0 or n < 0:
                raise ParseError(lineno, "bad counts in header")
            header = lineno
            continue
        if header is None:
            raise ParseError(lineno, "content before header")
        if parts[0] == "b":
            if len(parts) < 2:
                raise ParseError(lineno, "bag line needs an id")
            try:
                bid = int(parts[1])
                verts = [int(x) for x in parts[2:]]
            except ValueError:
                raise ParseError(lineno, "non-integer in bag line")
            if not 1 <= bid <= nbags:
                raise ParseError(lineno, f"bag id {bid} out of range")
            if bid in bags:
                raise ParseError(lineno, f"duplicate bag id {bid}")
            bag = set()
            for v in verts:
                if not 1 <= v <= n:
                    raise ParseError(lineno, f"vertex {v} out of range 1..{n}")
                if v - 1 in bag:
                    raise ParseError(lineno, f"vertex {v} repeated in bag")
                bag.add(v - 1)
            bags[bid] = frozenset(bag)
            continue
        if len(parts) != 2:
            raise ParseError(lineno, "bag-tree edge line must have two ids")
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(lineno, "non-integer bag id")
        if not (1 <= a <= nbags and 1 <= b <= nbags) or a == b:
            raise ParseError(lineno, "bad bag-tree edge")
        e = (min(a, b) - 1, max(a, b) - 1)
        if e in eseen:
            raise ParseError(lineno, "duplicate bag-tree edge")
        eseen.add(e)
        edges.append(e)
    last = len(text.splitlines()) + 1
    if header is None:
        raise ParseError(last, "missing 's td' header")
    if len(bags) != nbags:
        raise ParseError(last, f"declared {nbags} bags but found {len(bags)}")
    actual = max((len(b) for b in bags.values()), default=0)
    if actual != maxbag:
        raise ParseError(last, f"declared max bag size {maxbag}, actual {actual}")
    bag_list = [bags[i + 1] for i in range(nbags)]
    if len(edges) != nbags - 1:
        raise ParseError(last, "bag tree is not a tree (edge count)")
    # connectivity
    adj = [[] for _ in range(nbags)]
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != nbags:
        raise ParseError(last, "bag tree is not a tree (disconnected)")
    return bag_list, edges, maxbag - 1


def write_td(td, n):
    maxbag = max((len(b) for b in td.bags), default=0)
    lines = [f"s td {len(td.bags)} {maxbag} {n}"]
    for i, bag in enumerate(td.bags):
        lines.append(" ".join(["b", str(i + 1)] + [str(v + 1) for v in sorted(bag)]))
    for a, b in td.edges:
        lines.append(f"{a + 1} {b + 1}")
    return "\n".join(lines) + "\n"


def write_treedepth_decomposition(t):
    """First line: height in levels; line i+1: 1-based parent of vertex i, 0 for roots.

    The decomposition must be fully labeled with vertices 0..n-1.
    """
    if any(lab < 0 for lab in t.label):
        raise InputError("decomposition has unlabeled nodes")
    n = t.n_nodes
    if sorted(t.label) != list(range(n)):
        raise InputError("decomposition does not cover vertices 0..n-1")
    pm = t.vertex_parents()
    lines = [str(t.height())]
    for v in range(n):
        p = pm[v]
        lines.append("0" if p is None else str(p + 1))
    return "\n".join(lines) + "\n"


def parse_treedepth_decomposition(text):
    """Inverse of write_treedepth_decomposition.

    Returns (declared_height, decomposition).  The declared height is not
    checked against the forest here; verification does that.
    """
    rows = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not rows:
        raise ParseError(1, "empty file")
    try:
        declared = int(rows[0])
    except ValueError:
        raise ParseError(1, "height line must be an integer")
    n = len(rows) - 1
    parents = {}
    for i, row in enumerate(rows[1:], start=0):
        try:
            p = int(row)
        except ValueError:
            raise ParseError(i + 2, "parent line must be an integer")
        if not 0 <= p <= n:
            raise ParseError(i + 2, f"parent {p} out of range 0..{n}")
        if p - 1 == i:
            raise ParseError(i + 2, "vertex cannot be its own parent")
        parents[i] = None if p == 0 else p - 1
    try:
        t = TreedepthDecomposition.from_vertex_parents(parents)
    except InputError as e:
        raise ParseError(len(rows) + 1, str(e))
    return declared, t


@dataclass(frozen=True)
class RunReport:
    """Per-run record; schema documented in the README."""

    instance: str
    variant: str
    n: int
    t: object  # int or None (exact search reports the found value in answer)
    width: object  # int or None when no decomposition was built
    answer: str  # "<= h" / "> t" / exact value as a string
    bag_table_sizes: tuple
    peak_table_size: int
    wall_time_s: float
    early_no_reason: object = None  # None | 'dfs-depth-cap' | 'clique'

    def __post_init__(self):
        peak = max(self.bag_table_sizes, default=0)
        if peak != self.peak_table_size:
            raise InputError("peak table size must equal the max per-bag size")


def write_report(r):
    data = asdict(r)
    data["bag_table_sizes"] = list(r.bag_table_sizes)
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def parse_report(text):
    data = json.loads(text)
    data["bag_table_sizes"] = tuple(data["bag_table_sizes"])
    return RunReport(**data)


def graph_to_td_text(td, g):
    return write_td(td, g.n)


def decomposition_to_dot(t, name="treedepth"):
    """Graphviz rendering of a treedepth decomposition."""
    lines = [f"digraph {name} {{", "  node [shape=circle];"]
    for i, lab in enumerate(t.label):
        txt = str(lab) if lab >= 0 else "?"
        lines.append(f'  n{i} [label="{txt}"];')
    for i, p in enumerate(t.parent):
        if p != -1:
            lines.append(f"  n{p} -> n{i};")
    lines.append("}")
    return "\n".join(lines) + "\n"
