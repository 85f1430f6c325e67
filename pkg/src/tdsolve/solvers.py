"""End-to-end solver variants and the exact-value search wrapper.

All variants split disconnected inputs into components and take the max;
witness forests are the unions of the per-component witnesses.
"""
from __future__ import annotations

import time
from dataclasses import dataclass

from .dp import decide
from .errors import InputError
from .graph import (
    connected_components,
    dfs_tree_capped,
    induced_subgraph,
    is_chordal,
    max_clique_size_chordal,
)
from .io_formats import RunReport
from .tdd import TreedepthDecomposition
from .treedec import (
    TreeDecomposition,
    heuristic_decomposition,
    path_decomposition_from_dfs,
    validate,
)

VARIANTS = ("simple", "fast", "chordal", "given")


@dataclass(frozen=True)
class SolverConfig:
    variant: str = "fast"
    decide_only: bool = False
    table_cap: object = None  # positive int or None
    naive: bool = False

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise InputError(f"unknown variant {self.variant!r}")
        if self.table_cap is not None and self.table_cap < 1:
            raise InputError("table cap must be positive")


@dataclass
class SolveOutcome:
    answer: bool  # decision result; the exact search answers True at value
    value: object  # exact treedepth for the search wrapper, else None
    decomposition: object  # TreedepthDecomposition or None
    report: RunReport


def _restrict_td(td, new_of_old):
    bags = [
        frozenset(new_of_old[v] for v in bag if v in new_of_old)
        for bag in td.bags
    ]
    return TreeDecomposition(bags, td.edges)


def _merge_witnesses(parts):
    """Union of per-component decompositions, in original vertex ids."""
    merged = {}
    for t, old_of_new in parts:
        pm = t.vertex_parents()
        for v, p in pm.items():
            merged[old_of_new[v]] = None if p is None else old_of_new[p]
    return TreedepthDecomposition.from_vertex_parents(merged)


def _report(instance, variant, g, t, width, answer, sizes, started, early=None):
    return RunReport(
        instance=instance,
        variant=variant,
        n=g.n,
        t=t,
        width=width,
        answer=answer,
        bag_table_sizes=tuple(sizes),
        peak_table_size=max(sizes, default=0),
        wall_time_s=time.perf_counter() - started,
        early_no_reason=early,
    )


def _decide_components(g, t, decomposer, config, instance, variant, started):
    """Decision per component with a component-specific decomposition.

    `decomposer(sub, new_of_old) -> (td, early_no_reason)`; a non-None
    reason means the component is already known to exceed t.
    """
    sizes = []
    widths = []
    parts = []
    early = None
    yes = True
    for comp in connected_components(g):
        sub, old_of_new = induced_subgraph(g, comp)
        new_of_old = {v: i for i, v in enumerate(old_of_new)}
        td, reason = decomposer(sub, new_of_old)
        if reason is not None:
            yes = False
            early = reason
            break
        res = decide(
            sub,
            t,
            td,
            want_witness=not config.decide_only,
            naive=config.naive,
            decide_only=config.decide_only,
            cap=config.table_cap,
            path_only=(variant == "chordal"),
        )
        sizes.extend(res.bag_sizes)
        if res.width is not None:
            widths.append(res.width)
        if not res.yes:
            yes = False
            break
        if res.witness is not None:
            parts.append((res.witness, old_of_new))
    width = max(widths, default=None)
    decomposition = None
    if yes:
        if g.n == 0:
            decomposition = TreedepthDecomposition((), ())
        elif not config.decide_only:
            decomposition = _merge_witnesses(parts)
    if yes:
        h = decomposition.height() if decomposition is not None else t
        answer = f"<= {h}"
    else:
        answer = f"> {t}"
    report = _report(
        instance, variant, g, t, width, answer, sizes, started, early
    )
    return SolveOutcome(yes, None, decomposition, report)


def solve_simple(g, t, config=None, instance="<memory>"):
    """DFS-based variant: cap the DFS at depth 2^t, decompose along the tree.

    A DFS deeper than 2^t certifies a path too long for treedepth t, so the
    answer is no without running the dynamic program.
    """
    config = config or SolverConfig(variant="simple")
    if t < 0:
        raise InputError("t must be nonnegative")
    started = time.perf_counter()

    def decomposer(sub, new_of_old):
        dfs = dfs_tree_capped(sub, 2**t)
        if dfs is None:
            return None, "dfs-depth-cap"
        return path_decomposition_from_dfs(dfs), None

    return _decide_components(
        g, t, decomposer, config, instance, "simple", started
    )


def solve_fast(g, t, provided_td=None, config=None, instance="<memory>"):
    """Decomposition-driven variant: provided file or min-fill heuristic.

    A bag inducing a clique larger than t certifies treedepth above t and
    short-circuits to no; otherwise the width is recorded and the dynamic
    program decides.
    """
    config = config or SolverConfig(variant="fast")
    if t < 0:
        raise InputError("t must be nonnegative")
    started = time.perf_counter()
    if provided_td is not None:
        bad = validate(g, provided_td)
        if bad is not None:
            raise InputError(f"provided decomposition invalid: {bad}")
    variant = "given" if provided_td is not None else "fast"

    def decomposer(sub, new_of_old):
        if provided_td is not None:
            td = _restrict_td(provided_td, new_of_old)
        else:
            td = heuristic_decomposition(sub)
        for bag in td.bags:
            if len(bag) > t and _is_clique(sub, bag):
                return None, "clique"
        return td, None

    return _decide_components(
        g, t, decomposer, config, instance, variant, started
    )


def _is_clique(g, bag):
    bag = sorted(bag)
    for i, u in enumerate(bag):
        au = set(g.adj[u])
        for v in bag[i + 1 :]:
            if v not in au:
                return False
    return True


def solve_chordal(g, t, config=None, instance="<memory>"):
    """Chordal specialization: clique-number cutoff plus path-only tables.

    On chordal inputs every bag of the clique tree is a clique, which forces
    all boundary vertices onto one root-to-leaf path, so only path-shaped
    forests are generated and kept.  The clique tree is built from the
    min-fill elimination order (perfect on chordal graphs), so runs are
    directly comparable with the general variant's decomposition.
    """
    config = config or SolverConfig(variant="chordal")
    if t < 0:
        raise InputError("t must be nonnegative")
    started = time.perf_counter()
    peo = is_chordal(g)
    if peo is None:
        raise InputError("solve_chordal requires a chordal graph")
    omega = max_clique_size_chordal(g, peo)
    if omega > t:
        report = _report(
            instance, "chordal", g, t, None, f"> {t}", (), started, "clique"
        )
        return SolveOutcome(False, None, None, report)

    def decomposer(sub, new_of_old):
        # min-fill is a perfect elimination on chordal graphs, so this is a
        # clique tree and identical to the general variant's decomposition
        td = heuristic_decomposition(sub)
        for bag in td.bags:
            if not _is_clique(sub, bag):
                raise InputError("chordal input produced a non-clique bag")
        return td, None

    return _decide_components(
        g, t, decomposer, config, instance, "chordal", started
    )


def exact_treedepth(g, variant="fast", provided_td=None, config=None, instance="<memory>"):
    """Smallest t accepted by the chosen decision variant, with a witness.

    Searches upward from t = 1 (t = 0 only fits the empty graph); decision
    monotonicity in t makes the first yes the exact value.
    """
    started = time.perf_counter()
    if g.n == 0:
        report = _report(instance, variant, g, None, None, "0", (), started)
        return SolveOutcome(True, 0, TreedepthDecomposition((), ()), report)
    t = 1
    while True:
        if variant == "simple":
            out = solve_simple(g, t, config, instance)
        elif variant == "chordal":
            out = solve_chordal(g, t, config, instance)
        elif variant in ("fast", "given"):
            out = solve_fast(g, t, provided_td, config, instance)
        else:
            raise InputError(f"unknown variant {variant!r}")
        if out.answer:
            value = (
                out.decomposition.height()
                if out.decomposition is not None
                else t
            )
            report = RunReport(
                instance=instance,
                variant=out.report.variant,
                n=g.n,
                t=t,
                width=out.report.width,
                answer=str(value),
                bag_table_sizes=out.report.bag_table_sizes,
                peak_table_size=out.report.peak_table_size,
                wall_time_s=time.perf_counter() - started,
                early_no_reason=None,
            )
            return SolveOutcome(True, value, out.decomposition, report)
        if t > g.n:
            raise InputError("decision never accepted; inputs inconsistent")
        t += 1
