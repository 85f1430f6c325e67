import pytest

import brute
from tdsolve import (
    Graph,
    InputError,
    TreeDecomposition,
    add_universal_root,
    clique_tree,
    heuristic_decomposition,
    is_chordal,
    make_nice,
    max_clique_size_chordal,
    path_decomposition_from_dfs,
    root_and_augment,
    validate,
)
from tdsolve.generators import clique_graph, cycle_graph, k_tree_graph, path_graph, star_graph
from tdsolve.graph import dfs_tree_capped
from tdsolve.treedec import audit_nice, to_tree_decomposition


def test_tree_decomposition_structure_checks():
    with pytest.raises(InputError):
        TreeDecomposition([], [])
    with pytest.raises(InputError):
        TreeDecomposition([{0}, {1}], [])  # two bags, no edge
    with pytest.raises(InputError):
        TreeDecomposition([{0}, {1}, {2}], [(0, 1), (0, 1)])


def test_validate_examples():
    g = path_graph(3)
    one = TreeDecomposition([{0, 1, 2}], [])
    assert validate(g, one) is None and one.width == 2
    two = TreeDecomposition([{0, 1}, {1, 2}], [(0, 1)])
    assert validate(g, two) is None and two.width == 1
    bad = TreeDecomposition([{0}, {1, 2}], [(0, 1)])
    v = validate(g, bad)
    assert v is not None and v.kind == "uncovered-edge" and v.witness == (0, 1)


def test_validate_disconnected_trace():
    g = Graph(3, [(0, 1), (1, 2)])
    td = TreeDecomposition([{0, 1}, {1, 2}, {0}], [(0, 1), (1, 2)])
    v = validate(g, td)
    assert v is not None and v.kind == "disconnected-trace" and v.witness == 0


def test_make_nice_single_bags():
    nt = make_nice(TreeDecomposition([{0}], []))
    assert nt.n_nodes == 1 and nt.kind[0] == "leaf"
    nt = make_nice(TreeDecomposition([{0, 1}], []))
    kinds = [nt.kind[i] for i in range(nt.n_nodes)]
    assert kinds == ["leaf", "introduce"]
    assert nt.bags[0] == {0} and nt.vertex[1] == 1


def test_make_nice_two_bags_validates():
    g = path_graph(3)
    td = TreeDecomposition([{0, 1}, {1, 2}], [(0, 1)])
    nt = make_nice(td)
    assert nt.width == 1
    assert audit_nice(g, nt) is None


def test_make_nice_random_audit(rng):
    for _ in range(60):
        g = brute.random_graph(rng, rng.randint(1, 9))
        td = heuristic_decomposition(g)
        assert validate(g, td) is None
        nt = make_nice(td)
        assert audit_nice(g, nt) is None
        assert nt.width == td.width


def test_path_decomposition_examples():
    g = path_graph(3)
    t = dfs_tree_capped(g, 8)
    pdec = path_decomposition_from_dfs(t)
    assert list(pdec.bags) == [frozenset({0}), frozenset({0, 1}), frozenset({0, 1, 2})]
    assert pdec.width == 2
    assert validate(g, pdec) is None

    single = path_decomposition_from_dfs(dfs_tree_capped(Graph(1), 1))
    assert list(single.bags) == [frozenset({0})]

    k4 = clique_graph(4)
    pd4 = path_decomposition_from_dfs(dfs_tree_capped(k4, 4))
    assert pd4.width == 3
    assert validate(k4, pd4) is None


def test_path_decomposition_width_is_height_minus_one(rng):
    for _ in range(40):
        g = brute.random_connected_graph(rng, rng.randint(1, 9), extra=3)
        t = dfs_tree_capped(g, g.n)
        pdec = path_decomposition_from_dfs(t)
        assert pdec.width == t.height - 1
        assert validate(g, pdec) is None


def test_clique_tree_examples():
    k4 = clique_graph(4)
    ct = clique_tree(k4, is_chordal(k4))
    assert len(ct.bags) == 1 and len(ct.bags[0]) == 4

    tree = Graph(5, [(0, 1), (1, 2), (1, 3), (3, 4)])
    ct = clique_tree(tree, is_chordal(tree))
    assert ct.width == 1
    assert sorted(ct.bags) == sorted(frozenset(e) for e in tree.edges)
    assert validate(tree, ct) is None

    shared = Graph(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])
    ct = clique_tree(shared, is_chordal(shared))
    assert sorted(len(b) for b in ct.bags) == [3, 3]
    assert validate(shared, ct) is None


def test_clique_tree_bags_are_cliques(rng):
    for seed in range(25):
        g = k_tree_graph(rng.randint(4, 10), seed=seed, k=rng.randint(1, 3))
        peo = is_chordal(g)
        ct = clique_tree(g, peo)
        assert validate(g, ct) is None
        for bag in ct.bags:
            assert all(
                g.has_edge(u, v)
                for i, u in enumerate(sorted(bag))
                for v in sorted(bag)[i + 1 :]
            )
        assert ct.width + 1 == max_clique_size_chordal(g, peo)


def test_clique_tree_rejects_nonchordal():
    c4 = cycle_graph(4)
    from tdsolve.graph import EliminationOrder

    with pytest.raises(InputError):
        clique_tree(c4, EliminationOrder((0, 1, 2, 3), (0, 1, 2, 3)))


def test_root_and_augment_single_leaf():
    nt = make_nice(TreeDecomposition([{0}], []))
    out = root_and_augment(nt, 9)
    assert out.n_nodes == 2
    kinds = {out.kind[i] for i in range(2)}
    assert kinds == {"leaf", "introduce"}
    leaf = next(i for i in range(2) if out.kind[i] == "leaf")
    assert out.bags[leaf] == {9}
    intro = 1 - leaf
    assert out.bags[intro] == {0, 9} and out.vertex[intro] == 0


def test_root_and_augment_p3():
    g = path_graph(3)
    nt = make_nice(heuristic_decomposition(g))
    rooted = add_universal_root(g)
    out = root_and_augment(nt, rooted.root)
    assert out.width == nt.width + 1
    assert all(rooted.root in bag for bag in out.bags)
    assert audit_nice(rooted.graph, out) is None


def test_root_and_augment_join_bags():
    g = star_graph(4)
    td = TreeDecomposition([{0, 1}, {0, 2}, {0, 3}], [(0, 1), (0, 2)])
    assert validate(g, td) is None
    nt = make_nice(td)
    joins = [i for i in range(nt.n_nodes) if nt.kind[i] == "join"]
    assert joins, "expected a join under a branching bag tree"
    out = root_and_augment(nt, 4)
    for j in joins:
        assert out.kind[j] == "join"
        for c in out.children()[j]:
            assert out.bags[c] == out.bags[j]


def test_root_and_augment_rejects_present_vertex():
    nt = make_nice(TreeDecomposition([{0}], []))
    with pytest.raises(InputError):
        root_and_augment(nt, 0)


def test_root_and_augment_width_plus_one(rng):
    for _ in range(30):
        g = brute.random_graph(rng, rng.randint(1, 8))
        nt = make_nice(heuristic_decomposition(g))
        rooted = add_universal_root(g)
        out = root_and_augment(nt, rooted.root)
        assert out.width == nt.width + 1
        assert audit_nice(rooted.graph, out) is None


def test_heuristic_examples():
    tree = Graph(6, [(0, 1), (1, 2), (1, 3), (3, 4), (3, 5)])
    assert heuristic_decomposition(tree).width == 1
    assert heuristic_decomposition(clique_graph(5)).width == 4
    c5 = cycle_graph(5)
    td = heuristic_decomposition(c5)
    assert validate(c5, td) is None
    assert td.width == brute.brute_treewidth(c5) == 2


def test_heuristic_always_valid(rng):
    for _ in range(50):
        g = brute.random_graph(rng, rng.randint(0, 9))
        td = heuristic_decomposition(g)
        assert validate(g, td) is None


def test_to_tree_decomposition_roundtrip():
    g = path_graph(4)
    nt = make_nice(heuristic_decomposition(g))
    td = to_tree_decomposition(nt)
    assert validate(g, td) is None
