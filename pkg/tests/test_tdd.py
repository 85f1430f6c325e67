import pytest

import brute
from tdsolve import (
    Graph,
    InputError,
    TreedepthDecomposition,
    closure,
    height,
    is_nice,
    make_nice_tdd,
    oracle_treedepth,
    strip_improvable,
    validate_tdd,
)
from tdsolve.generators import clique_graph, path_graph, star_graph
from tdsolve.graph import dfs_tree_capped


def chain(labels):
    """Chain decomposition, first label at the root."""
    parent = [-1] + list(range(len(labels) - 1))
    return TreedepthDecomposition(parent, labels)


def test_constructor_rejects_duplicates_and_cycles():
    with pytest.raises(InputError):
        TreedepthDecomposition((-1, 0), (1, 1))
    with pytest.raises(InputError):
        TreedepthDecomposition((1, 0), (0, 1))


def test_validate_clique_chain():
    t = chain([0, 1, 2])
    assert validate_tdd(clique_graph(3), t) is None
    assert t.height() == 3


def test_validate_p3_star():
    t = TreedepthDecomposition((-1, 0, 0), (1, 0, 2))
    assert validate_tdd(path_graph(3), t) is None
    assert t.height() == 2


def test_validate_uncovered_edge():
    # edge 0-1 with both vertices as siblings under an unlabeled root
    t = TreedepthDecomposition((-1, 0, 0), (-1, 0, 1))
    bad = validate_tdd(Graph(2, [(0, 1)]), t)
    assert bad is not None and bad.kind == "uncovered-edge"
    assert bad.witness == (0, 1)


def test_validate_missing_vertex():
    t = chain([0])
    bad = validate_tdd(Graph(2), t)
    assert bad is not None and bad.kind == "missing-vertex" and bad.witness == 1


def test_height_examples():
    assert height(chain([0])) == 1
    assert height(chain([0, 1, 2, 3])) == 4
    star = TreedepthDecomposition(
        (-1, 0, 0, 0, 0, 0), (0, 1, 2, 3, 4, 5)
    )
    assert height(star) == 2
    assert height(TreedepthDecomposition((), ())) == 0


def test_closure():
    t = chain([0, 1, 2])
    assert closure(t).edges == frozenset({(0, 1), (0, 2), (1, 2)})
    anon = TreedepthDecomposition((-1, 0, 1), (-1, 0, 1))
    assert closure(anon).edges == frozenset({(0, 1)})


def test_strip_unlabeled_root():
    g = path_graph(2)
    t = TreedepthDecomposition((-1, 0, 1), (-1, 0, 1))
    out = strip_improvable(g, t)
    assert out.n_nodes == 2 and out.height() == t.height() - 1
    assert validate_tdd(g, out) is None


def test_strip_fixed_point():
    t = chain([0, 1, 2])
    assert strip_improvable(clique_graph(3), t) == t


def test_strip_padded_internals():
    # P3 decomposition padded with 2 unlabeled internal nodes
    g = path_graph(3)
    t = TreedepthDecomposition(
        (-1, 0, 1, 2, 2), (1, -1, -1, 0, 2)
    )
    assert validate_tdd(g, t) is None
    out = strip_improvable(g, t)
    assert out.n_nodes == 3
    assert out.height() <= t.height()
    assert validate_tdd(g, out) is None


def test_strip_random_properties(rng):
    for _ in range(60):
        g = brute.random_connected_graph(rng, rng.randint(2, 7), extra=3)
        dfs = dfs_tree_capped(g, g.n)
        pm = {
            v: (None if dfs.parent[v] == -1 else dfs.parent[v])
            for v in range(g.n)
        }
        base = TreedepthDecomposition.from_vertex_parents(pm)
        # pad with an unlabeled root above and an unlabeled node splice
        parent = [p + 1 if p != -1 else 0 for p in base.parent]
        parent.insert(0, -1)
        label = [-1] + list(base.label)
        padded = TreedepthDecomposition(parent, label)
        out = strip_improvable(g, padded)
        assert validate_tdd(g, out) is None
        assert out.height() <= padded.height()
        assert all(lab >= 0 for lab in out.label)


def test_make_nice_clique_chain_unchanged():
    g = clique_graph(4)
    t = chain([2, 0, 3, 1])
    assert make_nice_tdd(g, t).vertex_parents() == t.vertex_parents()


def test_make_nice_star_example():
    # star with center 0, one leaf hung two levels below another leaf
    g = star_graph(4)
    t = TreedepthDecomposition((-1, 0, 1, 1), (0, 1, 2, 3))
    assert validate_tdd(g, t) is None
    out = make_nice_tdd(g, t)
    assert is_nice(g, out) is None
    assert out.height() == oracle_treedepth(g)[0] == 2


def test_is_nice_examples():
    t = chain([1, 0, 2])
    # 1 is the middle of P3: subtree {0,2}? chain 1-0-2: subtree of 0 is {0,2},
    # induced edges none -> not nice
    assert is_nice(path_graph(3), t) is not None
    good = chain([0, 1, 2])
    assert is_nice(path_graph(3), good) is None
    two = TreedepthDecomposition((-1, 0), (0, 1))
    assert is_nice(Graph(2), two) is not None


def test_make_nice_random_audit(rng):
    for _ in range(200):
        n = rng.randint(2, 10)
        g = brute.random_connected_graph(rng, n, extra=4)
        dfs = dfs_tree_capped(g, n)
        pm = {
            v: (None if dfs.parent[v] == -1 else dfs.parent[v])
            for v in range(n)
        }
        t = TreedepthDecomposition.from_vertex_parents(pm)
        assert validate_tdd(g, t) is None
        out = make_nice_tdd(g, t)
        assert validate_tdd(g, out) is None
        assert is_nice(g, out) is None
        assert out.height() <= t.height()
        # ancestor sets shrink or stay equal per vertex
        def ancs(tdd):
            pmx = tdd.vertex_parents()
            out_a = {}
            for v in pmx:
                s = set()
                u = pmx[v]
                while u is not None:
                    s.add(u)
                    u = pmx[u]
                out_a[v] = s
            return out_a

        before, after = ancs(t), ancs(out)
        assert all(after[v] <= before[v] for v in after)
        again = make_nice_tdd(g, out)
        assert again == out


def test_nice_internal_nodes_have_edges_into_child_subtrees(rng):
    for _ in range(80):
        n = rng.randint(2, 8)
        g = brute.random_connected_graph(rng, n, extra=3)
        dfs = dfs_tree_capped(g, n)
        pm = {
            v: (None if dfs.parent[v] == -1 else dfs.parent[v])
            for v in range(n)
        }
        out = make_nice_tdd(g, TreedepthDecomposition.from_vertex_parents(pm))
        pmx = out.vertex_parents()
        kids = {v: [] for v in pmx}
        for v, p in pmx.items():
            if p is not None:
                kids[p].append(v)

        def subtree(v):
            s = {v}
            for c in kids[v]:
                s |= subtree(c)
            return s

        for x in pmx:
            for c in kids[x]:
                sub = subtree(c)
                assert any(w in sub for w in g.adj[x])
        # random child subsets keep the node-plus-subset subgraph connected
        for x in pmx:
            if not kids[x]:
                continue
            take = [c for c in kids[x] if rng.random() < 0.6]
            vs = {x}
            for c in take:
                vs |= subtree(c)
            from tdsolve import connected_components, induced_subgraph

            sub, _ = induced_subgraph(g, vs)
            assert len(connected_components(sub)) == 1


def test_make_nice_requires_connected():
    with pytest.raises(InputError):
        make_nice_tdd(Graph(2), TreedepthDecomposition((-1, 0), (0, 1)))
