import pytest

import brute
from tdsolve import InputError, connected_components, is_chordal
from tdsolve.generators import FAMILIES, generate


def test_path_cycle_clique_star_shapes():
    p = generate("path", 5)
    assert p.m == 4 and connected_components(p) == [[0, 1, 2, 3, 4]]
    c = generate("cycle", 5)
    assert c.m == 5 and all(c.degree(v) == 2 for v in range(5))
    k = generate("clique", 5)
    assert k.m == 10
    s = generate("star", 5)
    assert s.degree(0) == 4 and s.m == 4


def test_deterministic_under_seed():
    for family in FAMILIES:
        size = 8 if family != "k-tree" else 8
        a = generate(family, size, seed=42)
        b = generate(family, size, seed=42)
        assert a == b
    a = generate("random-gnm", 9, seed=1)
    b = generate("random-gnm", 9, seed=2)
    assert a != b


def test_random_tree_is_tree():
    for seed in range(10):
        g = generate("random-tree", 9, seed=seed)
        assert g.m == 8
        assert len(connected_components(g)) == 1


def test_k_tree_chordal():
    for seed in range(10):
        g = generate("k-tree", 10, seed=seed, k=2)
        assert is_chordal(g) is not None
        assert brute.brute_max_clique(g) == 3


def test_interval_chordal():
    for seed in range(10):
        g = generate("interval", 9, seed=seed)
        assert is_chordal(g) is not None


def test_gnm_edge_count():
    g = generate("random-gnm", 10, seed=0, m=12)
    assert g.m == 12
    with pytest.raises(InputError):
        generate("random-gnm", 3, seed=0, m=10)


def test_unknown_family():
    with pytest.raises(InputError):
        generate("mystery", 5)
