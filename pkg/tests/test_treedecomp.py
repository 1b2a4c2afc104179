"""Tree decomposition construction, normalization, verification, formats."""

import itertools
import random

import pytest

from speccon.treedecomp import (
    NiceTreeDecomposition,
    TreeDecomposition,
    decompose,
    from_pace_text,
    to_nice,
    to_pace_text,
    verify,
)

from oracle_utils import random_graph, random_tree, uf_connected


def p4_decomposition():
    return TreeDecomposition(
        bags=(frozenset({0, 1}), frozenset({1, 2}), frozenset({2, 3})),
        tree_edges=frozenset({(0, 1), (1, 2)}),
    )


P4_EDGES = [(0, 1), (1, 2), (2, 3)]
K4_EDGES = list(itertools.combinations(range(4), 2))
C4_EDGES = [(0, 1), (1, 2), (2, 3), (0, 3)]


def test_verify_valid_path_decomposition():
    ok, why = verify(4, P4_EDGES, p4_decomposition())
    assert ok and why is None


def test_verify_reports_uncovered_edge():
    td = TreeDecomposition(
        bags=(frozenset({0, 1}), frozenset({2, 3})),
        tree_edges=frozenset({(0, 1)}),
    )
    ok, why = verify(4, P4_EDGES, td)
    assert not ok
    assert "edge {1, 2} uncovered" in why


def test_verify_reports_connected_subtree_violation():
    td = TreeDecomposition(
        bags=(frozenset({0, 1}), frozenset({1, 2}), frozenset({2, 3, 0})),
        tree_edges=frozenset({(0, 1), (1, 2)}),
    )
    ok, why = verify(4, P4_EDGES, td)
    assert not ok
    assert "connected-subtree violated" in why


def test_verify_reports_missing_vertex():
    td = TreeDecomposition(bags=(frozenset({0, 1}),), tree_edges=frozenset())
    ok, why = verify(3, [(0, 1)], td)
    assert not ok
    assert "vertex 2" in why


def test_verify_rejects_non_tree_shapes():
    cyclic = TreeDecomposition(
        bags=(frozenset({0}), frozenset({0}), frozenset({0})),
        tree_edges=frozenset({(0, 1), (1, 2), (0, 2)}),
    )
    ok, why = verify(1, [], cyclic)
    assert not ok and "tree" in why


def test_path_decomposition_example():
    td = decompose(4, P4_EDGES, 1)
    assert td is not None and td.width == 1
    assert sorted(td.bags, key=sorted) == [
        frozenset({0, 1}),
        frozenset({1, 2}),
        frozenset({2, 3}),
    ]
    assert verify(4, P4_EDGES, td)[0]


def test_k4_has_no_width_2_decomposition():
    assert decompose(4, K4_EDGES, 2) is None
    td = decompose(4, K4_EDGES, 3)
    assert td is not None and td.width == 3
    assert verify(4, K4_EDGES, td)[0]


def test_c4_width_2():
    td = decompose(4, C4_EDGES, 2)
    assert td is not None and td.width == 2
    assert verify(4, C4_EDGES, td)[0]


def test_decompose_argument_checks():
    with pytest.raises(ValueError):
        decompose(3, [], 0)
    with pytest.raises(ValueError):
        decompose(-1, [], 1)


def test_decompose_degenerate_sizes():
    td0 = decompose(0, [], 1)
    assert td0 is not None and verify(0, [], td0)[0]
    td1 = decompose(1, [], 1)
    assert td1 is not None and verify(1, [], td1)[0]


def test_every_tree_gets_edge_bags():
    rng = random.Random(5)
    for n in range(2, 12):
        for _ in range(10):
            edges = random_tree(rng, n)
            td = decompose(n, edges, 1)
            assert td is not None and td.width == 1
            assert len(td.bags) == n - 1
            assert all(len(bag) == 2 for bag in td.bags)
            assert verify(n, edges, td)[0]


def test_decompose_random_sweep_always_verifies():
    # decompose() may return None (bound missed) but must never return an
    # invalid decomposition, and must respect the width bound.
    rng = random.Random(99)
    checked = 0
    for _ in range(700):
        n = rng.randint(2, 10)
        p = rng.choice([0.15, 0.3, 0.5])
        edges = random_graph(rng, n, p)
        bound = rng.choice([1, 2, 3])
        td = decompose(n, edges, bound)
        if td is None:
            continue
        checked += 1
        assert td.width <= bound
        ok, why = verify(n, edges, td)
        assert ok, why
    assert checked > 100


def test_exact_search_finds_known_widths():
    # Complete graphs: tw(K_n) = n - 1.
    for n in range(3, 7):
        edges = list(itertools.combinations(range(n), 2))
        assert decompose(n, edges, n - 2) is None
        td = decompose(n, edges, n - 1)
        assert td is not None and verify(n, edges, td)[0]
    # Cycles have treewidth 2.
    for n in range(3, 9):
        cyc = [(i, (i + 1) % n) for i in range(n)]
        assert decompose(n, cyc, 2) is not None
        if n > 3:
            assert decompose(n, cyc, 1) is None


def test_to_nice_shapes_and_width():
    rng = random.Random(31)
    for _ in range(120):
        n = rng.randint(2, 9)
        edges = random_graph(rng, n, 0.35)
        td = decompose(n, edges, 3)
        if td is None:
            continue
        nice = to_nice(td)
        assert isinstance(nice, NiceTreeDecomposition)
        assert nice.width == td.width
        for node, kids in enumerate(nice.children):
            assert len(kids) in (0, 2)
        as_td = TreeDecomposition(bags=nice.bags, tree_edges=nice.tree_edge_set())
        ok, why = verify(n, edges, as_td)
        assert ok, why


def test_to_nice_single_bag():
    td = TreeDecomposition(bags=(frozenset({0, 1}),), tree_edges=frozenset())
    nice = to_nice(td)
    assert nice.root == 0
    assert nice.children == ((),)
    assert nice.bags == td.bags


def test_to_nice_binarizes_high_degree():
    star = TreeDecomposition(
        bags=(
            frozenset({0, 1}),
            frozenset({0, 2}),
            frozenset({0, 3}),
            frozenset({0, 4}),
        ),
        tree_edges=frozenset({(0, 1), (0, 2), (0, 3)}),
    )
    nice = to_nice(star)
    assert all(len(kids) in (0, 2) for kids in nice.children)
    assert set(nice.bags) == set(star.bags)  # duplicate bags only, no new ones
    assert nice.width == star.width


def test_to_nice_rejects_invalid():
    broken = TreeDecomposition(
        bags=(frozenset({0}), frozenset({1}), frozenset({0})),
        tree_edges=frozenset({(0, 1), (1, 2)}),
    )
    with pytest.raises(ValueError):
        to_nice(broken)


def test_pace_round_trip():
    rng = random.Random(63)
    for _ in range(60):
        n = rng.randint(2, 9)
        edges = random_graph(rng, n, 0.4)
        td = decompose(n, edges, 3)
        if td is None:
            continue
        text = to_pace_text(td, n)
        back = from_pace_text(text)
        assert sorted(back.bags, key=sorted) == sorted(td.bags, key=sorted)
        assert back.width == td.width
        ok, why = verify(n, edges, back)
        assert ok, why


def test_pace_format_shape():
    text = to_pace_text(p4_decomposition(), 4)
    lines = text.strip().splitlines()
    assert lines[0] == "s td 3 2 4"
    assert lines[1].startswith("b 1 ")
    back = from_pace_text(text)
    assert back.bags == p4_decomposition().bags


def test_pace_parse_errors():
    with pytest.raises(ValueError):
        from_pace_text("b 1 1\n")  # missing header
    with pytest.raises(ValueError):
        from_pace_text("s td 2 2 2\nb 1 1 2\nb 1 1 2\n1 1\n")  # duplicate bag id
    with pytest.raises(ValueError):
        from_pace_text("s td 1 1 2\nb 1 1 2\n")  # width mismatch with header


def test_large_graph_uses_heuristic_path():
    rng = random.Random(8)
    n = 30
    edges = random_tree(rng, n)
    extra = random_graph(rng, n, 0.02)
    all_edges = sorted(set(edges) | set(extra))
    td = decompose(n, all_edges, 6)
    if td is not None:
        ok, why = verify(n, all_edges, td)
        assert ok, why
        assert td.width <= 6
