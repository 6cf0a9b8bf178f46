import math
import random

import pytest

from queens_lab.counting import count_toroidal
from queens_lab.errors import (
    InvalidHypergraphError,
    IrregularHypergraphError,
    SearchBudgetError,
    SizeLimitError,
)
from queens_lab.hypergraph import (
    Hypergraph,
    build_flip_hg,
    build_steiner_aux_hg,
    build_sudoku_hg,
    build_torus_queens_hg,
    build_transversal_hg,
    count_perfect_matchings,
    cyclic_latin_square,
    entropy_bound_log,
    from_json,
    relabel_vertices,
    stats,
    to_json,
)

from helpers import (
    independent_sts_count,
    independent_sudoku_count,
    independent_transversal_count,
)


def test_container_validation():
    with pytest.raises(InvalidHypergraphError, match="duplicate"):
        Hypergraph(3, ((0, 1), (1, 0)))
    with pytest.raises(InvalidHypergraphError, match="range"):
        Hypergraph(2, ((0, 2),))
    with pytest.raises(InvalidHypergraphError, match="repeats"):
        Hypergraph(3, ((1, 1),))
    with pytest.raises(InvalidHypergraphError, match="empty"):
        Hypergraph(3, ((),))
    hg = Hypergraph(3, ((2, 0, 1),))
    assert hg.edges == ((0, 1, 2),)


def test_torus_stats():
    s = stats(build_torus_queens_hg(5))
    assert (s.num_vertices, s.num_edges, s.d, s.k) == (20, 25, 4, 5)
    assert s.is_regular
    assert s.max_codegree == 1


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6, 7, 8])
def test_torus_matchings_equal_toroidal_count(n):
    hg = build_torus_queens_hg(n)
    assert count_perfect_matchings(hg) == count_toroidal(n).count


def test_transversal_stats_and_count():
    latin = cyclic_latin_square(3)
    hg = build_transversal_hg(latin)
    s = stats(hg)
    assert (s.num_vertices, s.num_edges, s.d, s.k, s.max_codegree) == (9, 9, 3, 3, 1)
    assert count_perfect_matchings(hg) == independent_transversal_count(latin) == 3


def test_transversal_order_two_has_none():
    latin = cyclic_latin_square(2)
    assert count_perfect_matchings(build_transversal_hg(latin)) == 0
    assert independent_transversal_count(latin) == 0


def test_transversal_rejects_bad_latin_square():
    with pytest.raises(InvalidHypergraphError, match="row 0"):
        build_transversal_hg([[0, 0], [1, 1]])
    with pytest.raises(InvalidHypergraphError, match="column 0"):
        build_transversal_hg([[0, 1], [0, 1]])


def test_sudoku_stats_and_count():
    hg = build_sudoku_hg(2)
    s = stats(hg)
    assert (s.num_vertices, s.num_edges, s.d, s.k) == (64, 64, 4, 4)
    assert s.max_codegree <= 2
    assert count_perfect_matchings(hg) == independent_sudoku_count(2) == 288


def test_steiner_stats_and_count():
    hg = build_steiner_aux_hg(7, 3, 2)
    s = stats(hg)
    assert (s.num_vertices, s.num_edges, s.d, s.k) == (21, 35, 3, 5)
    # Two point-pairs lie in a common triple only when their union has 3 points.
    assert s.max_codegree == 1
    assert count_perfect_matchings(hg) == independent_sts_count(7) == 30


def test_steiner_no_system_on_six_points():
    assert count_perfect_matchings(build_steiner_aux_hg(6, 3, 2)) == 0


def test_steiner_guards():
    with pytest.raises(InvalidHypergraphError):
        build_steiner_aux_hg(5, 3, 3)
    with pytest.raises(SizeLimitError):
        build_steiner_aux_hg(60, 5, 2, edge_cap=1000)


def test_flip_hypergraph():
    hg1 = build_flip_hg(1)
    s1 = stats(hg1)
    assert (s1.num_vertices, s1.num_edges, s1.d, s1.k) == (5, 5, 4, 4)
    # The 5 edges are the five 4-subsets of the queens, so every vertex
    # pair lies in exactly 3 of them.
    assert s1.max_codegree == 3
    # 5 vertices cannot be covered by 4-element edges.
    assert count_perfect_matchings(hg1) == 0
    s2 = stats(build_flip_hg(2))
    assert (s2.num_vertices, s2.num_edges, s2.d, s2.k) == (17, 68, 4, 16)
    assert s2.max_codegree == 3


@pytest.mark.parametrize(
    "hg",
    [
        build_torus_queens_hg(5),
        build_transversal_hg(cyclic_latin_square(3)),
        build_sudoku_hg(2),
        build_steiner_aux_hg(7, 3, 2),
        build_flip_hg(2),
    ],
    ids=["torus", "transversal", "sudoku", "steiner", "flip"],
)
def test_double_counting(hg):
    s = stats(hg)
    assert s.is_regular
    assert s.num_vertices * s.k == s.d * s.num_edges


def test_non_uniform_stats():
    s = stats(Hypergraph(3, ((0, 1), (0, 1, 2))))
    assert s.d is None
    assert s.edge_sizes == (2, 3)
    assert not s.is_regular


def test_matching_count_relabeling_invariance():
    for hg, expected in ((build_torus_queens_hg(5), 10), (build_steiner_aux_hg(7, 3, 2), 30)):
        for seed in range(10):
            mapping = list(range(hg.num_vertices))
            random.Random(seed).shuffle(mapping)
            assert count_perfect_matchings(relabel_vertices(hg, mapping)) == expected


def test_relabel_requires_permutation():
    with pytest.raises(InvalidHypergraphError):
        relabel_vertices(build_torus_queens_hg(2), [0] * 8)


def test_matching_threads_agree():
    hg = build_sudoku_hg(2)
    assert count_perfect_matchings(hg, threads=2) == 288
    assert count_perfect_matchings(build_torus_queens_hg(7), threads=2) == 28


def test_matching_budget():
    with pytest.raises(SearchBudgetError) as info:
        count_perfect_matchings(build_sudoku_hg(2), max_nodes=5)
    assert info.value.nodes_visited > 5


def test_empty_hypergraph_has_one_matching():
    assert count_perfect_matchings(Hypergraph(0, ())) == 1


def test_isolated_vertex_has_none():
    assert count_perfect_matchings(Hypergraph(2, ((1,),))) == 0


def test_entropy_bound_values():
    torus = entropy_bound_log(stats(build_torus_queens_hg(5)))
    assert torus.log_bound == pytest.approx(5.0 * (math.log(5) - 3.0))
    assert (torus.num_vertices, torus.k, torus.d) == (20, 5, 4)
    steiner = entropy_bound_log(stats(build_steiner_aux_hg(7, 3, 2)))
    assert steiner.log_bound == pytest.approx(7.0 * (math.log(5) - 2.0))
    singletons = entropy_bound_log(stats(Hypergraph(3, ((0,), (1,), (2,)))))
    assert singletons.log_bound == 0.0


def test_entropy_bound_requires_regular():
    irregular = Hypergraph(3, ((0, 1), (0, 2), (0, 1, 2)))
    with pytest.raises(IrregularHypergraphError):
        entropy_bound_log(stats(irregular))


def test_exchange_roundtrip():
    hg = build_transversal_hg(cyclic_latin_square(3))
    text = to_json(hg)
    back = from_json(text)
    assert back.num_vertices == hg.num_vertices
    assert back.edges == hg.edges
    with pytest.raises(InvalidHypergraphError):
        from_json("{}")
    with pytest.raises(InvalidHypergraphError):
        from_json('{"n":2,"edges":[["a"]]}')
