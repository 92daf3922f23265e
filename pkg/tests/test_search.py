import itertools

import numpy as np
import pytest

from qcube.analysis import admissible_matrices, check_perfect_direct, check_perfect_spectral
from qcube.constructions import permute_coordinates, subcube_bitrade, translate
from qcube.cube import CubeShape, VertexSet
from qcube.errors import CapExceeded, ShapeError
from qcube.search import (
    SearchConfig,
    brute_force_perfect_colorings,
    canonical_form,
    gf2_kernel,
    iter_perfect_colorings,
    min_bitrade,
    neighbor_table,
    search_perfect_colorings,
    verify_bounds_campaign,
)
from qcube.structures import is_bitrade

import oracles


def oracle_colorings(shape, b, c):
    """Every nontrivial subset passing the loop-based perfect check."""
    found = set()
    for bits in oracles.all_subsets(shape):
        S = VertexSet(shape, np.array(bits, dtype=bool))
        if S.is_trivial:
            continue
        if oracles.perfect(S) == (b, c):
            found.add(S)
    return found


def test_neighbor_table():
    shape = CubeShape(3, 2)
    table = neighbor_table(shape)
    for i in range(shape.size):
        got = {shape.decode(int(j)) for j in table[i]}
        assert got == set(oracles_neighbors(shape, shape.decode(i)))


def oracles_neighbors(shape, x):
    return [y for y in oracles.points(shape.q, shape.n) if oracles.hamming_distance(x, y) == 1]


def test_search_examples():
    shape = CubeShape(2, 2)
    res = search_perfect_colorings(SearchConfig(shape, 1, 1, limit=10))
    assert res.count == 4
    slabs = {VertexSet.from_points(shape, [(v, 0), (v, 1)]) for v in (0, 1)}
    slabs |= {VertexSet.from_points(shape, [(0, v), (1, v)]) for v in (0, 1)}
    assert set(res.solutions) == slabs

    res = search_perfect_colorings(SearchConfig(shape, 2, 2, limit=10))
    assert res.count == 2
    assert set(res.solutions) == {
        VertexSet.from_points(shape, [(0, 0), (1, 1)]),
        VertexSet.from_points(shape, [(0, 1), (1, 0)]),
    }

    res = search_perfect_colorings(SearchConfig(shape, 1, 3))
    assert res.count == 0 and "exceeds" in res.reason


def test_search_oracle_small():
    """Loop-based oracle over all subsets for the 2x2 and 2x2x2 cubes."""
    for q, n in [(2, 2), (2, 3)]:
        shape = CubeShape(q, n)
        for b, c in admissible_matrices(shape):
            assert set(iter_perfect_colorings(shape, b, c)) == oracle_colorings(shape, b, c)


@pytest.mark.parametrize("q,n", [(2, 2), (2, 3), (2, 4), (3, 2)])
def test_search_matches_vectorised_brute_force(q, n):
    shape = CubeShape(q, n)
    brute = brute_force_perfect_colorings(shape)
    for b, c in admissible_matrices(shape):
        sols = list(iter_perfect_colorings(shape, b, c))
        assert len(sols) == len(set(sols))
        assert set(sols) == set(brute.get((b, c), []))
        for S in sols:
            assert check_perfect_direct(S) == check_perfect_spectral(S)
            assert (check_perfect_direct(S).b, check_perfect_direct(S).c) == (b, c)


def test_symmetry_reduction_same_solutions():
    for q, n in [(2, 3), (2, 4), (3, 2)]:
        shape = CubeShape(q, n)
        for b, c in admissible_matrices(shape):
            plain = set(iter_perfect_colorings(shape, b, c))
            reduced = list(iter_perfect_colorings(shape, b, c, symmetry_reduction=True))
            assert len(reduced) == len(set(reduced)) and set(reduced) == plain


def test_search_order_is_deterministic():
    shape = CubeShape(2, 3)
    a = [tuple(S.indices()) for S in iter_perfect_colorings(shape, 2, 2)]
    b = [tuple(S.indices()) for S in iter_perfect_colorings(shape, 2, 2)]
    assert a == b
    # 0 is explored before 1, so the first solution leaves vertex 0 uncoloured
    assert 0 not in a[0]


def test_search_larger_known_counts():
    shape = CubeShape(2, 5)
    sols = list(iter_perfect_colorings(shape, 1, 1))
    assert len(sols) == 10  # the slabs x_i = v
    sols = list(iter_perfect_colorings(CubeShape(3, 3), 3, 6))
    assert all(check_perfect_direct(S).c == 6 for S in sols)
    assert len(sols) == 12  # Latin squares of order 3, as distance-2 MDS codes


def test_search_cap():
    with pytest.raises(CapExceeded):
        list(iter_perfect_colorings(CubeShape(2, 21), 1, 1))


def test_search_limit():
    res = search_perfect_colorings(SearchConfig(CubeShape(2, 4), 2, 2, limit=3))
    assert res.count == 36 and len(res.solutions) == 3
    res = search_perfect_colorings(SearchConfig(CubeShape(2, 4), 2, 2))
    assert res.count == 36 and res.solutions == []
    with pytest.raises(ValueError):
        SearchConfig(CubeShape(2, 2), 1, 1, limit=-1)


def test_canonical_form():
    shape = CubeShape(2, 3)
    S = VertexSet.from_points(shape, [(1, 1, 0), (1, 1, 1)])
    canon = canonical_form(S)
    assert canon == VertexSet.from_points(shape, [(0, 0, 0), (1, 0, 0)])
    for v in itertools.product(range(2), repeat=3):
        for perm in itertools.permutations(range(3)):
            assert canonical_form(permute_coordinates(translate(S, v), perm)) == canon
    classes = {canonical_form(S) for S in iter_perfect_colorings(shape, 1, 1)}
    assert len(classes) == 1


def test_gf2_kernel():
    # rows x0+x1, x1+x2 over 3 columns: kernel {000, 111}
    basis = gf2_kernel([0b011, 0b110], 3)
    assert basis == [0b111]
    rng = np.random.default_rng(0)
    for _ in range(20):
        ncols = 10
        rows = [int(r) for r in rng.integers(0, 2**ncols, size=int(rng.integers(1, 8)))]
        basis = gf2_kernel(rows, ncols)
        span = {0}
        for v in basis:
            span |= {s ^ v for s in span}
        expected = {x for x in range(2**ncols) if all(bin(x & r).count("1") % 2 == 0 for r in rows)}
        assert span == expected


def test_min_bitrade_examples():
    assert min_bitrade(CubeShape(2, 2), 1).minimum_size == 4
    assert min_bitrade(CubeShape(2, 3), 2).minimum_size == 8
    r = min_bitrade(CubeShape(3, 2), 1)
    assert r.minimum_size == 4 and is_bitrade(r.witness, 1)


def brute_min_bitrade(shape, t):
    best = None
    for bits in oracles.all_subsets(shape):
        k = sum(bits)
        if k == 0 or (best is not None and k >= best):
            continue
        if is_bitrade(VertexSet(shape, np.array(bits, dtype=bool)), t):
            best = k
    return best


@pytest.mark.parametrize("q,n", [(2, 2), (2, 3), (3, 2)])
def test_min_bitrade_brute_force(q, n):
    shape = CubeShape(q, n)
    for t in range(n):
        assert min_bitrade(shape, t).minimum_size == brute_min_bitrade(shape, t)


@pytest.mark.parametrize("q,n", [(2, 3), (2, 4), (2, 5), (3, 2), (3, 3), (4, 2), (5, 2)])
def test_min_bitrade_methods_agree(q, n):
    shape = CubeShape(q, n)
    for t in range(n):
        results = {}
        for method in ("kernel", "bnb"):
            try:
                results[method] = min_bitrade(shape, t, method=method)
            except CapExceeded:
                continue
        assert results
        sizes = {r.minimum_size for r in results.values()}
        assert len(sizes) == 1
        for r in results.values():
            assert is_bitrade(r.witness, t) and r.witness.cardinality == r.minimum_size
            assert r.minimum_size % 2 == 0


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_binary_minimum_is_power_of_two(n):
    shape = CubeShape(2, n)
    for t in range(n):
        if n == 6 and t == 3:
            continue  # ~10 s; covered by the slow marker below
        assert min_bitrade(shape, t).minimum_size == 2 ** (t + 1)


@pytest.mark.slow
def test_binary_minimum_n6_t3():
    assert min_bitrade(CubeShape(2, 6), 3).minimum_size == 16


def test_min_bitrade_errors():
    with pytest.raises(ShapeError):
        min_bitrade(CubeShape(2, 3), 3)
    with pytest.raises(CapExceeded):
        min_bitrade(CubeShape(2, 13), 1)
    with pytest.raises(CapExceeded):
        min_bitrade(CubeShape(2, 8), 3, max_nodes=10)


def test_subcube_matches_minimum():
    for q, n in [(2, 4), (3, 2), (3, 3)]:
        for t in range(n):
            assert min_bitrade(CubeShape(q, n), t).minimum_size == subcube_bitrade(q, n, t).cardinality


def test_campaign_empty():
    assert verify_bounds_campaign([]) == {"shapes": []}


def test_campaign_small():
    report = verify_bounds_campaign([(2, 3), (3, 2), (1, 3)])
    s23, s32, bad = report["shapes"]
    assert bad["errors"]
    assert s23["admissible"] == [[1, 1], [1, 3], [2, 2], [3, 1], [3, 3]]
    assert s23["oracle_outside_admissible"] == []
    for item in (s23, s32):
        for m in item["matrices"]:
            assert m["oracle_match"] and m["theorem_equality_all"] and m["component_bound_ok"]
        assert all(bt["minimum"] == bt["claimed_bound"] for bt in item["bitrades"])
    assert len(s32["matrices"]) == 4
    assert {(m["b"], m["c"]): m["count"] for m in s32["matrices"]} == {(1, 2): 6, (2, 1): 6, (2, 4): 6, (4, 2): 6}


def test_campaign_records_bitrade_failures():
    report = verify_bounds_campaign([(2, 5)], bitrade_nodes=1)
    item = report["shapes"][0]
    assert any("error" in bt for bt in item["bitrades"])
