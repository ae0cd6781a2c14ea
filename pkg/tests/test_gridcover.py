"""Cell indexing, covers of points and surfaces, and covering bounds."""

import math
import random
from itertools import product

import pytest

from antichains import (
    GridCover,
    Hyperplane,
    LinearGraph,
    LpSphere,
    PointCloud,
    PredicateRegion,
    SingularStaircase,
    alpha,
    box_dimension,
    classify,
    covering_bound,
    cube_index,
    d_const,
    grid_cover,
    random_weak_antichain,
    volume_ratio_curve,
)

ANTIDIAG = Hyperplane(2)


def test_alpha_values():
    assert alpha(0) == 1.0
    assert abs(alpha(1) - 1.0) < 1e-12
    assert abs(alpha(2) - math.pi / 4) < 1e-12


def test_d_const_values():
    assert abs(d_const(1) - 1.0) < 1e-12
    assert abs(d_const(2) - math.sqrt(2)) < 1e-12
    assert abs(d_const(3) - 3 * math.pi / 4) < 1e-12


def test_cube_index_examples():
    assert cube_index((0.0, 0.0), 2) == (1, 1)
    assert cube_index((0.5, 0.5), 2) == (2, 2)
    assert cube_index((1.0, 1.0), 3) == (3, 3)


def test_cube_index_errors():
    with pytest.raises(ValueError):
        cube_index((1.5,), 2)
    with pytest.raises(ValueError):
        cube_index((-0.1,), 2)


def test_point_cloud_covers():
    assert grid_cover(PointCloud(2, ((0.0, 0.0),)), 7).indices == {(1, 1)}
    corner = grid_cover(PointCloud(2, ((1.0, 1.0),)), 3)
    assert corner.indices == {(3, 3)}
    assert corner.exact


def test_antidiagonal_cover_m2_by_hand():
    cov = grid_cover(ANTIDIAG, 2)
    assert cov.indices == {(1, 2), (2, 2), (2, 1)}


def test_antidiagonal_cover_counts():
    for m in range(2, 65):
        assert len(grid_cover(ANTIDIAG, m)) == 2 * m - 1, m


def test_covering_bound_examples():
    cov = grid_cover(ANTIDIAG, 2)
    est = covering_bound(cov)
    assert est.upper_bound_only and est.method == "covering"
    assert abs(est.value - 3 * math.sqrt(2) / 2) < 1e-12

    single = grid_cover(PointCloud(2, ((0.25, 0.25),)), 10)
    assert abs(covering_bound(single).value - math.sqrt(2) / 10) < 1e-12


def test_covering_bound_explicit_exponent():
    # a 1-dimensional cover of the full interval bounds its length by 1
    full = GridCover(8, 1, frozenset((j,) for j in range(1, 9)))
    assert abs(covering_bound(full, s=1).value - 1.0) < 1e-12
    with pytest.raises(ValueError):
        covering_bound(full)  # default exponent dim-1 needs dim >= 2


def test_chained_projection_bound_and_dim_bound():
    # covering bound of each surface against the projection route and the
    # dimension constant, at every tested resolution; both surfaces project
    # onto the full unit interval in each direction
    D = d_const(2)
    for surface in (ANTIDIAG, LpSphere(2, 2), LpSphere(2, 8)):
        for m in (2, 4, 8, 16, 32, 64):
            left = covering_bound(grid_cover(surface, m)).value
            proj_cover = GridCover(m, 1, frozenset((j,) for j in range(1, m + 1)))
            right = D * 2 * covering_bound(proj_cover, s=1).value
            assert left <= right + 1e-12
            assert left <= D * 2 + 1e-12  # the finiteness bound D*n at n = 2


def test_volume_ratio_antidiagonal():
    ratios = volume_ratio_curve(ANTIDIAG, [2, 4, 8, 16])
    assert ratios == [3 / 4, 7 / 16, 15 / 64, 31 / 256]
    assert all(a > b for a, b in zip(ratios, ratios[1:]))


def test_volume_ratio_full_square_and_point():
    square = PredicateRegion(2, lambda x: True)
    assert volume_ratio_curve(square, [2, 5, 9]) == [1.0, 1.0, 1.0]
    point = PointCloud(2, ((0.3, 0.6),))
    assert volume_ratio_curve(point, [2, 4]) == [1 / 4, 1 / 16]


def test_predicate_cover_is_flagged():
    disc = PredicateRegion(2, lambda x: x[0] ** 2 + x[1] ** 2 <= 1.0)
    cov = grid_cover(disc, 8)
    assert not cov.exact
    assert len(cov) <= 64


def test_box_dimension_examples():
    fit = box_dimension(ANTIDIAG, [8, 16, 32, 64])
    assert abs(fit.dimension - 1.0) <= 0.05
    assert fit.counts == (15, 31, 63, 127)

    square = box_dimension(PredicateRegion(2, lambda x: True), [4, 8, 16])
    assert abs(square.dimension - 2.0) < 1e-9

    point = box_dimension(PointCloud(2, ((0.5, 0.5),)), [2, 4, 8])
    assert point.dimension == 0.0


def test_box_dimension_needs_two_resolutions():
    with pytest.raises(ValueError):
        box_dimension(ANTIDIAG, [4, 4])


def test_cover_contains_all_listed_points():
    rng = random.Random(31)
    for _ in range(50):
        dim = rng.randint(1, 3)
        pts = tuple(
            tuple(rng.random() for _ in range(dim)) for _ in range(rng.randint(1, 10))
        )
        m = rng.randint(1, 9)
        cov = grid_cover(PointCloud(dim, pts), m)
        for p in pts:
            assert cube_index(p, m) in cov.indices


def test_cover_cells_stay_near_the_points():
    # every point of the covered region lies within sqrt(n)/m of the set
    rng = random.Random(37)
    pts = tuple((rng.random(), rng.random()) for _ in range(6))
    m = 5
    cov = grid_cover(PointCloud(2, pts), m)
    for d in cov.indices:
        for off in product((0.25, 0.75), repeat=2):
            sample = tuple((di - 1 + oi) / m for di, oi in zip(d, off))
            dist = min(math.dist(sample, p) for p in pts)
            assert dist <= math.sqrt(2) / m + 1e-12


def test_weak_antichain_cover_is_weak_antichain_in_index_space():
    for seed in range(12):
        A = random_weak_antichain(2, 6, 8, seed=seed)
        cloud = PointCloud(2, tuple(tuple(c / 6 for c in p) for p in A))
        for m in (3, 5, 8):
            cov = grid_cover(cloud, m)
            assert classify(cov.indices).is_weak_antichain, (seed, m)


def test_lpsphere_cover_matches_parametric_sampling():
    s = LpSphere(2, 2.0)
    for m in (3, 7, 12):
        exact = grid_cover(s, m)
        sampled = set()
        steps = 4000
        for i in range(steps + 1):
            theta = math.pi / 2 * i / steps
            x, y = math.cos(theta), math.sin(theta)
            sampled.add(cube_index((min(x, 1.0), min(y, 1.0)), m))
        assert sampled <= exact.indices
        assert len(exact) <= len(sampled) + 2


def test_linear_graph_covers_by_hand():
    flat = LinearGraph(gradient=(0.0,), offset=0.5)
    assert grid_cover(flat, 2).indices == {(1, 2), (2, 2)}
    diag = LinearGraph(gradient=(1.0,))
    assert grid_cover(diag, 2).indices == {(1, 1), (2, 2)}
    down = LinearGraph(gradient=(-1.0,), offset=1.0)
    assert grid_cover(down, 2).indices == {(1, 2), (2, 2), (2, 1)}


def test_linear_graph_cover_respects_base_boxes():
    # base boxes are closed, so x = 0.5 itself contributes the third cell
    half = LinearGraph(gradient=(0.0,), base=(((0.0, 0.5),),), offset=0.25)
    cov = grid_cover(half, 4)
    assert cov.indices == {(1, 2), (2, 2), (3, 2)}


def test_staircase_cover_depth_zero_matches_antidiagonal():
    for m in (2, 3, 8, 16):
        assert grid_cover(SingularStaircase(0), m).indices == grid_cover(ANTIDIAG, m).indices


def test_p1_sphere_cover_matches_antidiagonal():
    # the p = 1 sphere is the anti-diagonal, reached through the float
    # power-sum test instead of the integer slab arithmetic
    for m in range(2, 33):
        assert grid_cover(LpSphere(2, 1), m).indices == grid_cover(ANTIDIAG, m).indices


def test_staircase_cover_contains_vertices():
    from antichains import staircase_polyline

    s = SingularStaircase(3)
    m = 9
    cov = grid_cover(s, m)
    for v in staircase_polyline(3):
        assert cube_index(v, m) in cov.indices
