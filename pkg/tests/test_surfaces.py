"""Surface families: measures, projections, the inequality, and skewed projections."""

import math
import random

import pytest

from antichains import (
    Hyperplane,
    LinearGraph,
    LpSphere,
    SingularStaircase,
    TabulatedMonotone,
    facet_union_measure,
    format_surface_descriptor,
    graph_value,
    irwin_hall_cdf,
    monotone_extension,
    parse_surface_descriptor,
    projection_measure,
    skew_measures_2d,
    slab_volume,
    staircase_polyline,
    surface_measure,
    surface_measure_quadrature,
    verify_projection_inequality,
)


# frozen staircase-length oracle: 2^k steep pieces of size (3^-k, 2^-k) plus
# flats totalling 1 - (2/3)^k give 1 - (2/3)^k + sqrt(1 + (4/9)^k)
def _staircase_length(k: int) -> float:
    return 1 - (2 / 3) ** k + math.sqrt(1 + (4 / 9) ** k)


def test_irwin_hall_cdf_hand_values():
    assert irwin_hall_cdf(1, 0.3) == pytest.approx(0.3)
    assert irwin_hall_cdf(2, 0.5) == pytest.approx(0.125)
    assert irwin_hall_cdf(2, 1.5) == pytest.approx(0.875)
    assert irwin_hall_cdf(3, 1.0) == pytest.approx(1 / 6)
    assert irwin_hall_cdf(3, 2.0) == pytest.approx(5 / 6)
    assert irwin_hall_cdf(4, -1.0) == 0.0
    assert irwin_hall_cdf(4, 9.0) == 1.0


def test_irwin_hall_cdf_monte_carlo():
    rng = random.Random(101)
    n, t, trials = 3, 1.4, 40_000
    hits = sum(sum(rng.random() for _ in range(n)) <= t for _ in range(trials))
    p = irwin_hall_cdf(n, t)
    se = math.sqrt(p * (1 - p) / trials)
    assert abs(hits / trials - p) <= 4 * se


def test_slab_volume_examples():
    assert slab_volume(1, 0.5) == pytest.approx(0.5)
    assert slab_volume(2, 1.0) == 0.75
    assert slab_volume(2, 2.0) == pytest.approx(1.0)


def test_slab_volume_range_check():
    with pytest.raises(ValueError):
        slab_volume(2, -0.1)
    with pytest.raises(ValueError):
        slab_volume(2, 2.5)


def test_monotone_extension_examples():
    t = TabulatedMonotone(2, (((0.2,), 0.8), ((0.6,), 0.3)))
    assert monotone_extension(t, (0.1,)) == 1.0  # nothing below: empty min is 1
    assert monotone_extension(t, (0.2,)) == 0.8  # agrees with the samples
    assert monotone_extension(t, (0.7,)) == 0.3


def test_monotone_extension_is_order_reversing():
    rng = random.Random(5)
    pts = tuple(
        ((rng.random(), rng.random()), rng.random()) for _ in range(8)
    )
    samples = []
    for (x, y), v in sorted(pts):
        # force order-reversing values by descending sort along a chain
        samples.append(((x, y), v))
    values = sorted((v for _, v in samples), reverse=True)
    t = TabulatedMonotone(3, tuple((pt, v) for (pt, _), v in zip(sorted(pts), values)))
    for _ in range(200):
        a = (rng.random(), rng.random())
        b = (min(a[0] + rng.random() * 0.3, 1.0), min(a[1] + rng.random() * 0.3, 1.0))
        assert monotone_extension(t, a) >= monotone_extension(t, b)


def test_tabulated_validation():
    with pytest.raises(ValueError):
        TabulatedMonotone(2, (((0.2,), 0.3), ((0.6,), 0.8)))  # increasing
    with pytest.raises(ValueError):
        TabulatedMonotone(2, (((0.2,), 1.3),))
    with pytest.raises(ValueError):
        TabulatedMonotone(2, (((0.2,), 0.5), ((0.2,), 0.4)))


def test_hyperplane_closed_forms():
    assert surface_measure(Hyperplane(2)).value == pytest.approx(math.sqrt(2), abs=1e-12)
    assert surface_measure(Hyperplane(3)).value == pytest.approx(3 * math.sqrt(3) / 4, abs=1e-12)
    # n = 4 by hand: sqrt(4) * (F_3(2) - F_3(1)) = 2 * (5/6 - 1/6) = 4/3
    assert surface_measure(Hyperplane(4)).value == pytest.approx(4 / 3, abs=1e-12)


def test_hyperplane_quadrature_cross_check():
    for n in (2, 3, 4):
        closed = surface_measure(Hyperplane(n)).value
        quad = surface_measure_quadrature(Hyperplane(n))
        assert abs(quad.value - closed) <= quad.error_bound + 1e-9, n


def test_hyperplane_projections():
    est = projection_measure(Hyperplane(2), 1)
    assert est.value == pytest.approx(1.0, abs=1e-12)
    for axis in (1, 2, 3):
        assert projection_measure(Hyperplane(3), axis).value == pytest.approx(0.75)


def test_linear_graph_measures():
    assert surface_measure(LinearGraph(gradient=(0.0,))).value == pytest.approx(1.0)
    assert surface_measure(LinearGraph(gradient=(1.0,))).value == pytest.approx(math.sqrt(2))
    assert projection_measure(LinearGraph(gradient=(0.5,)), 1).value == pytest.approx(0.5)
    assert projection_measure(LinearGraph(gradient=(0.5,)), 2).value == pytest.approx(1.0)


def test_linear_graph_multi_box_base():
    s = LinearGraph(
        gradient=(2.0, 0.0),
        base=(
            ((0.0, 0.25), (0.0, 1.0)),
            ((0.5, 0.75), (0.0, 0.5)),
        ),
    )
    vol = 0.25 + 0.125
    assert surface_measure(s).value == pytest.approx(math.sqrt(5) * vol)
    assert projection_measure(s, 1).value == pytest.approx(2 * vol)
    assert projection_measure(s, 3).value == pytest.approx(vol)


def test_linear_graph_overlapping_base_rejected():
    with pytest.raises(ValueError):
        LinearGraph(gradient=(1.0,), base=(((0.0, 0.6),), ((0.5, 1.0),)))


def test_quarter_circle_arc_length():
    est = surface_measure(LpSphere(2, 2), 1e-6)
    assert est.method == "quadrature"
    assert abs(est.value - math.pi / 2) <= est.error_bound + 1e-9
    assert abs(est.value - math.pi / 2) <= 1e-6


def test_p1_sphere_is_the_antidiagonal():
    est = surface_measure(LpSphere(2, 1), 1e-6)
    assert est.value == pytest.approx(math.sqrt(2), abs=1e-6)


def test_sphere_measures_increase_with_p():
    values = [surface_measure(LpSphere(2, p), 1e-6).value for p in (2, 4, 8, 16, 32, 64)]
    assert all(a < b for a, b in zip(values, values[1:]))
    assert all(v <= 2.0 for v in values)
    assert values[0] > math.sqrt(2)


def test_octant_sphere_area():
    est = surface_measure(LpSphere(3, 2), 1e-3)
    assert abs(est.value - math.pi / 2) <= est.error_bound + 1e-9


def test_sphere_projections_fill_the_ball():
    assert projection_measure(LpSphere(2, 2), 1).value == pytest.approx(1.0)
    assert projection_measure(LpSphere(2, 7), 2).value == pytest.approx(1.0)
    # quarter disc in the base of the 3-dimensional round sphere
    assert projection_measure(LpSphere(3, 2), 2).value == pytest.approx(math.pi / 4)
    assert projection_measure(LpSphere(3, 1), 1).value == pytest.approx(0.5)


def test_tabulated_surface_measures():
    t = TabulatedMonotone(2, (((0.5,), 0.5),))
    assert surface_measure(t).value == 1.0
    assert projection_measure(t, 1).value == 0.0
    assert projection_measure(t, 2).value == 1.0


def test_pointwise_slope_inequality():
    rng = random.Random(61)
    for _ in range(500):
        g = [rng.uniform(-4, 4) for _ in range(rng.randint(1, 5))]
        assert math.sqrt(1 + sum(c * c for c in g)) <= 1 + sum(abs(c) for c in g) + 1e-12


def test_verify_hyperplane():
    report = verify_projection_inequality(Hyperplane(2))
    assert report.passes
    assert report.surface.value == pytest.approx(math.sqrt(2))
    assert report.right_total == pytest.approx(2.0)
    assert report.left_within_dim_bound and report.right_within_dim_bound


def test_verify_lpsphere():
    report = verify_projection_inequality(LpSphere(2, 8), 1e-6)
    assert report.passes
    assert math.sqrt(2) < report.surface.value < 2.0
    assert report.right_total == pytest.approx(2.0)


def test_verify_linear_graph():
    report = verify_projection_inequality(LinearGraph(gradient=(1.0,)))
    assert report.passes
    assert report.surface.value == pytest.approx(math.sqrt(2))
    assert report.right_total == pytest.approx(2.0)


def test_verify_tabulated_is_equality():
    t = TabulatedMonotone(2, (((0.3,), 0.7), ((0.8,), 0.1)))
    report = verify_projection_inequality(t)
    assert report.passes
    assert report.surface.value == pytest.approx(report.right_total)


def test_staircase_polyline_shape():
    verts = staircase_polyline(0)
    assert verts == [(0.0, 1.0), (1.0, 0.0)]
    verts = staircase_polyline(2)
    assert verts[0] == (0.0, 1.0) and verts[-1] == (1.0, 0.0)
    xs = [v[0] for v in verts]
    ys = [v[1] for v in verts]
    assert xs == sorted(xs)
    assert ys == sorted(ys, reverse=True)


def test_staircase_lengths_match_frozen_oracle():
    for k in range(0, 13):
        est = surface_measure(SingularStaircase(k))
        assert est.value == pytest.approx(_staircase_length(k), abs=1e-12), k


def test_staircase_length_monotone_toward_two():
    lengths = [surface_measure(SingularStaircase(k)).value for k in range(0, 13)]
    assert lengths[0] == pytest.approx(math.sqrt(2), abs=1e-12)
    assert all(a < b for a, b in zip(lengths, lengths[1:]))
    assert lengths[-1] >= 1.95
    assert all(v < 2.0 for v in lengths)


def test_staircase_graph_value():
    s = SingularStaircase(4)
    assert graph_value(s, (0.0,)) == pytest.approx(1.0)
    assert graph_value(s, (1.0,)) == pytest.approx(0.0)
    assert graph_value(s, (0.5,)) == pytest.approx(0.5)  # flat centre piece


def test_skew_antidiagonal():
    report = skew_measures_2d(Hyperplane(2))
    assert report.passes
    assert report.surface.value == pytest.approx(math.sqrt(2))
    assert report.delta_total == pytest.approx(2.0)


def test_skew_constant_graph_is_equality():
    report = skew_measures_2d(LinearGraph(gradient=(0.0,), offset=0.5))
    assert report.passes
    assert report.surface.value == pytest.approx(1.0)
    assert report.delta_parts[0].value == pytest.approx(0.5)
    assert report.delta_parts[1].value == pytest.approx(0.5)


def test_skew_quarter_circle():
    report = skew_measures_2d(LpSphere(2, 2))
    assert report.passes
    assert report.surface.value == pytest.approx(math.pi / 2, abs=1e-5)
    assert report.delta_total == pytest.approx(2.0)


def test_skew_tabulated_example():
    t = TabulatedMonotone(2, (((0.2,), 0.8), ((0.6,), 0.3)))
    report = skew_measures_2d(t)
    # images by hand: [0.2,0.6] and [0.8,1] for the first part, [0.3,0.7] for
    # the second
    assert report.delta_parts[0].value == pytest.approx(0.6)
    assert report.delta_parts[1].value == pytest.approx(0.4)
    assert report.passes


def test_skew_tabulated_against_sampling_oracle():
    rng = random.Random(71)
    for trial in range(10):
        cuts = sorted(rng.uniform(0.05, 0.95) for _ in range(rng.randint(1, 6)))
        vals = sorted((rng.random() for _ in cuts), reverse=True)
        t = TabulatedMonotone(2, tuple(((c,), v) for c, v in zip(cuts, vals)))
        report = skew_measures_2d(t)
        # rasterise the two skewed images: sample much finer than the cell
        # grid so truncation at cell boundaries cannot skew the count
        samples, cells = 50_000, 2_000
        hit1 = set()
        hit2 = set()
        for i in range(samples + 1):
            x = i / samples
            fx = monotone_extension(t, (x,))
            if x <= fx:
                hit1.add(int((fx - x) * cells))
            if x >= fx:
                hit2.add(int((x - fx) * cells))
        approx1 = len(hit1) / cells
        approx2 = len(hit2) / cells
        assert abs(report.delta_parts[0].value - approx1) <= 8 / cells, trial
        assert abs(report.delta_parts[1].value - approx2) <= 8 / cells, trial


def test_skew_rejects_increasing_linear_graph():
    with pytest.raises(ValueError):
        skew_measures_2d(LinearGraph(gradient=(1.0,)))


def test_skew_requires_dimension_two():
    with pytest.raises(ValueError):
        skew_measures_2d(Hyperplane(3))


def test_facet_union_measure():
    assert facet_union_measure(3) == 3.0


def test_surface_descriptor_round_trip():
    surfaces = [
        Hyperplane(3),
        LpSphere(2, 8.0),
        LinearGraph(gradient=(-1.0, 0.5), base=(((0.0, 1.0), (0.0, 0.5)),), offset=0.75),
        TabulatedMonotone(2, (((0.2,), 0.8), ((0.6,), 0.3))),
        SingularStaircase(7),
    ]
    for s in surfaces:
        assert parse_surface_descriptor(format_surface_descriptor(s)) == s


def test_surface_descriptor_errors():
    with pytest.raises(ValueError):
        parse_surface_descriptor("n=2\n")
    with pytest.raises(ValueError):
        parse_surface_descriptor("family=moebius\nn=2\n")
    with pytest.raises(ValueError):
        parse_surface_descriptor("family=lpsphere\nn=2\n")
