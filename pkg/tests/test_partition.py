"""Greedy partition certificates, gap reports, and box scans."""

import random
from itertools import combinations, product

import pytest

from antichains import (
    BudgetExceededError,
    NotWeakAntichainError,
    PointSet,
    TargetUnreachableError,
    classify,
    exhaustive_gap_scan,
    greedy_partition,
    projection_gap,
    projection_size,
    random_gap_scan,
    random_weak_antichain,
)


def test_greedy_partition_singleton():
    cert = greedy_partition(PointSet(2, [(5, 7)]))
    assert cert.parts[0] == PointSet(2, [(5, 7)])
    assert len(cert.parts[1]) == 0
    cert.validate()


def test_greedy_partition_hand_examples():
    cert = greedy_partition(PointSet(2, [(0, 0), (0, 1), (1, 0)]))
    assert cert.parts[0] == PointSet(2, [(0, 0), (0, 1)])
    assert cert.parts[1] == PointSet(2, [(1, 0)])
    cert.validate()

    cert = greedy_partition(PointSet(2, [(0, 2), (1, 1), (2, 0)]))
    assert cert.parts[0] == PointSet(2, [(0, 2), (1, 1), (2, 0)])
    assert len(cert.parts[1]) == 0
    cert.validate()


def test_greedy_partition_rejects_strong_pair():
    with pytest.raises(NotWeakAntichainError) as err:
        greedy_partition(PointSet(2, [(0, 0), (1, 1)]))
    assert err.value.lower == (0, 0)
    assert err.value.upper == (1, 1)


def test_greedy_partition_leftover_diagnostic():
    # the full 2x2 box defeats every round even without the up-front check:
    # (1,1) is never a fiber minimum, and the leftover names a strong pair
    full = PointSet(2, product(range(2), repeat=2))
    with pytest.raises(NotWeakAntichainError) as err:
        greedy_partition(full, check=False)
    assert err.value.lower == (0, 0)
    assert err.value.upper == (1, 1)


def test_greedy_partition_deterministic_under_input_order():
    pts = [(0, 3), (1, 1), (2, 0), (3, 0), (0, 2)]
    a = greedy_partition(PointSet(2, pts))
    b = greedy_partition(PointSet(2, list(reversed(pts))))
    assert a.parts == b.parts


def test_greedy_partition_soundness_random():
    for seed in range(40):
        n = 2 + seed % 3
        capacity = 5**n - 4**n
        A = random_weak_antichain(n, 5, min(1 + seed % 12, capacity), seed=seed)
        cert = greedy_partition(A)
        cert.validate()
        report = projection_gap(A)
        assert len(A) == sum(len(p) for p in cert.parts)
        assert len(A) <= sum(report.projection_sizes)


def test_greedy_partition_exhaustive_box():
    box = list(product(range(3), repeat=2))
    weak = 0
    for mask in range(1 << 9):
        s = PointSet(2, (box[i] for i in range(9) if mask >> i & 1))
        if not classify(s).is_weak_antichain:
            continue
        weak += 1
        cert = greedy_partition(s)
        cert.validate()
    assert weak > 0


def test_projection_gap_examples():
    r = projection_gap(PointSet(2, [(0, 1), (1, 0)]))
    assert (r.set_size, r.projection_sizes, r.gap) == (2, (2, 2), 2)
    r = projection_gap(PointSet(2, [(0, 0), (1, 0)]))
    assert (r.set_size, r.projection_sizes, r.gap) == (2, (1, 2), 1)
    r = projection_gap(PointSet(2))
    assert (r.set_size, r.gap) == (0, 0)


def test_projection_gap_dimension_one():
    assert projection_gap(PointSet(1, [(3,)])).gap == 0
    assert projection_size(PointSet(1, [(3,)]), 1) == 1
    assert projection_size(PointSet(1), 1) == 0


def test_gap_nonnegative_for_weak_antichains():
    rng = random.Random(23)
    for trial in range(200):
        n = rng.randint(1, 4)
        capacity = 4**n - 3**n
        A = random_weak_antichain(n, 4, rng.randint(0, min(6, capacity)), seed=trial)
        r = projection_gap(A)
        assert r.gap >= 0
        if len(A) > 0:
            assert r.gap >= n - 1


# independent oracle used to freeze the scan expectations below


def _oracle_min_gap(n, k, size):
    def is_weak(sub):
        return not any(
            all(a < b for a, b in zip(x, y)) or all(b < a for a, b in zip(x, y))
            for x, y in combinations(sub, 2)
        )

    def gap(sub):
        return sum(len({p[:i] + p[i + 1 :] for p in sub}) for i in range(n)) - len(sub)

    box = sorted(product(range(k), repeat=n))
    gaps = [gap(s) for s in combinations(box, size) if is_weak(s)]
    return min(gaps) if gaps else None


def test_exhaustive_gap_scan_singletons():
    res = exhaustive_gap_scan(2, 3, 1)
    assert res.min_gap == 1  # = n - 1
    assert res.witness == PointSet(2, [(0, 0)])
    assert res.min_gap == _oracle_min_gap(2, 3, 1)


def test_exhaustive_gap_scan_pairs():
    res = exhaustive_gap_scan(2, 3, 2)
    assert res.min_gap == 1 == _oracle_min_gap(2, 3, 2)
    # lexicographically least among the minimum-gap witnesses
    assert res.witness == PointSet(2, [(0, 0), (0, 1)])
    assert projection_gap(res.witness).gap == 1


def test_exhaustive_gap_scan_three_dims():
    # two distinct points cannot collapse two different projections, so the
    # minimum pair gap in {0,1}^3 is 3, strictly above the n-1 = 2 floor
    res = exhaustive_gap_scan(3, 2, 2)
    assert res.min_gap == 3 == _oracle_min_gap(3, 2, 2)
    assert res.min_gap >= 3 - 1


def test_exhaustive_gap_scan_empty_size():
    res = exhaustive_gap_scan(2, 2, 0)
    assert res.min_gap == 0
    assert len(res.witness) == 0


def test_exhaustive_gap_scan_budget():
    with pytest.raises(BudgetExceededError):
        exhaustive_gap_scan(3, 4, 10, budget=100)


def test_random_weak_antichain_basics():
    A = random_weak_antichain(2, 2, 3, seed=5)
    assert len(A) == 3
    assert classify(A).is_weak_antichain
    assert random_weak_antichain(3, 4, 0, seed=1) == PointSet(3)
    single = random_weak_antichain(1, 5, 1, seed=9)
    assert len(single) == 1 and classify(single).is_weak_antichain


def test_random_weak_antichain_deterministic():
    a = random_weak_antichain(3, 5, 10, seed=42)
    b = random_weak_antichain(3, 5, 10, seed=42)
    assert a == b
    c = random_weak_antichain(3, 5, 10, seed=43)
    assert classify(c).is_weak_antichain


def test_random_weak_antichain_capacity_precondition():
    # the box maximum is k^n - (k-1)^n
    with pytest.raises(ValueError):
        random_weak_antichain(2, 2, 4)
    with pytest.raises(ValueError):
        random_weak_antichain(1, 5, 2)


def test_random_weak_antichain_retry_budget():
    with pytest.raises(TargetUnreachableError):
        random_weak_antichain(2, 3, 5, seed=0, max_tries=4)


def test_random_gap_scan_respects_floor():
    res = random_gap_scan(3, 4, 5, samples=25, seed=3)
    assert res.min_gap is not None and res.min_gap >= 2
    assert res.witness is not None and len(res.witness) == 5
