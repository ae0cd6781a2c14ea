"""Greedy partition certificates and projection-gap statistics.

A weak antichain splits into n parts such that deleting coordinate i is
injective on part i; summing the parts bounds the set size by the total of
its n projection sizes.  This module builds that partition constructively,
reports projection gaps, and searches boxes for minimum-gap witnesses.
"""

import math
import random
from dataclasses import dataclass
from itertools import combinations, product

from .lattice import Point, PointSet, project

__all__ = [
    "NotWeakAntichainError",
    "BudgetExceededError",
    "TargetUnreachableError",
    "PartitionCertificate",
    "GapReport",
    "GapScanResult",
    "projection_size",
    "greedy_partition",
    "projection_gap",
    "box_points",
    "exhaustive_gap_scan",
    "random_weak_antichain",
    "random_gap_scan",
]


class NotWeakAntichainError(ValueError):
    """The input contains a pair ordered strictly in every coordinate."""

    def __init__(self, lower: Point, upper: Point):
        super().__init__(f"not a weak antichain: {lower} strongly below {upper}")
        self.lower = lower
        self.upper = upper


class BudgetExceededError(RuntimeError):
    """An exhaustive enumeration would exceed the configured budget."""


class TargetUnreachableError(RuntimeError):
    """Rejection sampling did not reach the target size within its retry budget."""


def projection_size(points: PointSet, axis: int) -> int:
    """Size of the image after deleting coordinate ``axis``.

    In dimension 1 the deleted-coordinate image is a single abstract point,
    so the size is 1 for non-empty sets and 0 otherwise.
    """
    if points.dim == 1:
        if axis != 1:
            raise ValueError(f"axis {axis} out of range 1..1")
        return 1 if len(points) else 0
    return len(project(points, axis))


def _find_strong_pair(pts):
    """Return (x, y) with x strictly below y in every coordinate, or None."""
    for x, y in combinations(pts, 2):
        if all(a < b for a, b in zip(x, y)):
            return x, y
        if all(b < a for a, b in zip(x, y)):
            return y, x
    return None


@dataclass(frozen=True)
class PartitionCertificate:
    """An n-part split witnessing the size bound by projection sizes."""

    source: PointSet
    parts: tuple[PointSet, ...]
    per_part_projection_sizes: tuple[int, ...]

    def validate(self) -> None:
        """Re-check all certificate invariants; raises ValueError on failure."""
        n = self.source.dim
        if len(self.parts) != n or len(self.per_part_projection_sizes) != n:
            raise ValueError("certificate must carry one part per coordinate")
        seen: set[Point] = set()
        total = 0
        for i, part in enumerate(self.parts, start=1):
            total += len(part)
            for p in part:
                if p not in self.source:
                    raise ValueError(f"part {i} contains {p} not in the source")
                if p in seen:
                    raise ValueError(f"point {p} appears in two parts")
                seen.add(p)
            if projection_size(part, i) != len(part):
                raise ValueError(f"deleting coordinate {i} is not injective on part {i}")
            if self.per_part_projection_sizes[i - 1] != len(part):
                raise ValueError("recorded projection sizes disagree with the parts")
        if total != len(self.source):
            raise ValueError("parts do not cover the source set")


def greedy_partition(A: PointSet, check: bool = True) -> PartitionCertificate:
    """Partition a weak antichain so projection i is injective on part i.

    Round i collects, among the points not yet assigned, those minimal in
    coordinate i within their fiber (the points agreeing with them in every
    other coordinate).  For a weak antichain nothing remains after n rounds;
    leftovers prove the input was not one and the offending strongly ordered
    pair is reported.  With ``check`` the input is screened up front.
    """
    if check:
        bad = _find_strong_pair(A.points)
        if bad is not None:
            raise NotWeakAntichainError(*bad)
    n = A.dim
    remaining = set(A.points)
    raw_parts: list[set[Point]] = []
    for i in range(n):
        fiber_min: dict[tuple, Point] = {}
        for p in remaining:
            fiber = p[:i] + p[i + 1 :]
            best = fiber_min.get(fiber)
            if best is None or p[i] < best[i]:
                fiber_min[fiber] = p
        chosen = set(fiber_min.values())
        raw_parts.append(chosen)
        remaining -= chosen
    if remaining:
        bad = _find_strong_pair(A.points)
        if bad is None:
            raise RuntimeError("leftover points without a strongly ordered pair")
        raise NotWeakAntichainError(*bad)
    parts = tuple(PointSet(n, part) for part in raw_parts)
    sizes = tuple(projection_size(part, i + 1) for i, part in enumerate(parts))
    return PartitionCertificate(source=A, parts=parts, per_part_projection_sizes=sizes)


@dataclass(frozen=True)
class GapReport:
    """Set size, per-axis projection sizes, and their difference."""

    set_size: int
    projection_sizes: tuple[int, ...]
    gap: int


def projection_gap(A: PointSet) -> GapReport:
    sizes = tuple(projection_size(A, i) for i in range(1, A.dim + 1))
    return GapReport(len(A), sizes, sum(sizes) - len(A))


def box_points(n: int, k: int) -> tuple[Point, ...]:
    """All points of the box [0,k)^n in lexicographic order."""
    if n < 1 or k < 1:
        raise ValueError("box needs n >= 1 and k >= 1")
    return tuple(product(range(k), repeat=n))


@dataclass(frozen=True)
class GapScanResult:
    n: int
    k: int
    size: int
    min_gap: int | None
    witness: PointSet | None
    weak_count: int


def _gap_of(subset, n: int) -> int:
    if n == 1:
        return (1 if subset else 0) - len(subset)
    total = 0
    for i in range(n):
        total += len({p[:i] + p[i + 1 :] for p in subset})
    return total - len(subset)


def exhaustive_gap_scan(n: int, k: int, size: int, budget: int = 2_000_000) -> GapScanResult:
    """Minimum projection gap over every weak antichain of ``size`` points in [0,k)^n.

    Subsets are enumerated lexicographically and only strict improvements
    are kept, so the reported witness is the lexicographically least one.
    """
    if size < 0:
        raise ValueError("size must be >= 0")
    pool = box_points(n, k)
    total = math.comb(len(pool), size)
    if total > budget:
        raise BudgetExceededError(
            f"{total} subsets of size {size} exceed budget {budget}; "
            "use random_gap_scan instead"
        )
    best_gap: int | None = None
    best_witness = None
    weak_count = 0
    for subset in combinations(pool, size):
        if _find_strong_pair(subset) is not None:
            continue
        weak_count += 1
        g = _gap_of(subset, n)
        if best_gap is None or g < best_gap:
            best_gap = g
            best_witness = subset
    witness = PointSet(n, best_witness) if best_witness is not None else None
    return GapScanResult(n, k, size, best_gap, witness, weak_count)


def random_weak_antichain(
    n: int, k: int, size: int, seed: int = 0, max_tries: int | None = None
) -> PointSet:
    """Rejection-sample a weak antichain of exactly ``size`` points in [0,k)^n.

    Candidates are drawn uniformly from the box and kept whenever they are
    not strongly comparable with any accepted point.  Deterministic for a
    given seed.  The size cannot exceed k^n - (k-1)^n, the box's maximum
    weak antichain size.
    """
    if n < 1 or k < 1:
        raise ValueError("need n >= 1 and k >= 1")
    capacity = k**n - (k - 1) ** n
    if not 0 <= size <= capacity:
        raise ValueError(f"size {size} outside 0..{capacity} for this box")
    if max_tries is None:
        max_tries = 400 * (size + 1)
    rng = random.Random(seed)
    chosen: list[Point] = []
    have: set[Point] = set()
    tries = 0
    while len(chosen) < size:
        if tries >= max_tries:
            raise TargetUnreachableError(
                f"size {size} not reached within {max_tries} samples (seed {seed})"
            )
        tries += 1
        cand = tuple(rng.randrange(k) for _ in range(n))
        if cand in have:
            continue
        ok = True
        for p in chosen:
            if all(a < b for a, b in zip(p, cand)) or all(b < a for a, b in zip(p, cand)):
                ok = False
                break
        if ok:
            chosen.append(cand)
            have.add(cand)
    return PointSet(n, chosen)


def random_gap_scan(n: int, k: int, size: int, samples: int, seed: int = 0) -> GapScanResult:
    """Minimum observed gap over sampled weak antichains (no optimality claim)."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    best_gap: int | None = None
    best_witness: PointSet | None = None
    for t in range(samples):
        A = random_weak_antichain(n, k, size, seed=seed + t)
        g = projection_gap(A).gap
        if best_gap is None or g < best_gap:
            best_gap = g
            best_witness = A
    return GapScanResult(n, k, size, best_gap, best_witness, samples)
