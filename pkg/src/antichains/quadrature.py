"""Adaptive midpoint quadrature on dyadic subdivisions of a box.

Each cell is estimated by its midpoint value times its volume and compared
against the sum over its 2^d children; the Richardson difference must fit
the cell's proportional share of the tolerance before the cell is accepted.
An optional classifier carves an integration region out of the box: cells
fully outside contribute nothing, straddling cells are refined breadth-first
until their worst-case contribution fits half the budget, and whatever
remains unresolved is charged to the reported error bound.  Evaluation
order is fixed, so results are bit-reproducible.
"""

from dataclasses import dataclass
from itertools import product
from math import prod

__all__ = ["QuadratureResult", "integrate_adaptive", "INSIDE", "OUTSIDE", "STRADDLE"]

INSIDE, OUTSIDE, STRADDLE = 1, -1, 0

Box = tuple[tuple[float, float], ...]


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error_bound: float
    evaluations: int
    converged: bool


def _volume(cell: Box) -> float:
    return prod(hi - lo for lo, hi in cell)


def _split(cell: Box) -> list[Box]:
    halves = [((lo, (lo + hi) / 2), ((lo + hi) / 2, hi)) for lo, hi in cell]
    return [
        tuple(halves[i][b] for i, b in enumerate(bits))
        for bits in product((0, 1), repeat=len(cell))
    ]


def integrate_adaptive(
    f,
    box: Box,
    tol: float,
    *,
    cell_classify=None,
    sup_bound: float = 1.0,
    max_depth: int = 26,
    min_depth: int = 2,
    max_frontier: int = 65_536,
    max_evals: int = 4_000_000,
) -> QuadratureResult:
    """Integrate ``f`` over ``box`` to an absolute tolerance.

    ``cell_classify(lo, hi)`` may report INSIDE / OUTSIDE / STRADDLE for a
    cell given its corner tuples; ``f`` must return 0 outside the region and
    stay below ``sup_bound`` inside it.  Refinement stops at ``max_depth``,
    at ``max_frontier`` straddling cells, or once ``max_evals`` evaluations
    are spent, and every unresolved cell charges its worst case to the error
    bound, so the reported bound is always honest; callers should treat a
    bound above ``tol`` as a flagged, not failed, estimate.
    """
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    vol_total = _volume(box)
    if vol_total <= 0:
        return QuadratureResult(0.0, 0.0, 0, True)

    smooth_tol = tol if cell_classify is None else tol / 2
    straddle_budget = 0.0 if cell_classify is None else tol / 2

    state = {"value": 0.0, "err": 0.0, "evals": 0}

    def mid_estimate(cell: Box) -> float:
        state["evals"] += 1
        mid = tuple((lo + hi) / 2 for lo, hi in cell)
        return f(mid) * _volume(cell)

    def smooth(cell: Box, est: float, depth: int) -> None:
        children = _split(cell)
        ests = [mid_estimate(c) for c in children]
        s = sum(ests)
        richardson = abs(s - est) / 3
        share = smooth_tol * (_volume(cell) / vol_total)
        if depth >= min_depth and richardson <= share:
            state["value"] += s
            state["err"] += richardson
            return
        if depth >= max_depth or state["evals"] >= max_evals:
            state["value"] += s
            state["err"] += abs(s - est)
            return
        for child, child_est in zip(children, ests):
            smooth(child, child_est, depth + 1)

    if cell_classify is None:
        smooth(box, mid_estimate(box), 0)
    else:
        # resolve the region boundary first: classification is cheap, and the
        # smooth interior work should not starve the geometric refinement
        lows = tuple(lo for lo, _ in box)
        highs = tuple(hi for _, hi in box)
        side = cell_classify(lows, highs)
        pending: list[Box] = []
        interior: list[tuple[Box, int]] = []
        if side == INSIDE:
            interior.append((box, 0))
        elif side == STRADDLE:
            pending = [box]
        depth = 0
        while pending:
            frontier_err = sup_bound * sum(_volume(c) for c in pending)
            if (
                frontier_err <= straddle_budget
                or depth >= max_depth
                or len(pending) >= max_frontier
            ):
                break
            nxt: list[Box] = []
            for cell in pending:
                for child in _split(cell):
                    lows = tuple(lo for lo, _ in child)
                    highs = tuple(hi for _, hi in child)
                    side = cell_classify(lows, highs)
                    if side == INSIDE:
                        interior.append((child, depth + 1))
                    elif side == STRADDLE:
                        nxt.append(child)
            pending = nxt
            depth += 1
        for cell in pending:
            state["value"] += mid_estimate(cell)
            state["err"] += sup_bound * _volume(cell)
        for cell, cell_depth in interior:
            smooth(cell, mid_estimate(cell), cell_depth)

    return QuadratureResult(
        value=state["value"],
        error_bound=state["err"],
        evaluations=state["evals"],
        converged=state["err"] <= tol * (1 + 1e-9),
    )
