"""Numeric measure estimates tagged with how they were produced."""

from dataclasses import dataclass

__all__ = ["MeasureEstimate", "CLOSED_FORM", "QUADRATURE", "COVERING"]

CLOSED_FORM = "closed-form"
QUADRATURE = "quadrature"
COVERING = "covering"

_METHODS = (CLOSED_FORM, QUADRATURE, COVERING)


@dataclass(frozen=True)
class MeasureEstimate:
    """A non-negative measure value with an error bound and a method tag.

    Covering estimates are one-sided upper bounds and must never be compared
    as two-sided values; the flag keeps the two kinds apart in reports.
    """

    value: float
    method: str
    error_bound: float = 0.0
    upper_bound_only: bool = False

    def __post_init__(self):
        if self.method not in _METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if self.value < 0:
            raise ValueError("measure values are non-negative")
        if self.error_bound < 0:
            raise ValueError("error bounds are non-negative")
