"""Membership function shapes: triangular, trapezoid and singleton.

Trapezoids may carry infinite parameters to encode one-sided shoulders,
e.g. ``Trapezoid(1, 10, inf, inf)`` is a ramp that saturates at 1 from
x = 10 onward.  All shapes evaluate to a degree in [0, 1] and validate
their parameter ordering at construction time, never at evaluation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from .errors import DefinitionError

INF = math.inf

# Shape codes shared with the grid kernels: every non-singleton shape is
# packed as a 4-parameter trapezoid (a triangle becomes (a, b, b, c)).
SHAPE_TRAPEZOID = 0
SHAPE_SINGLETON = 1


@dataclass(frozen=True)
class Triangular:
    a: float
    b: float
    c: float

    def __post_init__(self):
        if any(math.isnan(p) for p in (self.a, self.b, self.c)):
            raise DefinitionError(f"triangular parameters must not be NaN: {self}")
        if any(math.isinf(p) for p in (self.a, self.b, self.c)):
            raise DefinitionError(f"triangular parameters must be finite: {self}")
        if not (self.a <= self.b <= self.c):
            raise DefinitionError(f"triangular parameters must satisfy a <= b <= c: {self}")

    def __call__(self, x: float) -> float:
        a, b, c = self.a, self.b, self.c
        if a == b == c:
            # degenerate triangle behaves as a singleton at b
            return 1.0 if x == b else 0.0
        if x < a or x > c:
            return 0.0
        if x == b:
            return 1.0
        if x < b:
            return (x - a) / (b - a) if b > a else 0.0
        return (c - x) / (c - b) if c > b else 0.0

    def packed(self) -> tuple[int, float, float, float, float]:
        return (SHAPE_TRAPEZOID, self.a, self.b, self.b, self.c)

    @property
    def finite_params(self) -> tuple[float, ...]:
        return (self.a, self.b, self.c)


@dataclass(frozen=True)
class Trapezoid:
    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        if any(math.isnan(p) for p in (self.a, self.b, self.c, self.d)):
            raise DefinitionError(f"trapezoid parameters must not be NaN: {self}")
        if not (self.a <= self.b <= self.c <= self.d):
            raise DefinitionError(f"trapezoid parameters must satisfy a <= b <= c <= d: {self}")
        if math.isinf(self.b) and math.isinf(self.c) and self.b == -INF and self.c == INF:
            raise DefinitionError(f"trapezoid plateau cannot span the whole line: {self}")
        if self.b == INF or self.c == -INF:
            raise DefinitionError(f"trapezoid plateau is empty at infinity: {self}")

    def __call__(self, x: float) -> float:
        a, b, c, d = self.a, self.b, self.c, self.d
        if b <= x <= c:
            return 1.0
        if x < b:
            if x < a:
                return 0.0
            return (x - a) / (b - a) if b > a else (1.0 if x == b else 0.0)
        # x > c
        if x > d:
            return 0.0
        return (d - x) / (d - c) if d > c else (1.0 if x == c else 0.0)

    def packed(self) -> tuple[int, float, float, float, float]:
        return (SHAPE_TRAPEZOID, self.a, self.b, self.c, self.d)

    @property
    def finite_params(self) -> tuple[float, ...]:
        return tuple(p for p in (self.a, self.b, self.c, self.d) if math.isfinite(p))


@dataclass(frozen=True)
class Singleton:
    v: float

    def __post_init__(self):
        if not math.isfinite(self.v):
            raise DefinitionError(f"singleton value must be finite: {self}")

    def __call__(self, x: float) -> float:
        return 1.0 if x == self.v else 0.0

    def packed(self) -> tuple[int, float, float, float, float]:
        return (SHAPE_SINGLETON, self.v, self.v, self.v, self.v)

    @property
    def finite_params(self) -> tuple[float, ...]:
        return (self.v,)


MembershipFunction = Union[Triangular, Trapezoid, Singleton]


def membership_degree(mf: MembershipFunction, x: float) -> float:
    """Degree of ``x`` in ``mf``; always in [0, 1].  ``x`` must be finite."""
    if not math.isfinite(x):
        raise ValueError(f"membership_degree requires a finite input, got {x}")
    return mf(x)
