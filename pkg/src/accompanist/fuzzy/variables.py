"""Linguistic variables: a named universe plus named fuzzy terms."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

from .errors import DefinitionError
from .membership import MembershipFunction, Singleton


@dataclass(frozen=True)
class LinguisticVariable:
    """A named quantity over a universe [lo, hi] partitioned into fuzzy terms.

    ``lo`` may be -inf and ``hi`` +inf (e.g. time-since variables).  Inputs
    are clamped into the universe before fuzzification, so evaluation is
    total even for out-of-range crisp values.
    """

    name: str
    lo: float
    hi: float
    terms: Mapping[str, MembershipFunction] = field(default_factory=dict)

    def __post_init__(self):
        if not self.name:
            raise DefinitionError("variable name must be non-empty")
        if math.isnan(self.lo) or math.isnan(self.hi) or self.lo >= self.hi:
            raise DefinitionError(f"variable {self.name!r}: bad universe [{self.lo}, {self.hi}]")
        object.__setattr__(self, "terms", dict(self.terms))
        for tname, mf in self.terms.items():
            for p in mf.finite_params:
                if p < self.lo or p > self.hi:
                    raise DefinitionError(
                        f"variable {self.name!r}, term {tname!r}: parameter {p} "
                        f"outside universe [{self.lo}, {self.hi}]"
                    )

    @property
    def is_categorical(self) -> bool:
        """True when every term is a singleton (categorical variable)."""
        return bool(self.terms) and all(isinstance(mf, Singleton) for mf in self.terms.values())

    def clamp(self, x: float) -> float:
        return min(max(x, self.lo), self.hi)

    def fuzzify(self, x: float) -> dict[str, float]:
        """One degree per term, after clamping ``x`` into the universe."""
        xc = self.clamp(x)
        return {tname: mf(xc) for tname, mf in self.terms.items()}

    def defuzz_bounds(self, margin: float = 0.25) -> tuple[float, float]:
        """Finite integration bounds for defuzzification.

        Infinite universe ends are truncated at the outermost finite term
        parameter extended by ``margin`` times the finite span.
        """
        if math.isfinite(self.lo) and math.isfinite(self.hi):
            return self.lo, self.hi
        finite = [p for mf in self.terms.values() for p in mf.finite_params]
        if not finite:
            raise DefinitionError(
                f"variable {self.name!r}: cannot truncate an infinite universe "
                "with no finite term parameters"
            )
        pmin, pmax = min(finite), max(finite)
        pad = (pmax - pmin) * margin
        lo = self.lo if math.isfinite(self.lo) else pmin - pad
        hi = self.hi if math.isfinite(self.hi) else pmax + pad
        if lo >= hi:  # all parameters coincide
            lo, hi = lo - 0.5, hi + 0.5
        return lo, hi


def fuzzify(var: LinguisticVariable, x: float) -> dict[str, float]:
    return var.fuzzify(x)
