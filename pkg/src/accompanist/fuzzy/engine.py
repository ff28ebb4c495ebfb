"""Mamdani inference: fuzzify, infer, defuzzify.

Rule firing strength clips each consequent term's membership function
(min-implication); per output variable the clipped sets are aggregated
by pointwise max.  Continuous outputs are defuzzified by Center of Area
over a symmetric midpoint grid; categorical (all-singleton) outputs by
argmax of the per-term activations with lowest-singleton-value
tie-break.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Union

import numpy as np

from .. import _kernels
from .errors import NoRuleFiredError
from .membership import MembershipFunction, Singleton
from .rules import RuleBase, eval_antecedent
from .variables import LinguisticVariable

DEFAULT_RESOLUTION = 1001


@dataclass
class Aggregate:
    """Clipped consequent sets for one continuous output variable."""

    variable: str
    pieces: list[tuple[MembershipFunction, float]] = field(default_factory=list)

    @property
    def empty(self) -> bool:
        return not any(s > 0.0 for _, s in self.pieces)

    def value_at(self, x: float) -> float:
        return max((min(mf(x), s) for mf, s in self.pieces), default=0.0)

    def packed(self):
        active = [(mf, s) for mf, s in self.pieces if s > 0.0]
        shapes = np.array([mf.packed()[0] for mf, _ in active], dtype=np.int32)
        params = np.array(
            [mf.packed()[1:] for mf, _ in active], dtype=np.float64
        ).reshape(len(active), 4)
        strengths = np.array([s for _, s in active], dtype=np.float64)
        return shapes, params, strengths


@dataclass
class InferenceResult:
    # continuous outputs -> Aggregate, categorical -> {term: activation}
    outputs: dict[str, Union[Aggregate, dict[str, float]]]
    fired: list[tuple[str, float]]  # (rule label, strength) for strength > 0


def fuzzify_inputs(
    rb: RuleBase, inputs: Mapping[str, float]
) -> dict[tuple[str, str], float]:
    """Clamp and fuzzify every supplied crisp input, flat-keyed by
    (variable, term)."""
    degrees: dict[tuple[str, str], float] = {}
    for var, x in inputs.items():
        lv = rb.variables[var]
        for term, deg in lv.fuzzify(x).items():
            degrees[(var, term)] = deg
    return degrees


def infer(rb: RuleBase, degrees: Mapping[tuple[str, str], float]) -> InferenceResult:
    outputs: dict[str, Union[Aggregate, dict[str, float]]] = {}
    for var in rb.output_variables:
        if rb.is_categorical(var):
            outputs[var] = {term: 0.0 for term in rb.variables[var].terms}
        else:
            outputs[var] = Aggregate(var)
    fired: list[tuple[str, float]] = []
    for rule in rb.rules:
        strength = eval_antecedent(rule.antecedent, degrees)
        if strength > 0.0:
            fired.append((rule.label, strength))
        for var, term in rule.consequents:
            out = outputs[var]
            if isinstance(out, Aggregate):
                out.pieces.append((rb.variables[var].terms[term], strength))
            else:
                out[term] = max(out[term], strength)
    return InferenceResult(outputs, fired)


def defuzzify_coa(
    aggregate: Aggregate,
    lo: float,
    hi: float,
    resolution: int = DEFAULT_RESOLUTION,
) -> float:
    """Centroid of the aggregate over [lo, hi] by midpoint discretization."""
    if resolution <= 0:
        raise ValueError("resolution must be positive")
    if aggregate.empty:
        raise NoRuleFiredError(aggregate.variable)
    shapes, params, strengths = aggregate.packed()
    num, den = _kernels.coa_sums(shapes, params, strengths, lo, hi, resolution)
    if den == 0.0:
        raise NoRuleFiredError(aggregate.variable)
    x = num / den
    return min(max(x, lo), hi)


def defuzzify_categorical(
    activations: Mapping[str, float], var: LinguisticVariable
) -> str:
    """Term with maximal activation; ties broken by lowest singleton value."""
    best: str | None = None
    best_key: tuple[float, float] | None = None
    for term, act in activations.items():
        if act <= 0.0:
            continue
        mf = var.terms[term]
        value = mf.v if isinstance(mf, Singleton) else 0.0
        key = (-act, value)
        if best_key is None or key < best_key:
            best, best_key = term, key
    if best is None:
        raise NoRuleFiredError(var.name)
    return best


@dataclass
class FisResult:
    # crisp value per continuous output, term name per categorical output,
    # None where no rule fired
    outputs: dict[str, Union[float, str, None]]
    fired: list[tuple[str, float]]


def run_fis(
    rb: RuleBase,
    inputs: Mapping[str, float],
    resolution: int = DEFAULT_RESOLUTION,
) -> FisResult:
    """Fuzzify-infer-defuzzify; a pure function of its arguments."""
    degrees = fuzzify_inputs(rb, inputs)
    inference = infer(rb, degrees)
    outputs: dict[str, Union[float, str, None]] = {}
    for var, agg in inference.outputs.items():
        try:
            if isinstance(agg, Aggregate):
                lo, hi = rb.variables[var].defuzz_bounds()
                outputs[var] = defuzzify_coa(agg, lo, hi, resolution)
            else:
                outputs[var] = defuzzify_categorical(agg, rb.variables[var])
        except NoRuleFiredError:
            outputs[var] = None
    return FisResult(outputs, inference.fired)
