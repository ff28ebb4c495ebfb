"""Mamdani fuzzy inference core: shapes, variables, rules, engine, DSL."""

from .errors import (
    DefinitionError,
    DslError,
    FuzzyError,
    MissingAtomError,
    NoRuleFiredError,
)
from .membership import (
    MembershipFunction,
    Singleton,
    Trapezoid,
    Triangular,
    membership_degree,
)
from .variables import LinguisticVariable, fuzzify
from .rules import And, Atom, Formula, Not, Or, Rule, RuleBase, eval_antecedent, iter_atoms
from .engine import (
    Aggregate,
    DEFAULT_RESOLUTION,
    FisResult,
    InferenceResult,
    defuzzify_categorical,
    defuzzify_coa,
    fuzzify_inputs,
    infer,
    run_fis,
)
from .dsl import load_rulebase, parse_rulebase

__all__ = [
    "FuzzyError", "DefinitionError", "DslError", "MissingAtomError", "NoRuleFiredError",
    "MembershipFunction", "Triangular", "Trapezoid", "Singleton", "membership_degree",
    "LinguisticVariable", "fuzzify",
    "Atom", "And", "Or", "Not", "Formula", "Rule", "RuleBase", "eval_antecedent", "iter_atoms",
    "Aggregate", "InferenceResult", "FisResult", "DEFAULT_RESOLUTION",
    "fuzzify_inputs", "infer", "defuzzify_coa", "defuzzify_categorical", "run_fis",
    "parse_rulebase", "load_rulebase",
]
