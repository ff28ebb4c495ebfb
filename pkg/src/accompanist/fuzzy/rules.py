"""Rule antecedent AST, rules and rule bases.

Antecedents are general propositional formulas over (variable, term)
atoms, evaluated with the Goedel/Mamdani connectives: AND -> min,
OR -> max, NOT -> 1 - x.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence, Union

from .errors import DefinitionError, MissingAtomError
from .variables import LinguisticVariable


@dataclass(frozen=True)
class Atom:
    variable: str
    term: str

    def __str__(self):
        return f'"{self.variable}" IS "{self.term}"'


@dataclass(frozen=True)
class And:
    children: tuple["Formula", ...]

    def __post_init__(self):
        if not self.children:
            raise DefinitionError("AND requires at least one operand")
        object.__setattr__(self, "children", tuple(self.children))

    def __str__(self):
        return "(" + " AND ".join(str(c) for c in self.children) + ")"


@dataclass(frozen=True)
class Or:
    children: tuple["Formula", ...]

    def __post_init__(self):
        if not self.children:
            raise DefinitionError("OR requires at least one operand")
        object.__setattr__(self, "children", tuple(self.children))

    def __str__(self):
        return "(" + " OR ".join(str(c) for c in self.children) + ")"


@dataclass(frozen=True)
class Not:
    child: "Formula"

    def __str__(self):
        return f"NOT {self.child}"


Formula = Union[Atom, And, Or, Not]


def eval_antecedent(formula: Formula, degrees: Mapping[tuple[str, str], float]) -> float:
    """Evaluate a formula against fuzzified degrees keyed by (variable, term)."""
    if isinstance(formula, Atom):
        key = (formula.variable, formula.term)
        if key not in degrees:
            raise MissingAtomError(formula.variable, formula.term)
        return degrees[key]
    if isinstance(formula, And):
        return min(eval_antecedent(c, degrees) for c in formula.children)
    if isinstance(formula, Or):
        return max(eval_antecedent(c, degrees) for c in formula.children)
    if isinstance(formula, Not):
        return 1.0 - eval_antecedent(formula.child, degrees)
    raise TypeError(f"not a formula node: {formula!r}")


def iter_atoms(formula: Formula):
    if isinstance(formula, Atom):
        yield formula
    elif isinstance(formula, (And, Or)):
        for c in formula.children:
            yield from iter_atoms(c)
    elif isinstance(formula, Not):
        yield from iter_atoms(formula.child)
    else:
        raise TypeError(f"not a formula node: {formula!r}")


@dataclass(frozen=True)
class Rule:
    antecedent: Formula
    consequents: tuple[tuple[str, str], ...]  # (output variable, term)
    label: str = ""

    def __post_init__(self):
        if not self.consequents:
            raise DefinitionError(f"rule {self.label!r} has no consequents")
        object.__setattr__(self, "consequents", tuple(self.consequents))


@dataclass(frozen=True)
class RuleBase:
    """A validated set of variables and rules.

    Output variables (those used in consequents) are partitioned by
    defuzzifier kind: singleton-termed outputs are categorical
    (argmax defuzzification), the rest are continuous (Center of Area).
    """

    name: str
    variables: Mapping[str, LinguisticVariable]
    rules: Sequence[Rule]
    version: str = ""
    # derived, filled in __post_init__
    output_variables: tuple[str, ...] = field(default=(), compare=False)
    input_variables: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "variables", dict(self.variables))
        object.__setattr__(self, "rules", tuple(self.rules))
        outputs: list[str] = []
        inputs: list[str] = []
        for rule in self.rules:
            for atom in iter_atoms(rule.antecedent):
                self._check_ref(atom.variable, atom.term, rule.label)
                if atom.variable not in inputs:
                    inputs.append(atom.variable)
            for var, term in rule.consequents:
                self._check_ref(var, term, rule.label)
                if var not in outputs:
                    outputs.append(var)
        object.__setattr__(self, "output_variables", tuple(outputs))
        object.__setattr__(self, "input_variables", tuple(inputs))

    def _check_ref(self, var: str, term: str, label: str):
        lv = self.variables.get(var)
        if lv is None:
            raise DefinitionError(f"rule {label!r} references undeclared variable {var!r}")
        if term not in lv.terms:
            raise DefinitionError(
                f"rule {label!r} references unknown term {term!r} of variable {var!r}"
            )

    def is_categorical(self, var: str) -> bool:
        return self.variables[var].is_categorical

    def select(self, output_vars: Sequence[str], name: str | None = None) -> "RuleBase":
        """Sub-rule-base containing only rules whose consequents target
        the given output variables (used for staged inference)."""
        wanted = set(output_vars)
        picked = [r for r in self.rules if any(v in wanted for v, _ in r.consequents)]
        return RuleBase(
            name=name or f"{self.name}[{','.join(output_vars)}]",
            variables=self.variables,
            rules=picked,
            version=self.version,
        )

    def rules_per_output(self) -> dict[str, int]:
        counts: dict[str, int] = {v: 0 for v in self.output_variables}
        for rule in self.rules:
            for var, _ in rule.consequents:
                counts[var] += 1
        return counts
