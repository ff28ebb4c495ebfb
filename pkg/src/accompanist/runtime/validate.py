"""Startup validation: parse everything, cross-check the declared
variables against the built-in catalogs and report rule counts."""

from __future__ import annotations

from dataclasses import dataclass, field

from .. import catalogs
from ..fuzzy import FuzzyError, LinguisticVariable, RuleBase, load_rulebase
from ..midi import MappingError, load_mapping
from .config import RuntimeConfig

# rebuilt from the configured bar period at load time, so literal file
# values are informational only
_TIME_DEPENDENT = {"Bar", "Time In Bar"}

_TOL = 1e-9


@dataclass
class ValidationReport:
    lines: list[str] = field(default_factory=list)
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def note(self, line: str):
        self.lines.append(line)

    def fail(self, line: str):
        self.lines.append(f"FAIL: {line}")
        self.failures.append(line)

    def __str__(self):
        status = "OK" if self.ok else f"{len(self.failures)} failure(s)"
        return "\n".join(self.lines + [f"validation: {status}"])


def _params(mf) -> tuple:
    return mf.packed()


def _compare_variable(report, declared: LinguisticVariable, expected: LinguisticVariable,
                      source: str, informational: bool):
    problems = []
    if abs(declared.lo - expected.lo) > _TOL or abs(declared.hi - expected.hi) > _TOL:
        problems.append(
            f"universe [{declared.lo}, {declared.hi}] != expected "
            f"[{expected.lo}, {expected.hi}]"
        )
    missing = set(expected.terms) - set(declared.terms)
    extra = set(declared.terms) - set(expected.terms)
    if missing:
        problems.append(f"missing terms {sorted(missing)}")
    if extra:
        problems.append(f"unexpected terms {sorted(extra)}")
    for tname in set(declared.terms) & set(expected.terms):
        got, want = _params(declared.terms[tname]), _params(expected.terms[tname])
        if got[0] != want[0] or any(
            abs(g - w) > _TOL and not (g == w)  # handles equal infinities
            for g, w in zip(got[1:], want[1:])
        ):
            problems.append(f"term {tname!r} parameters {got[1:]} != expected {want[1:]}")
    for problem in problems:
        line = f"{source}: variable {declared.name!r}: {problem}"
        if informational:
            report.note(f"note: {line} (rebuilt from config at load time)")
        else:
            report.fail(line)


def _check_rulebase(report: ValidationReport, rb: RuleBase,
                    catalog: dict[str, LinguisticVariable], source: str):
    for name, expected in catalog.items():
        declared = rb.variables.get(name)
        if declared is None:
            report.fail(f"{source}: catalog variable {name!r} not declared")
            continue
        _compare_variable(report, declared, expected, source, name in _TIME_DEPENDENT)
    for name in rb.variables:
        if name not in catalog:
            report.note(f"note: {source}: extra variable {name!r} not in the built-in catalog")
    report.note(f"{source}: {len(rb.variables)} variables, {len(rb.rules)} rules")


def validate(config: RuntimeConfig) -> ValidationReport:
    report = ValidationReport()
    try:
        temporal = load_rulebase(config.temporal_rules)
    except FuzzyError as exc:
        report.fail(str(exc))
        temporal = None
    try:
        control = load_rulebase(config.control_rules)
    except FuzzyError as exc:
        report.fail(str(exc))
        control = None

    if temporal is not None:
        _check_rulebase(report, temporal, catalogs.temporal_catalog(), "temporal rules")
    if control is not None:
        _check_rulebase(
            report, control,
            catalogs.control_catalog(config.bar_period, config.epsilon_bar_seconds),
            "control rules",
        )
        counts = control.rules_per_output()
        for var in catalogs.CONTROL_OUTPUTS:
            n = counts.get(var, 0)
            report.note(f"control rules: {n} rule(s) for output {var!r}")
            if n == 0:
                report.fail(f"control rules: no rules for output {var!r}")

    try:
        mapping = load_mapping(config.mapping)
        report.note(
            f"mapping: channel {mapping.channel}, "
            f"{len(mapping.pattern_triggers)} pattern triggers"
        )
    except MappingError as exc:
        report.fail(f"mapping: {exc}")
    return report
