"""Exception types raised by the fuzzy inference core."""


class FuzzyError(Exception):
    """Base class for all errors raised by this package's inference core."""


class DefinitionError(FuzzyError):
    """A membership function, variable, rule or rule base is malformed."""


class MissingAtomError(FuzzyError):
    """An antecedent atom references a (variable, term) pair that was not
    fuzzified for this evaluation."""

    def __init__(self, variable: str, term: str):
        self.variable = variable
        self.term = term
        super().__init__(f"no fuzzified degree for atom ({variable!r} IS {term!r})")


class NoRuleFiredError(FuzzyError):
    """Defuzzification was asked for an all-zero aggregate."""

    def __init__(self, variable: str):
        self.variable = variable
        super().__init__(f"no rule fired for output variable {variable!r}")


class DslError(FuzzyError):
    """Syntax or semantic error in a rule-base DSL file."""

    def __init__(self, message: str, filename: str = "<string>", line: int = 0, column: int = 0):
        self.filename = filename
        self.line = line
        self.column = column
        super().__init__(f"{filename}:{line}:{column}: {message}")
