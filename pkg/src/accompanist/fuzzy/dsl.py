"""Parser for the rule-base DSL (grammar documented in docs/rule-dsl.md).

A file declares linguistic variables and rules:

    rulebase "temporal" version "1"

    var "Average Velocity" universe 0 127 {
      term "Low"  tri 0 0 25.4
      term "Max"  tri 101.6 127 127
    }

    rule "intensity tracks velocity / low":
      IF "Average Velocity" IS "Low" THEN "Intensity" IS "Low"

Formulas support IS / AND / OR / NOT and parentheses (NOT binds
tightest, then AND, then OR).  Errors carry file, line and column.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Union

from .errors import DefinitionError, DslError
from .membership import Singleton, Trapezoid, Triangular
from .rules import And, Atom, Formula, Not, Or, Rule, RuleBase
from .variables import LinguisticVariable

_KEYWORDS = {
    "RULEBASE", "VERSION", "VAR", "UNIVERSE", "TERM",
    "TRI", "TRAP", "SINGLETON", "RULE", "IF", "THEN", "IS",
    "AND", "OR", "NOT", "INF",
}
_PUNCT = set("(){}:")


@dataclass
class _Token:
    kind: str  # 'kw' | 'str' | 'num' | 'punct' | 'eof'
    value: Union[str, float]
    line: int
    col: int


def _tokenize(text: str, filename: str) -> list[_Token]:
    tokens: list[_Token] = []
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        start_line, start_col = line, col
        if ch == '"':
            j = i + 1
            while j < n and text[j] not in '"\n':
                j += 1
            if j >= n or text[j] != '"':
                raise DslError("unterminated string", filename, start_line, start_col)
            tokens.append(_Token("str", text[i + 1 : j], start_line, start_col))
            col += j + 1 - i
            i = j + 1
            continue
        if ch in _PUNCT:
            tokens.append(_Token("punct", ch, start_line, start_col))
            i += 1
            col += 1
            continue
        # number or word
        j = i
        while j < n and text[j] not in ' \t\r\n#(){}:"':
            j += 1
        word = text[i:j]
        upper = word.upper()
        if upper in _KEYWORDS:
            tokens.append(_Token("kw", "INF" if upper == "INF" else upper, start_line, start_col))
        elif upper in ("-INF", "+INF"):
            tokens.append(_Token("num", -math.inf if word[0] == "-" else math.inf,
                                  start_line, start_col))
        else:
            try:
                tokens.append(_Token("num", float(word), start_line, start_col))
            except ValueError:
                raise DslError(f"unexpected token {word!r}", filename, start_line, start_col)
        col += j - i
        i = j
    tokens.append(_Token("eof", "", line, col))
    return tokens


class _Parser:
    def __init__(self, text: str, filename: str):
        self.filename = filename
        self.tokens = _tokenize(text, filename)
        self.pos = 0

    # --- token helpers -------------------------------------------------
    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def next(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, message: str, tok: _Token | None = None):
        tok = tok or self.peek()
        raise DslError(message, self.filename, tok.line, tok.col)

    def expect_kw(self, kw: str) -> _Token:
        tok = self.next()
        if tok.kind != "kw" or tok.value != kw:
            self.fail(f"expected {kw}, got {tok.value!r}", tok)
        return tok

    def expect_punct(self, ch: str) -> _Token:
        tok = self.next()
        if tok.kind != "punct" or tok.value != ch:
            self.fail(f"expected {ch!r}, got {tok.value!r}", tok)
        return tok

    def expect_str(self, what: str) -> str:
        tok = self.next()
        if tok.kind != "str":
            self.fail(f"expected quoted {what}, got {tok.value!r}", tok)
        return str(tok.value)

    def expect_num(self, what: str) -> float:
        tok = self.next()
        if tok.kind == "kw" and tok.value == "INF":
            return math.inf
        if tok.kind != "num":
            self.fail(f"expected {what}, got {tok.value!r}", tok)
        return float(tok.value)

    def at_kw(self, *kws: str) -> bool:
        tok = self.peek()
        return tok.kind == "kw" and tok.value in kws

    # --- grammar -------------------------------------------------------
    def parse(self) -> RuleBase:
        name, version = Path(self.filename).stem, ""
        if self.at_kw("RULEBASE"):
            self.next()
            name = self.expect_str("rule base name")
            if self.at_kw("VERSION"):
                self.next()
                version = self.expect_str("version")
        variables: dict[str, LinguisticVariable] = {}
        rules: list[Rule] = []
        while True:
            tok = self.peek()
            if tok.kind == "eof":
                break
            if self.at_kw("VAR"):
                var = self.parse_var(variables)
                variables[var.name] = var
            elif self.at_kw("RULE"):
                rules.append(self.parse_rule())
            else:
                self.fail(f"expected 'var' or 'rule', got {tok.value!r}", tok)
        try:
            return RuleBase(name=name, variables=variables, rules=rules, version=version)
        except DefinitionError as exc:
            raise DslError(str(exc), self.filename) from exc

    def parse_var(self, variables: dict) -> LinguisticVariable:
        self.expect_kw("VAR")
        name_tok = self.peek()
        name = self.expect_str("variable name")
        if name in variables:
            self.fail(f"duplicate variable {name!r}", name_tok)
        self.expect_kw("UNIVERSE")
        lo = self.expect_num("universe lower bound")
        hi = self.expect_num("universe upper bound")
        self.expect_punct("{")
        terms: dict[str, "Triangular | Trapezoid | Singleton"] = {}
        while not (self.peek().kind == "punct" and self.peek().value == "}"):
            term_kw = self.peek()
            self.expect_kw("TERM")
            tname = self.expect_str("term name")
            if tname in terms:
                self.fail(f"duplicate term {tname!r} in variable {name!r}", term_kw)
            shape_tok = self.next()
            if shape_tok.kind != "kw" or shape_tok.value not in ("TRI", "TRAP", "SINGLETON"):
                self.fail("expected tri, trap or singleton", shape_tok)
            try:
                if shape_tok.value == "TRI":
                    mf = Triangular(self.expect_num("a"), self.expect_num("b"),
                                    self.expect_num("c"))
                elif shape_tok.value == "TRAP":
                    mf = Trapezoid(self.expect_num("a"), self.expect_num("b"),
                                   self.expect_num("c"), self.expect_num("d"))
                else:
                    mf = Singleton(self.expect_num("value"))
            except DefinitionError as exc:
                raise DslError(str(exc), self.filename, shape_tok.line, shape_tok.col) from exc
            terms[tname] = mf
        self.expect_punct("}")
        try:
            return LinguisticVariable(name=name, lo=lo, hi=hi, terms=terms)
        except DefinitionError as exc:
            raise DslError(str(exc), self.filename, name_tok.line, name_tok.col) from exc

    def parse_rule(self) -> Rule:
        self.expect_kw("RULE")
        label = self.expect_str("rule label")
        self.expect_punct(":")
        self.expect_kw("IF")
        antecedent = self.parse_or()
        self.expect_kw("THEN")
        consequents = [self.parse_consequent()]
        while self.at_kw("AND"):
            self.next()
            consequents.append(self.parse_consequent())
        return Rule(antecedent=antecedent, consequents=tuple(consequents), label=label)

    def parse_consequent(self) -> tuple[str, str]:
        var = self.expect_str("output variable")
        self.expect_kw("IS")
        term = self.expect_str("term")
        return (var, term)

    def parse_or(self) -> Formula:
        children = [self.parse_and()]
        while self.at_kw("OR"):
            self.next()
            children.append(self.parse_and())
        return children[0] if len(children) == 1 else Or(tuple(children))

    def parse_and(self) -> Formula:
        children = [self.parse_unary()]
        while self.at_kw("AND"):
            self.next()
            children.append(self.parse_unary())
        return children[0] if len(children) == 1 else And(tuple(children))

    def parse_unary(self) -> Formula:
        tok = self.peek()
        if self.at_kw("NOT"):
            self.next()
            return Not(self.parse_unary())
        if tok.kind == "punct" and tok.value == "(":
            self.next()
            inner = self.parse_or()
            self.expect_punct(")")
            return inner
        if tok.kind == "str":
            var = self.expect_str("variable")
            self.expect_kw("IS")
            term = self.expect_str("term")
            return Atom(var, term)
        self.fail(f"expected an atom, NOT or '(', got {tok.value!r}", tok)
        raise AssertionError("unreachable")


def parse_rulebase(text: str, filename: str = "<string>") -> RuleBase:
    return _Parser(text, filename).parse()


def load_rulebase(path: "str | Path") -> RuleBase:
    path = Path(path)
    return parse_rulebase(path.read_text(encoding="utf-8"), str(path))
