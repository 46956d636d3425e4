"""Modal many-valued formulas: AST, concrete syntax, schema matching.

The connective set is Lukasiewicz implication and friends plus the two S5
modalities.  Concrete ASCII syntax, loosest-binding first:

    ==      equivalence (sugar: expands to a meet of two implications)
    ->      implication (right associative)
    \\/      join (lattice max)
    /\\      meet (lattice min)
    (+)     strong disjunction (truncated sum)
    *       strong conjunction (truncated product)
    ~ [] <> negation, box, diamond (prefix)
    0 1     falsum, verum
    p, q_1  variables: [A-Za-z][A-Za-z0-9_]*

All binary connectives except ``->`` associate to the left.  ``a == b``
parses to ``(a -> b) /\\ (b -> a)``; there is no equivalence node in the AST
and the printer never emits ``==``.

Schemas (axiom shapes) are ordinary formula trees whose leaves are
``MetaVar`` nodes.  A metavariable may carry the ``modalized`` flag, in which
case it only matches formulas whose truth value cannot depend on the world of
evaluation: combinations of boxed/diamonded subformulas and constants.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Mapping


class ParseError(ValueError):
    """Raised on malformed formula text; carries the character position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True, slots=True)
class Formula:
    """Base class for formula nodes.  Instances are immutable and hashable."""



@dataclass(frozen=True, slots=True)
class Var(Formula):
    name: str


@dataclass(frozen=True, slots=True)
class Const(Formula):
    value: int  # 0 or 1


@dataclass(frozen=True, slots=True)
class MetaVar(Formula):
    """Schema placeholder.  Only valid inside patterns, never in parsed text."""

    name: str
    modalized: bool = False


@dataclass(frozen=True, slots=True)
class Not(Formula):
    arg: Formula


@dataclass(frozen=True, slots=True)
class Box(Formula):
    arg: Formula


@dataclass(frozen=True, slots=True)
class Dia(Formula):
    arg: Formula


@dataclass(frozen=True, slots=True)
class Impl(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Star(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Oplus(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Meet(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Join(Formula):
    left: Formula
    right: Formula


ZERO = Const(0)
ONE = Const(1)

BINARY_TYPES = (Impl, Star, Oplus, Meet, Join)
UNARY_TYPES = (Not, Box, Dia)


def equiv(left: Formula, right: Formula) -> Formula:
    """The meet of the two implications between left and right."""
    return Meet(Impl(left, right), Impl(right, left))


# ---------------------------------------------------------------------------
# Tokenizer / parser


_TOKEN_RE = re.compile(
    r"""(?P<ws>\s+)
      | (?P<oplus>\(\+\))
      | (?P<box>\[\])
      | (?P<dia><>)
      | (?P<impl>->)
      | (?P<equiv>==)
      | (?P<meet>/\\)
      | (?P<join>\\/)
      | (?P<not>~)
      | (?P<star>\*)
      | (?P<lparen>\()
      | (?P<rparen>\))
      | (?P<const>[01])
      | (?P<ident>[A-Za-z][A-Za-z0-9_]*)
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = match.lastgroup
        if kind != "ws":
            tokens.append((kind, match.group(), pos))
        pos = match.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.index = 0

    def _peek(self) -> str | None:
        if self.index < len(self.tokens):
            return self.tokens[self.index][0]
        return None

    def _advance(self) -> tuple[str, str, int]:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def _position(self) -> int:
        if self.index < len(self.tokens):
            return self.tokens[self.index][2]
        return len(self.text)

    def parse(self) -> Formula:
        formula = self._equiv()
        if self.index != len(self.tokens):
            kind, text, pos = self.tokens[self.index]
            raise ParseError(f"unexpected {text!r} after formula", pos)
        return formula

    def _equiv(self) -> Formula:
        left = self._impl()
        if self._peek() == "equiv":
            self._advance()
            right = self._impl()
            return equiv(left, right)
        return left

    def _impl(self) -> Formula:
        left = self._join()
        if self._peek() == "impl":
            self._advance()
            return Impl(left, self._impl())
        return left

    def _join(self) -> Formula:
        formula = self._meet()
        while self._peek() == "join":
            self._advance()
            formula = Join(formula, self._meet())
        return formula

    def _meet(self) -> Formula:
        formula = self._oplus()
        while self._peek() == "meet":
            self._advance()
            formula = Meet(formula, self._oplus())
        return formula

    def _oplus(self) -> Formula:
        formula = self._star()
        while self._peek() == "oplus":
            self._advance()
            formula = Oplus(formula, self._star())
        return formula

    def _star(self) -> Formula:
        formula = self._unary()
        while self._peek() == "star":
            self._advance()
            formula = Star(formula, self._unary())
        return formula

    def _unary(self) -> Formula:
        kind = self._peek()
        if kind == "not":
            self._advance()
            return Not(self._unary())
        if kind == "box":
            self._advance()
            return Box(self._unary())
        if kind == "dia":
            self._advance()
            return Dia(self._unary())
        return self._atom()

    def _atom(self) -> Formula:
        if self.index >= len(self.tokens):
            raise ParseError("unexpected end of input", self._position())
        kind, text, pos = self._advance()
        if kind == "const":
            return ZERO if text == "0" else ONE
        if kind == "ident":
            return Var(text)
        if kind == "lparen":
            formula = self._equiv()
            if self._peek() != "rparen":
                raise ParseError("expected ')'", self._position())
            self._advance()
            return formula
        raise ParseError(f"unexpected {text!r}", pos)


def parse(text: str) -> Formula:
    """Parse concrete syntax into a formula tree.

    Raises ParseError (with character position) on malformed input.
    """
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# Printer

_PREC_IMPL = 1
_PREC_JOIN = 2
_PREC_MEET = 3
_PREC_OPLUS = 4
_PREC_STAR = 5
_PREC_UNARY = 6
_PREC_ATOM = 7

_BINARY_INFO = {
    Impl: (_PREC_IMPL, " -> "),
    Join: (_PREC_JOIN, " \\/ "),
    Meet: (_PREC_MEET, " /\\ "),
    Oplus: (_PREC_OPLUS, " (+) "),
    Star: (_PREC_STAR, "*"),
}

_UNARY_INFO = {Not: "~", Box: "[]", Dia: "<>"}


def _precedence(formula: Formula) -> int:
    info = _BINARY_INFO.get(type(formula))
    if info is not None:
        return info[0]
    if type(formula) in _UNARY_INFO:
        return _PREC_UNARY
    return _PREC_ATOM


def _render(formula: Formula, min_prec: int) -> str:
    prec = _precedence(formula)
    if isinstance(formula, Var):
        text = formula.name
    elif isinstance(formula, Const):
        text = str(formula.value)
    elif isinstance(formula, MetaVar):
        text = formula.name
    elif isinstance(formula, UNARY_TYPES):
        text = _UNARY_INFO[type(formula)] + _render(formula.arg, _PREC_UNARY)
    else:
        _, symbol = _BINARY_INFO[type(formula)]
        if isinstance(formula, Impl):
            # right associative: the left child needs parens at equal level
            text = _render(formula.left, prec + 1) + symbol + _render(formula.right, prec)
        else:
            text = _render(formula.left, prec) + symbol + _render(formula.right, prec + 1)
    if prec < min_prec:
        return "(" + text + ")"
    return text


def print_formula(formula: Formula) -> str:
    """Render with minimal parentheses; parse(print_formula(f)) == f."""
    return _render(formula, _PREC_IMPL)


# ---------------------------------------------------------------------------
# Structural helpers


def subformulas(formula: Formula) -> Iterator[Formula]:
    """Yield every node of the tree, children before parents."""
    if isinstance(formula, BINARY_TYPES):
        yield from subformulas(formula.left)
        yield from subformulas(formula.right)
    elif isinstance(formula, UNARY_TYPES):
        yield from subformulas(formula.arg)
    yield formula


def variables(formula: Formula) -> list[str]:
    """Sorted list of the variable names occurring in the formula."""
    names = {node.name for node in subformulas(formula) if isinstance(node, Var)}
    return sorted(names)


def is_modalized(formula: Formula) -> bool:
    """True when the truth value cannot depend on the world of evaluation.

    Holds for constants and for any combination of boxed/diamonded
    subformulas under the propositional connectives.
    """
    if isinstance(formula, (Box, Dia, Const)):
        return True
    if isinstance(formula, Var):
        return False
    if isinstance(formula, Not):
        return is_modalized(formula.arg)
    if isinstance(formula, BINARY_TYPES):
        return is_modalized(formula.left) and is_modalized(formula.right)
    raise TypeError(f"not a ground formula: {formula!r}")


def match_schema(pattern: Formula, formula: Formula) -> dict[str, Formula] | None:
    """Match a schema against a ground formula.

    Returns the metavariable binding on success, None on failure.  Repeated
    metavariables must bind equal subformulas; metavariables flagged as
    modalized only match modalized formulas.
    """
    binding: dict[str, Formula] = {}

    def walk(pat: Formula, f: Formula) -> bool:
        if isinstance(pat, MetaVar):
            if pat.modalized and not is_modalized(f):
                return False
            bound = binding.get(pat.name)
            if bound is None:
                binding[pat.name] = f
                return True
            return bound == f
        if type(pat) is not type(f):
            return False
        if isinstance(pat, (Var, Const)):
            return pat == f
        if isinstance(pat, UNARY_TYPES):
            return walk(pat.arg, f.arg)
        return walk(pat.left, f.left) and walk(pat.right, f.right)

    if walk(pattern, formula):
        return binding
    return None


def substitute(pattern: Formula, binding: Mapping[str, Formula]) -> Formula:
    """Replace every metavariable in the pattern with its bound formula."""
    if isinstance(pattern, MetaVar):
        try:
            return binding[pattern.name]
        except KeyError:
            raise KeyError(f"unbound metavariable {pattern.name!r}") from None
    if isinstance(pattern, (Var, Const)):
        return pattern
    if isinstance(pattern, UNARY_TYPES):
        return type(pattern)(substitute(pattern.arg, binding))
    if isinstance(pattern, BINARY_TYPES):
        return type(pattern)(
            substitute(pattern.left, binding), substitute(pattern.right, binding)
        )
    raise TypeError(f"not a pattern node: {pattern!r}")


def schema(text: str, modalized: tuple[str, ...] = ()) -> Formula:
    """Parse schema text: every identifier becomes a metavariable.

    Names listed in `modalized` get the world-independence side condition.
    """
    parsed = parse(text)

    def lift(f: Formula) -> Formula:
        if isinstance(f, Var):
            return MetaVar(f.name, modalized=f.name in modalized)
        if isinstance(f, Const):
            return f
        if isinstance(f, UNARY_TYPES):
            return type(f)(lift(f.arg))
        return type(f)(lift(f.left), lift(f.right))

    return lift(parsed)
