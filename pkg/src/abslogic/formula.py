"""Negation-normal-form formulas over literals, with 0/1 constants.

Concrete syntax::

    formula := term ('|' term)*
    term    := factor ('&' factor)*
    factor  := atom | '~' atom | '1' | '0' | '(' formula ')'

``&`` binds tighter than ``|``; chains of either operator nest to the right,
so ``p|q|r`` parses as ``Or(p, Or(q, r))``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterator, Mapping, Union

from .errors import BoundExceededError, FormulaSyntaxError, MissingAtomError

ATOM_RE = re.compile(r"[a-z][a-zA-Z0-9_]*")
MAX_TAUTOLOGY_ATOMS = 20


@dataclass(frozen=True, order=True)
class Literal:
    atom: str
    negative: bool = False

    def __post_init__(self):
        if not ATOM_RE.fullmatch(self.atom):
            raise ValueError(f"invalid atom name {self.atom!r}")

    @property
    def dual(self) -> Literal:
        return Literal(self.atom, not self.negative)

    @classmethod
    def parse(cls, text: str) -> Literal:
        if text.startswith("~"):
            return cls(text[1:], True)
        return cls(text, False)

    def __str__(self):
        return f"~{self.atom}" if self.negative else self.atom


@dataclass(frozen=True)
class Lit:
    literal: Literal


@dataclass(frozen=True)
class Const:
    value: bool


@dataclass(frozen=True)
class Or:
    left: Formula
    right: Formula


@dataclass(frozen=True)
class And:
    left: Formula
    right: Formula


Formula = Union[Lit, Const, Or, And]

TRUE = Const(True)
FALSE = Const(False)


def lit(text: str) -> Lit:
    return Lit(Literal.parse(text))


# -- parsing ----------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:([a-zA-Z_][a-zA-Z0-9_]*)|([01])|([~&|()]))")


def _tokenize(text):
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastindex)
        word = m.group(m.lastindex)
        if m.lastindex == 1 and not ATOM_RE.fullmatch(word):
            raise FormulaSyntaxError(f"invalid atom name {word!r}", start)
        kind = ("atom", "const", "op")[m.lastindex - 1]
        tokens.append((kind, word, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, tok, expected):
        kind, word, offset = tok
        found = "end of input" if kind == "end" else repr(word)
        raise FormulaSyntaxError(f"expected {expected}, found {found}", offset)

    def formula(self):
        items = [self.term()]
        while self.peek()[1] == "|" and self.peek()[0] == "op":
            self.advance()
            items.append(self.term())
        return _fold_right(Or, items)

    def term(self):
        items = [self.factor()]
        while self.peek()[1] == "&" and self.peek()[0] == "op":
            self.advance()
            items.append(self.factor())
        return _fold_right(And, items)

    def factor(self):
        tok = self.advance()
        kind, word, offset = tok
        if kind == "atom":
            return Lit(Literal(word))
        if kind == "const":
            return TRUE if word == "1" else FALSE
        if kind == "op" and word == "~":
            nxt = self.advance()
            if nxt[0] != "atom":
                if nxt[0] == "end":
                    self.fail(nxt, "an atom after '~'")
                raise FormulaSyntaxError("'~' applies only to atoms", offset)
            return Lit(Literal(nxt[1], True))
        if kind == "op" and word == "(":
            inner = self.formula()
            close = self.advance()
            if close[:2] != ("op", ")"):
                self.fail(close, "')'")
            return inner
        self.fail(tok, "an atom, constant, '~' or '('")


def _fold_right(node, items):
    result = items[-1]
    for item in reversed(items[:-1]):
        result = node(item, result)
    return result


def parse(text: str) -> Formula:
    """Parse ``text`` into a formula tree.

    Raises :class:`FormulaSyntaxError` carrying the offset of the offending
    token (``len(text)`` when input ends too early).
    """
    parser = _Parser(text)
    result = parser.formula()
    tok = parser.peek()
    if tok[0] != "end":
        parser.fail(tok, "'&', '|' or end of input")
    return result


def render(f: Formula) -> str:
    if isinstance(f, Lit):
        return str(f.literal)
    if isinstance(f, Const):
        return "1" if f.value else "0"
    op = "&" if isinstance(f, And) else "|"
    return f"({render(f.left)}{op}{render(f.right)})"


# -- structure --------------------------------------------------------------

def negate(f: Formula) -> Formula:
    """De Morgan dual: swap the connectives and constants, flip every literal."""
    if isinstance(f, Lit):
        return Lit(f.literal.dual)
    if isinstance(f, Const):
        return Const(not f.value)
    if isinstance(f, And):
        return Or(negate(f.left), negate(f.right))
    return And(negate(f.left), negate(f.right))


def literals(f: Formula) -> Iterator[Literal]:
    """Leaf literals in left-to-right order."""
    if isinstance(f, Lit):
        yield f.literal
    elif isinstance(f, (And, Or)):
        yield from literals(f.left)
        yield from literals(f.right)


def atoms(f: Formula) -> list[str]:
    return sorted({l.atom for l in literals(f)})


def has_constants(f: Formula) -> bool:
    if isinstance(f, Const):
        return True
    if isinstance(f, Lit):
        return False
    return has_constants(f.left) or has_constants(f.right)


# -- semantics --------------------------------------------------------------

def evaluate(f: Formula, assignment: Mapping[str, bool]) -> bool:
    if isinstance(f, Lit):
        atom = f.literal.atom
        if atom not in assignment:
            raise MissingAtomError(atom)
        return bool(assignment[atom]) != f.literal.negative
    if isinstance(f, Const):
        return f.value
    if isinstance(f, And):
        return evaluate(f.left, assignment) and evaluate(f.right, assignment)
    return evaluate(f.left, assignment) or evaluate(f.right, assignment)


def assignments(names):
    for values in itertools.product((False, True), repeat=len(names)):
        yield dict(zip(names, values))


def falsifying_assignment(f: Formula) -> dict[str, bool] | None:
    """First assignment (in binary counting order) making ``f`` false."""
    names = atoms(f)
    if len(names) > MAX_TAUTOLOGY_ATOMS:
        raise BoundExceededError(
            f"{len(names)} atoms exceeds the truth-table bound of {MAX_TAUTOLOGY_ATOMS}"
        )
    for sigma in assignments(names):
        if not evaluate(f, sigma):
            return sigma
    return None


def is_tautology(f: Formula) -> bool:
    return falsifying_assignment(f) is None
