"""Regular expression ASTs over single-character alphabets.

Surface syntax: `|` for union, juxtaposition (or an explicit `.`) for
concatenation, postfix `*` and `+`, parentheses for grouping. Postfix
binds tighter than concatenation, which binds tighter than union.
There are no empty-language or empty-word literals, so every AST
denotes a nonempty language. `x+` is sugar for `x.x*` and is expanded
at parse time.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union as TUnion

from .errors import RegexParseError


@dataclass(frozen=True)
class Sym:
    char: str


@dataclass(frozen=True)
class Union:
    left: "RegexAst"
    right: "RegexAst"


@dataclass(frozen=True)
class Concat:
    left: "RegexAst"
    right: "RegexAst"


@dataclass(frozen=True)
class Star:
    child: "RegexAst"


RegexAst = TUnion[Sym, Union, Concat, Star]

_META = set("|()*+.")


def plus(child: RegexAst) -> RegexAst:
    """One-or-more repetitions, expanded to child.child*."""
    return Concat(child, Star(child))


def is_plus(node: RegexAst) -> bool:
    """True if node has the shape produced by plus()."""
    return (isinstance(node, Concat) and isinstance(node.right, Star)
            and node.right.child == node.left)


def symbols(node: RegexAst) -> frozenset[str]:
    """The set of alphabet characters mentioned by the expression."""
    if isinstance(node, Sym):
        return frozenset((node.char,))
    if isinstance(node, Star):
        return symbols(node.child)
    return symbols(node.left) | symbols(node.right)


def node_count(node: RegexAst) -> int:
    if isinstance(node, Sym):
        return 1
    if isinstance(node, Star):
        return 1 + node_count(node.child)
    return 1 + node_count(node.left) + node_count(node.right)


def sigma_star(alphabet: Iterable[str]) -> RegexAst:
    """An expression denoting all words over the given alphabet."""
    syms = sorted(set(alphabet))
    if not syms:
        raise RegexParseError("alphabet must be nonempty")
    acc: RegexAst = Sym(syms[0])
    for ch in syms[1:]:
        acc = Union(acc, Sym(ch))
    return Star(acc)


class _Parser:
    """Recursive-descent parser; union and concatenation fold left."""

    def __init__(self, text: str, alphabet: frozenset[str]):
        self.text = text
        self.alphabet = alphabet
        self.pos = 0

    def error(self, message: str) -> RegexParseError:
        return RegexParseError(f"{message} at position {self.pos} in {self.text!r}")

    def peek(self) -> str | None:
        return self.text[self.pos] if self.pos < len(self.text) else None

    def parse(self) -> RegexAst:
        if not self.text:
            raise self.error("empty expression")
        node = self.union()
        if self.pos != len(self.text):
            raise self.error("unexpected character")
        return node

    def union(self) -> RegexAst:
        node = self.concat()
        while self.peek() == "|":
            self.pos += 1
            node = Union(node, self.concat())
        return node

    def concat(self) -> RegexAst:
        node = self.postfix()
        while True:
            ch = self.peek()
            if ch == ".":
                self.pos += 1
                node = Concat(node, self.postfix())
            elif ch is not None and ch not in "|)*+.":
                node = Concat(node, self.postfix())
            else:
                return node

    def postfix(self) -> RegexAst:
        node = self.atom()
        while True:
            ch = self.peek()
            if ch == "*":
                self.pos += 1
                node = Star(node)
            elif ch == "+":
                self.pos += 1
                node = plus(node)
            else:
                return node

    def atom(self) -> RegexAst:
        ch = self.peek()
        if ch is None:
            raise self.error("expected a symbol or group")
        if ch == "(":
            self.pos += 1
            node = self.union()
            if self.peek() != ")":
                raise self.error("unbalanced parenthesis")
            self.pos += 1
            return node
        if ch in _META:
            raise self.error(f"operator {ch!r} has no operand")
        if ch not in self.alphabet:
            raise self.error(f"symbol {ch!r} not in alphabet")
        self.pos += 1
        return Sym(ch)


def parse_regex(text: str, alphabet: Iterable[str]) -> RegexAst:
    """Parse a surface expression whose symbols must come from alphabet."""
    alpha = frozenset(alphabet)
    bad = sorted(c for c in alpha if len(c) != 1 or c in _META)
    if bad:
        raise RegexParseError(f"invalid alphabet entries: {bad}")
    return _Parser(text, alpha).parse()


# Precedence levels used when re-rendering: union < concat < postfix/atom.
_UNION, _CONCAT, _POSTFIX, _ATOM = 0, 1, 2, 3


def serialize_regex(node: RegexAst) -> str:
    """Render an AST so that parsing the result rebuilds it exactly."""
    text, _ = _render(node)
    return text


def _render(node: RegexAst) -> tuple[str, int]:
    if isinstance(node, Sym):
        return node.char, _ATOM
    if is_plus(node):
        assert isinstance(node, Concat)
        return _wrap(node.left, _POSTFIX) + "+", _POSTFIX
    if isinstance(node, Star):
        return _wrap(node.child, _POSTFIX) + "*", _POSTFIX
    if isinstance(node, Concat):
        # Left-associated chains render bare; a right-nested concat or a
        # union child needs parentheses to parse back identically.
        return _wrap(node.left, _CONCAT) + _wrap(node.right, _POSTFIX), _CONCAT
    if isinstance(node, Union):
        return _wrap(node.left, _UNION) + "|" + _wrap(node.right, _CONCAT), _UNION
    raise TypeError(f"not a regex node: {node!r}")


def _wrap(node: RegexAst, min_level: int) -> str:
    text, level = _render(node)
    return f"({text})" if level < min_level else text
