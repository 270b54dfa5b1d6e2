"""Finitely described total maps on the naturals, and infinite-set generators.

A :class:`Rule` is a closed-form function from naturals to naturals: a sum of
monomial terms in the round index (with the named atoms ``half`` and ``diag``
also allowed), optionally preceded by a finite table of explicit values.  A
:class:`SetGen` describes an infinite subset of the naturals as a strictly
increasing finite prefix continued by an arithmetic tail.

Both objects parse from and render to a fixed text form, used by witness
files, move descriptors and tree files; rendering is canonical so files
round-trip byte for byte.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


class RuleParseError(ValueError):
    """Raised on malformed rule/generator text; carries the failing position."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


def _tri(w: int) -> int:
    return w * (w + 1) // 2


def _tri_root(i: int) -> int:
    # largest w with w(w+1)/2 <= i
    return (math.isqrt(8 * i + 1) - 1) // 2


_ATOMS = ("k", "half", "diag")


def _atom_value(atom: str, n: int) -> int:
    if atom == "k":
        return n
    if atom == "half":
        return n // 2
    # diag: position of n within its triangular block (0,0,1,0,1,2,...)
    return n - _tri(_tri_root(n))


@dataclass(frozen=True)
class Term:
    coef: int
    atom: str = "k"
    power: int = 1  # power 0 means a constant term equal to coef

    def value(self, n: int) -> int:
        if self.power == 0:
            return self.coef
        return self.coef * _atom_value(self.atom, n) ** self.power

    def render(self) -> str:
        if self.power == 0:
            return str(self.coef)
        base = self.atom if self.power == 1 else f"{self.atom}^{self.power}"
        return base if self.coef == 1 else f"{self.coef}*{base}"


@dataclass(frozen=True)
class Rule:
    """Total map omega -> omega: optional value table, then a polynomial tail."""

    terms: tuple[Term, ...] = ()
    table: tuple[int, ...] = ()

    def __call__(self, n: int) -> int:
        if n < 0:
            raise ValueError(f"rule argument must be a natural, got {n}")
        if n < len(self.table):
            return self.table[n]
        if not self.terms:
            # table with no tail continues with its last value
            return self.table[-1] if self.table else 0
        return sum(t.value(n) for t in self.terms)

    def render(self) -> str:
        poly = "+".join(t.render() for t in self.terms) if self.terms else ""
        if self.table:
            vals = ",".join(str(v) for v in self.table)
            return f"table({vals};{poly})" if poly else f"table({vals})"
        return poly if poly else "0"

    def __str__(self) -> str:  # pragma: no cover - convenience
        return self.render()


def const(c: int) -> Rule:
    return Rule(terms=(Term(c, "k", 0),)) if c else Rule()


def affine(a: int, b: int) -> Rule:
    terms = []
    if a:
        terms.append(Term(a, "k", 1))
    if b:
        terms.append(Term(b, "k", 0))
    return Rule(terms=tuple(terms))


IDENTITY = affine(1, 0)
HALF = Rule(terms=(Term(1, "half", 1),))
DIAG = Rule(terms=(Term(1, "diag", 1),))


class _Scanner:
    def __init__(self, text: str, pos: int = 0):
        self.text = text
        self.pos = pos

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def eat(self, token: str) -> bool:
        if self.text.startswith(token, self.pos):
            self.pos += len(token)
            return True
        return False

    def expect(self, token: str) -> None:
        if not self.eat(token):
            raise RuleParseError(f"expected {token!r}", self.pos)

    def int_(self) -> int:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise RuleParseError("expected a number", start)
        return int(self.text[start:self.pos])

    def done(self) -> bool:
        return self.pos >= len(self.text)


def _parse_term(s: _Scanner) -> Term:
    if s.peek().isdigit():
        coef = s.int_()
        if not s.eat("*"):
            return Term(coef, "k", 0)
    else:
        coef = 1
    for atom in ("half", "diag", "k", "n"):
        if s.eat(atom):
            atom = "k" if atom == "n" else atom
            power = s.int_() if s.eat("^") else 1
            return Term(coef, atom, power)
    raise RuleParseError("expected a term (number, k, half or diag)", s.pos)


def _parse_poly(s: _Scanner) -> tuple[Term, ...]:
    terms = [_parse_term(s)]
    while s.eat("+"):
        terms.append(_parse_term(s))
    # canonical order: higher powers first, then atom name, constants last
    terms.sort(key=lambda t: (-t.power, t.atom))
    return tuple(terms)


def parse_rule(text: str, offset: int = 0) -> Rule:
    """Parse ``2*k+1``, ``k^2``, ``half``, ``table(5,3;k)`` and friends."""
    s = _Scanner(text.strip())
    try:
        rule = _parse_rule_inner(s)
    except RuleParseError as e:
        raise RuleParseError(str(e).rsplit(" (at", 1)[0], e.pos + offset) from None
    if not s.done():
        raise RuleParseError("trailing input after rule", s.pos + offset)
    return rule


def _parse_rule_inner(s: _Scanner) -> Rule:
    if s.eat("table("):
        vals = [s.int_()]
        while s.eat(","):
            vals.append(s.int_())
        terms: tuple[Term, ...] = ()
        if s.eat(";"):
            terms = _parse_poly(s)
        s.expect(")")
        return Rule(terms=terms, table=tuple(vals))
    return Rule(terms=_parse_poly(s))


@dataclass(frozen=True)
class SetGen:
    """Infinite subset of omega: a strictly increasing prefix, arithmetic tail.

    The set is ``prefix`` followed by ``prefix[-1] + step, prefix[-1] + 2*step, ...``.
    """

    prefix: tuple[int, ...]
    step: int

    def __post_init__(self):
        if not self.prefix:
            raise ValueError("set generator needs a nonempty prefix")
        if any(b <= a for a, b in zip(self.prefix, self.prefix[1:])):
            raise ValueError(f"prefix must be strictly increasing: {self.prefix}")
        if self.step < 1:
            raise ValueError(f"tail step must be >= 1, got {self.step}")

    def value_at(self, i: int) -> int:
        if i < len(self.prefix):
            return self.prefix[i]
        return self.prefix[-1] + (i - len(self.prefix) + 1) * self.step

    def values(self, count: int) -> list[int]:
        return [self.value_at(i) for i in range(count)]

    def contains(self, x: int) -> bool:
        if x in self.prefix:
            return True
        last = self.prefix[-1]
        return x > last and (x - last) % self.step == 0

    def least_above(self, x: int) -> int:
        for v in self.prefix:
            if v > x:
                return v
        last = self.prefix[-1]
        if x < last:
            return last  # unreachable given prefix scan, kept for safety
        jumps = (x - last) // self.step + 1
        return last + jumps * self.step

    def trim_below(self, m: int) -> "SetGen":
        """The generator of ``{x in self : x >= m}``."""
        kept = tuple(v for v in self.prefix if v >= m)
        if kept:
            return SetGen(kept, self.step)
        first = self.least_above(m - 1)
        return SetGen((first,), self.step)

    def render(self) -> str:
        return " ".join(str(v) for v in self.prefix) + f" then step {self.step}"


NATURALS = SetGen((0,), 1)
EVENS = SetGen((0,), 2)
ODDS = SetGen((1,), 2)


def parse_setgen(text: str) -> SetGen:
    parts = text.split()
    if "then" not in parts:
        raise RuleParseError("expected '<values...> then step <d>'", 0)
    cut = parts.index("then")
    if parts[cut + 1:cut + 2] != ["step"] or len(parts) != cut + 3:
        raise RuleParseError("expected 'then step <d>' after the prefix", 0)
    try:
        prefix = tuple(int(p) for p in parts[:cut])
        step = int(parts[cut + 2])
    except ValueError:
        raise RuleParseError("set generator values must be numbers", 0) from None
    if not prefix:
        raise RuleParseError("set generator needs at least one prefix value", 0)
    return SetGen(prefix, step)
