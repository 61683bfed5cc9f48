"""Multivariate polynomials over Q with grevlex, lex and block term orders.

Everything downstream computes with these: exponent vectors are plain int
tuples, coefficients are fractions.Fraction, and a polynomial is a dict from
exponent tuple to nonzero coefficient.  Values are treated as immutable after
construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .errors import InputError, ParseError

Exponent = tuple    # tuple[int, ...], one entry per ring variable
Scalar = Union[int, Fraction]


# ---------------------------------------------------------------------------
# monomial utilities


def mono_mul(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Exponent, b: Exponent) -> bool:
    """True when a divides b componentwise."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(a: Exponent, b: Exponent) -> Exponent:
    """a / b, assuming b divides a."""
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a: Exponent, b: Exponent) -> Exponent:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_deg(a: Exponent) -> int:
    return sum(a)


# ---------------------------------------------------------------------------
# term orders


@dataclass(frozen=True)
class MonomialOrder:
    """A term order on exponent tuples, encoded as a sort key.

    kind is "grevlex", "lex" or "block".  A block order compares the first
    `split` variables (with the `first` order) before the rest (with the
    `second` order); it is the elimination order for the leading block.
    """

    kind: str = "grevlex"
    split: int = 0
    first: str = "grevlex"
    second: str = "grevlex"

    def key(self, exp: Exponent):
        """Sort key; larger key means larger monomial."""
        if self.kind == "grevlex":
            return _grevlex_key(exp)
        if self.kind == "lex":
            return exp
        if self.kind == "block":
            head, tail = exp[: self.split], exp[self.split :]
            return (_plain_key(self.first, head), _plain_key(self.second, tail))
        raise InputError(f"unknown order kind {self.kind!r}")

    @staticmethod
    def named(name: str) -> "MonomialOrder":
        if name not in ("grevlex", "lex"):
            raise InputError(f"unknown order {name!r}")
        return MonomialOrder(kind=name)

    @staticmethod
    def block(split: int, first: str = "grevlex", second: str = "grevlex") -> "MonomialOrder":
        return MonomialOrder(kind="block", split=split, first=first, second=second)


def _grevlex_key(exp: Exponent):
    # degree first; ties broken so the smaller power in the last distinct
    # variable wins, i.e. reversed negated exponents compared left to right
    return (sum(exp), tuple(-e for e in reversed(exp)))


def _plain_key(name: str, exp: Exponent):
    return exp if name == "lex" else _grevlex_key(exp)


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


# ---------------------------------------------------------------------------
# rings and polynomials


@dataclass(frozen=True)
class PolyRing:
    """A polynomial ring Q[vars] with a fixed term order."""

    vars: tuple
    order: MonomialOrder = GREVLEX

    def __post_init__(self):
        if len(set(self.vars)) != len(self.vars):
            raise InputError(f"duplicate variable in {self.vars}")
        for v in self.vars:
            if not _is_name(v):
                raise InputError(f"bad variable name {v!r}")

    @property
    def nvars(self) -> int:
        return len(self.vars)

    def index(self, name: str) -> int:
        try:
            return self.vars.index(name)
        except ValueError:
            raise InputError(f"unknown variable {name!r} in Q{list(self.vars)}") from None

    def var(self, name: str) -> "Polynomial":
        exp = [0] * self.nvars
        exp[self.index(name)] = 1
        return Polynomial(self, {tuple(exp): Fraction(1)})

    def gens(self) -> list:
        return [self.var(v) for v in self.vars]

    def monomial(self, exp: Exponent, coeff: Scalar = 1) -> "Polynomial":
        return Polynomial(self, {tuple(exp): Fraction(coeff)})

    def const(self, c: Scalar) -> "Polynomial":
        c = Fraction(c)
        if c == 0:
            return self.zero()
        return Polynomial(self, {(0,) * self.nvars: c})

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def parse(self, text: str) -> "Polynomial":
        return _Parser(self, text).run()

    def with_order(self, order: MonomialOrder) -> "PolyRing":
        return PolyRing(self.vars, order)

    def __repr__(self):
        return f"Q[{', '.join(self.vars)}]"


def _is_name(s: str) -> bool:
    return bool(s) and (s[0].isalpha()) and all(c.isalnum() or c == "_" for c in s)


class Polynomial:
    """An element of a PolyRing: dict from exponent tuple to nonzero Fraction."""

    __slots__ = ("ring", "terms", "_sorted")

    def __init__(self, ring: PolyRing, terms: Mapping):
        self.ring = ring
        self.terms = {e: c for e, c in terms.items() if c != 0}
        self._sorted = None

    # -- queries ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(mono_deg(e) == 0 for e in self.terms)

    def constant_value(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        if not self.is_constant():
            raise InputError(f"{self} is not constant")
        return next(iter(self.terms.values()))

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(mono_deg(e) for e in self.terms)

    def degree_in(self, name: str) -> int:
        i = self.ring.index(name)
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def sorted_terms(self) -> list:
        """Terms as (exponent, coeff), descending in the ring order."""
        if self._sorted is None:
            key = self.ring.order.key
            self._sorted = sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)
        return self._sorted

    def lead(self):
        """Leading (exponent, coeff) in the ring order."""
        if not self.terms:
            raise InputError("zero polynomial has no leading term")
        return self.sorted_terms()[0]

    def lm(self) -> Exponent:
        return self.lead()[0]

    def lc(self) -> Fraction:
        return self.lead()[1]

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        c = self.lc()
        if c == 1:
            return self
        return Polynomial(self.ring, {e: v / c for e, v in self.terms.items()})

    def coefficient(self, exp: Exponent) -> Fraction:
        return self.terms.get(tuple(exp), Fraction(0))

    # -- arithmetic ------------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise InputError(f"mixed rings {self.ring} and {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return self.ring.zero()
            return Polynomial(self.ring, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = mono_mul(e1, e2)
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise InputError("polynomial powers must be nonnegative integers")
        out = self.ring.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def mul_term(self, exp: Exponent, coeff: Fraction) -> "Polynomial":
        if coeff == 0:
            return self.ring.zero()
        return Polynomial(self.ring, {mono_mul(e, exp): c * coeff for e, c in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    # -- conversion ------------------------------------------------------

    def substitute(self, target: PolyRing, images: Mapping) -> "Polynomial":
        """Evaluate at images[var] (a Polynomial over target) for every variable.

        Variables with exponent 0 everywhere need no image.
        """
        cache: dict = {}

        def power(i: int, n: int) -> Polynomial:
            got = cache.get((i, n))
            if got is None:
                name = self.ring.vars[i]
                if name not in images:
                    raise InputError(f"no image supplied for {name!r}")
                got = images[name] ** n
                cache[(i, n)] = got
            return got

        out = target.zero()
        for e, c in self.terms.items():
            term = target.const(c)
            for i, n in enumerate(e):
                if n:
                    term = term * power(i, n)
            out = out + term
        return out

    def rename(self, target: PolyRing, var_map: Mapping = None) -> "Polynomial":
        """Transport to a ring containing (an image of) every used variable.

        var_map sends source names to target names; identity by default.
        """
        positions = []
        for i, v in enumerate(self.ring.vars):
            name = var_map.get(v, v) if var_map else v
            positions.append(target.vars.index(name) if name in target.vars else -1)
        out: dict = {}
        for e, c in self.terms.items():
            new = [0] * target.nvars
            for i, n in enumerate(e):
                if n:
                    if positions[i] < 0:
                        raise InputError(f"variable {self.ring.vars[i]!r} not in {target}")
                    new[positions[i]] += n
            key = tuple(new)
            out[key] = out.get(key, 0) + c
        return Polynomial(target, out)

    # -- printing --------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for i, (e, c) in enumerate(self.sorted_terms()):
            mono = "*".join(
                v if n == 1 else f"{v}^{n}"
                for v, n in zip(self.ring.vars, e)
                if n
            )
            mag = abs(c)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = str(mag)
            if i == 0:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f" + {body}" if c > 0 else f" - {body}")
        return "".join(parts)

    def __repr__(self):
        return f"<{self} in {self.ring!r}>"


def diff(p: Polynomial, var: str) -> Polynomial:
    """Formal partial derivative with respect to a ring variable."""
    i = p.ring.index(var)
    out: dict = {}
    for e, c in p.terms.items():
        if e[i]:
            new = list(e)
            new[i] -= 1
            out[tuple(new)] = out.get(tuple(new), 0) + c * e[i]
    return Polynomial(p.ring, out)


def as_poly(ring: PolyRing, value) -> Polynomial:
    """Coerce an int, Fraction, str or Polynomial into ring."""
    if isinstance(value, Polynomial):
        if value.ring != ring:
            raise InputError(f"polynomial from {value.ring} used in {ring}")
        return value
    if isinstance(value, (int, Fraction)):
        return ring.const(value)
    if isinstance(value, str):
        return ring.parse(value)
    raise InputError(f"cannot interpret {value!r} as a polynomial")


# ---------------------------------------------------------------------------
# parser
#
# expr     := ['+'|'-'] term (('+'|'-') term)*
# term     := factor ('*' factor)*
# factor   := atom ('^' nat)?
# atom     := rational | var | '(' expr ')'
# rational := int ('/' nat)?
#
# The optional leading sign is our one extension; the canonical printer emits
# it, and parse(str(p)) == p must hold.


class _Parser:
    def __init__(self, ring: PolyRing, text: str):
        self.ring = ring
        self.text = text
        self.pos = 0

    def run(self) -> Polynomial:
        p = self.expr()
        self.skip_ws()
        if self.pos != len(self.text):
            self.fail("trailing input")
        return p

    def fail(self, message: str):
        raise ParseError(message, self.text, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expr(self) -> Polynomial:
        sign = 1
        if self.peek() in ("+", "-"):
            if self.text[self.pos] == "-":
                sign = -1
            self.pos += 1
        p = self.term() * sign
        while self.peek() in ("+", "-"):
            op = self.text[self.pos]
            self.pos += 1
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Polynomial:
        p = self.factor()
        while self.peek() == "*":
            self.pos += 1
            p = p * self.factor()
        return p

    def factor(self) -> Polynomial:
        p = self.atom()
        if self.peek() == "^":
            self.pos += 1
            self.skip_ws()
            n = self.nat()
            p = p ** n
        return p

    def atom(self) -> Polynomial:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            p = self.expr()
            if self.peek() != ")":
                self.fail("expected ')'")
            self.pos += 1
            return p
        if ch.isdigit() or ch == "-":
            return self.ring.const(self.rational())
        if ch.isalpha():
            name = self.name()
            try:
                return self.ring.var(name)
            except InputError:
                self.pos -= len(name)
                self.fail(f"unknown variable {name!r}")
        self.fail("expected a number, variable or '('")

    def name(self) -> str:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and (
            self.text[self.pos].isalnum() or self.text[self.pos] == "_"
        ):
            self.pos += 1
        return self.text[start : self.pos]

    def nat(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.fail("expected a natural number")
        return int(self.text[start : self.pos])

    def rational(self) -> Fraction:
        self.skip_ws()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] == "-":
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos or self.text[start:self.pos] == "-":
            self.fail("expected an integer")
        num = int(self.text[start : self.pos])
        save = self.pos
        self.skip_ws()
        if self.pos < len(self.text) and self.text[self.pos] == "/":
            self.pos += 1
            den = self.nat()
            if den == 0:
                self.fail("zero denominator")
            return Fraction(num, den)
        self.pos = save
        return Fraction(num)


def parse_poly(ring: PolyRing, text: str) -> Polynomial:
    """Parse text into a polynomial over ring; errors carry the offset."""
    return ring.parse(text)
