"""Weighted graded polynomials over the rationals, with a text grammar.

Monomials are exponent tuples in declaration order.  The monomial order is
degree first (weighted), with ties broken so that among monomials of equal
degree the one whose exponent vector is lexicographically larger when read
from the last declared variable backwards is the larger monomial.  With
declaration order x1, x2, y, z this puts z^2 above y^3 and lists the degree-2
monomials of P(1,1,2,3) as x1^2, x1*x2, x2^2, y.

Coefficients are Python ints or fractions.Fraction; arithmetic is exact.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterator, Optional, Sequence, Union

from .linalg import Number

Monomial = tuple[int, ...]

_IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*")


def _norm_coeff(c: Number) -> Number:
    if isinstance(c, Fraction):
        if c.denominator == 1:
            return c.numerator
        return c
    if isinstance(c, int):
        return c
    raise TypeError(f"not an exact coefficient: {c!r}")


class WeightedRing:
    """Polynomial ring with named variables and positive integer weights."""

    def __init__(self, names: Sequence[str], weights: Sequence[int]):
        names = tuple(names)
        weights = tuple(weights)
        if len(names) != len(weights):
            raise ValueError("names and weights must have equal length")
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable name")
        for n in names:
            if not _IDENT.fullmatch(n):
                raise ValueError(f"bad variable name: {n!r}")
        for w in weights:
            if not isinstance(w, int) or w <= 0:
                raise ValueError(f"weights must be positive integers, got {w!r}")
        self.names = names
        self.weights = weights
        self.n = len(names)
        self.index = {name: i for i, name in enumerate(names)}
        self._mono_cache: dict[int, tuple[Monomial, ...]] = {}

    def __eq__(self, other) -> bool:
        return isinstance(other, WeightedRing) and self.names == other.names and self.weights == other.weights

    def __hash__(self) -> int:
        return hash((self.names, self.weights))

    def __repr__(self) -> str:
        pairs = ", ".join(f"{n}:{w}" for n, w in zip(self.names, self.weights))
        return f"WeightedRing({pairs})"

    def degree(self, mono: Monomial) -> int:
        return sum(e * w for e, w in zip(mono, self.weights))

    def sort_key(self, mono: Monomial):
        """Sort key; larger key means larger monomial."""
        return (self.degree(mono), mono[::-1])

    def monomials(self, d: int) -> tuple[Monomial, ...]:
        """All monomials of weighted degree d, ascending in the monomial order."""
        if d < 0:
            raise ValueError("degree must be nonnegative")
        cached = self._mono_cache.get(d)
        if cached is None:
            out = sorted(self._enum(0, d), key=self.sort_key)
            cached = self._mono_cache[d] = tuple(out)
        return cached

    def _enum(self, i: int, remaining: int) -> Iterator[Monomial]:
        if i == self.n:
            if remaining == 0:
                yield ()
            return
        w = self.weights[i]
        for e in range(remaining // w + 1):
            for tail in self._enum(i + 1, remaining - e * w):
                yield (e,) + tail

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return Poly(self, {(0,) * self.n: 1})

    def constant(self, c: Number) -> "Poly":
        return Poly(self, {(0,) * self.n: c})

    def variable(self, name_or_index: Union[str, int]) -> "Poly":
        i = self.index[name_or_index] if isinstance(name_or_index, str) else name_or_index
        mono = tuple(1 if j == i else 0 for j in range(self.n))
        return Poly(self, {mono: 1})


def monomial_basis(ring: WeightedRing, d: int) -> tuple[Monomial, ...]:
    """Monomials of weighted degree exactly d, in ascending monomial order."""
    return ring.monomials(d)


class Poly:
    """Sparse exact polynomial; treat as immutable."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: WeightedRing, coeffs: dict):
        self.ring = ring
        clean = {}
        for mono, c in coeffs.items():
            c = _norm_coeff(c)
            if c:
                clean[tuple(mono)] = c
        self.coeffs = clean

    def _check(self, other: "Poly"):
        if self.ring != other.ring:
            raise ValueError("polynomials from different rings")

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.ring == other.ring and self.coeffs == other.coeffs

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        out = dict(self.coeffs)
        for mono, c in other.coeffs.items():
            out[mono] = out.get(mono, 0) + c
        return Poly(self.ring, out)

    def __sub__(self, other: "Poly") -> "Poly":
        self._check(other)
        out = dict(self.coeffs)
        for mono, c in other.coeffs.items():
            out[mono] = out.get(mono, 0) - c
        return Poly(self.ring, out)

    def __neg__(self) -> "Poly":
        return Poly(self.ring, {m: -c for m, c in self.coeffs.items()})

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        out: dict[Monomial, Number] = {}
        for m1, c1 in self.coeffs.items():
            for m2, c2 in other.coeffs.items():
                mono = tuple(a + b for a, b in zip(m1, m2))
                out[mono] = out.get(mono, 0) + c1 * c2
        return Poly(self.ring, out)

    def __rmul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c: Number) -> "Poly":
        if not c:
            return self.ring.zero()
        return Poly(self.ring, {m: c * v for m, v in self.coeffs.items()})

    def __pow__(self, e: int) -> "Poly":
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def degree(self) -> Optional[int]:
        """Largest weighted degree of a term; None for the zero polynomial."""
        if not self.coeffs:
            return None
        return max(self.ring.degree(m) for m in self.coeffs)

    def is_homogeneous(self) -> bool:
        degs = {self.ring.degree(m) for m in self.coeffs}
        return len(degs) <= 1

    def homogeneous_degree(self) -> int:
        degs = {self.ring.degree(m) for m in self.coeffs}
        if len(degs) != 1:
            raise ValueError("polynomial is zero or not homogeneous")
        return degs.pop()

    def leading_monomial(self) -> Monomial:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.coeffs, key=self.ring.sort_key)

    def leading_coefficient(self) -> Number:
        return self.coeffs[self.leading_monomial()]

    def sorted_terms(self, reverse: bool = True) -> list[tuple[Monomial, Number]]:
        return sorted(self.coeffs.items(), key=lambda t: self.ring.sort_key(t[0]), reverse=reverse)

    def content_normalized(self) -> "Poly":
        """Scale to coprime integer coefficients with positive leading one."""
        if not self.coeffs:
            return self
        from math import gcd

        denom = 1
        for c in self.coeffs.values():
            if isinstance(c, Fraction):
                denom = denom // gcd(denom, c.denominator) * c.denominator
        ints = {}
        for m, c in self.coeffs.items():
            ints[m] = int(c * denom)
        g = 0
        for v in ints.values():
            g = gcd(g, v)
            if g == 1:
                break
        if g > 1:
            ints = {m: v // g for m, v in ints.items()}
        if ints[max(ints, key=self.ring.sort_key)] < 0:
            ints = {m: -v for m, v in ints.items()}
        return Poly(self.ring, ints)

    def coefficient_vector(self, d: int) -> list[Number]:
        """Coefficients over monomial_basis(ring, d); input must be homogeneous of degree d."""
        if self.coeffs and self.homogeneous_degree() != d:
            raise ValueError("degree mismatch")
        return [self.coeffs.get(m, 0) for m in self.ring.monomials(d)]

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Poly({format_poly(self)})"


def poly_from_vector(ring: WeightedRing, d: int, vec: Sequence[Number]) -> Poly:
    basis = ring.monomials(d)
    if len(vec) != len(basis):
        raise ValueError("vector length does not match monomial basis")
    return Poly(ring, {m: c for m, c in zip(basis, vec)})


def divide(dividend: Poly, divisors: Sequence[Poly]) -> tuple[list[Poly], Poly]:
    """Multivariate division: dividend = sum(q_i * d_i) + r.

    No term of the remainder is divisible by any divisor's leading monomial.
    Divisors must be nonzero and share the dividend's ring.
    """
    ring = dividend.ring
    leads = []
    for dv in divisors:
        if dv.ring != ring:
            raise ValueError("divisor from a different ring")
        if dv.is_zero:
            raise ValueError("zero divisor polynomial")
        leads.append((dv.leading_monomial(), dv.leading_coefficient()))
    quotients = [ring.zero() for _ in divisors]
    remainder: dict[Monomial, Number] = {}
    work = dict(dividend.coeffs)
    while work:
        mono = max(work, key=ring.sort_key)
        coeff = work.pop(mono)
        for i, (lm, lc) in enumerate(leads):
            if all(a >= b for a, b in zip(mono, lm)):
                qmono = tuple(a - b for a, b in zip(mono, lm))
                if isinstance(coeff, int) and isinstance(lc, int) and coeff % lc == 0:
                    qc: Number = coeff // lc
                else:
                    qc = Fraction(coeff) / Fraction(lc)
                term = Poly(ring, {qmono: qc})
                quotients[i] = quotients[i] + term
                for m2, c2 in divisors[i].coeffs.items():
                    if m2 == lm:
                        continue
                    tm = tuple(a + b for a, b in zip(qmono, m2))
                    nc = work.get(tm, 0) - qc * c2
                    if nc:
                        work[tm] = nc
                    else:
                        work.pop(tm, None)
                break
        else:
            remainder[mono] = coeff
    return quotients, Poly(ring, remainder)


def evaluate(p: Poly, images: Sequence, zero, one):
    """Ring-morphism evaluation of p with images[i] substituted for variable i.

    The images may live in any exact ring-like type supporting +, * and
    scalar multiplication by int/Fraction; zero and one seed the fold.
    """
    if len(images) != p.ring.n:
        raise ValueError("one image per variable required")
    cache: dict[tuple[int, int], object] = {}

    def power(i: int, e: int):
        key = (i, e)
        got = cache.get(key)
        if got is None:
            if e == 1:
                got = images[i]
            else:
                half = power(i, e // 2)
                got = half * half
                if e & 1:
                    got = got * images[i]
            cache[key] = got
        return got

    acc = zero
    for mono, c in sorted(p.coeffs.items()):
        val = None
        for i, e in enumerate(mono):
            if e:
                val = power(i, e) if val is None else val * power(i, e)
        if val is None:
            acc = acc + c * one
        else:
            acc = acc + c * val
    return acc


class PolyParseError(ValueError):
    """Syntax error with a 0-based position into the input text."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


_TOKEN = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<ident>[A-Za-z][A-Za-z0-9_]*)|(?P<op>[-+*^()/]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            raise PolyParseError(f"unexpected character {text[len(text) - len(stripped)]!r}",
                                 len(text) - len(stripped))
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, ring: WeightedRing):
        self.text = text
        self.ring = ring
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str):
        kind, val, pos = self.peek()
        if kind != "op" or val != op:
            raise PolyParseError(f"expected {op!r}", pos)
        return self.advance()

    def parse(self) -> Poly:
        p = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise PolyParseError(f"unexpected {val!r}", pos)
        return p

    def expr(self) -> Poly:
        kind, val, pos = self.peek()
        negate = False
        if kind == "op" and val in "+-":
            self.advance()
            negate = val == "-"
        p = self.term()
        if negate:
            p = -p
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val in "+-":
                self.advance()
                q = self.term()
                p = p - q if val == "-" else p + q
            else:
                return p

    def term(self) -> Poly:
        p = self.factor()
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val == "*":
                self.advance()
                p = p * self.factor()
            else:
                return p

    def factor(self) -> Poly:
        kind, val, pos = self.peek()
        if kind == "op" and val == "-":
            self.advance()
            return -self.factor()
        base = self.atom()
        kind, val, pos = self.peek()
        if kind == "op" and val == "^":
            self.advance()
            kind, val, pos = self.peek()
            if kind != "int":
                raise PolyParseError("exponent must be a nonnegative integer", pos)
            self.advance()
            return base ** int(val)
        return base

    def atom(self) -> Poly:
        kind, val, pos = self.advance()
        if kind == "int":
            num = int(val)
            kind2, val2, _ = self.peek()
            if kind2 == "op" and val2 == "/":
                self.advance()
                kind3, val3, pos3 = self.peek()
                if kind3 != "int":
                    raise PolyParseError("denominator must be an integer", pos3)
                self.advance()
                if int(val3) == 0:
                    raise PolyParseError("zero denominator", pos3)
                return self.ring.constant(Fraction(num, int(val3)))
            return self.ring.constant(num)
        if kind == "ident":
            if val not in self.ring.index:
                raise PolyParseError(f"unknown variable {val!r}", pos)
            return self.ring.variable(val)
        if kind == "op" and val == "(":
            p = self.expr()
            self.expect_op(")")
            return p
        if kind == "end":
            raise PolyParseError("unexpected end of input", pos)
        raise PolyParseError(f"unexpected {val!r}", pos)


def parse_poly(text: str, ring: WeightedRing) -> Poly:
    """Parse the grammar: identifiers, integer or n/d literals, + - *, unary -,
    ^ with nonnegative integer exponent, parentheses.  * is always explicit."""
    return _Parser(text, ring).parse()


def _format_coeff(c: Number) -> str:
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return str(c)


def format_poly(p: Poly) -> str:
    """Canonical text form; terms in descending monomial order, no whitespace."""
    if p.is_zero:
        return "0"
    parts = []
    for mono, c in p.sorted_terms():
        factors = []
        for name, e in zip(p.ring.names, mono):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        neg = c < 0
        mag = -c if neg else c
        if not factors:
            body = _format_coeff(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([_format_coeff(mag)] + factors)
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("-" if neg else "+") + body)
    return "".join(parts)
