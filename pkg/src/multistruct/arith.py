"""Exact rational arithmetic and sparse multivariate polynomials.

A polynomial is a dict mapping exponent tuples to nonzero Fraction
coefficients.  Every polynomial lives in one fixed variable universe so
exponent tuples always have the same length and align without bookkeeping:

  VARIABLES = (t, r, R, c1, c2, c3, h, s, u, a1, a2, a3, x, y)

The term order used for serialization is graded lexicographic: higher total
degree first, then lexicographic on the exponent tuple in the order above.
All values are immutable after construction and safe to share.

Text form (round-trips exactly through parse_poly/format_poly):

  poly     :=  ['-'] term (('+'|'-') term)*
  term     :=  factor ('*' factor)*
  factor   :=  rational | integer | variable ['^' integer]
  rational :=  '(' integer '/' integer ')'

e.g. ``(1/2)*t^2 + (3/2)*t + 1`` or ``2*r^2 - 3*s*u^4``.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Mapping, Tuple, Union

from . import _kernels

Rational = Fraction
Exponent = Tuple[int, ...]
Scalar = Union[int, Fraction]

VARIABLES = ("t", "r", "R", "c1", "c2", "c3", "h", "s", "u", "a1", "a2", "a3", "x", "y")
NVARS = len(VARIABLES)
_VAR_INDEX = {name: i for i, name in enumerate(VARIABLES)}
_ZERO_EXP = (0,) * NVARS


def _as_fraction(value: Scalar) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected an int or Fraction, got {type(value).__name__}")


class MultiPoly:
    """Sparse multivariate polynomial over the rationals.

    Construct via the factory functions ``const``, ``var``, ``parse_poly``
    or the classmethods below; arithmetic never mutates operands.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Exponent, Fraction] | None = None):
        clean: dict = {}
        if terms:
            for exp, coeff in terms.items():
                if len(exp) != NVARS:
                    raise ValueError(f"exponent tuple of length {len(exp)}, expected {NVARS}")
                c = _as_fraction(coeff)
                if c:
                    clean[tuple(exp)] = c
        self._terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "MultiPoly":
        return cls()

    @classmethod
    def const(cls, value: Scalar) -> "MultiPoly":
        c = _as_fraction(value)
        return cls({_ZERO_EXP: c}) if c else cls()

    @classmethod
    def var(cls, name: str) -> "MultiPoly":
        if name not in _VAR_INDEX:
            raise ValueError(f"unknown variable {name!r}; known: {', '.join(VARIABLES)}")
        exp = [0] * NVARS
        exp[_VAR_INDEX[name]] = 1
        return cls({tuple(exp): Fraction(1)})

    # -- inspection --------------------------------------------------------

    def items(self) -> Iterable[tuple[Exponent, Fraction]]:
        return self._terms.items()

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        """Terms in the canonical graded-lex order, highest first."""
        return sorted(self._terms.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and _ZERO_EXP in self._terms)

    def as_fraction(self) -> Fraction:
        """The value of a constant polynomial; error when non-constant."""
        if not self._terms:
            return Fraction(0)
        if not self.is_constant():
            raise ValueError(f"not a constant polynomial: {self}")
        return self._terms[_ZERO_EXP]

    def degree(self, name: str | None = None) -> int:
        """Total degree, or the degree in one variable; zero poly has -1."""
        if not self._terms:
            return -1
        if name is None:
            return max(sum(exp) for exp in self._terms)
        idx = _VAR_INDEX[name]
        return max(exp[idx] for exp in self._terms)

    def variables_used(self) -> tuple[str, ...]:
        used = [False] * NVARS
        for exp in self._terms:
            for i, e in enumerate(exp):
                if e:
                    used[i] = True
        return tuple(VARIABLES[i] for i in range(NVARS) if used[i])

    def coeff_of(self, name: str, power: int) -> "MultiPoly":
        """Coefficient of name**power, as a polynomial in the other variables."""
        idx = _VAR_INDEX[name]
        out = {}
        for exp, coeff in self._terms.items():
            if exp[idx] == power:
                reduced = list(exp)
                reduced[idx] = 0
                out[tuple(reduced)] = coeff
        return MultiPoly(out)

    # -- ring operations ---------------------------------------------------

    def __add__(self, other) -> "MultiPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for exp, coeff in other._terms.items():
            c = out.get(exp, Fraction(0)) + coeff
            if c:
                out[exp] = c
            else:
                out.pop(exp, None)
        res = MultiPoly.__new__(MultiPoly)
        res._terms = out
        return res

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        res = MultiPoly.__new__(MultiPoly)
        res._terms = {exp: -c for exp, c in self._terms.items()}
        return res

    def __sub__(self, other) -> "MultiPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "MultiPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "MultiPoly":
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            if not c:
                return MultiPoly()
            res = MultiPoly.__new__(MultiPoly)
            res._terms = {exp: coeff * c for exp, coeff in self._terms.items()}
            return res
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self._terms or not other._terms:
            return MultiPoly()
        da, la = self._cleared()
        db, lb = other._cleared()
        prod = _kernels.mul_int_dicts(da, db)
        denom = la * lb
        res = MultiPoly.__new__(MultiPoly)
        res._terms = {exp: Fraction(num, denom) for exp, num in prod.items()}
        return res

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MultiPoly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = MultiPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def scalar_div(self, value: Scalar) -> "MultiPoly":
        """Exact division by a nonzero scalar; never builds rational functions."""
        c = _as_fraction(value)
        if not c:
            raise ZeroDivisionError("scalar division by zero")
        return self * (Fraction(1) / c)

    def _cleared(self) -> tuple[dict, int]:
        """Denominator-cleared view: (int-coefficient dict, clearing factor)."""
        lcm = 1
        for coeff in self._terms.values():
            lcm = lcm * coeff.denominator // math.gcd(lcm, coeff.denominator)
        return {exp: int(c * lcm) for exp, c in self._terms.items()}, lcm

    # -- substitution ------------------------------------------------------

    def substitute(self, bindings: Mapping[str, "MultiPoly | Scalar"]) -> "MultiPoly":
        """Exact substitution of polynomials or scalars for variables."""
        binds: dict[int, MultiPoly] = {}
        for name, value in bindings.items():
            if name not in _VAR_INDEX:
                raise ValueError(f"unknown variable {name!r}")
            binds[_VAR_INDEX[name]] = value if isinstance(value, MultiPoly) else MultiPoly.const(value)
        if not binds:
            return self
        powers: dict[tuple[int, int], MultiPoly] = {}

        def power_of(idx: int, e: int) -> MultiPoly:
            key = (idx, e)
            if key not in powers:
                powers[key] = binds[idx] ** e
            return powers[key]

        total = MultiPoly()
        for exp, coeff in self._terms.items():
            piece = MultiPoly.const(coeff)
            residual = list(exp)
            for idx in binds:
                e = exp[idx]
                if e:
                    residual[idx] = 0
                    piece = piece * power_of(idx, e)
            if any(residual):
                piece = piece * MultiPoly({tuple(residual): Fraction(1)})
            total = total + piece
        return total

    # -- equality and display ---------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.as_fraction() == other
        if isinstance(other, MultiPoly):
            return self._terms == other._terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"MultiPoly({format_poly(self)})"


def _coerce(value) -> "MultiPoly":
    if isinstance(value, MultiPoly):
        return value
    if isinstance(value, (int, Fraction)):
        return MultiPoly.const(value)
    return NotImplemented


def const(value: Scalar) -> MultiPoly:
    return MultiPoly.const(value)


def var(name: str) -> MultiPoly:
    return MultiPoly.var(name)


# -- distinguished-variable view ------------------------------------------


class PolyT:
    """A MultiPoly viewed as a polynomial in t with parametric coefficients."""

    __slots__ = ("poly",)

    def __init__(self, poly: MultiPoly | Scalar):
        self.poly = poly if isinstance(poly, MultiPoly) else MultiPoly.const(poly)

    def coeff(self, power: int) -> MultiPoly:
        """Coefficient of t**power (a polynomial in the remaining variables)."""
        return self.poly.coeff_of("t", power)

    def degree_t(self) -> int:
        return self.poly.degree("t")

    def __add__(self, other) -> "PolyT":
        return PolyT(self.poly + _unwrap(other))

    __radd__ = __add__

    def __sub__(self, other) -> "PolyT":
        return PolyT(self.poly - _unwrap(other))

    def __rsub__(self, other) -> "PolyT":
        return PolyT(_unwrap(other) - self.poly)

    def __neg__(self) -> "PolyT":
        return PolyT(-self.poly)

    def __mul__(self, other) -> "PolyT":
        return PolyT(self.poly * _unwrap(other))

    __rmul__ = __mul__

    def scalar_div(self, value: Scalar) -> "PolyT":
        return PolyT(self.poly.scalar_div(value))

    def __eq__(self, other) -> bool:
        if isinstance(other, PolyT):
            return self.poly == other.poly
        return self.poly == other

    def __hash__(self) -> int:
        return hash(self.poly)

    def __str__(self) -> str:
        return format_poly(self.poly)

    def __repr__(self) -> str:
        return f"PolyT({format_poly(self.poly)})"


def _unwrap(value) -> MultiPoly:
    if isinstance(value, PolyT):
        return value.poly
    coerced = _coerce(value)
    if coerced is NotImplemented:
        raise TypeError(f"cannot combine PolyT with {type(value).__name__}")
    return coerced


def binomial_poly(n: int) -> PolyT:
    """The integer-valued basis polynomial C(t+n, n) = (t+n)...(t+1)/n!."""
    if not isinstance(n, int) or n < 0:
        raise ValueError("binomial_poly needs n >= 0")
    t = MultiPoly.var("t")
    prod = MultiPoly.const(1)
    for j in range(1, n + 1):
        prod = prod * (t + j)
    return PolyT(prod.scalar_div(math.factorial(n)))


def substitute_eval(
    p: MultiPoly | PolyT, bindings: Mapping[str, MultiPoly | Scalar]
) -> MultiPoly | Fraction:
    """Substitute into p; a fully evaluated result collapses to a Fraction."""
    poly = p.poly if isinstance(p, PolyT) else p
    result = poly.substitute(bindings)
    if result.is_constant():
        return result.as_fraction()
    return result


# -- serialization ----------------------------------------------------------


def _format_magnitude(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"({c.numerator}/{c.denominator})"


def _format_monomial(exp: Exponent) -> str:
    parts = []
    for i, e in enumerate(exp):
        if e == 1:
            parts.append(VARIABLES[i])
        elif e > 1:
            parts.append(f"{VARIABLES[i]}^{e}")
    return "*".join(parts)


def format_poly(p: MultiPoly | PolyT) -> str:
    """Canonical text form; graded-lex term order, highest terms first."""
    poly = p.poly if isinstance(p, PolyT) else p
    terms = poly.sorted_terms()
    if not terms:
        return "0"
    pieces = []
    for k, (exp, coeff) in enumerate(terms):
        mag = abs(coeff)
        mono = _format_monomial(exp)
        if not mono:
            body = _format_magnitude(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{_format_magnitude(mag)}*{mono}"
        if k == 0:
            pieces.append(body if coeff > 0 else f"-{body}")
        else:
            pieces.append(f" + {body}" if coeff > 0 else f" - {body}")
    return "".join(pieces)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9]*)|([()+\-*/^]))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"unexpected character at position {pos}: {text[pos]!r}")
        if m.group(1) is not None:
            tokens.append(("num", m.group(1)))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2)))
        else:
            tokens.append(("op", m.group(3)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens: list[tuple[str, str]]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> tuple[str, str] | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> tuple[str, str]:
        tok = self.peek()
        if tok is None:
            raise ValueError("unexpected end of input")
        self.pos += 1
        return tok

    def expect_op(self, op: str) -> None:
        tok = self.take()
        if tok != ("op", op):
            raise ValueError(f"expected {op!r}, got {tok[1]!r}")

    def parse(self) -> MultiPoly:
        poly = self.parse_term(self.parse_sign())
        while True:
            tok = self.peek()
            if tok is None:
                return poly
            if tok == ("op", "+"):
                self.take()
                poly = poly + self.parse_term(1)
            elif tok == ("op", "-"):
                self.take()
                poly = poly + self.parse_term(-1)
            else:
                raise ValueError(f"expected '+' or '-', got {tok[1]!r}")

    def parse_sign(self) -> int:
        sign = 1
        while self.peek() in (("op", "+"), ("op", "-")):
            if self.take() == ("op", "-"):
                sign = -sign
        return sign

    def parse_term(self, sign: int) -> MultiPoly:
        poly = MultiPoly.const(sign) * self.parse_factor()
        while self.peek() == ("op", "*"):
            self.take()
            poly = poly * self.parse_factor()
        return poly

    def parse_factor(self) -> MultiPoly:
        tok = self.take()
        if tok[0] == "num":
            return MultiPoly.const(int(tok[1]))
        if tok == ("op", "("):
            num = self.take()
            if num[0] != "num":
                raise ValueError("expected an integer inside a rational literal")
            self.expect_op("/")
            den = self.take()
            if den[0] != "num":
                raise ValueError("expected an integer denominator")
            self.expect_op(")")
            if int(den[1]) == 0:
                raise ValueError("zero denominator in rational literal")
            return MultiPoly.const(Fraction(int(num[1]), int(den[1])))
        if tok[0] == "name":
            base = MultiPoly.var(tok[1])
            if self.peek() == ("op", "^"):
                self.take()
                power = self.take()
                if power[0] != "num":
                    raise ValueError("expected an integer exponent after '^'")
                return base ** int(power[1])
            return base
        raise ValueError(f"unexpected token {tok[1]!r}")


def parse_poly(text: str) -> MultiPoly:
    """Parse the canonical text form back into a MultiPoly."""
    tokens = _tokenize(text)
    if not tokens:
        raise ValueError("empty polynomial text")
    parser = _Parser(tokens)
    poly = parser.parse()
    if parser.peek() is not None:
        raise ValueError("trailing input after polynomial")
    return poly


# -- resultants -------------------------------------------------------------


def _dense_univariate(p: MultiPoly) -> tuple[str | None, list[Fraction]]:
    """Coefficients of a univariate polynomial, ascending; (None, [c]) if constant."""
    used = p.variables_used()
    if len(used) > 1:
        raise ValueError(f"polynomial is not univariate: uses {used}")
    if not used:
        return None, [p.as_fraction()]
    name = used[0]
    deg = p.degree(name)
    coeffs = [Fraction(0)] * (deg + 1)
    idx = _VAR_INDEX[name]
    for exp, coeff in p.items():
        coeffs[exp[idx]] = coeff
    return name, coeffs


def univariate_resultant(f: MultiPoly, g: MultiPoly) -> Fraction:
    """Resultant of two univariate polynomials via the Sylvester determinant.

    Nonzero exactly when f and g share no root over the algebraic closure.
    """
    if f.is_zero() and g.is_zero():
        raise ValueError("resultant of two zero polynomials is undefined")
    if f.is_zero() or g.is_zero():
        return Fraction(0)
    name_f, cf = _dense_univariate(f)
    name_g, cg = _dense_univariate(g)
    if name_f is not None and name_g is not None and name_f != name_g:
        raise ValueError(f"mixed variables {name_f!r} and {name_g!r}")
    m = len(cf) - 1
    n = len(cg) - 1
    if m == 0 and n == 0:
        return Fraction(1)
    if m == 0:
        return cf[0] ** n
    if n == 0:
        return cg[0] ** m
    lf = math.lcm(*(c.denominator for c in cf))
    lg = math.lcm(*(c.denominator for c in cg))
    fi = [int(c * lf) for c in cf]
    gi = [int(c * lg) for c in cg]
    size = m + n
    rows = []
    for shift in range(m):
        row = [0] * size
        for k, c in enumerate(reversed(gi)):
            row[shift + k] = c
        rows.append(row)
    for shift in range(n):
        row = [0] * size
        for k, c in enumerate(reversed(fi)):
            row[shift + k] = c
        rows.append(row)
    det = _kernels.bareiss_det(rows)
    return Fraction(det, lf**n * lg**m)
