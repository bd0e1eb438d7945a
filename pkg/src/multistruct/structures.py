"""Hilbert polynomials of layered structures and Chern-class solving.

A multiple structure on a smooth carrier is described by the graded layers
of its structure-sheaf filtration; each layer is a line bundle on the
carrier, so the Hilbert polynomial is the sum of layer Euler
characteristics.  Two carriers appear:

  conic   a smooth conic with P^1 normalization; O_C(l) pulls back to
          O_P1(2l), so a layer tagged (k, m) contributes chi(O_P1(2t + kr + 2m))
  plane   P^2 linearly embedded; a layer of twist d contributes C(t+d+2, 2)

Chern classes are solved by matching a quadratic Hilbert polynomial against
a chi_Y template.  Both templates are first-class: `paper` is the published
formula kept verbatim as a comparison target, `derived` is recomputed from
the Koszul alternating sum (chow.koszul_euler) with symbolic Chern classes.
The two differ in the constant term (denominator 2 versus 12); every
downstream value is computed under both and reported side by side.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Sequence

from . import chow
from .arith import MultiPoly, PolyT, Scalar, var

Template = Literal["paper", "derived"]


@dataclass(frozen=True)
class FiltrationLayer:
    """One graded layer: a line bundle on the carrier.

    For carrier "conic": the pullback degree to P^1 is k*r + 2m (a twist by
    O_C(1) doubles).  For carrier "plane": twist is a polynomial in r (the
    k, m fields are unused).
    """

    carrier: Literal["conic", "plane"]
    k: int = 0
    m: int = 0
    twist: MultiPoly | None = None

    def __post_init__(self):
        if self.carrier == "conic":
            if self.twist is not None:
                raise ValueError("conic layers are given by (k, m), not a twist")
        elif self.carrier == "plane":
            if self.twist is None:
                raise ValueError("plane layers need a twist")
        else:
            raise ValueError(f"unknown carrier {self.carrier!r}")

    def chi(self) -> PolyT:
        """Euler characteristic of the twisted layer, chi(layer(t))."""
        t = var("t")
        r = var("r")
        if self.carrier == "conic":
            degree = self.k * r + MultiPoly.const(2 * self.m)
            return PolyT(2 * t + degree + 1)
        shifted = t + self.twist
        return PolyT((shifted + 2) * (shifted + 1)).scalar_div(2)


def conic_layer(k: int, m: int) -> FiltrationLayer:
    return FiltrationLayer("conic", k=k, m=m)


def plane_layer(twist: MultiPoly | Scalar) -> FiltrationLayer:
    tw = twist if isinstance(twist, MultiPoly) else MultiPoly.const(twist)
    return FiltrationLayer("plane", twist=tw)


@dataclass(frozen=True)
class StructureSpec:
    """An ordered list of filtration layers plus a label."""

    name: str
    layers: tuple[FiltrationLayer, ...]

    def __post_init__(self):
        if not self.layers:
            raise ValueError("a structure needs at least one layer")


def hilbert_of_layers(s: StructureSpec) -> PolyT:
    """Hilbert polynomial: the sum of the layer Euler characteristics."""
    total = PolyT(MultiPoly.zero())
    for layer in s.layers:
        total = total + layer.chi()
    return total


def double_conic_structure() -> StructureSpec:
    """Doubling of a conic with a line bundle pulling back to O_P1(r)."""
    return StructureSpec("double-conic", (conic_layer(0, 0), conic_layer(1, 0)))


def double_plane_structure() -> StructureSpec:
    return StructureSpec("double-plane", (plane_layer(0), plane_layer(var("r"))))


def triple_plane_structure() -> StructureSpec:
    r = var("r")
    return StructureSpec("triple-plane", (plane_layer(0), plane_layer(r), plane_layer(2 * r)))


def hilbert_double_plane() -> PolyT:
    """C(t+2,2) + C(t+r+2,2), expanded symbolically in r."""
    return hilbert_of_layers(double_plane_structure())


def hilbert_triple_plane() -> PolyT:
    return hilbert_of_layers(triple_plane_structure())


# -- chi_Y templates ---------------------------------------------------------


def paper_chi_formula(
    c1: MultiPoly | Scalar, c2: MultiPoly | Scalar, c3: MultiPoly | Scalar
) -> PolyT:
    """The published chi_Y template, verbatim, as a comparison target:

      chi_Y(t) = -(c3/2) t^2 - ((c1+6) c3 / 2) t + (c2 - 2 c1^2 - 18 c1 - 51) c3 / 2

    Its constant term fails the complete-intersection sanity check (see
    derived_chi_formula); it is kept exactly as printed so the discrepancy
    can be reported rather than silently reconciled.
    """
    t = var("t")
    c1p, c2p, c3p = (_mp(c1), _mp(c2), _mp(c3))
    quad = -(c3p * t * t).scalar_div(2)
    lin = -((c1p + 6) * c3p * t).scalar_div(2)
    constant = ((c2p - 2 * c1p * c1p - 18 * c1p - 51) * c3p).scalar_div(2)
    return PolyT(quad + lin + constant)


_DERIVED_CACHE: dict[None, PolyT] = {}


def derived_chi_formula(
    c1: MultiPoly | Scalar, c2: MultiPoly | Scalar, c3: MultiPoly | Scalar
) -> PolyT:
    """chi_Y recomputed from the Koszul alternating sum with symbolic classes.

    Agrees with the published template in the t^2 and t coefficients; the
    constant term carries denominator 12 instead of the published 2.
    """
    if None not in _DERIVED_CACHE:
        symbolic = chow.BundleClass(3, [var("c1"), var("c2"), var("c3")], 5)
        _DERIVED_CACHE[None] = chow.koszul_euler(symbolic, 5)
    template = _DERIVED_CACHE[None].poly
    return PolyT(template.substitute({"c1": _mp(c1), "c2": _mp(c2), "c3": _mp(c3)}))


def _mp(value: MultiPoly | Scalar) -> MultiPoly:
    return value if isinstance(value, MultiPoly) else MultiPoly.const(value)


def chi_template(template: Template, c1, c2, c3) -> PolyT:
    if template == "paper":
        return paper_chi_formula(c1, c2, c3)
    if template == "derived":
        return derived_chi_formula(c1, c2, c3)
    raise ValueError(f"unknown template {template!r}")


def solve_chern_from_hilbert(
    target: PolyT, template: Template
) -> tuple[MultiPoly, MultiPoly, MultiPoly]:
    """Solve the chosen chi_Y template against a quadratic Hilbert polynomial.

    The system is triangular: the t^2 coefficient -c3/2 pins c3, the t
    coefficient then pins c1, the constant term pins c2.  c3 must come out
    a nonzero rational constant for the division steps to stay polynomial.
    """
    if target.degree_t() > 2:
        raise ValueError("target must have degree <= 2 in t")
    lead = target.coeff(2)
    if not lead.is_constant():
        raise ValueError("t^2 coefficient must be constant to pin c3")
    c3 = -2 * lead.as_fraction()
    if c3 == 0:
        if target.coeff(1).is_zero() and target.coeff(0).is_zero():
            raise ValueError("degenerate zero target")
        raise ValueError("inconsistent system: zero t^2 coefficient with lower terms")
    # t coefficient: -(c1 + 6) c3 / 2
    c1 = target.coeff(1) * (Fraction(-2) / c3) - 6
    # constant: (c2 - 2 c1^2 - 18 c1 - 51) c3 / den with den = 2 (paper) or 12 (derived)
    den = 2 if template == "paper" else 12
    c2 = target.coeff(0) * (Fraction(den) / c3) + 2 * c1 * c1 + 18 * c1 + 51
    c3_poly = MultiPoly.const(c3)
    check = chi_template(template, c1, c2, c3_poly)
    if check != target:
        raise ValueError("internal inconsistency: solved classes do not reproduce the target")
    return c1, c2, c3_poly


# -- declarative layer format ------------------------------------------------


def parse_linear_form(text: str) -> MultiPoly:
    """Parse a linear form in r such as '2r+1', 'r', '-r-2', or '0'."""
    cleaned = text.strip().replace(" ", "")
    if not cleaned:
        raise ValueError("empty linear form")
    normalized = cleaned.replace("*", "")
    a = 0
    b = 0
    pos = 0
    sign = 1
    while pos < len(normalized):
        ch = normalized[pos]
        if ch == "+":
            sign = 1
            pos += 1
            continue
        if ch == "-":
            sign = -1
            pos += 1
            continue
        start = pos
        while pos < len(normalized) and normalized[pos].isdigit():
            pos += 1
        digits = normalized[start:pos]
        if pos < len(normalized) and normalized[pos] == "r":
            a += sign * (int(digits) if digits else 1)
            pos += 1
        elif digits:
            b += sign * int(digits)
        else:
            raise ValueError(f"cannot parse linear form {text!r}")
        sign = 1
    return a * var("r") + MultiPoly.const(b)


def parse_structure(text: str, name: str = "structure") -> StructureSpec:
    """Parse the one-layer-per-line format: 'conic k m' or 'plane <form>'."""
    layers: list[FiltrationLayer] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if fields[0] == "conic":
            if len(fields) != 3:
                raise ValueError(f"line {lineno}: expected 'conic k m'")
            layers.append(conic_layer(int(fields[1]), int(fields[2])))
        elif fields[0] == "plane":
            if len(fields) != 2:
                raise ValueError(f"line {lineno}: expected 'plane <linear form in r>'")
            layers.append(plane_layer(parse_linear_form(fields[1])))
        else:
            raise ValueError(f"line {lineno}: unknown carrier {fields[0]!r}")
    return StructureSpec(name, tuple(layers))
