"""Parametric line-bundle cohomology and exact-sequence dimension solving.

Dimensions on P^1 are integer linear forms a*r + b, valid only under an
explicit Assumption (r >= r_min, or r fixed); any sign query the assumption
cannot settle raises UndecidableSignError rather than branching silently.
On P^2 the dimensions are quadratic, so those come back as exact MultiPoly
values instead of linear forms.

Line bundles on the conic C are tagged by a pair (k, m) standing for
L^k (m), i.e. the k-th power of the doubling bundle twisted by O_C(m);
the normalization P^1 -> C doubles O_C twists, so the pullback degree is
k*r + 2m.

The long-exact-sequence solver does pure rank bookkeeping: for an exact
chain 0 -> V_0 -> ... -> V_(L-1) -> 0 with arrow ranks rho_i it propagates
  dim V_i = rho_(i-1) + rho_i
together with declared arrow facts (injective / surjective / zero) until
the single unknown term is pinned down.  Facts are always explicit inputs;
injectivity of a connecting map is never inferred here, it must arrive as
a certificate (the graded module produces it).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Sequence

from .arith import MultiPoly, var


class UndecidableSignError(Exception):
    """The assumption is too weak to decide a sign query."""


class InconsistentSequenceError(Exception):
    """Rank bookkeeping produced a negative or contradictory dimension."""


class UnderdeterminedError(Exception):
    """The declared facts do not pin down the unknown term."""


# -- linear forms and assumptions -------------------------------------------


@dataclass(frozen=True)
class LinForm:
    """The integer linear form a*r + b."""

    a: int
    b: int

    @classmethod
    def const(cls, value: int) -> "LinForm":
        return cls(0, value)

    @classmethod
    def from_poly(cls, p: MultiPoly) -> "LinForm":
        used = p.variables_used()
        if any(name != "r" for name in used):
            raise ValueError(f"not a linear form in r: {p}")
        if p.degree("r") > 1:
            raise ValueError(f"degree in r exceeds 1: {p}")
        a = p.coeff_of("r", 1).as_fraction() if p.degree("r") == 1 else Fraction(0)
        b = p.coeff_of("r", 0).as_fraction()
        if a.denominator != 1 or b.denominator != 1:
            raise ValueError(f"non-integer linear form: {p}")
        return cls(int(a), int(b))

    def to_poly(self) -> MultiPoly:
        return self.a * var("r") + MultiPoly.const(self.b)

    def __add__(self, other: "LinForm | int") -> "LinForm":
        if isinstance(other, int):
            return LinForm(self.a, self.b + other)
        return LinForm(self.a + other.a, self.b + other.b)

    def __sub__(self, other: "LinForm | int") -> "LinForm":
        if isinstance(other, int):
            return LinForm(self.a, self.b - other)
        return LinForm(self.a - other.a, self.b - other.b)

    def __neg__(self) -> "LinForm":
        return LinForm(-self.a, -self.b)

    def __mul__(self, scalar: int) -> "LinForm":
        return LinForm(self.a * scalar, self.b * scalar)

    __rmul__ = __mul__

    def at(self, r_value: int) -> int:
        return self.a * r_value + self.b

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __str__(self) -> str:
        if self.a == 0:
            return str(self.b)
        r_part = "r" if self.a == 1 else ("-r" if self.a == -1 else f"{self.a}r")
        if self.b == 0:
            return r_part
        return f"{r_part}{self.b:+d}"


ZERO_FORM = LinForm(0, 0)


@dataclass(frozen=True)
class Assumption:
    """Validity domain for parametric dimensions: r >= r_min, or r fixed."""

    r_min: int | None = None
    fixed: int | None = None

    def __post_init__(self):
        if (self.r_min is None) == (self.fixed is None):
            raise ValueError("give exactly one of r_min or fixed")

    def describe(self) -> str:
        return f"r = {self.fixed}" if self.fixed is not None else f"r >= {self.r_min}"

    def always_ge(self, form: LinForm, bound: int) -> bool:
        """True when a*r + b >= bound for every admissible r (provably)."""
        if self.fixed is not None:
            return form.at(self.fixed) >= bound
        if form.a >= 0:
            return form.at(self.r_min) >= bound
        return False

    def always_le(self, form: LinForm, bound: int) -> bool:
        if self.fixed is not None:
            return form.at(self.fixed) <= bound
        if form.a <= 0:
            return form.at(self.r_min) <= bound
        return False

    def always_eq(self, form: LinForm, value: int) -> bool:
        if self.fixed is not None:
            return form.at(self.fixed) == value
        return form.a == 0 and form.b == value

    def check_nonneg(self, p: MultiPoly, context: str) -> None:
        """Certify p >= 0 on the admissible range or raise.

        A provable violation raises InconsistentSequenceError; inability to
        certify raises UndecidableSignError.  The certificate substitutes
        r = r_min + x and demands nonnegative coefficients, which is sound
        (and complete for linear forms, the common case here).
        """
        if self.fixed is not None:
            value = p.substitute({"r": self.fixed})
            if value.as_fraction() < 0:
                raise InconsistentSequenceError(f"negative dimension in {context}: {value}")
            return
        shifted = p.substitute({"r": var("x") + self.r_min})
        if all(c >= 0 for _, c in shifted.items()):
            return
        at_min = p.substitute({"r": self.r_min}).as_fraction()
        if at_min < 0:
            raise InconsistentSequenceError(
                f"negative dimension in {context} at r = {self.r_min}: {at_min}"
            )
        raise UndecidableSignError(
            f"cannot certify nonnegativity of {p} under {self.describe()} in {context}"
        )


# -- conic line bundles ------------------------------------------------------


@dataclass(frozen=True)
class ConicBundle:
    """L^k (m) on the conic; pullback degree to P^1 is k*r + 2m."""

    k: int
    m: int

    def tensor(self, other: "ConicBundle") -> "ConicBundle":
        return ConicBundle(self.k + other.k, self.m + other.m)

    def __str__(self) -> str:
        return f"L^{self.k}({self.m})"


L_BUNDLE = ConicBundle(1, 0)
OMEGA_Y_ON_C = ConicBundle(-1, -1)  # omega_Y restricted to C: omega_C tensor L^(-1)


def pullback_degree(c: ConicBundle) -> LinForm:
    """Degree on P^1 of the pullback; O_C(1) pulls back to degree 2."""
    return LinForm(c.k, 2 * c.m)


@dataclass(frozen=True)
class CohomPair:
    """(h^0, h^1) of a line bundle on P^1, as linear forms in r."""

    h0: LinForm
    h1: LinForm

    def alternating(self) -> LinForm:
        return self.h0 - self.h1


def h_p1(d: LinForm, assumption: Assumption) -> CohomPair:
    """Cohomology of O_P1(d): h^0 = max(d+1, 0), h^1 = max(-d-1, 0).

    The linear forms d+1 and -d-1 both vanish at d = -1, so each is exact
    on a closed half-line: (d+1, 0) whenever d >= -1 throughout the
    admissible range, (0, -d-1) whenever d <= -1 throughout.  Degrees whose
    position relative to -1 is undecidable under the assumption raise
    UndecidableSignError.  Under a fixed assumption the result is a pair of
    constants: a symbolic form produced by a case split at one value of r
    would not be valid elsewhere.
    """
    if assumption.fixed is not None:
        value = d.at(assumption.fixed)
        if value >= -1:
            return CohomPair(LinForm.const(value + 1), ZERO_FORM)
        return CohomPair(ZERO_FORM, LinForm.const(-value - 1))
    if assumption.always_ge(d, -1):
        return CohomPair(d + 1, ZERO_FORM)
    if assumption.always_le(d, -1):
        return CohomPair(ZERO_FORM, -d - 1)
    raise UndecidableSignError(f"sign of degree {d} undecidable under {assumption.describe()}")


def h_p2(d: LinForm, assumption: Assumption) -> tuple[MultiPoly, MultiPoly, MultiPoly]:
    """Cohomology of O_P2(d): h^0 = C(d+2,2), h^1 = 0 always, h^2 = C(-d-1,2).

    Both counts equal the same quadratic (d+2)(d+1)/2, which vanishes at
    d = -1 and d = -2; so it is the exact h^0 whenever d >= -2 throughout
    the admissible range and the exact h^2 whenever d <= -1 throughout.
    """
    zero = MultiPoly.zero()
    if assumption.fixed is not None:
        value = d.at(assumption.fixed)
        count = MultiPoly.const(Fraction((value + 2) * (value + 1), 2))
        if value >= -2:
            return count, zero, zero
        return zero, zero, count
    quad = (d.to_poly() + 2) * (d.to_poly() + 1)
    if assumption.always_ge(d, -2):
        return quad.scalar_div(2), zero, zero
    if assumption.always_le(d, -1):
        return zero, zero, quad.scalar_div(2)
    raise UndecidableSignError(f"sign of degree {d} undecidable under {assumption.describe()}")


def det_degree_solve(
    middle: LinForm, known: LinForm, expected: LinForm | None = None
) -> LinForm:
    """Unknown determinant degree in a short exact sequence of bundles.

    Determinants are additive: middle = unknown + known, all as pullback
    degrees on P^1.  An `expected` value turns the call into a checked
    deduction (InconsistentSequenceError on mismatch).
    """
    unknown = middle - known
    if expected is not None and unknown != expected:
        raise InconsistentSequenceError(
            f"determinant degree {unknown} does not match expected {expected}"
        )
    return unknown


# -- exact-sequence solving --------------------------------------------------

FactKind = Literal["injective", "surjective", "zero"]


@dataclass(frozen=True)
class ExactSeqSpec:
    """A short exact sequence of sheaves on the conic, for the LES solver.

    terms: exactly three entries, each a ConicBundle (cohomology computed
    via h_p1 of the pullback degree), an explicit CohomPair, or None for
    the single unknown.  map_facts: declared facts about arrows of the
    induced six-term cohomology sequence, indexed 0..4 in order
    H0A->H0B, H0B->H0C, H0C->H1A (connecting), H1A->H1B, H1B->H1C.
    """

    terms: tuple
    map_facts: tuple[tuple[FactKind, int], ...] = ()

    def __post_init__(self):
        if len(self.terms) < 3:
            raise ValueError("an exact sequence needs at least three terms")
        unknowns = sum(1 for term in self.terms if term is None)
        if unknowns != 1:
            raise ValueError(f"exactly one unknown term required, got {unknowns}")


def _solve_chain(
    dims: list[MultiPoly | None],
    facts: Sequence[tuple[FactKind, int]],
    assumption: Assumption,
) -> list[MultiPoly]:
    """Fill in the unknown entries of an exact chain 0 -> V_0 -> ... -> 0.

    dims holds exact dimensions (MultiPoly) or None; arrow i joins V_i to
    V_(i+1).  Returns the completed dimension list.
    """
    L = len(dims)
    ranks: list[MultiPoly | None] = [None] * (L + 1)  # rank of arrow into V_i is ranks[i]
    ranks[0] = MultiPoly.zero()
    ranks[L] = MultiPoly.zero()

    def set_rank(i: int, value: MultiPoly, context: str) -> None:
        assumption.check_nonneg(value, context)
        if ranks[i] is None:
            ranks[i] = value
        elif ranks[i] != value:
            raise InconsistentSequenceError(
                f"conflicting ranks at arrow {i - 1}: {ranks[i]} vs {value}"
            )

    for kind, arrow in facts:
        if not 0 <= arrow <= L - 2:
            raise ValueError(f"arrow index {arrow} out of range")
        if kind == "zero":
            set_rank(arrow + 1, MultiPoly.zero(), f"fact zero@{arrow}")
        elif kind == "injective":
            if dims[arrow] is None:
                raise UnderdeterminedError("injectivity fact on an unknown source term")
            set_rank(arrow + 1, dims[arrow], f"fact injective@{arrow}")
        elif kind == "surjective":
            if dims[arrow + 1] is None:
                raise UnderdeterminedError("surjectivity fact on an unknown target term")
            set_rank(arrow + 1, dims[arrow + 1], f"fact surjective@{arrow}")
        else:
            raise ValueError(f"unknown fact kind {kind!r}")

    changed = True
    while changed:
        changed = False
        for i in range(L):
            d = dims[i]
            if d is None:
                continue
            left, right = ranks[i], ranks[i + 1]
            if d.is_zero() and (left is None or right is None):
                set_rank(i, MultiPoly.zero(), f"zero term {i}")
                set_rank(i + 1, MultiPoly.zero(), f"zero term {i}")
                changed = True
            elif left is not None and right is None:
                set_rank(i + 1, d - left, f"term {i}")
                changed = True
            elif right is not None and left is None:
                set_rank(i, d - right, f"term {i}")
                changed = True

    out: list[MultiPoly] = []
    for i in range(L):
        left, right = ranks[i], ranks[i + 1]
        if dims[i] is not None:
            if left is not None and right is not None and dims[i] != left + right:
                raise InconsistentSequenceError(
                    f"exactness fails at position {i}: {dims[i]} != {left} + {right}"
                )
            out.append(dims[i])
        else:
            if left is None or right is None:
                raise UnderdeterminedError(
                    f"facts insufficient to determine the term at position {i}"
                )
            value = left + right
            assumption.check_nonneg(value, f"solved term {i}")
            out.append(value)
    return out


def _term_pair(term, assumption: Assumption) -> CohomPair | None:
    if term is None:
        return None
    if isinstance(term, CohomPair):
        return term
    if isinstance(term, ConicBundle):
        return h_p1(pullback_degree(term), assumption)
    raise TypeError(f"bad sequence term {term!r}")


def solve_exact_sequence(spec: ExactSeqSpec, assumption: Assumption) -> CohomPair:
    """Solve the six-term cohomology sequence of a short exact sequence.

    Returns the (h^0, h^1) pair of the unique unknown term.
    """
    pairs = [_term_pair(term, assumption) for term in spec.terms]
    unknown_index = next(i for i, p in enumerate(pairs) if p is None)
    width = len(pairs)
    dims: list[MultiPoly | None] = []
    for level in range(2):
        for p in pairs:
            if p is None:
                dims.append(None)
            else:
                dims.append((p.h0 if level == 0 else p.h1).to_poly())
    solved = _solve_chain(dims, spec.map_facts, assumption)
    h0 = LinForm.from_poly(solved[unknown_index])
    h1 = LinForm.from_poly(solved[unknown_index + width])
    return CohomPair(h0, h1)


# -- declarative text format -------------------------------------------------


def parse_exact_sequence(text: str) -> ExactSeqSpec:
    """Parse the block format: one term per line, plus fact lines.

      conic <k> <m>        term: the bundle L^k(m) on the conic
      pair <h0> <h1>       term: explicit linear-form dimensions
      unknown              term: the single unknown
      fact: <kind> <arrow> declared arrow fact (injective/surjective/zero)
    """
    terms: list = []
    facts: list[tuple[FactKind, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("fact:"):
            fields = line[len("fact:") :].split()
            if len(fields) != 2 or fields[0] not in ("injective", "surjective", "zero"):
                raise ValueError(f"line {lineno}: bad fact {line!r}")
            facts.append((fields[0], int(fields[1])))
            continue
        fields = line.split()
        if fields[0] == "conic" and len(fields) == 3:
            terms.append(ConicBundle(int(fields[1]), int(fields[2])))
        elif fields[0] == "pair" and len(fields) == 3:
            terms.append(CohomPair(_parse_linform(fields[1]), _parse_linform(fields[2])))
        elif fields[0] == "unknown" and len(fields) == 1:
            terms.append(None)
        else:
            raise ValueError(f"line {lineno}: cannot parse term {line!r}")
    return ExactSeqSpec(tuple(terms), tuple(facts))


def _parse_linform(text: str) -> LinForm:
    from .structures import parse_linear_form

    return LinForm.from_poly(parse_linear_form(text))


# -- the composite double-conic computation ----------------------------------


def normal_sheaf_sequences() -> dict[str, object]:
    """The fixed sheaf identifications feeding the tangent-space computation.

    Carried out once with checked determinant deductions:
      conormal quotient:  I_Y/I_C^2 = L^(-1)(-3)   (from det O_C(-1)+O_C(-2))
      det of I_C I_Y/I_C^3 = L^(-2)(-9)            (from det O_C(-2)+O_C(-3)+O_C(-4))
      middle quotient:    O_C(-3)
    """
    conormal_det = LinForm(0, -6)  # pullback degree of det(O_C(-1) + O_C(-2))
    iy_ic2 = det_degree_solve(conormal_det, pullback_degree(L_BUNDLE))
    expected_iy = ConicBundle(-1, -3)
    if iy_ic2 != pullback_degree(expected_iy):
        raise InconsistentSequenceError("conormal determinant deduction failed")
    cubic_det = LinForm(0, -18)  # pullback degree of det(O_C(-2) + O_C(-3) + O_C(-4))
    det_icy = det_degree_solve(cubic_det, pullback_degree(ConicBundle(2, 0)))
    expected_det = ConicBundle(-2, -9)
    if det_icy != pullback_degree(expected_det):
        raise InconsistentSequenceError("cubic determinant deduction failed")
    sub_piece = ConicBundle(-2, -6)  # (I_Y/I_C^2) squared
    quotient_m = det_icy - pullback_degree(sub_piece)
    if quotient_m != LinForm(0, -6):
        raise InconsistentSequenceError("middle quotient deduction failed")
    quotient = ConicBundle(0, -3)
    return {
        "iy_ic2": expected_iy,
        "det_icy": expected_det,
        "quotient": quotient,
    }


def double_conic_side_terms() -> dict[str, ConicBundle]:
    """The four side terms of the two auxiliary sequences, tensored by omega."""
    pieces = normal_sheaf_sequences()
    return {
        # sequence (first auxiliary): L^2 tensor omega and I_Y/I_C^2 tensor omega
        "aux1_left": ConicBundle(2, 0).tensor(OMEGA_Y_ON_C),
        "aux1_right": pieces["iy_ic2"].tensor(OMEGA_Y_ON_C),
        # sequence (second auxiliary): L^3 tensor omega and O_C(-3) tensor omega
        "aux2_left": ConicBundle(3, 0).tensor(OMEGA_Y_ON_C),
        "aux2_right": pieces["quotient"].tensor(OMEGA_Y_ON_C),
    }


def tangent_dimension_double_conic(
    assumption: Assumption, injectivity_certificate: bool
) -> LinForm:
    """h^0 of the normal sheaf of a double conic, via three chained sequences.

    Requires the connecting-map injectivity certificate produced by the
    graded module; without it the middle sequence is underdetermined.
    """
    if not injectivity_certificate:
        raise ValueError("missing injectivity certificate; cannot solve the middle sequence")
    sides = double_conic_side_terms()
    aux1 = solve_exact_sequence(
        ExactSeqSpec((sides["aux1_left"], None, sides["aux1_right"])), assumption
    )
    aux2 = solve_exact_sequence(
        ExactSeqSpec((sides["aux2_left"], None, sides["aux2_right"])), assumption
    )
    main = solve_exact_sequence(
        ExactSeqSpec((aux2, None, aux1), (("injective", 2),)), assumption
    )
    return main.h1


def family_dimension(assumption: Assumption) -> LinForm:
    """Dimension of the family of double conics: 8 for the conic plus the
    section pair (a, b) modulo scale."""
    h_a = h_p1(LinForm(1, 2), assumption).h0  # sections of O(r+2)
    h_b = h_p1(LinForm(1, 4), assumption).h0  # sections of O(r+4)
    return h_a + h_b + 7  # 8 + (h_a + h_b - 1)


def ext_vanishing_claim(r_value: int | None = None) -> bool:
    """H^1 of the twisted dual kernel bundle on P^2 vanishes.

    From 0 -> G -> 3 O(-1) -> O(r) -> 0, dualizing and twisting by 2r gives
    0 -> O(r) -> 3 O(2r+1) -> G^dual(2r) -> 0; the nine-term cohomology
    chain then forces h^1(G^dual(2r)) = 0.  Symbolic for r >= 0 when no
    fixed value is given.
    """
    assumption = Assumption(fixed=r_value) if r_value is not None else Assumption(r_min=0)
    a_dims = h_p2(LinForm(1, 0), assumption)
    b_raw = h_p2(LinForm(2, 1), assumption)
    b_dims = tuple(3 * d for d in b_raw)
    dims: list[MultiPoly | None] = [
        a_dims[0], b_dims[0], None,
        a_dims[1], b_dims[1], None,
        a_dims[2], b_dims[2], None,
    ]
    solved = _solve_chain(dims, (), assumption)
    return solved[5].is_zero()
