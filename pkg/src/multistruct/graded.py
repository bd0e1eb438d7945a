"""Exact linear algebra on degree slices of graded free modules over k[s,u].

S(a) denotes the rank-one graded free module with twist a, so its degree-d
slice is the space of homogeneous polynomials of degree d + a, of dimension
max(d + a + 1, 0).  A GradedMatrix maps a direct sum of such modules to
another; entry (i, j) multiplies source component j into target component i
and must be homogeneous of degree target_twist_i - source_twist_j (the sign
convention used throughout this module) or zero.

The central object is the Koszul-style complex built from a section pair
(a, b) of degrees r+2 and r+4 with no common zero:

    0 -> S(-2r-12) --alpha--> S(-8)+S(-6)+S(-4) --beta--> S(r-4)+S(r-2) -> 0

with alpha = (a^2, 2ab, b^2)^T and beta = [[2b, -a, 0], [0, -b, 2a]].
Exactness is certified three independent ways: the symbolic identities
(beta.alpha = 0 and the 2x2 minors of beta are -2b^2, 4ab, -2a^2, so a
common-zero-free pair makes alpha fiberwise injective and beta fiberwise
surjective), degree-slice rank bookkeeping over a window past the
regularity bound, and fiberwise evaluation at sample points as a fast
screen.  The certified cokernel splitting twisted by -r-2 has no global
sections, which is the injectivity certificate the cohomology module
consumes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from ._kernels import bareiss_rank
from .arith import MultiPoly, format_poly, parse_poly, var
from .cohomology import Assumption, LinForm, h_p1

DEFAULT_POINTS: tuple[tuple[Fraction, Fraction], ...] = (
    (Fraction(1), Fraction(0)),
    (Fraction(0), Fraction(1)),
    (Fraction(1), Fraction(1)),
    (Fraction(1), Fraction(-1)),
    (Fraction(2), Fraction(3)),
)


class GradedCertificateError(Exception):
    """A certification step failed; no certificate is produced."""


# -- graded free modules and matrices ----------------------------------------


@dataclass(frozen=True)
class GradedFree:
    """The graded free module ⊕ S(a_i) given by its twist list."""

    twists: tuple[int, ...]

    def __post_init__(self):
        if not all(isinstance(a, int) for a in self.twists):
            raise ValueError("twists must be integers")


def slice_dim(F: GradedFree, d: int) -> int:
    """Dimension of the degree-d slice: sum of max(d + a_i + 1, 0)."""
    return sum(max(d + a + 1, 0) for a in F.twists)


def _su_terms(p: MultiPoly) -> dict[tuple[int, int], Fraction]:
    """Terms of a polynomial in s, u as {(deg_s, deg_u): coefficient}."""
    names = set(p.variables_used())
    if not names <= {"s", "u"}:
        raise ValueError(f"entry uses variables outside s, u: {sorted(names)}")
    out: dict[tuple[int, int], Fraction] = {}
    from .arith import VARIABLES

    i_s, i_u = VARIABLES.index("s"), VARIABLES.index("u")
    for exp, c in p.items():
        out[(exp[i_s], exp[i_u])] = c
    return out


def homogeneous_degree(p: MultiPoly) -> int | None:
    """Total degree in s, u if p is homogeneous and nonzero, else None."""
    degrees = {ds + du for (ds, du) in _su_terms(p)}
    if len(degrees) != 1:
        return None
    return degrees.pop()


@dataclass(frozen=True)
class GradedMatrix:
    """A degree-zero map of graded free modules, entries homogeneous in s, u.

    entries[i][j] maps source component j (twist source.twists[j]) into
    target component i (twist target.twists[i]); nonzero entries must be
    homogeneous of degree target.twists[i] - source.twists[j].
    """

    source: GradedFree
    target: GradedFree
    entries: tuple[tuple[MultiPoly, ...], ...]

    def __post_init__(self):
        if len(self.entries) != len(self.target.twists):
            raise ValueError("row count must match target rank")
        for i, row in enumerate(self.entries):
            if len(row) != len(self.source.twists):
                raise ValueError("column count must match source rank")
            for j, entry in enumerate(row):
                if entry.is_zero():
                    continue
                forced = self.target.twists[i] - self.source.twists[j]
                if homogeneous_degree(entry) != forced:
                    raise ValueError(
                        f"entry ({i},{j}) = {format_poly(entry)} is not "
                        f"homogeneous of degree {forced}"
                    )

    def evaluate(self, point: tuple[Fraction, Fraction]) -> list[list[Fraction]]:
        """The numeric matrix at [s:u] = point, exactly."""
        s_val, u_val = point
        rows = []
        for row in self.entries:
            rows.append(
                [
                    sum(
                        (c * s_val**ds * u_val**du for (ds, du), c in _su_terms(e).items()),
                        Fraction(0),
                    )
                    for e in row
                ]
            )
        return rows


def transpose_dual(M: GradedMatrix) -> GradedMatrix:
    """The Serre-dual matrix: transposed entries between dualized twists.

    The degree-d slice rank of M on first cohomology equals the degree -d
    slice rank of this matrix on global sections: S(a) dualizes to S(-a-2)
    and the multiplication entries transpose unchanged.
    """
    dual_source = GradedFree(tuple(-a - 2 for a in M.target.twists))
    dual_target = GradedFree(tuple(-a - 2 for a in M.source.twists))
    cols = len(M.source.twists)
    rows = len(M.target.twists)
    entries = tuple(
        tuple(M.entries[i][j] for i in range(rows)) for j in range(cols)
    )
    return GradedMatrix(dual_source, dual_target, entries)


def _slice_basis(twist: int, d: int) -> list[tuple[int, int]]:
    """Monomial basis (deg_s, deg_u) of S(twist)_d: s^k u^(n-k), k descending."""
    n = d + twist
    if n < 0:
        return []
    return [(k, n - k) for k in range(n, -1, -1)]


def slice_matrix(M: GradedMatrix, d: int) -> list[list[Fraction]]:
    """The degree-d slice of M as an exact matrix.

    Rows run over the target slice basis, columns over the source slice
    basis, each ordered component-first then s-exponent descending.
    """
    src_bases = [_slice_basis(a, d) for a in M.source.twists]
    tgt_bases = [_slice_basis(a, d) for a in M.target.twists]
    tgt_index: dict[tuple[int, int, int], int] = {}
    pos = 0
    for i, basis in enumerate(tgt_bases):
        for mono in basis:
            tgt_index[(i, mono[0], mono[1])] = pos
            pos += 1
    n_rows = pos
    n_cols = sum(len(b) for b in src_bases)
    out = [[Fraction(0)] * n_cols for _ in range(n_rows)]
    col = 0
    for j, basis in enumerate(src_bases):
        entry_terms = [_su_terms(M.entries[i][j]) for i in range(len(tgt_bases))]
        for ds0, du0 in basis:
            for i in range(len(tgt_bases)):
                for (ds, du), c in entry_terms[i].items():
                    row = tgt_index.get((i, ds + ds0, du + du0))
                    if row is None:
                        raise AssertionError("slice monomial fell outside the basis")
                    out[row][col] = out[row][col] + c
            col += 1
    return out


def matrix_rank(rows: list[list[Fraction]]) -> int:
    """Exact rank of a rational matrix (cleared to integers, then Bareiss)."""
    if not rows or not rows[0]:
        return 0
    den = 1
    for row in rows:
        for x in row:
            den = den * x.denominator // math.gcd(den, x.denominator)
    cleared = [[int(x * den) for x in row] for row in rows]
    return bareiss_rank(cleared)


def slice_rank(M: GradedMatrix, d: int) -> int:
    return matrix_rank(slice_matrix(M, d))


# -- section pairs and the alpha/beta complex --------------------------------


@dataclass(frozen=True)
class SectionPair:
    """Homogeneous sections a, b of degrees r+2 and r+4 on the line.

    The no-common-zero condition is certified separately by
    common_zero_check; degenerate pairs stay constructible so failure
    paths can be exercised.
    """

    r: int
    a: MultiPoly
    b: MultiPoly

    def __post_init__(self):
        for name, p, want in (("a", self.a, self.r + 2), ("b", self.b, self.r + 4)):
            if p.is_zero() or homogeneous_degree(p) != want:
                raise ValueError(f"{name} must be homogeneous of degree {want} in s, u")


def default_pair(r: int) -> SectionPair:
    """The canonical common-zero-free pair a = s^(r+2), b = u^(r+4)."""
    return SectionPair(r, var("s") ** (r + 2), var("u") ** (r + 4))


def parse_section_pair(text: str) -> SectionPair:
    """Parse the format `r=<int>; a=<poly in s,u>; b=<poly in s,u>`."""
    fields: dict[str, str] = {}
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        key, _, value = chunk.partition("=")
        fields[key.strip()] = value.strip()
    missing = {"r", "a", "b"} - set(fields)
    if missing:
        raise ValueError(f"section pair needs fields r, a, b; missing {sorted(missing)}")
    return SectionPair(int(fields["r"]), parse_poly(fields["a"]), parse_poly(fields["b"]))


@dataclass(frozen=True)
class ComplexSpec:
    """The three-term complex with its matrices and the generating pair."""

    pair: SectionPair
    source: GradedFree
    middle: GradedFree
    target: GradedFree
    alpha: GradedMatrix
    beta: GradedMatrix


def alphabeta_builder(p: SectionPair) -> tuple[GradedMatrix, GradedMatrix, ComplexSpec]:
    """Build alpha = (a^2, 2ab, b^2)^T and beta = [[2b, -a, 0], [0, -b, 2a]].

    Twists: source S(-2r-12), middle S(-8)+S(-6)+S(-4), target
    S(r-4)+S(r-2); homogeneity of every entry is verified on construction.
    """
    r = p.r
    source = GradedFree((-2 * r - 12,))
    middle = GradedFree((-8, -6, -4))
    target = GradedFree((r - 4, r - 2))
    zero = MultiPoly.zero()
    alpha = GradedMatrix(
        source, middle, ((p.a * p.a,), (2 * p.a * p.b,), (p.b * p.b,))
    )
    beta = GradedMatrix(
        middle, target, ((2 * p.b, -p.a, zero), (zero, -p.b, 2 * p.a))
    )
    return alpha, beta, ComplexSpec(p, source, middle, target, alpha, beta)


def compose(outer: GradedMatrix, inner: GradedMatrix) -> tuple[tuple[MultiPoly, ...], ...]:
    """Entry table of the composite outer . inner (not degree-checked)."""
    if outer.source.twists != inner.target.twists:
        raise ValueError("composition shape mismatch")
    rows = len(outer.target.twists)
    cols = len(inner.source.twists)
    mid = len(inner.target.twists)
    return tuple(
        tuple(
            sum(
                (outer.entries[i][k] * inner.entries[k][j] for k in range(mid)),
                MultiPoly.zero(),
            )
            for j in range(cols)
        )
        for i in range(rows)
    )


def symbolic_complex_identities() -> bool:
    """beta.alpha = 0 and the beta minors are -2b^2, 4ab, -2a^2, symbolically.

    Verified with free stand-ins for a and b, so the identities hold for
    every section pair; the minor shapes show beta is fiberwise surjective
    wherever a and b do not vanish together.
    """
    a, b = var("a1"), var("a2")
    composite = (
        2 * b * (a * a) + (-a) * (2 * a * b),
        (-b) * (2 * a * b) + 2 * a * (b * b),
    )
    minors = (
        2 * b * (-b) - (-a) * MultiPoly.zero(),
        2 * b * (2 * a) - MultiPoly.zero() * MultiPoly.zero(),
        (-a) * (2 * a) - MultiPoly.zero() * (-b),
    )
    expected = (-2 * b * b, 4 * a * b, -2 * a * a)
    return all(c.is_zero() for c in composite) and all(
        m == e for m, e in zip(minors, expected)
    )


# -- zero locus and fiberwise checks ------------------------------------------


def common_zero_check(p: SectionPair) -> bool:
    """True iff a and b have no common zero on the projective line.

    In the chart u = 1 a common zero is detected by the resultant of the
    dehomogenizations; the remaining point [1:0] is a common zero exactly
    when u divides both.  Both checks together are complete.
    """
    u_divides_a = all(du > 0 for (_, du) in _su_terms(p.a))
    u_divides_b = all(du > 0 for (_, du) in _su_terms(p.b))
    if u_divides_a and u_divides_b:
        return False
    a_affine = p.a.substitute({"u": 1})
    b_affine = p.b.substitute({"u": 1})
    if a_affine.is_constant() or b_affine.is_constant():
        return True  # a nonzero constant section vanishes nowhere in the chart
    from .arith import univariate_resultant

    return univariate_resultant(a_affine, b_affine) != 0


def _numeric_rank(rows: list[list[Fraction]]) -> int:
    return matrix_rank(rows)


def pointwise_exactness(
    cx: ComplexSpec, points: list[tuple[Fraction, Fraction]]
) -> tuple[bool, tuple[Fraction, Fraction] | None]:
    """Fiberwise screen: at each point alpha != 0, rank beta = 2, beta.alpha = 0.

    For a 1-3-2 complex these three conditions are fiberwise exactness.
    Returns (True, None) or (False, witness_point).
    """
    for point in points:
        if point[0] == 0 and point[1] == 0:
            raise ValueError("[0:0] is not a point of the projective line")
        alpha_val = cx.alpha.evaluate(point)
        beta_val = cx.beta.evaluate(point)
        if all(row[0] == 0 for row in alpha_val):
            return False, point
        if _numeric_rank(beta_val) != 2:
            return False, point
        composite = [
            sum(beta_val[i][k] * alpha_val[k][0] for k in range(3)) for i in range(2)
        ]
        if any(v != 0 for v in composite):
            return False, point
    return True, None


# -- slice-level certification -------------------------------------------------


def slice_exactness_window(cx: ComplexSpec) -> tuple[int, int]:
    """Primary certificate: slice ranks prove exactness past regularity.

    For each degree d in [d0, d0+6] with d0 = max |twist| + deg(b) + 2,
    checks rank(alpha_d) = dim source_d, rank(beta_d) = dim target_d, and
    rank(alpha_d) + rank(beta_d) = dim middle_d.  Returns the window.
    """
    twists = cx.source.twists + cx.middle.twists + cx.target.twists
    d0 = max(abs(a) for a in twists) + (cx.pair.r + 4) + 2
    for d in range(d0, d0 + 7):
        r_alpha = slice_rank(cx.alpha, d)
        r_beta = slice_rank(cx.beta, d)
        if r_alpha != slice_dim(cx.source, d):
            raise GradedCertificateError(f"alpha slice not injective at degree {d}")
        if r_beta != slice_dim(cx.target, d):
            raise GradedCertificateError(f"beta slice not surjective at degree {d}")
        if r_alpha + r_beta != slice_dim(cx.middle, d):
            raise GradedCertificateError(f"slice exactness fails at degree {d}")
    return d0, d0 + 6


def cokernel_h0_profile(cx: ComplexSpec, window: range) -> dict[int, int]:
    """Exact h^0 of the cokernel sheaf of alpha, twist by twist.

    From 0 -> O(e) -> middle -> F -> 0:
      h^0(F(d)) = dim middle_d - rank(alpha_d) + h^1(O(e+d)) - rank(dual_(-d))
    where the last rank is the first-cohomology map computed by Serre
    duality as a section-level slice of the transposed dual matrix.
    """
    e = cx.source.twists[0]
    dual = transpose_dual(cx.alpha)
    profile: dict[int, int] = {}
    for d in window:
        h1_line = max(-(e + d) - 1, 0)
        value = (
            slice_dim(cx.middle, d)
            - slice_rank(cx.alpha, d)
            + h1_line
            - slice_rank(dual, -d)
        )
        if value < 0:
            raise GradedCertificateError(f"negative section count at twist {d}")
        profile[d] = value
    return profile


def splitting_type(cx: ComplexSpec, candidate_sum_degree: int) -> tuple[int, int]:
    """Infer the two twists of the cokernel bundle, ascending.

    The cokernel of alpha is locally free of rank 2 with determinant degree
    candidate_sum_degree = sum(middle twists) - source twist.  Its exact
    h^0 profile determines the larger twist y through the last twist with
    no sections (h^0(F(d)) = 0 exactly for d <= -y-1), and x follows from
    the sum; the full profile is then verified against the split model and
    against every other candidate pair, which must all fail.
    """
    e = cx.source.twists[0]
    expected_sum = sum(cx.middle.twists) - e
    if candidate_sum_degree != expected_sum:
        raise ValueError(
            f"candidate sum {candidate_sum_degree} contradicts determinant {expected_sum}"
        )
    bound = abs(e) + 4
    d0 = max(abs(a) for a in cx.source.twists + cx.middle.twists + cx.target.twists)
    hi = d0 + (cx.pair.r + 4) + 8
    window = range(-bound, hi + 1)
    profile = cokernel_h0_profile(cx, window)

    zero_twists = [d for d, v in profile.items() if v == 0]
    if not zero_twists or len(zero_twists) == len(profile):
        raise GradedCertificateError("section profile does not bracket a splitting")
    y = -1 - max(zero_twists)
    x = candidate_sum_degree - y

    def model(xx: int, yy: int, d: int) -> int:
        return max(d + xx + 1, 0) + max(d + yy + 1, 0)

    if any(profile[d] != model(x, y, d) for d in window):
        raise GradedCertificateError(
            "no split pair matches the section profile (torsion or non-exactness)"
        )
    matches = [
        (xx, candidate_sum_degree - xx)
        for xx in range(-bound, candidate_sum_degree // 2 + 1)
        if all(profile[d] == model(xx, candidate_sum_degree - xx, d) for d in window)
    ]
    if matches != [(x, y)] and matches != [(min(x, y), max(x, y))]:
        raise GradedCertificateError(f"splitting not unique: {matches}")
    return (x, y) if x <= y else (y, x)


# -- the certificate ------------------------------------------------------------


def injectivity_certificate(
    r: int,
    pair: SectionPair | None = None,
    points: list[tuple[Fraction, Fraction]] | None = None,
) -> bool:
    """Full certification chain for the connecting-map injectivity.

    Steps: common-zero check, symbolic identities, complex construction,
    fiberwise screen, slice exactness past regularity, splitting-type
    inference, and finally vanishing of sections after the -r-2 twist.
    Any failure raises GradedCertificateError; success returns True.
    """
    if r < 0:
        raise ValueError("r must be a nonnegative integer")
    p = pair if pair is not None else default_pair(r)
    if p.r != r:
        raise ValueError("section pair was built for a different r")
    if not common_zero_check(p):
        raise GradedCertificateError("section pair has a common zero")
    if not symbolic_complex_identities():
        raise GradedCertificateError("symbolic complex identities failed")
    alpha, beta, cx = alphabeta_builder(p)
    if any(not entry.is_zero() for row in compose(beta, alpha) for entry in row):
        raise GradedCertificateError("beta . alpha != 0 for this pair")
    sample = list(points) if points else list(DEFAULT_POINTS)
    if len(sample) < 5:
        raise ValueError("need at least five sample points")
    ok, witness = pointwise_exactness(cx, sample)
    if not ok:
        raise GradedCertificateError(f"fiberwise exactness fails at {witness}")
    slice_exactness_window(cx)
    split = splitting_type(cx, 2 * r - 6)
    twisted = tuple(sorted(a + (-r - 2) for a in split))
    assumption = Assumption(fixed=r)
    for a in twisted:
        sections = h_p1(LinForm(0, a), assumption).h0
        if not sections.is_zero():
            raise GradedCertificateError(
                f"twisted summand O({a}) has sections; kernel map not injective"
            )
    return True
