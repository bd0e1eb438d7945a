"""Binomial-basis expansion and integrality obstructions for bundle classes.

A polynomial that takes integer values at every integer t is an integer
combination of the basis polynomials C(t+i, i).  Expanding an Euler
characteristic in that basis therefore turns "chi(E(t)) is an integer for
all t" into divisibility conditions: each basis coefficient num/den must
have den | num.  When the coefficients depend on a parameter r the
conditions become congruences on r, decided exactly by enumerating a full
residue system (num(rho) mod m depends only on rho mod m).

The verdict intersects admissible residues per prime power across all
constraints, including integrality of the Chern entries themselves; by the
Chinese remainder theorem the intersection is empty for some prime power
exactly when no integer parameter clears every denominator, so the
nonexistence conclusion is both sound and complete.  A Chern entry that
forces a single residue class triggers an automatic reparametrization
r = m*R + rho before the expansion coefficients are examined.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterable

from .arith import MultiPoly, PolyT, binomial_poly, var
from .chow import BundleClass, euler_characteristic

ResidueTable = tuple[tuple[int, tuple[int, ...]], ...]
ConstraintTable = tuple[tuple[str, int, tuple[int, ...]], ...]


def lowest_terms(p: MultiPoly) -> tuple[MultiPoly, int]:
    """Write p as num/den with integer-coefficient num and positive den.

    den is the lcm of the coefficient denominators, so gcd(content, den)=1
    holds automatically and the pair is in lowest terms.
    """
    den = 1
    for _, c in p.items():
        den = den * c.denominator // math.gcd(den, c.denominator)
    return p * den, den


@dataclass(frozen=True)
class BinomialExpansion:
    """Coefficients of a degree-<=n polynomial in the basis C(t+i, i).

    coeffs[i] is the (numerator, denominator) pair of the coefficient of
    C(t+i, i), in lowest terms with positive denominator; the numerator is
    an integer-coefficient polynomial in the parameter.
    """

    n: int
    coeffs: tuple[tuple[MultiPoly, int], ...]

    def __post_init__(self):
        if len(self.coeffs) != self.n + 1:
            raise ValueError("need exactly n+1 coefficients")
        for num, den in self.coeffs:
            if den <= 0:
                raise ValueError("denominators must be positive")
            if any(c.denominator != 1 for _, c in num.items()):
                raise ValueError("numerators must have integer coefficients")

    def coefficient(self, i: int) -> MultiPoly:
        """The i-th coefficient as an exact rational polynomial."""
        num, den = self.coeffs[i]
        return num.scalar_div(den)


def to_binomial_basis(p: PolyT, n: int) -> BinomialExpansion:
    """Expand p in the basis C(t+i, i), i = 0..n, by triangular elimination.

    C(t+i, i) has leading term t^i / i!, so working from degree n down the
    coefficients are forced; the remainder must cancel exactly.
    """
    if p.degree_t() > n:
        raise ValueError(f"degree {p.degree_t()} exceeds basis size {n}")
    remainder = p
    rational: list[MultiPoly] = [MultiPoly.zero()] * (n + 1)
    for i in range(n, -1, -1):
        c_i = remainder.coeff(i) * math.factorial(i)
        rational[i] = c_i
        remainder = remainder - binomial_poly(i) * c_i
    if not remainder.poly.is_zero():
        raise ValueError("expansion failed to terminate; input is not polynomial in t")
    return BinomialExpansion(n, tuple(lowest_terms(c) for c in rational))


def from_binomial_basis(e: BinomialExpansion) -> PolyT:
    """Reassemble the polynomial; exact inverse of to_binomial_basis."""
    total = PolyT(0)
    for i in range(e.n + 1):
        total = total + binomial_poly(i) * e.coefficient(i)
    return total


def congruence_residues(numerator: MultiPoly, m: int) -> set[int]:
    """Residues rho in 0..m-1 with numerator(rho) divisible by m.

    Direct enumeration over a full residue system; exact because an
    integer-coefficient polynomial is constant mod m on residue classes.
    """
    if m < 2:
        raise ValueError("modulus must be at least 2")
    if any(c.denominator != 1 for _, c in numerator.items()):
        raise ValueError("numerator must have integer coefficients")
    names = numerator.variables_used()
    if len(names) > 1:
        raise ValueError(f"numerator must be univariate, uses {names}")
    residues: set[int] = set()
    for rho in range(m):
        value = numerator.substitute({names[0]: rho}) if names else numerator
        if value.as_fraction() % m == 0:
            residues.add(rho)
    return residues


@dataclass(frozen=True)
class Verdict:
    """Outcome of the integrality analysis of a parametric bundle class.

    admissible_residues lists, for each modulus examined (one prime power
    per relevant prime), the residues of the parameter for which every
    constraint is integral; conclusion is "nonexistence" exactly when some
    modulus admits no residue.  constraints carries the per-constraint
    residue sets at their own moduli for reporting; substitution records a
    reparametrization (m, rho) meaning r = m*R + rho was applied first.
    """

    conclusion: str
    admissible_residues: ResidueTable
    constraints: ConstraintTable = ()
    substitution: tuple[int, int] | None = None
    parameter: str = ""
    expansion: BinomialExpansion | None = None


def _factorize(value: int) -> dict[int, int]:
    factors: dict[int, int] = {}
    d = 2
    while d * d <= value:
        while value % d == 0:
            factors[d] = factors.get(d, 0) + 1
            value //= d
        d += 1
    if value > 1:
        factors[value] = factors.get(value, 0) + 1
    return factors


def _active_parameter(polys: Iterable[MultiPoly]) -> str:
    names: set[str] = set()
    for p in polys:
        names.update(p.variables_used())
    names.discard("t")
    if not names:
        return ""
    if len(names) > 1:
        raise ValueError(f"expected a single parameter, found {sorted(names)}")
    return names.pop()


def schwarzenberger_verdict(B: BundleClass, n: int = 5) -> Verdict:
    """Decide whether integrality of chi(B(t)) obstructs existence.

    Constraints: each Chern entry must be an integer, and each coefficient
    of the binomial-basis expansion of chi(B(t)) must be an integer.  A
    Chern entry whose denominator admits exactly one residue class forces
    the reparametrization r = m*R + rho (applied at most once) before the
    expansion is analyzed, mirroring how such conditions are used by hand.
    """
    parameter = _active_parameter(B.chern)
    chern_parts = [lowest_terms(c) for c in B.chern]

    for idx, (num, den) in enumerate(chern_parts, start=1):
        if den == 1:
            continue
        residues = congruence_residues(num, den)
        if not residues:
            table = ((den, ()),)
            detail = ((f"c{idx}", den, ()),)
            return Verdict("nonexistence", table, detail, None, parameter, None)
        if len(residues) == 1 and parameter == "r":
            rho = next(iter(residues))
            shift = den * var("R") + rho
            substituted = BundleClass(
                B.rank,
                tuple(c.substitute({"r": shift}) for c in B.chern),
                B.ambient_dim,
            )
            inner = schwarzenberger_verdict(substituted, n)
            return replace(inner, substitution=(den, rho))

    expansion = to_binomial_basis(euler_characteristic(B), n)
    constraints: list[tuple[str, MultiPoly, int]] = []
    for idx, (num, den) in enumerate(chern_parts, start=1):
        if den > 1:
            constraints.append((f"c{idx}", num, den))
    for i in range(n + 1):
        num, den = expansion.coeffs[i]
        if den > 1:
            constraints.append((f"C(t+{i},{i})", num, den))

    detail: list[tuple[str, int, tuple[int, ...]]] = []
    prime_max: dict[int, int] = {}
    for _, _, den in constraints:
        for p, e in _factorize(den).items():
            prime_max[p] = max(prime_max.get(p, 0), e)
    for label, num, den in constraints:
        detail.append((label, den, tuple(sorted(congruence_residues(num, den)))))

    table: list[tuple[int, tuple[int, ...]]] = []
    empty = False
    for p in sorted(prime_max):
        q = p ** prime_max[p]
        admissible = set(range(q))
        for _, num, den in constraints:
            f = 0
            d = den
            while d % p == 0:
                f += 1
                d //= p
            if f == 0:
                continue
            pf = p**f
            good = congruence_residues(num, pf)
            admissible = {rho for rho in admissible if rho % pf in good}
        table.append((q, tuple(sorted(admissible))))
        if not admissible:
            empty = True

    conclusion = "nonexistence" if empty else "exists-candidate"
    return Verdict(
        conclusion, tuple(table), tuple(detail), None, parameter, expansion
    )
