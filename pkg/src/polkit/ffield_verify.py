"""Finite-field cross-validation by brute-force point counting.

Counts are desk scale (p odd, p^k <= 10^6), quadratic characters go through
Euler's criterion, and F_{p^2} is realized as F_p[t]/(t^2 - nonresidue).
The genus-2 Frobenius quartic comes from the two counts; the sign test
compares it with the square of an elliptic Frobenius quadratic obtained by
reducing a curve over a real quadratic field at a split prime.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Optional, Sequence

from .errors import BadReduction, BothMatch, FieldTooLarge, Inert, NoMatch
from .errors import NotIntegral
from .theta_igusa import SexticCurve

FIELD_CAP = 10 ** 6


@dataclass(frozen=True)
class FrobeniusData:
    p: int
    counts: tuple[int, int]  # (#C(F_p), #C(F_{p^2}))
    charpoly: tuple[int, int, int, int, int]  # 1, -e1, e2, -p e1, p^2

    def __post_init__(self):
        e1 = -self.charpoly[1]
        if e1 * e1 > 16 * self.p:
            raise ValueError("Weil bound violated: |e1| <= 4 sqrt(p)")


@dataclass(frozen=True)
class QuadFieldCurveReduction:
    """y^2 = x^3 + a x + b with a, b in Z[sqrt(d)], reduced at a split prime."""

    d: int
    a: tuple[int, int]  # a0 + a1 sqrt(d)
    b: tuple[int, int]
    p: int


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for base in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(base, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _chi_prime(x: int, p: int) -> int:
    x %= p
    if x == 0:
        return 0
    return 1 if pow(x, (p - 1) // 2, p) == 1 else -1


def _nonresidue(p: int) -> int:
    for n in range(2, p):
        if _chi_prime(n, p) == -1:
            return n
    raise ValueError("no nonresidue found; p is not an odd prime")


class _Fp2:
    """F_{p^2} = F_p[t]/(t^2 - ns); elements are (a, b) = a + b t."""

    def __init__(self, p: int):
        self.p = p
        self.ns = _nonresidue(p)
        self.q = p * p

    def mul(self, u, v):
        a, b = u
        c, d = v
        p, ns = self.p, self.ns
        return ((a * c + b * d * ns) % p, (a * d + b * c) % p)

    def pow(self, u, e: int):
        acc = (1, 0)
        while e:
            if e & 1:
                acc = self.mul(acc, u)
            u = self.mul(u, u)
            e >>= 1
        return acc

    def chi(self, u) -> int:
        if u == (0, 0):
            return 0
        return 1 if self.pow(u, (self.q - 1) // 2) == (1, 0) else -1

    def elements(self):
        for a in range(self.p):
            for b in range(self.p):
                yield (a, b)


def _reduce_coefficients(curve: SexticCurve, p: int) -> list[int]:
    out = []
    for c in curve.coefficients:
        if c.denominator % p == 0:
            raise BadReduction(f"coefficient denominator divisible by {p}")
        out.append(c.numerator * pow(c.denominator, -1, p) % p)
    return out


def count_points_genus2(curve: SexticCurve, p: int, k: int = 1) -> int:
    """#C(F_{p^k}) for the smooth projective model of y^2 = f(x).

    Affine points by the quadratic character, plus points at infinity: two
    for degree 6 with square leading coefficient, one for degree 5, none for
    degree 6 with nonsquare leading coefficient (all per field).
    """
    if k not in (1, 2):
        raise ValueError("only F_p and F_{p^2} are supported")
    if p == 2 or not _is_prime(p):
        raise ValueError("p must be an odd prime")
    if p ** k > FIELD_CAP:
        raise FieldTooLarge(f"{p}^{k} exceeds the brute-force cap {FIELD_CAP}")
    coeffs = _reduce_coefficients(curve, p)
    if not _good_reduction(curve, p, coeffs):
        raise BadReduction(f"singular reduction at {p}")

    if k == 1:
        total = 0
        for x in range(p):
            acc = 0
            for c in reversed(coeffs):
                acc = (acc * x + c) % p
            total += 1 + _chi_prime(acc, p)
        lc = coeffs[6] % p
        if curve.degree == 5:
            total += 1
        else:
            total += 2 if _chi_prime(lc, p) == 1 else 0
        return total

    fld = _Fp2(p)
    total = 0
    for x in fld.elements():
        acc = (0, 0)
        for c in reversed(coeffs):
            acc = fld.mul(acc, x)
            acc = ((acc[0] + c) % p, acc[1])
        total += 1 + fld.chi(acc)
    if curve.degree == 5:
        total += 1
    else:
        total += 2 if fld.chi((coeffs[6] % p, 0)) == 1 else 0
    return total


def _good_reduction(curve: SexticCurve, p: int, coeffs: list[int]) -> bool:
    # smooth iff deg drop does not occur and disc != 0 mod p; both are read
    # off the exact I10-style discriminant reduced mod p
    if curve.degree == 6 and coeffs[6] % p == 0:
        return False
    if curve.degree == 5 and coeffs[5] % p == 0:
        return False
    from .theta_igusa import igusa_clebsch

    i10 = igusa_clebsch(curve).i10
    num, den = i10.numerator, i10.denominator
    if den % p == 0:
        raise BadReduction(f"I10 denominator divisible by {p}")
    return num % p != 0


def frobenius_charpoly_genus2(counts: Sequence[int], p: int) -> FrobeniusData:
    """Quartic T^4 - e1 T^3 + e2 T^2 - p e1 T + p^2 from the two counts."""
    n1, n2 = counts
    s1 = p + 1 - n1
    s2 = p * p + 1 - n2
    if (s1 * s1 - s2) % 2 != 0:
        raise NotIntegral("s1^2 - s2 is odd; counts are inconsistent")
    e1 = s1
    e2 = (s1 * s1 - s2) // 2
    return FrobeniusData(
        p=p,
        counts=(n1, n2),
        charpoly=(1, -e1, e2, -p * e1, p * p),
    )


def sqrt_mod(d: int, p: int) -> list[int]:
    """All square roots of d mod an odd prime p (Tonelli via search; p is small)."""
    d %= p
    return [r for r in range(p) if r * r % p == d]


def reduce_and_count_elliptic(red: QuadFieldCurveReduction) -> list[tuple[int, tuple[int, int, int]]]:
    """Reduce at each prime above p (one per root of d) and count points.

    Returns [(root, (1, -a_p, p))]: the Frobenius quadratic T^2 - a_p T + p
    for each reduction.  Raises Inert when d has no root mod p.
    """
    p = red.p
    if not _is_prime(p) or p == 2:
        raise ValueError("p must be an odd prime")
    roots = sqrt_mod(red.d, p)
    if not roots:
        raise Inert(f"{red.d} is not a square mod {p}")
    out = []
    for r in sorted(roots):
        a = (red.a[0] + red.a[1] * r) % p
        b = (red.b[0] + red.b[1] * r) % p
        disc = (4 * a * a * a + 27 * b * b) % p
        if disc == 0:
            raise BadReduction(f"elliptic reduction singular at ({p}, sqrt {r})")
        n = p + 1
        for x in range(p):
            n += _chi_prime((x * x * x + a * x + b) % p, p)
        ap = p + 1 - n
        assert ap * ap <= 4 * p
        out.append((r, (1, -ap, p)))
    return out


def _square_of_quadratic(q: tuple[int, int, int]) -> tuple[int, int, int, int, int]:
    one, m, c = q
    assert one == 1
    # (T^2 + m T + c)^2
    return (1, 2 * m, m * m + 2 * c, 2 * m * c, c * c)


def disambiguate_sign(
    candidates: tuple[SexticCurve, SexticCurve],
    red: QuadFieldCurveReduction,
) -> int:
    """Index (0 or 1) of the unique candidate whose Frobenius quartic is the
    square of the reduced elliptic quadratic for at least one root of d.

    Raises NoMatch / BothMatch when the prime is inconclusive; the caller
    retries with another split prime.
    """
    p = red.p
    quadratics = reduce_and_count_elliptic(red)
    squares = {q: _square_of_quadratic(q) for _, q in quadratics}
    matches = []
    for idx, curve in enumerate(candidates):
        n1 = count_points_genus2(curve, p, 1)
        n2 = count_points_genus2(curve, p, 2)
        quartic = frobenius_charpoly_genus2((n1, n2), p).charpoly
        if any(quartic == sq for sq in squares.values()):
            matches.append(idx)
    if not matches:
        raise NoMatch(f"no candidate matches at p = {p}")
    if len(matches) == 2:
        raise BothMatch(f"both candidates match at p = {p}; retry another prime")
    return matches[0]
