"""Exact linear algebra for alternating forms over Z and Q.

Matrices are immutable tuples of tuples of Fraction.  Everything here is
exact: no floating point enters this module.  The three main operations are
the Pfaffian (recursive first-row expansion), the polarization type
(elementary divisors of an alternating form under unimodular congruence) and
a symplectic (Frobenius) normal form S A S^T = [[0, D], [-D, 0]].
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import Degenerate, NotAlternating, NotIntegral, OddDimension

Matrix = tuple[tuple[Fraction, ...], ...]


# ---------------------------------------------------------------------------
# matrix helpers


def mat(rows: Iterable[Iterable]) -> Matrix:
    """Coerce an iterable of rows (ints, strings, Fractions) to a Matrix."""
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def identity(n: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def zeros(n: int, m: int | None = None) -> Matrix:
    m = n if m is None else m
    return tuple((Fraction(0),) * m for _ in range(n))


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def matadd(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def matscale(c, a: Matrix) -> Matrix:
    c = Fraction(c)
    return tuple(tuple(c * x for x in row) for row in a)


def matneg(a: Matrix) -> Matrix:
    return matscale(-1, a)


def det(a: Matrix) -> Fraction:
    """Determinant by fraction-free style Gaussian elimination on Fractions."""
    n = len(a)
    m = [list(row) for row in a]
    sign = 1
    d = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            sign = -sign
        d *= m[c][c]
        inv = 1 / m[c][c]
        for r in range(c + 1, n):
            if m[r][c] != 0:
                f = m[r][c] * inv
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return sign * d


def inverse(a: Matrix) -> Matrix:
    """Exact inverse via Gauss-Jordan; raises Degenerate on singular input."""
    n = len(a)
    m = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            raise Degenerate("matrix is singular")
        m[c], m[piv] = m[piv], m[c]
        inv = 1 / m[c][c]
        m[c] = [x * inv for x in m[c]]
        for r in range(n):
            if r != c and m[r][c] != 0:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return tuple(tuple(row[n:]) for row in m)


def is_integral(a: Matrix) -> bool:
    return all(x.denominator == 1 for row in a for x in row)


def is_unimodular(a: Matrix) -> bool:
    return is_integral(a) and abs(det(a)) == 1


def standard_symplectic(g: int, divisors: Sequence[int] | None = None) -> Matrix:
    """[[0, D], [-D, 0]] with D = diag(divisors); the principal form if omitted."""
    d = list(divisors) if divisors is not None else [1] * g
    rows = []
    for i in range(g):
        rows.append((Fraction(0),) * g + tuple(Fraction(d[i] if j == i else 0) for j in range(g)))
    for i in range(g):
        rows.append(tuple(Fraction(-d[i] if j == i else 0) for j in range(g)) + (Fraction(0),) * g)
    return tuple(rows)


# ---------------------------------------------------------------------------
# domain types


@dataclass(frozen=True)
class AlternatingForm:
    """Skew matrix of a bilinear alternating form on a fixed lattice basis."""

    matrix: Matrix
    basis_labels: tuple[str, ...] = ()

    def __post_init__(self):
        m = mat(self.matrix)
        object.__setattr__(self, "matrix", m)
        n = len(m)
        if any(len(row) != n for row in m):
            raise NotAlternating("matrix is not square")
        for i in range(n):
            if m[i][i] != 0:
                raise NotAlternating(f"nonzero diagonal entry at ({i},{i})")
            for j in range(i + 1, n):
                if m[i][j] != -m[j][i]:
                    raise NotAlternating(f"entry ({i},{j}) != -({j},{i})")
        if not self.basis_labels:
            object.__setattr__(self, "basis_labels", tuple(f"e{i+1}" for i in range(n)))

    @property
    def rank(self) -> int:
        return len(self.matrix)

    def is_integral(self) -> bool:
        return is_integral(self.matrix)

    def is_degenerate(self) -> bool:
        return det(self.matrix) == 0

    def scaled(self, c) -> "AlternatingForm":
        return AlternatingForm(matscale(c, self.matrix), self.basis_labels)


@dataclass(frozen=True)
class PolarizationType:
    """Elementary divisors (d_1, ..., d_g), d_1 | d_2 | ... | d_g."""

    divisors: tuple[int, ...]

    def __post_init__(self):
        d = tuple(int(x) for x in self.divisors)
        object.__setattr__(self, "divisors", d)
        if any(x <= 0 for x in d):
            raise ValueError("divisors must be positive")
        for a, b in zip(d, d[1:]):
            if b % a != 0:
                raise ValueError(f"divisor chain broken: {a} does not divide {b}")

    def is_principal(self) -> bool:
        return all(x == 1 for x in self.divisors)

    @property
    def degree(self) -> int:
        deg = 1
        for x in self.divisors:
            deg *= x
        return deg

    def __str__(self) -> str:
        return "(" + ",".join(str(x) for x in self.divisors) + ")"


@dataclass(frozen=True)
class BasisChange:
    """Unimodular change of basis; rows give the new basis in the old one."""

    matrix: Matrix

    def __post_init__(self):
        m = mat(self.matrix)
        object.__setattr__(self, "matrix", m)
        if not is_integral(m):
            raise NotIntegral("basis change must be integral")
        if abs(det(m)) != 1:
            raise ValueError("basis change must be unimodular")

    @property
    def determinant(self) -> int:
        return int(det(self.matrix))


# ---------------------------------------------------------------------------
# operations


def _require_alternating(a: Matrix) -> None:
    n = len(a)
    if any(len(row) != n for row in a):
        raise NotAlternating("matrix is not square")
    for i in range(n):
        if a[i][i] != 0:
            raise NotAlternating("nonzero diagonal")
        for j in range(i + 1, n):
            if a[i][j] != -a[j][i]:
                raise NotAlternating("A^T != -A")


def _as_matrix(a) -> Matrix:
    return a.matrix if isinstance(a, AlternatingForm) else mat(a)


def pfaffian(a) -> Fraction:
    """Pfaffian by recursive expansion along the first row.

    Pf(A) = sum_{j>1} (-1)^j a_{1j} Pf(A with rows/columns 1, j removed)
    (indices 1-based), so Pf([[0,d],[-d,0]]) = d and Pf of an interleaved
    block sum diag([[0,d_i],[-d_i,0]]) is the product of the d_i.  Only |Pf|
    is contract-bearing downstream.
    """
    m = _as_matrix(a)
    _require_alternating(m)
    n = len(m)
    if n % 2 != 0:
        raise OddDimension("Pfaffian needs even dimension")

    def rec(rows: tuple[int, ...]) -> Fraction:
        if not rows:
            return Fraction(1)
        i0 = rows[0]
        rest = rows[1:]
        acc = Fraction(0)
        for pos, j in enumerate(rest):
            if m[i0][j] != 0:
                sub = rest[:pos] + rest[pos + 1:]
                sign = 1 if pos % 2 == 0 else -1
                acc += sign * m[i0][j] * rec(sub)
        return acc

    return rec(tuple(range(n)))


def _skew_normalize(a: Matrix, want_transform: bool):
    """Reduce an integral alternating matrix to interleaved block form.

    Returns (divisors, S) with S A S^T = diag([[0,d_i],[-d_i,0]]) and
    d_1 | d_2 | ... | d_g, d_i > 0.  Pivot rule: smallest |entry|, ties
    broken lexicographically by (row, col), so the output is reproducible.
    """
    n = len(a)
    m = [[int(x) for x in row] for row in a]
    s = [[int(i == j) for j in range(n)] for i in range(n)] if want_transform else None

    def row_swap(i, j):
        m[i], m[j] = m[j], m[i]
        for r in m:
            r[i], r[j] = r[j], r[i]
        if s is not None:
            s[i], s[j] = s[j], s[i]

    def row_addmul(i, j, q):
        # row_i += q * row_j, mirrored on columns to stay congruent
        if q == 0:
            return
        m[i] = [x + q * y for x, y in zip(m[i], m[j])]
        for r in m:
            r[i] += q * r[j]
        if s is not None:
            s[i] = [x + q * y for x, y in zip(s[i], s[j])]

    divisors: list[int] = []
    k = 0
    while k < n:
        # locate pivot: minimal |entry| in the remaining block
        piv = None
        for i in range(k, n):
            for j in range(k, n):
                v = m[i][j]
                if v != 0 and (piv is None or abs(v) < abs(m[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            raise Degenerate("form is degenerate")
        i, j = piv
        # move pivot to (k, k+1)
        if i != k:
            row_swap(i, k)
            if j == k:
                j = i
        if j != k + 1:
            row_swap(j, k + 1)
        p = m[k][k + 1]

        # clear row k and column k+1 outside the pair
        dirty = False
        for j2 in range(k + 2, n):
            q, r = divmod(m[k][j2], p)
            row_addmul(j2, k + 1, -q)
            if r != 0:
                dirty = True
        for i2 in range(k + 2, n):
            q, r = divmod(m[i2][k + 1], p)
            row_addmul(i2, k, -q)
            if r != 0:
                dirty = True
        if dirty:
            continue  # smaller entries appeared; re-pick pivot

        # divisibility: p must divide the rest of the block
        bad = None
        for i2 in range(k + 2, n):
            for j2 in range(k + 2, n):
                if m[i2][j2] % p != 0:
                    bad = i2
                    break
            if bad is not None:
                break
        if bad is not None:
            row_addmul(k, bad, 1)
            continue

        if p < 0:
            row_swap(k, k + 1)
            p = -p
        divisors.append(p)
        k += 2

    st = tuple(tuple(Fraction(x) for x in row) for row in s) if s is not None else None
    return divisors, st


def polarization_type(a, scale=1) -> PolarizationType:
    """Type (d_1, ..., d_g) of scale * A as an integral alternating form."""
    m = _as_matrix(a)
    _require_alternating(m)
    if len(m) % 2 != 0:
        raise OddDimension("alternating forms of odd rank are degenerate")
    m = matscale(scale, m)
    if not is_integral(m):
        raise NotIntegral("scale * A has a non-integer entry")
    if det(m) == 0:
        raise Degenerate("form is degenerate")
    divisors, _ = _skew_normalize(m, want_transform=False)
    return PolarizationType(tuple(divisors))


def primitive_part(a):
    """(A0, multiplier): A = multiplier * A0, A0 integral of content 1."""
    m = _as_matrix(a)
    _require_alternating(m)
    if det(m) == 0:
        raise Degenerate("form is degenerate")
    denom = lcm(*(x.denominator for row in m for x in row))
    num = gcd(*(abs(int(x * denom)) for row in m for x in row))
    multiplier = Fraction(num, denom)
    labels = a.basis_labels if isinstance(a, AlternatingForm) else ()
    return AlternatingForm(matscale(1 / multiplier, m), labels), multiplier


def symplectic_basis(a) -> BasisChange:
    """Unimodular S with S A S^T = [[0, D], [-D, 0]], D = diag(d_1..d_g).

    Deterministic for a fixed input (fixed pivot rule).  A must be integral,
    alternating and nondegenerate.
    """
    m = _as_matrix(a)
    _require_alternating(m)
    if len(m) % 2 != 0:
        raise OddDimension("no symplectic basis in odd rank")
    if not is_integral(m):
        raise NotIntegral("form must be integral")
    if det(m) == 0:
        raise Degenerate("form is degenerate")
    g0 = len(m) // 2
    divs = [int(m[i][g0 + i]) for i in range(g0)]
    if (
        all(d > 0 for d in divs)
        and all(b % a == 0 for a, b in zip(divs, divs[1:]))
        and m == standard_symplectic(g0, divs)
    ):
        return BasisChange(identity(len(m)))  # already in normal form
    divisors, s = _skew_normalize(m, want_transform=True)
    # reorder interleaved (a1, b1, a2, b2, ...) to (a1, a2, ..., b1, b2, ...)
    n = len(m)
    g = n // 2
    perm = [2 * i for i in range(g)] + [2 * i + 1 for i in range(g)]
    s_final = tuple(s[p] for p in perm)
    return BasisChange(s_final)


def check_symplectic(s: BasisChange, a, d: PolarizationType) -> bool:
    """True iff S A S^T equals [[0, D], [-D, 0]] exactly."""
    m = _as_matrix(a)
    sm = s.matrix if isinstance(s, BasisChange) else mat(s)
    if len(sm) != len(m):
        return False
    target = standard_symplectic(len(m) // 2, d.divisors)
    return matmul(matmul(sm, m), transpose(sm)) == target
