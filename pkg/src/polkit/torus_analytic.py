"""Multiprecision complex-torus machinery.

Period matrices are g x 2g mpmath complex arrays on an explicit homology
basis; Siegel points are Z = Omega_1^{-1} Omega_2.  Exact lattice work
(torsion quotients) stays in Fractions; only genuinely analytic data
(periods, elliptic invariants, the Weil-restriction action residuals) uses
mpmath.  Working precision is carried by the objects, default 128 bits.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Optional, Sequence

from mpmath import mp, mpc, mpf

from .errors import (
    Degenerate,
    DegenerateLattice,
    InfiniteOrder,
    NonIntegralAction,
    NotIntegral,
    NotSymplecticOrder,
)
from .exact_forms import (
    AlternatingForm,
    BasisChange,
    Matrix,
    det,
    identity,
    inverse,
    is_integral,
    mat,
    matmul,
    matscale,
    pfaffian,
    transpose,
)

DEFAULT_PRECISION_BITS = 128
MIN_IM_EIGENVALUE = 1e-3  # below this, theta convergence is not guaranteed
INTEGRALITY_RESIDUAL = 1e-6  # rounding rule for numerically integral matrices


def parse_complex(pair, prec_bits: int = DEFAULT_PRECISION_BITS) -> mpc:
    """['re', 'im'] decimal strings -> mpc at the requested precision."""
    with mp.workprec(prec_bits + 16):
        return mpc(mp.mpf(str(pair[0])), mp.mpf(str(pair[1])))


def format_complex(z, digits: int = 36) -> list[str]:
    return [mp.nstr(mp.re(z), digits, strip_zeros=False),
            mp.nstr(mp.im(z), digits, strip_zeros=False)]


@dataclass(frozen=True)
class PeriodMatrix:
    """g x 2g periods Omega = (Omega_1 | Omega_2) in symplectic column order."""

    omega: tuple[tuple[mpc, ...], ...]
    precision_bits: int = DEFAULT_PRECISION_BITS
    basis_labels: tuple[str, ...] = ()

    def __post_init__(self):
        rows = tuple(tuple(mpc(x) for x in row) for row in self.omega)
        object.__setattr__(self, "omega", rows)
        g = len(rows)
        if any(len(row) != 2 * g for row in rows):
            raise ValueError("period matrix must be g x 2g")
        if not self.basis_labels:
            object.__setattr__(
                self, "basis_labels", tuple(f"c{i+1}" for i in range(2 * g))
            )

    @property
    def genus(self) -> int:
        return len(self.omega)


@dataclass(frozen=True)
class SiegelPoint:
    """Symmetric g x g Z with positive definite imaginary part."""

    z: tuple[tuple[mpc, ...], ...]
    precision_bits: int = DEFAULT_PRECISION_BITS

    @property
    def genus(self) -> int:
        return len(self.z)

    def im_min_eigenvalue(self) -> mpf:
        return _sym_min_eig([[mp.im(x) for x in row] for row in self.z])


def _sym_min_eig(y) -> mpf:
    n = len(y)
    if n == 1:
        return y[0][0]
    if n == 2:
        tr = y[0][0] + y[1][1]
        dt = y[0][0] * y[1][1] - y[0][1] * y[1][0]
        disc = mp.sqrt(tr * tr - 4 * dt)
        return (tr - disc) / 2
    raise ValueError("only genus 1 and 2 supported")


def siegel_from_periods(periods: PeriodMatrix, tol: Optional[float] = None) -> SiegelPoint:
    """Z = Omega_1^{-1} Omega_2, checked symmetric with Im Z > 0.

    tol bounds the allowed relative asymmetry |Z - Z^T| / |Z|; the default
    1e-4 accommodates fixtures transcribed from printed six-decimal periods.
    Failure signals a non-symplectic column ordering.
    """
    g = periods.genus
    with mp.workprec(periods.precision_bits + 16):
        om = periods.omega
        o1 = mp.matrix([[om[i][j] for j in range(g)] for i in range(g)])
        o2 = mp.matrix([[om[i][g + j] for j in range(g)] for i in range(g)])
        try:
            z = o1 ** -1 * o2
        except ZeroDivisionError:
            raise NotSymplecticOrder("Omega_1 is singular at working precision")
        scale = max(abs(z[i, j]) for i in range(g) for j in range(g))
        asym = max(
            abs(z[i, j] - z[j, i]) for i in range(g) for j in range(g)
        )
        limit = mpf(tol if tol is not None else 1e-4)
        if scale == 0 or asym > limit * max(scale, mpf(1)):
            raise NotSymplecticOrder(
                f"Z is not symmetric (relative asymmetry {mp.nstr(asym / max(scale, mpf(1)), 5)})"
            )
        zsym = [
            [(z[i, j] + z[j, i]) / 2 for j in range(g)] for i in range(g)
        ]
        mineig = _sym_min_eig([[mp.im(x) for x in row] for row in zsym])
        if mineig <= MIN_IM_EIGENVALUE:
            raise NotSymplecticOrder(
                f"Im Z is not sufficiently positive (min eigenvalue {mp.nstr(mineig, 5)})"
            )
        return SiegelPoint(tuple(tuple(row) for row in zsym), periods.precision_bits)


def apply_basis_change(periods: PeriodMatrix, s) -> PeriodMatrix:
    """Periods of the basis delta_i = sum_j s_ij gamma_j: columns recombine."""
    sm = s.matrix if isinstance(s, BasisChange) else mat(s)
    n = len(sm)
    if n != 2 * periods.genus:
        raise ValueError("basis change size does not match")
    with mp.workprec(periods.precision_bits + 16):
        om = periods.omega
        new = tuple(
            tuple(
                mp.fsum([om[i][j] * int(sm[k][j]) for j in range(n)])
                for k in range(n)
            )
            for i in range(periods.genus)
        )
    return PeriodMatrix(new, periods.precision_bits, periods.basis_labels)


# ---------------------------------------------------------------------------
# torsion quotients (exact)


@dataclass(frozen=True)
class TorsionSubgroup:
    """Finite subgroup of (Q/Z)^{2g} given by homology-coordinate generators."""

    generators: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        gens = []
        for v in self.generators:
            try:
                gens.append(tuple(Fraction(x) for x in v))
            except (TypeError, ValueError) as exc:
                raise InfiniteOrder(f"generator {v!r} is not rational") from exc
        object.__setattr__(self, "generators", tuple(gens))

    @property
    def rank_ambient(self) -> int:
        return len(self.generators[0]) if self.generators else 0


def _hnf_rows(rows: list[list[int]]) -> list[list[int]]:
    """Row Hermite normal form (nonnegative, pivot-reduced), zero rows dropped."""
    m = [r[:] for r in rows]
    n = len(m[0]) if m else 0
    out: list[list[int]] = []
    col = 0
    while col < n and m:
        nz = [r for r in m if r[col] != 0]
        rest = [r for r in m if r[col] == 0]
        if not nz:
            col += 1
            continue
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            base = nz[0]
            new_nz = [base]
            for r in nz[1:]:
                q = r[col] // base[col]
                r2 = [a - q * b for a, b in zip(r, base)]
                (new_nz if r2[col] != 0 else rest).append(r2)
            if len(new_nz) == 1 and all(
                r[col] == 0 for r in new_nz[1:]
            ) and len(nz) == len(new_nz):
                break
            nz = new_nz
            if len(nz) == 1:
                break
        piv = nz[0]
        if piv[col] < 0:
            piv = [-x for x in piv]
        for r in out:
            q = r[col] // piv[col]
            if q:
                r[:] = [a - q * b for a, b in zip(r, piv)]
        out.append(piv)
        m = [r for r in rest if any(r)]
        col += 1
    return out


def _smith_divisors(a: list[list[int]]) -> list[int]:
    """Nonzero invariant factors of an integer matrix (small sizes only)."""
    m = [r[:] for r in a]
    rows, cols = len(m), len(m[0]) if m else 0
    out = []
    top = 0
    while top < min(rows, cols):
        piv = None
        for i in range(top, rows):
            for j in range(top, cols):
                if m[i][j] != 0 and (piv is None or abs(m[i][j]) < abs(m[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        i0, j0 = piv
        m[top], m[i0] = m[i0], m[top]
        for r in m:
            r[top], r[j0] = r[j0], r[top]
        p = m[top][top]
        dirty = False
        for i in range(top + 1, rows):
            q, rr = divmod(m[i][top], p)
            if q:
                m[i] = [a - q * b for a, b in zip(m[i], m[top])]
            if rr:
                dirty = True
        for j in range(top + 1, cols):
            q, rr = divmod(m[top][j], p)
            if q:
                for r in m:
                    r[j] -= q * r[top]
            if rr:
                dirty = True
        if dirty:
            continue
        bad = None
        for i in range(top + 1, rows):
            for j in range(top + 1, cols):
                if m[i][j] % p != 0:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            m[top] = [a + b for a, b in zip(m[top], m[bad])]
            continue
        out.append(abs(p))
        top += 1
    return out


@dataclass(frozen=True)
class QuotientResult:
    basis: Matrix  # columns: basis of the enlarged lattice in old coordinates
    restricted: AlternatingForm  # rational matrix of E on that basis
    scaled: AlternatingForm  # #G * restricted, integral
    group_order: int
    invariant_factors: tuple[int, ...]


def quotient_by_torsion(
    form: AlternatingForm,
    torsion: TorsionSubgroup,
    basis: Optional[Matrix] = None,
) -> QuotientResult:
    """Enlarged lattice <Z^2g, G>, E restricted (rational) and #G * E (integral).

    The default basis is the canonical Hermite-reduced one; an explicit basis
    (columns in old coordinates) may be supplied instead, e.g. to match a
    published presentation.  The degree relation
    |Pf(#G * E_G)| = #G * |Pf(E)| is asserted.
    """
    n = form.rank
    gens = [g for g in torsion.generators]
    for g in gens:
        if len(g) != n:
            raise ValueError("generator length does not match the form rank")
    if not form.is_integral():
        raise NotIntegral("E must be integral on the original lattice")

    q = lcm(*[x.denominator for g in gens for x in g]) if gens else 1
    rows = [[q if i == j else 0 for j in range(n)] for i in range(n)]
    rows += [[int(x * q) for x in g] for g in gens]
    hnf = _hnf_rows(rows)
    if len(hnf) != n:
        raise Degenerate("enlarged lattice is not full rank")
    if basis is None:
        basis_cols = mat([[Fraction(hnf[j][i], q) for j in range(n)] for i in range(n)])
    else:
        basis_cols = mat(basis)
        # sanity: supplied basis must span the same lattice
        hnf_m = mat([[Fraction(hnf[j][i], q) for j in range(n)] for i in range(n)])
        rel = matmul(inverse(hnf_m), basis_cols)
        if not is_integral(rel) or abs(det(rel)) != 1:
            raise ValueError("supplied basis does not span the enlarged lattice")

    index = Fraction(q ** n) / abs(
        Fraction(int(round(_int_det(hnf))), 1)
    )
    group_order = int(index)
    # invariant factors of Lambda_G / Z^n: SNF of coordinates of e_j in the new basis
    d = inverse(basis_cols)
    if not is_integral(d):
        raise Degenerate("old lattice is not contained in the enlarged one")
    divisors = _smith_divisors([[int(x) for x in row] for row in d])
    factors = tuple(x for x in divisors if x != 1)

    restricted = matmul(matmul(transpose(basis_cols), form.matrix), basis_cols)
    scaled = matscale(group_order, restricted)
    if not is_integral(scaled):
        raise NotIntegral("#G * E is not integral on the enlarged lattice")
    deg_scaled = abs(pfaffian(scaled))
    deg_orig = abs(pfaffian(form.matrix))
    assert deg_scaled == group_order * deg_orig, (deg_scaled, group_order, deg_orig)
    return QuotientResult(
        basis=basis_cols,
        restricted=AlternatingForm(restricted),
        scaled=AlternatingForm(scaled),
        group_order=group_order,
        invariant_factors=factors,
    )


def _int_det(rows: list[list[int]]) -> int:
    return int(det(mat(rows)))


# ---------------------------------------------------------------------------
# Weil restriction


@dataclass(frozen=True)
class IsogenyDescent:
    """Data of a cyclic degree-n isogeny mu: C -> sigma(C) with mu* = lambda."""

    lam: mpc
    degree: int
    lattice: tuple[mpc, mpc]  # periods of C
    lattice_sigma: tuple[mpc, mpc]  # periods of sigma(C)
    precision_bits: int = DEFAULT_PRECISION_BITS


@dataclass(frozen=True)
class WeilRestrictionData:
    lattice_data: "object"  # PolarizedLatticeData (import cycle avoided)
    periods: PeriodMatrix
    sqrt_action: Matrix  # integral matrix of sqrt(n)
    unit_action: Matrix  # integral matrix of the fundamental unit of Z[sqrt n]
    rounding_residual: float


def weil_restriction_lattice(descent: IsogenyDescent) -> WeilRestrictionData:
    """Rank-4 product lattice with the sqrt(n) action made integral.

    Basis order (g1, g_sigma_1, g2, g_sigma_2); the product polarization is
    the standard symplectic form on it.  The analytic action
    (z1, z2) -> ((n/lambda) z2, lambda z1) squares to n, and its rational
    matrix must round to integers within the residual tolerance.
    """
    from .exact_forms import standard_symplectic
    from .polarization_kit import PolarizedLatticeData
    from .quad_order import QuadOrder, fundamental_unit

    n = descent.degree
    if n < 1:
        raise ValueError("degree must be positive")
    prec = descent.precision_bits
    with mp.workprec(prec + 32):
        lam = mpc(descent.lam)
        if lam == 0:
            raise ValueError("lambda must be nonzero")
        w1, w2 = (mpc(x) for x in descent.lattice)
        v1, v2 = (mpc(x) for x in descent.lattice_sigma)
        om = (
            (w1, mpc(0), w2, mpc(0)),
            (mpc(0), v1, mpc(0), v2),
        )
        # real 4x4 of the period columns
        pmat = mp.matrix(
            [
                [mp.re(om[0][j]) for j in range(4)],
                [mp.im(om[0][j]) for j in range(4)],
                [mp.re(om[1][j]) for j in range(4)],
                [mp.im(om[1][j]) for j in range(4)],
            ]
        )
        # analytic action D = [[0, n/lam], [lam, 0]]
        images = []
        for j in range(4):
            z1, z2 = om[0][j], om[1][j]
            images.append(((n / lam) * z2, lam * z1))
        rhs = mp.matrix(
            [
                [mp.re(images[j][0]) for j in range(4)],
                [mp.im(images[j][0]) for j in range(4)],
                [mp.re(images[j][1]) for j in range(4)],
                [mp.im(images[j][1]) for j in range(4)],
            ]
        )
        try:
            sol = pmat ** -1 * rhs
        except ZeroDivisionError:
            raise DegenerateLattice("period columns are R-dependent")
        entries = [[sol[i, j] for j in range(4)] for i in range(4)]
        rounded = [[int(mp.nint(x)) for x in row] for row in entries]
        residual = max(abs(entries[i][j] - rounded[i][j]) for i in range(4) for j in range(4))
        if residual > INTEGRALITY_RESIDUAL:
            raise NonIntegralAction(
                f"sqrt({n}) action rounds with residual {mp.nstr(residual, 5)}"
            )
    sqrt_action = mat(rounded)
    # T^2 = n exactly
    t2 = matmul(sqrt_action, sqrt_action)
    if t2 != matscale(n, identity(4)):
        raise NonIntegralAction("rounded action does not square to n")

    order = QuadOrder.z_sqrt(n)
    form = AlternatingForm(standard_symplectic(2))
    data = PolarizedLatticeData(form=form, order=order, action=sqrt_action)
    eps = fundamental_unit(order).fundamental_unit
    unit_action = data.rho(eps)
    periods = PeriodMatrix(om, prec, ("g1", "gs1", "g2", "gs2"))
    return WeilRestrictionData(
        lattice_data=data,
        periods=periods,
        sqrt_action=sqrt_action,
        unit_action=unit_action,
        rounding_residual=float(residual),
    )


# ---------------------------------------------------------------------------
# elliptic invariants


def elliptic_invariants(
    w1,
    w2,
    precision_bits: int = DEFAULT_PRECISION_BITS,
):
    """(j, c4, c6) of the lattice Z w1 + Z w2 via Eisenstein q-series.

    Convention: tau = w2/w1 normalized to Im tau > 0 by flipping the sign of
    w2 if needed; then c4 = (2 pi / w1)^4 E4(tau) and c6 = (2 pi / w1)^6
    E6(tau).  This reproduces the printed invariants of the split example;
    j = c4^3 / Delta with Delta = (c4^3 - c6^2)/1728 is convention-free.
    """
    with mp.workprec(precision_bits + 32):
        w1, w2 = mpc(w1), mpc(w2)
        if w1 == 0 or w2 == 0:
            raise DegenerateLattice("zero period")
        tau = w2 / w1
        if abs(mp.im(tau)) < mpf(10) ** (-mp.dps // 2):
            raise DegenerateLattice("generators are R-dependent")
        if mp.im(tau) < 0:
            tau = -tau  # replace w2 by -w2; same lattice
        q = mp.expjpi(2 * tau)
        e4 = _eisenstein(q, 3, 240)
        e6 = _eisenstein(q, 5, -504)
        s = 2 * mp.pi / w1
        c4 = s ** 4 * e4
        c6 = s ** 6 * e6
        delta = (c4 ** 3 - c6 ** 2) / 1728
        j = c4 ** 3 / delta
        return j, c4, c6


def _eisenstein(q, power: int, coeff: int):
    """1 + coeff * sum n^power q^n / (1 - q^n), summed to working precision."""
    eps = mpf(2) ** (-mp.prec)
    total = mpf(0)
    n = 1
    qn = q
    while True:
        term = (mpf(n) ** power) * qn / (1 - qn)
        total += term
        if abs(term) < eps and n > 8:
            break
        n += 1
        qn *= q
        if n > 100000:
            raise RuntimeError("Eisenstein series failed to converge")
    return 1 + coeff * total
