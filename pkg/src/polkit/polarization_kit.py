"""The correspondence between invertible-sheaf classes and symmetric endos.

A polarized lattice bundles the matrix of a Riemann form E on a fixed
homology basis with the rational representation rho of the quadratic order
acting on that basis (column convention: the image of basis vector j is
column j).  Twisting a class by a symmetric endomorphism t is then pure
matrix algebra, form * rho(t), and principal polarizability reduces to the
norm equation plus an integrality test of form * rho(t)^{-1}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import quad_order as qo
from .errors import Degenerate, NotIntegral, NotPrincipal, NotSymmetricCompatible
from .exact_forms import (
    AlternatingForm,
    BasisChange,
    Matrix,
    identity,
    inverse,
    is_integral,
    is_unimodular,
    mat,
    matadd,
    matmul,
    matscale,
    pfaffian,
    polarization_type,
    symplectic_basis,
    transpose,
)
from .quad_order import OrderElement, QuadOrder


@dataclass(frozen=True)
class SymmetricEndo:
    """An element of the order viewed as a symmetric endomorphism."""

    element: OrderElement


def _as_element(t) -> OrderElement:
    if isinstance(t, SymmetricEndo):
        return t.element
    if isinstance(t, OrderElement):
        return t
    if isinstance(t, int):
        return OrderElement(t, 0)
    raise TypeError(f"not an order element: {t!r}")


@dataclass(frozen=True)
class PolarizedLatticeData:
    """Homology form E plus the order action rho on a rank-2g lattice."""

    form: AlternatingForm
    order: QuadOrder
    action: Matrix  # rho(omega), integral

    def __post_init__(self):
        a = mat(self.action)
        object.__setattr__(self, "action", a)
        if not is_integral(a):
            raise NotIntegral("rho(omega) must be integral")
        n = len(a)
        if n != self.form.rank:
            raise ValueError("action size does not match the form")
        tr, nm = self.order.omega_trace, self.order.omega_norm
        residual = matadd(
            matadd(matmul(a, a), matscale(-tr, a)), matscale(nm, identity(n))
        )
        if any(x != 0 for row in residual for x in row):
            raise ValueError("rho(omega) does not satisfy the minimal polynomial")
        # E(t x, y) = E(x, t y) for symmetric t, i.e. form*rho(omega) is skew
        m = matmul(self.form.matrix, a)
        if m != matscale(-1, transpose(m)):
            raise NotSymmetricCompatible("form * rho(omega) is not alternating")

    @property
    def rank(self) -> int:
        return self.form.rank

    def rho(self, t) -> Matrix:
        """Rational representation of t = a + b*omega."""
        e = _as_element(t)
        return matadd(matscale(e.a, identity(self.rank)), matscale(e.b, self.action))

    def change_basis(self, s: BasisChange) -> "PolarizedLatticeData":
        """Transport the data to the basis delta_i = sum_j s_ij gamma_j."""
        sm = s.matrix
        st = transpose(sm)
        stinv = inverse(st)
        return PolarizedLatticeData(
            form=AlternatingForm(matmul(matmul(sm, self.form.matrix), st)),
            order=self.order,
            action=matmul(matmul(stinv, self.action), st),
        )


@dataclass(frozen=True)
class ModuleStructure:
    """Identification of homology with O*g1 + O*g2.

    basis_map columns are the coordinates of (g1, omega*g1, g2, omega*g2)
    in the fixture homology basis.
    """

    order: QuadOrder
    basis_map: BasisChange


@dataclass(frozen=True)
class ClassificationReport:
    pi_count: int
    representatives: tuple[tuple[OrderElement, AlternatingForm], ...]
    verdicts: Optional[tuple[str, ...]] = None  # "Jacobian" | "Split"
    tau_count: Optional[int] = None
    sigma_count: Optional[int] = None
    provenance: str = "exact"

    def __post_init__(self):
        if self.pi_count != len(self.representatives):
            raise ValueError("pi_count must equal the number of representatives")
        if self.verdicts is not None:
            if len(self.verdicts) != self.pi_count:
                raise ValueError("one verdict per representative")
            sigma = sum(1 for v in self.verdicts if v == "Split")
            if sigma > 1:
                raise ValueError("more than one split class contradicts sigma <= 1")


# ---------------------------------------------------------------------------
# operations


def twist_form(data: PolarizedLatticeData, t, scale=1) -> AlternatingForm:
    """Matrix of the twisted class: scale * (form * rho(t))."""
    m = matscale(scale, matmul(data.form.matrix, data.rho(t)))
    if m != matscale(-1, transpose(m)):
        raise NotSymmetricCompatible("form * rho(t) is not alternating")
    return AlternatingForm(m, data.form.basis_labels)


def degree_of(data: PolarizedLatticeData, t) -> int:
    """deg of the twist: |Pf(form)| * |Norm(t)|, cross-checked on the matrix."""
    e = _as_element(t)
    base = abs(pfaffian(data.form.matrix))
    deg = base * abs(qo.norm(e, data.order))
    twisted = matscale(1, matmul(data.form.matrix, data.rho(t)))
    if is_integral(twisted) and is_integral(data.form.matrix):
        assert abs(pfaffian(twisted)) == deg
    if deg.denominator != 1:
        raise NotIntegral("degree is defined for integral forms")
    return int(deg)


def is_principally_polarizable(
    data: PolarizedLatticeData,
) -> tuple[bool, Optional[OrderElement]]:
    """Effective criterion: some totally positive t with Norm(t) = deg and
    form * rho(t)^{-1} unimodular integral.

    Witnesses are drawn from the norm-equation solver, one per unit-square
    class, so the search is finite.  Imaginary orders only admit rational t,
    so only t = deg itself can work there.
    """
    m = data.form.matrix
    if not is_integral(m):
        raise NotIntegral("criterion requires an integral form")
    d = abs(pfaffian(m))
    if d == 0:
        raise Degenerate("form is degenerate")
    d = int(d)
    candidates: list[OrderElement] = []
    # t = m0 * t0 with t0 primitive of norm d/m0^2 covers every t of norm d
    for m0 in range(1, d + 1):
        if m0 * m0 > d:
            break
        if d % (m0 * m0) != 0:
            continue
        d0 = d // (m0 * m0)
        if data.order.is_real:
            layer = qo.solve_norm_equation(data.order, d0)
        else:
            r = _isqrt_or_none(d0)
            layer = [OrderElement(r, 0)] if r is not None else []
        candidates.extend(OrderElement(m0 * t.a, m0 * t.b) for t in layer)
    for t in candidates:
        w = matmul(m, inverse(data.rho(t)))
        if is_integral(w) and is_unimodular(w):
            return True, t
    return False, None


def _isqrt_or_none(d: int) -> Optional[int]:
    from math import isqrt

    r = isqrt(d)
    return r if r * r == d else None


def principal_representatives(data: PolarizedLatticeData) -> ClassificationReport:
    """One twisted form per class of totally positive units mod squares."""
    if not data.form.is_integral():
        raise NotPrincipal("principal form must be integral")
    ptype = polarization_type(data.form.matrix)
    if not ptype.is_principal():
        raise NotPrincipal(f"form has type {ptype}")
    classes = qo.polarization_classes(data.order)
    reps = tuple((u, twist_form(data, u)) for u in classes.representatives)
    return ClassificationReport(pi_count=classes.order, representatives=reps)


def trace_degree_one_form(module: ModuleStructure) -> AlternatingForm:
    """Degree-one alternating form from the trace pairing.

    On the module basis (g1, omega*g1, g2, omega*g2) the form pairs the two
    O-lines by Tr(alpha * beta / sqrt(disc)), which makes the off-diagonal
    block [[0, 1], [1, tr(omega)]] of determinant -1; the full matrix always
    has determinant one.  The result is pulled back through basis_map.
    """
    order = module.order
    if not order.is_real:
        raise ValueError("trace form construction requires a real order")
    tr = order.omega_trace
    b = mat([[0, 1], [1, tr]])
    z = [[Fraction(0)] * 2 for _ in range(2)]
    e0 = mat(
        [
            list(z[0]) + list(b[0]),
            list(z[1]) + list(b[1]),
            [-x for x in b[0]] + list(z[0]),
            [-x for x in b[1]] + list(z[1]),
        ]
    )
    s = module.basis_map.matrix
    sinv = inverse(s)
    pulled = matmul(matmul(transpose(sinv), e0), sinv)
    from .exact_forms import det

    assert det(pulled) == 1
    return AlternatingForm(pulled)


def classification_report(
    data: PolarizedLatticeData,
    periods=None,
    digits: int = 30,
    vanish_threshold: Optional[float] = None,
) -> ClassificationReport:
    """Count principal polarization classes and, with periods, type each one.

    The count comes from the unit group alone.  When a period matrix on the
    same homology basis is supplied, each representative form is normalized
    to a symplectic basis, the periods are recombined accordingly, and the
    even theta constants at the resulting Siegel point decide Jacobian
    against product-of-elliptic-curves.  tau + sigma = pi with sigma <= 1.
    """
    # normalize to a principal base form: primitive part first, then a
    # norm-equation witness if the primitive type is not (1,...,1)
    from .exact_forms import primitive_part

    prim, _ = primitive_part(data.form.matrix)
    if polarization_type(prim.matrix).is_principal():
        base = PolarizedLatticeData(prim, data.order, data.action)
    else:
        prim_data = PolarizedLatticeData(prim, data.order, data.action)
        ok, t = is_principally_polarizable(prim_data)
        if not ok:
            raise NotPrincipal("data admits no principal polarization")
        m0 = matmul(prim.matrix, inverse(data.rho(t)))
        base = PolarizedLatticeData(AlternatingForm(m0), data.order, data.action)

    report = principal_representatives(base)
    if periods is None:
        return report

    from . import theta_igusa, torus_analytic

    verdicts = []
    for _, form in report.representatives:
        s = symplectic_basis(form.matrix)
        moved = torus_analytic.apply_basis_change(periods, s)
        try:
            z = torus_analytic.siegel_from_periods(moved)
        except Exception:
            # wrong global orientation of E: the opposite form is the ample one
            s = symplectic_basis(matscale(-1, form.matrix))
            moved = torus_analytic.apply_basis_change(periods, s)
            z = torus_analytic.siegel_from_periods(moved)
        verdicts.append(
            theta_igusa.decomposition_verdict(z, digits, vanish_threshold)
        )
    sigma = sum(1 for v in verdicts if v == "Split")
    return ClassificationReport(
        pi_count=report.pi_count,
        representatives=report.representatives,
        verdicts=tuple(verdicts),
        tau_count=report.pi_count - sigma,
        sigma_count=sigma,
        provenance="numeric-theta",
    )
