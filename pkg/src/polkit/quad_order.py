"""Arithmetic of quadratic orders R = End(A).

An order is described by the fundamental discriminant D of its field and a
conductor f, with generator omega:

    D = 0 mod 4:  omega = f * sqrt(D/4)        (trace 0,  norm -f^2 D/4)
    D = 1 mod 4:  omega = f * (1 + sqrt(D))/2  (trace f,  norm f^2 (1-D)/4)

Elements are a + b*omega with integer a, b.  All sign tests are exact
integer arithmetic; no floating point enters this module.  Real units come
from the continued-fraction expansion of the quadratic irrationality sqrt(N)
(Pell equation), refined by an exact cube-root extraction for odd
discriminants where the half-integer unit exists (eps^3 always lies in
Z[sqrt(disc)]).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

from .errors import ImaginaryOrder


def _squarefree_part(n: int) -> int:
    m, d = 1, 2
    n = abs(n)
    while d * d <= n:
        while n % (d * d) == 0:
            n //= d * d
        if n % d == 0:
            n //= d
            m *= d
        d += 1
    return m * n


def is_fundamental_discriminant(d: int) -> bool:
    if d in (0, 1):
        return False
    if d % 4 == 1:
        return _squarefree_part(d) == abs(d)
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and _squarefree_part(m) == abs(m)
    return False


@dataclass(frozen=True)
class QuadOrder:
    """Quadratic order of discriminant conductor^2 * field_disc."""

    field_disc: int
    conductor: int = 1

    def __post_init__(self):
        if not is_fundamental_discriminant(self.field_disc):
            raise ValueError(f"{self.field_disc} is not a fundamental discriminant")
        if self.conductor < 1:
            raise ValueError("conductor must be positive")

    @classmethod
    def z_sqrt(cls, n: int) -> "QuadOrder":
        """The order Z[sqrt(n)] for a nonsquare integer n."""
        sf = _squarefree_part(n) * (1 if n > 0 else -1)
        if n == 0 or isqrt(abs(n)) ** 2 == abs(n) and n > 0:
            raise ValueError("n must be a nonsquare")
        f = isqrt(abs(n) // abs(sf))
        if sf % 4 == 1:
            return cls(sf, 2 * f)
        return cls(4 * sf, f)

    @property
    def disc(self) -> int:
        return self.conductor * self.conductor * self.field_disc

    @property
    def is_real(self) -> bool:
        return self.field_disc > 0

    @property
    def omega_trace(self) -> int:
        return self.conductor if self.field_disc % 4 == 1 else 0

    @property
    def omega_norm(self) -> int:
        f2 = self.conductor * self.conductor
        if self.field_disc % 4 == 1:
            return f2 * (1 - self.field_disc) // 4
        return -f2 * self.field_disc // 4

    # --- element arithmetic (elements are OrderElement coordinate pairs) ---

    def one(self) -> "OrderElement":
        return OrderElement(1, 0)

    def omega(self) -> "OrderElement":
        return OrderElement(0, 1)

    def add(self, x: "OrderElement", y: "OrderElement") -> "OrderElement":
        return OrderElement(x.a + y.a, x.b + y.b)

    def neg(self, x: "OrderElement") -> "OrderElement":
        return OrderElement(-x.a, -x.b)

    def mul(self, x: "OrderElement", y: "OrderElement") -> "OrderElement":
        # omega^2 = tr*omega - nm
        tr, nm = self.omega_trace, self.omega_norm
        return OrderElement(
            x.a * y.a - x.b * y.b * nm,
            x.a * y.b + x.b * y.a + x.b * y.b * tr,
        )

    def pow(self, x: "OrderElement", k: int) -> "OrderElement":
        if k < 0:
            return self.pow(self.inv_unit(x), -k)
        acc = self.one()
        while k:
            if k & 1:
                acc = self.mul(acc, x)
            x = self.mul(x, x)
            k >>= 1
        return acc

    def inv_unit(self, x: "OrderElement") -> "OrderElement":
        n = norm(x, self)
        if abs(n) != 1:
            raise ValueError("not a unit")
        c = conjugate(x, self)
        return c if n == 1 else self.neg(c)

    def element_str(self, x: "OrderElement") -> str:
        """Pretty form such as '2+√3' or '(5+√17)/2'."""
        d, f = self.field_disc, self.conductor
        if d % 4 == 0:
            return _surd_str(2 * x.a, 2 * x.b * f, d // 4, 2)
        return _surd_str(2 * x.a + x.b * f, x.b * f, d, 2)

    def __str__(self) -> str:
        if self.field_disc % 4 == 0 and self.conductor == 1:
            return f"Z[√{self.field_disc // 4}]"
        if self.conductor == 1:
            return f"Z[(1+√{self.field_disc})/2]"
        return f"order of discriminant {self.disc} in Q(√{self.field_disc})"


def _surd_str(p: int, q: int, m: int, den: int) -> str:
    """(p + q*sqrt(m))/den reduced and printed."""
    g = gcd(gcd(abs(p), abs(q)), den)
    if g:
        p, q, den = p // g, q // g, den // g
    root = f"√{m}"
    if q == 0:
        return str(p) if den == 1 else f"{p}/{den}"
    qs = root if q == 1 else (f"-{root}" if q == -1 else f"{q}{root}")
    body = qs if p == 0 else (f"{p}+{qs}" if not qs.startswith("-") else f"{p}{qs}")
    return body if den == 1 else f"({body})/{den}"


@dataclass(frozen=True)
class OrderElement:
    """a + b*omega in a quadratic order; the order is supplied per operation."""

    a: int
    b: int

    def __post_init__(self):
        object.__setattr__(self, "a", int(self.a))
        object.__setattr__(self, "b", int(self.b))


@dataclass(frozen=True)
class UnitGroupData:
    fundamental_unit: OrderElement
    norm_of_fundamental_unit: int
    torsion: int  # order of the root-of-unity subgroup


@dataclass(frozen=True)
class PolarizationClassGroup:
    """(R_0)_+^* / R_0^{*2}: representatives of totally positive unit classes."""

    representatives: tuple[OrderElement, ...]

    @property
    def order(self) -> int:
        return len(self.representatives)


# ---------------------------------------------------------------------------
# basic maps


def norm(x: OrderElement, order: QuadOrder) -> int:
    tr, nm = order.omega_trace, order.omega_norm
    return x.a * x.a + x.a * x.b * tr + x.b * x.b * nm


def trace(x: OrderElement, order: QuadOrder) -> int:
    return 2 * x.a + x.b * order.omega_trace


def conjugate(x: OrderElement, order: QuadOrder) -> OrderElement:
    return OrderElement(x.a + x.b * order.omega_trace, -x.b)


def _embedding_sign(A: int, B: int, disc: int) -> int:
    """Exact sign of A + B*sqrt(disc), disc > 0 nonsquare."""
    if B == 0:
        return 0 if A == 0 else (1 if A > 0 else -1)
    if A == 0:
        return 1 if B > 0 else -1
    if A > 0 and B > 0:
        return 1
    if A < 0 and B < 0:
        return -1
    lhs, rhs = A * A, B * B * disc
    if lhs == rhs:
        return 0
    if A > 0:  # B < 0
        return 1 if lhs > rhs else -1
    return -1 if lhs > rhs else 1


def embedding_compare(x: OrderElement, y: OrderElement, order: QuadOrder) -> int:
    """Sign of sigma1(x - y) under the fixed embedding omega -> (tr+sqrt(disc))/2."""
    a, b = x.a - y.a, x.b - y.b
    return _embedding_sign(2 * a + b * order.omega_trace, b, order.disc)


def is_totally_positive(x: OrderElement, order: QuadOrder) -> bool:
    """Both real embeddings positive (real case); positive rational otherwise."""
    if not order.is_real:
        return x.b == 0 and x.a > 0
    A = 2 * x.a + x.b * order.omega_trace
    B = x.b
    return (
        _embedding_sign(A, B, order.disc) > 0
        and _embedding_sign(A, -B, order.disc) > 0
    )


# ---------------------------------------------------------------------------
# continued fractions and units


def _pell_fundamental(N: int) -> tuple[int, int, int]:
    """Least (x, y), y >= 1, with x^2 - N y^2 = +-1, via the CF of sqrt(N).

    Returns (x, y, x^2 - N y^2).  The solution is the convergent just before
    the end of the first period (detected by a_k = 2*a_0 with Q_k = 1).
    """
    a0 = isqrt(N)
    if a0 * a0 == N:
        raise ValueError("N must be nonsquare")
    h_prev, h = 1, a0
    k_prev, k = 0, 1
    P, Q = a0, N - a0 * a0
    for _ in range(10 ** 6):
        a = (P + a0) // Q
        if a == 2 * a0 and Q == 1:
            return h, k, h * h - N * k * k
        h_prev, h = h, a * h + h_prev
        k_prev, k = k, a * k + k_prev
        P = a * Q - P
        Q = (N - P * P) // Q
    raise RuntimeError("Pell continued fraction did not close")


def _icbrt(n: int) -> int:
    """Floor integer cube root for n >= 0."""
    if n < 2:
        return n
    x = int(round(n ** (1 / 3))) + 2
    while x * x * x > n:
        x -= 1
    return x


def fundamental_unit(order: QuadOrder) -> UnitGroupData:
    """Smallest unit > 1 of a real quadratic order under the fixed embedding.

    disc = 0 mod 4: the Pell equation for Z[sqrt(disc/4)] gives the unit
    directly.  disc = 1 mod 4: Pell for sqrt(disc) gives eps1 in Z[sqrt(disc)];
    the order unit eps satisfies eps or eps^3 = eps1, and a half-integer cube
    root (t + u*sqrt(disc))/2 is detected exactly through
    trace(eps1) = t^3 - 3*n*t and u^2 = (t^2 - 4n)/disc.
    """
    if not order.is_real:
        raise ImaginaryOrder("imaginary orders have no fundamental unit")
    disc = order.disc
    if disc % 4 == 0:
        x, y, n = _pell_fundamental(disc // 4)
        t, u = 2 * x, y  # sqrt(disc) = 2*sqrt(disc/4)
    else:
        x, y, n = _pell_fundamental(disc)
        t, u = 2 * x, 2 * y
        t1 = 2 * x  # trace of eps1
        tc = _icbrt(max(t1, 0))
        for cand in (tc - 1, tc, tc + 1, tc + 2):
            if cand <= 0:
                continue
            if cand ** 3 - 3 * n * cand == t1:
                uu2, rem = divmod(cand * cand - 4 * n, disc)
                if rem == 0:
                    uroot = isqrt(uu2)
                    if uroot * uroot == uu2 and uroot > 0:
                        t, u = cand, uroot
                        break
    # (t + u*sqrt(disc))/2 in coordinates a + b*omega
    tr = order.omega_trace
    assert (t - u * tr) % 2 == 0
    eps = OrderElement((t - u * tr) // 2, u)
    n_eps = norm(eps, order)
    assert abs(n_eps) == 1, (order, eps, n_eps)
    assert embedding_compare(eps, order.one(), order) > 0
    return UnitGroupData(fundamental_unit=eps, norm_of_fundamental_unit=n_eps, torsion=2)


def least_unit_power_in_suborder(order: QuadOrder) -> tuple[OrderElement, int]:
    """Cross-check path: least power of the maximal-order unit lying in order.

    Returns (unit, k) with unit = eps_max^k expressed in order coordinates.
    """
    if not order.is_real:
        raise ImaginaryOrder("imaginary orders have no fundamental unit")
    maximal = QuadOrder(order.field_disc, 1)
    eps = fundamental_unit(maximal).fundamental_unit
    f = order.conductor
    cur = eps
    for k in range(1, 10 ** 5):
        # cur = a + b*omega_max lies in Z + f*Z*omega_max  iff  f | b
        if cur.b % f == 0:
            if order.field_disc % 4 == 1:
                return OrderElement(cur.a, cur.b // f), k
            return OrderElement(cur.a, cur.b // f), k
        cur = maximal.mul(cur, eps)
    raise RuntimeError("no unit power landed in the suborder")


def unit_torsion_order(order: QuadOrder) -> int:
    """Order of the root-of-unity subgroup: 2 except for disc -3 and -4."""
    if order.is_real:
        return 2
    if order.disc == -4:
        return 4
    if order.disc == -3:
        return 6
    return 2


def polarization_classes(order: QuadOrder) -> PolarizationClassGroup:
    """(R_0)_+^* / R_0^{*2} for quadratic R.

    Real case: trivial when a norm -1 unit exists, else {1, eps} with eps the
    (automatically totally positive) fundamental unit.  Imaginary case
    (R_0 = Z): trivial.
    """
    one = OrderElement(1, 0)
    if not order.is_real:
        return PolarizationClassGroup((one,))
    units = fundamental_unit(order)
    if units.norm_of_fundamental_unit == -1:
        return PolarizationClassGroup((one,))
    eps = units.fundamental_unit
    assert is_totally_positive(eps, order)
    return PolarizationClassGroup((one, eps))


# ---------------------------------------------------------------------------
# norm equations


def _sqrt_exact(n: int) -> int | None:
    if n < 0:
        return None
    r = isqrt(n)
    return r if r * r == n else None


def _sigma1_sq_cmp(x: OrderElement, bound: int, order: QuadOrder) -> int:
    """Exact sign of sigma1(x)^2 - bound (bound a nonnegative integer)."""
    x2 = order.mul(x, x)
    A = 2 * x2.a + x2.b * order.omega_trace - 2 * bound
    return _embedding_sign(A, x2.b, order.disc)


def solve_norm_equation(order: QuadOrder, d: int) -> list[OrderElement]:
    """Totally positive primitive t with Norm(t) = d, one per unit-square class.

    Enumerates coordinates with 0 < sigma_i(t) <= M where M >= sqrt(d) *
    sigma1(eps^2) (taking M^2 = d * trace(eps^2)^2 keeps the bound exact),
    groups the hits into eps^2-orbits, and returns one canonical
    representative per class: the member with sigma1(t) in
    [sqrt(d), sqrt(d) * sigma1(eps^2)).  Every class meets that window by the
    standard fundamental-domain argument, and then sigma2 = d/sigma1 <=
    sqrt(d) <= M, so the enumeration box is complete.
    """
    if d == 0:
        raise ValueError("d must be nonzero")
    if not order.is_real:
        raise ImaginaryOrder("norm-equation search is for real orders")
    if d < 0:
        return []  # totally positive elements have positive norm

    disc = order.disc
    tr = order.omega_trace
    eps = fundamental_unit(order).fundamental_unit
    eta = order.pow(eps, 2)  # totally positive generator of the unit squares
    eta_inv = order.inv_unit(eta)

    tr_eta = trace(eta, order)
    M2 = d * tr_eta * tr_eta
    bmax = isqrt(M2 // disc) + 1

    hits: set[tuple[int, int]] = set()
    for b in range(-bmax, bmax + 1):
        # norm = a^2 + a b tr + b^2 nm = d  <=>  (2a + b tr)^2 = b^2 disc + 4d
        s = _sqrt_exact(b * b * disc + 4 * d)
        if s is None:
            continue
        for pm in {s, -s}:
            twoa = pm - b * tr
            if twoa % 2 != 0:
                continue
            t = OrderElement(twoa // 2, b)
            if not is_totally_positive(t, order):
                continue
            if gcd(abs(t.a), abs(t.b)) > 1:
                continue  # imprimitive: t/m in the order for m > 1
            if _sigma1_sq_cmp(t, M2, order) > 0:
                continue
            hits.add((t.a, t.b))

    canonical: list[OrderElement] = []
    seen: set[tuple[int, int]] = set()
    for key in sorted(hits):
        if key in seen:
            continue
        orbit = [key]
        seen.add(key)
        for step in (eta, eta_inv):
            cur = OrderElement(*key)
            while True:
                cur = order.mul(cur, step)
                k2 = (cur.a, cur.b)
                if k2 in hits and k2 not in seen:
                    orbit.append(k2)
                    seen.add(k2)
                else:
                    break
        chosen = None
        for cand in orbit:
            t = OrderElement(*cand)
            if _sigma1_sq_cmp(t, d, order) >= 0:
                if _sigma1_sq_cmp(order.mul(t, eta_inv), d, order) < 0:
                    chosen = t
                    break
        if chosen is None:
            t = OrderElement(*orbit[0])
            guard = 0
            while _sigma1_sq_cmp(t, d, order) < 0:
                t = order.mul(t, eta)
                guard += 1
                assert guard < 64
            while _sigma1_sq_cmp(order.mul(t, eta_inv), d, order) >= 0:
                t = order.mul(t, eta_inv)
                guard += 1
                assert guard < 64
            chosen = t
        canonical.append(chosen)

    canonical.sort(key=lambda t: (t.b, t.a))
    return canonical
