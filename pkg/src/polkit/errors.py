"""Exception hierarchy for polkit.

Every error raised on a violated precondition or invariant derives from
PolkitError, so callers (and the CLI) can distinguish domain failures from
programming errors.
"""


class PolkitError(Exception):
    """Base class for all domain errors."""


# --- exact_forms ---

class NotAlternating(PolkitError):
    """Matrix is not skew-symmetric with zero diagonal."""


class OddDimension(PolkitError):
    """Alternating-form operation on an odd-sized matrix."""


class Degenerate(PolkitError):
    """Form has determinant zero."""


class NotIntegral(PolkitError):
    """A matrix required to be integral has a non-integer entry."""


# --- quad_order ---

class ImaginaryOrder(PolkitError):
    """Real-quadratic operation applied to an imaginary order."""


# --- polarization_kit ---

class NotSymmetricCompatible(PolkitError):
    """form * rho(t) is not alternating; t is not symmetric for this data."""


class NotPrincipal(PolkitError):
    """Operation requires a principal (type (1,...,1)) form."""


# --- torus_analytic ---

class NotSymplecticOrder(PolkitError):
    """Omega_1^{-1} Omega_2 is not a Siegel point; wrong column ordering."""


class InfiniteOrder(PolkitError):
    """Torsion generator has an irrational coordinate."""


class NonIntegralAction(PolkitError):
    """Numerically computed action matrix does not round to integers."""


class DegenerateLattice(PolkitError):
    """Lattice generators are linearly dependent over R."""


# --- theta_igusa ---

class PrecisionUnreachable(PolkitError):
    """Theta truncation radius for the requested digits exceeds the cap."""


class AmbiguousVanishing(PolkitError):
    """Two or more even theta constants vanish; degenerate Siegel point."""


class SingularCurve(PolkitError):
    """Sextic has a repeated root; not a smooth genus-2 model."""


class ZeroI10(PolkitError):
    """Absolute invariants undefined: I10 = 0."""


# --- ffield_verify ---

class BadReduction(PolkitError):
    """Curve has singular reduction at p."""


class FieldTooLarge(PolkitError):
    """Point count requested over a field beyond the brute-force cap."""


class Inert(PolkitError):
    """d is not a square mod p; no reduction of sqrt(d) exists."""


class NoMatch(PolkitError):
    """Neither candidate curve matches the elliptic Frobenius square."""


class BothMatch(PolkitError):
    """Both candidate curves match; the test prime is inconclusive."""


# --- cli_fixtures ---

class SchemaError(PolkitError):
    """Fixture document violates the schema; message carries the location."""
