"""Twisted slopes, central charges and Gieseker/tilt thresholds.

Everything is exact: inputs are coerced to :class:`fractions.Fraction` and
square roots never appear.  Thresholds are returned squared, so a value
``N2`` is used as ``k**2 >= N2``.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering

from .errors import K3OrbError, ShapeError
from .lattice import bilinear


@total_ordering
class _PositiveInfinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"

    def __str__(self):
        return "+inf"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("k3orb.INFINITY")

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self


INFINITY = _PositiveInfinity()


class _AlwaysEqual:
    def __repr__(self):
        return "ALWAYS_EQUAL"


ALWAYS_EQUAL = _AlwaysEqual()


def _q(x):
    if isinstance(x, float):
        raise TypeError("floats are not accepted; use int, Fraction or 'p/q' strings")
    return Fraction(x)


def _qvec(v):
    return tuple(_q(x) for x in v)


@dataclass(frozen=True)
class NumericalClass:
    ch0: int
    ch1: tuple
    ch2: Fraction
    mu_plus: object = None

    def __post_init__(self):
        object.__setattr__(self, "ch0", _q(self.ch0))
        object.__setattr__(self, "ch1", _qvec(self.ch1))
        object.__setattr__(self, "ch2", _q(self.ch2))
        if self.mu_plus is not None and self.mu_plus is not INFINITY:
            object.__setattr__(self, "mu_plus", _q(self.mu_plus))

    def __add__(self, other):
        return NumericalClass(
            self.ch0 + other.ch0,
            tuple(a + b for a, b in zip(self.ch1, other.ch1)),
            self.ch2 + other.ch2,
        )

    def __sub__(self, other):
        return self + (-1) * other

    def __mul__(self, t):
        return NumericalClass(t * self.ch0, tuple(t * x for x in self.ch1), t * self.ch2)

    __rmul__ = __mul__

    @classmethod
    def from_mukai(cls, v):
        """Chern data of a Mukai vector; marks carry no NS degree and drop out."""
        return cls(v.r, v.beta, v.n - v.r)


@dataclass(frozen=True)
class StabilityParams:
    """Polarization ``omega``, twist ``D`` and tilt parameter ``k``.

    Threshold computations ignore ``k``.
    """

    omega: tuple
    k: Fraction = Fraction(1)
    D: tuple = None

    def __post_init__(self):
        object.__setattr__(self, "omega", _qvec(self.omega))
        object.__setattr__(self, "k", _q(self.k))
        if self.k <= 0:
            raise K3OrbError("k must be positive")
        D = (0,) * len(self.omega) if self.D is None else self.D
        object.__setattr__(self, "D", _qvec(D))
        if len(self.D) != len(self.omega):
            raise ShapeError("D and omega lengths differ")


@dataclass(frozen=True)
class CentralChargeValue:
    re: Fraction
    im: Fraction

    def __add__(self, other):
        return CentralChargeValue(self.re + other.re, self.im + other.im)

    def is_zero(self):
        return self.re == 0 and self.im == 0


@dataclass(frozen=True)
class ThresholdSquared:
    value: Fraction

    def admits(self, k):
        """True when ``k`` lies at or beyond the threshold."""
        return _q(k) ** 2 >= self.value


def _omega_square(params, gram):
    if len(params.omega) != len(gram):
        raise ShapeError("omega length does not match gram")
    w2 = bilinear(params.omega, params.omega, gram)
    if w2 <= 0:
        raise K3OrbError(f"omega is not ample: omega^2 = {w2}")
    return w2


def twist_chern(c, D, gram):
    """Chern character of ``E * e^{-D}``."""
    D = _qvec(D)
    if len(D) != len(gram) or len(c.ch1) != len(gram):
        raise ShapeError("class and twist must match the gram rank")
    ch1 = tuple(x - d * c.ch0 for x, d in zip(c.ch1, D))
    ch2 = c.ch2 - bilinear(D, c.ch1, gram) + Fraction(bilinear(D, D, gram), 2) * c.ch0
    return NumericalClass(c.ch0, ch1, ch2, c.mu_plus)


def _twisted_numbers(c, params, gram):
    """``(ch0, omega.ch1^D, ch2^D, omega^2)``."""
    w2 = _omega_square(params, gram)
    t = twist_chern(c, params.D, gram)
    return t.ch0, bilinear(params.omega, t.ch1, gram), t.ch2, w2


def slope_mu(c, params, gram):
    r, w, _, w2 = _twisted_numbers(c, params, gram)
    if r == 0:
        return INFINITY
    return w / (w2 * r)


def central_charge(c, params, gram):
    r, w, ch2, w2 = _twisted_numbers(c, params, gram)
    return CentralChargeValue(-ch2 + params.k ** 2 / 2 * w2 * r, w)


def tilt_slope(c, params, gram):
    r, w, ch2, w2 = _twisted_numbers(c, params, gram)
    if w == 0:
        return INFINITY
    return (ch2 - params.k ** 2 / 2 * w2 * r) / w


def discriminant_bar(c, params, gram):
    r, w, ch2, w2 = _twisted_numbers(c, params, gram)
    return w * w - 2 * w2 * r * ch2


def bogomolov_bar_ok(c, params, gram):
    return discriminant_bar(c, params, gram) >= 0


def discriminant_plain(c, D, gram):
    t = twist_chern(c, D, gram)
    return bilinear(t.ch1, t.ch1, gram) - 2 * t.ch0 * t.ch2


def bogomolov_ok(c, D, gram):
    return discriminant_plain(c, D, gram) >= 0


def hodge_index_check(L, omega, gram):
    L, omega = _qvec(L), _qvec(omega)
    w2 = bilinear(omega, omega, gram)
    if w2 <= 0:
        raise K3OrbError(f"omega is not ample: omega^2 = {w2}")
    lw = bilinear(L, omega, gram)
    return bilinear(L, L, gram) * w2 <= lw * lw


def _torsion_free_numbers(c, params, gram):
    r, w, ch2, w2 = _twisted_numbers(c, params, gram)
    if r <= 0:
        raise K3OrbError("threshold needs a positive-rank class")
    if w <= 0:
        raise K3OrbError("threshold needs omega.ch1^D > 0")
    return r, w, ch2, w2


def threshold_gieseker_from_tilt(c, params, gram):
    """Squared bound beyond which tilt-semistability forces Gieseker semistability.

    ``c.mu_plus`` is the maximal Harder-Narasimhan slope; it equals the slope
    for slope-semistable sheaves.
    """
    if c.mu_plus is None:
        raise K3OrbError("mu_plus is required")
    if c.mu_plus is INFINITY:
        raise K3OrbError("mu_plus must be finite for a torsion-free class")
    r, w, ch2, w2 = _torsion_free_numbers(c, params, gram)
    mu = w / (w2 * r)
    if c.mu_plus < mu:
        raise K3OrbError("mu_plus is smaller than the slope of the class")
    value = w ** 3 / w2 ** 2 + 2 * r * (c.mu_plus - mu) * ch2
    return ThresholdSquared(max(value, Fraction(0)))


def n0_squared(c, params, gram):
    """Squared bound past which a maximal destabilizer has rank at most rk E."""
    r, w, ch2, w2 = _torsion_free_numbers(c, params, gram)
    mu = w / (w2 * r)
    disc = w * w - 2 * w2 * r * ch2
    return max(disc / (w2 * r) - mu * mu * r / (w2 + r), Fraction(0))


def threshold_tilt_from_gieseker(c, params, gram):
    """Squared bound beyond which Gieseker semistability forces tilt-semistability."""
    r, w, ch2, w2 = _torsion_free_numbers(c, params, gram)
    mu = w / (w2 * r)
    first = mu ** 3 * w2 * r * r - 2 * mu * r * ch2
    return ThresholdSquared(max(first, n0_squared(c, params, gram)))


def wall_k_squared(c1, c2, params, gram):
    """Solve ``nu_k(c1) = nu_k(c2)`` for ``k^2``.

    Returns a positive Fraction, :data:`ALWAYS_EQUAL` when the slopes agree
    for every ``k``, or ``None`` when no positive solution exists.
    """
    r1, w1, a1, w2 = _twisted_numbers(c1, params, gram)
    r2, w2_, a2, _ = _twisted_numbers(c2, params, gram)
    if w1 == 0 and w2_ == 0:
        raise K3OrbError("both tilt slopes are infinite; no wall")
    # (a1 - k^2/2 w2 r1) w2_ = (a2 - k^2/2 w2 r2) w1 is linear in k^2
    lhs = a1 * w2_ - a2 * w1
    coeff = Fraction(w2, 2) * (r1 * w2_ - r2 * w1)
    if coeff == 0:
        return ALWAYS_EQUAL if lhs == 0 else None
    k2 = lhs / coeff
    return k2 if k2 > 0 else None


def reduced_hilbert_poly(c, params, gram, chi_O=Fraction(2)):
    """Twisted Hilbert polynomial normalized to leading coefficient 1.

    Coefficients are listed from the top degree down.  Positive rank gives
    ``m^2 w2/2 + (omega.ch1^D / r) m + ch2^D / r + chi_O`` before
    normalization; rank 0 gives ``(omega.ch1^D) m + ch2^D``; a class with
    no rank and no degree gives the constant ``(1,)``.
    """
    r, w, ch2, w2 = _twisted_numbers(c, params, gram)
    chi_O = _q(chi_O)
    if r > 0:
        lead = Fraction(w2, 2)
        return (Fraction(1), w / r / lead, (ch2 / r + chi_O) / lead)
    if r < 0:
        raise K3OrbError("reduced Hilbert polynomial needs nonnegative rank")
    if w > 0:
        return (Fraction(1), ch2 / w)
    if w < 0:
        raise K3OrbError("rank-0 class with negative degree")
    return (Fraction(1),)


def compare_reduced(p1, p2):
    """Gieseker comparison for ``m >> 0``: -1, 0 or 1.

    Lower-degree polynomials are larger; equal degrees compare
    lexicographically from the top coefficient down.
    """
    if len(p1) != len(p2):
        return 1 if len(p1) < len(p2) else -1
    for a, b in zip(p1, p2):
        if a != b:
            return -1 if a < b else 1
    return 0


def phase_equal(z1, z2):
    if z1.is_zero() or z2.is_zero():
        raise K3OrbError("phase of zero is undefined")
    if z1.re * z2.im != z2.re * z1.im:
        return False
    return z1.re * z2.re + z1.im * z2.im > 0
