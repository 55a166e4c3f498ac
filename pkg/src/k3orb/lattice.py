"""Mukai lattice and ADE root lattice arithmetic.

Coordinates follow the integral model: an orbifold Mukai vector is
``(r, beta, marks, n)`` where ``beta`` lives in the invariant Neron-Severi
basis and ``marks`` holds one root-lattice vector per singular point.  The
NS block and the mark blocks are orthogonal; the mark block pairs with the
negated Cartan matrix.

Cartan matrices use Bourbaki node labels:

* ``A_n``: the chain 1-2-...-n.
* ``D_n``: the chain 1-2-...-(n-2), with nodes n-1 and n both joined to n-2.
* ``E_6, E_7, E_8``: the chain 1-3-4-5-...-n, with node 2 joined to node 4.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
import re

from .errors import ShapeError, K3OrbError


def bilinear(x, y, gram):
    """Return ``x^T gram y``; exact for int and Fraction entries."""
    if len(x) != len(gram) or len(y) != len(gram):
        raise ShapeError(
            f"vector lengths {len(x)}, {len(y)} do not match form of rank {len(gram)}"
        )
    total = 0
    for i, xi in enumerate(x):
        if not xi:
            continue
        row = gram[i]
        s = 0
        for j, yj in enumerate(y):
            if yj:
                s += row[j] * yj
        total += xi * s
    return total


def _as_matrix(rows):
    return tuple(tuple(r) for r in rows)


def _is_symmetric(m):
    n = len(m)
    return all(len(row) == n for row in m) and all(
        m[i][j] == m[j][i] for i in range(n) for j in range(i)
    )


def _leading_minors(m):
    """Leading principal minors by exact Gaussian elimination.

    Stops at the first vanishing minor, which is reported as 0.
    """
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    minors = []
    det = Fraction(1)
    for k in range(n):
        if a[k][k] == 0:
            minors.append(Fraction(0))
            return minors
        det *= a[k][k]
        minors.append(det)
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            if f:
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
    return minors


def signature(m):
    """Return ``(positive, negative)`` index of inertia of a symmetric matrix."""
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    pos = neg = 0
    # symmetric elimination with 2x2 pivot fallback
    idx = list(range(n))
    while idx:
        k = next((i for i in idx if a[i][i] != 0), None)
        if k is None:
            pair = next(((i, j) for i in idx for j in idx if i < j and a[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # replace e_i by e_i + e_j to create a nonzero diagonal entry
            for t in range(n):
                a[i][t] += a[j][t]
            for t in range(n):
                a[t][i] += a[t][j]
            continue
        p = a[k][k]
        if p > 0:
            pos += 1
        else:
            neg += 1
        idx.remove(k)
        for i in idx:
            f = a[i][k] / p
            if f:
                for j in range(n):
                    a[i][j] -= f * a[k][j]
        for i in idx:
            a[i][k] = a[k][i] = Fraction(0)
    return pos, neg


@dataclass(frozen=True)
class NSLattice:
    gram: tuple

    def __post_init__(self):
        gram = _as_matrix(self.gram)
        object.__setattr__(self, "gram", gram)
        if len(gram) < 1:
            raise ShapeError("NS lattice must have rank >= 1")
        if not _is_symmetric(gram):
            raise ShapeError("NS gram matrix is not symmetric")

    @property
    def rank(self):
        return len(self.gram)

    def pair(self, x, y):
        return bilinear(x, y, self.gram)

    def check_hyperbolic(self):
        """Raise unless the form has signature (1, rank - 1)."""
        if signature(self.gram) != (1, self.rank - 1):
            raise K3OrbError(f"NS gram has signature {signature(self.gram)}, expected (1, {self.rank - 1})")


def _chain(n):
    c = [[0] * n for _ in range(n)]
    for i in range(n):
        c[i][i] = 2
        if i + 1 < n:
            c[i][i + 1] = c[i + 1][i] = -1
    return c


def _join(c, a, b):
    c[a][b] = c[b][a] = -1


@lru_cache(maxsize=None)
def cartan_matrix(kind, rank):
    kind = kind.upper()
    if kind == "A":
        if rank < 1:
            raise K3OrbError("A_n needs n >= 1")
        c = _chain(rank)
    elif kind == "D":
        if rank < 4:
            raise K3OrbError("D_n needs n >= 4")
        c = _chain(rank - 1)
        for row in c:
            row.append(0)
        c.append([0] * rank)
        c[rank - 1][rank - 1] = 2
        _join(c, rank - 3, rank - 1)
    elif kind == "E":
        if rank not in (6, 7, 8):
            raise K3OrbError("E_n needs n in {6, 7, 8}")
        c = [[0] * rank for _ in range(rank)]
        for i in range(rank):
            c[i][i] = 2
        _join(c, 0, 2)
        for i in range(2, rank - 1):
            _join(c, i, i + 1)
        _join(c, 1, 3)
    else:
        raise K3OrbError(f"unknown ADE kind {kind!r}")
    return _as_matrix(c)


@dataclass(frozen=True)
class RootSystemData:
    kind: str
    rank: int
    cartan: tuple = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        kind = self.kind.upper()
        object.__setattr__(self, "kind", kind)
        expected = cartan_matrix(kind, self.rank)
        if self.cartan is None:
            object.__setattr__(self, "cartan", expected)
        else:
            cartan = _as_matrix(self.cartan)
            if cartan != expected:
                raise K3OrbError(f"{self.label} Cartan matrix does not match Bourbaki labeling")
            object.__setattr__(self, "cartan", cartan)

    @property
    def label(self):
        return f"{self.kind}{self.rank}"

    def validate(self):
        c = self.cartan
        n = self.rank
        if len(c) != n or not _is_symmetric(c):
            raise K3OrbError(f"{self.label}: Cartan matrix malformed")
        for i in range(n):
            if c[i][i] != 2:
                raise K3OrbError(f"{self.label}: diagonal entry {c[i][i]} != 2")
            for j in range(n):
                if i != j and c[i][j] not in (0, -1):
                    raise K3OrbError(f"{self.label}: off-diagonal entry {c[i][j]}")
        if any(m <= 0 for m in _leading_minors(c)):
            raise K3OrbError(f"{self.label}: Cartan matrix not positive definite")


_LABEL = re.compile(r"^\s*([ADEade])_?(\d+)\s*$")


def root_system(label):
    """Parse a label such as ``"A1"``, ``"D_4"`` or ``"E8"``."""
    m = _LABEL.match(label)
    if not m:
        raise K3OrbError(f"unknown ADE kind {label!r}")
    return RootSystemData(m.group(1).upper(), int(m.group(2)))


@dataclass(frozen=True)
class SingularPointData:
    root_system: RootSystemData
    count: int = 1

    def __post_init__(self):
        if self.count < 1:
            raise K3OrbError("singular point count must be >= 1")


@dataclass(frozen=True)
class MukaiVector:
    r: int
    beta: tuple
    n: int

    def __post_init__(self):
        object.__setattr__(self, "beta", tuple(self.beta))

    def coords(self):
        return (self.r, *self.beta, self.n)

    def __add__(self, other):
        return MukaiVector(self.r + other.r, tuple(a + b for a, b in zip(self.beta, other.beta)), self.n + other.n)

    def __mul__(self, k):
        return MukaiVector(k * self.r, tuple(k * b for b in self.beta), k * self.n)

    __rmul__ = __mul__


@dataclass(frozen=True)
class OrbifoldMukaiVector:
    r: int
    beta: tuple
    marks: tuple
    n: int

    def __post_init__(self):
        object.__setattr__(self, "beta", tuple(self.beta))
        object.__setattr__(self, "marks", tuple(tuple(m) for m in self.marks))

    def coords(self):
        """Flat coordinates ``(r, beta..., marks..., n)``."""
        out = [self.r, *self.beta]
        for m in self.marks:
            out.extend(m)
        out.append(self.n)
        return tuple(out)

    @classmethod
    def from_coords(cls, coords, config):
        """Inverse of :meth:`coords` for the shape dictated by ``config``."""
        coords = tuple(coords)
        rho = len(config.ns_gram)
        sizes = [rs.rank for rs in config.point_systems]
        want = 2 + rho + sum(sizes)
        if len(coords) != want:
            raise ShapeError(f"expected {want} coordinates for this config, got {len(coords)}")
        pos = 1 + rho
        marks = []
        for s in sizes:
            marks.append(coords[pos:pos + s])
            pos += s
        return cls(coords[0], coords[1:1 + rho], marks, coords[-1])

    def __add__(self, other):
        return OrbifoldMukaiVector(
            self.r + other.r,
            tuple(a + b for a, b in zip(self.beta, other.beta)),
            tuple(tuple(a + b for a, b in zip(m1, m2)) for m1, m2 in zip(self.marks, other.marks)),
            self.n + other.n,
        )

    def __neg__(self):
        return -1 * self

    def __sub__(self, other):
        return self + (-1) * other

    def __mul__(self, k):
        return OrbifoldMukaiVector(
            k * self.r,
            tuple(k * b for b in self.beta),
            tuple(tuple(k * x for x in m) for m in self.marks),
            k * self.n,
        )

    __rmul__ = __mul__

    def divided(self, k):
        """Exact quotient by an integer dividing every coordinate."""
        if any(x % k for x in self.coords()):
            raise K3OrbError(f"{k} does not divide {self.coords()}")
        return OrbifoldMukaiVector(
            self.r // k,
            tuple(b // k for b in self.beta),
            tuple(tuple(x // k for x in m) for m in self.marks),
            self.n // k,
        )

    def is_zero(self):
        return not any(self.coords())


def mukai_pairing(v1, v2, lattice):
    """``beta1 . beta2 - r1 n2 - r2 n1`` with the NS intersection form."""
    gram = lattice.gram if isinstance(lattice, NSLattice) else lattice
    return bilinear(v1.beta, v2.beta, gram) - v1.r * v2.n - v2.r * v1.n


def _is_integral(x):
    return isinstance(x, int) or (isinstance(x, Fraction) and x.denominator == 1)


def mukai_vector_from_chern(ch0, ch1, ch2, allow_rational=False):
    """Mukai vector ``ch * sqrt(td)`` on a K3; ``sqrt(td) = (1, 0, 1)``."""
    n = ch0 + ch2
    if not _is_integral(n):
        if not allow_rational:
            raise K3OrbError(f"non-integral n-component {n}; pass allow_rational=True")
        return MukaiVector(ch0, tuple(ch1), Fraction(n))
    return MukaiVector(ch0, tuple(ch1), int(n))


def root_pairing(m1, m2, rs):
    if len(m1) != rs.rank or len(m2) != rs.rank:
        raise ShapeError(f"mark lengths {len(m1)}, {len(m2)} do not match {rs.label}")
    return bilinear(m1, m2, rs.cartan)


def _check_marks(marks, systems):
    if len(marks) != len(systems):
        raise ShapeError(f"{len(marks)} mark blocks for {len(systems)} singular points")


def d_m_squared(marks, systems):
    """Self-intersection of the exceptional divisor determined by the marks.

    ``systems`` is either a config (anything with ``point_systems``) or a
    sequence of :class:`RootSystemData`, one per singular point.
    """
    systems = getattr(systems, "point_systems", systems)
    _check_marks(marks, systems)
    return -sum(root_pairing(m, m, rs) for m, rs in zip(marks, systems))


def orbifold_pairing(v1, v2, config):
    systems = config.point_systems
    _check_marks(v1.marks, systems)
    _check_marks(v2.marks, systems)
    marks = sum(root_pairing(a, b, rs) for a, b, rs in zip(v1.marks, v2.marks, systems))
    return bilinear(v1.beta, v2.beta, config.ns_gram) - marks - v1.r * v2.n - v2.r * v1.n


def euler_pairing(v1, v2, config):
    """chi(E, F) by orbifold Riemann-Roch: minus the Mukai pairing."""
    return -orbifold_pairing(v1, v2, config)


def _divisors(n):
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def vector_divisors(v):
    coords = v.coords() if hasattr(v, "coords") else tuple(v)
    if not all(_is_integral(x) for x in coords):
        raise K3OrbError("divisibility needs integral coordinates")
    g = 0
    for x in coords:
        g = gcd(g, int(x))
    if g == 0:
        raise K3OrbError("the zero vector has no finite divisor set")
    return _divisors(g)
