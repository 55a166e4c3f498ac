"""Transport of orbifold Mukai vectors to the crepant resolution ``Y``.

In the integral model the cohomological Fourier-Mukai isomorphism is a
repackaging of coordinates: ``r``, ``beta`` and ``n`` are unchanged and each
mark coordinate becomes the coefficient of the corresponding exceptional
curve.  ``NS(Y)`` is the orthogonal sum of the invariant NS lattice and one
negated Cartan block per singular point.
"""

from dataclasses import dataclass

from .errors import ShapeError, K3OrbError
from .lattice import MukaiVector, NSLattice, d_m_squared, orbifold_pairing


@dataclass(frozen=True)
class ResolvedLattice:
    base_gram: NSLattice
    blocks: tuple
    total_gram: NSLattice

    @property
    def gram(self):
        return self.total_gram.gram

    @property
    def rank(self):
        return self.total_gram.rank


@dataclass(frozen=True)
class HilbIndex:
    n: int
    marks: tuple
    d: int

    @property
    def empty(self):
        return self.d < 0


def resolved_lattice(config):
    systems = config.point_systems
    for rs in systems:
        rs.validate()
    base = NSLattice(config.ns_gram)
    size = base.rank + sum(rs.rank for rs in systems)
    total = [[0] * size for _ in range(size)]
    for i, row in enumerate(base.gram):
        total[i][: base.rank] = row
    off = base.rank
    for rs in systems:
        for i in range(rs.rank):
            for j in range(rs.rank):
                total[off + i][off + j] = -rs.cartan[i][j]
        off += rs.rank
    return ResolvedLattice(base, systems, NSLattice(total))


def transport_vector(v, config):
    systems = config.point_systems
    if len(v.beta) != len(config.ns_gram):
        raise ShapeError("beta length does not match ns_gram")
    if len(v.marks) != len(systems) or any(len(m) != rs.rank for m, rs in zip(v.marks, systems)):
        raise ShapeError("mark blocks do not match the singular points of the config")
    beta = list(v.beta)
    for m in v.marks:
        beta.extend(m)
    return MukaiVector(v.r, tuple(beta), v.n)


def hilb_index(v, config):
    """Hilbert-scheme indices attached to ``v``.

    ``d = <v, v>/2 + 1`` is the point count on ``Y`` and
    ``n = d - D_m^2 / 2`` the point count on the orbifold.
    """
    square = orbifold_pairing(v, v, config)
    if square % 2:
        raise K3OrbError(f"odd self-pairing {square}; the lattice is even")
    d = int(square) // 2 + 1
    n = d - d_m_squared(v.marks, config) // 2
    return HilbIndex(n=n, marks=v.marks, d=d)
