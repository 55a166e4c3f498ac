"""Joyce invariants from the multiple cover formula."""

from fractions import Fraction

from .errors import K3OrbError
from .goettsche import hilb_euler_k3
from .hall import EffectiveCone
from .lattice import vector_divisors
from .transport import hilb_index


def joyce_invariant(v, config):
    """``J(v) = sum_{k | v} chi(Hilb^{d_k}(Y)) / k^2``.

    ``d_k = <v/k, v/k>/2 + 1``; a negative ``d_k`` contributes nothing.
    """
    if v.is_zero():
        raise K3OrbError("J is undefined for the zero vector")
    total = Fraction(0)
    for k in vector_divisors(v):
        d = hilb_index(v.divided(k), config).d
        total += Fraction(hilb_euler_k3(d), k * k)
    return total


def joyce_invariant_compactified(v, config):
    return 2 * joyce_invariant(v, config)


def joyce_sign_extension(v, config, cone=None):
    """``J(v)`` for effective ``v``, ``J(-v)`` if ``-v`` is effective, else 0.

    ``cone`` defaults to the effective-cone model built from the config's
    ample class.
    """
    if cone is None:
        if config.ample is None:
            raise K3OrbError("config has no ample class; pass a cone predicate")
        cone = EffectiveCone(config.ample, config.ns_gram)
    if cone(v):
        return joyce_invariant(v, config)
    if cone(-v):
        return joyce_invariant(-v, config)
    return Fraction(0)
