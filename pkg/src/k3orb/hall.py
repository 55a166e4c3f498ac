"""Logarithm and exponential over ordered decompositions of a class.

The Hall algebra itself is abstracted as an :class:`AlgebraHandle`: any
associative algebra with a rational scalar action.  Decompositions are
enumerated inside an explicit coordinate box, which is what makes the sums
finite.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import factorial
from typing import Any, Callable

from .errors import K3OrbError
from .lattice import OrbifoldMukaiVector, bilinear
from .stability import (
    NumericalClass,
    central_charge,
    phase_equal,
    reduced_hilbert_poly,
)


@dataclass(frozen=True)
class AlgebraHandle:
    mul: Callable[[Any, Any], Any]
    add: Callable[[Any, Any], Any]
    zero: Any
    one: Any
    scale: Callable[[Fraction, Any], Any]

    def product(self, elements):
        out = self.one
        for x in elements:
            out = self.mul(out, x)
        return out


def scalar_algebra():
    return AlgebraHandle(
        mul=lambda a, b: a * b,
        add=lambda a, b: a + b,
        zero=Fraction(0),
        one=Fraction(1),
        scale=lambda c, a: c * a,
    )


def matrix_algebra(size=2):
    """Square rational matrices as tuples of tuples; noncommutative."""

    def mul(a, b):
        return tuple(
            tuple(sum(a[i][t] * b[t][j] for t in range(size)) for j in range(size))
            for i in range(size)
        )

    def add(a, b):
        return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))

    def scale(c, a):
        return tuple(tuple(c * x for x in row) for row in a)

    zero = tuple(tuple(Fraction(0) for _ in range(size)) for _ in range(size))
    one = tuple(tuple(Fraction(int(i == j)) for j in range(size)) for i in range(size))
    return AlgebraHandle(mul, add, zero, one, scale)


class EffectiveCone:
    """Model of the effective classes.

    ``v`` is effective when ``r > 0``; or ``r = 0`` and ``omega.beta > 0``;
    or ``r = 0``, ``beta = 0``, all marks zero and ``n > 0``.
    """

    def __init__(self, omega, gram):
        self.omega = tuple(Fraction(x) for x in omega)
        self.gram = gram

    def degree(self, v):
        return bilinear(self.omega, v.beta, self.gram)

    def __call__(self, v):
        if v.r > 0:
            return True
        if v.r < 0:
            return False
        deg = self.degree(v)
        if deg != 0:
            return deg > 0
        return not any(v.beta) and not any(any(m) for m in v.marks) and v.n > 0


class TrivialMatcher:
    def __call__(self, part, total):
        return True


class ReducedHilbertMatcher:
    """Parts whose reduced twisted Hilbert polynomial equals the total's."""

    def __init__(self, params, gram, chi_O=Fraction(2)):
        self.params = params
        self.gram = gram
        self.chi_O = chi_O

    def poly(self, v):
        return reduced_hilbert_poly(NumericalClass.from_mukai(v), self.params, self.gram, self.chi_O)

    def __call__(self, part, total):
        try:
            return self.poly(part) == self.poly(total)
        except K3OrbError:
            return False


class PhaseMatcher:
    """Parts whose central charge lies on the same ray as the total's."""

    def __init__(self, params, gram):
        self.params = params
        self.gram = gram

    def charge(self, v):
        return central_charge(NumericalClass.from_mukai(v), self.params, self.gram)

    def __call__(self, part, total):
        z1, z2 = self.charge(part), self.charge(total)
        if z1.is_zero() or z2.is_zero():
            return False
        return phase_equal(z1, z2)


def box_points(box):
    """All integer coordinate tuples inside ``box`` (inclusive bounds)."""
    return product(*(range(lo, hi + 1) for lo, hi in box))


def _height(candidates, cone):
    """Weights ``(A, B)`` with ``A r + B omega.beta + n >= 1`` on every candidate.

    Every part of a decomposition then has height >= 1, so the height of
    the total bounds the number of parts and prunes dead remainders.
    """
    B = Fraction(0)
    for p in candidates:
        if p.r == 0:
            deg = cone.degree(p)
            if deg > 0:
                B = max(B, (1 - p.n) / deg)
    A = Fraction(0)
    for p in candidates:
        if p.r > 0:
            A = max(A, (1 - B * cone.degree(p) - p.n) / p.r)
    return lambda v: A * v.r + B * cone.degree(v) + v.n


def enumerate_decompositions(v, matcher, cone, box, config):
    """Ordered tuples of effective, matching box vectors summing to ``v``.

    The result is sorted lexicographically by coordinates.
    """
    coords = v.coords()
    if len(box) != len(coords):
        raise K3OrbError(f"box has {len(box)} ranges for {len(coords)} coordinates")
    if not cone(v):
        raise K3OrbError("class is not in the effective cone")
    if any(not lo <= x <= hi for x, (lo, hi) in zip(coords, box)):
        raise K3OrbError("box does not contain the class")
    if not matcher(v, v):
        raise K3OrbError("class does not match itself (zero central charge?)")
    candidates = []
    for pt in box_points(box):
        p = OrbifoldMukaiVector.from_coords(pt, config)
        if any(pt) and cone(p) and matcher(p, v):
            candidates.append(p)
    height = _height(candidates, cone)
    memo = {}

    def split(rem):
        key = rem.coords()
        if key in memo:
            return memo[key]
        out = []
        for p in candidates:
            if p == rem:
                out.append((p,))
                continue
            rest = rem - p
            if height(rest) < 1:
                continue
            for tail in split(rest):
                out.append((p,) + tail)
        memo[key] = out
        return out

    result = split(v)
    return sorted(result, key=lambda t: tuple(p.coords() for p in t))


def _weighted_sum(values, decompositions, algebra, weight):
    total = algebra.zero
    for parts in decompositions:
        try:
            factors = [values[p] for p in parts]
        except KeyError as exc:
            raise K3OrbError(f"no value supplied for class {exc.args[0]}") from None
        term = algebra.product(factors)
        total = algebra.add(total, algebra.scale(weight(len(parts)), term))
    return total


def hall_log(delta, v, decompositions, algebra):
    """``sum (-1)^(l-1)/l * delta(v_1) * ... * delta(v_l)`` over the tuples."""
    return _weighted_sum(delta, decompositions, algebra, lambda l: Fraction((-1) ** (l - 1), l))


def hall_exp(epsilon, v, decompositions, algebra):
    """``sum 1/l! * eps(v_1) * ... * eps(v_l)``; inverse of :func:`hall_log`."""
    return _weighted_sum(epsilon, decompositions, algebra, lambda l: Fraction(1, factorial(l)))


def transform_all(values, decompositions_of, algebra, transform):
    """Apply ``hall_log`` or ``hall_exp`` to every class in ``decompositions_of``.

    ``decompositions_of`` maps each class to its list of decompositions.
    """
    return {w: transform(values, w, decs, algebra) for w, decs in decompositions_of.items()}
