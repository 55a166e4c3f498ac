"""Exact coefficients of prod_{m>=1} (1 - q^m)^e.

For ``e = -24`` the coefficient of ``q^n`` is the Euler characteristic of
``Hilb^n`` of a K3 surface.  Two independent algorithms are provided:

``naive``
    multiply the binomial expansions of the factors ``(1 - q^m)^e`` one at
    a time into a truncated coefficient list.
``fast``
    start from the sparse expansion of ``prod (1 - q^m)`` given by
    Euler's pentagonal number theorem and raise it to the power ``e`` with
    the recurrence coming from ``g f' = e g' f`` for ``f = g^e``.
"""

from dataclasses import dataclass
import threading

from .errors import K3OrbError


@dataclass(frozen=True)
class CoefficientSeries:
    order: int
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.order + 1:
            raise ValueError("coefficient count must be order + 1")

    def __getitem__(self, i):
        return self.coeffs[i]

    def __len__(self):
        return len(self.coeffs)


def pentagonal_terms(order):
    """Sparse ``[(degree, sign), ...]`` of prod (1 - q^m) up to ``q^order``."""
    terms = [(0, 1)]
    k = 1
    while True:
        sign = -1 if k % 2 else 1
        a = k * (3 * k - 1) // 2
        if a > order:
            break
        terms.append((a, sign))
        b = k * (3 * k + 1) // 2
        if b <= order:
            terms.append((b, sign))
        k += 1
    return terms


def _factor_terms(e, m, order):
    """Nonzero terms ``(degree, coeff)`` of ``(1 - q^m)^e`` up to ``q^order``."""
    terms = [(0, 1)]
    a = 1
    j = 1
    while j * m <= order:
        # coefficient of q^{mj} is (-1)^j binom(e, j)
        a = a * (j - 1 - e) // j
        if a == 0:
            break
        terms.append((j * m, a))
        j += 1
    return terms


def naive_coefficients(e, order):
    c = [0] * (order + 1)
    c[0] = 1
    for m in range(1, order + 1):
        new = c[:]
        for d, a in _factor_terms(e, m, order)[1:]:
            new[d:] = [x + a * y for x, y in zip(new[d:], c)]
        c = new
    return c


def fast_coefficients(e, order, prefix=()):
    """Coefficients of ``g^e`` with ``g = prod (1 - q^m)``.

    ``prefix`` may hold already known leading coefficients; they are reused.
    """
    g = pentagonal_terms(order)[1:]
    f = list(prefix[: order + 1]) or [1]
    for n in range(len(f), order + 1):
        s = 0
        for j, gj in g:
            if j > n:
                break
            s += ((e + 1) * j - n) * gj * f[n - j]
        # g_0 = 1 and n f_n = sum_{j>=1} ((e+1) j - n) g_j f_{n-j}
        q, rem = divmod(s, n)
        assert rem == 0
        f.append(q)
    return f


def product_power_series(e, order, method="fast"):
    if order < 0:
        raise K3OrbError("order must be nonnegative")
    if method == "fast":
        coeffs = fast_coefficients(e, order)
    elif method == "naive":
        coeffs = naive_coefficients(e, order)
    else:
        raise K3OrbError(f"unknown method {method!r}")
    return CoefficientSeries(order, tuple(coeffs))


class _HilbCache:
    # grows monotonically; readers only ever see a fully written tuple
    def __init__(self):
        self._lock = threading.Lock()
        self._coeffs = (1,)

    def get(self, n):
        coeffs = self._coeffs
        if n < len(coeffs):
            return coeffs[n]
        with self._lock:
            coeffs = self._coeffs
            if n >= len(coeffs):
                target = max(n, 2 * len(coeffs))
                coeffs = tuple(fast_coefficients(-24, target, coeffs))
                self._coeffs = coeffs
        return coeffs[n]


_hilb_cache = _HilbCache()


def hilb_euler_k3(n):
    """Euler characteristic of the Hilbert scheme of ``n`` points on a K3.

    Negative ``n`` is an empty Hilbert scheme and gives 0.
    """
    if n < 0:
        return 0
    return _hilb_cache.get(n)


def series_crosscheck(order):
    """True iff the naive and fast algorithms agree up to ``q^order``."""
    return naive_coefficients(-24, order) == fast_coefficients(-24, order)
