"""Command-line frontend.

Vectors are comma-separated coordinate lists.  Orbifold Mukai vectors use
the order ``r, beta..., marks (config order)..., n``; numerical classes use
``ch0, ch1..., ch2``.  Rationals are written ``p/q``.
"""

import argparse
from decimal import Decimal, localcontext
from fractions import Fraction
import json
import sys

from .configs import builtin_nikulin, format_rational, load_config, parse_rational
from .errors import K3OrbError
from .goettsche import product_power_series
from .hall import (
    EffectiveCone,
    PhaseMatcher,
    ReducedHilbertMatcher,
    TrivialMatcher,
    enumerate_decompositions,
)
from .lattice import OrbifoldMukaiVector, euler_pairing, orbifold_pairing
from .multiple_cover import joyce_invariant, joyce_invariant_compactified
from .stability import (
    ALWAYS_EQUAL,
    INFINITY,
    NumericalClass,
    StabilityParams,
    central_charge,
    slope_mu,
    threshold_gieseker_from_tilt,
    threshold_tilt_from_gieseker,
    tilt_slope,
    wall_k_squared,
)
from .transport import hilb_index, transport_vector

BUILTINS = {"nikulin": builtin_nikulin}


class UsageError(Exception):
    pass


def _rationals(text):
    try:
        return [parse_rational(x) for x in text.split(",")]
    except K3OrbError as exc:
        raise UsageError(str(exc)) from None


def _integers(text):
    values = _rationals(text)
    if any(x.denominator != 1 for x in values):
        raise UsageError(f"expected integer coordinates: {text}")
    return [int(x) for x in values]


def _fmt(x):
    if x is INFINITY:
        return "+inf"
    return format_rational(x)


def _jsonable(x):
    if x is INFINITY:
        return "+inf"
    if isinstance(x, Fraction):
        return format_rational(x)
    return x


def _approx(x, digits=12):
    with localcontext() as ctx:
        ctx.prec = digits
        q = Fraction(x)
        return str(Decimal(q.numerator) / Decimal(q.denominator))


class Output:
    def __init__(self, args, stream):
        self.json = args.json
        self.approx = args.approx
        self.stream = stream
        self.items = []

    def value(self, label, x):
        self.items.append((label, x))

    def flush(self):
        if self.json:
            payload = {}
            for label, x in self.items:
                payload[label] = _jsonable(x)
                if self.approx and isinstance(x, Fraction):
                    payload[label + "_approx"] = _approx(x)
            self.stream.write(json.dumps(payload, sort_keys=False) + "\n")
            return
        for label, x in self.items:
            if isinstance(x, (Fraction, int)) or x is INFINITY:
                line = f"{label} = {_fmt(x)}"
                if self.approx and isinstance(x, Fraction) and x.denominator != 1:
                    line += f"  (approx {_approx(x)})"
            else:
                line = f"{label} = {x}"
            self.stream.write(line + "\n")


def _config(path):
    if path.startswith("builtin:"):
        name = path.split(":", 1)[1]
        if name not in BUILTINS:
            raise K3OrbError(f"unknown builtin config {name!r}")
        return BUILTINS[name]()
    try:
        with open(path, encoding="utf-8") as fh:
            return load_config(fh.read())
    except OSError as exc:
        raise K3OrbError(f"cannot read config {path}: {exc.strerror}") from None


def _vector(text, config):
    return OrbifoldMukaiVector.from_coords(_integers(text), config)


def _numerical_class(text, config):
    values = _rationals(text)
    rho = len(config.ns_gram)
    if len(values) != rho + 2:
        raise K3OrbError(f"class needs {rho + 2} entries (ch0, ch1..., ch2), got {len(values)}")
    if values[0].denominator != 1:
        raise K3OrbError("ch0 must be an integer")
    return NumericalClass(int(values[0]), values[1:-1], values[-1])


def _params(args, config):
    omega = _rationals(args.omega) if args.omega else config.ample
    if omega is None:
        raise K3OrbError("no --omega given and the config has no ample class")
    D = _rationals(args.D) if args.D else None
    k = parse_rational(args.k) if getattr(args, "k", None) else Fraction(1)
    return StabilityParams(omega, k, D)


def _coords(v):
    return "(" + ",".join(_fmt(Fraction(x)) for x in v) + ")"


def cmd_series(args, out):
    s = product_power_series(args.exponent, args.order, method=args.method)
    if args.json:
        out.stream.write(json.dumps(list(s.coeffs)) + "\n")
    else:
        out.stream.write(" ".join(str(c) for c in s.coeffs) + "\n")


def cmd_pairing(args, out):
    config = _config(args.config)
    v, w = _vector(args.v, config), _vector(args.w, config)
    out.value("pairing", Fraction(orbifold_pairing(v, w, config)))
    out.value("euler", Fraction(euler_pairing(v, w, config)))
    out.flush()


def cmd_joyce(args, out):
    config = _config(args.config)
    v = _vector(args.v, config)
    out.value("J", joyce_invariant(v, config))
    out.value("Jbar", joyce_invariant_compactified(v, config))
    out.flush()


def cmd_transport(args, out):
    config = _config(args.config)
    v = _vector(args.v, config)
    vy = transport_vector(v, config)
    idx = hilb_index(v, config)
    if args.json:
        payload = {
            "v_Y": list(vy.coords()),
            "d": idx.d,
            "n": idx.n,
            "marks": [list(m) for m in idx.marks],
            "empty": idx.empty,
        }
        out.stream.write(json.dumps(payload) + "\n")
        return
    out.value("v_Y", _coords(vy.coords()))
    out.value("d", idx.d)
    out.value("n", idx.n)
    out.value("marks", "[" + ",".join(_coords(m) for m in idx.marks) + "]")
    out.value("empty", "true" if idx.empty else "false")
    out.flush()


def cmd_walls(args, out):
    config = _config(args.config)
    params = _params(args, config)
    c1 = _numerical_class(args.c1, config)
    c2 = _numerical_class(args.c2, config)
    k2 = wall_k_squared(c1, c2, params, config.ns_gram)
    if k2 is None:
        out.value("k^2", "none")
    elif k2 is ALWAYS_EQUAL:
        out.value("k^2", "always-equal")
    else:
        out.value("k^2", k2)
    out.flush()


def cmd_thresholds(args, out):
    config = _config(args.config)
    params = _params(args, config)
    c = _numerical_class(args.cls, config)
    mu = slope_mu(c, params, config.ns_gram)
    mu_plus = parse_rational(args.mu_plus) if args.mu_plus else mu
    c = NumericalClass(c.ch0, c.ch1, c.ch2, mu_plus)
    out.value("N^2 gieseker_from_tilt", threshold_gieseker_from_tilt(c, params, config.ns_gram).value)
    out.value("N^2 tilt_from_gieseker", threshold_tilt_from_gieseker(c, params, config.ns_gram).value)
    out.flush()


def _box(text, dim):
    ranges = []
    for part in text.split(","):
        try:
            lo, hi = part.split(":")
            ranges.append((int(lo), int(hi)))
        except ValueError:
            raise UsageError(f"bad box range {part!r}; expected lo:hi") from None
    if len(ranges) != dim:
        raise K3OrbError(f"box needs {dim} ranges, got {len(ranges)}")
    return ranges


def cmd_decomp(args, out):
    config = _config(args.config)
    v = _vector(args.v, config)
    params = _params(args, config)
    gram = config.ns_gram
    matcher = {
        "trivial": lambda: TrivialMatcher(),
        "phase": lambda: PhaseMatcher(params, gram),
        "hilbert": lambda: ReducedHilbertMatcher(params, gram, config.chi_O),
    }[args.matcher]()
    cone = EffectiveCone(params.omega, gram)
    decs = enumerate_decompositions(v, matcher, cone, _box(args.box, config.dimension), config)
    if args.json:
        payload = [[list(p.coords()) for p in t] for t in decs]
        out.stream.write(json.dumps(payload) + "\n")
        return
    for t in decs:
        out.stream.write(" + ".join(_coords(p.coords()) for p in t) + "\n")


def cmd_slope(args, out):
    config = _config(args.config)
    params = _params(args, config)
    c = _numerical_class(args.cls, config)
    out.value("mu", slope_mu(c, params, config.ns_gram))
    out.value("nu", tilt_slope(c, params, config.ns_gram))
    out.flush()


def cmd_charge(args, out):
    config = _config(args.config)
    params = _params(args, config)
    c = _numerical_class(args.cls, config)
    z = central_charge(c, params, config.ns_gram)
    out.value("re", z.re)
    out.value("im", z.im)
    out.flush()


def build_parser():
    p = argparse.ArgumentParser(prog="k3orb", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--approx", action="store_true", help="add decimal approximations")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("series", parents=[common], help="coefficients of prod (1-q^m)^e")
    s.add_argument("--order", type=int, required=True)
    s.add_argument("--exponent", type=int, default=-24)
    s.add_argument("--method", choices=["fast", "naive"], default="fast")
    s.set_defaults(func=cmd_series)

    def with_config(name, help):
        sp = sub.add_parser(name, parents=[common], help=help)
        sp.add_argument("--config", required=True, help="JSON file or builtin:nikulin")
        return sp

    def with_stability(sp):
        sp.add_argument("--omega", help="ample class (defaults to the config's)")
        sp.add_argument("--D", help="twist divisor")
        sp.add_argument("--k", help="tilt parameter (default 1)")

    s = with_config("pairing", "orbifold Mukai pairing")
    s.add_argument("--v", required=True)
    s.add_argument("--w", required=True)
    s.set_defaults(func=cmd_pairing)

    s = with_config("joyce", "Joyce invariant by the multiple cover formula")
    s.add_argument("--v", required=True)
    s.set_defaults(func=cmd_joyce)

    s = with_config("transport", "vector on the resolution and Hilbert indices")
    s.add_argument("--v", required=True)
    s.set_defaults(func=cmd_transport)

    s = with_config("walls", "tilt wall between two classes")
    s.add_argument("--c1", required=True)
    s.add_argument("--c2", required=True)
    with_stability(s)
    s.set_defaults(func=cmd_walls)

    s = with_config("thresholds", "Gieseker/tilt thresholds N^2")
    s.add_argument("--class", dest="cls", required=True)
    s.add_argument("--mu-plus", dest="mu_plus")
    with_stability(s)
    s.set_defaults(func=cmd_thresholds)

    s = with_config("decomp", "bounded decompositions of a class")
    s.add_argument("--v", required=True)
    s.add_argument("--matcher", choices=["trivial", "phase", "hilbert"], default="phase")
    s.add_argument("--box", required=True, help="lo:hi per coordinate, comma separated")
    with_stability(s)
    s.set_defaults(func=cmd_decomp)

    s = with_config("slope", "slope mu and tilt slope nu")
    s.add_argument("--class", dest="cls", required=True)
    with_stability(s)
    s.set_defaults(func=cmd_slope)

    s = with_config("charge", "central charge Z")
    s.add_argument("--class", dest="cls", required=True)
    with_stability(s)
    s.set_defaults(func=cmd_charge)
    return p


def run(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        args.func(args, Output(args, stdout))
    except UsageError as exc:
        stderr.write(f"k3orb: usage error: {exc}\n")
        return 2
    except K3OrbError as exc:
        stderr.write(f"k3orb: error: {exc}\n")
        return 1
    return 0


def main():
    sys.exit(run())
