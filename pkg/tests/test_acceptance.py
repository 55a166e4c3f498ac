"""Exit criteria.  Each test records one PASS/FAIL line, printed in the
terminal summary (see conftest.py)."""

from fractions import Fraction as Q
from itertools import product
import io
import json
import random
import time

import pytest

from k3orb import (
    EffectiveCone,
    K3OrbError,
    NumericalClass,
    OrbifoldMukaiVector,
    PhaseMatcher,
    ReducedHilbertMatcher,
    SingularPointData,
    StabilityParams,
    SurfaceConfig,
    TrivialMatcher,
    builtin_nikulin,
    central_charge,
    enumerate_decompositions,
    hall_exp,
    hall_log,
    hilb_euler_k3,
    joyce_invariant,
    joyce_invariant_compactified,
    matrix_algebra,
    mukai_pairing,
    orbifold_pairing,
    resolved_lattice,
    root_system,
    scalar_algebra,
    series_crosscheck,
    threshold_tilt_from_gieseker,
    tilt_slope,
    transport_vector,
    twist_chern,
    wall_k_squared,
)
from k3orb.cli import run
from k3orb.hall import box_points, transform_all
from k3orb.lattice import bilinear

from cli_cases import CASES
from conftest import random_config, random_vector
from hall_oracles import brute_decompositions
from test_goettsche import brute_product
from test_multiple_cover import oracle_scaled

RESULTS = []


def record(name, ok, detail=""):
    RESULTS.append(f"[{'PASS' if ok else 'FAIL'}] {name}" + (f" ({detail})" if detail else ""))
    assert ok, detail


def test_ac01_series_golden():
    oracle = brute_product(-24, 4)
    values = [hilb_euler_k3(n) for n in range(5)]
    record("AC1 series golden values", values == oracle == [1, 24, 324, 3200, 25650], f"{values}")


def test_ac02_series_crosscheck():
    start = time.perf_counter()
    ok = series_crosscheck(2000)
    elapsed = time.perf_counter() - start
    record("AC2 naive/fast agreement to n=2000 in < 30 s", ok and elapsed < 30, f"{elapsed:.1f}s")


def test_ac03_pairing_suite():
    rng = random.Random(3)
    configs = [random_config(rng, f"c{i}") for i in range(5)]
    bad = 0
    for config in configs:
        for _ in range(200):
            v, w, u = (random_vector(rng, config) for _ in range(3))
            a, b = rng.randint(-9, 9), rng.randint(-9, 9)
            lhs = orbifold_pairing(a * v + b * w, u, config)
            bad += lhs != a * orbifold_pairing(v, u, config) + b * orbifold_pairing(w, u, config)
            bad += orbifold_pairing(v, w, config) != orbifold_pairing(w, v, config)
    plain = SurfaceConfig("plain", [[2]])
    o = OrbifoldMukaiVector(1, (0,), (), 1)
    ok = bad == 0 and orbifold_pairing(o, o, plain) == -2
    record("AC3 pairing bilinear/symmetric, <O,O> = -2", ok, f"{bad} failures over 1000 triples")


def test_ac04_isometry():
    rng = random.Random(4)
    configs = [random_config(rng, f"c{i}") for i in range(4)] + [builtin_nikulin()]
    bad = 0
    for config in configs:
        lat = resolved_lattice(config).total_gram
        for _ in range(200):
            v, w = random_vector(rng, config), random_vector(rng, config)
            tv, tw = transport_vector(v, config), transport_vector(w, config)
            bad += orbifold_pairing(v, w, config) != mukai_pairing(tv, tw, lat)
    record("AC4 transport is an isometry", bad == 0, f"{bad} failures over 1000 pairs")


def test_ac05_multiple_cover():
    nik = builtin_nikulin()
    vec = lambda c: OrbifoldMukaiVector.from_coords(c, nik)
    v0 = vec([1] + [0] * 9 + [1])
    iso = vec([1, 1] + [0] * 8 + [1])
    checks = [
        joyce_invariant(v0, nik) == 1,
        joyce_invariant(2 * v0, nik) == Q(1, 4),
        joyce_invariant(iso, nik) == 24,
    ]
    for base, square in ((v0, -2), (iso, 0), (vec([0, 1, 1, 1] + [0] * 6 + [3]), -2)):
        for k in range(1, 13):
            J = joyce_invariant(k * base, nik)
            checks.append(J == oracle_scaled(square, k))
            checks.append(joyce_invariant_compactified(k * base, nik) == 2 * J)
    record("AC5 multiple cover formula and Jbar = 2J", all(checks), f"{checks.count(False)} failures")


def _random_class(rng):
    return NumericalClass(
        rng.randint(-4, 4),
        [Q(rng.randint(-9, 9), rng.randint(1, 3)) for _ in range(2)],
        Q(rng.randint(-9, 9), rng.randint(1, 4)),
    )


def test_ac06_stability_consistency():
    rng = random.Random(6)
    gram = ((2, 1), (1, -2))
    bad = 0
    for _ in range(1000):
        p = StabilityParams(
            (1, rng.randint(0, 1)),
            Q(rng.randint(1, 7), rng.randint(1, 3)),
            (Q(rng.randint(-5, 5), rng.randint(1, 3)), Q(rng.randint(-5, 5), rng.randint(1, 3))),
        )
        a, b = _random_class(rng), _random_class(rng)
        za = central_charge(a, p, gram)
        if za.im != 0:
            bad += tilt_slope(a, p, gram) != -za.re / za.im
        bad += central_charge(a + b, p, gram) != za + central_charge(b, p, gram)
        d1, d2 = p.D, (Q(rng.randint(-3, 3), 2), Q(rng.randint(-3, 3), 5))
        both = tuple(x + y for x, y in zip(d1, d2))
        bad += twist_chern(twist_chern(a, d1, gram), d2, gram) != twist_chern(a, both, gram)
    record("AC6 nu = -Re Z/Im Z, Z additive, twist group law", bad == 0, f"{bad} failures")


def test_ac07_threshold_walls():
    """Destabilizing subobjects of Gieseker-semistable classes have walls below N^2.

    Hypotheses enumerated for each subobject F of E (rk F <= rk E):
    0 < omega.ch1^D(F) < omega.ch1^D(E), Bogomolov for F and E - F, and
    mu(E) > mu(F) > 0 (finite wall < N^2) or mu(E) = mu(F) with
    ch2^D(E)/rk E >= ch2^D(F)/rk F (no finite wall at all).
    """
    rng = random.Random(7)
    grams = [((2,),), ((0, 1), (1, 0)), ((2, 1), (1, -2))]
    violations = checked = classes = 0
    while classes < 200:
        gram = rng.choice(grams)
        rho = len(gram)
        omega = tuple(rng.randint(1, 3) for _ in range(rho))
        w2 = bilinear(omega, omega, gram)
        if w2 <= 0:
            continue
        D = tuple(Q(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(rho))
        p = StabilityParams(omega, 1, D)
        E = NumericalClass(rng.randint(1, 3), [rng.randint(-3, 4) for _ in range(rho)], rng.randint(-6, 3))
        tE = twist_chern(E, D, gram)
        wE = bilinear(omega, tE.ch1, gram)
        rE, cE = tE.ch0, tE.ch2
        if wE <= 0 or wE * wE - 2 * w2 * rE * cE < 0:
            continue
        classes += 1
        N2 = threshold_tilt_from_gieseker(NumericalClass(E.ch0, E.ch1, E.ch2), p, gram).value
        wD = bilinear(omega, D, gram)
        DD = bilinear(D, D, gram)
        for rF in range(1, int(E.ch0) + 1):
            for ch1 in product(range(-3, 4), repeat=rho):
                wF = bilinear(omega, ch1, gram) - rF * wD
                if not 0 < wF < wE:
                    continue
                # mu(F) <= mu(E)  <=>  wF rE <= wE rF
                if wF * rE > wE * rF:
                    continue
                Dch1 = bilinear(D, ch1, gram)
                for ch2 in range(-8, 6):
                    cF = ch2 - Dch1 + DD / 2 * rF
                    if wF * wF - 2 * w2 * rF * cF < 0:
                        continue
                    rQ, wQ, cQ = rE - rF, wE - wF, cE - cF
                    if wQ * wQ - 2 * w2 * rQ * cQ < 0:
                        continue
                    equal_slope = wF * rE == wE * rF
                    if equal_slope and cE * rF < cF * rE:
                        continue
                    F = NumericalClass(rF, ch1, ch2)
                    k2 = wall_k_squared(F, E, p, gram)
                    checked += 1
                    finite = isinstance(k2, Q)
                    if equal_slope:
                        violations += finite
                    elif finite and not k2 < N2:
                        violations += 1
    record(
        "AC7 walls of destabilizers below threshold N^2",
        violations == 0 and checked > 1000,
        f"{violations} violations, {checked} candidates over {classes} classes",
    )


def test_ac08_log_exp_round_trip():
    plain = SurfaceConfig("plain", [[2]], ample=[1])
    cone = EffectiveCone((1,), plain.ns_gram)
    rng = random.Random(8)
    ok = True
    # points graded by n = 1..5
    pts = [OrbifoldMukaiVector(0, (0,), (), n) for n in range(1, 6)]
    box = [(0, 0), (0, 0), (0, 5)]
    decs = {w: enumerate_decompositions(w, TrivialMatcher(), cone, box, plain) for w in pts}
    # a two-dimensional box of classes
    box2 = [(0, 1), (0, 1), (0, 2)]
    classes = [
        OrbifoldMukaiVector.from_coords(c, plain)
        for c in box_points(box2)
        if any(c) and cone(OrbifoldMukaiVector.from_coords(c, plain))
    ]
    decs2 = {w: enumerate_decompositions(w, TrivialMatcher(), cone, box2, plain) for w in classes}
    rand_matrix = lambda: tuple(tuple(Q(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(2)) for _ in range(2))
    for algebra, make in ((scalar_algebra(), lambda: Q(rng.randint(-5, 5), rng.randint(1, 4))), (matrix_algebra(2), rand_matrix)):
        for d in (decs, decs2):
            delta = {w: make() for w in d}
            ok &= transform_all(transform_all(delta, d, algebra, hall_log), d, algebra, hall_exp) == delta
            ok &= transform_all(transform_all(delta, d, algebra, hall_exp), d, algebra, hall_log) == delta
    ones = {w: Q(1) for w in pts}
    eps = transform_all(ones, decs, scalar_algebra(), hall_log)
    ok &= [eps[pts[i]] for i in range(3)] == [1, Q(1, 2), Q(1, 3)]
    record("AC8 hall exp/log round trip, eps(1..3) = 1, 1/2, 1/3", ok)


def test_ac09_enumerator_vs_brute_force():
    rng = random.Random(9)
    config = SurfaceConfig("a1", [[2]], [SingularPointData(root_system("A1"))], ample=[1])
    cone = EffectiveCone((1,), config.ns_gram)
    mismatches = instances = 0
    while instances < 50:
        # nonnegative r, beta, n bounds make r + omega.beta + n >= 1 on every
        # effective part, which bounds the number of parts for the oracle
        box = [(0, rng.randint(0, 1)), (0, rng.randint(0, 1)), (-rng.randint(0, 1), rng.randint(0, 1)), (0, rng.randint(1, 2))]
        coords = [rng.randint(lo, hi) for lo, hi in box]
        v = OrbifoldMukaiVector.from_coords(coords, config)
        bound = v.r + v.beta[0] + v.n
        if not cone(v) or bound > 3:
            continue
        params = StabilityParams((1,), Q(rng.randint(1, 4), rng.randint(1, 2)), (Q(rng.randint(-2, 2), 2),))
        matcher = rng.choice([TrivialMatcher(), PhaseMatcher(params, config.ns_gram),
                              ReducedHilbertMatcher(params, config.ns_gram, config.chi_O)])
        try:
            got = enumerate_decompositions(v, matcher, cone, box, config)
        except K3OrbError:
            continue
        instances += 1
        want = brute_decompositions(v, matcher, cone, box, config, bound)
        mismatches += set(got) != want or len(got) != len(want)
    record("AC9 enumerator equals brute force", mismatches == 0, f"{mismatches} mismatches over {instances} instances")


def test_ac10_cli_determinism():
    from pathlib import Path

    golden = Path(__file__).parent / "golden"
    bad = []
    for name, argv in sorted(CASES.items()):
        outs = []
        for _ in range(2):
            buf = io.StringIO()
            run(argv, buf, io.StringIO())
            outs.append(buf.getvalue())
        if not outs[0] == outs[1] == (golden / f"{name}.txt").read_text():
            bad.append(name)
        if argv[0] not in ("series", "transport", "decomp"):
            buf = io.StringIO()
            run(argv + ["--json"], buf, io.StringIO())
            payload = json.loads(buf.getvalue())
            for line in outs[0].splitlines():
                label, _, value = line.partition(" = ")
                if str(payload[label]) != value.split("  (approx")[0]:
                    bad.append(name + "/json")
    subcommands = {argv[0] for argv in CASES.values()}
    expected = {"series", "pairing", "joyce", "transport", "walls", "thresholds", "decomp", "slope", "charge"}
    record("AC10 CLI golden files, determinism, JSON/text equality", not bad and subcommands == expected, ", ".join(bad))
