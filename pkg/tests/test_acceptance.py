"""The eight acceptance criteria, each printing one PASS/FAIL line.

Instances are seeded; checks go through the brute-force oracles in
``oracles.py`` wherever the criterion names one.
"""

import json
import math
import random
import time
from bisect import bisect_right
from collections import Counter
from fractions import Fraction as F
from itertools import product

from homifs.campaign import Config, alignment_instance, random_cosc_ifs, random_rational, reflection_instance
from homifs.cli import main
from homifs.ifs import HomogeneousIFS, check_cosc, compose, cover, hull
from homifs.multiset import DigitMultiset, all_distinct
from homifs.symmetry import (
    AttractorsDiffer,
    PreconditionFailedVerdict,
    Symmetric,
    attractor_symmetry_check,
    is_symmetric_multiset,
    lemma1_apply,
    lemma2_align,
    mirror_candidate,
    theorem_pipeline,
)
from oracles import brute_distinct, brute_reflect, brute_sumset

CFG = Config()


def test_1_cantor_end_to_end(tmp_path, capsys, acceptance_line):
    phi, psi = tmp_path / "phi.ifs", tmp_path / "psi.ifs"
    phi.write_text("r = 1/3; digits = 0, 2\n")
    psi.write_text("r = -1/3; digits = 1, 3\n")
    t0 = time.perf_counter()
    code = main(["verify-pair", "--phi", str(phi), "--psi", str(psi), "--json"])
    elapsed = time.perf_counter() - t0
    report = json.loads(capsys.readouterr().out)
    ok = (
        code == 0
        and report["verdict"] == {"kind": "symmetric", "center": "3/2"}
        and report["certificate"]["C"] == "1"
        and elapsed < 1.0
    )
    acceptance_line(1, ok, f"Cantor pair symmetric, center 3/2, C = 1, {elapsed:.3f}s")
    assert ok


def test_2_reflection_lemma_suite(acceptance_line):
    failures = 0
    for i in range(1000):
        rng = random.Random(f"lemma1:{i}")
        A, B, r = reflection_instance(rng, rng.randint(1, 6), CFG)
        s = lemma1_apply(A, B, r)
        a = A.as_list()
        # hypotheses rebuilt by brute force, conclusion by brute reflection
        C = B.as_list()[0] - a[0]
        hyp = brute_sumset(a, [r * x for x in a]) == brute_sumset(B.as_list(), [-r * x for x in B.as_list()])
        if not (hyp and s == C * (1 - r) / r and brute_reflect(a, s) == a):
            failures += 1
    acceptance_line(2, failures == 0, f"1000 reflection instances, {failures} failures")
    assert failures == 0


def test_3_alignment_lemma_suite(acceptance_line):
    failures = checked_unique = 0
    for i in range(1000):
        rng = random.Random(f"lemma2:{i}")
        n = rng.randint(1, 6)
        A, B, r = alignment_instance(rng, n, CFG)
        w = lemma2_align(A, B, r)
        a, b = A.as_list(), B.as_list()
        ok = all(b[k] - r * b[-1] == a[k] + r * a[0] for k in range(n))
        if n <= 4:
            checked_unique += 1
            for k in range(n):
                reps = [(x, y) for x, y in product(range(n), repeat=2) if a[x] + r * a[y] == b[k] - r * b[-1]]
                ok = ok and reps == [(w.s[k] - 1, w.t[k] - 1)]
                reps = [(x, y) for x, y in product(range(n), repeat=2) if b[x] - r * b[y] == a[k] + r * a[0]]
                ok = ok and reps == [(w.u[k] - 1, w.v[k] - 1)]
        failures += not ok
    acceptance_line(3, failures == 0, f"1000 alignment instances ({checked_unique} with uniqueness brute force), "
                                      f"{failures} failures")
    assert failures == 0


def _cosc_systems(tag, count, symmetric):
    out = []
    i = 0
    while len(out) < count:
        rng = random.Random(f"{tag}:{i}")
        i += 1
        n = rng.randint(2 if symmetric else 3, 5)
        phi = random_cosc_ifs(rng, n, CFG, symmetric)
        if check_cosc(phi):
            out.append(phi)
    return out


def test_4_positive_direction(acceptance_line):
    k = 6
    good = 0
    for phi in _cosc_systems("positive", 200, True):
        psi = mirror_candidate(phi)
        v = theorem_pipeline(phi, psi, epsilon=F(1, 10**4), k_max=20, symmetry_level=k)
        a, b = phi.digits.as_list(), psi.digits.as_list()
        center = (a[0] + b[-1]) / 2
        m = is_symmetric_multiset(phi.digits)
        if (
            isinstance(v, Symmetric)
            and v.certificate.attractor_center == center
            and f"attractor-symmetry@{k}" in v.certificate.checks
            and attractor_symmetry_check(phi, center, k)
            and m is not None
            and m / (1 - phi.ratio) == center
        ):
            good += 1
    acceptance_line(4, good == 200, f"{good}/200 symmetric-digit systems certified symmetric at level {k}")
    assert good == 200


def test_5_negative_direction(acceptance_line):
    outcomes = Counter()
    for phi in _cosc_systems("negative", 200, False):
        v = theorem_pipeline(phi, mirror_candidate(phi), epsilon=F(1, 10**4), k_max=20, symmetry_level=4)
        if isinstance(v, Symmetric):
            outcomes["symmetric"] += 1
        elif isinstance(v, PreconditionFailedVerdict) and v.name == "multiset-identity":
            outcomes["multiset-identity"] += 1
        elif isinstance(v, AttractorsDiffer) and v.level <= 20:
            outcomes["attractors_differ"] += 1
        else:
            outcomes["other:" + v.kind] += 1
    certified = outcomes["multiset-identity"] + outcomes["attractors_differ"]
    ok = outcomes["symmetric"] == 0 and certified >= 190
    acceptance_line(5, ok, f"0/200 required symmetric, got {outcomes['symmetric']}; certified negative "
                           f"{certified}/200 {dict(sorted(outcomes.items()))}")
    assert ok


def _int_point_hausdorff(xs, ys):
    """Exact Hausdorff distance between sorted integer point lists."""

    def directed(a, b):
        worst = 0
        for x in a:
            i = bisect_right(b, x)
            worst = max(worst, min(abs(x - b[j]) for j in (i - 1, i) if 0 <= j < len(b)))
        return worst

    return max(directed(xs, ys), directed(ys, xs))


def _endpoints_over(cv, scale):
    f = scale // cv.scale
    return sorted({lo * f for lo in cv.los} | {(lo + cv.width_num) * f for lo in cv.los})


def test_6_cover_certification(acceptance_line):
    systems = [HomogeneousIFS.of(F(1, 3), [0, 2])] + _cosc_systems("covers", 50, True)[:25] + _cosc_systems(
        "covers-asym", 25, False
    )
    limit = 2**17  # endpoint-set size kept at desk scale
    violations = samples = 0
    for phi in systems:
        width = hull(phi).width
        for k in range(13):
            if phi.n ** (k + 4) > limit:
                break
            coarse, fine = cover(phi, k), cover(phi, k + 4)
            assert fine.scale % coarse.scale == 0
            d = F(_int_point_hausdorff(_endpoints_over(coarse, fine.scale), _endpoints_over(fine, fine.scale)),
                  fine.scale)
            samples += 1
            violations += d > abs(phi.ratio) ** k * width
    ok = violations == 0
    acceptance_line(6, ok, f"{len(systems)} systems, {samples} sampled levels k <= 12, {violations} violations")
    assert ok


def _lattice_form(cv, scale):
    """Exact interval multiset as integer numerators over ``scale``."""
    f, rem = divmod(scale, cv.scale)
    assert rem == 0
    return cv.width_num * f, Counter(lo * f for lo in cv.los)


def test_7_composition_identity(acceptance_line):
    violations = checks = 0
    i = 0
    systems = []
    while len(systems) < 50:
        rng = random.Random(f"compose:{i}")
        i += 1
        n = rng.randint(2, 3)
        phi = random_cosc_ifs(rng, n, CFG, symmetric=n == 2 or rng.random() < 0.5)
        if rng.random() < 0.5:
            phi = HomogeneousIFS(-phi.ratio, phi.digits)
        try:
            sq = compose(phi, phi)
        except ValueError:
            continue
        systems.append((phi, sq))
    for phi, sq in systems:
        for k in range(6):
            checks += 1
            a, b = cover(sq, k), cover(phi, 2 * k)
            common = math.lcm(a.scale, b.scale)
            violations += _lattice_form(a, common) != _lattice_form(b, common)
    ok = violations == 0
    acceptance_line(7, ok, f"50 systems x k = 0..5 ({checks} comparisons), {violations} violations")
    assert ok


def test_8_distinctness_oracle(acceptance_line):
    rng = random.Random("distinct")
    disagreements = collisions = 0
    for i in range(10_000):
        values = [random_rational(rng, 6, 3) for _ in range(rng.randint(1, 12))]
        if i % 2:  # engineered collisions: a repeat, or a sum landing on an existing value
            if rng.random() < 0.5:
                values.append(rng.choice(values))
            else:
                x, y = rng.choice(values), rng.choice(values)
                values.extend([x + y, y + x])
        expected = brute_distinct(values)
        collisions += not expected
        disagreements += all_distinct(DigitMultiset.of(values)) != expected
    ok = disagreements == 0
    acceptance_line(8, ok, f"10000 multisets ({collisions} with repeats), {disagreements} disagreements")
    assert ok
