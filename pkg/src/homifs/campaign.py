"""Seeded random instances and the property campaign behind ``homifs proptest``.

Every case draws from its own ``random.Random`` derived from the master seed
and the case index, so a campaign is reproducible case by case.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import count, product
from typing import Callable

from .ifs import HomogeneousIFS, check_cosc, compose, cover
from .laurent import genfun, poly_multiply, rescale_exponents
from .multiset import DigitMultiset, all_distinct, scale, sumset
from .symmetry import (
    Symmetric,
    is_symmetric_multiset,
    lemma1_apply,
    lemma2_align,
    mirror_candidate,
    theorem_pipeline,
)
from .textio import format_ifs, parse_ifs


@dataclass
class Config:
    n_max: int = 5
    r_den_max: int = 10
    digit_den_max: int = 6
    epsilon: Fraction = Fraction(1, 1000)
    k_max: int = 20
    symmetry_level: int = 4


# ---------------------------------------------------------------------------
# generators


def random_ratio(rng: random.Random, den_max: int, bound: Fraction = Fraction(1)) -> Fraction:
    """A ratio ``p/q`` in ``(0, bound)`` with ``q <= den_max``; ``bound`` must admit one."""
    while True:
        q = rng.randint(2, den_max)
        p = rng.randint(1, q - 1)
        r = Fraction(p, q)
        if r < bound:
            return r


def random_rational(rng: random.Random, den_max: int, span: int = 8) -> Fraction:
    den = rng.randint(1, den_max)
    return Fraction(rng.randint(-span * den, span * den), den)


def _gap(rng: random.Random, den_max: int) -> Fraction:
    den = rng.randint(1, den_max)
    return Fraction(rng.randint(den, 3 * den), den)  # in [1, 3]


def gap_digits(rng: random.Random, n: int, den_max: int, symmetric: bool) -> list[Fraction]:
    """``n`` increasing digits; palindromic gaps give a symmetric set."""
    half = [_gap(rng, den_max) for _ in range(n // 2)]
    if symmetric:
        gaps = half + half[::-1][(n - 1) % 2:]
    else:
        gaps = [_gap(rng, den_max) for _ in range(n - 1)]
    return _from_gaps(random_rational(rng, den_max, span=4), gaps)


def _from_gaps(start: Fraction, gaps: list[Fraction]) -> list[Fraction]:
    digits = [start]
    for g in gaps:
        digits.append(digits[-1] + g)
    return digits


def min_ratio_denominator(n: int, symmetric: bool) -> int:
    """Smallest ``r_den_max`` for which :func:`random_cosc_ifs` can always succeed."""
    return n if symmetric else n + 1


def random_cosc_ifs(rng: random.Random, n: int, cfg: Config, symmetric: bool) -> HomogeneousIFS:
    """A system with ``n`` maps satisfying the convex open set condition.

    Asymmetric requests never return a symmetric digit set, so they need ``n >= 3``.
    After repeated misses the gaps fall back to the tightest pattern (all equal,
    or all equal but the last doubled), which admits ``r = 1/n`` or ``1/(n+1)``.
    """
    if not symmetric and n < 3:
        raise ValueError("every two-point digit set is symmetric")
    if cfg.r_den_max < min_ratio_denominator(n, symmetric):
        raise ValueError(f"r_den_max = {cfg.r_den_max} admits no COSC ratio for n = {n}")
    for attempt in count():
        if attempt < 64:
            digits = gap_digits(rng, n, cfg.digit_den_max, symmetric)
        else:
            gaps = [Fraction(1)] * (n - 1) if symmetric else [Fraction(1)] * (n - 2) + [Fraction(2)]
            digits = _from_gaps(random_rational(rng, cfg.digit_den_max, span=4), gaps)
        D = DigitMultiset.of(digits)
        if not symmetric and is_symmetric_multiset(D) is not None:
            continue
        width = digits[-1] - digits[0]
        min_gap = min(b - a for a, b in zip(digits, digits[1:]))
        # COSC needs r * width / (1 - r) <= min_gap
        bound = min_gap / (width + min_gap)
        if bound < Fraction(1, cfg.r_den_max):
            continue
        r = random_ratio(rng, cfg.r_den_max, bound + Fraction(1, 10**9))
        phi = HomogeneousIFS(r, D)
        if check_cosc(phi):
            return phi
    raise AssertionError("unreachable")


def symmetric_multiset(rng: random.Random, n: int, den_max: int, distinct: bool) -> DigitMultiset:
    center = random_rational(rng, den_max, span=4)
    offsets: list[Fraction] = []
    while len(offsets) < n // 2:
        d = abs(random_rational(rng, den_max, span=4))
        if distinct and (d == 0 or d in offsets):
            continue
        offsets.append(d)
    values = [center + d for d in offsets] + [center - d for d in offsets]
    if n % 2:
        values.append(center)
    return DigitMultiset.of(values)


def reflection_instance(rng: random.Random, n: int, cfg: Config):
    """``(A, B, r)`` with ``A`` symmetric and ``B = A + C`` for the compatible ``C``."""
    A = symmetric_multiset(rng, n, cfg.digit_den_max, distinct=False)
    r = random_ratio(rng, cfg.r_den_max)
    m = (A.min + A.max) / 2
    C = 2 * m * r / (1 - r)
    return A, A.shift(C), r


def alignment_instance(rng: random.Random, n: int, cfg: Config):
    """``(A, B, r)`` with ``B`` the mirror relation image of a symmetric set ``A``, hypotheses met."""
    while True:
        A = symmetric_multiset(rng, n, cfg.digit_den_max, distinct=True)
        if len(A) != n:
            continue
        r = random_ratio(rng, cfg.r_den_max)
        a = A.as_list()
        b_n = (a[-1] + r * a[0]) / (1 - r)
        B = DigitMultiset.of(x + r * a[0] + r * b_n for x in a)
        if all(
            all_distinct(M)
            for M in (sumset(A, scale(r, A)), sumset(scale(r, B), A), sumset(scale(-r, A), B))
        ):
            return A, B, r


# ---------------------------------------------------------------------------
# properties
#
# Each property takes (rng, cfg) and returns None on success or a
# (size, instance text) pair describing the counterexample.

Failure = tuple[int, str]


def _multiset_text(r: Fraction, *sets: DigitMultiset) -> str:
    return " | ".join(f"r = {r}; digits = " + ", ".join(str(x) for x in S) for S in sets)


def prop_sumset_algebra(rng, cfg) -> Failure | None:
    sets = [DigitMultiset.of(random_rational(rng, 4, 3) for _ in range(rng.randint(1, cfg.n_max))) for _ in range(3)]
    A, B, C = sets
    r = random_rational(rng, 5, 2)
    ok = (
        sumset(A, B) == sumset(B, A)
        and sumset(sumset(A, B), C) == sumset(A, sumset(B, C))
        and len(sumset(A, B)) == len(A) * len(B)
        and scale(r, sumset(A, B)) == sumset(scale(r, A), scale(r, B))
    )
    return None if ok else (len(A) + len(B) + len(C), _multiset_text(r, A, B, C))


def prop_distinct_oracle(rng, cfg) -> Failure | None:
    values = [random_rational(rng, 3, 2) for _ in range(rng.randint(1, 2 * cfg.n_max))]
    if rng.random() < 0.5 and values:
        values.append(rng.choice(values))
    A = DigitMultiset.of(values)
    flat = A.as_list()
    brute = all(flat[i] != flat[j] for i in range(len(flat)) for j in range(i + 1, len(flat)))
    return None if all_distinct(A) == brute else (len(A), _multiset_text(Fraction(1), A))


def prop_genfun_homomorphism(rng, cfg) -> Failure | None:
    A = DigitMultiset.of(random_rational(rng, 5, 3) for _ in range(rng.randint(1, cfg.n_max)))
    B = DigitMultiset.of(random_rational(rng, 5, 3) for _ in range(rng.randint(1, cfg.n_max)))
    r = random_rational(rng, 5, 2) or Fraction(1, 2)
    ok = poly_multiply(genfun(A), genfun(B)) == genfun(sumset(A, B)) and rescale_exponents(
        genfun(A), r
    ) == genfun(scale(r, A))
    return None if ok else (len(A) + len(B), _multiset_text(r, A, B))


def prop_reflection_lemma(rng, cfg) -> Failure | None:
    A, B, r = reflection_instance(rng, rng.randint(1, cfg.n_max + 1), cfg)
    s = lemma1_apply(A, B, r)
    ok = sorted(s - a for a in A) == A.as_list()
    return None if ok else (len(A), _multiset_text(r, A, B))


def prop_alignment_lemma(rng, cfg) -> Failure | None:
    n = rng.randint(1, cfg.n_max)
    A, B, r = alignment_instance(rng, n, cfg)
    w = lemma2_align(A, B, r)
    a, b = A.as_list(), B.as_list()
    ok = all(b[i] - r * b[-1] == a[i] + r * a[0] for i in range(n)) and w.s == w.u == tuple(range(1, n + 1))
    if ok and n <= 4:
        for k in range(n):
            reps = [(i, j) for i, j in product(range(n), repeat=2) if a[i] + r * a[j] == b[k] - r * b[-1]]
            ok = ok and reps == [(w.s[k] - 1, w.t[k] - 1)]
    return None if ok else (n, _multiset_text(r, A, B))


def _any_cosc_ifs(rng, cfg, n_max):
    n = rng.randint(2, n_max)
    return random_cosc_ifs(rng, n, cfg, n == 2 or rng.random() < 0.5)


def prop_cover_refinement(rng, cfg) -> Failure | None:
    phi = _any_cosc_ifs(rng, cfg, min(cfg.n_max, 4))
    k = rng.randint(0, 3)
    coarse, fine = cover(phi, k).intervals, cover(phi, k + 1).intervals
    ok = all(any(c.contains(f) for c in coarse) for f in fine)
    return None if ok else (phi.n, format_ifs(phi))


def prop_composition_cover(rng, cfg) -> Failure | None:
    phi = _any_cosc_ifs(rng, cfg, min(cfg.n_max, 4))
    k = rng.randint(0, 2)
    ok = cover(compose(phi, phi), k).intervals == cover(phi, 2 * k).intervals
    return None if ok else (phi.n, format_ifs(phi))


def prop_text_roundtrip(rng, cfg) -> Failure | None:
    phi = _any_cosc_ifs(rng, cfg, cfg.n_max)
    if rng.random() < 0.5:
        phi = HomogeneousIFS(-phi.ratio, phi.digits)
    return None if parse_ifs(format_ifs(phi)) == phi else (phi.n, format_ifs(phi))


def _pipeline(phi, cfg):
    return theorem_pipeline(
        phi, mirror_candidate(phi), cfg.epsilon, cfg.k_max, symmetry_level=cfg.symmetry_level
    )


def prop_mirror_positive(rng, cfg) -> Failure | None:
    phi = random_cosc_ifs(rng, rng.randint(2, cfg.n_max), cfg, symmetric=True)
    verdict = _pipeline(phi, cfg)
    psi = mirror_candidate(phi)
    ok = (
        isinstance(verdict, Symmetric)
        and verdict.certificate.attractor_center == (phi.digits.min + psi.digits.max) / 2
        and is_symmetric_multiset(phi.digits) / (1 - phi.ratio) == verdict.certificate.attractor_center
    )
    return None if ok else (phi.n, format_ifs(phi))


def prop_mirror_negative(rng, cfg) -> Failure | None:
    phi = random_cosc_ifs(rng, rng.randint(3, max(3, cfg.n_max)), cfg, symmetric=False)
    verdict = _pipeline(phi, cfg)
    return None if not isinstance(verdict, Symmetric) else (phi.n, format_ifs(phi))


PROPERTIES: dict[str, Callable] = {
    "multiset.sumset-algebra": prop_sumset_algebra,
    "multiset.distinct-oracle": prop_distinct_oracle,
    "laurent.homomorphism": prop_genfun_homomorphism,
    "lemma.reflection": prop_reflection_lemma,
    "lemma.alignment": prop_alignment_lemma,
    "ifs.cover-refinement": prop_cover_refinement,
    "ifs.composition-cover": prop_composition_cover,
    "cli.text-roundtrip": prop_text_roundtrip,
    "pipeline.mirror-positive": prop_mirror_positive,
    "pipeline.mirror-negative": prop_mirror_negative,
}


@dataclass
class PropertyTally:
    passed: int = 0
    failed: int = 0
    smallest: Failure | None = None

    def record(self, outcome: Failure | None) -> None:
        if outcome is None:
            self.passed += 1
            return
        self.failed += 1
        if self.smallest is None or outcome < self.smallest:
            self.smallest = outcome


@dataclass
class CampaignResult:
    seed: int
    cases: int
    tallies: dict[str, PropertyTally] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(t.failed == 0 for t in self.tallies.values())


def case_rng(seed: int, index: int) -> random.Random:
    return random.Random(f"homifs:{seed}:{index}")


def run_campaign(seed: int, cases: int, cfg: Config | None = None) -> CampaignResult:
    if cases < 1:
        raise ValueError("cases must be at least 1")
    cfg = cfg or Config()
    result = CampaignResult(seed, cases, {name: PropertyTally() for name in PROPERTIES})
    for i in range(cases):
        rng = case_rng(seed, i)
        for name, prop in PROPERTIES.items():
            try:
                outcome = prop(rng, cfg)
            except Exception as exc:  # a crash counts against the property
                outcome = (10**9, f"case {i}: {type(exc).__name__}: {exc}")
            result.tallies[name].record(outcome)
    return result
