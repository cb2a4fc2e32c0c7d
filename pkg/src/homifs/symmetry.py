"""Symmetry of attractors shared by ``rx + A`` and ``-rx + B``.

The chain is:

1. digit alignment (:func:`lemma2_align`): under the n^2-distinctness
   hypotheses and ``A + rA = B - rB``, the sorted digits satisfy
   ``b_i - r b_n = a_i + r a_1`` for every i, witnessed by index maps
   ``s, t, u, v``;
2. reflection (:func:`lemma1_apply`): if moreover ``B = A + C`` then
   ``A = C(1 - r)/r - A``, checked through generating functions;
3. :func:`theorem_pipeline` runs both on a concrete pair and validates the
   resulting centre against the attractor covers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Union

from .ifs import (
    BudgetExceeded,
    ConfirmedDistinct,
    HomogeneousIFS,
    Inconclusive,
    Indistinguishable,
    cover,
    interval_budget,
    same_attractor_test,
)
from .laurent import genfun, reversal_shift_equal
from .multiset import DigitMultiset, RationalLike, all_distinct, as_rational, multiset_equal, scale, sumset


class HypothesisViolated(ValueError):
    def __init__(self, which: str, detail: str = ""):
        super().__init__(f"{which}: {detail}" if detail else which)
        self.which = which
        self.detail = detail


class PreconditionFailed(ValueError):
    """``intrinsic`` marks failures that depend on one system only."""

    def __init__(self, name: str, detail: str = "", intrinsic: bool = False):
        super().__init__(f"{name}: {detail}" if detail else name)
        self.name = name
        self.detail = detail
        self.intrinsic = intrinsic


class InternalContradiction(AssertionError):
    """A conclusion that must follow from verified hypotheses did not; always a bug."""


# ---------------------------------------------------------------------------
# reflection lemma


def lemma1_apply(A: DigitMultiset, B: DigitMultiset, r: RationalLike) -> Fraction:
    """Return ``s = C(1 - r)/r`` for ``B = A + C``, certifying ``A = s - A``."""
    r = as_rational(r)
    if r <= 0:
        raise ValueError("r must be positive")
    if len(A) != len(B):
        raise HypothesisViolated("constant-difference", f"|A| = {len(A)} but |B| = {len(B)}")
    a, b = A.as_list(), B.as_list()
    C = b[0] - a[0]
    if any(bi - ai != C for ai, bi in zip(a, b)):
        raise HypothesisViolated("constant-difference", "b_i - a_i is not constant")
    lhs, rhs = sumset(A, scale(r, A)), sumset(B, scale(-r, B))
    if not multiset_equal(lhs, rhs):
        raise HypothesisViolated("multiset-identity", f"A + rA = {lhs} but B - rB = {rhs}")
    s = C * (1 - r) / r
    if not reversal_shift_equal(genfun(A), s):
        raise InternalContradiction(f"A(t) != t^{s} A(1/t) for A = {A}")
    return s


# ---------------------------------------------------------------------------
# alignment lemma


@dataclass(frozen=True)
class AlignmentWitness:
    """Index maps (1-based) with ``b_k - r b_n = a_s(k) + r a_t(k)`` and ``a_k + r a_1 = b_u(k) - r b_v(k)``."""

    n: int
    r: Fraction
    s: tuple[int, ...]
    t: tuple[int, ...]
    u: tuple[int, ...]
    v: tuple[int, ...]
    offsets: tuple[Fraction, ...]  # common value b_i - r b_n = a_i + r a_1


def _representations(X: list[Fraction], Y: list[Fraction], r: Fraction) -> dict[Fraction, tuple[int, int]]:
    """``x_i + r y_j -> (i, j)``, 1-based; caller guarantees uniqueness."""
    return {x + r * y: (i, j) for (i, x), (j, y) in product(enumerate(X, 1), enumerate(Y, 1))}


def lemma2_align(A: DigitMultiset, B: DigitMultiset, r: RationalLike) -> AlignmentWitness:
    r = as_rational(r)
    if r <= 0:
        raise ValueError("r must be positive")
    if len(A) != len(B):
        raise PreconditionFailed("cardinality", f"|A| = {len(A)} but |B| = {len(B)}")
    if not (all_distinct(A) and all_distinct(B)):
        raise PreconditionFailed("cardinality", "A and B must be sets")
    for label, M in (
        ("A + rA", sumset(A, scale(r, A))),
        ("rB + A", sumset(scale(r, B), A)),
        ("-rA + B", sumset(scale(-r, A), B)),
    ):
        if not all_distinct(M):
            raise PreconditionFailed("distinctness", f"{label} has repeated elements")
    lhs, rhs = sumset(A, scale(r, A)), sumset(B, scale(-r, B))
    if not multiset_equal(lhs, rhs):
        raise PreconditionFailed("multiset-identity", f"A + rA = {lhs} but B - rB = {rhs}")

    a, b = A.as_list(), B.as_list()
    n = len(a)
    plus = _representations(a, a, r)  # a_i + r a_j
    minus = _representations(b, b, -r)  # b_i - r b_j
    s, t, u, v = [], [], [], []
    for k in range(n):
        i, j = plus[b[k] - r * b[-1]]
        s.append(i)
        t.append(j)
        i, j = minus[a[k] + r * a[0]]
        u.append(i)
        v.append(j)
    if sorted(s) != list(range(1, n + 1)) or sorted(u) != list(range(1, n + 1)):
        raise InternalContradiction(f"s = {s}, u = {u} are not permutations")

    # base case: the two minima coincide
    if min(lhs.values()) != a[0] + r * a[0] or min(rhs.values()) != b[0] - r * b[-1]:
        raise InternalContradiction("minimum of the sumsets is not where the ordering puts it")
    # induction: u(i) >= i and s(i) >= i once all earlier indices are fixed
    for i in range(1, n + 1):
        if u[i - 1] < i or s[i - 1] < i:
            raise InternalContradiction(f"induction fails at i = {i}")
        if b[i - 1] - r * b[-1] != a[i - 1] + r * a[0]:
            raise InternalContradiction(f"b_{i} - r b_n != a_{i} + r a_1")
    if s != list(range(1, n + 1)) or u != list(range(1, n + 1)):
        raise InternalContradiction("index maps are not the identity after the induction")
    offsets = tuple(ai + r * a[0] for ai in a)
    return AlignmentWitness(n, r, tuple(s), tuple(t), tuple(u), tuple(v), offsets)


# ---------------------------------------------------------------------------
# mirror candidate and symmetry tests


def mirror_candidate(phi: HomogeneousIFS) -> HomogeneousIFS:
    """The only ``-rx + B`` compatible with the alignment relation for ``phi = rx + A``."""
    r = phi.ratio
    if r <= 0:
        raise ValueError(f"mirror candidate needs a positive ratio, got {r}; swap the roles of the two systems")
    a = phi.digits.as_list()
    b_n = (a[-1] + r * a[0]) / (1 - r)
    return HomogeneousIFS(-r, DigitMultiset.of(ai + r * a[0] + r * b_n for ai in a))


def is_symmetric_multiset(A: DigitMultiset) -> Fraction | None:
    if not len(A):
        return None
    m = (A.min + A.max) / 2
    return m if multiset_equal(A, A.reflect(2 * m)) else None


def attractor_symmetry_check(phi: HomogeneousIFS, center: RationalLike, k: int, budget: int | None = None) -> bool:
    """Whether the level-``k`` cover is invariant under ``x -> 2 center - x``."""
    center = as_rational(center)
    cv = cover(phi, k, budget)
    twice = 2 * center * cv.scale
    if twice.denominator != 1:
        return False
    twice = int(twice)
    w = cv.width_num
    reflected = sorted(twice - lo - w for lo in cv.los)
    return reflected == list(cv.los)


# ---------------------------------------------------------------------------
# pipeline


@dataclass(frozen=True)
class SymmetryCertificate:
    C: Fraction
    digit_center: Fraction
    attractor_center: Fraction
    ratio: Fraction
    checks: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.attractor_center != self.digit_center / (1 - self.ratio):
            raise InternalContradiction("attractor centre is not digit centre / (1 - r)")


@dataclass(frozen=True)
class Symmetric:
    certificate: SymmetryCertificate
    kind: str = field(default="symmetric", init=False)


@dataclass(frozen=True)
class PreconditionFailedVerdict:
    name: str
    detail: str
    kind: str = field(default="precondition_failed", init=False)


@dataclass(frozen=True)
class AttractorsDiffer:
    level: int
    lower_bound: Fraction
    kind: str = field(default="attractors_differ", init=False)


@dataclass(frozen=True)
class InconclusiveVerdict:
    detail: str
    kind: str = field(default="inconclusive", init=False)


PairVerdict = Union[Symmetric, PreconditionFailedVerdict, AttractorsDiffer, InconclusiveVerdict]

DEFAULT_EPSILON = Fraction(1, 10**6)
DEFAULT_K_MAX = 40
SYMMETRY_LEVEL = 6


@dataclass
class PipelineTrace:
    """Per-step log filled by :func:`theorem_pipeline` when one is passed in."""

    steps: list[tuple[str, str]] = field(default_factory=list)
    attractor_test: ConfirmedDistinct | Indistinguishable | None = None
    symmetry_level: int | None = None

    def log(self, step: str, outcome: str) -> None:
        self.steps.append((step, outcome))


def _symmetry_level(n: int, wanted: int, budget: int | None) -> int:
    budget = interval_budget() if budget is None else budget
    k = wanted
    while k > 0 and n**k > budget:
        k -= 1
    return k


def _algebra(phi: HomogeneousIFS, psi: HomogeneousIFS, level: int, budget: int | None, trace: PipelineTrace):
    """Steps 1-7; returns a certificate or raises PreconditionFailed / BudgetExceeded."""
    r, A, B = phi.ratio, phi.digits, psi.digits
    AA = sumset(A, scale(r, A))  # digits of phi o phi
    # a defect of phi alone is reported whatever psi is
    if not all_distinct(AA):
        raise PreconditionFailed("distinctness", f"A + rA = {AA} has repeated elements", intrinsic=True)
    if psi.ratio != -r:
        raise PreconditionFailed("ratio", f"ratios {phi.ratio} and {psi.ratio} are not opposite")
    trace.log("ratio", f"r = {r}")
    if len(A) != len(B):
        raise PreconditionFailed("map-count", f"{len(A)} maps against {len(B)}")
    trace.log("map-count", f"n = {len(A)}")

    BB = sumset(B, scale(-r, B))  # psi o psi
    AB = sumset(scale(r, B), A)  # phi o psi
    BA = sumset(scale(-r, A), B)  # psi o phi
    # a repeat on the psi side alone already breaks the identities below
    if not multiset_equal(AA, BB):
        raise PreconditionFailed("multiset-identity", f"A + rA = {AA} but B - rB = {BB}")
    if not multiset_equal(AB, BA):
        raise PreconditionFailed("multiset-identity", f"rB + A = {AB} but -rA + B = {BA}")
    if not all_distinct(AB):
        raise PreconditionFailed("distinctness", f"rB + A = {AB} has repeated elements")
    trace.log("distinctness", f"all four composed digit sets have {len(A) ** 2} distinct elements")
    trace.log("multiset-identity", "A + rA = B - rB and rB + A = -rA + B")

    witness = lemma2_align(A, B, r)
    trace.log("alignment", "b_i - r b_n = a_i + r a_1 for all i")
    a, b = A.as_list(), B.as_list()
    C = r * b[-1] + r * a[0]
    try:
        s = lemma1_apply(A, B, r)
    except HypothesisViolated as exc:
        raise InternalContradiction(f"reflection lemma hypotheses fail after alignment: {exc}") from exc
    if s != C * (1 - r) / r:
        raise InternalContradiction("reflection parameter disagrees with C(1 - r)/r")
    trace.log("reflection", f"C = {C}, A = {s} - A")

    center = (a[0] + b[-1]) / 2
    if not attractor_symmetry_check(phi, center, level, budget):
        raise InternalContradiction(f"level-{level} cover is not symmetric about {center}")
    trace.log("attractor-symmetry", f"level-{level} cover symmetric about {center}")
    checks = ("ratio", "map-count", "distinctness", "multiset-identity", "alignment", "reflection",
              f"attractor-symmetry@{level}")
    assert witness.n == len(a)
    return SymmetryCertificate(C=C, digit_center=s / 2, attractor_center=center, ratio=r, checks=checks)


def theorem_pipeline(
    phi: HomogeneousIFS,
    psi: HomogeneousIFS,
    epsilon: RationalLike = DEFAULT_EPSILON,
    k_max: int = DEFAULT_K_MAX,
    budget: int | None = None,
    symmetry_level: int = SYMMETRY_LEVEL,
    trace: PipelineTrace | None = None,
) -> PairVerdict:
    """Check the hypotheses on ``(phi, psi)`` and certify or refute symmetry.

    Mathematical failures come back as verdict variants, never as exceptions.
    A certified difference of the attractors takes precedence over failed
    preconditions that involve both systems; a repeat in ``A + rA`` (a defect
    of ``phi`` alone) is reported as such whatever ``psi`` is.
    """
    trace = PipelineTrace() if trace is None else trace
    if phi.ratio < 0 < psi.ratio:
        phi, psi = psi, phi
        trace.log("swap", "roles swapped so that r > 0")

    level = _symmetry_level(phi.n, symmetry_level, budget)
    trace.symmetry_level = level
    failure: PairVerdict | None = None
    intrinsic = False
    certificate = None
    try:
        certificate = _algebra(phi, psi, level, budget, trace)
    except PreconditionFailed as exc:
        trace.log(exc.name, "failed: " + exc.detail)
        failure = PreconditionFailedVerdict(exc.name, exc.detail)
        intrinsic = exc.intrinsic
    except BudgetExceeded as exc:
        trace.log("attractor-symmetry", f"budget: {exc}")
        failure = InconclusiveVerdict(f"budget exceeded during symmetry check: {exc}")

    try:
        test = same_attractor_test(phi, psi, epsilon, k_max, budget)
        trace.attractor_test = test
    except (Inconclusive, BudgetExceeded) as exc:
        test = None
        trace.log("same-attractor", f"no certificate: {exc}")

    if isinstance(test, ConfirmedDistinct):
        trace.log("same-attractor", f"attractors differ (level {test.level}, distance >= {test.lower})")
        if intrinsic:
            return failure
        if certificate is not None:
            raise InternalContradiction("certified symmetric pair has distinct attractors")
        return AttractorsDiffer(test.level, test.lower)
    if isinstance(test, Indistinguishable):
        trace.log("same-attractor", f"within {test.upper} <= {test.epsilon} at level {test.level}")
    if certificate is not None:
        extra = (f"same-attractor@{test.level}",) if test is not None else ()
        return Symmetric(SymmetryCertificate(
            certificate.C, certificate.digit_center, certificate.attractor_center,
            certificate.ratio, certificate.checks + extra,
        ))
    return failure
