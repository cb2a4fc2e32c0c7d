import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from homifs.campaign import Config, alignment_instance, random_cosc_ifs, reflection_instance
from homifs.ifs import HomogeneousIFS, check_cosc
from homifs.multiset import DigitMultiset
from homifs.symmetry import (
    AttractorsDiffer,
    HypothesisViolated,
    PipelineTrace,
    PreconditionFailed,
    PreconditionFailedVerdict,
    Symmetric,
    SymmetryCertificate,
    InternalContradiction,
    attractor_symmetry_check,
    is_symmetric_multiset,
    lemma1_apply,
    lemma2_align,
    mirror_candidate,
    theorem_pipeline,
)
from oracles import brute_reflect, brute_sumset

M = DigitMultiset.of
H = HomogeneousIFS.of
CANTOR = H(F(1, 3), [0, 2])
CANTOR_MIRROR = H(F(-1, 3), [1, 3])
ASYM = H(F(1, 5), [0, 1, 3])
ASYM_MIRROR = H(F(-1, 5), [F(3, 4), F(7, 4), F(15, 4)])
CFG = Config()


def test_lemma1_examples():
    assert lemma1_apply(M([0, 2]), M([1, 3]), F(1, 3)) == 2
    assert lemma1_apply(M([5]), M([15]), F(1, 2)) == 10
    with pytest.raises(HypothesisViolated) as info:
        lemma1_apply(M([0, 1]), M([3, 4]), F(1, 2))
    assert info.value.which == "multiset-identity"


def test_lemma1_requires_constant_difference():
    with pytest.raises(HypothesisViolated) as info:
        lemma1_apply(M([0, 2]), M([1, 4]), F(1, 3))
    assert info.value.which == "constant-difference"


def test_lemma2_cantor_witness():
    w = lemma2_align(M([0, 2]), M([1, 3]), F(1, 3))
    assert w.s == w.u == (1, 2)
    assert w.offsets == (0, 2)


@pytest.mark.parametrize("r", [F(1, 2), F(1, 3), F(3, 7)])
def test_lemma2_singleton_forced(r):
    b = 5 * (1 + r) / (1 - r)
    w = lemma2_align(M([5]), M([b]), r)
    assert w.s == w.t == w.u == w.v == (1,)
    with pytest.raises(PreconditionFailed) as info:
        lemma2_align(M([5]), M([b + 1]), r)
    assert info.value.name == "multiset-identity"


def test_lemma2_asymmetric_fixture_fails_identity():
    r = F(1, 5)
    a, b = [0, 1, 3], [F(3, 4), F(7, 4), F(15, 4)]
    lhs = brute_sumset(a, [r * x for x in a])
    rhs = brute_sumset(b, [-r * x for x in b])
    assert lhs == [0, F(1, 5), F(3, 5), 1, F(6, 5), F(8, 5), 3, F(16, 5), F(18, 5)]
    assert lhs != rhs
    with pytest.raises(PreconditionFailed) as info:
        lemma2_align(M(a), M(b), r)
    assert info.value.name == "multiset-identity"


def test_lemma2_rejects_colliding_sums():
    with pytest.raises(PreconditionFailed) as info:
        lemma2_align(M([0, 1, 2]), M([0, 1, 2]), F(1, 2))
    assert info.value.name == "distinctness"
    with pytest.raises(PreconditionFailed) as info:
        lemma2_align(M([0, 1]), M([0, 1, 2]), F(1, 2))
    assert info.value.name == "cardinality"


@pytest.mark.parametrize(
    "phi, expected",
    [
        (CANTOR, CANTOR_MIRROR),
        (ASYM, ASYM_MIRROR),
        (H(F(1, 2), [0, 1]), H(F(-1, 2), [1, 2])),
    ],
)
def test_mirror_candidate_examples(phi, expected):
    assert mirror_candidate(phi) == expected


def test_mirror_candidate_rejects_negative_ratio():
    with pytest.raises(ValueError, match="swap"):
        mirror_candidate(CANTOR_MIRROR)


@pytest.mark.parametrize("A, m", [([0, 2], 1), ([0, 1, 3], None), ([0, 1, 2, 3], F(3, 2))])
def test_is_symmetric_multiset_examples(A, m):
    assert is_symmetric_multiset(M(A)) == m


@pytest.mark.parametrize(
    "phi, center, k, expected",
    [(CANTOR, F(3, 2), 3, True), (CANTOR, 1, 1, False), (ASYM, F(15, 8), 4, False)],
)
def test_attractor_symmetry_examples(phi, center, k, expected):
    assert attractor_symmetry_check(phi, center, k) is expected


def test_pipeline_cantor():
    trace = PipelineTrace()
    v = theorem_pipeline(CANTOR, CANTOR_MIRROR, trace=trace)
    assert isinstance(v, Symmetric)
    cert = v.certificate
    assert (cert.attractor_center, cert.C, cert.digit_center) == (F(3, 2), 1, 1)
    assert cert.checks[-1] == "same-attractor@15"
    steps = [name for name, _ in trace.steps]
    assert steps[:6] == ["ratio", "map-count", "distinctness", "multiset-identity", "alignment", "reflection"]


def test_pipeline_role_swap():
    v = theorem_pipeline(CANTOR_MIRROR, CANTOR)
    assert isinstance(v, Symmetric) and v.certificate.attractor_center == F(3, 2)


def test_pipeline_wrong_digits():
    v = theorem_pipeline(CANTOR, H(F(-1, 3), [0, 2]))
    assert isinstance(v, (AttractorsDiffer, PreconditionFailedVerdict))
    if isinstance(v, PreconditionFailedVerdict):
        assert v.name == "multiset-identity"


@pytest.mark.parametrize("psi", [H(F(-1, 2), [0, 1, 2]), CANTOR_MIRROR, H(F(1, 7), [0, 5, 9])])
def test_pipeline_colliding_phi(psi):
    v = theorem_pipeline(H(F(1, 2), [0, 1, 2]), psi, k_max=20)
    assert v == PreconditionFailedVerdict("distinctness", v.detail)


def test_pipeline_asymmetric_fixture():
    v = theorem_pipeline(ASYM, ASYM_MIRROR)
    assert v == AttractorsDiffer(3, F(3, 50))


def test_pipeline_ratio_mismatch():
    v = theorem_pipeline(CANTOR, H(F(-1, 4), [1, 3]), k_max=10)
    assert isinstance(v, (AttractorsDiffer, PreconditionFailedVerdict))


def test_certificate_center_is_validated():
    with pytest.raises(InternalContradiction):
        SymmetryCertificate(C=F(1), digit_center=F(1), attractor_center=F(1), ratio=F(1, 3))


seeds = st.integers(0, 2**32)


@settings(max_examples=100, deadline=None)
@given(seeds, st.integers(1, 6))
def test_reflection_lemma_on_constructed_instances(seed, n):
    A, B, r = reflection_instance(random.Random(seed), n, CFG)
    s = lemma1_apply(A, B, r)
    assert brute_reflect(A.as_list(), s) == A.as_list()


@settings(max_examples=100, deadline=None)
@given(seeds, st.integers(1, 5))
def test_alignment_lemma_on_constructed_instances(seed, n):
    A, B, r = alignment_instance(random.Random(seed), n, CFG)
    w = lemma2_align(A, B, r)
    a, b = A.as_list(), B.as_list()
    assert all(b[i] - r * b[-1] == a[i] + r * a[0] for i in range(n))
    assert w.s == w.u == tuple(range(1, n + 1))
    # extremal base case
    assert min(brute_sumset(a, [r * x for x in a])) == a[0] + r * a[0]
    assert min(brute_sumset(b, [-r * x for x in b])) == b[0] - r * b[-1]


@settings(max_examples=30, deadline=None)
@given(seeds, st.integers(2, 4))
def test_mirror_pipeline_positive(seed, n):
    phi = random_cosc_ifs(random.Random(seed), n, CFG, symmetric=True)
    assert check_cosc(phi)
    v = theorem_pipeline(phi, mirror_candidate(phi), epsilon=F(1, 1000), k_max=20, symmetry_level=4)
    assert isinstance(v, Symmetric)
    a, b = phi.digits.as_list(), mirror_candidate(phi).digits.as_list()
    assert v.certificate.attractor_center == (a[0] + b[-1]) / 2
    m = is_symmetric_multiset(phi.digits)
    assert m / (1 - phi.ratio) == v.certificate.attractor_center


@settings(max_examples=30, deadline=None)
@given(seeds, st.integers(3, 4))
def test_mirror_pipeline_negative(seed, n):
    phi = random_cosc_ifs(random.Random(seed), n, CFG, symmetric=False)
    assert is_symmetric_multiset(phi.digits) is None
    v = theorem_pipeline(phi, mirror_candidate(phi), epsilon=F(1, 1000), k_max=20, symmetry_level=4)
    assert not isinstance(v, Symmetric)
