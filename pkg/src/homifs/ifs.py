"""Homogeneous IFSs on the line: hulls, covers, separation, attractor comparison.

A system ``x -> r x + a`` (``a`` ranging over a digit set ``A``) is a
:class:`HomogeneousIFS`. Its level-``k`` cover is the family of ``n^k``
intervals ``r^k H + s`` where ``H`` is the convex hull of the attractor and
``s`` runs over the ``k``-fold digit expansions ``A + rA + ... + r^(k-1) A``.

Internally every level is encoded on an integer lattice: with ``r = p/q`` in
lowest terms, all level-``k`` endpoints are integer multiples of
``1/(base * q^k)``, so expansion, sorting and distance computations are pure
integer work. Rationals only appear at the API boundary.
"""

from __future__ import annotations

import math
import os
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import lcm
from typing import Iterable, Iterator, Sequence

from .multiset import DigitMultiset, RationalLike, as_rational, scale, sumset, all_distinct

DEFAULT_BUDGET = 2**24
BUDGET_ENV = "HOMIFS_INTERVAL_BUDGET"


def interval_budget() -> int:
    """Maximum number of intervals a single expansion step may produce."""
    raw = os.environ.get(BUDGET_ENV)
    if raw is None or not raw.strip():
        return DEFAULT_BUDGET
    value = int(raw)
    if value < 1:
        raise ValueError(f"{BUDGET_ENV} must be a positive integer, got {raw!r}")
    return value


class BudgetExceeded(RuntimeError):
    def __init__(self, requested: int, budget: int):
        super().__init__(f"expansion needs {requested} intervals, budget is {budget}")
        self.requested = requested
        self.budget = budget


class Inconclusive(RuntimeError):
    def __init__(self, k_max: int, detail: str = ""):
        super().__init__(f"no certificate within k_max={k_max}" + (f": {detail}" if detail else ""))
        self.k_max = k_max
        self.detail = detail


def _check_budget(count: int, budget: int | None) -> None:
    budget = interval_budget() if budget is None else budget
    if count > budget:
        raise BudgetExceeded(count, budget)


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        if self.hi < self.lo:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, other: "Interval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi}]"


@dataclass(frozen=True)
class HomogeneousIFS:
    """The maps ``x -> ratio * x + a`` for ``a`` in ``digits``."""

    ratio: Fraction
    digits: DigitMultiset

    def __post_init__(self) -> None:
        if not isinstance(self.ratio, Fraction):
            object.__setattr__(self, "ratio", as_rational(self.ratio))
        if not (0 < abs(self.ratio) < 1):
            raise ValueError(f"ratio must satisfy 0 < |r| < 1, got {self.ratio}")
        if not all_distinct(self.digits):
            raise ValueError(f"digits must be pairwise distinct, got {self.digits}")
        if len(self.digits) < 2:
            raise ValueError("need at least two maps (the attractor would be a point)")

    @classmethod
    def of(cls, ratio: RationalLike, digits: Iterable[RationalLike]) -> "HomogeneousIFS":
        return cls(as_rational(ratio), DigitMultiset.of(digits))

    @property
    def n(self) -> int:
        return len(self.digits)

    def __str__(self) -> str:
        return f"({self.ratio})x + {self.digits}"

    def image(self, iv: Interval) -> list[Interval]:
        r = self.ratio
        out = []
        for a in self.digits:
            x, y = r * iv.lo + a, r * iv.hi + a
            out.append(Interval(min(x, y), max(x, y)))
        return sorted(out, key=lambda i: (i.lo, i.hi))


def compose(phi: HomogeneousIFS, psi: HomogeneousIFS) -> HomogeneousIFS:
    """``phi o psi``: ratio ``r_phi r_psi`` and digits ``r_phi B + A``."""
    digits = sumset(scale(phi.ratio, psi.digits), phi.digits)
    if not all_distinct(digits):
        repeated = [str(v) for v, m in digits.items if m > 1]
        raise ValueError(f"composed maps are not distinct: repeated digit(s) {', '.join(repeated)}")
    return HomogeneousIFS(phi.ratio * psi.ratio, digits)


def hull(phi: HomogeneousIFS) -> Interval:
    """Smallest interval ``H`` with ``phi(H) ⊆ H``; the convex hull of the attractor."""
    r, lo, hi = phi.ratio, phi.digits.min, phi.digits.max
    if r > 0:
        return Interval(lo / (1 - r), hi / (1 - r))
    # u = r v + lo, v = r u + hi
    det = 1 - r * r
    return Interval((lo + r * hi) / det, (hi + r * lo) / det)


# ---------------------------------------------------------------------------
# integer lattice machinery


@dataclass(frozen=True)
class _Lattice:
    """Integer encoding of one system: level-k coordinates are numerators over ``base * q^k``."""

    p: int
    q: int
    base: int
    digits: tuple[int, ...]  # digit * base
    h0: int  # hull.lo * base
    h1: int

    @classmethod
    def of(cls, phi: HomogeneousIFS) -> "_Lattice":
        H = hull(phi)
        base = lcm(H.lo.denominator, H.hi.denominator, *(a.denominator for a in phi.digits))
        return cls(
            p=phi.ratio.numerator,
            q=phi.ratio.denominator,
            base=base,
            digits=tuple(int(a * base) for a in phi.digits),
            h0=int(H.lo * base),
            h1=int(H.hi * base),
        )

    def scale_at(self, k: int) -> int:
        return self.base * self.q**k

    def width_at(self, k: int) -> int:
        return abs(self.p) ** k * (self.h1 - self.h0)

    def offset_at(self, k: int) -> int:
        # left end of r^k H, on the level-k lattice
        pk = self.p**k
        return min(pk * self.h0, pk * self.h1)

    def expand(self, sums: list[int], k: int, budget: int | None) -> list[int]:
        """Digit expansions at level ``k + 1`` from those at level ``k`` (``S' = A + r S``)."""
        _check_budget(len(sums) * len(self.digits), budget)
        mult = self.q ** (k + 1)
        p = self.p
        return [a * mult + p * s for a in self.digits for s in sums]

    def step_union(self, comps: list[tuple[int, int]], k: int, budget: int | None) -> list[tuple[int, int]]:
        """``phi(U)`` for a merged union at level ``k``, merged, at level ``k + 1``."""
        _check_budget(len(comps) * len(self.digits), budget)
        mult = self.q ** (k + 1)
        p = self.p
        out = []
        for a in self.digits:
            shift = a * mult
            if p > 0:
                out.extend((p * lo + shift, p * hi + shift) for lo, hi in comps)
            else:
                out.extend((p * hi + shift, p * lo + shift) for lo, hi in comps)
        return _merge(out)

    def hull_union(self) -> list[tuple[int, int]]:
        return [(self.h0, self.h1)]


def _merge(ivs: list[tuple[int, int]]) -> list[tuple[int, int]]:
    """Union of closed intervals as sorted disjoint components (touching ones joined)."""
    ivs.sort()
    out: list[tuple[int, int]] = []
    for lo, hi in ivs:
        if out and lo <= out[-1][1]:
            if hi > out[-1][1]:
                out[-1] = (out[-1][0], hi)
        else:
            out.append((lo, hi))
    return out


def _rescale(comps: Sequence[tuple[int, int]], factor: int) -> list[tuple[int, int]]:
    if factor == 1:
        return list(comps)
    return [(lo * factor, hi * factor) for lo, hi in comps]


def _directed_union_distance(U: Sequence[tuple[int, int]], V: Sequence[tuple[int, int]]) -> int:
    """``sup over x in U of dist(x, V)`` for merged unions with even coordinates.

    The supremum is attained at an endpoint of ``U`` or at the midpoint of a
    gap of ``V`` lying inside ``U``; even coordinates keep midpoints integral.
    """
    vlo = [lo for lo, _ in V]
    ulo = [lo for lo, _ in U]

    def dist(x: int) -> int:
        i = bisect_right(vlo, x) - 1
        best = None
        if i >= 0:
            if x <= V[i][1]:
                return 0
            best = x - V[i][1]
        if i + 1 < len(V):
            right = V[i + 1][0] - x
            best = right if best is None else min(best, right)
        return best

    worst = 0
    for lo, hi in U:
        worst = max(worst, dist(lo), dist(hi))
    for (_, g0), (g1, _) in zip(V, V[1:]):
        mid = (g0 + g1) // 2
        j = bisect_right(ulo, mid) - 1
        if j >= 0 and mid <= U[j][1]:
            worst = max(worst, (g1 - g0) // 2)
    return worst


def _union_distance(U: Sequence[tuple[int, int]], V: Sequence[tuple[int, int]]) -> int:
    U2, V2 = _rescale(U, 2), _rescale(V, 2)
    return max(_directed_union_distance(U2, V2), _directed_union_distance(V2, U2))


def union_hausdorff(U: Iterable[Interval], V: Iterable[Interval]) -> Fraction:
    """Exact Hausdorff distance between two finite unions of closed intervals."""
    U, V = list(U), list(V)
    if not U or not V:
        raise ValueError("Hausdorff distance needs two nonempty unions")
    den = lcm(*(x.denominator for iv in U + V for x in (iv.lo, iv.hi)))
    enc = lambda ivs: _merge([(int(iv.lo * den), int(iv.hi * den)) for iv in ivs])
    return Fraction(_union_distance(enc(U), enc(V)), 2 * den)


def point_hausdorff(xs: Iterable[Fraction], ys: Iterable[Fraction]) -> Fraction:
    """Exact Hausdorff distance between two finite point sets."""
    xs, ys = sorted(set(xs)), sorted(set(ys))
    if not xs or not ys:
        raise ValueError("Hausdorff distance needs two nonempty sets")

    def directed(a: list, b: list) -> Fraction:
        worst = Fraction(0)
        for x in a:
            i = bisect_right(b, x)
            d = min(abs(x - b[j]) for j in (i - 1, i) if 0 <= j < len(b))
            worst = max(worst, d)
        return worst

    return max(directed(xs, ys), directed(ys, xs))


# ---------------------------------------------------------------------------
# covers


@dataclass(frozen=True)
class CoverReport:
    """Level-``k`` cover, unmerged, sorted by left endpoint.

    Endpoints are stored as integer numerators over :attr:`scale`; use
    :attr:`intervals` for the rational view.
    """

    level: int
    scale: int
    los: tuple[int, ...]
    width_num: int
    error_bound: Fraction

    @cached_property
    def intervals(self) -> tuple[Interval, ...]:
        s, w = self.scale, self.width_num
        return tuple(Interval(Fraction(lo, s), Fraction(lo + w, s)) for lo in self.los)

    @property
    def width(self) -> Fraction:
        return Fraction(self.width_num, self.scale)

    def __len__(self) -> int:
        return len(self.los)

    def endpoints(self) -> list[Fraction]:
        s, w = self.scale, self.width_num
        pts = sorted(set(self.los) | {lo + w for lo in self.los})
        return [Fraction(x, s) for x in pts]

    def union(self) -> list[tuple[int, int]]:
        w = self.width_num
        return _merge([(lo, lo + w) for lo in self.los])


def _expansions(lat: _Lattice, k: int, budget: int | None) -> list[int]:
    _check_budget(len(lat.digits) ** k, budget)
    sums = [0]
    for j in range(k):
        sums = lat.expand(sums, j, budget)
    return sums


def cover(phi: HomogeneousIFS, k: int, budget: int | None = None) -> CoverReport:
    """The ``n^k`` intervals ``r^k H + s``; raises :class:`BudgetExceeded` past the budget."""
    if k < 0:
        raise ValueError("level must be nonnegative")
    lat = _Lattice.of(phi)
    sums = _expansions(lat, k, budget)
    off = lat.offset_at(k)
    los = sorted(s + off for s in sums)
    H = hull(phi)
    return CoverReport(
        level=k,
        scale=lat.scale_at(k),
        los=tuple(los),
        width_num=lat.width_at(k),
        error_bound=abs(phi.ratio) ** k * H.width,
    )


def _union_levels(phi: HomogeneousIFS, budget: int | None) -> Iterator[tuple[int, int, list[tuple[int, int]]]]:
    """Yield ``(k, scale, merged phi^k(H))`` for k = 0, 1, 2, ..."""
    lat = _Lattice.of(phi)
    comps = lat.hull_union()
    k = 0
    while True:
        yield k, lat.scale_at(k), comps
        comps = lat.step_union(comps, k, budget)
        k += 1


def _bounds_from(phi, psi, k, s1, U1, s2, U2) -> tuple[Fraction, Fraction, Fraction]:
    if s1 == s2 and U1 == U2:
        delta = Fraction(0)
    else:
        den = lcm(s1, s2)
        num = _union_distance(_rescale(U1, den // s1), _rescale(U2, den // s2))
        delta = Fraction(num, 2 * den)
    err = abs(phi.ratio) ** k * hull(phi).width + abs(psi.ratio) ** k * hull(psi).width
    return max(Fraction(0), delta - err), delta + err, delta


def hausdorff_bounds(
    phi: HomogeneousIFS, psi: HomogeneousIFS, k: int, budget: int | None = None
) -> tuple[Fraction, Fraction]:
    """Certified ``(lower, upper)`` enclosure of the Hausdorff distance between the two attractors.

    Uses the level-``k`` cover unions, which are exactly ``phi^k(H)``.
    """
    if k < 0:
        raise ValueError("level must be nonnegative")
    levels = []
    for f in (phi, psi):
        for j, s, U in _union_levels(f, budget):
            if j == k:
                levels.append((s, U))
                break
    (s1, U1), (s2, U2) = levels
    lower, upper, _ = _bounds_from(phi, psi, k, s1, U1, s2, U2)
    return lower, upper


@dataclass(frozen=True)
class ConfirmedDistinct:
    level: int
    lower: Fraction


@dataclass(frozen=True)
class Indistinguishable:
    epsilon: Fraction
    level: int
    upper: Fraction


def same_attractor_test(
    phi: HomogeneousIFS,
    psi: HomogeneousIFS,
    epsilon: RationalLike,
    k_max: int,
    budget: int | None = None,
) -> ConfirmedDistinct | Indistinguishable:
    """Semi-decide attractor equality by refining covers until a certificate appears.

    Raises :class:`Inconclusive` when neither certificate fires by ``k_max``.
    """
    epsilon = as_rational(epsilon)
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    g1, g2 = _union_levels(phi, budget), _union_levels(psi, budget)
    for (k, s1, U1), (_, s2, U2) in zip(g1, g2):
        lower, upper, _ = _bounds_from(phi, psi, k, s1, U1, s2, U2)
        if lower > 0:
            return ConfirmedDistinct(k, lower)
        if upper <= epsilon:
            return Indistinguishable(epsilon, k, upper)
        if k >= k_max:
            raise Inconclusive(k_max, f"bounds [{lower}, {upper}] at level {k}")
    raise AssertionError("unreachable")


# ---------------------------------------------------------------------------
# separation


def check_cosc(phi: HomogeneousIFS) -> bool:
    """Whether the open hull interior witnesses the convex open set condition."""
    images = phi.image(hull(phi))
    return all(a.hi <= b.lo for a, b in zip(images, images[1:]))


@dataclass(frozen=True)
class SSCResult:
    status: str  # "ssc_holds" | "ssc_fails" | "unknown"
    level: int | None = None
    evidence: str = ""

    def __bool__(self) -> bool:
        return self.status == "ssc_holds"


def _group_relation(groups: list[list[tuple[int, int]]]) -> tuple[int | None, int]:
    """Smallest gap between components of different groups, and widest overlap.

    Returns ``(min_gap, max_overlap)``; ``min_gap`` is None when some pair
    touches or overlaps.
    """
    tagged = sorted((lo, hi, g) for g, comps in enumerate(groups) for lo, hi in comps)
    min_gap: int | None = None
    separated = True
    max_overlap = 0
    active: list[tuple[int, int]] = []  # (hi, group) of components still open at lo
    reach_hi, reach_g = None, None
    for lo, hi, g in tagged:
        if reach_hi is not None and reach_g != g:
            if lo <= reach_hi:
                separated = False
            else:
                gap = lo - reach_hi
                min_gap = gap if min_gap is None else min(min_gap, gap)
        active = [(h, gg) for h, gg in active if h >= lo]
        for h, gg in active:
            if gg != g:
                max_overlap = max(max_overlap, min(h, hi) - lo)
        active.append((hi, g))
        if reach_hi is None or hi > reach_hi:
            reach_hi, reach_g = hi, g
    return (min_gap if separated else None), max_overlap


def check_ssc_certified(phi: HomogeneousIFS, k_max: int, budget: int | None = None) -> SSCResult:
    """Certify the strong separation condition, or its failure, from level-k covers.

    * ``ssc_holds`` at level ``k`` when the ``n`` sub-unions ``phi_i(cover_(k-1))``
      are pairwise separated by positive gaps; these gaps persist to the attractor.
    * ``ssc_fails`` when the attractor is the whole hull (``phi(H) = H`` exactly),
      or when the sub-unions meet at every level up to ``k_max`` and at
      ``k_max`` two of them overlap on a stretch wider than twice the cover
      error. The latter is limit evidence: meeting at every level forces the
      images of the attractor to meet.
    * ``unknown`` otherwise.
    """
    lat = _Lattice.of(phi)
    if lat.step_union(lat.hull_union(), 0, budget) == _rescale(lat.hull_union(), lat.q):
        return SSCResult("ssc_fails", 1, "attractor equals its hull; first-level images meet")
    overlap_ok = False
    comps = lat.hull_union()
    for k in range(1, k_max + 1):
        mult = lat.q**k
        groups = []
        for a in lat.digits:
            shift = a * mult
            if lat.p > 0:
                groups.append([(lat.p * lo + shift, lat.p * hi + shift) for lo, hi in comps])
            else:
                groups.append(sorted((lat.p * hi + shift, lat.p * lo + shift) for lo, hi in comps))
        min_gap, overlap = _group_relation(groups)
        if min_gap is not None:
            return SSCResult("ssc_holds", k, f"gap {Fraction(min_gap, lat.scale_at(k))}")
        overlap_ok = overlap > 2 * lat.width_at(k)
        comps = _merge([iv for grp in groups for iv in grp])
        _check_budget(len(comps) * len(lat.digits), budget)
    if k_max >= 1 and overlap_ok:
        return SSCResult("ssc_fails", k_max, f"images meet at every level; overlap exceeds twice the error at level {k_max}")
    return SSCResult("unknown", None, f"no separating gap up to level {k_max}")


def similarity_dimension(phi: HomogeneousIFS) -> float:
    """``log n / log(1/|r|)``, accurate to double precision (~1e-15 relative)."""
    r = abs(phi.ratio)
    return math.log(phi.n) / (math.log(r.denominator) - math.log(r.numerator))
