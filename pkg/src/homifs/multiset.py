"""Exact multisets of rationals: scaling, sumsets and distinctness.

Every digit set in the package is a :class:`DigitMultiset`. Values are
``fractions.Fraction`` throughout; floats are rejected at construction so
that multiset equality stays exact.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, Union

RationalLike = Union[int, Fraction, str]


def as_rational(x: RationalLike) -> Fraction:
    """Coerce ``x`` to a Fraction, refusing binary floats."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"expected an exact rational, got {type(x).__name__}: {x!r}")


@dataclass(frozen=True)
class DigitMultiset:
    """Finite multiset of rationals in canonical form.

    ``items`` holds ``(value, multiplicity)`` pairs sorted strictly by value,
    so two multisets are equal exactly when their ``items`` tuples are.
    """

    items: tuple[tuple[Fraction, int], ...]

    def __post_init__(self) -> None:
        prev = None
        for value, mult in self.items:
            if not isinstance(value, Fraction):
                raise TypeError("DigitMultiset values must be Fractions")
            if mult < 1:
                raise ValueError("multiplicities must be positive")
            if prev is not None and not prev < value:
                raise ValueError("items must be sorted strictly by value")
            prev = value

    @classmethod
    def of(cls, values: Iterable[RationalLike]) -> "DigitMultiset":
        counts = Counter(as_rational(v) for v in values)
        return cls(tuple(sorted(counts.items())))

    @classmethod
    def from_counts(cls, counts: dict[Fraction, int]) -> "DigitMultiset":
        return cls(tuple(sorted((v, m) for v, m in counts.items() if m)))

    def __len__(self) -> int:
        return sum(m for _, m in self.items)

    def __iter__(self) -> Iterator[Fraction]:
        for value, mult in self.items:
            for _ in range(mult):
                yield value

    def __contains__(self, x: object) -> bool:
        return any(v == x for v, _ in self.items)

    def values(self) -> tuple[Fraction, ...]:
        """Distinct values, increasing."""
        return tuple(v for v, _ in self.items)

    def as_list(self) -> list[Fraction]:
        """Expanded sorted list (with repetition)."""
        return list(self)

    def multiplicity(self, x: RationalLike) -> int:
        x = as_rational(x)
        for v, m in self.items:
            if v == x:
                return m
        return 0

    @property
    def min(self) -> Fraction:
        return self.items[0][0]

    @property
    def max(self) -> Fraction:
        return self.items[-1][0]

    def shift(self, c: RationalLike) -> "DigitMultiset":
        c = as_rational(c)
        return DigitMultiset(tuple((v + c, m) for v, m in self.items))

    def reflect(self, s: RationalLike) -> "DigitMultiset":
        """The multiset ``s - A``."""
        s = as_rational(s)
        return DigitMultiset(tuple((s - v, m) for v, m in reversed(self.items)))

    def __str__(self) -> str:
        return "{" + ", ".join(str(v) for v in self) + "}"


def scale(r: RationalLike, A: DigitMultiset) -> DigitMultiset:
    """``rA``, multiplicities preserved; ``r = 0`` collapses to ``{0}`` with multiplicity ``|A|``."""
    r = as_rational(r)
    if r == 0:
        return DigitMultiset(((Fraction(0), len(A)),)) if len(A) else A
    items = tuple((r * v, m) for v, m in A.items)
    return DigitMultiset(items if r > 0 else items[::-1])


def sumset(A: DigitMultiset, B: DigitMultiset) -> DigitMultiset:
    """``A + B`` counted with multiplicity, so ``|A + B| = |A| |B|``."""
    counts: Counter[Fraction] = Counter()
    for a, ma in A.items:
        for b, mb in B.items:
            counts[a + b] += ma * mb
    return DigitMultiset.from_counts(counts)


def multiset_equal(A: DigitMultiset, B: DigitMultiset) -> bool:
    return A.items == B.items


def all_distinct(A: DigitMultiset) -> bool:
    return all(m == 1 for _, m in A.items)
