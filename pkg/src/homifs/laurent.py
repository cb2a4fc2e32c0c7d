"""Sparse Laurent polynomials with rational exponents.

Exponents are stored on an integer lattice ``(1/d) Z``: the term ``c x^(e/d)``
is the entry ``e -> c`` of :attr:`LaurentPoly.terms`. The lattice is always
reduced, so ``d`` is the least common denominator of the exponents present.
Products of generating functions realize sumsets of their exponent multisets.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterator

from .multiset import DigitMultiset, RationalLike, as_rational


def _normalized(d: int, terms: dict[int, int]) -> tuple[int, tuple[tuple[int, int], ...]]:
    terms = {e: c for e, c in terms.items() if c}
    if not terms:
        return 1, ()
    g = d
    for e in terms:
        g = gcd(g, e)
        if g == 1:
            break
    if g > 1:
        d //= g
        terms = {e // g: c for e, c in terms.items()}
    return d, tuple(sorted(terms.items()))


@dataclass(frozen=True)
class LaurentPoly:
    d: int
    terms: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.d < 1:
            raise ValueError("lattice denominator must be positive")
        d, terms = _normalized(self.d, dict(self.terms))
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "terms", terms)

    @classmethod
    def from_exponents(cls, exps: dict[Fraction, int]) -> "LaurentPoly":
        d = 1
        for e in exps:
            d = lcm(d, e.denominator)
        terms: dict[int, int] = defaultdict(int)
        for e, c in exps.items():
            terms[int(e * d)] += c
        return cls(d, tuple(terms.items()))

    def exponents(self) -> dict[Fraction, int]:
        """True (rational) exponent -> coefficient."""
        return {Fraction(e, self.d): c for e, c in self.terms}

    def __iter__(self) -> Iterator[tuple[Fraction, int]]:
        return iter(self.exponents().items())

    def coefficient_sum(self) -> int:
        return sum(c for _, c in self.terms)

    def on_lattice(self, d: int) -> dict[int, int]:
        """Terms re-encoded on the finer lattice ``(1/d) Z``; ``d`` must be a multiple of ``self.d``."""
        if d % self.d:
            raise ValueError(f"lattice 1/{d} does not refine 1/{self.d}")
        k = d // self.d
        return {e * k: c for e, c in self.terms}

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.exponents().items():
            coef = "" if c == 1 and e != 0 else str(c)
            if e == 0:
                parts.append(coef or "1")
            elif e == 1:
                parts.append(f"{coef}x")
            else:
                parts.append(f"{coef}x^({e})")
        return " + ".join(parts)


def genfun(A: DigitMultiset) -> LaurentPoly:
    """Generating function ``sum over a in A of x^a``."""
    return LaurentPoly.from_exponents(dict(A.items))


def poly_multiply(P: LaurentPoly, Q: LaurentPoly) -> LaurentPoly:
    d = lcm(P.d, Q.d)
    p, q = P.on_lattice(d), Q.on_lattice(d)
    out: dict[int, int] = defaultdict(int)
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            out[e1 + e2] += c1 * c2
    return LaurentPoly(d, tuple(out.items()))


def rescale_exponents(P: LaurentPoly, q: RationalLike) -> LaurentPoly:
    """``P(x^q)``: every exponent ``e`` becomes ``q e``."""
    q = as_rational(q)
    if q == 0:
        raise ValueError("rescaling exponents by 0 collapses the lattice")
    return LaurentPoly.from_exponents({e * q: c for e, c in P.exponents().items()})


def reversal_shift_equal(P: LaurentPoly, s: RationalLike) -> bool:
    """Whether ``P(t) == t^s P(1/t)``, i.e. the exponents are symmetric about ``s/2``."""
    if isinstance(s, float):
        raise TypeError("shift must be an exact rational")
    s = as_rational(s)
    d = lcm(P.d, s.denominator)
    terms = P.on_lattice(d)
    shift = int(s * d)
    return all(terms.get(shift - e) == c for e, c in terms.items())
