"""Q-divisors on the projective line and the rational-singularity test.

A normalized divisor ``(s; a_1, ..., a_r)`` stands for
``D = s P0 - a_1 P1 - ... - a_r Pr`` with ``0 < a_i < 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Union

from .errors import DomainError

Number = Union[int, Fraction, str]


def _frac(x: Number) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass
class QDivisor:
    """Finite map ``label -> coefficient``. Zero coefficients are dropped."""

    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        self.terms = {str(k): _frac(v) for k, v in self.terms.items() if _frac(v) != 0}

    def degree(self) -> Fraction:
        return sum(self.terms.values(), Fraction(0))


@dataclass(frozen=True)
class NormalizedDivisor:
    s: int
    fractions: tuple = ()

    def __post_init__(self):
        fr = tuple(a if type(a) is Fraction else _frac(a) for a in self.fractions)
        pairs = tuple((a.numerator, a.denominator) for a in fr)
        for c, q in pairs:
            if not 0 < c < q:
                raise DomainError(f"fractions must lie strictly between 0 and 1, got {c}/{q}")
        if not isinstance(self.s, int):
            raise DomainError(f"s must be an integer, got {self.s!r}")
        N = math.lcm(1, *(q for _, q in pairs))
        object.__setattr__(self, "fractions", fr)
        object.__setattr__(self, "_pairs", pairs)
        object.__setattr__(self, "_period", N)
        # degree = _deg_num / N (not necessarily reduced)
        object.__setattr__(self, "_deg_num", self.s * N - sum(c * (N // q) for c, q in pairs))

    @property
    def r(self) -> int:
        return len(self.fractions)

    @property
    def degree(self) -> Fraction:
        return Fraction(self._deg_num, self._period)

    @property
    def is_ample(self) -> bool:
        return self._deg_num > 0

    def key(self) -> tuple:
        """Order-independent identity (the fractions form a multiset)."""
        return (self.s, tuple(sorted(self.fractions)))

    def pairs(self) -> tuple:
        return self._pairs

    def __str__(self) -> str:
        inner = ", ".join(str(a) for a in self.fractions)
        return f"({self.s}; {{{inner}}})"


def nd(s: int, *fractions: Number) -> NormalizedDivisor:
    """Shorthand: ``nd(2, "3/5", "4/5", "1/2")``."""
    return NormalizedDivisor(s, tuple(_frac(a) for a in fractions))


def normalize(d: QDivisor) -> NormalizedDivisor:
    """Move every integer part onto the central point.

    Each coefficient ``x`` contributes ``ceil(x)`` to ``s`` and leaves the
    fraction ``ceil(x) - x``; integral coefficients leave nothing.
    """
    s = 0
    fr = []
    for x in d.terms.values():
        c = math.ceil(x)
        s += c
        if c != x:
            fr.append(c - x)
    return NormalizedDivisor(s, tuple(fr))


def deg_floor(d: NormalizedDivisor, n: int) -> int:
    """``deg [nD] = n s - sum ceil(n a_i)``."""
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    return n * d.s - sum(-((-n * c) // q) for c, q in d.pairs())


def deg_floor_neg(d: NormalizedDivisor, m: int) -> int:
    """``deg [-mD] = -m s + sum floor(m a_i)``."""
    if m < 1:
        raise DomainError(f"m must be positive, got {m}")
    return -m * d.s + sum((m * c) // q for c, q in d.pairs())


def period(d: NormalizedDivisor) -> int:
    return d._period


def require_ample(d: NormalizedDivisor) -> None:
    if not d.is_ample:
        raise DomainError(f"divisor {d} is not ample (degree {d.degree})")


class Rationality(str, Enum):
    RATIONAL = "rational"
    NOT_RATIONAL = "not_rational"


@dataclass(frozen=True)
class RationalityVerdict:
    outcome: Rationality
    witness_n: Optional[int] = None
    witness_value: Optional[int] = None

    @property
    def is_rational(self) -> bool:
        return self.outcome is Rationality.RATIONAL


def search_limit(d: NormalizedDivisor, num: int, den: int = 1) -> int:
    """Last ``n <= period`` with ``n deg(D) < num/den``; 0 if there is none.

    Both criteria below have the shape "quantity(n) > n deg(D) - r", so only
    multiples below such a bound can fail, and periodicity caps the search
    at one period.
    """
    if num <= 0:
        return 0
    # n * deg_num / N < num / den  <=>  n * deg_num * den < num * N
    bound = (num * d._period - 1) // (d._deg_num * den)
    return max(0, min(d._period, bound))


def is_rational_singularity(d: NormalizedDivisor) -> RationalityVerdict:
    """Rational iff ``deg [nD] >= -1`` for every ``n >= 1``.

    Shifting ``n`` by the period ``N`` adds the positive integer ``N deg(D)``
    to ``deg [nD]``, so the smallest failure, if any, lies in ``1..N``.
    Additionally ``deg [nD] > n deg(D) - r``, so multiples with
    ``n deg(D) >= r - 2`` cannot fail either.
    """
    require_ample(d)
    pairs = d.pairs()
    s = d.s
    for n in range(1, search_limit(d, d.r - 2) + 1):
        v = n * s - sum(-((-n * c) // q) for c, q in pairs)
        if v <= -2:
            return RationalityVerdict(Rationality.NOT_RATIONAL, n, v)
    return RationalityVerdict(Rationality.RATIONAL)


def rational_singularity_full_scan(d: NormalizedDivisor) -> RationalityVerdict:
    """Same verdict, scanning all of ``1..period`` (reference implementation)."""
    require_ample(d)
    for n in range(1, period(d) + 1):
        v = deg_floor(d, n)
        if v <= -2:
            return RationalityVerdict(Rationality.NOT_RATIONAL, n, v)
    return RationalityVerdict(Rationality.RATIONAL)


def fractions_up_to(max_denominator: int) -> list:
    """All reduced fractions in (0, 1) with denominator at most the bound."""
    out = {Fraction(c, q) for q in range(2, max_denominator + 1) for c in range(1, q)}
    return sorted(out)


def iter_normalized(max_s: int, max_points: int, max_denominator: int,
                    min_s: int = 1, ample_only: bool = True) -> Iterable[NormalizedDivisor]:
    """Every normalized divisor in the box, fractions as sorted multisets."""
    from itertools import combinations_with_replacement

    fr = fractions_up_to(max_denominator)
    for s in range(min_s, max_s + 1):
        for r in range(0, max_points + 1):
            for combo in combinations_with_replacement(fr, r):
                d = NormalizedDivisor(s, combo)
                if ample_only and not d.is_ample:
                    continue
                yield d
