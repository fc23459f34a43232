"""F-rationality of ``R(P^1, D)`` in characteristic ``p``.

For a rational singularity, ``R`` is F-rational iff for every ``n >= 1``

    deg [-pnD] + deg (B_n)_red <= 1,    B_n = -p [-nD] + [-pnD].

With ``D = s P0 - sum a_i P_i`` the coefficient of ``B_n`` at ``P_i`` is
``floor(p n a_i) - p floor(n a_i)`` and it vanishes at ``P0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Optional

from .divisor import NormalizedDivisor, period, search_limit
from .errors import DomainError
from .resolution import require_rational


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def primes_up_to(n: int) -> list:
    return [p for p in range(2, n + 1) if is_prime(p)]


def prime_factors(n: int) -> list:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class BnRecord:
    n: int
    p: int
    support_size: int
    deg_neg: int
    value: int
    coefficients: tuple = ()


class FRationality(str, Enum):
    F_RATIONAL = "f_rational"
    NOT_F_RATIONAL = "not_f_rational"


@dataclass(frozen=True)
class FRationalVerdict:
    outcome: FRationality
    p: int
    witness: Optional[BnRecord] = None

    @property
    def is_f_rational(self) -> bool:
        return self.outcome is FRationality.F_RATIONAL


def _check_prime(p: int) -> None:
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")


def criterion_value(d: NormalizedDivisor, p: int, n: int) -> BnRecord:
    _check_prime(p)
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    pn = p * n
    coeffs = tuple((pn * c) // q - p * ((n * c) // q) for c, q in d.pairs())
    deg_neg = -pn * d.s + sum((pn * c) // q for c, q in d.pairs())
    support = sum(1 for b in coeffs if b)
    return BnRecord(n, p, support, deg_neg, deg_neg + support, coeffs)


def _scan(d: NormalizedDivisor, p: int) -> FRationalVerdict:
    """Smallest failing ``n`` without the rationality precondition check.

    The value at ``n + N`` is the value at ``n`` minus ``p N deg(D)`` (``N``
    the period), so one period suffices.  Also ``deg [-pnD] <= -pn deg(D)``
    and the support is at most ``r``, so only ``p n deg(D) < r - 1`` can fail.
    """
    pairs = d.pairs()
    s = d.s
    for n in range(1, search_limit(d, d.r - 1, p) + 1):
        pn = p * n
        value = -pn * s
        for c, q in pairs:
            big = (pn * c) // q
            value += big
            if big != p * ((n * c) // q):
                value += 1
        if value >= 2:
            return FRationalVerdict(FRationality.NOT_F_RATIONAL, p, criterion_value(d, p, n))
    return FRationalVerdict(FRationality.F_RATIONAL, p)


def is_f_rational(d: NormalizedDivisor, p: int) -> FRationalVerdict:
    _check_prime(p)
    require_rational(d)
    return _scan(d, p)


def f_rational_full_scan(d: NormalizedDivisor, p: int) -> FRationalVerdict:
    """Reference version: every ``n`` in one period, no early cutoff."""
    _check_prime(p)
    require_rational(d)
    for n in range(1, period(d) + 1):
        rec = criterion_value(d, p, n)
        if rec.value >= 2:
            return FRationalVerdict(FRationality.NOT_F_RATIONAL, p, rec)
    return FRationalVerdict(FRationality.F_RATIONAL, p)


def candidate_primes(d: NormalizedDivisor) -> list:
    """Primes dividing some denominator; F-rationality can only fail there."""
    return prime_factors(period(d))


def failing_primes(d: NormalizedDivisor) -> frozenset:
    require_rational(d)
    return frozenset(p for p in candidate_primes(d) if not _scan(d, p).is_f_rational)


def sweep(d: NormalizedDivisor, primes: Iterable[int]) -> dict:
    """``{p: verdict}`` for a rational singularity."""
    require_rational(d)
    out = {}
    for p in primes:
        _check_prime(p)
        out[p] = _scan(d, p)
    return out
