r"""Hirzebruch-Jung continued fractions.

``[[b1, ..., bm]] = b1 - 1/(b2 - 1/(... - 1/bm))``.  Every rational ``x > 1``
has a unique expansion with all entries ``>= 2``.

>>> hj_expand(Fraction(7, 5))
(2, 2, 3)
>>> hj_eval((2, 2, 3))
Fraction(7, 5)
>>> t_signature((2, 3, 2, 4, 2, 2, 5))
(3, 4, 5)
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import DomainError

Number = Union[int, Fraction]
HjSequence = tuple  # tuple[int, ...], entries >= 2
TSignature = tuple  # tuple[int, ...], entries >= 3


def hj_expand(x: Number) -> HjSequence:
    """Expansion of ``x > 1`` with all entries at least 2."""
    x = Fraction(x)
    if x <= 1:
        raise DomainError(f"hj_expand needs x > 1, got {x}")
    out = []
    while True:
        b = math.ceil(x)
        out.append(b)
        if b == x:
            return tuple(out)
        x = 1 / (b - x)


def hj_eval(seq: Sequence[Number]) -> Fraction:
    """Evaluate right to left. Entries may be rational (used for splitting)."""
    if len(seq) == 0:
        raise DomainError("hj_eval of an empty sequence")
    value = Fraction(seq[-1])
    for b in reversed(seq[:-1]):
        if value == 0:
            raise DomainError(f"zero tail while evaluating {list(seq)}")
        value = b - 1 / value
    return value


def hj_tails(seq: Sequence[int]) -> list[Fraction]:
    """``[e_1, ..., e_m]`` with ``e_j = [[b_j, ..., b_m]]``."""
    if len(seq) == 0:
        raise DomainError("hj_tails of an empty sequence")
    tails = [Fraction(seq[-1])]
    for b in reversed(seq[:-1]):
        tails.append(b - 1 / tails[-1])
    tails.reverse()
    return tails


def t_signature(seq: Iterable[int]) -> TSignature:
    return tuple(b for b in seq if b != 2)


def t_of(a: Number) -> TSignature:
    """T-signature of ``1/a`` for a fraction ``0 < a < 1``."""
    return t_signature(hj_expand(1 / Fraction(a)))


def _check_nonneg(**params: int) -> None:
    for name, v in params.items():
        if not isinstance(v, int) or v < 0:
            raise DomainError(f"parameter {name} must be a nonnegative integer, got {v!r}")


def two_n_two(a: int, n: int, b: int) -> Fraction:
    """Closed form of ``[[(2)^a, n, (2)^b]]``."""
    _check_nonneg(a=a, b=b)
    if not isinstance(n, int) or n < 2:
        raise DomainError(f"n must be an integer >= 2, got {n!r}")
    num = ((a + 1) * n - (2 * a + 1)) * b + (a + 1) * n - a
    den = (a * n - (2 * a - 1)) * b + a * n - (a - 1)
    return Fraction(num, den)


def two3two3two(a: int, b: int, c: int) -> Fraction:
    """Closed form of ``[[(2)^a, 3, (2)^b, 3, (2)^c]]``."""
    _check_nonneg(a=a, b=b, c=c)
    num = ((a + 2) * b + 3 * a + 5) * c + (2 * a + 4) * b + 5 * a + 8
    den = ((a + 1) * b + 3 * a + 2) * c + (2 * a + 2) * b + 5 * a + 3
    return Fraction(num, den)


_CLOSED_FORMS = {"two_n_two": two_n_two, "two3two3two": two3two3two}


def hj_closed_form(kind: str, **params: int) -> Fraction:
    try:
        fn = _CLOSED_FORMS[kind]
    except KeyError:
        raise DomainError(f"unknown closed form {kind!r}") from None
    return fn(**params)


def closed_form_sequence(kind: str, **params: int) -> HjSequence:
    """The explicit sequence a closed form stands for."""
    if kind == "two_n_two":
        return (2,) * params["a"] + (params["n"],) + (2,) * params["b"]
    if kind == "two3two3two":
        return (2,) * params["a"] + (3,) + (2,) * params["b"] + (3,) + (2,) * params["c"]
    raise DomainError(f"unknown closed form {kind!r}")
