"""Divisor input syntax.

Text form: signed terms ``INT`` or ``INT/INT``, each optionally tagged
``@LABEL``; whitespace is ignored.  Untagged integers go to ``P0``,
untagged fractions get fresh labels ``P1, P2, ...``.  Repeated labels are
summed.  JSON form: ``{"label": "num/den", ...}``.

>>> parse_divisor("2 - 1/2 - 2/3").terms
{'P0': Fraction(2, 1), 'P1': Fraction(-1, 2), 'P2': Fraction(-2, 3)}
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

from .divisor import QDivisor
from .errors import ParseError

_INT = re.compile(r"\d+")
_LABEL = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_RATIONAL = re.compile(r"\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*")


def parse_rational(text: str) -> Fraction:
    m = _RATIONAL.fullmatch(text)
    if not m:
        raise ParseError(f"malformed rational {text!r}", 0)
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ParseError(f"zero denominator in {text!r}", m.start(2))
    return Fraction(int(m.group(1)), den)


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, pattern: re.Pattern, what: str) -> tuple:
        self.skip()
        m = pattern.match(self.text, self.pos)
        if not m:
            found = self.text[self.pos:self.pos + 1] or "end of input"
            raise ParseError(f"expected {what}, found {found!r}", self.pos)
        self.pos = m.end()
        return m.group(0), m.start()


def _parse_text(text: str) -> QDivisor:
    sc = _Scanner(text)
    terms = []  # (label or None, value, is_integer)
    first = True
    while True:
        ch = sc.peek()
        if not ch:
            if first:
                raise ParseError("empty divisor", sc.pos)
            break
        sign = 1
        if ch in "+-":
            sign = -1 if ch == "-" else 1
            sc.pos += 1
        elif not first:
            raise ParseError(f"expected '+' or '-', found {ch!r}", sc.pos)
        num, _ = sc.take(_INT, "an integer")
        value = Fraction(int(num))
        is_int = True
        if sc.peek() == "/":
            sc.pos += 1
            den, at = sc.take(_INT, "a denominator")
            if int(den) == 0:
                raise ParseError("zero denominator", at)
            value = Fraction(int(num), int(den))
            is_int = False
        label = None
        if sc.peek() == "@":
            sc.pos += 1
            label, _ = sc.take(_LABEL, "a label")
        terms.append((label, sign * value, is_int))
        first = False

    explicit = {lab for lab, _, _ in terms if lab is not None}
    out: dict = {}
    counter = 0
    for label, value, is_int in terms:
        if label is None:
            if is_int:
                label = "P0"
            else:
                counter += 1
                while f"P{counter}" in explicit:
                    counter += 1
                label = f"P{counter}"
        out[label] = out.get(label, Fraction(0)) + value
    return QDivisor(out)


def _reject_duplicates(pairs):
    seen = {}
    for k, v in pairs:
        if k in seen:
            raise ParseError(f"duplicate label {k!r} in JSON input")
        seen[k] = v
    return seen


def _parse_json(text: str) -> QDivisor:
    try:
        obj = json.loads(text, object_pairs_hook=_reject_duplicates)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.pos) from None
    if not isinstance(obj, dict):
        raise ParseError("JSON divisor must be an object", 0)
    out = {}
    for k, v in obj.items():
        if isinstance(v, bool) or not isinstance(v, (int, str)):
            raise ParseError(f"coefficient of {k!r} must be an integer or a 'num/den' string")
        if not _LABEL.fullmatch(k):
            raise ParseError(f"bad label {k!r}")
        out[k] = parse_rational(str(v))
    return QDivisor(out)


def parse_divisor(text: str) -> QDivisor:
    if text.lstrip().startswith("{"):
        return _parse_json(text)
    return _parse_text(text)
