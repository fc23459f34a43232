"""Multiplicity 3 and 4 classification tables, matching and bounded checks.

The tables live in ``data/families.json`` as printed fraction strings.  A
slot like ``((a+1)*b+2*a+1)/((a+2)*b+2*a+3)`` is parsed into numerator and
denominator polynomials in the parameters; nothing is simplified before
reducing the instantiated fraction.
"""

from __future__ import annotations

import ast
import dataclasses
import itertools
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Callable, Iterable, Optional

from .divisor import NormalizedDivisor, is_rational_singularity, iter_normalized
from .errors import DomainError, UnsupportedConfiguration
from .frational import _scan, is_prime
from .hj import t_of
from .resolution import multiplicity

TABLES = ("e3", "e4")


# -- slot expressions -------------------------------------------------------

class _Poly:
    """Integer polynomial expression over named parameters."""

    _OPS = {ast.Add: lambda x, y: x + y, ast.Sub: lambda x, y: x - y,
            ast.Mult: lambda x, y: x * y}

    def __init__(self, node: ast.AST, text: str):
        self.text = text
        self.names = sorted({n.id for n in ast.walk(node) if isinstance(n, ast.Name)})
        self._node = node
        self._check(node)

    def _check(self, node):
        if isinstance(node, ast.BinOp) and type(node.op) in self._OPS:
            self._check(node.left)
            self._check(node.right)
        elif isinstance(node, ast.Constant) and isinstance(node.value, int):
            pass
        elif not isinstance(node, ast.Name):
            raise DomainError(f"unsupported syntax in slot {self.text!r}")

    def __call__(self, env: dict) -> int:
        def ev(node):
            if isinstance(node, ast.BinOp):
                return self._OPS[type(node.op)](ev(node.left), ev(node.right))
            if isinstance(node, ast.Constant):
                return node.value
            return env[node.id]
        return ev(self._node)


@dataclass(frozen=True)
class Slot:
    text: str
    num: _Poly = field(compare=False, repr=False)
    den: _Poly = field(compare=False, repr=False)

    @classmethod
    def parse(cls, text: str) -> "Slot":
        tree = ast.parse(text, mode="eval").body
        if isinstance(tree, ast.BinOp) and isinstance(tree.op, ast.Div):
            return cls(text, _Poly(tree.left, text), _Poly(tree.right, text))
        one = ast.Constant(1)
        return cls(text, _Poly(tree, text), _Poly(one, text))

    @property
    def params(self) -> list:
        return sorted(set(self.num.names) | set(self.den.names))

    def raw(self, env: dict) -> tuple:
        return self.num(env), self.den(env)


@dataclass(frozen=True)
class Family:
    id: str
    table: str
    s: int
    slots: tuple
    mins: tuple = ()  # ((param, lower bound), ...)

    @property
    def params(self) -> list:
        return sorted({p for sl in self.slots for p in sl.params})

    def minimum(self, name: str) -> int:
        return dict(self.mins).get(name, 0)

    @property
    def target_e(self) -> int:
        return int(self.table[1:])

    def __str__(self) -> str:
        return f"({self.s}, " + ", ".join(sl.text for sl in self.slots) + ")"


@dataclass(frozen=True)
class FamilyMatch:
    family: str
    params: tuple  # ((name, value), ...)
    canonical: bool = True

    def as_dict(self) -> dict:
        return dict(self.params)


@dataclass(frozen=True)
class EnumerationBounds:
    max_s: int = 4
    max_points: int = 5
    max_denominator: int = 9
    max_param: int = 8


@lru_cache(maxsize=None)
def _raw_tables() -> dict:
    with resources.files("pdring").joinpath("data/families.json").open() as fh:
        return json.load(fh)


@lru_cache(maxsize=None)
def load_table(table: str) -> tuple:
    if table not in TABLES:
        raise DomainError(f"unknown table {table!r}")
    entry = _raw_tables()[table]
    fams = tuple(
        Family(f["id"], table, f["s"], tuple(Slot.parse(t) for t in f["slots"]),
               tuple(sorted(f.get("min", {}).items())))
        for f in entry["families"])
    if len(fams) != entry["count"]:
        raise DomainError(f"table {table}: count {entry['count']} != {len(fams)} entries")
    return fams


def table_for(e: int) -> tuple:
    return load_table(f"e{e}")


def get_family(family_id: str) -> Family:
    for table in TABLES:
        for f in load_table(table):
            if f.id == family_id:
                return f
    raise DomainError(f"unknown family {family_id!r}")


# -- instantiation and ordering --------------------------------------------

def slot_values(f: Family, params: dict) -> list:
    """Printed (numerator, denominator) pairs before reduction."""
    missing = [p for p in f.params if p not in params]
    if missing:
        raise DomainError(f"{f.id}: missing parameters {missing}")
    for p in f.params:
        v = params[p]
        if not isinstance(v, int) or v < f.minimum(p):
            raise DomainError(f"{f.id}: parameter {p}={v!r} below minimum {f.minimum(p)}")
    return [sl.raw(params) for sl in f.slots]


def instantiate_family(f: Family, params: Optional[dict] = None) -> NormalizedDivisor:
    fr = []
    for num, den in slot_values(f, params or {}):
        a = Fraction(num, den)
        if not 0 <= a < 1:
            raise DomainError(f"{f.id}: slot value {a} outside [0, 1)")
        if a:
            fr.append(a)
    return NormalizedDivisor(f.s, tuple(fr))


def _order_key(a: Fraction):
    t = t_of(a)
    return (len(t) > 0, t, a)


def canonical_order(d: NormalizedDivisor) -> NormalizedDivisor:
    """Empty T-signatures first; equal signatures by ascending fraction."""
    return NormalizedDivisor(d.s, tuple(sorted(d.fractions, key=_order_key)))


def iter_params(f: Family, max_param: int,
                stop: Optional[Callable[[dict], bool]] = None,
                skip: Optional[Callable[[dict, set], bool]] = None) -> Iterable[dict]:
    """Parameter assignments up to ``max_param``, in lexicographic order.

    ``stop(probe)`` sees the partial assignment with the remaining parameters
    held at their minimum; the first value of a parameter that triggers it
    ends that parameter's range.  This is sound because every printed
    denominator increases in each parameter.  ``skip(env, assigned)`` drops a
    single value without ending the range.
    """
    names = f.params
    mins = {p: f.minimum(p) for p in names}

    def rec(i, env):
        if i == len(names):
            yield dict(env)
            return
        name = names[i]
        assigned = set(names[:i + 1])
        for v in range(mins[name], max_param + 1):
            env[name] = v
            if stop is not None:
                probe = dict(mins)
                probe.update(env)
                if stop(probe):
                    break
            if skip is not None and skip(env, assigned):
                continue
            yield from rec(i + 1, env)
        env.pop(name, None)

    yield from rec(0, {})


def match_families(d: NormalizedDivisor, table: str) -> list:
    """All (family, parameters) whose instantiation equals ``d`` as a multiset."""
    target = sorted(d.fractions)
    allowed = set(target) | {Fraction(0)}
    maxden = max((a.denominator for a in target), default=1)
    canon = canonical_order(d).fractions
    out = []
    for f in load_table(table):
        if f.s != d.s:
            continue

        def too_big(env, f=f):
            return any(sl.den(env) > maxden and sl.num(env) != 0 for sl in f.slots)

        def foreign(env, assigned, f=f):
            return any(set(sl.params) <= assigned and Fraction(*sl.raw(env)) not in allowed
                       for sl in f.slots if sl.params)

        for params in iter_params(f, maxden, stop=too_big, skip=foreign):
            inst = instantiate_family(f, params)
            if sorted(inst.fractions) == target:
                out.append(FamilyMatch(f.id, tuple(sorted(params.items())),
                                       inst.fractions == canon))
    return out


# -- bounded verification -----------------------------------------------------

def _analyze_chunk(args):
    """Rational, supported divisors in one (s, r) slice with their multiplicity."""
    s, r, max_den = args
    rows = []
    unsupported = []
    total = 0
    for d in iter_normalized(s, r, max_den, min_s=s):
        if d.r != r:
            continue
        total += 1
        if not is_rational_singularity(d).is_rational:
            continue
        try:
            e = multiplicity(d).value
        except UnsupportedConfiguration:
            unsupported.append(d.fractions)
            continue
        rows.append((d.s, d.fractions, e))
    return s, r, total, unsupported, rows


@lru_cache(maxsize=4)
def corpus(max_s: int, max_points: int, max_denominator: int, workers: int = 1) -> dict:
    """Rational-singularity corpus with multiplicities, deterministic order.

    Rational divisors outside the supported graph regime are kept apart in
    ``unsupported_rows``.
    """
    jobs = [(s, r, max_denominator) for s in range(1, max_s + 1)
            for r in range(0, max_points + 1)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_analyze_chunk, jobs))
    else:
        results = [_analyze_chunk(j) for j in jobs]
    results.sort(key=lambda t: (t[0], t[1]))
    rows, unsupported = [], []
    total = 0
    for s, _, t, u, rs in results:
        total += t
        unsupported.extend(NormalizedDivisor(s, fr) for fr in u)
        rows.extend(rs)
    return {"ample": total, "unsupported": len(unsupported),
            "unsupported_rows": tuple(unsupported),
            "rows": tuple((NormalizedDivisor(s, fr), e) for s, fr, e in rows)}


def family_instances(f: Family, max_param: int, max_denominator: Optional[int] = None):
    """``(params, divisor)`` for every assignment up to ``max_param``.

    With ``max_denominator`` set, instances whose printed denominators exceed it
    are skipped.
    """
    for params in iter_params(f, max_param):
        if max_denominator is not None and any(
                den > max_denominator for _, den in slot_values(f, params)):
            continue
        yield params, instantiate_family(f, params)


def check_instance(d: NormalizedDivisor, target_e: int) -> Optional[str]:
    """Reason an instance is not a rational singularity of multiplicity target_e."""
    if not d.is_ample:
        return "not ample"
    if not is_rational_singularity(d).is_rational:
        return "not rational"
    try:
        e = multiplicity(d).value
    except UnsupportedConfiguration:
        return "unsupported configuration"
    if e != target_e:
        return f"multiplicity {e}"
    return None


def _fmt(d: NormalizedDivisor) -> str:
    return str(d)


def enumerate_and_verify(bounds: EnumerationBounds, target_e: int, workers: int = 1,
                         instance_max_denominator: Optional[int] = 60) -> dict:
    """Completeness on the enumerated corpus and soundness of every family.

    Completeness: each rational divisor in the box with multiplicity
    ``target_e`` must match some family.  Soundness: each instance with
    parameters up to ``max_param`` (and printed denominators up to
    ``instance_max_denominator``) must have multiplicity exactly ``target_e``.
    """
    table = f"e{target_e}"
    fams = load_table(table)
    data = corpus(bounds.max_s, bounds.max_points, bounds.max_denominator, workers)
    coverage = {f.id: 0 for f in fams}
    unmatched = []
    found = 0
    for d, e in data["rows"]:
        if e != target_e:
            continue
        found += 1
        matches = match_families(d, table)
        if not matches:
            unmatched.append(_fmt(canonical_order(d)))
        for fid in sorted({m.family for m in matches}):
            coverage[fid] += 1
    unsound = []
    checked = 0
    for f in fams:
        for params, d in family_instances(f, bounds.max_param, instance_max_denominator):
            checked += 1
            why = check_instance(d, target_e)
            if why is not None:
                unsound.append({"family": f.id, "params": params, "divisor": _fmt(d),
                                "reason": why})
    return {
        "target_e": target_e,
        "bounds": dataclasses.asdict(bounds),
        "families": len(fams),
        "corpus_ample": data["ample"],
        "corpus_unsupported": data["unsupported"],
        "corpus_with_target_e": found,
        "unmatched": sorted(unmatched),
        "instances_checked": checked,
        "unsound": unsound,
        "coverage": coverage,
        "ok": not unmatched and not unsound,
    }


def ex1_divisor(p: int) -> NormalizedDivisor:
    """``(2; (p+1)/2p, (p-1)/p, 1/2)``, multiplicity ``ceil((p+1)/2)``."""
    return NormalizedDivisor(2, (Fraction(p + 1, 2 * p), Fraction(p - 1, p), Fraction(1, 2)))


def threshold_report(target_e: int, primes: Iterable[int], max_param: int = 8,
                     max_denominator: Optional[int] = None) -> dict:
    """F-rationality of every table instance at each prime.

    Only instances that really have multiplicity ``target_e`` are scanned;
    the rest are counted under ``skipped``.
    """
    primes = sorted(set(primes))
    for p in primes:
        if not is_prime(p):
            raise DomainError(f"{p} is not prime")
    seen = {}
    skipped = 0
    for f in load_table(f"e{target_e}"):
        for params, d in family_instances(f, max_param, max_denominator):
            k = d.key()
            if k in seen:
                continue
            if check_instance(d, target_e) is not None:
                skipped += 1
                continue
            seen[k] = (f.id, params, canonical_order(d))
    per_prime = {}
    for p in primes:
        failures = []
        for k in sorted(seen):
            fid, params, d = seen[k]
            v = _scan(d, p)
            if not v.is_f_rational:
                failures.append({"divisor": _fmt(d), "family": fid, "params": params,
                                 "witness_n": v.witness.n, "value": v.witness.value})
        entry = {"failures": failures, "count": len(failures)}
        if math.ceil((p + 1) / 2) == target_e:
            w = ex1_divisor(p)
            entry["ex1_witness"] = {
                "divisor": _fmt(canonical_order(w)),
                "in_table": w.key() in seen,
                "f_rational": _scan(w, p).is_f_rational,
            }
        per_prime[p] = entry
    return {"target_e": target_e, "max_param": max_param, "instances": len(seen),
            "skipped": skipped, "primes": per_prime}
