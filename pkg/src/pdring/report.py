"""Full analysis of one divisor, as a JSON-ready record."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Union

from .classify import match_families
from .divisor import (NormalizedDivisor, QDivisor, is_rational_singularity, normalize,
                      period, require_ample)
from .errors import UnsupportedConfiguration
from .frational import BnRecord, candidate_primes, failing_primes, sweep
from .parsing import parse_divisor
from .resolution import cycle_square, multiplicity, verify_cycle

SCHEMA = "pdring.analysis/1"
DEFAULT_PRIMES = (2, 3, 5, 7)


def q(x) -> str:
    """Exact ``num/den`` string."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _bn(rec: BnRecord) -> dict:
    return {"n": rec.n, "p": rec.p, "deg_neg": rec.deg_neg, "support": rec.support_size,
            "value": rec.value, "coefficients": list(rec.coefficients)}


@dataclass
class AnalysisReport:
    data: dict = field(default_factory=dict)
    failed_checks: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return self.data

    def to_json(self) -> str:
        return json.dumps(self.data, indent=2, sort_keys=True) + "\n"

    @property
    def normalized(self) -> NormalizedDivisor:
        n = self.data["normalized"]
        return NormalizedDivisor(n["s"], tuple(Fraction(a) for a in n["fractions"]))

    def summary(self) -> str:
        d = self.data
        lines = [f"divisor      {self.normalized}",
                 f"degree       {d['degree']}",
                 f"period       {d['period']}",
                 f"rationality  {d['rationality']['outcome']}"]
        w = d["rationality"]
        if w["witness_n"] is not None:
            lines[-1] += f" (deg[{w['witness_n']}D] = {w['witness_value']})"
        if d["dual_graph"] is not None:
            g = d["dual_graph"]
            lines.append(f"dual graph   center -{g['central_weight']}, branches {g['branches']}")
        elif d.get("dual_graph_error"):
            lines.append(f"dual graph   {d['dual_graph_error']}")
        if d["fundamental_cycle"] is not None:
            z = d["fundamental_cycle"]
            lines.append(f"cycle        n0={z['n0']}, branches {z['branch_coeffs']}")
            lines.append(f"multiplicity {d['multiplicity']}")
        for p, v in d["f_rationality"].items():
            line = f"p={p:<10} {v['outcome']}"
            if v["witness"] is not None:
                line += f" (n={v['witness']['n']}, value {v['witness']['value']})"
            lines.append(line)
        if d["failing_primes"] is not None:
            lines.append(f"failing primes {d['failing_primes']}")
        for m in d["family_matches"]:
            lines.append(f"family       {m['family']} {m['params']}")
        for c in d.get("checks", []):
            lines.append(f"check        {c['name']}: {'ok' if c['ok'] else 'FAILED'}")
        return "\n".join(lines) + "\n"


def analyze(d: Union[str, QDivisor, NormalizedDivisor], primes: Optional[Iterable[int]] = None,
            verify: bool = False) -> AnalysisReport:
    echo = None
    if isinstance(d, str):
        d = parse_divisor(d)
    if isinstance(d, QDivisor):
        echo = {k: q(v) for k, v in d.terms.items()}
        d = normalize(d)
    require_ample(d)

    rat = is_rational_singularity(d)
    data = {
        "schema": SCHEMA,
        "input": echo,
        "normalized": {"s": d.s, "fractions": [q(a) for a in d.fractions]},
        "degree": q(d.degree),
        "period": period(d),
        "rationality": {"outcome": rat.outcome.value, "witness_n": rat.witness_n,
                        "witness_value": rat.witness_value},
        "dual_graph": None,
        "fundamental_cycle": None,
        "multiplicity": None,
        "f_rationality": {},
        "failing_primes": None,
        "family_matches": [],
    }
    report = AnalysisReport(data)
    mult = None
    if rat.is_rational:
        try:
            mult = multiplicity(d)
        except UnsupportedConfiguration as exc:
            data["dual_graph_error"] = str(exc)
    if mult is not None:
        data["dual_graph"] = {"central_weight": mult.graph.central_weight,
                              "branches": [list(b) for b in mult.graph.branches]}
        data["fundamental_cycle"] = {"n0": mult.cycle.n0,
                                     "branch_coeffs": [list(c) for c in mult.cycle.branch_coeffs]}
        data["multiplicity"] = mult.value
        if mult.value in (3, 4):
            data["family_matches"] = [
                {"family": m.family, "params": m.as_dict(), "canonical_order": m.canonical}
                for m in match_families(d, f"e{mult.value}")]
    if rat.is_rational:
        ps = sorted(set(DEFAULT_PRIMES if primes is None else primes))
        verdicts = sweep(d, ps)
        data["f_rationality"] = {
            str(p): {"outcome": v.outcome.value,
                     "witness": None if v.witness is None else _bn(v.witness)}
            for p, v in verdicts.items()}
        fails = sorted(failing_primes(d))
        data["failing_primes"] = fails
        if verify:
            checks = _cross_checks(d, mult, verdicts, fails)
            data["checks"] = checks
            report.failed_checks = [c["name"] for c in checks if not c["ok"]]
    return report


def _cross_checks(d, mult, verdicts, fails) -> list:
    checks = []

    def add(name, ok):
        checks.append({"name": name, "ok": bool(ok)})

    if mult is not None:
        add("verify_cycle", verify_cycle(mult.graph, mult.cycle).ok)
        add("multiplicity_is_minus_Z_squared", -cycle_square(mult.graph, mult.cycle) == mult.value)
    cands = set(candidate_primes(d))
    add("failing_primes_divide_denominators", set(fails) <= cands)
    for p, v in sorted(verdicts.items()):
        if d.s >= d.r:
            add(f"s_ge_r_implies_f_rational[p={p}]", v.is_f_rational)
        if p not in cands:
            add(f"p_coprime_implies_f_rational[p={p}]", v.is_f_rational)
        if d.degree >= 1 and p >= d.r - 1:
            add(f"degree_bound_implies_f_rational[p={p}]", v.is_f_rational)
        if not v.is_f_rational:
            add(f"not_f_rational_implies_r_eq_s_plus_1[p={p}]", d.r == d.s + 1)
    return checks
