"""Star-shaped dual graph, fundamental cycle and multiplicity.

The minimal good resolution of ``R(P^1, D)`` has a central curve ``E0`` with
``E0^2 = -s`` and, for every fraction ``a_i``, a chain of curves whose
self-intersections are minus the entries of ``hj_expand(1/a_i)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .divisor import NormalizedDivisor, deg_floor, is_rational_singularity, require_ample
from .errors import DomainError, PreconditionError, UnsupportedConfiguration
from .hj import hj_expand, hj_tails


@dataclass(frozen=True)
class DualGraph:
    central_weight: int
    branches: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "branches", tuple(tuple(b) for b in self.branches))
        for chain in self.branches:
            if not chain or any(b < 2 for b in chain):
                raise DomainError(f"branch weights must be >= 2, got {chain}")

    @property
    def vertex_count(self) -> int:
        return 1 + sum(len(b) for b in self.branches)


@dataclass(frozen=True)
class FundamentalCycle:
    n0: int
    branch_coeffs: tuple = ()

    def __post_init__(self):
        bc = self.branch_coeffs
        if type(bc) is not tuple or any(type(c) is not tuple for c in bc):
            object.__setattr__(self, "branch_coeffs", tuple(tuple(c) for c in bc))

    def total(self) -> int:
        return self.n0 + sum(sum(c) for c in self.branch_coeffs)

    def fits(self, g: DualGraph) -> bool:
        return len(self.branch_coeffs) == len(g.branches) and all(
            len(c) == len(b) for c, b in zip(self.branch_coeffs, g.branches))


@dataclass(frozen=True)
class MultiplicityReport:
    value: int
    cycle: FundamentalCycle
    graph: DualGraph


@lru_cache(maxsize=4096)
def _chain_pair(c: int, q: int) -> tuple:
    seq = hj_expand(Fraction(q, c))
    return seq, tuple((e.numerator, e.denominator) for e in hj_tails(seq))


def _chain(a: Fraction) -> tuple:
    """Expansion of ``1/a`` and its tails as (numerator, denominator) pairs."""
    return _chain_pair(a.numerator, a.denominator)


def dual_graph(d: NormalizedDivisor) -> DualGraph:
    require_ample(d)
    if d.s <= 0 or (d.s == 1 and d.r <= 2):
        raise UnsupportedConfiguration(
            f"{d}: central curve would be contractible (s={d.s}, r={d.r})")
    return DualGraph(d.s, tuple(_chain(a)[0] for a in d.fractions))


def lemma_cycle(d: NormalizedDivisor, l: int) -> FundamentalCycle:
    """The cycle ``F_l``: central coefficient ``l``, branches by ceiling recursion.

    ``n_i1 = ceil(l / e_i1)`` and ``n_i,j+1 = ceil(n_ij / e_i,j+1)``, where the
    ``e_ij`` are the tails of the expansion of ``1/a_i``.
    """
    coeffs = []
    for c, q in d.pairs():
        prev = l
        chain = []
        for num, den in _chain_pair(c, q)[1]:
            prev = -((-prev * den) // num)  # ceil(prev / e)
            chain.append(prev)
        coeffs.append(tuple(chain))
    return FundamentalCycle(l, tuple(coeffs))


def central_coefficient(d: NormalizedDivisor) -> int:
    """``min { n : deg [nD] >= 0 }``; requires a rational singularity."""
    require_rational(d)
    n = 1
    while deg_floor(d, n) < 0:
        n += 1
    return n


def require_rational(d: NormalizedDivisor) -> None:
    verdict = is_rational_singularity(d)
    if not verdict.is_rational:
        raise PreconditionError(
            f"{d} is not a rational singularity (deg[{verdict.witness_n}D] = {verdict.witness_value})")


def fundamental_cycle(d: NormalizedDivisor) -> FundamentalCycle:
    dual_graph(d)  # regime check
    return lemma_cycle(d, central_coefficient(d))


def intersections(g: DualGraph, z: FundamentalCycle) -> tuple:
    """``(Z.E0, ((Z.E_11, ...), ...))``."""
    if not z.fits(g):
        raise DomainError("cycle shape does not match the graph")
    center = central_intersection(g, z)
    rows = []
    for chain, coeff in zip(g.branches, z.branch_coeffs):
        row = []
        for j, b in enumerate(chain):
            left = z.n0 if j == 0 else coeff[j - 1]
            right = coeff[j + 1] if j + 1 < len(coeff) else 0
            row.append(-b * coeff[j] + left + right)
        rows.append(tuple(row))
    return center, tuple(rows)


def central_intersection(g: DualGraph, z: FundamentalCycle) -> int:
    """``Z.E0`` alone."""
    return -g.central_weight * z.n0 + sum(c[0] for c in z.branch_coeffs)


def cycle_square(g: DualGraph, z: FundamentalCycle) -> int:
    center, rows = intersections(g, z)
    return z.n0 * center + sum(
        n * v for coeff, row in zip(z.branch_coeffs, rows) for n, v in zip(coeff, row))


@dataclass(frozen=True)
class CycleCheck:
    status: str  # valid_fundamental | violation | smaller_cycle
    vertex: Optional[tuple] = None  # (branch, index); (None, 0) is E0
    smaller: Optional[FundamentalCycle] = None

    @property
    def ok(self) -> bool:
        return self.status == "valid_fundamental"


def _branch_cycles(chain, box, y0):
    """Every vector on one chain (componentwise <= box) that is anti-nef on
    the chain's own vertices, given the central coefficient ``y0``."""
    m = len(chain)
    out = []
    vec = [0] * m

    def rec(j):
        if j == m:
            prev = y0 if m == 1 else vec[m - 2]
            if -chain[m - 1] * vec[m - 1] + prev <= 0:
                out.append(tuple(vec))
            return
        if j == 0:
            hi = box[0]
        else:
            prev = y0 if j == 1 else vec[j - 2]
            hi = min(box[j], chain[j - 1] * vec[j - 1] - prev)
        for y in range(0, hi + 1):
            vec[j] = y
            rec(j + 1)

    rec(0)
    return out


def verify_cycle(g: DualGraph, z: FundamentalCycle,
                 box: Optional[FundamentalCycle] = None) -> CycleCheck:
    """Check ``z`` is the fundamental cycle of ``g`` by exhaustive search.

    First every ``Z.E <= 0``.  Then all cycles ``Y <= box`` (default ``box =
    z``) are enumerated; ``z`` is the fundamental cycle iff every nonzero
    ``Y`` with all ``Y.E <= 0`` satisfies ``Y >= z``.  Branches only talk to
    each other through ``E0``, so the search runs per branch for each value
    of the central coefficient and recombines through the ``E0`` inequality.
    """
    center, rows = intersections(g, z)
    if center > 0:
        return CycleCheck("violation", (None, 0))
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            if v > 0:
                return CycleCheck("violation", (i, j))
    if z.n0 < 1 or any(c < 1 for coeff in z.branch_coeffs for c in coeff):
        return CycleCheck("violation", None)
    box = box or z
    if not box.fits(g):
        raise DomainError("search box shape does not match the graph")
    s = g.central_weight
    for y0 in range(0, box.n0 + 1):
        summaries = [_branch_summary(chain, bx, zc, y0) for chain, bx, zc
                     in zip(g.branches, box.branch_coeffs, z.branch_coeffs)]
        if any(sm is None for sm in summaries):
            continue
        columns = [list(col) for col in zip(*summaries)] or [[], [], []]
        best_any, best_nonzero, best_not_ge = columns
        found = _combine(s, y0, z.n0, best_any, best_nonzero, best_not_ge)
        if found is not None:
            return CycleCheck("smaller_cycle", smaller=FundamentalCycle(y0, found))
    return CycleCheck("valid_fundamental")


@lru_cache(maxsize=65536)
def _branch_summary(chain, bx, zc, y0):
    """Smallest first coordinate among a branch's candidates: any, nonzero,
    and not componentwise above ``zc``.  None when the branch has none."""
    cands = _branch_cycles(chain, bx, y0)
    if not cands:
        return None
    nz = [v for v in cands if any(v)]
    ng = [v for v in cands if any(a < b for a, b in zip(v, zc))]
    return min(cands), (min(nz) if nz else None), (min(ng) if ng else None)


def _combine(s, y0, n0, best_any, best_nonzero, best_not_ge):
    # min() on tuples picks the smallest first coordinate, which is all E0 sees
    def fits(choice):
        return sum(v[0] for v in choice) <= s * y0

    if 0 < y0 < n0:
        return tuple(best_any) if fits(best_any) else None
    pool = best_nonzero if y0 == 0 else best_not_ge
    if y0 == 0 and not best_any:
        return None
    for k, special in enumerate(pool):
        if special is None:
            continue
        choice = list(best_any)
        choice[k] = special
        if fits(choice):
            return tuple(choice)
    return None


def multiplicity_formula(g: DualGraph, z: FundamentalCycle) -> int:
    """``n0 (s - 2) + sum n_ij (b_ij - 2) + 2``."""
    return z.n0 * (g.central_weight - 2) + sum(
        n * (b - 2) for chain, coeff in zip(g.branches, z.branch_coeffs)
        for b, n in zip(chain, coeff)) + 2


def multiplicity(d: NormalizedDivisor) -> MultiplicityReport:
    g = dual_graph(d)
    z = lemma_cycle(d, central_coefficient(d))
    return MultiplicityReport(multiplicity_formula(g, z), z, g)
