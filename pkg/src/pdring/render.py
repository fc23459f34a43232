"""Text renderings of the star-shaped dual graph."""

from __future__ import annotations

from typing import Optional

from .errors import DomainError
from .resolution import DualGraph, FundamentalCycle


def _label(weight: int, coeff: Optional[int]) -> str:
    return f"-{weight}" if coeff is None else f"-{weight} ({coeff})"


def render_ascii(g: DualGraph, z: Optional[FundamentalCycle] = None) -> str:
    """One line for the central curve, then one chain per branch, read outward."""
    n0 = z.n0 if z is not None else None
    lines = [f"E0 [{_label(g.central_weight, n0)}]"]
    for i, chain in enumerate(g.branches):
        coeffs = z.branch_coeffs[i] if z is not None else (None,) * len(chain)
        cells = " --- ".join(f"[{_label(b, c)}]" for b, c in zip(chain, coeffs))
        lines.append(f"  +-- {cells}")
    return "\n".join(lines) + "\n"


def render_dot(g: DualGraph, z: Optional[FundamentalCycle] = None) -> str:
    out = ["graph dual {", "  node [shape=circle];"]
    n0 = z.n0 if z is not None else None
    out.append(f'  E0 [label="{_label(g.central_weight, n0)}"];')
    for i, chain in enumerate(g.branches, start=1):
        coeffs = z.branch_coeffs[i - 1] if z is not None else (None,) * len(chain)
        prev = "E0"
        for j, (b, c) in enumerate(zip(chain, coeffs), start=1):
            name = f"E{i}_{j}"
            out.append(f'  {name} [label="{_label(b, c)}"];')
            out.append(f"  {prev} -- {name};")
            prev = name
    out.append("}")
    return "\n".join(out) + "\n"


def render_graph(g: DualGraph, z: Optional[FundamentalCycle] = None, fmt: str = "ascii") -> str:
    if z is not None and not z.fits(g):
        raise DomainError("cycle shape does not match the graph")
    if fmt == "ascii":
        return render_ascii(g, z)
    if fmt == "dot":
        return render_dot(g, z)
    raise DomainError(f"unknown format {fmt!r}")
