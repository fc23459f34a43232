"""Rationality, F-rationality and multiplicity of normal graded rings over P^1."""

from .divisor import (NormalizedDivisor, QDivisor, deg_floor, deg_floor_neg, is_rational_singularity,
                      nd, normalize, period)
from .errors import DomainError, ParseError, PdringError, PreconditionError, UnsupportedConfiguration
from .frational import criterion_value, failing_primes, is_f_rational
from .hj import hj_closed_form, hj_eval, hj_expand, t_signature
from .parsing import parse_divisor
from .resolution import dual_graph, fundamental_cycle, multiplicity, verify_cycle

__all__ = [
    "NormalizedDivisor", "QDivisor", "deg_floor", "deg_floor_neg", "is_rational_singularity", "nd",
    "normalize", "period", "DomainError", "ParseError", "PdringError", "PreconditionError",
    "UnsupportedConfiguration", "criterion_value", "failing_primes", "is_f_rational",
    "hj_closed_form", "hj_eval", "hj_expand", "t_signature", "parse_divisor", "dual_graph",
    "fundamental_cycle", "multiplicity", "verify_cycle",
]
