"""Exact pattern-avoidance counting and Stanley-Wilf growth bounds."""

from .algebraic import AlgebraicValue
from .enumeration import (
    CeilingExceeded, catalan, count_avoiders, count_by_lr_minima, enumerate_avoiders,
    narayana_formula, verify_bwx, wilf_equivalent_upto,
)
from .limits import (
    bound_report, closed_form_limit, f_alpha, fekete_lower_bound, gener_upper_chain,
    inter_limit_step, layered_floor, optimize_f, valtr_floor,
)
from .merging import Triple, WitnessParams, build_witness, count_witnesses, extend_with_buffer, merge
from .perm import Perm, avoids, contains, format_permutation, parse_permutation

__version__ = "0.1.0"
