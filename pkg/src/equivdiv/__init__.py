"""Cohomological obstructions to invariant divisors for finite group actions."""

__version__ = "0.1.0"

from .abelian import FinAbGroup
from .cohomology import (
    BarComplex,
    cohomology_group,
    h2_units,
    schur_multiplier,
    schur_multiplier_abelian,
)
from .groups import FiniteGroup, Subgroup, all_sylow_cyclic, cosets, sylow_subgroup
from .groupspec import parse_group_spec, print_group_spec, realize
from .modules import ZGModule, direct_sum, divisor_module, fixed_points, induced_module, trivial_module
from .oracle import brute_force_h2
from .smith import smith_normal_form

__all__ = [
    "BarComplex",
    "FinAbGroup",
    "FiniteGroup",
    "Subgroup",
    "ZGModule",
    "all_sylow_cyclic",
    "brute_force_h2",
    "cohomology_group",
    "cosets",
    "direct_sum",
    "divisor_module",
    "fixed_points",
    "h2_units",
    "induced_module",
    "parse_group_spec",
    "print_group_spec",
    "realize",
    "schur_multiplier",
    "schur_multiplier_abelian",
    "smith_normal_form",
    "sylow_subgroup",
    "trivial_module",
]
