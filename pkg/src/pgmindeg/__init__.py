"""Minimal faithful permutation degrees of finite p-groups.

Groups are given by power-commutator presentations; see :mod:`pgmindeg.pcgroup`.
"""
__version__ = "0.1.0"

from .builtins import abelian, builtin_group, cyclic, direct_product, elementary, heisenberg, omega_nu
from .exceptional import (distinguished_quotients, exceptional_bounds, group_count_p6,
                          is_exceptional, scan_corpus)
from .mindeg import brute_force_minimal_degree, minimal_degree, verify_certificate
from .pcgroup import PcPresentation, PresentationError, consistency_check
from .pcp_format import parse_pcp, read_manifest, read_pcp, write_pcp

__all__ = [
    "PcPresentation", "PresentationError", "consistency_check",
    "parse_pcp", "write_pcp", "read_pcp", "read_manifest",
    "cyclic", "elementary", "abelian", "heisenberg", "direct_product", "builtin_group", "omega_nu",
    "minimal_degree", "brute_force_minimal_degree", "verify_certificate",
    "distinguished_quotients", "is_exceptional", "scan_corpus",
    "group_count_p6", "exceptional_bounds",
]
