"""Permutation classes, their growth rates and the structure of small cell classes."""
from .perm import (
    Permutation,
    contains,
    avoids,
    decompose,
    direct_sum,
    inflate,
    is_simple,
    parse_perm,
    skew_sum,
    substitution_depth,
)
from .classes import (
    Av,
    Sub,
    SumClosure,
    SkewClosure,
    counts,
    is_member,
    members,
    parse_profile,
    parse_spec,
    skew_indec_profile,
    sum_indec_profile,
)
from .gf import RationalGF, RootCertificate, growth_rate, named_constant, profile_growth
from .grid import ClassMatrix, Gridding, find_gridding, subword_growth
from .concentration import GridLine, cover_for_line, gamma_membership, is_concentrated, multi_line_cover
from .manifest import load_manifest, verify_tables

__version__ = "0.1.0"
