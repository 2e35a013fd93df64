"""
Álgebra exata: grupos de valores lexicográficos e polinômios sobre ℚ.
"""

from .value_group import (
    DEFAULT_RANK,
    INFINITE,
    INFINITY,
    CutKind,
    GroupElem,
    QuasiCut,
    Subgroup,
    Value,
    add,
    cut_isomorphism,
    extend_subgroup,
    format_value,
    lex_cmp,
    parse_value,
    quasi_cut,
    scalar_mul,
    sme_canonical,
    sme_equiv,
)
from .polynomials import (
    GroundValuation,
    Poly,
    hensel_lift,
    ord_phi,
    parse_poly,
    phi_expand,
    reassemble,
    v_p,
)

__all__ = [
    "DEFAULT_RANK",
    "INFINITE",
    "INFINITY",
    "CutKind",
    "GroupElem",
    "QuasiCut",
    "Subgroup",
    "Value",
    "add",
    "cut_isomorphism",
    "extend_subgroup",
    "format_value",
    "lex_cmp",
    "parse_value",
    "quasi_cut",
    "scalar_mul",
    "sme_canonical",
    "sme_equiv",
    "GroundValuation",
    "Poly",
    "hensel_lift",
    "ord_phi",
    "parse_poly",
    "phi_expand",
    "reassemble",
    "v_p",
]
