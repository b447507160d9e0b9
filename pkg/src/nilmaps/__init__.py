"""Exact algebra for polynomial maps of K^3 whose Jacobian is nilpotent."""

from .errors import *  # noqa: F401,F403
from .poly import GF, QQ, MultiPoly, UniPoly, format_poly, parse_field, parse_poly, parse_unipoly
from .jacobian import PolyMatrix3, char_coeffs, is_nilpotent, jacobian_of
from .maps import (
    PolyMap3,
    conjugate,
    format_map,
    linear_dependence,
    origin_check,
    parse_map,
    potential_of,
    residuals,
)
from .normalform import (
    Prop31Params,
    Theorem22Params,
    classify,
    gen_prop31,
    gen_thm22,
    gen_thm33,
    lemma21_branch_check,
    lemma21_extract,
    regenerate,
)
from .search import SearchSpace, Sampled, SurveyReport, random_map, run_survey

__version__ = "0.1.0"
