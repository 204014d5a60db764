"""Enriched effect calculus: syntax, typing, equality and the CPS translations."""

from .equality import DistinctNormalForms, Proved, Unknown, check_eq, replay
from .normalize import normalize
from .search import rewrite_candidates
from .syntax import parse_judgement, parse_term, parse_type, show_judgement, show_term, show_type
from .terms import alpha_eq, plug_stoup, subst_stoup, subst_value
from .translate import (ResultType, cbn_term, cbn_type, cbv_term, cbv_type, fullness_witness, iso_comp,
                        iso_value, lincps_cbn_term, lincps_cbn_type, lincps_cbv_term, lincps_cbv_type,
                        result_type, self_ctype, self_cterm, self_term, self_vterm, self_vtype)
from .typecheck import Judgement, TypedTerm, TypingError, check_comp, check_judgement, check_value

__all__ = [
    "DistinctNormalForms", "Proved", "Unknown", "check_eq", "replay", "normalize", "rewrite_candidates",
    "parse_judgement", "parse_term", "parse_type", "show_judgement", "show_term", "show_type",
    "alpha_eq", "plug_stoup", "subst_stoup", "subst_value", "ResultType", "cbn_term", "cbn_type",
    "cbv_term", "cbv_type", "fullness_witness", "iso_comp", "iso_value", "lincps_cbn_term",
    "lincps_cbn_type", "lincps_cbv_term", "lincps_cbv_type", "result_type", "self_ctype", "self_cterm",
    "self_term", "self_vterm", "self_vtype", "Judgement", "TypedTerm", "TypingError", "check_comp",
    "check_judgement", "check_value",
]
