"""Dependent type semantics with neo-Davidsonian events.

Sentences of a small English fragment become dynamic propositions in a
dependent lambda calculus. Their anaphora are resolved by proof search, and
the resulting readings can be exported as first-order event formulas.
"""

from .anaphora import FelicityGoal, NoResolution, Resolution, resolve_discourse, resolve_goal
from .fol import Untranslatable, fol_equivalent, parse_fol, show_fol, to_fol
from .fragment import interpret_discourse, interpret_sentence, parse_sentence, sequence_discourse
from .lexicon import default_lexicon, load_lexicon
from .reduce import DepthExceeded, normalize
from .report import RunReport, run_discourse
from .sexpr import parse, print_term
from .signature import ENTITY, EVENT, Signature, core_signature
from .subtyping import Coercion, is_subtype
from .terms import alpha_eq, free_vars, substitute
from .typecheck import TypeCheckError, check_type, infer_type

__all__ = [
    "FelicityGoal", "NoResolution", "Resolution", "resolve_discourse", "resolve_goal",
    "Untranslatable", "fol_equivalent", "parse_fol", "show_fol", "to_fol",
    "interpret_discourse", "interpret_sentence", "parse_sentence", "sequence_discourse",
    "default_lexicon", "load_lexicon", "DepthExceeded", "normalize",
    "RunReport", "run_discourse", "parse", "print_term",
    "ENTITY", "EVENT", "Signature", "core_signature", "Coercion", "is_subtype",
    "alpha_eq", "free_vars", "substitute", "TypeCheckError", "check_type", "infer_type",
]
