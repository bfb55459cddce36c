"""Arithmetic sentences, their translation into J, and bounded evaluation."""

from .evaluate import EvaluationError, eval_bounded, find_counterexample
from .expand import expand_mu
from .sentences import builtin_sentences, ok_sentence
from .syntax import ParseError, alpha_equal, free_vars, parse, pretty_print
from .translate import TranslationError, translate

__all__ = [
    "EvaluationError",
    "ParseError",
    "TranslationError",
    "alpha_equal",
    "builtin_sentences",
    "eval_bounded",
    "expand_mu",
    "find_counterexample",
    "free_vars",
    "ok_sentence",
    "parse",
    "pretty_print",
    "translate",
]
