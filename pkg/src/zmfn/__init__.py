"""Whitehead problems for elements of Z^m x F_n."""

from .decider import WhiteheadQuery, decide, type2_feasible, verify
from .diophantine import Family, solve_linear_pair
from .search import Decision, Verdict
from .words import Element, Word, parse_element, parse_word

__all__ = [
    "Decision",
    "Element",
    "Family",
    "Verdict",
    "WhiteheadQuery",
    "Word",
    "decide",
    "parse_element",
    "parse_word",
    "solve_linear_pair",
    "type2_feasible",
    "verify",
]
