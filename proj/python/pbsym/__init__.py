"""Pseudo-Boolean proof checking and certified symmetry breaking."""

from ._pbsym import PbsymError, ParseError, Rejection, break_symmetries, check, generate, oracle_lex

__all__ = ["PbsymError", "ParseError", "Rejection", "break_symmetries", "check", "generate", "oracle_lex"]
