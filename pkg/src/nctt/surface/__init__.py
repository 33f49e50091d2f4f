"""Concrete syntax: lexing, parsing, elaboration, printing and file loading."""

from nctt.surface.lexer import Span, Token, lex
from nctt.surface.parser import parse, parse_term

__all__ = ["Span", "Token", "lex", "parse", "parse_term"]
