"""The `.uv` surface language: lexer, parser, resolver and printer."""

from .lexer import tokenize
from .parser import parse_level, parse_module, parse_term
from .pretty import pretty, pretty_module
from .resolve import resolve_declaration, resolve_module

__all__ = [
    "parse_level",
    "parse_module",
    "parse_term",
    "pretty",
    "pretty_module",
    "resolve_declaration",
    "resolve_module",
    "tokenize",
]
