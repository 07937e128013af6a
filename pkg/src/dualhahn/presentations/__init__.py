"""Text presentations of algebras and their verification against realizations."""

from dualhahn.presentations.model import (
    BUILTIN,
    Presentation,
    PresentationError,
    Relation,
    adhoc_presentation,
    builtin_presentation,
    o_n_presentation,
    parse_presentation,
)
from dualhahn.presentations.parser import ParseError, format_expression, parse_expression

__all__ = [
    "BUILTIN",
    "ParseError",
    "Presentation",
    "PresentationError",
    "Relation",
    "adhoc_presentation",
    "builtin_presentation",
    "format_expression",
    "o_n_presentation",
    "parse_expression",
    "parse_presentation",
]
