"""Source normalization: tokenize, strip, anonymize, detokenize, format."""
from .anonymize import anonymize, is_placeholder, make_placeholder
from .bindings import BindingTable, Occurrence, analyze_bindings
from .pipeline import normalize, normalize_source, restore_identifiers, stripped_text
from .render import detokenize, format
from .strip import strip_nonsemantic
from .syntax import SyntaxTree, parse
from .tokens import Token, TokenKind, TokenStream, tokenize

__all__ = [
    'BindingTable', 'Occurrence', 'SyntaxTree', 'Token', 'TokenKind', 'TokenStream',
    'analyze_bindings', 'anonymize', 'detokenize', 'format', 'is_placeholder',
    'make_placeholder', 'normalize', 'normalize_source', 'parse', 'restore_identifiers',
    'strip_nonsemantic', 'stripped_text', 'tokenize',
]
