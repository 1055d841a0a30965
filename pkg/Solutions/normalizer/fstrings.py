"""Names inside the replacement fields of f-string tokens.

An f-string reaches us as one String token.  The expressions inside its
``{...}`` fields are lexed again so their names can be resolved and renamed
like any other occurrence, while the literal text is left untouched.
"""
from dataclasses import dataclass
from typing import Optional

from ..exceptions import LexError
from .tokens import LAYOUT_KINDS, Token, TokenKind, tokenize

LOAD = 'load'
ATTRIBUTE = 'attribute'
KEYWORD = 'keyword'


@dataclass(frozen=True)
class FieldName:
    offset: int         # into the enclosing token text
    text: str
    line: int
    column: int
    role: str
    callee: Optional[str] = None
    debug: bool = False

    @property
    def position(self):
        return self.line, self.column


@dataclass(frozen=True)
class _Field:
    start: int
    end: int
    debug: bool


def _prefix_length(text):
    index = 0
    while index < len(text) and text[index] not in '\'"':
        index += 1
    return index


def is_fstring(text):
    prefix = text[:_prefix_length(text)].lower()
    return 'f' in prefix or 't' in prefix


def _skip_string(text, index, end):
    quote = text[index:index + 3] if text[index:index + 3] in ('"""', "'''") else text[index]
    index += len(quote)
    while index < end:
        if text[index] == '\\':
            index += 2
            continue
        if text.startswith(quote, index):
            return index + len(quote)
        index += 1
    return end


def _scan_literal(text, index, end, raw, fields, nested=False):
    while index < end:
        char = text[index]
        if char == '\\' and not raw:
            if text.startswith('N{', index + 1):
                close = text.find('}', index + 3)
                index = close + 1 if close != -1 else index + 2
            else:
                index += 2
            continue
        if char == '{':
            if text.startswith('{{', index):
                index += 2
                continue
            index = _scan_field(text, index + 1, end, raw, fields)
            continue
        if char == '}':
            if nested:
                return index
            index += 2 if text.startswith('}}', index) else 1
            continue
        index += 1
    return index


def _scan_field(text, index, end, raw, fields):
    start = index
    expression_end = None
    depth = 0
    while index < end:
        char = text[index]
        if char in '\'"':
            index = _skip_string(text, index, end)
            continue
        if char in '([{':
            depth += 1
        elif char in ')]' or (char == '}' and depth):
            depth -= 1
        elif depth == 0:
            if char == '}' or char == ':':
                break
            if char == '!' and text[index + 1:index + 2] != '=':
                break
            if char == '=' and text[index + 1:index + 2] != '=' and text[index - 1] not in '=!<>':
                if text[index + 1:end].lstrip()[:1] in ('}', '!', ':'):
                    expression_end = index
        index += 1
    debug = expression_end is not None
    fields.append(_Field(start, expression_end if debug else index, debug))
    if index < end and text[index] == '!':
        index += 2
    if index < end and text[index] == ':':
        index = _scan_literal(text, index + 1, end, raw, fields, nested=True)
    return index + 1


def _fields(text):
    prefix = _prefix_length(text)
    quote = text[prefix:prefix + 3] if text[prefix:prefix + 3] in ('"""', "'''") else text[prefix:prefix + 1]
    fields = []
    raw = 'r' in text[:prefix].lower()
    _scan_literal(text, prefix + len(quote), len(text) - len(quote), raw, fields)
    return fields


def _line_starts(text):
    starts = [0]
    starts.extend(index + 1 for index, char in enumerate(text) if char == '\n')
    return starts


def _callee(tokens, open_index):
    if open_index < 1 or not tokens[open_index].is_op('('):
        return None
    candidate = tokens[open_index - 1]
    if candidate.kind != TokenKind.NAME:
        return None
    if open_index >= 2 and tokens[open_index - 2].is_op('.'):
        return None
    return candidate.text


def _collect(text, base, out, outer_debug=False):
    for field in _fields(text):
        wrapped = '(' + text[field.start:field.end] + ')'
        try:
            stream = tokenize(wrapped)
        except LexError:
            continue
        starts = _line_starts(wrapped)
        tokens = [tok for tok in stream if tok.kind not in LAYOUT_KINDS and tok.kind != TokenKind.COMMENT]
        debug = field.debug or outer_debug
        brackets = []
        for index, tok in enumerate(tokens):
            offset = base + field.start + starts[tok.line - 1] + tok.column - 1
            if tok.kind == TokenKind.OPERATOR:
                if tok.text in '([{':
                    brackets.append(index)
                elif tok.text in ')]}' and brackets:
                    brackets.pop()
                continue
            if tok.kind == TokenKind.STRING and is_fstring(tok.text):
                _collect(tok.text, offset, out, debug)
                continue
            if tok.kind != TokenKind.NAME:
                continue
            following = tokens[index + 1] if index + 1 < len(tokens) else None
            if index and tokens[index - 1].is_op('.'):
                out.append((offset, tok.text, ATTRIBUTE, None, debug))
            elif following is not None and following.is_op('=') and len(brackets) > 1:
                # the outermost bracket is our own wrapper
                out.append((offset, tok.text, KEYWORD, _callee(tokens, brackets[-1]), debug))
            else:
                out.append((offset, tok.text, LOAD, None, debug))


def offset_position(token, offset):
    prefix = token.text[:offset]
    newlines = prefix.count('\n')
    if not newlines:
        return token.line, token.column + offset
    return token.line + newlines, offset - prefix.rfind('\n') - 1


def field_names(token):
    """Every name inside the fields of an f-string token, in source order."""
    if token.kind != TokenKind.STRING or not is_fstring(token.text):
        return []
    found = []
    _collect(token.text, 0, found)
    names = []
    for offset, text, role, callee, debug in sorted(found, key=lambda item: item[0]):
        line, column = offset_position(token, offset)
        names.append(FieldName(offset, text, line, column, role, callee, debug))
    return names


def rewrite(token, replacements):
    """Apply ``{offset: (old, new)}`` renames to the token text."""
    text = token.text
    for offset in sorted(replacements, reverse=True):
        old, new = replacements[offset]
        text = text[:offset] + new + text[offset + len(old):]
    return Token(token.kind, text, token.line, token.column)
