"""Lossless token streams over Python source, built on the stdlib ``tokenize`` module."""
import enum
import hashlib
import io
import keyword
import tokenize as std_tokenize
from dataclasses import dataclass
from typing import Tuple

from ..exceptions import LexError


class TokenKind(enum.Enum):
    NAME = 'Name'
    KEYWORD = 'Keyword'
    NUMBER = 'Number'
    STRING = 'String'
    OPERATOR = 'Operator'
    NEWLINE = 'Newline'
    INDENT = 'Indent'
    DEDENT = 'Dedent'
    COMMENT = 'Comment'
    END_MARKER = 'EndMarker'


# whitespace-class kinds are ignored when comparing token sequences across formatting
LAYOUT_KINDS = frozenset({TokenKind.NEWLINE, TokenKind.INDENT, TokenKind.DEDENT, TokenKind.END_MARKER})

OPEN_BRACKETS = '([{'
CLOSE_BRACKETS = ')]}'


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    text: str
    line: int
    column: int

    @property
    def position(self):
        return self.line, self.column

    def is_op(self, *texts):
        return self.kind == TokenKind.OPERATOR and self.text in texts

    def is_keyword(self, *texts):
        return self.kind == TokenKind.KEYWORD and self.text in texts

    def with_text(self, text):
        return Token(self.kind, text, self.line, self.column)

    def __str__(self):
        return '{} {!r}'.format(self.kind.value, self.text)


@dataclass(frozen=True)
class TokenStream:
    tokens: Tuple[Token, ...]
    source_hash: str

    def __iter__(self):
        return iter(self.tokens)

    def __len__(self):
        return len(self.tokens)

    def __getitem__(self, index):
        return self.tokens[index]

    def signature(self):
        """(kind, text) pairs without layout tokens."""
        return tuple((token.kind, token.text) for token in self.tokens if token.kind not in LAYOUT_KINDS)

    def replace(self, tokens):
        return TokenStream(tuple(tokens), self.source_hash)


def source_digest(source):
    return hashlib.sha256(source.encode('utf-8', 'surrogatepass')).hexdigest()


def source_lines(source):
    """Physical lines as ``tokenize`` numbers them (split on ``\\n`` only)."""
    return io.StringIO(source).readlines()


_SIMPLE_KINDS = {
    std_tokenize.NUMBER: TokenKind.NUMBER,
    std_tokenize.STRING: TokenKind.STRING,
    std_tokenize.OP: TokenKind.OPERATOR,
    std_tokenize.NEWLINE: TokenKind.NEWLINE,
    std_tokenize.INDENT: TokenKind.INDENT,
    std_tokenize.DEDENT: TokenKind.DEDENT,
    std_tokenize.COMMENT: TokenKind.COMMENT,
    std_tokenize.ENDMARKER: TokenKind.END_MARKER,
}

# f-strings (3.12+) and t-strings (3.14+) arrive as start/middle/end pieces
_STRING_STARTS = {getattr(std_tokenize, name) for name in ('FSTRING_START', 'TSTRING_START') if hasattr(std_tokenize, name)}
_STRING_ENDS = {getattr(std_tokenize, name) for name in ('FSTRING_END', 'TSTRING_END') if hasattr(std_tokenize, name)}


def _slice(lines, start, end):
    (start_row, start_col), (end_row, end_col) = start, end
    if start_row == end_row:
        return lines[start_row - 1][start_col:end_col]
    parts = [lines[start_row - 1][start_col:]]
    parts.extend(lines[start_row:end_row - 1])
    parts.append(lines[end_row - 1][:end_col])
    return ''.join(parts)


def _raw_tokens(source):
    try:
        return list(std_tokenize.generate_tokens(io.StringIO(source).readline))
    except std_tokenize.TokenError as exc:
        reason, (line, column) = exc.args
        raise LexError(line, column, reason) from exc
    except SyntaxError as exc:
        # IndentationError, and every lexing failure on 3.12+
        raise LexError(exc.lineno or 0, max((exc.offset or 1) - 1, 0), exc.msg) from exc


def tokenize(source):
    """Tokenize ``source`` into a :class:`TokenStream`.

    Comments are kept; non-logical newlines are dropped because their positions
    are recoverable from the neighbouring tokens.  A newline that ends a logical
    line with no content is dropped too, so an empty source yields only the end
    marker.
    """
    lines = source_lines(source)
    raw = _raw_tokens(source)
    tokens = []
    has_content = False
    index = 0
    while index < len(raw):
        tok = raw[index]
        index += 1
        line, column = tok.start

        if tok.type in _STRING_STARTS:
            depth = 1
            while depth and index < len(raw):
                if raw[index].type in _STRING_STARTS:
                    depth += 1
                elif raw[index].type in _STRING_ENDS:
                    depth -= 1
                index += 1
            end = raw[index - 1].end
            tokens.append(Token(TokenKind.STRING, _slice(lines, tok.start, end), line, column))
            has_content = True
            continue

        if tok.type == std_tokenize.ERRORTOKEN:
            if tok.string.strip():
                raise LexError(line, column, 'unexpected {!r}'.format(tok.string))
            continue
        if tok.type == std_tokenize.NAME:
            kind = TokenKind.KEYWORD if keyword.iskeyword(tok.string) else TokenKind.NAME
        else:
            kind = _SIMPLE_KINDS.get(tok.type)
        if kind is None:
            # NL, ENCODING, TYPE_COMMENT
            continue

        if kind == TokenKind.NEWLINE:
            if not has_content:
                continue
            has_content = False
        elif kind not in (TokenKind.INDENT, TokenKind.DEDENT, TokenKind.COMMENT, TokenKind.END_MARKER):
            has_content = True
        tokens.append(Token(kind, tok.string, line, column))

    if not tokens or tokens[-1].kind != TokenKind.END_MARKER:
        row = len(lines) + 1
        tokens.append(Token(TokenKind.END_MARKER, '', row, 0))
    return TokenStream(tuple(tokens), source_digest(source))
