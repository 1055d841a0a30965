import logging

from ..exceptions import OutlierError, SourceError, UnmappedPlaceholder
from ..models import NormalizedProgram
from .anonymize import anonymize, is_placeholder
from .bindings import analyze_bindings
from .fstrings import ATTRIBUTE, field_names, is_fstring, rewrite
from .render import detokenize, format
from .strip import strip_nonsemantic
from .syntax import parse
from .tokens import TokenKind, tokenize

logger = logging.getLogger(__name__)

_STATEMENT_BREAKS = (TokenKind.NEWLINE, TokenKind.INDENT, TokenKind.DEDENT)


def _prepare(source):
    return source[1:] if source.startswith('﻿') else source


def normalize_source(source, submission_id=''):
    """tokenize -> strip -> anonymize -> detokenize -> format.

    Raises :class:`OutlierError` when the source cannot be lexed or parsed.
    """
    source = _prepare(source)
    try:
        stream = tokenize(source)
        tree = parse(source)
        bindings = analyze_bindings(source, tree=tree, stream=stream)
    except SourceError as exc:
        logger.debug('submission %s is an outlier: %s', submission_id, exc)
        raise OutlierError(submission_id, exc) from exc
    anonymized, identifier_map = anonymize(strip_nonsemantic(stream, tree), bindings)
    return NormalizedProgram(format(detokenize(anonymized)), identifier_map, submission_id)


def normalize(submission):
    return normalize_source(submission.source, submission.id)


def stripped_text(source):
    """The source with comments, docstrings and layout normalized but names untouched."""
    source = _prepare(source)
    return format(detokenize(strip_nonsemantic(tokenize(source), parse(source))))


def _collapse_aliases(tokens):
    """``import math as math`` -> ``import math``."""
    kept = []
    statement_start = True
    in_import = False
    index = 0
    while index < len(tokens):
        token = tokens[index]
        if token.kind in _STATEMENT_BREAKS or token.is_op(';'):
            statement_start, in_import = True, False
            kept.append(token)
            index += 1
            continue
        if statement_start:
            in_import = token.is_keyword('import')
            statement_start = False
        if (in_import and token.kind == TokenKind.NAME and index + 2 < len(tokens)
                and tokens[index + 1].is_keyword('as') and tokens[index + 2].text == token.text
                and (tokens[index - 1].is_keyword('import') or tokens[index - 1].is_op(','))):
            kept.append(token)
            index += 3
            continue
        kept.append(token)
        index += 1
    return kept


def restore_identifiers(text, identifier_map):
    """Put the original names of ``identifier_map`` back into normalized ``text``."""
    originals = identifier_map.as_dict()

    def original(placeholder):
        if placeholder not in originals:
            raise UnmappedPlaceholder(placeholder)
        return originals[placeholder]

    stream = tokenize(text)
    tokens = []
    for index, token in enumerate(stream):
        if token.kind == TokenKind.NAME and is_placeholder(token.text) \
                and not (index and stream[index - 1].is_op('.')):
            tokens.append(token.with_text(original(token.text)))
        elif token.kind == TokenKind.STRING and is_fstring(token.text):
            replacements = {
                name.offset: (name.text, original(name.text))
                for name in field_names(token)
                if name.role != ATTRIBUTE and is_placeholder(name.text)
            }
            tokens.append(rewrite(token, replacements) if replacements else token)
        else:
            tokens.append(token)
    return format(detokenize(stream.replace(_collapse_aliases(tokens))))
