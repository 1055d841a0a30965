import re
from collections import Counter

from ..models import IdentifierMap
from .fstrings import ATTRIBUTE, field_names, is_fstring, rewrite
from .tokens import Token, TokenKind

PLACEHOLDER_PATTERN = re.compile(r'^(VAR|FUNC|CLASS|ARG)(\d{2,})$')


def make_placeholder(category, index):
    return '{}{:02d}'.format(category.value, index)


def is_placeholder(text):
    return PLACEHOLDER_PATTERN.match(text) is not None


class _Numbering:
    """Hands out placeholders per category in first-occurrence order.

    Placeholder-shaped names that stay as written are ``reserved``: no
    binding receives them, and the ones a restore would touch are kept in
    the map as identity entries.
    """

    def __init__(self, reserved=()):
        self.reserved = frozenset(reserved)
        self.assigned = {}
        self.counters = Counter()
        self.entries = []
        self.kept = set()

    def __call__(self, occurrence):
        placeholder = self.assigned.get(occurrence.binding_id)
        if placeholder is None:
            placeholder = self.next_free(occurrence.category)
            self.assigned[occurrence.binding_id] = placeholder
            self.entries.append((placeholder, occurrence.original))
        return placeholder

    def next_free(self, category):
        while True:
            self.counters[category] += 1
            placeholder = make_placeholder(category, self.counters[category])
            if placeholder not in self.reserved:
                return placeholder

    def keep(self, name):
        if name not in self.kept:
            self.kept.add(name)
            self.entries.append((name, name))


def _reserved(stream, bindings):
    """Placeholder-shaped names in ``stream`` that no binding renames."""
    names = set()
    for token in stream:
        if token.kind == TokenKind.NAME and is_placeholder(token.text) and bindings.get(token.position) is None:
            names.add(token.text)
        elif token.kind == TokenKind.STRING and is_fstring(token.text):
            names.update(name.text for name in field_names(token)
                         if is_placeholder(name.text) and bindings.get(name.position) is None)
    return names


def anonymize(stream, bindings):
    """Rename every anonymizable Name token to its binding's placeholder.

    Returns the renamed stream and the :class:`IdentifierMap` of
    placeholder -> original name.
    """
    numbering = _Numbering(_reserved(stream, bindings))
    tokens = []
    for index, token in enumerate(stream):
        if token.kind == TokenKind.NAME:
            occurrence = bindings.get(token.position)
            if occurrence is None:
                if token.text in numbering.reserved and not (index and stream[index - 1].is_op('.')):
                    numbering.keep(token.text)
                tokens.append(token)
            elif token.position in bindings.aliases:
                # ``import math`` -> ``import math as VAR01``
                tokens.append(token)
                tokens.append(Token(TokenKind.KEYWORD, 'as', token.line, token.column))
                tokens.append(token.with_text(numbering(occurrence)))
            else:
                tokens.append(token.with_text(numbering(occurrence)))
        elif token.kind == TokenKind.STRING and is_fstring(token.text):
            replacements = {}
            for name in field_names(token):
                occurrence = bindings.get(name.position)
                if occurrence is not None:
                    replacements[name.offset] = (name.text, numbering(occurrence))
                elif name.text in numbering.reserved and name.role != ATTRIBUTE:
                    numbering.keep(name.text)
            tokens.append(rewrite(token, replacements) if replacements else token)
        else:
            tokens.append(token)
    return stream.replace(tokens), IdentifierMap(tuple(numbering.entries))
