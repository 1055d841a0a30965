import ast

from .tokens import Token, TokenKind

_BODY_FIELDS = ('body', 'orelse', 'finalbody')


def _is_bare_string(statement):
    return (isinstance(statement, ast.Expr) and isinstance(statement.value, ast.Constant)
            and isinstance(statement.value.value, (str, bytes)))


def _statement_lists(module):
    yield module, module.body
    for node in ast.walk(module):
        if node is module:
            continue
        for name in _BODY_FIELDS:
            body = getattr(node, name, None)
            if isinstance(body, list) and body and isinstance(body[0], ast.stmt):
                yield node, body


def _string_statements(tree):
    """(start, end, keep_as_pass) for every bare string-literal statement."""
    found = []
    for owner, body in _statement_lists(tree.module):
        strings = [statement for statement in body if _is_bare_string(statement)]
        if not strings:
            continue
        # an emptied block still needs a statement; the module may be empty
        emptied = len(strings) == len(body) and owner is not tree.module
        for index, statement in enumerate(strings):
            found.append((tree.start(statement), tree.end(statement), emptied and index == 0))
    return sorted(found)


def _drop_empty_lines(tokens):
    kept = []
    has_content = False
    for token in tokens:
        if token.kind == TokenKind.NEWLINE:
            if not has_content:
                continue
            has_content = False
        elif token.kind not in (TokenKind.INDENT, TokenKind.DEDENT, TokenKind.END_MARKER):
            has_content = True
        kept.append(token)
    return kept


def strip_nonsemantic(stream, tree):
    """Drop comments, blank lines and string literals used as statements.

    ``tree`` is the :class:`SyntaxTree` of the same source.  A block whose only
    statements were such strings keeps a ``pass`` in place of the first one.
    """
    tokens = [token for token in stream if token.kind != TokenKind.COMMENT]
    removed = set()
    replaced = {}
    positions = [token.position for token in tokens]
    for start, end, keep_as_pass in _string_statements(tree):
        covered = [index for index, position in enumerate(positions)
                   if start <= position < end and tokens[index].kind not in (TokenKind.INDENT, TokenKind.DEDENT)]
        if not covered:
            continue
        if keep_as_pass:
            first = tokens[covered[0]]
            replaced[covered[0]] = Token(TokenKind.KEYWORD, 'pass', first.line, first.column)
            covered = covered[1:]
        else:
            # take a neighbouring ';' along with the statement
            after = covered[-1] + 1
            before = covered[0] - 1
            if after < len(tokens) and tokens[after].is_op(';'):
                covered.append(after)
            elif before >= 0 and tokens[before].is_op(';'):
                covered.append(before)
        removed.update(covered)
    kept = [replaced.get(index, token) for index, token in enumerate(tokens) if index not in removed]
    return stream.replace(_drop_empty_lines(kept))
