"""Turning token streams back into text: plain detokenizing and the fixed formatter."""
from .tokens import CLOSE_BRACKETS, OPEN_BRACKETS, TokenKind, tokenize

INDENT_WIDTH = 4

VALUE_KEYWORDS = frozenset({'None', 'True', 'False'})
UNARY_OPERATORS = frozenset({'-', '+', '~', '*', '**', '@'})
SOFT_KEYWORDS = frozenset({'match', 'case'})
LAMBDA = 'lambda'


def _is_value(token):
    """True when the token ends an operand, so a following ``(`` or ``[`` is a call or subscript."""
    if token.kind in (TokenKind.NAME, TokenKind.NUMBER, TokenKind.STRING):
        return True
    if token.kind == TokenKind.KEYWORD:
        return token.text in VALUE_KEYWORDS
    return token.kind == TokenKind.OPERATOR and (token.text in CLOSE_BRACKETS or token.text == '...')


def _is_plain_keyword(token):
    return token.kind == TokenKind.KEYWORD and token.text not in VALUE_KEYWORDS


class _Line:

    def __init__(self, depth):
        self.depth = depth
        self.tokens = []
        self.comment = None


def _space_joiner(line):
    return ' '.join(token.text for token in line.tokens)


def _opens_soft_keyword_block(line):
    """``match x:`` and ``case [a]:`` lines, where the leading name is a keyword."""
    tokens = line.tokens
    return (len(tokens) > 2 and tokens[0].kind == TokenKind.NAME and tokens[0].text in SOFT_KEYWORDS
            and tokens[-1].is_op(':') and not tokens[1].is_op('=', '.', ':', ','))


def _formatted_joiner(line):
    parts = []
    # open brackets, plus LAMBDA while a lambda's parameters are being read
    brackets = []
    previous = None
    unary_previous = False
    after_lambda = False
    soft_keyword = _opens_soft_keyword_block(line)
    for index, token in enumerate(line.tokens):
        unary = False
        if previous is None:
            gap = ''
            unary = token.is_op(*UNARY_OPERATORS)
        elif after_lambda or (index == 1 and soft_keyword):
            gap = ' '
            unary = token.is_op(*UNARY_OPERATORS) and token.text != '@'
        else:
            gap, unary = _gap(previous, token, brackets, unary_previous)
        parts.append(gap)
        parts.append(token.text)
        after_lambda = False
        if token.is_keyword('lambda'):
            brackets.append(LAMBDA)
        elif token.kind == TokenKind.OPERATOR:
            if token.text == ':' and brackets and brackets[-1] == LAMBDA:
                brackets.pop()
                after_lambda = True
            elif token.text in OPEN_BRACKETS:
                brackets.append(token.text)
            elif token.text in CLOSE_BRACKETS and brackets:
                brackets.pop()
        previous, unary_previous = token, unary
    return ''.join(parts)


def _gap(previous, token, brackets, previous_unary):
    """Whitespace between two tokens and whether ``token`` acts as a unary operator."""
    innermost = brackets[-1] if brackets else None
    unary = (token.is_op(*UNARY_OPERATORS) and token.text != '@'
             and not _is_value(previous))
    if previous.is_op(*OPEN_BRACKETS) or token.is_op(*CLOSE_BRACKETS):
        return '', unary
    if token.is_op(',', ';', ':'):
        return '', unary
    if previous.is_op(',', ';'):
        return ' ', unary
    if previous.is_op(':'):
        return ('' if innermost == '[' else ' '), unary
    if token.is_op('.') or previous.is_op('.'):
        other = previous if token.is_op('.') else token
        if _is_plain_keyword(other) or (token.is_op('.') and previous.kind == TokenKind.NUMBER):
            return ' ', unary
        return '', unary
    if previous_unary:
        return '', unary
    if token.is_op('=') or previous.is_op('='):
        return ('' if innermost in ('(', LAMBDA) else ' '), unary
    if token.is_op('(', '['):
        return ('' if _is_value(previous) else ' '), unary
    return ' ', unary


def _render(tokens, joiner, blank_lines=False):
    lines = []
    depth = 0
    current = None
    tokens = list(tokens)

    def flush():
        nonlocal current
        if current is not None and (current.tokens or current.comment):
            lines.append(current)
        current = None

    for index, token in enumerate(tokens):
        if token.kind == TokenKind.INDENT:
            depth += 1
        elif token.kind == TokenKind.DEDENT:
            depth = max(depth - 1, 0)
        elif token.kind in (TokenKind.NEWLINE, TokenKind.END_MARKER):
            flush()
        elif token.kind == TokenKind.COMMENT:
            if current is None:
                current = _Line(depth)
            current.comment = token.text
            following = tokens[index + 1] if index + 1 < len(tokens) else None
            if following is None or following.kind != TokenKind.NEWLINE:
                flush()
        else:
            if current is None:
                current = _Line(depth)
            current.tokens.append(token)
    flush()

    rendered = []
    previous = None
    for line in lines:
        if blank_lines and previous is not None and _opens_definition(line) and not _is_decorator(previous):
            rendered.append('')
        text = joiner(line)
        if line.comment:
            text = text + '  ' + line.comment if text else line.comment
        rendered.append(' ' * (INDENT_WIDTH * line.depth) + text)
        previous = line
    return '\n'.join(rendered) + '\n' if rendered else ''


def _is_decorator(line):
    return line.depth == 0 and bool(line.tokens) and line.tokens[0].is_op('@')


def _opens_definition(line):
    if line.depth or not line.tokens:
        return False
    first = line.tokens[0]
    if first.is_keyword('def', 'class') or first.is_op('@'):
        return True
    return first.is_keyword('async') and len(line.tokens) > 1 and line.tokens[1].is_keyword('def')


def detokenize(stream):
    """One line per logical line, tokens joined by single spaces, 4-space indentation."""
    return _render(stream, _space_joiner)


def format(text):
    """Canonical whitespace for ``text``; the token sequence is left unchanged."""
    return _render(tokenize(text), _formatted_joiner, blank_lines=True)
