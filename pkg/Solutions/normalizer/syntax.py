import ast
import warnings
from dataclasses import dataclass
from typing import Tuple

from ..exceptions import ParseError
from .tokens import source_lines


@dataclass(frozen=True)
class SyntaxTree:
    """A parsed module plus what is needed to map ``ast`` offsets onto token columns."""
    module: ast.Module
    lines: Tuple[str, ...]

    def char_column(self, line, byte_column):
        # ast reports UTF-8 byte offsets, tokenize reports character offsets
        if line < 1 or line > len(self.lines):
            return byte_column
        text = self.lines[line - 1]
        if text.isascii():
            return byte_column
        return len(text.encode('utf-8')[:byte_column].decode('utf-8', 'ignore'))

    def start(self, node):
        return node.lineno, self.char_column(node.lineno, node.col_offset)

    def end(self, node):
        return node.end_lineno, self.char_column(node.end_lineno, node.end_col_offset)


def parse(source):
    try:
        with warnings.catch_warnings():
            # invalid escape sequences and the like are not our concern
            warnings.simplefilter('ignore')
            module = ast.parse(source)
    except SyntaxError as exc:
        raise ParseError(exc.lineno or 0, max((exc.offset or 1) - 1, 0), exc.msg) from exc
    except (ValueError, RecursionError, MemoryError) as exc:
        raise ParseError(0, 0, str(exc) or type(exc).__name__) from exc
    return SyntaxTree(module, tuple(source_lines(source)))
