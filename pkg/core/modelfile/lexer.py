"""
Tokenizer for model files.  One logical statement per line; ``#`` starts a
comment.  Every token remembers its 1-based line and column.
"""
import re
from dataclasses import dataclass

from core.exceptions import ParseError

NUMBER = 'NUMBER'
NAME = 'NAME'
OP = 'OP'
END = 'END'

_TOKEN = re.compile(r"""
    (?P<space>[ \t\r]+)
  | (?P<comment>\#.*)
  | (?P<number>\d+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>\*\*|[-+*/^()=,\[\]])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int

    def __str__(self):
        return self.text if self.kind != END else 'end of line'


def tokenize_line(text, line):
    tokens = []
    position = 0
    while position < len(text):
        match = _TOKEN.match(text, position)
        if match is None:
            raise ParseError(f'unexpected character {text[position]!r}', line, position + 1)
        group = match.lastgroup
        if group == 'number':
            tokens.append(Token(NUMBER, match.group(), line, position + 1))
        elif group == 'name':
            tokens.append(Token(NAME, match.group(), line, position + 1))
        elif group == 'op':
            tokens.append(Token(OP, match.group(), line, position + 1))
        position = match.end()
    tokens.append(Token(END, '', line, len(text) + 1))
    return tokens


def logical_lines(text):
    """(line number, tokens) for every line that holds a statement."""
    for number, raw in enumerate(text.splitlines(), start=1):
        tokens = tokenize_line(raw, number)
        if len(tokens) > 1:
            yield number, tokens
