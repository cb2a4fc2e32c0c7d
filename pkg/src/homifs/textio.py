"""Reading and writing IFS descriptions.

Grammar (whitespace-insensitive, ``#`` starts a comment)::

    r = <rat> ; digits = <rat> (, <rat>)* [;]
    <rat> := [-]int[/int]
"""

from __future__ import annotations

import re
from fractions import Fraction

from .ifs import HomogeneousIFS
from .multiset import DigitMultiset

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r\n]+|\#[^\n]*)"
    r"|(?P<rat>-?\d+(?:/\d+)?)"
    r"|(?P<name>[A-Za-z_]+)"
    r"|(?P<punct>[=;,])"
)


class IfsParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class IfsDomainError(ValueError):
    pass


def _tokens(text: str):
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        col = pos - line_start + 1
        if not m:
            raise IfsParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        if kind != "ws":
            yield kind, m.group(), line, col
        newlines = m.group().count("\n")
        if newlines:
            line += newlines
            line_start = m.start() + m.group().rindex("\n") + 1
        pos = m.end()
    yield "eof", "", line, pos - line_start + 1


def parse_ifs(text: str) -> HomogeneousIFS:
    toks = list(_tokens(text))
    i = 0

    def expect(kind: str, value: str | None = None, what: str | None = None):
        nonlocal i
        k, v, line, col = toks[i]
        if k != kind or (value is not None and v != value):
            shown = "end of input" if k == "eof" else repr(v)
            raise IfsParseError(f"expected {what or value or kind}, found {shown}", line, col)
        i += 1
        return v, line, col

    expect("name", "r", "'r'")
    expect("punct", "=", "'='")
    ratio_text, rline, rcol = expect("rat", what="a rational ratio")
    expect("punct", ";", "';'")
    expect("name", "digits", "'digits'")
    expect("punct", "=", "'='")
    digits = []
    while True:
        v, line, col = expect("rat", what="a rational digit")
        digits.append((_rational(v, line, col), line, col))
        if toks[i][0] == "punct" and toks[i][1] == ",":
            i += 1
            continue
        break
    if toks[i][0] == "punct" and toks[i][1] == ";":
        i += 1
    expect("eof", what="end of input")

    r = _rational(ratio_text, rline, rcol)
    if not (0 < abs(r) < 1):
        raise IfsDomainError(f"ratio out of range: |{r}| must lie strictly between 0 and 1")
    seen: dict[Fraction, tuple[int, int]] = {}
    for d, line, col in digits:
        if d in seen:
            raise IfsDomainError(f"duplicate digit {d} at line {line}, column {col}")
        seen[d] = (line, col)
    if len(seen) < 2:
        raise IfsDomainError("need at least two digits")
    return HomogeneousIFS(r, DigitMultiset.of(seen))


def _rational(text: str, line: int, col: int) -> Fraction:
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise IfsParseError("zero denominator", line, col)
    return Fraction(int(num), int(den) if den else 1)


def format_ifs(phi: HomogeneousIFS) -> str:
    return f"r = {phi.ratio}; digits = " + ", ".join(str(d) for d in phi.digits)


def read_ifs(path: str) -> HomogeneousIFS:
    with open(path, encoding="utf-8") as fh:
        return parse_ifs(fh.read())
