"""
Parser for Laurent polynomials in the indexed variables ``x1, ..., xn``.

Grammar (whitespace is insignificant)::

    poly   := ['-'] term (('+' | '-') term)*
    term   := coeff ('*' factor)* | factor ('*' factor)*
    factor := 'x' INDEX ('^' SIGNED_INT)?
    coeff  := SIGNED_RATIONAL            # "p/q" or an integer

Parsing only collects raw ``(coefficient, {index: exponent})`` terms; like
terms are combined by :class:`mixvol.newton.LaurentPolynomial`.
"""

import re
from fractions import Fraction
from typing import (
    Dict,
    Iterator,
    List,
    NamedTuple,
    Optional,
    Tuple,
)

from mixvol import ParseError

RawTerm = Tuple[Fraction, Dict[int, int]]

_TOKEN = re.compile(
    r"""
    (?P<space>\s+)
  | (?P<number>\d+(?:\s*/\s*\d+)?)
  | (?P<var>x\d+)
  | (?P<op>[-+*^])
    """,
    re.VERBOSE,
)


class Token(NamedTuple):
    kind: str
    text: str
    column: int


def tokenize(text: str, line: int = 1) -> List[Token]:
    """
    Split ``text`` into number, variable and operator tokens, with their
    1-based columns. An ``end`` token closes the list.
    """
    tokens = []
    position = 0
    while position < len(text):
        match = _TOKEN.match(text, position)
        if match is None:
            raise ParseError(f"Unexpected character {text[position]!r}", line, position + 1)
        kind = match.lastgroup or "space"
        if kind != "space":
            tokens.append(Token(kind, match.group(kind), position + 1))
        position = match.end()
    tokens.append(Token("end", "", len(text) + 1))
    return tokens


class _Parser:
    def __init__(self, text: str, line: int, num_vars: Optional[int]) -> None:
        self.tokens = tokenize(text, line)
        self.position = 0
        self.line = line
        self.num_vars = num_vars
        self.max_index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.position]

    def advance(self) -> Token:
        token = self.current
        self.position += 1
        return token

    def error(self, message: str, token: Optional[Token] = None) -> ParseError:
        token = token or self.current
        return ParseError(message, self.line, token.column)

    def accept(self, kind: str, text: Optional[str] = None) -> Optional[Token]:
        token = self.current
        if token.kind == kind and (text is None or token.text == text):
            return self.advance()
        return None

    def polynomial(self) -> List[RawTerm]:
        if self.current.kind == "end":
            raise self.error("Empty polynomial")
        sign = -1 if self.accept("op", "-") else 1
        terms = [self.term(sign)]
        while self.current.kind == "op" and self.current.text in "+-":
            sign = -1 if self.advance().text == "-" else 1
            terms.append(self.term(sign))
        if self.current.kind != "end":
            raise self.error(f"Unexpected {self.current.text!r}")
        return terms

    def term(self, sign: int) -> RawTerm:
        exponents: Dict[int, int] = {}
        coefficient = Fraction(sign)
        if self.current.kind == "var":
            self.factor(exponents)
        else:
            coefficient *= self.coefficient()
        while self.accept("op", "*"):
            self.factor(exponents)
        return coefficient, exponents

    def coefficient(self) -> Fraction:
        sign = 1
        if self.current.kind == "op" and self.current.text in "+-":
            sign = -1 if self.advance().text == "-" else 1
        token = self.accept("number")
        if token is None:
            raise self.error("Expected a coefficient or a variable")
        numerator, _, denominator = token.text.replace(" ", "").partition("/")
        if denominator and int(denominator) == 0:
            raise self.error("Zero denominator", token)
        return Fraction(sign * int(numerator), int(denominator or 1))

    def factor(self, exponents: Dict[int, int]) -> None:
        token = self.accept("var")
        if token is None:
            raise self.error("Expected a variable x1, x2, ...")
        index = int(token.text[1:])
        if index < 1 or (self.num_vars is not None and index > self.num_vars):
            upper = self.num_vars if self.num_vars is not None else "n"
            raise self.error(f"Variable {token.text} out of range x1..x{upper}", token)
        self.max_index = max(self.max_index, index)
        power = 1
        if self.accept("op", "^"):
            sign = 1
            if self.current.kind == "op" and self.current.text in "+-":
                sign = -1 if self.advance().text == "-" else 1
            number = self.accept("number")
            if number is None or "/" in number.text:
                raise self.error("Expected an integer exponent", number)
            power = sign * int(number.text)
        exponents[index] = exponents.get(index, 0) + power


def parse_terms(text: str, num_vars: Optional[int] = None, line: int = 1) -> Tuple[List[RawTerm], int]:
    """
    Parse one polynomial into raw terms.

    :rtype: tuple
    :return: the raw terms and the largest variable index used

    :raises ParseError: on a syntax error or a variable index outside
      ``1..num_vars``
    """
    parser = _Parser(text, line, num_vars)
    return parser.polynomial(), parser.max_index


def numbered_lines(text: str) -> Iterator[Tuple[int, str]]:
    """
    ``(line number, content)`` of the non-blank, non-comment lines.
    """
    for number, line in enumerate(text.splitlines(), start=1):
        content = line.split("#", 1)[0]
        if content.strip():
            yield number, content
