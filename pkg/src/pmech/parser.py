"""Expression grammar shared by the CLI and the canonical renderers.

    expr   := '-'? term (('+'|'-') term)*
    term   := factor (('*'|'/')? factor)*      (adjacency multiplies)
    factor := '-' factor | base ('^' uint)?
    base   := uint | 'i' | hbar | var | '(' expr ')'
    var    := ('q'|'p') ('1'|'2') ('_' uint)?
    hbar   := 'h1' | 'h2' | 'h'

Division is permitted only with variable-free divisors (rational-function
coefficients); 'h' is the quantum-classical spelling of the first Planck
constant. Unary minus binds looser than '^'.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import DivisionByZero, IndexOutOfRange, ParseError
from .exactnum import GR_I, RF_H1, RF_H2
from .symbols import KIND_P, KIND_Q, Symbol, var_id


# -- tokens ------------------------------------------------------------------

_SIMPLE_TOKENS = {
    "+": "PLUS",
    "-": "MINUS",
    "*": "STAR",
    "/": "SLASH",
    "^": "CARET",
    "(": "LPAREN",
    ")": "RPAREN",
}


@dataclass(frozen=True)
class Token:
    kind: str
    value: object
    line: int
    column: int


def _tokenize(text: str):
    tokens = []
    line, col = 1, 1
    pos = 0
    size = len(text)
    while pos < size:
        ch = text[pos]
        if ch == "\n":
            line += 1
            col = 1
            pos += 1
            continue
        if ch.isspace():
            col += 1
            pos += 1
            continue
        start_col = col
        if ch in _SIMPLE_TOKENS:
            tokens.append(Token(_SIMPLE_TOKENS[ch], ch, line, start_col))
            pos += 1
            col += 1
            continue
        if ch.isdigit():
            end = pos
            while end < size and text[end].isdigit():
                end += 1
            tokens.append(Token("INT", int(text[pos:end]), line, start_col))
            col += end - pos
            pos = end
            continue
        if ch == "i":
            tokens.append(Token("IMAG", "i", line, start_col))
            pos += 1
            col += 1
            continue
        if ch == "h":
            if pos + 1 < size and text[pos + 1] in "12":
                tokens.append(Token("HBAR", "h" + text[pos + 1], line, start_col))
                pos += 2
                col += 2
            else:
                tokens.append(Token("HBAR", "h", line, start_col))
                pos += 1
                col += 1
            continue
        if ch in "qp":
            if pos + 1 >= size or text[pos + 1] not in "12":
                raise ParseError(
                    f"variable {ch!r} needs a sector digit 1 or 2",
                    line,
                    start_col,
                    expected=("sector digit",),
                )
            sector = int(text[pos + 1])
            pos += 2
            col += 2
            index = 1
            if pos < size and text[pos] == "_":
                end = pos + 1
                while end < size and text[end].isdigit():
                    end += 1
                if end == pos + 1:
                    raise ParseError(
                        "expected an index after '_'",
                        line,
                        col,
                        expected=("index digits",),
                    )
                index = int(text[pos + 1 : end])
                col += end - pos
                pos = end
            kind = KIND_Q if ch == "q" else KIND_P
            tokens.append(Token("VAR", (kind, sector, index), line, start_col))
            continue
        raise ParseError(
            f"unexpected character {ch!r}",
            line,
            start_col,
            expected=("number", "variable", "operator", "parenthesis"),
        )
    tokens.append(Token("EOF", None, line, col))
    return tokens


# -- AST ---------------------------------------------------------------------


@dataclass(frozen=True)
class Node:
    line: int
    column: int


@dataclass(frozen=True)
class Rational(Node):
    value: Fraction


@dataclass(frozen=True)
class Imag(Node):
    pass


@dataclass(frozen=True)
class Hbar(Node):
    name: str


@dataclass(frozen=True)
class Var(Node):
    kind: int
    sector: int
    index: int


@dataclass(frozen=True)
class Add(Node):
    left: Node
    right: Node


@dataclass(frozen=True)
class Sub(Node):
    left: Node
    right: Node


@dataclass(frozen=True)
class Mul(Node):
    left: Node
    right: Node


@dataclass(frozen=True)
class Div(Node):
    left: Node
    right: Node


@dataclass(frozen=True)
class Pow(Node):
    base: Node
    exponent: int


@dataclass(frozen=True)
class Neg(Node):
    operand: Node


@dataclass(frozen=True)
class Paren(Node):
    inner: Node


_FACTOR_START = ("INT", "IMAG", "HBAR", "VAR", "LPAREN")


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        token = self.current
        self.pos += 1
        return token

    @staticmethod
    def _describe(token: Token) -> str:
        return "end of input" if token.kind == "EOF" else repr(token.value)

    def expect(self, kind: str, expected) -> Token:
        if self.current.kind != kind:
            raise ParseError(
                f"unexpected {self._describe(self.current)}",
                self.current.line,
                self.current.column,
                expected=expected,
            )
        return self.advance()

    def parse_expr(self) -> Node:
        token = self.current
        negate = False
        if token.kind == "MINUS":
            self.advance()
            negate = True
        node = self.parse_term()
        if negate:
            node = Neg(token.line, token.column, node)
        while self.current.kind in ("PLUS", "MINUS"):
            op = self.advance()
            rhs = self.parse_term()
            cls = Add if op.kind == "PLUS" else Sub
            node = cls(op.line, op.column, node, rhs)
        return node

    def parse_term(self) -> Node:
        node = self.parse_factor()
        while True:
            kind = self.current.kind
            if kind in ("STAR", "SLASH"):
                op = self.advance()
                rhs = self.parse_factor()
                cls = Mul if op.kind == "STAR" else Div
                node = cls(op.line, op.column, node, rhs)
            elif kind in _FACTOR_START:
                token = self.current
                rhs = self.parse_factor()
                node = Mul(token.line, token.column, node, rhs)
            else:
                return node

    def parse_factor(self) -> Node:
        token = self.current
        if token.kind == "MINUS":
            self.advance()
            return Neg(token.line, token.column, self.parse_factor())
        node = self.parse_base()
        if self.current.kind == "CARET":
            caret = self.advance()
            exp_token = self.expect("INT", expected=("non-negative integer power",))
            node = Pow(caret.line, caret.column, node, exp_token.value)
        return node

    def parse_base(self) -> Node:
        token = self.current
        if token.kind == "INT":
            self.advance()
            return Rational(token.line, token.column, Fraction(token.value))
        if token.kind == "IMAG":
            self.advance()
            return Imag(token.line, token.column)
        if token.kind == "HBAR":
            self.advance()
            return Hbar(token.line, token.column, token.value)
        if token.kind == "VAR":
            self.advance()
            kind, sector, index = token.value
            return Var(token.line, token.column, kind, sector, index)
        if token.kind == "LPAREN":
            self.advance()
            inner = self.parse_expr()
            self.expect("RPAREN", expected=("')'",))
            return Paren(token.line, token.column, inner)
        raise ParseError(
            f"unexpected {self._describe(token)}",
            token.line,
            token.column,
            expected=("number", "'i'", "'h1'/'h2'/'h'", "variable", "'('"),
        )


def parse(text: str) -> Node:
    """Parse an expression into an AST with source positions."""
    parser = _Parser(_tokenize(text))
    node = parser.parse_expr()
    if parser.current.kind != "EOF":
        token = parser.current
        raise ParseError(
            f"unexpected trailing {_Parser._describe(token)}",
            token.line,
            token.column,
            expected=("end of input", "operator"),
        )
    return node


def lower(ast: Node, n: int = 1) -> Symbol:
    """Evaluate an AST in the commutative symbol ring."""
    if isinstance(ast, Rational):
        return Symbol.constant(ast.value, n)
    if isinstance(ast, Imag):
        return Symbol.constant(GR_I, n)
    if isinstance(ast, Hbar):
        return Symbol.constant(RF_H2 if ast.name == "h2" else RF_H1, n)
    if isinstance(ast, Var):
        if ast.index > n:
            raise IndexOutOfRange(
                f"index {ast.index} exceeds n={n} at line {ast.line}, column {ast.column}"
            )
        return Symbol.variable(var_id(ast.sector, ast.kind, ast.index), n)
    if isinstance(ast, Add):
        return lower(ast.left, n) + lower(ast.right, n)
    if isinstance(ast, Sub):
        return lower(ast.left, n) - lower(ast.right, n)
    if isinstance(ast, Mul):
        return lower(ast.left, n) * lower(ast.right, n)
    if isinstance(ast, Div):
        divisor = lower(ast.right, n)
        coeff = divisor.as_coefficient()
        if coeff is None:
            raise ParseError(
                "division by a phase-variable expression is not allowed",
                ast.line,
                ast.column,
                expected=("variable-free divisor",),
            )
        if coeff.is_zero():
            raise DivisionByZero(
                f"division by zero at line {ast.line}, column {ast.column}"
            )
        return lower(ast.left, n).scale(coeff.inverse())
    if isinstance(ast, Pow):
        return lower(ast.base, n) ** ast.exponent
    if isinstance(ast, Neg):
        return -lower(ast.operand, n)
    if isinstance(ast, Paren):
        return lower(ast.inner, n)
    raise TypeError(f"unknown AST node {type(ast).__name__}")


def parse_symbol(text: str, n: int = 1) -> Symbol:
    """Parse and lower in one step."""
    return lower(parse(text), n)
