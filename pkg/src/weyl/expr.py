"""Arithmetic expression parser for potential definitions.

Grammar (standard precedence, ^ right-associative and binding tighter than
unary minus):

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' unary)?
    atom   := NUMBER | 'x' | FUNC '(' expr ')' | '(' expr ')'
    FUNC   := exp | sin | cos | sqrt | abs

Evaluation is over the reals and deterministic.  Parse errors carry
line/column and the expected-token set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import EvalError, ParseError

FUNCTIONS = {
    "exp": math.exp,
    "sin": math.sin,
    "cos": math.cos,
    "sqrt": math.sqrt,
    "abs": abs,
}


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Unary:
    op: str
    arg: object


@dataclass(frozen=True)
class Bin:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class Call:
    func: str
    arg: object


@dataclass(frozen=True)
class Token:
    kind: str  # NUMBER IDENT OP LPAREN RPAREN EOF
    text: str
    column: int  # 1-based


def tokenize(src: str):
    tokens = []
    i, n = 0, len(src)
    while i < n:
        ch = src[i]
        if ch in " \t\r\n":
            i += 1
            continue
        col = i + 1
        if ch.isdigit() or (ch == "." and i + 1 < n and src[i + 1].isdigit()):
            j = i
            seen_dot = False
            while j < n and (src[j].isdigit() or (src[j] == "." and not seen_dot)):
                seen_dot = seen_dot or src[j] == "."
                j += 1
            if j < n and src[j] in "eE":
                k = j + 1
                if k < n and src[k] in "+-":
                    k += 1
                if k < n and src[k].isdigit():
                    j = k
                    while j < n and src[j].isdigit():
                        j += 1
            tokens.append(Token("NUMBER", src[i:j], col))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < n and (src[j].isalnum() or src[j] == "_"):
                j += 1
            tokens.append(Token("IDENT", src[i:j], col))
            i = j
        elif ch in "+-*/^":
            tokens.append(Token("OP", ch, col))
            i += 1
        elif ch == "(":
            tokens.append(Token("LPAREN", ch, col))
            i += 1
        elif ch == ")":
            tokens.append(Token("RPAREN", ch, col))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", column=col, expected={"number", "identifier", "operator"})
    # the end-of-input position is the last column, so "2*-" fails at column 3
    tokens.append(Token("EOF", "", max(1, n)))
    return tokens


class _Parser:
    def __init__(self, src: str):
        self.tokens = tokenize(src)
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, expected):
        tok = self.peek()
        what = tok.text or "end of input"
        raise ParseError(f"unexpected {what!r}", column=tok.column, expected=expected)

    def parse(self):
        node = self.expr()
        if self.peek().kind != "EOF":
            self.fail({"operator", "end of input"})
        return node

    def expr(self):
        node = self.term()
        while self.peek().kind == "OP" and self.peek().text in "+-":
            op = self.advance().text
            node = Bin(op, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek().kind == "OP" and self.peek().text in "*/":
            op = self.advance().text
            node = Bin(op, node, self.unary())
        return node

    def unary(self):
        if self.peek().kind == "OP" and self.peek().text == "-":
            self.advance()
            return Unary("-", self.unary())
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek().kind == "OP" and self.peek().text == "^":
            self.advance()
            return Bin("^", base, self.unary())  # right-assoc, allows 2^-3
        return base

    def atom(self):
        tok = self.peek()
        if tok.kind == "NUMBER":
            self.advance()
            return Num(float(tok.text))
        if tok.kind == "IDENT":
            self.advance()
            if tok.text == "x":
                return Var()
            if tok.text in FUNCTIONS:
                if self.peek().kind != "LPAREN":
                    self.fail({"("})
                self.advance()
                arg = self.expr()
                if self.peek().kind != "RPAREN":
                    self.fail({")"})
                self.advance()
                return Call(tok.text, arg)
            raise ParseError(
                f"unknown identifier {tok.text!r}",
                column=tok.column,
                expected={"x"} | set(FUNCTIONS),
            )
        if tok.kind == "LPAREN":
            self.advance()
            node = self.expr()
            if self.peek().kind != "RPAREN":
                self.fail({")"})
            self.advance()
            return node
        self.fail({"number", "x", "function", "("})


def parse_potential(src: str):
    """Parse an expression in the variable x; total on valid input."""
    return _Parser(src).parse()


def evaluate(node, x: float) -> float:
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Var):
        return x
    if isinstance(node, Unary):
        return -evaluate(node.arg, x)
    if isinstance(node, Bin):
        a = evaluate(node.left, x)
        b = evaluate(node.right, x)
        try:
            if node.op == "+":
                return a + b
            if node.op == "-":
                return a - b
            if node.op == "*":
                return a * b
            if node.op == "/":
                return a / b
            if node.op == "^":
                return a**b
        except (ZeroDivisionError, OverflowError, ValueError) as e:
            raise EvalError(f"evaluation failed at x={x}: {e}") from e
        raise EvalError(f"unknown operator {node.op!r}")
    if isinstance(node, Call):
        v = evaluate(node.arg, x)
        try:
            r = FUNCTIONS[node.func](v)
        except (ValueError, OverflowError) as e:
            raise EvalError(f"{node.func}({v}) failed at x={x}: {e}") from e
        if isinstance(r, complex):
            raise EvalError(f"{node.func}({v}) left the real line at x={x}")
        return float(r)
    raise EvalError(f"unknown node {node!r}")
