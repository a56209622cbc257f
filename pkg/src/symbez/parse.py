"""Text expressions for polynomials.

Grammar (recursive descent, whitespace ignored):

    expr   := [sign] term { ("+" | "-") term }
    term   := factor { "*" factor }
    factor := base [ "^" nonneg-int ]
    base   := variable | constant | rational | "(" expr ")"

Variables are X, Y, Z, W or x0..x3; e1..e4 are accepted in elementary
basis mode and expand to the elementary symmetric polynomials.  The
constants omega and I denote the primitive cube root of unity and the
imaginary unit.  Rationals are written p or p/q.
"""

from __future__ import annotations

from fractions import Fraction

from .exactnum import Cyclo12, I, OMEGA
from .poly import MultiPoly, elementary_symmetric


class PolyParseError(ValueError):
    """Syntax or vocabulary error, with the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


_VAR_INDEX = {"X": 0, "Y": 1, "Z": 2, "W": 3, "x0": 0, "x1": 1, "x2": 2, "x3": 3}


class _Parser:
    def __init__(self, text: str, num_vars: int, basis: str):
        if basis not in ("monomial", "elementary"):
            raise ValueError(f"unknown basis {basis!r}")
        self.text = text
        self.pos = 0
        self.num_vars = num_vars
        self.basis = basis

    def error(self, message: str):
        raise PolyParseError(message, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch: str) -> bool:
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def read_int(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            self.error("expected an integer")
        return int(self.text[start:self.pos])

    def read_ident(self) -> str:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and (
            self.text[self.pos].isalnum() or self.text[self.pos] == "_"
        ):
            self.pos += 1
        return self.text[start:self.pos]

    def parse(self) -> MultiPoly:
        result = self.expr()
        self.skip_ws()
        if self.pos != len(self.text):
            self.error(f"unexpected {self.text[self.pos]!r}")
        return result

    def expr(self) -> MultiPoly:
        negate = False
        if self.take("-"):
            negate = True
        elif self.take("+"):
            pass
        acc = self.term()
        if negate:
            acc = -acc
        while True:
            if self.take("+"):
                acc = acc + self.term()
            elif self.take("-"):
                acc = acc - self.term()
            else:
                return acc

    def term(self) -> MultiPoly:
        acc = self.factor()
        while self.take("*"):
            acc = acc * self.factor()
        return acc

    def factor(self) -> MultiPoly:
        base = self.base()
        if self.take("^"):
            if self.peek() == "-":
                self.error("exponents must be nonnegative")
            return base ** self.read_int()
        return base

    def base(self) -> MultiPoly:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            inner = self.expr()
            if not self.take(")"):
                self.error("expected ')'")
            return inner
        if ch.isdigit():
            num = self.read_int()
            if self.take("/"):
                den = self.read_int()
                if den == 0:
                    self.error("zero denominator")
                return MultiPoly.constant(self.num_vars, Fraction(num, den))
            return MultiPoly.constant(self.num_vars, num)
        if ch.isalpha():
            name = self.read_ident()
            return self.named(name)
        self.error("expected a variable, constant, number, or '('")

    def named(self, name: str) -> MultiPoly:
        if name == "omega":
            return MultiPoly.constant(self.num_vars, OMEGA)
        if name == "I":
            return MultiPoly.constant(self.num_vars, I)
        if name in _VAR_INDEX:
            idx = _VAR_INDEX[name]
            if idx >= self.num_vars:
                self.error(
                    f"variable {name} is not available in {self.num_vars} variables"
                )
            return MultiPoly.variable(self.num_vars, idx)
        if len(name) == 2 and name[0] == "e" and name[1].isdigit():
            if self.basis != "elementary":
                self.error(f"{name} is only available in elementary basis mode")
            k = int(name[1])
            if not 1 <= k <= self.num_vars:
                self.error(
                    f"{name} is not available in {self.num_vars} variables"
                )
            return elementary_symmetric(self.num_vars, k)
        self.error(f"unknown identifier {name!r}")


def parse_poly(text: str, num_vars: int = 3, basis: str = "monomial") -> MultiPoly:
    """Parse a polynomial expression.

    In elementary basis mode the e-variables expand immediately, so the
    result is always an ordinary polynomial in X, Y, Z (and W).
    """
    if not 1 <= num_vars <= 4:
        raise ValueError("num_vars must be between 1 and 4")
    return _Parser(text, num_vars, basis).parse()


def parse_scalar(text: str) -> Cyclo12:
    """Parse a constant expression into a field element."""
    f = parse_poly(text, num_vars=1, basis="monomial")
    if f.is_zero():
        return Cyclo12.of(0)
    if f.degree() != 0:
        raise PolyParseError("expected a constant expression", 0)
    return f.terms[(0,)]
