"""Recursive-descent parser for exact rational-function expressions.

Grammar: integer literals, variable names, unary minus, binary + - * /,
and ^ with an integer exponent.  Precedence ^ > unary minus > * / > + -,
all binary operators left-associative.  Rationals like 3/4 come out of
the division operator; no floats exist anywhere.
"""

from __future__ import annotations

from .ratfunc import RatFunc


class ExprError(ValueError):
    """Parse failure; `pos` is the 0-based offset into the source text."""

    def __init__(self, message, pos):
        super().__init__("%s (at position %d)" % (message, pos))
        self.pos = pos


class UnknownVariableError(ExprError):
    def __init__(self, name, pos):
        super().__init__("unknown variable %r" % name, pos)
        self.name = name


_OPS = set("+-*/^()")


def _tokenize(text):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("int", int(text[i:j]), i))
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j], i))
            i = j
            continue
        if c in _OPS:
            tokens.append(("op", c, i))
            i += 1
            continue
        raise ExprError("unexpected character %r" % c, i)
    tokens.append(("end", None, n))
    return tokens


class _Parser:
    def __init__(self, text, variables):
        self.text = text
        self.vars = tuple(variables)
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op):
        kind, val, pos = self.next()
        if kind != "op" or val != op:
            raise ExprError("expected %r" % op, pos)

    def parse(self):
        value = self.expr()
        kind, _, pos = self.peek()
        if kind != "end":
            raise ExprError("unexpected trailing input", pos)
        return value

    def expr(self):
        value = self.term()
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val in "+-":
                self.next()
                rhs = self.term()
                value = value + rhs if val == "+" else value - rhs
            else:
                return value

    def term(self):
        value = self.unary()
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val in "*/":
                self.next()
                rhs = self.unary()
                if val == "*":
                    value = value * rhs
                else:
                    if rhs.is_zero():
                        raise ExprError("division by zero", pos)
                    value = value / rhs
            else:
                return value

    def unary(self):
        kind, val, pos = self.peek()
        if kind == "op" and val == "-":
            self.next()
            return -self.unary()
        return self.power()

    def power(self):
        value = self.atom()
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val == "^":
                self.next()
                exponent = self.exponent()
                if exponent < 0 and value.is_zero():
                    raise ExprError("zero raised to a negative power", pos)
                value = value**exponent
            else:
                return value

    def exponent(self):
        kind, val, pos = self.next()
        sign = 1
        if kind == "op" and val == "-":
            sign = -1
            kind, val, pos = self.next()
        if kind != "int":
            raise ExprError("exponent must be an integer literal", pos)
        return sign * val

    def atom(self):
        kind, val, pos = self.next()
        if kind == "int":
            return RatFunc.const(self.vars, val)
        if kind == "name":
            if val not in self.vars:
                raise UnknownVariableError(val, pos)
            return RatFunc.var(self.vars, val)
        if kind == "op" and val == "(":
            value = self.expr()
            self.expect_op(")")
            return value
        raise ExprError("expected a value", pos)


def parse_expr(text: str, variables) -> RatFunc:
    """Parse `text` into an exact RatFunc over the given variable tuple."""
    return _Parser(text, variables).parse()
