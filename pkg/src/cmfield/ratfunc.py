"""Exact multivariate rational functions and the shift/Euler actions.

A RatFunc is a pair of MultiPolys over one shared variable tuple,
normalized so that the pair is jointly integer-primitive and the
denominator's graded-lex leading coefficient is positive.  Equality is
semantic (cross multiplication); no multivariate gcd is ever computed.
A best-effort simplification (common monomial factors, plus a univariate
gcd when the function only uses one variable) keeps expression swell in
check and is a semantic no-op.
"""

from __future__ import annotations

import math

from .poly import MultiPoly
from .rational import Q


class PoleError(ArithmeticError):
    """Evaluation hit a vanishing denominator: the value is not defined."""

    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point


class Infinite:
    """Marker value for a limit that diverges."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Infinite"


INFINITE = Infinite()


def _uni_divexact(a, b):
    """Exact univariate division a / b over Q (remainder must vanish)."""
    a = list(a)
    out = [Q(0)] * (len(a) - len(b) + 1)
    lead = b[-1]
    for k in range(len(a) - len(b), -1, -1):
        c = a[k + len(b) - 1] / lead
        out[k] = c
        if c != 0:
            for j, bj in enumerate(b):
                a[k + j] -= c * bj
    if any(c != 0 for c in a):
        raise ArithmeticError("inexact polynomial division")
    return out


def _uni_rem(a, b):
    a = list(a)
    lead = b[-1]
    for k in range(len(a) - len(b), -1, -1):
        c = a[k + len(b) - 1] / lead
        if c != 0:
            for j, bj in enumerate(b):
                a[k + j] -= c * bj
    while a and a[-1] == 0:
        a.pop()
    return a


def _uni_gcd(a, b):
    """Monic gcd of dense univariate coefficient lists over Q."""
    a = [Q(c) for c in a]
    b = [Q(c) for c in b]
    while a and a[-1] == 0:
        a.pop()
    while b and b[-1] == 0:
        b.pop()
    while b:
        a, b = b, _uni_rem(a, b)
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


class RatFunc:
    """Quotient of two MultiPolys over a fixed variable tuple."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, simplify=True):
        if den is None:
            den = MultiPoly.const(num.vars, 1)
        if num.vars != den.vars:
            raise ValueError("numerator and denominator variable mismatch")
        if den.is_zero():
            raise ZeroDivisionError("zero denominator polynomial")
        self.num = num
        self.den = den
        self._normalize(simplify)

    # -- construction helpers -------------------------------------------

    @classmethod
    def const(cls, variables, value):
        return cls(MultiPoly.const(variables, value))

    @classmethod
    def zero(cls, variables):
        return cls(MultiPoly.zero(variables))

    @classmethod
    def one(cls, variables):
        return cls(MultiPoly.const(variables, 1))

    @classmethod
    def var(cls, variables, name):
        return cls(MultiPoly.var(variables, name))

    @property
    def vars(self):
        return self.num.vars

    # -- normalization ---------------------------------------------------

    def _normalize(self, simplify=True):
        num, den = self.num, self.den
        if num.is_zero():
            self.num = MultiPoly.zero(num.vars)
            self.den = MultiPoly.const(num.vars, 1)
            return
        if simplify:
            num, den = self._strip_monomial(num, den)
            num, den = self._univariate_reduce(num, den)
        # clear coefficient denominators jointly, then remove integer content
        gn, ln = num.content_parts()
        gd, ld = den.content_parts()
        lcm = ln // math.gcd(ln, ld) * ld
        scale = Q(lcm, math.gcd(gn * (lcm // ln), gd * (lcm // ld)))
        num = num * scale
        den = den * scale
        if den.leading()[1] < 0:
            num, den = -num, -den
        self.num, self.den = num, den

    @staticmethod
    def _strip_monomial(num, den):
        mins = None
        for poly in (num, den):
            for expo in poly.terms:
                if mins is None:
                    mins = list(expo)
                else:
                    mins = [min(m, e) for m, e in zip(mins, expo)]
        if mins is None or not any(mins):
            return num, den
        shift = tuple(mins)

        def strip(p):
            out = MultiPoly(p.vars)
            out.terms = {tuple(e - m for e, m in zip(expo, shift)): c for expo, c in p.terms.items()}
            return out

        return strip(num), strip(den)

    @staticmethod
    def _univariate_reduce(num, den):
        used = num.used_vars() | den.used_vars()
        if len(used) != 1:
            return num, den
        (name,) = used
        a = num.univariate_coeffs(name)
        b = den.univariate_coeffs(name)
        g = _uni_gcd(a, b)
        if len(g) > 1:
            num = MultiPoly.from_univariate(num.vars, name, _uni_divexact(a, g))
            den = MultiPoly.from_univariate(den.vars, name, _uni_divexact(b, g))
        return num, den

    # -- predicates --------------------------------------------------------

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_const(self):
        return self.num.is_const() and self.den.is_const()

    def const_value(self):
        return self.num.const_value() / self.den.const_value()

    # -- field operations ----------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            if other.vars != self.vars:
                raise ValueError("variable mismatch: %r vs %r" % (self.vars, other.vars))
            return other
        return RatFunc.const(self.vars, other)

    def __add__(self, other):
        other = self._coerce(other)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        out = RatFunc.__new__(RatFunc)
        out.num = -self.num
        out.den = self.den
        return out

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, n):
        n = int(n)
        if n < 0:
            return RatFunc.one(self.vars) / self ** (-n)
        out = RatFunc.one(self.vars)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        """Semantic equality by cross multiplication."""
        if isinstance(other, (int, type(Q(0)))):
            other = RatFunc.const(self.vars, other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        if other.vars != self.vars:
            return False
        return self.num * other.den == other.num * self.den

    __hash__ = None

    def __repr__(self):
        return "RatFunc(%s)" % self.to_text()

    # -- the Ore-algebra actions and evaluation ---------------------------

    def shift(self, v):
        """sigma_v: substitute x_i -> x_i + v_i for the first len(v) variables."""
        if len(v) > len(self.vars):
            raise ValueError("shift vector longer than variable list")
        if not any(v):
            return self
        images = []
        for i, name in enumerate(self.vars):
            img = MultiPoly.var(self.vars, name)
            if i < len(v) and v[i]:
                img = img + MultiPoly.const(self.vars, v[i])
            images.append(img)
        return RatFunc(self.num.compose(images), self.den.compose(images))

    def euler(self, zvar):
        """theta_z . f = z * df/dz, by the exact quotient rule."""
        if zvar not in self.vars:
            raise ValueError("unknown variable %r" % zvar)
        z = MultiPoly.var(self.vars, zvar)
        dn = self.num.derivative(zvar)
        dd = self.den.derivative(zvar)
        return RatFunc(z * (dn * self.den - self.num * dd), self.den * self.den)

    def eval_at(self, point):
        """Exact value at a rational point; PoleError when the den vanishes."""
        point = [Q(p) for p in point]
        d = self.den.eval_at(point)
        if d == 0:
            raise PoleError("pole at %s" % (tuple(point),), point=tuple(point))
        return self.num.eval_at(point) / d

    def substitute(self, images, simplify=True):
        """Compose with one MultiPoly image per variable (shared new vars)."""
        return RatFunc(self.num.compose(images), self.den.compose(images), simplify=simplify)

    def affine_sub(self, lin, offset, new_vars):
        """Substitute x = offset + lin . y over new variables y.

        `lin` is a d x s integer matrix (d = len(self.vars)); `offset` a
        length-d rational vector; columns of `lin` must be independent for
        the result to define a sub-lattice, but that is the caller's duty.
        """
        new_vars = tuple(new_vars)
        images = []
        for i in range(len(self.vars)):
            img = MultiPoly.const(new_vars, offset[i])
            for j, name in enumerate(new_vars):
                if lin[i][j]:
                    img = img + MultiPoly.var(new_vars, name) * lin[i][j]
            images.append(img)
        return self.substitute(images)

    def rename(self, new_vars):
        out = RatFunc.__new__(RatFunc)
        out.num = self.num.rename(new_vars)
        out.den = self.den.rename(new_vars)
        return out

    def limit_inf(self, name=None):
        """Limit as the single used variable goes to +infinity.

        Returns a rational, or INFINITE when deg num > deg den.
        """
        used = self.num.used_vars() | self.den.used_vars()
        if not used:
            return self.const_value()
        if name is None:
            if len(used) != 1:
                raise ValueError("rational function is not univariate: uses %r" % sorted(used))
            (name,) = used
        elif used - {name}:
            raise ValueError("rational function is not univariate in %s" % name)
        dn = self.num.degree_in(name)
        dd = self.den.degree_in(name)
        if dn < dd:
            return Q(0)
        i = self.vars.index(name)
        ln = next(c for e, c in self.num.terms.items() if e[i] == dn)
        ld = next(c for e, c in self.den.terms.items() if e[i] == dd)
        if dn > dd:
            return INFINITE
        return ln / ld

    # -- printing -----------------------------------------------------------

    def to_text(self):
        if self.den.is_const() and self.den.const_value() == 1:
            return self.num.to_text()
        num = self.num.to_text()
        if len(self.num.terms) > 1 or self.num.leading()[1] < 0:
            num = "(%s)" % num
        return "%s/(%s)" % (num, self.den.to_text())
