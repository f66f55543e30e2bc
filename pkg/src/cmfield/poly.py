"""Sparse multivariate polynomials with exact rational coefficients.

Terms are stored as a dict mapping exponent tuples to nonzero rational
coefficients.  The monomial order used everywhere (leading terms, printing,
sign normalization) is graded lexicographic over the declared variable list.
"""

from __future__ import annotations

import math

from .rational import Q, rat_to_str


def _gl_key(expo):
    # graded lex: total degree first, then lex on the exponent vector
    return (sum(expo), expo)


class MultiPoly:
    """Polynomial in an ordered tuple of named variables."""

    __slots__ = ("vars", "terms")

    def __init__(self, variables, terms=None):
        self.vars = tuple(variables)
        self.terms = {}
        if terms:
            nv = len(self.vars)
            for expo, coeff in terms.items():
                if len(expo) != nv:
                    raise ValueError("exponent %r does not match variables %r" % (expo, self.vars))
                c = Q(coeff)
                if c != 0:
                    self.terms[tuple(int(e) for e in expo)] = c

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, variables):
        return cls(variables)

    @classmethod
    def const(cls, variables, value):
        value = Q(value)
        if value == 0:
            return cls(variables)
        return cls(variables, {(0,) * len(tuple(variables)): value})

    @classmethod
    def var(cls, variables, name):
        variables = tuple(variables)
        i = variables.index(name)
        expo = tuple(1 if j == i else 0 for j in range(len(variables)))
        return cls(variables, {expo: Q(1)})

    # -- predicates ---------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_const(self):
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def const_value(self):
        if not self.terms:
            return Q(0)
        ((expo, coeff),) = self.terms.items()
        if any(expo):
            raise ValueError("not a constant polynomial")
        return coeff

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, name):
        if not self.terms:
            return -1
        i = self.vars.index(name)
        return max(e[i] for e in self.terms)

    def used_vars(self):
        """Names of variables that actually occur."""
        used = set()
        for expo in self.terms:
            for i, e in enumerate(expo):
                if e:
                    used.add(self.vars[i])
        return used

    def leading(self):
        """(exponent, coefficient) of the graded-lex leading term."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        expo = max(self.terms, key=_gl_key)
        return expo, self.terms[expo]

    # -- ring operations ----------------------------------------------

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            if other.vars != self.vars:
                raise ValueError("variable mismatch: %r vs %r" % (self.vars, other.vars))
            return other
        return MultiPoly.const(self.vars, other)

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.vars == other.vars and self.terms == other.terms
        if isinstance(other, (int, Q, type(Q(0)))):
            return self == MultiPoly.const(self.vars, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def __neg__(self):
        return MultiPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s == 0:
                out.pop(e, None)
            else:
                out[e] = s
        res = MultiPoly(self.vars)
        res.terms = out
        return res

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            c = Q(other)
            if c == 0:
                return MultiPoly(self.vars)
            return MultiPoly(self.vars, {e: k * c for e, k in self.terms.items()})
        other = self._coerce(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s == 0:
                    out.pop(e, None)
                else:
                    out[e] = s
        res = MultiPoly(self.vars)
        res.terms = out
        return res

    __rmul__ = __mul__

    def __pow__(self, n):
        n = int(n)
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.const(self.vars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- calculus and substitution -------------------------------------

    def derivative(self, name):
        i = self.vars.index(name)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                e2 = e[:i] + (e[i] - 1,) + e[i + 1 :]
                s = out.get(e2, 0) + c * e[i]
                if s == 0:
                    out.pop(e2, None)
                else:
                    out[e2] = s
        res = MultiPoly(self.vars)
        res.terms = out
        return res

    def eval_at(self, point):
        """Exact value at a full point (one rational per variable)."""
        if len(point) != len(self.vars):
            raise ValueError("point length %d != %d variables" % (len(point), len(self.vars)))
        point = [Q(p) for p in point]
        powers = [{} for _ in point]
        total = Q(0)
        for expo, coeff in self.terms.items():
            term = coeff
            for i, e in enumerate(expo):
                if e:
                    cache = powers[i]
                    if e not in cache:
                        cache[e] = point[i] ** e
                    term = term * cache[e]
            total += term
        return total

    def compose(self, images):
        """Substitute each variable by a polynomial over a new variable set.

        `images` is one MultiPoly per variable of self, all sharing the same
        target variable tuple.
        """
        if len(images) != len(self.vars):
            raise ValueError("need one image per variable")
        new_vars = images[0].vars if images else self.vars
        for img in images:
            if img.vars != new_vars:
                raise ValueError("images must share one variable tuple")
        pow_cache = [{0: MultiPoly.const(new_vars, 1)} for _ in images]

        def power(i, e):
            cache = pow_cache[i]
            if e not in cache:
                cache[e] = cache[e - 1] * images[i] if e - 1 in cache else images[i] ** e
            return cache[e]

        total = MultiPoly(new_vars)
        for expo, coeff in self.terms.items():
            term = MultiPoly.const(new_vars, coeff)
            for i, e in enumerate(expo):
                if e:
                    term = term * power(i, e)
            total = total + term
        return total

    def rename(self, new_vars):
        """Same terms over a renamed variable tuple of equal length."""
        new_vars = tuple(new_vars)
        if len(new_vars) != len(self.vars):
            raise ValueError("variable count mismatch")
        res = MultiPoly(new_vars)
        res.terms = dict(self.terms)
        return res

    # -- integer content ------------------------------------------------

    def content_parts(self):
        """(gcd of numerators, lcm of denominators) over all coefficients."""
        g, l = 0, 1
        for c in self.terms.values():
            g = math.gcd(g, abs(int(c.numerator)))
            d = int(c.denominator)
            l = l // math.gcd(l, d) * d
        return g, l

    def scaled(self, factor):
        return self * factor

    # -- univariate views -----------------------------------------------

    def univariate_coeffs(self, name):
        """Dense coefficient list [c0, c1, ...] in the single used variable."""
        used = self.used_vars()
        if used - {name}:
            raise ValueError("polynomial is not univariate in %s" % name)
        i = self.vars.index(name)
        deg = self.degree_in(name)
        coeffs = [Q(0)] * (max(deg, 0) + 1)
        for e, c in self.terms.items():
            coeffs[e[i]] = c
        return coeffs

    @classmethod
    def from_univariate(cls, variables, name, coeffs):
        variables = tuple(variables)
        i = variables.index(name)
        nv = len(variables)
        terms = {}
        for k, c in enumerate(coeffs):
            if c != 0:
                expo = tuple(k if j == i else 0 for j in range(nv))
                terms[expo] = Q(c)
        return cls(variables, terms)

    # -- printing --------------------------------------------------------

    def __repr__(self):
        return "MultiPoly(%r, %s)" % (self.vars, self.to_text())

    def _monomial_text(self, expo):
        parts = []
        for name, e in zip(self.vars, expo):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append("%s^%d" % (name, e))
        return "*".join(parts)

    def to_text(self):
        """Deterministic expression text, graded-lex descending terms."""
        if not self.terms:
            return "0"
        pieces = []
        for expo in sorted(self.terms, key=_gl_key, reverse=True):
            coeff = self.terms[expo]
            mono = self._monomial_text(expo)
            mag = abs(coeff)
            if not mono:
                body = rat_to_str(mag)
            elif mag == 1:
                body = mono
            else:
                body = "%s*%s" % (rat_to_str(mag), mono)
            pieces.append(("-" if coeff < 0 else "+", body))
        sign, body = pieces[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in pieces[1:]:
            text += " %s %s" % (sign, body)
        return text
