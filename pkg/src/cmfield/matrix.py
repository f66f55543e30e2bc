"""Square matrices over exact entries (rational functions or rationals).

One class serves both the symbolic layer (RatFunc entries) and the numeric
layer (rational entries): both support +, -, *, / and truthiness, which is
all the algorithms here use.  Inverses are exact: adjugate/determinant at
rank <= 4, fraction-free (Bareiss) elimination above.
"""

from __future__ import annotations

from .ratfunc import RatFunc
from .rational import Q


def _zero_like(entry):
    return RatFunc.zero(entry.vars) if isinstance(entry, RatFunc) else Q(0)


def _one_like(entry):
    return RatFunc.one(entry.vars) if isinstance(entry, RatFunc) else Q(1)


class RatMat:
    """r x r matrix; entries share one scalar domain."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        rows = [list(r) for r in rows]
        r = len(rows)
        if any(len(row) != r for row in rows):
            raise ValueError("matrix must be square")
        self.rows = rows

    @property
    def rank(self):
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __iter__(self):
        return iter(self.rows)

    @classmethod
    def identity(cls, r, one, zero):
        return cls([[one if i == j else zero for j in range(r)] for i in range(r)])

    @classmethod
    def identity_like(cls, m):
        e = m.rows[0][0]
        return cls.identity(m.rank, _one_like(e), _zero_like(e))

    # -- arithmetic ------------------------------------------------------

    def __mul__(self, other):
        if isinstance(other, RatMat):
            r = self.rank
            if other.rank != r:
                raise ValueError("rank mismatch")
            a, b = self.rows, other.rows
            return RatMat(
                [[sum((a[i][k] * b[k][j] for k in range(1, r)), a[i][0] * b[0][j]) for j in range(r)] for i in range(r)]
            )
        return RatMat([[e * other for e in row] for row in self.rows])

    def __rmul__(self, other):
        return RatMat([[other * e for e in row] for row in self.rows])

    def __add__(self, other):
        if not isinstance(other, RatMat) or other.rank != self.rank:
            raise ValueError("can only add matrices of equal rank")
        return RatMat([[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)])

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return RatMat([[-e for e in row] for row in self.rows])

    def transpose(self):
        r = self.rank
        return RatMat([[self.rows[j][i] for j in range(r)] for i in range(r)])

    def map(self, fn):
        return RatMat([[fn(e) for e in row] for row in self.rows])

    def equals(self, other):
        """Entrywise semantic equality."""
        if self.rank != other.rank:
            return False
        return all(a == b for ra, rb in zip(self.rows, other.rows) for a, b in zip(ra, rb))

    def trace(self):
        t = self.rows[0][0]
        for i in range(1, self.rank):
            t = t + self.rows[i][i]
        return t

    # -- determinant and inverse -------------------------------------------

    def det(self):
        r = self.rank
        if r == 1:
            return self.rows[0][0]
        if r == 2:
            a = self.rows
            return a[0][0] * a[1][1] - a[0][1] * a[1][0]
        if r == 3:
            a = self.rows
            return (
                a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
                - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
                + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
            )
        if r == 4:
            return self._det_cofactor()
        return self._det_bareiss()

    def _det_cofactor(self):
        r = self.rank
        if r == 1:
            return self.rows[0][0]
        total = None
        for j in range(r):
            e = self.rows[0][j]
            if not e:
                continue
            minor = RatMat([row[:j] + row[j + 1 :] for row in self.rows[1:]])
            term = e * minor._det_cofactor()
            if j % 2:
                term = -term
            total = term if total is None else total + term
        return total if total is not None else _zero_like(self.rows[0][0])

    def _det_bareiss(self):
        a = [list(row) for row in self.rows]
        r = self.rank
        one = _one_like(a[0][0])
        sign = 1
        prev = one
        for k in range(r - 1):
            if not a[k][k]:
                for i in range(k + 1, r):
                    if a[i][k]:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return _zero_like(a[0][0])
            for i in range(k + 1, r):
                for j in range(k + 1, r):
                    a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev
            prev = a[k][k]
        d = a[r - 1][r - 1]
        return d if sign > 0 else -d

    def minor(self, i, j):
        rows = [row[:j] + row[j + 1 :] for k, row in enumerate(self.rows) if k != i]
        return RatMat(rows)

    def adjugate(self):
        r = self.rank
        if r == 1:
            return RatMat([[_one_like(self.rows[0][0])]])
        cof = [
            [self.minor(i, j).det() if (i + j) % 2 == 0 else -self.minor(i, j).det() for j in range(r)]
            for i in range(r)
        ]
        return RatMat(cof).transpose()

    def inverse(self):
        """Exact inverse; raises ZeroDivisionError on a singular matrix."""
        r = self.rank
        if r <= 4:
            d = self.det()
            if not d:
                raise ZeroDivisionError("singular matrix")
            return self.adjugate().map(lambda e: e / d)
        return self._inverse_gauss()

    def _inverse_gauss(self):
        r = self.rank
        a = [list(row) for row in self.rows]
        one = _one_like(a[0][0])
        zero = _zero_like(a[0][0])
        inv = [[one if i == j else zero for j in range(r)] for i in range(r)]
        for k in range(r):
            if not a[k][k]:
                for i in range(k + 1, r):
                    if a[i][k]:
                        a[k], a[i] = a[i], a[k]
                        inv[k], inv[i] = inv[i], inv[k]
                        break
                else:
                    raise ZeroDivisionError("singular matrix")
            piv = a[k][k]
            a[k] = [e / piv for e in a[k]]
            inv[k] = [e / piv for e in inv[k]]
            for i in range(r):
                if i != k and a[i][k]:
                    f = a[i][k]
                    a[i] = [e - f * g for e, g in zip(a[i], a[k])]
                    inv[i] = [e - f * g for e, g in zip(inv[i], inv[k])]
        return RatMat(inv)

    # -- symbolic helpers ---------------------------------------------------

    def shift(self, v):
        return self.map(lambda e: e.shift(v))

    def eval_at(self, point):
        return self.map(lambda e: e.eval_at(point))

    def __repr__(self):
        body = "; ".join(
            ", ".join(e.to_text() if isinstance(e, RatFunc) else str(e) for e in row) for row in self.rows
        )
        return "RatMat[%s]" % body
