"""The conservative-matrix-field algebra.

A CMF of dimension d and rank r is stored through its generator matrices
M_1..M_d (one per lattice axis), entries in the rational functions over
shift variables x1..xd plus optional symbolic parameters.  Everything else
-- products M_v, numeric evaluation, trajectory matrices, coboundary
transforms, duals, sub-fields -- is derived from the generators through
the multiplication law M_{v+w} = M_v . sigma_v(M_w).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .matrix import RatMat
from .poly import MultiPoly
from .rational import Q
from .ratfunc import PoleError, RatFunc


class VerificationError(ValueError):
    """A CMF failed its generator compatibility check."""


@dataclass
class VerifyResult:
    ok: bool
    pair: tuple | None = None  # 1-based axis pair (i, j) of the first failure
    entry: tuple | None = None  # (row, col) of the first failing entry

    def __bool__(self):
        return self.ok


@dataclass
class EvalResult:
    matrix: RatMat  # numeric, rational entries
    singular: bool  # det == 0 (a value, not an error; poles raise instead)


@dataclass
class TrajectoryMatrix:
    """M_v(x + n v) as a symbolic matrix, univariate in the step index n."""

    x: tuple
    v: tuple
    matrix: RatMat  # entries over ('n',) + params


class CMF:
    """Conservative matrix field given by its d generator matrices."""

    def __init__(self, generators, params=(), check_invertible=False):
        generators = list(generators)
        if not generators:
            raise ValueError("need at least one generator")
        self.dim = len(generators)
        self.rank = generators[0].rank
        self.params = tuple(params)
        self.shift_vars = tuple("x%d" % (i + 1) for i in range(self.dim))
        expected = self.shift_vars + self.params
        for m in generators:
            if m.rank != self.rank:
                raise ValueError("generators must share one rank")
            for row in m:
                for e in row:
                    if not isinstance(e, RatFunc) or e.vars != expected:
                        raise ValueError("generator entries must be RatFunc over %r" % (expected,))
        self.generators = generators
        self.verified = False
        self._neg = {}
        if check_invertible:
            for i, m in enumerate(generators):
                if not m.det():
                    raise VerificationError("generator %d is not symbolically invertible" % (i + 1))

    @property
    def variables(self):
        return self.shift_vars + self.params

    def _axis_shift(self, i, step=1):
        v = [0] * self.dim
        v[i] = step
        return tuple(v)

    # -- verification ---------------------------------------------------

    def verify(self) -> VerifyResult:
        """Check M_i . sigma_i(M_j) = M_j . sigma_j(M_i) for all pairs."""
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                left = self.generators[i] * self.generators[j].shift(self._axis_shift(i))
                right = self.generators[j] * self.generators[i].shift(self._axis_shift(j))
                for a in range(self.rank):
                    for b in range(self.rank):
                        if not left[a, b] == right[a, b]:
                            return VerifyResult(False, pair=(i + 1, j + 1), entry=(a, b))
        self.verified = True
        return VerifyResult(True)

    def ensure_verified(self):
        if not self.verified:
            result = self.verify()
            if not result:
                raise VerificationError(
                    "generator pair %s disagrees at entry %s" % (result.pair, result.entry)
                )

    # -- generator access --------------------------------------------------

    def generator(self, axis, sign=1):
        """M_{e_i} or M_{-e_i} (the latter built and cached on demand)."""
        if sign > 0:
            return self.generators[axis]
        if axis not in self._neg:
            down = self.generators[axis].shift(self._axis_shift(axis, -1))
            self._neg[axis] = down.inverse()
        return self._neg[axis]

    def _axis_orders(self, v):
        """Axis evaluation orders: canonical first, then all permutations.

        Canonical order walks axes with positive steps first, then negative,
        each group in index order.  For a verified field every order yields
        the same product, so alternates only matter for dodging poles.
        """
        axes = [i for i in range(self.dim) if v[i]]
        canonical = [i for i in axes if v[i] > 0] + [i for i in axes if v[i] < 0]
        yield canonical
        for perm in itertools.permutations(axes):
            order = list(perm)
            if order != canonical:
                yield order

    def _steps(self, v, axis_order):
        for i in axis_order:
            sign = 1 if v[i] > 0 else -1
            for _ in range(abs(v[i])):
                yield i, sign

    # -- symbolic product ----------------------------------------------------

    def matrix(self, v) -> RatMat:
        """Symbolic M_v as the ordered product of shifted generator factors.

        Follows M_{w + e} = M_w . sigma_w(M_e) one unit step at a time.
        """
        self.ensure_verified()
        v = tuple(int(c) for c in v)
        if len(v) != self.dim:
            raise ValueError("direction has wrong dimension")
        if not any(v):
            one = RatFunc.one(self.variables)
            return RatMat.identity(self.rank, one, RatFunc.zero(self.variables))
        result = None
        shift = [0] * self.dim
        for axis, sign in self._steps(v, next(self._axis_orders(v))):
            factor = self.generator(axis, sign)
            if any(shift):
                factor = factor.shift(tuple(shift))
            result = factor if result is None else result * factor
            shift[axis] += sign
        return result

    # -- numeric evaluation -----------------------------------------------

    def eval(self, v, x) -> EvalResult:
        """Numeric M_v(x), multiplying evaluated factors step by step.

        The canonical factor order can run through a pole that other orders
        avoid (the symbolic M_v being perfectly defined at x), so on a pole
        every axis ordering is tried before giving up.
        """
        self.ensure_verified()
        if self.params:
            raise PoleError("cannot evaluate a field with symbolic parameters %r" % (self.params,))
        v = tuple(int(c) for c in v)
        x = tuple(Q(c) for c in x)
        if len(v) != self.dim or len(x) != self.dim:
            raise ValueError("direction/point must have dimension %d" % self.dim)
        first_error = None
        for order in self._axis_orders(v):
            try:
                m = self._eval_along(v, x, order)
                return EvalResult(m, singular=not m.det())
            except PoleError as err:
                if first_error is None:
                    first_error = err
        raise first_error if first_error is not None else PoleError("empty direction")

    def _eval_along(self, v, x, axis_order):
        point = list(x)
        result = RatMat.identity(self.rank, Q(1), Q(0))
        for axis, sign in self._steps(v, axis_order):
            if sign > 0:
                factor = self._eval_generator(axis, point)
                point[axis] += 1
            else:
                point[axis] -= 1
                base = self._eval_generator(axis, point)
                try:
                    factor = base.inverse()
                except ZeroDivisionError:
                    raise PoleError(
                        "inverse step along axis %d at %s is not defined" % (axis + 1, tuple(point))
                    ) from None
            result = result * factor
        return result

    def _eval_generator(self, axis, point):
        try:
            return self.generators[axis].eval_at(point)
        except PoleError:
            raise PoleError(
                "generator %d has a pole at %s" % (axis + 1, tuple(point)), point=tuple(point)
            ) from None

    # -- trajectories --------------------------------------------------------

    def trajectory(self, x, v) -> TrajectoryMatrix:
        """T_{x,v}(n) = M_v(x + n v), univariate in n.

        Built by substituting x -> x + n v into each product factor before
        multiplying, which keeps every intermediate univariate.
        """
        self.ensure_verified()
        v = tuple(int(c) for c in v)
        x = tuple(Q(c) for c in x)
        new_vars = ("n",) + self.params
        one = RatFunc.one(new_vars)
        if not any(v):
            return TrajectoryMatrix(x, v, RatMat.identity(self.rank, one, RatFunc.zero(new_vars)))
        first_error = None
        for order in self._axis_orders(v):
            try:
                return TrajectoryMatrix(x, v, self._trajectory_along(x, v, order, new_vars))
            except ZeroDivisionError as err:
                if first_error is None:
                    first_error = err
        raise PoleError("trajectory from %s along %s is undefined: %s" % (x, v, first_error))

    def _trajectory_along(self, x, v, axis_order, new_vars):
        n = MultiPoly.var(new_vars, "n")
        base_images = [n * v[i] for i in range(self.dim)]
        return self._substituted_product(v, axis_order, new_vars, base_images, x)

    def _substituted_product(self, v, axis_order, new_vars, base_images, offset):
        """Product of per-step generator factors with shift variables replaced.

        Substituting into each small factor before multiplying keeps the
        intermediates over the target variables; by the multiplication law
        the result equals the substituted symbolic M_v.
        """
        result = None
        shift = [0] * self.dim
        param_images = [MultiPoly.var(new_vars, p) for p in self.params]
        for axis, sign in self._steps(v, axis_order):
            base = self.generator(axis, sign)
            images = [
                base_images[i] + MultiPoly.const(new_vars, offset[i] + shift[i])
                for i in range(self.dim)
            ] + param_images
            factor = base.map(lambda e: e.substitute(images))
            result = factor if result is None else result * factor
            shift[axis] += sign
        if result is None:
            one = RatFunc.one(new_vars)
            result = RatMat.identity(self.rank, one, RatFunc.zero(new_vars))
        return result

    # -- derived fields ------------------------------------------------------

    def dual(self) -> "CMF":
        """The field with matrices (M_v^{-1})^t."""
        self.ensure_verified()
        gens = [m.inverse().transpose() for m in self.generators]
        out = CMF(gens, params=self.params)
        out.ensure_verified()
        return out

    def det_field(self) -> "CMF":
        """Rank-1 field of generator determinants."""
        self.ensure_verified()
        gens = [RatMat([[m.det()]]) for m in self.generators]
        out = CMF(gens, params=self.params)
        out.ensure_verified()
        return out


def coboundary_check(cmf1: CMF, cmf2: CMF, a: RatMat) -> bool:
    """True iff A . M1_{e_i} = M2_{e_i} . sigma_i(A) for every axis."""
    if cmf1.dim != cmf2.dim or cmf1.rank != cmf2.rank:
        raise ValueError("fields must share dimension and rank")
    if not a.det():
        raise ZeroDivisionError("coboundary matrix is singular")
    for i in range(cmf1.dim):
        left = a * cmf1.generators[i]
        right = cmf2.generators[i] * a.shift(cmf1._axis_shift(i))
        if not left.equals(right):
            return False
    return True


def coboundary_apply(cmf: CMF, a: RatMat) -> CMF:
    """Transform generators by M_i -> A^{-1} . M_i . sigma_i(A)."""
    cmf.ensure_verified()
    inv = a.inverse()
    gens = [inv * cmf.generators[i] * a.shift(cmf._axis_shift(i)) for i in range(cmf.dim)]
    out = CMF(gens, params=cmf.params)
    out.ensure_verified()
    return out


def _column_rank(cols):
    """Rank of a list of integer columns, by exact elimination."""
    rows = [[Q(cols[j][i]) for j in range(len(cols))] for i in range(len(cols[0]))]
    rank = 0
    for col in range(len(cols)):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        lead = rows[rank][col]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                f = rows[r][col] / lead
                rows[r] = [e - f * g for e, g in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def sub_cmf(cmf: CMF, basis, offset=None) -> CMF:
    """Restrict to the sublattice spanned by the basis columns.

    `basis` is a list of s integer columns (each of length dim); the new
    field has dimension s, with x = offset + sum_j y_j * basis[j].  A unit
    shift of the new variable y_j is a shift of x by basis[j], so the new
    generators are the substituted M_{basis[j]}.
    """
    cmf.ensure_verified()
    basis = [tuple(int(c) for c in col) for col in basis]
    s = len(basis)
    if any(len(col) != cmf.dim for col in basis):
        raise ValueError("basis columns must have length %d" % cmf.dim)
    if _column_rank(basis) != s:
        raise ValueError("basis columns are linearly dependent")
    if offset is None:
        offset = (0,) * cmf.dim
    offset = tuple(Q(c) for c in offset)
    new_shift = tuple("x%d" % (j + 1) for j in range(s))
    new_vars = new_shift + cmf.params
    base_images = []
    for i in range(cmf.dim):
        img = MultiPoly.zero(new_vars)
        for j in range(s):
            if basis[j][i]:
                img = img + MultiPoly.var(new_vars, new_shift[j]) * basis[j][i]
        base_images.append(img)
    gens = []
    for col in basis:
        first_error = None
        for order in cmf._axis_orders(col):
            try:
                gens.append(cmf._substituted_product(col, order, new_vars, base_images, offset))
                break
            except ZeroDivisionError as err:
                if first_error is None:
                    first_error = err
        else:
            raise PoleError("sublattice generator %s is undefined: %s" % (col, first_error))
    out = CMF(gens, params=cmf.params)
    # A unit shift of y_j is the x-shift by basis[j], so each pairwise
    # compatibility identity is the substituted parent identity and holds
    # by inheritance; no need to re-run the (possibly huge) symbolic check.
    out.verified = True
    return out
