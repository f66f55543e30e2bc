"""Exact walks along x + n v: ratio sequences and their metric sequences.

A walk accumulates one matrix product M_{nv}(x) incrementally (one step
factor per n) and reads off the scalar ratio

    (p^t . M_{nv}(x) . p2) / (q^t . M_{nv}(x) . q2)

exactly at every step.  Heights, distances to a reference limit, and the
per-n irrationality/convergence/height measures are all computed from the
exact rationals through bit-length logarithms, so walks with thousands of
digits stay cheap and never touch floats until the very end.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cmf import CMF
from .matrix import RatMat
from .rational import Q, decimal_str_to_rat, height, int_log_abs, rat_log_abs
from .ratfunc import PoleError


class WalkPoleError(PoleError):
    """A step factor of the walk was undefined; `step` is the factor index."""

    def __init__(self, step, cause):
        super().__init__("walk step %d: %s" % (step, cause))
        self.step = step


def _vec(values, r, name):
    out = tuple(Q(c) for c in values)
    if len(out) != r:
        raise ValueError("%s must have length %d" % (name, r))
    return out


def _bilinear(left, m: RatMat, right):
    r = m.rank
    total = Q(0)
    for i in range(r):
        if left[i] == 0:
            continue
        row = m.rows[i]
        acc = Q(0)
        for j in range(r):
            if right[j] != 0:
                acc += row[j] * right[j]
        total += left[i] * acc
    return total


@dataclass
class RatioSeq:
    """Exact CMF-ratio values along one trajectory.

    values[n] is None exactly where the q-side bilinear form vanishes.
    """

    x: tuple
    v: tuple
    p: tuple
    p2: tuple
    q: tuple
    q2: tuple
    values: list
    last_product: RatMat
    products: list | None = None  # per-n M_{nv}(x), kept only on request

    def value(self, n):
        return self.values[n]

    def __len__(self):
        return len(self.values)


def unit_vector(r, index):
    return tuple(Q(1) if j == index else Q(0) for j in range(r))


def walk(cmf: CMF, x, v, p, q, p2=None, q2=None, steps=100, record_products=False) -> RatioSeq:
    """Walk `steps` steps from x along v, returning values[0..steps].

    p2/q2 default to the last basis vector e_r.  A vanishing denominator
    at some n yields an undefined marker, not an error; a pole in a step
    factor raises WalkPoleError naming the step.
    """
    cmf.ensure_verified()
    r = cmf.rank
    x = _vec(x, cmf.dim, "x")
    v = tuple(int(c) for c in v)
    p = _vec(p, r, "p")
    q = _vec(q, r, "q")
    p2 = unit_vector(r, r - 1) if p2 is None else _vec(p2, r, "p2")
    q2 = unit_vector(r, r - 1) if q2 is None else _vec(q2, r, "q2")

    product = RatMat.identity(r, Q(1), Q(0))
    values = []
    products = [product] if record_products else None

    def ratio(m):
        den = _bilinear(q, m, q2)
        if den == 0:
            return None
        return _bilinear(p, m, p2) / den

    values.append(ratio(product))
    point = list(x)
    for k in range(steps):
        try:
            step = cmf.eval(v, point)
        except PoleError as err:
            raise WalkPoleError(k, err) from None
        product = product * step.matrix
        if record_products:
            products.append(product)
        values.append(ratio(product))
        for i in range(cmf.dim):
            point[i] += v[i]
    return RatioSeq(x, v, p, p2, q, q2, values, product, products)


@dataclass
class MetricSeq:
    """Per-n irrationality measure, convergence rate and height rate.

    Entries are None where the defining expression is undefined (value
    missing, exact hit of the reference, height 1, or n = 0 for the
    rates).  `resolution_warning` is set when the reference decimal does
    not resolve the final distance: |s_N - l| < 10 ulp.
    """

    limit: object  # exact rational stand-in for the reference limit
    ulp: object
    delta: list = field(default_factory=list)
    rho: list = field(default_factory=list)
    eta: list = field(default_factory=list)
    resolution_warning: bool = False


def metrics(seq: RatioSeq, limit) -> MetricSeq:
    """delta_n, rho_n, eta_n against a decimal reference limit.

    `limit` is a decimal string (preferred; its digit count sets the
    resolution check) or an exact rational.
    """
    if isinstance(limit, str):
        lval, ulp = decimal_str_to_rat(limit)
    else:
        lval, ulp = Q(limit), Q(0)
    out = MetricSeq(limit=lval, ulp=ulp)
    last_defined_gap = None
    for n, s in enumerate(seq.values):
        if s is None:
            out.delta.append(None)
            out.rho.append(None)
            out.eta.append(None)
            continue
        h = height(s)
        log_h = int_log_abs(h)
        diff = s - lval
        log_diff = rat_log_abs(diff) if diff != 0 else None
        if diff != 0:
            last_defined_gap = abs(diff)
        out.delta.append(None if (log_diff is None or h == 1) else -1.0 - log_diff / log_h)
        out.rho.append(None if (log_diff is None or n == 0) else log_diff / n)
        out.eta.append(None if n == 0 else log_h / n)
    if last_defined_gap is not None and ulp and last_defined_gap < 10 * ulp:
        out.resolution_warning = True
    return out


def walk_csv_rows(seq: RatioSeq, metric_seq: MetricSeq | None = None, decimals: int = 30):
    """Stream walk output as CSV rows (header first)."""
    from .rational import rat_to_decimal_str

    yield "n,num_digits,den_digits,value,delta_n,rho_n,eta_n"

    def fmt(x):
        return "" if x is None else "%.12g" % x

    for n, s in enumerate(seq.values):
        if s is None:
            yield "%d,,,,,," % n
            continue
        nd = len(str(abs(int(s.numerator))))
        dd = len(str(int(s.denominator)))
        value = rat_to_decimal_str(s, decimals)
        if metric_seq is not None:
            d, r, e = metric_seq.delta[n], metric_seq.rho[n], metric_seq.eta[n]
        else:
            d = r = e = None
        yield "%d,%d,%d,%s,%s,%s,%s" % (n, nd, dd, value, fmt(d), fmt(r), fmt(e))
