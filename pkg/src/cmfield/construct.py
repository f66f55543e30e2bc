"""Closed-form constructions and the builtin field catalog.

The general hypergeometric family pFq(x_1..x_p; x_{p+1}..x_{p+q}; z) has
an explicit field: expand the operator

    theta . prod_j (theta + x_{p+j} - 1)  -  z . prod_i (theta + x_i)

as sum_k c_k theta^k, make it monic (t_k = c_k / c_r), put the t_k in a
companion matrix M_theta, and read the generators off the contiguous
relations: M_{e_i} = M_theta/x_i + I for upper indices, and
M_{-e_{p+j}} = M_theta/(x_{p+j}-1) + I for lower ones.

Everything else here is a transcription of known fields; each one is
re-checked by the pairwise generator test when loaded.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cmf import CMF
from .matrix import RatMat
from .parser import parse_expr
from .rational import Q
from .ratfunc import RatFunc


@dataclass
class PfqSpec:
    p: int
    q: int
    z: object | None = None  # None for symbolic z, else an exact rational not in {0, 1}

    @property
    def rank(self):
        return max(self.p, self.q + 1)

    def validate(self):
        if self.p < 0 or self.q < 0 or self.p + self.q < 1:
            raise ValueError("need at least one upper or lower parameter")
        if self.rank < 1:
            raise ValueError("rank must be at least 1")
        if self.z is not None and Q(self.z) in (Q(0), Q(1)):
            raise ValueError("z must avoid 0 and 1")


def _theta_poly_mul(a, b):
    """Multiply polynomials in theta with RatFunc coefficients (lists)."""
    out = [None] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        for j, cb in enumerate(b):
            prod = ca * cb
            out[i + j] = prod if out[i + j] is None else out[i + j] + prod
    return out


def pfq_cmf(p, q, z=None):
    """Field of the generalized hypergeometric function; returns (CMF, M_theta).

    `z` symbolic (None) yields a field over the parameter z; an exact
    rational z (not 0 or 1) is substituted before the generators are built.
    """
    spec = PfqSpec(p, q, z)
    spec.validate()
    d = p + q
    r = spec.rank
    params = ("z",) if z is None else ()
    variables = tuple("x%d" % (i + 1) for i in range(d)) + params

    def var(name):
        return RatFunc.var(variables, name)

    def const(c):
        return RatFunc.const(variables, c)

    zval = var("z") if z is None else const(Q(z))
    one = const(1)

    # theta * prod_j (theta + x_{p+j} - 1)  -  z * prod_i (theta + x_i)
    lower = [const(0), one]  # the leading factor theta
    for j in range(q):
        lower = _theta_poly_mul(lower, [var("x%d" % (p + j + 1)) - 1, one])
    upper = [one]
    for i in range(p):
        upper = _theta_poly_mul(upper, [var("x%d" % (i + 1)), one])
    coeffs = [const(0)] * (r + 1)
    for k, c in enumerate(lower):
        coeffs[k] = coeffs[k] + c
    for k, c in enumerate(upper):
        coeffs[k] = coeffs[k] - zval * c
    lead = coeffs[r]
    if lead.is_zero():
        raise ValueError("degenerate operator: leading theta coefficient vanished")
    t = [coeffs[k] / lead for k in range(r)]

    zero = RatFunc.zero(variables)
    m_theta = RatMat(
        [[one if i == j + 1 else zero for j in range(r - 1)] + [-t[i]] for i in range(r)]
    )

    identity = RatMat.identity(r, one, zero)
    gens = []
    for i in range(p):
        gens.append(m_theta.map(lambda e, v=var("x%d" % (i + 1)): e / v) + identity)
    for j in range(q):
        x = var("x%d" % (p + j + 1))
        down = m_theta.map(lambda e, v=x - 1: e / v) + identity
        # positive-direction generator via M_{e} = sigma_e(M_{-e})^{-1}
        axis = [0] * d
        axis[p + j] = 1
        gens.append(down.shift(tuple(axis)).inverse())
    field = CMF(gens, params=params)
    field.ensure_verified()
    return field, m_theta


def gauge_check(cmf: CMF, m_theta: RatMat, zvar: str = "z") -> bool:
    """Check M_v . sigma_v(M_theta) = theta_z.M_v + M_theta . M_v per axis."""
    variables = cmf.variables

    def euler(e):
        if zvar in variables:
            return e.euler(zvar)
        return RatFunc.zero(variables)

    for i in range(cmf.dim):
        m = cmf.generators[i]
        left = m * m_theta.shift(cmf._axis_shift(i))
        right = m.map(euler) + m_theta * m
        if not left.equals(right):
            return False
    return True


@dataclass
class BuiltinEntry:
    name: str
    description: str
    cmf: CMF | None = None
    matrix: RatMat | None = None  # coboundary matrices and the like
    m_theta: RatMat | None = None


def _mat(variables, rows):
    return RatMat([[parse_expr(text, variables) for text in row] for row in rows])


def _zeta3():
    v = ("x1", "x2")
    m1 = _mat(
        v,
        [
            ["0", "-1"],
            ["(x1+1)^3/x1^3", "(x1^3 + 2*x2*(2*x1+1)*(x2-1) + (x1+1)^3)/x1^3"],
        ],
    )
    m2 = _mat(
        v,
        [
            ["(-x1^3 + 2*x1^2*x2 - 2*x1*x2^2 + x2^3)/x2^3", "-x1^3/x2^3"],
            ["x1^3/x2^3", "(x1^3 + 2*x1^2*x2 + 2*x1*x2^2 + x2^3)/x2^3"],
        ],
    )
    return BuiltinEntry("zeta3", "rank-2 field behind the classical zeta(3) recurrence", cmf=CMF([m1, m2]))


def _const3x3():
    v = ("x1", "x2")
    m1 = _mat(v, [["-9", "2", "2"], ["-38", "11", "4"], ["-24", "4", "7"]])
    m2 = _mat(
        v,
        [
            ["119/6", "-7/6", "-37/6"],
            ["343/6", "-11/6", "-119/6"],
            ["39", "-7/3", "-12"],
        ],
    )
    return BuiltinEntry("const3x3", "commuting constant 3x3 generators", cmf=CMF([m1, m2]))


def _tricomi():
    v = ("x1", "x2", "z")
    m1 = _mat(
        v,
        [
            ["(x1+z)/(x1^2 - x2*x1 + x1)", "-1/x1"],
            ["-z/(x1^2 - x2*x1 + x1)", "1/x1"],
        ],
    )
    m2 = _mat(v, [["0", "(x1-x2)/z"], ["1", "(x2+z)/z"]])
    m_theta = _mat(v, [["z", "x2-x1"], ["-z", "-x2"]])
    return BuiltinEntry(
        "tricomi",
        "confluent hypergeometric (second kind) field over Q(z)",
        cmf=CMF([m1, m2], params=("z",)),
        m_theta=m_theta,
    )


def _binomial():
    v = ("x1", "x2")
    m1 = _mat(v, [["(1+x1)/(1+x1-x2)"]])
    m2 = _mat(v, [["(x1-x2)/(1+x2)"]])
    return BuiltinEntry("binomial", "rank-1 field of the binomial coefficient", cmf=CMF([m1, m2]))


def _pfq21_zm1():
    field, m_theta = pfq_cmf(2, 1, z=Q(-1))
    return BuiltinEntry("pfq21_zm1", "2F1 field at z=-1", cmf=field, m_theta=m_theta)


def _appendix_b():
    v = ("x1", "x2")
    m1 = _mat(
        v,
        [
            [
                "(x1 + 2*x2)*(3*x1 - 3*x2 + 2) / ((2*x1 + x2 + 1)*(8*x1 - 8*x2 + 4))",
                "-(x1 + 2*x2)*(7*x1^2 + x1*(11 - 8*x2) + x2^2 - 5*x2 + 4) / ((2*x1 + x2 + 1)*(16*x1 - 16*x2 + 8))",
            ],
            [
                "(x1 + 2*x2)*(7*x1^2 - 8*x1*x2 + 5*x1 + x2^2 + x2) / ((x1 - x2)*(2*x1 + x2)*(2*x1 + x2 + 1)*(16*x1 - 16*x2 + 8))",
                "-(x1 + 2*x2)*(11*x1^3 + x1^2*(3*x2 + 14) + x1*(-3*x2^2 + 20*x2 + 1) - 11*x2^3 + 2*x2^2 + 11*x2 - 2) / ((x1 - x2)*(2*x1 + x2)*(2*x1 + x2 + 1)*(32*x1 - 32*x2 + 16))",
            ],
        ],
    )
    m2 = _mat(
        v,
        [
            [
                "(x1 + 2*x2)*(x1 + 2*x2 + 1)*(7*x1^2 - x1*(50*x2 + 19) + 79*x2^2 + 67*x2 + 10) / ((x1 - 4*x2)*(x1 - 4*x2 - 1)*(x1^2 - x1*(8*x2 + 5) + 16*x2^2 + 20*x2 + 6))",
                "-(2*x1 + 4*x2)*(x1 + 2*x2 + 1)*(6*x1^3 - 3*x1^2*(15*x2 + 7) + x1*(90*x2^2 + 96*x2 + 22) - 51*x2^3 - 93*x2^2 - 49*x2 - 7) / ((x1 - 4*x2)*(x1 - 4*x2 - 1)*(x1^2 - x1*(8*x2 + 5) + 16*x2^2 + 20*x2 + 6))",
            ],
            [
                "(6*x1 + 12*x2)*(x1 + 2*x2 + 1)*(2*x1^3 - 3*x1^2*(5*x2 + 2) + x1*(30*x2^2 + 27*x2 + 4) - x2*(17*x2^2 + 21*x2 + 6)) / ((x1 - 4*x2)*(x1 - x2)*(2*x1 + x2)*(x1 - 4*x2 - 1)*(x1^2 - x1*(8*x2 + 5) + 16*x2^2 + 20*x2 + 6))",
                "-4*(x1 + 2*x2)*(-x1 + x2 + 1)^2*(x1 + 2*x2 + 1)*(4*x1^2 - 2*x1*(10*x2 + 3) + x2*(7*x2 + 3)) / ((x1 - 4*x2)*(x1 - x2)*(2*x1 + x2)*(x1 - 4*x2 - 1)*(x1^2 - x1*(8*x2 + 5) + 16*x2^2 + 20*x2 + 6))",
            ],
        ],
    )
    return BuiltinEntry(
        "appendixB",
        "reparameterized 2F1(z=-1) field on the sublattice (2,2,1),(-2,1,2)",
        cmf=CMF([m1, m2]),
    )


def _apery_coboundary():
    v = ("x1", "x2")
    a = _mat(
        v,
        [
            ["1/x1^3", "-1/x2^3"],
            ["0", "(x1^3 + 2*x1^2*x2 + 2*x1*x2^2 + x2^3)/(x1^3*x2^3)"],
        ],
    )
    return BuiltinEntry("apery_coboundary_A", "coboundary matrix putting zeta3 trajectories in companion form", matrix=a)


def _ex312_coboundary():
    v = ("x1", "x2")
    a = _mat(v, [["1", "-x2"], ["1", "x2"]])
    return BuiltinEntry("ex312_coboundary", "simple coboundary matrix for the zeta3 field", matrix=a)


_BUILDERS = {
    "zeta3": _zeta3,
    "const3x3": _const3x3,
    "tricomi": _tricomi,
    "binomial": _binomial,
    "pfq21_zm1": _pfq21_zm1,
    "appendixB": _appendix_b,
    "apery_coboundary_A": _apery_coboundary,
    "ex312_coboundary": _ex312_coboundary,
}

_CACHE = {}


def builtin_names():
    return sorted(_BUILDERS)


def builtin(name: str) -> BuiltinEntry:
    """Fetch a builtin by name; field builtins are verified at load time."""
    if name not in _BUILDERS:
        raise KeyError("unknown builtin %r (have: %s)" % (name, ", ".join(builtin_names())))
    if name not in _CACHE:
        entry = _BUILDERS[name]()
        if entry.cmf is not None:
            entry.cmf.ensure_verified()
        _CACHE[name] = entry
    return _CACHE[name]


def builtin_cmf(name: str) -> CMF:
    entry = builtin(name)
    if entry.cmf is None:
        raise KeyError("builtin %r is not a field" % name)
    return entry.cmf
