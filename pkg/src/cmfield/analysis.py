"""Asymptotics of trajectories: limit matrices, exact characteristic
polynomials, numeric eigenvalues, distinct-modulus checks, closed-form
convergence-rate predictions, and the late-index estimators.

The estimators work on exact walk values L(N/2), L(N), L(2N):

    l_hat     = L(N)
    rho_hat   = log|L(N) - L(2N)| / N
    delta_hat = -1 - log|L(N) - L(2N)| / log H(L(N))
    eta_hat   = log H(L(N)) / N
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

from .cmf import CMF, TrajectoryMatrix
from .matrix import RatMat
from .rational import Q, height, int_log_abs, rat_log_abs, rat_to_float
from .ratfunc import INFINITE, RatFunc, _uni_divexact, _uni_gcd

#: Eigenvalue moduli closer (relatively) than this are treated as ties.
MODULUS_GAP_TOL = 1e-9

#: Classification thresholds on rho_hat.
RHO_NONCONVERGING = -1e-3
RHO_CONVERGING = -1e-2


class DivergentEntryError(ArithmeticError):
    """A limit-matrix entry grows without bound; `entry` names it."""

    def __init__(self, entry):
        super().__init__("entry %s diverges as n -> infinity" % (entry,))
        self.entry = entry


class RootFindingError(ArithmeticError):
    def __init__(self, message, best):
        super().__init__(message)
        self.best = best


class UndefinedRatioError(ValueError):
    """The walk value needed by an estimator probe is undefined."""

    def __init__(self, index):
        super().__init__("ratio undefined at probe index %d" % index)
        self.index = index


def limit_matrix(t) -> RatMat:
    """Entrywise n -> infinity limit of a trajectory matrix."""
    m = t.matrix if isinstance(t, TrajectoryMatrix) else t
    out = []
    for i, row in enumerate(m.rows):
        new_row = []
        for j, e in enumerate(row):
            lim = e.limit_inf("n") if isinstance(e, RatFunc) else e
            if lim is INFINITE:
                raise DivergentEntryError((i, j))
            new_row.append(Q(lim))
        out.append(new_row)
    return RatMat(out)


def char_poly(m: RatMat):
    """Exact monic characteristic polynomial, low to high: [c_0, .., c_r=1].

    Faddeev-LeVerrier over the rationals; every division is by an integer.
    """
    r = m.rank
    coeffs = [Q(0)] * (r + 1)
    coeffs[r] = Q(1)
    n_mat = m
    ident = RatMat.identity(r, Q(1), Q(0))
    for k in range(1, r + 1):
        c = -n_mat.trace() / k
        coeffs[r - k] = c
        if k < r:
            n_mat = m * (n_mat + ident.map(lambda e: e * c))
    return coeffs


def poly_eval(coeffs, z):
    total = 0j
    for c in reversed(coeffs):
        total = total * z + complex(c)
    return total


def poly_roots(coeffs, tol: float = 1e-12, max_iter: int = 400):
    """All complex roots by Aberth-Ehrlich iteration with Newton polish.

    Coefficients may be exact rationals of any size; they are normalized
    by the largest magnitude first, so the root multiset is invariant
    under scaling.  Residuals satisfy |p(root)| <= tol * max|coeff|.
    """
    coeffs = [Q(c) for c in coeffs]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if len(coeffs) < 2:
        raise ValueError("polynomial must have degree >= 1")
    zero_roots = 0
    while coeffs[0] == 0:
        coeffs.pop(0)
        zero_roots += 1
    if len(coeffs) >= 3:
        # split off repeated roots exactly: gcd(p, p') carries each root
        # once less, so both parts are found at full (simple-root) accuracy
        derivative = [coeffs[k] * k for k in range(1, len(coeffs))]
        g = _uni_gcd(coeffs, derivative)
        if len(g) > 1:
            squarefree = _uni_divexact(coeffs, g)
            roots = [0j] * zero_roots
            roots += poly_roots(squarefree, tol=tol, max_iter=max_iter)
            roots += poly_roots(g, tol=tol, max_iter=max_iter)
            return roots
    scale = max(abs(c) for c in coeffs)
    cf = [rat_to_float(c / scale) for c in coeffs]
    deg = len(cf) - 1
    roots = [0j] * zero_roots
    if deg == 0:
        return roots
    if deg == 1:
        return roots + [complex(-cf[0] / cf[1])]

    dcf = [cf[k] * k for k in range(1, deg + 1)]
    radius = 1.0 + max(abs(c / cf[-1]) for c in cf[:-1])
    zs = [
        radius * cmath.exp(2j * math.pi * (k / deg) + 0.4j) * (0.5 + 0.5 * (k + 1) / deg)
        for k in range(deg)
    ]
    best = list(zs)
    best_res = math.inf
    converged = False
    for _ in range(max_iter):
        residual = 0.0
        new = list(zs)
        for i, z in enumerate(zs):
            pz = poly_eval(cf, z)
            residual = max(residual, abs(pz))
            dp = poly_eval(dcf, z)
            if pz == 0:
                continue
            if dp == 0:
                new[i] = z + 1e-8 * (1 + abs(z))
                continue
            w = pz / dp
            s = sum(1.0 / (z - zj) for j, zj in enumerate(zs) if j != i)
            denom = 1.0 - w * s
            new[i] = z - (w / denom if denom != 0 else w)
        if residual < best_res:
            best_res = residual
            best = list(zs)
        if residual <= tol:
            converged = True
            break
        if all(abs(a - b) <= 1e-16 * (1.0 + abs(b)) for a, b in zip(new, zs)):
            zs = new
            converged = max(abs(poly_eval(cf, z)) for z in zs) <= tol
            break
        zs = new
    else:
        zs = best
        converged = best_res <= tol
    for i, z in enumerate(zs):
        for _ in range(3):
            dp = poly_eval(dcf, z)
            if abs(dp) < 1e-12:
                break
            z = z - poly_eval(cf, z) / dp
        if abs(poly_eval(cf, z)) <= abs(poly_eval(cf, zs[i])):
            zs[i] = z
    if not converged and max(abs(poly_eval(cf, z)) for z in zs) > tol:
        raise RootFindingError(
            "root iteration did not reach residual %.1e" % tol, best=roots + zs
        )
    return roots + zs


def _sort_roots(roots):
    return sorted(roots, key=lambda z: (-abs(z), -z.real, -z.imag))


@dataclass
class EigenReport:
    limit: RatMat
    char_coeffs: list  # exact, low to high, monic
    roots: list  # complex, sorted by descending modulus
    log_moduli: list  # ln|root| (-inf for zero roots)
    pp_ok: bool

    def to_dict(self):
        return {
            "limit_matrix": [[str(e) for e in row] for row in self.limit.rows],
            "char_poly_low_to_high": [str(c) for c in self.char_coeffs],
            "roots": [[z.real, z.imag] for z in self.roots],
            "log_moduli": list(self.log_moduli),
            "pp_ok": self.pp_ok,
        }


def eigen_report(limit: RatMat, tol: float = 1e-12) -> EigenReport:
    coeffs = char_poly(limit)
    roots = _sort_roots(poly_roots(coeffs, tol=tol))
    log_moduli = [math.log(abs(z)) if z != 0 else -math.inf for z in roots]
    pp_ok = True
    for a, b in zip(roots, roots[1:]):
        ma, mb = abs(a), abs(b)
        if ma - mb <= MODULUS_GAP_TOL * max(ma, mb, 1e-300):
            pp_ok = False
            break
    return EigenReport(limit, coeffs, roots, log_moduli, pp_ok)


def pp_report(cmf: CMF, x, v, tol: float = 1e-12) -> EigenReport:
    """Eigen data for the n -> infinity limit of T_{x,v}(n)."""
    return eigen_report(limit_matrix(cmf.trajectory(x, v)), tol=tol)


def rho_predicted(report: EigenReport):
    """Closed-form convergence-rate candidates from the eigenvalue moduli.

    Returns (default, pairs): default is ln|lambda_2| - ln|lambda_1| (the
    red-line value); pairs lists (j, k, ln|lambda_k/lambda_j|) for all
    k > j, 1-based, since which pair a walk realizes depends on unknown
    multiplicative constants.
    """
    if not report.pp_ok:
        raise ValueError("distinct-modulus condition fails; no prediction")
    lm = report.log_moduli
    if len(lm) < 2:
        raise ValueError("need at least two eigenvalues for a rate")
    pairs = [(j + 1, k + 1, lm[k] - lm[j]) for j in range(len(lm)) for k in range(j + 1, len(lm))]
    return lm[1] - lm[0], pairs


@dataclass
class Estimates:
    N: int
    l_hat: object  # exact rational
    rho_hat: float | None
    delta_hat: float | None
    eta_hat: float | None
    converged: str  # converging | non-converging | undetermined
    exact_equal: bool = False

    def to_dict(self, decimals=30):
        from .rational import rat_to_decimal_str

        return {
            "N": self.N,
            "l_hat": rat_to_decimal_str(self.l_hat, decimals),
            "l_hat_exact": str(self.l_hat),
            "rho_hat": self.rho_hat,
            "delta_hat": self.delta_hat,
            "eta_hat": self.eta_hat,
            "classification": self.converged,
            "exact_equal": self.exact_equal,
        }


def estimate(value_fn, N: int) -> Estimates:
    """Late-index estimators from the exact values at N/2, N and 2N.

    `value_fn` maps an index to an exact rational (or None when the ratio
    is undefined there); a walk's `.value` bound method fits directly.
    """
    if N < 2 or N % 2:
        raise ValueError("N must be even and >= 2")
    probes = {}
    for idx in (N // 2, N, 2 * N):
        val = value_fn(idx)
        if val is None:
            raise UndefinedRatioError(idx)
        probes[idx] = Q(val)
    l_half, l_n, l_2n = probes[N // 2], probes[N], probes[2 * N]
    h = height(l_n)
    eta_hat = int_log_abs(h) / N
    if l_n == l_2n:
        return Estimates(N, l_n, None, None, eta_hat, "converging", exact_equal=True)
    gap = abs(l_n - l_2n)
    half_gap = abs(l_half - l_n)
    rho_hat = rat_log_abs(gap) / N
    # the half-scale rate: a sequence that decays at scale N but not at
    # scale N/2 is oscillating through the probes, not converging
    rho_half = rat_log_abs(half_gap) / (N // 2) if half_gap != 0 else -math.inf
    delta_hat = None if h == 1 else -1.0 - rat_log_abs(gap) / int_log_abs(h)
    if gap >= half_gap or rho_hat > RHO_NONCONVERGING or rho_half > RHO_NONCONVERGING:
        label = "non-converging"
    elif rho_hat < RHO_CONVERGING:
        label = "converging"
    else:
        label = "undetermined"
    return Estimates(N, l_n, rho_hat, delta_hat, eta_hat, label)
