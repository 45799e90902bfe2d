"""Exact radial eigenfunctions, weighted inner products and normalization.

A state is R(y) = norm * y^L * (Lambda*y^2+1)^(-1/(2*Lambda)) * P(1+2*Lambda*y^2)
with P a Jacobi polynomial of degree n and parameters (L+1/2, -1/Lambda-1/2).
For Lambda < 0 this is identical to the |Lambda| form with argument
1-2*|Lambda|*y^2 and parameters (L+1/2, 1/|Lambda|-1/2), so one representation
serves both signs.

Inner products are taken in L^2 with weight mu = y^2/sqrt(Lambda*y^2+1).  The
change of variable x = 1-2*|Lambda|*y^2 (Lambda < 0) or
y = sqrt((1-x)/(Lambda*(1+x))) (Lambda > 0) turns every integrand into a
polynomial times the Jacobi weight (1-x)^a*(1+x)^b, so the integral reduces to
a short sum of Beta-function moments, exact up to roundoff.  All constant
prefactors are carried in log space to survive the huge exponents that appear
at small |Lambda|.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import spectrum
from .errors import (
    LambdaTooSmall,
    NotAdmissible,
    OutsideDomain,
    PoleInDenominator,
    QuadratureFailure,
    SeriesNotConverged,
)
from .orthopoly import PolyCoeffs, jacobi
from .params import ModelParams, domain
from .spectrum import QuantumNumbers, energy_dimless, is_admissible

# below this |Lambda| the closed form is numerically meaningless; use the
# harmonic-oscillator branch in nlosc.oracle instead
LAMBDA_SWITCH = 1e-8

_ENDPOINT_SLACK = 1e-12


@dataclass(frozen=True)
class RadialEigenstate:
    """Closed-form radial eigenfunction for admissible (n, L, Lambda).

    ``poly`` is the Jacobi piece in the variable 1 + 2*Lambda*y**2.
    ``series_poly`` is the identical polynomial re-expanded in s = y**2 via
    the terminating hypergeometric series (the two agree term by term up to
    roundoff); the series form keeps coefficients O(1) at small |Lambda| and
    high n, so evaluation and quadrature run through it.
    """

    qn: QuantumNumbers
    Lambda: float
    e: float
    poly: PolyCoeffs
    series_poly: PolyCoeffs
    L_power: int
    prefactor_exponent: float  # -1/(2*Lambda), power of (Lambda*y**2 + 1)
    norm_const: float = 1.0


@dataclass(frozen=True)
class WeightedInnerProductResult:
    value: float
    est_abs_error: float


def weight(y: float, Lambda: float) -> float:
    """Weight function mu = y**2 / sqrt(Lambda*y**2 + 1) on the open domain."""
    if y <= 0:
        raise OutsideDomain(f"weight needs y > 0, got {y}")
    w = Lambda * y * y + 1.0
    if w <= 0:
        raise OutsideDomain(f"y = {y} at or beyond the finite endpoint for Lambda = {Lambda}")
    return y * y / math.sqrt(w)


def _series_poly(n: int, L: int, Lambda: float) -> PolyCoeffs:
    """Jacobi-normalized polynomial piece as a polynomial in s = y**2.

    C(n+L+1/2, n) * 2F1(-n, n+L+1-1/Lambda; L+3/2; -Lambda*s), expanded with
    the Lambda factors absorbed into each coefficient so everything stays O(1).
    """
    kappa = 1.0
    for j in range(1, n + 1):  # C(n + L + 1/2, n)
        kappa *= (L + 0.5 + j) / j
    b2 = n + L + 1.0 - 1.0 / Lambda
    c = L + 1.5
    coeffs = np.empty(n + 1)
    term = kappa
    for k in range(n + 1):
        coeffs[k] = term
        if k < n:
            term *= (-n + k) * (b2 + k) / ((c + k) * (k + 1.0)) * (-Lambda)
    return PolyCoeffs(tuple(coeffs.tolist()), n, (L + 0.5, -1.0 / Lambda - 0.5))


def build_state(n: int, L: int, Lambda: float) -> RadialEigenstate:
    """Construct the (unnormalized) closed-form eigenstate."""
    if abs(Lambda) <= LAMBDA_SWITCH:
        raise LambdaTooSmall(
            f"|Lambda| = {abs(Lambda)} <= {LAMBDA_SWITCH}; use the harmonic-oscillator branch"
        )
    if not is_admissible(n, L, Lambda):
        raise NotAdmissible(f"(n={n}, L={L}) is not normalizable at Lambda = {Lambda}")
    qn = QuantumNumbers(n=n, L=L)
    poly = jacobi(n, L + 0.5, -1.0 / Lambda - 0.5)
    return RadialEigenstate(
        qn=qn,
        Lambda=Lambda,
        e=energy_dimless(n, L, Lambda),
        poly=poly,
        series_poly=_series_poly(n, L, Lambda),
        L_power=L,
        prefactor_exponent=-0.5 / Lambda,
    )


def _check_inside(state: RadialEigenstate, y: float) -> float:
    """Clamp w = Lambda*y**2+1 at the finite endpoint, reject points beyond."""
    lam = state.Lambda
    if y < 0:
        raise OutsideDomain(f"y must be nonnegative, got {y}")
    w = lam * y * y + 1.0
    if lam < 0 and w <= 0:
        y_end = math.sqrt(-1.0 / lam)
        if y > y_end * (1.0 + _ENDPOINT_SLACK):
            raise OutsideDomain(f"y = {y} beyond endpoint {y_end}")
        w = 0.0
    return w


def eval_state(state: RadialEigenstate, y):
    """Evaluate R(y); scalars or 1-D arrays, endpoints included."""
    if np.ndim(y) > 0:
        return np.array([eval_state(state, float(yi)) for yi in np.asarray(y, dtype=float)])
    y = float(y)
    w = _check_inside(state, y)
    L = state.L_power
    p = state.prefactor_exponent
    if y == 0.0:
        return state.norm_const * state.series_poly(0.0) if L == 0 else 0.0
    if w == 0.0:
        return 0.0  # positive power of a zero base (Lambda < 0 endpoint)
    pref = math.exp(L * math.log(y) + p * math.log(w))
    return state.norm_const * pref * state.series_poly(y * y)


def eval_state_with_derivatives(state: RadialEigenstate, y: float):
    """(R, R', R'') at an interior point, by analytic differentiation."""
    y = float(y)
    if y <= 0:
        raise OutsideDomain(f"derivatives need an interior point, got y = {y}")
    w = _check_inside(state, y)
    if w <= 0:
        raise OutsideDomain(f"derivatives need an interior point, got the endpoint y = {y}")
    lam = state.Lambda
    L = state.L_power
    p = state.prefactor_exponent
    s = y * y
    Q = state.series_poly(s)
    dq = state.series_poly.derivative()
    dQ = dq(s)
    d2Q = dq.derivative()(s)
    sp = 2.0 * y  # ds/dy
    A = math.exp(L * math.log(y) + p * math.log(w))
    la = L / y + 2.0 * lam * p * y / w  # A'/A
    dla = -L / (y * y) + 2.0 * lam * p * (1.0 - lam * y * y) / (w * w)
    R = A * Q
    R1 = A * (la * Q + dQ * sp)
    R2 = A * ((la * la + dla) * Q + 2.0 * la * dQ * sp + d2Q * sp * sp + dQ * 2.0)
    c = state.norm_const
    return c * R, c * R1, c * R2


def second_solution(L: int, Lambda: float, e: float, y: float, k_max: int = 200, tol: float = 1e-10) -> float:
    """Linearly independent (singular) second solution, by truncated series.

    Diagnostic only; the series need not terminate and converges only for
    |Lambda|*y**2 < 1.
    """
    lam = Lambda
    w = lam * y * y + 1.0
    if y <= 0 or w <= 0:
        raise OutsideDomain(f"second solution needs an interior point, got y = {y}")
    alpha = 0.5 * L + 0.5 - 0.5 / lam
    beta_sq = (lam + 1.0 - 2.0 * e * lam + lam * lam * (L * L + L + 1.0)) / (4.0 * lam * lam)
    a0 = alpha - L - 0.5
    c = 0.5 - L
    z = -lam * y * y
    total = 1.0
    term = 1.0
    converged = False
    for k in range(k_max):
        if c + k == 0.0:
            raise PoleInDenominator(f"(c)_k vanishes at k = {k + 1} for c = {c}")
        term *= ((a0 + k) ** 2 - beta_sq) / ((c + k) * (k + 1.0)) * z
        total += term
        if abs(term) < tol * max(1.0, abs(total)):
            converged = True
            break
    if not converged:
        raise SeriesNotConverged(f"tail estimate {abs(term)} above {tol} after {k_max} terms")
    pref = math.exp(-(L + 1.0) * math.log(y) + (0.5 / lam) * math.log(w))
    return pref * total


def _series_poly_exact(n: int, L: int, lam: Fraction) -> list:
    """Exact-rational coefficients of the series polynomial (s = y**2 basis)."""
    kappa = Fraction(1)
    for j in range(1, n + 1):  # C(n + L + 1/2, n)
        kappa *= (L + Fraction(1, 2) + j) / j
    b2 = n + L + 1 - 1 / lam
    c = L + Fraction(3, 2)
    coeffs = []
    term = kappa
    for k in range(n + 1):
        coeffs.append(term)
        if k < n:
            term *= Fraction(-n + k) * (b2 + k) / ((c + k) * (k + 1)) * (-lam)
    return coeffs


def _folded_t_poly_exact(state: RadialEigenstate) -> list:
    """Exact polynomial factor of the state in the substituted variable t = 1-x.

    Lambda < 0 (x = 1 - 2|Lambda|y^2, s = t/(2|Lambda|)): rescaled powers.
    Lambda > 0 (s = t/(Lambda(2-t))): (Lambda(2-t))^n Q(s); the caller
    compensates with Lambda^-n and n extra powers of (1+x) in the weight.
    """
    lam = Fraction(state.Lambda)
    n = state.qn.n
    h = _series_poly_exact(n, state.qn.L, lam)
    if lam < 0:
        scale = 1 / (-2 * lam)
        return [h[k] * scale**k for k in range(n + 1)]
    total = [Fraction(0)] * (n + 1)
    for k in range(n + 1):
        # h[k] * lam^(n-k) * t^k * (2-t)^(n-k)
        base = h[k] * lam ** (n - k)
        for i in range(n - k + 1):  # binomial expansion of (2-t)^(n-k)
            total[k + i] += base * math.comb(n - k, i) * (-1) ** i * 2 ** (n - k - i)
    return total


def _beta_moment_value(q: list, a: Fraction, b: Fraction, log_k: float):
    """exp(log_k) * int_{-1}^{1} (1-x)^a (1+x)^b q(1-x) dx, q in the t = 1-x basis.

    The sum over Beta-function moments is done in exact rational arithmetic
    (successive moments differ by the rational ratio 2(a+j+1)/(a+b+j+2)), so
    the massive cancellation between orthogonal states is exact; only the
    single prefactor exp(log_k + log B(a+1, b+1) + (a+b+1) log 2) is floating
    point.  Returns (value, error estimate).
    """
    log_m0 = (
        log_k
        + float(a + b + 1) * math.log(2.0)
        + math.lgamma(float(a) + 1.0)
        + math.lgamma(float(b) + 1.0)
        - math.lgamma(float(a + b) + 2.0)
    )
    s = Fraction(0)
    s_abs = Fraction(0)
    ratio = Fraction(1)  # M_j / M_0
    for j, qj in enumerate(q):
        s += qj * ratio
        s_abs += abs(qj) * ratio
        ratio *= 2 * (a + j + 1) / (a + b + j + 2)
    scale = math.exp(log_m0)
    value = scale * float(s)
    # lgamma carries a few ulp on logs of size O(1/|Lambda|); fold that in
    est = abs(value) * (1e-15 + 5e-16 * abs(log_m0)) + 1e-300 * float(s_abs)
    return value, est


def inner_product(state_a: RadialEigenstate, state_b: RadialEigenstate, tol: float = 1e-8) -> WeightedInnerProductResult:
    """Weighted inner product (R_a, R_b) over the Lambda-dependent domain."""
    if state_a.qn.L != state_b.qn.L or state_a.Lambda != state_b.Lambda:
        raise ValueError("inner product requires states sharing (L, Lambda)")
    lam = state_a.Lambda
    L = state_a.qn.L
    m, n = state_a.qn.n, state_b.qn.n
    qa = _folded_t_poly_exact(state_a)
    qb = _folded_t_poly_exact(state_b)
    prod = [Fraction(0)] * (len(qa) + len(qb) - 1)
    for i, ai in enumerate(qa):
        for j, bj in enumerate(qb):
            prod[i + j] += ai * bj
    a_w = L + Fraction(1, 2)
    lam_f = Fraction(lam)
    if lam < 0:
        # x = 1 - 2|Lambda|y^2
        babs = -lam
        b_w = 1 / (-lam_f) - Fraction(1, 2)
        log_k = -math.log(4.0 * babs) - (L + 0.5) * math.log(2.0 * babs) - float(b_w) * math.log(2.0)
    else:
        # y = sqrt((1-x)/(Lambda(1+x))); the (1+x)^-n poles fold into the weight
        b_w = 1 / lam_f - 2 - L - m - n
        log_k = -(L + 1.5 + m + n) * math.log(lam) - (1.0 / lam + 0.5) * math.log(2.0)
    raw, raw_est = _beta_moment_value(prod, a_w, b_w, log_k)
    scale = state_a.norm_const * state_b.norm_const
    value = scale * raw
    est = abs(scale) * raw_est
    if est > tol * max(1.0, abs(value)):
        raise QuadratureFailure(f"quadrature error estimate {est} exceeds tolerance {tol}")
    return WeightedInnerProductResult(value=value, est_abs_error=est)


def normalize(state: RadialEigenstate) -> RadialEigenstate:
    """Return the state scaled to unit weighted norm, positive near y = 0."""
    sq = inner_product(state, state)
    if sq.value <= 0:
        raise QuadratureFailure(f"nonpositive norm {sq.value}")
    # Jacobi polynomials are positive at argument 1, so a positive norm
    # constant fixes R(y)/y^L > 0 as y -> 0
    return replace(state, norm_const=state.norm_const / math.sqrt(sq.value))


def gram_matrix(L: int, Lambda: float, n_max: int) -> np.ndarray:
    """Matrix of normalized inner products for n = 0..n_max (truncated to the
    admissible set when Lambda > 0)."""
    if Lambda > 0:
        count = spectrum.bound_state_count(Lambda, L).count
        if count == 0:
            raise NotAdmissible(f"no bound states at Lambda = {Lambda}, L = {L}")
        n_top = min(n_max, count - 1)
    else:
        n_top = n_max
    states = [normalize(build_state(n, L, Lambda)) for n in range(n_top + 1)]
    size = len(states)
    g = np.eye(size)
    for i in range(size):
        for j in range(size):
            if i <= j:
                g[i, j] = inner_product(states[i], states[j]).value
                g[j, i] = g[i, j]
    return g


def effective_potential(r: float, params: ModelParams, L: int) -> float:
    """V_eff = V(r) + centrifugal term with the position-dependent mass."""
    w = params.lam * r * r + 1.0
    if w <= 0:
        raise OutsideDomain(f"lam*r**2 + 1 = {w} <= 0 at r = {r}")
    if r <= 0:
        raise OutsideDomain(f"effective potential needs r > 0, got {r}")
    m, alpha, hbar = params.m, params.alpha, params.hbar
    return 0.5 * m * alpha**2 * r * r / w + L * (L + 1) * hbar**2 * w / (2.0 * m * r * r)


def effective_potential_mass_form(r: float, params: ModelParams, L: int) -> float:
    """Same potential written through M(r); equal to machine precision."""
    from .params import mass_at

    if r <= 0:
        raise OutsideDomain(f"effective potential needs r > 0, got {r}")
    M = mass_at(r, params)
    alpha2 = params.alpha**2
    cent = L * (L + 1) * params.hbar**2
    return 0.5 * (alpha2 * M * r * r + cent / (M * r * r))


def u_transform_residual(state: RadialEigenstate, params: ModelParams = None, y_samples: Sequence[float] = None) -> float:
    """Max normalized residual of the u = y*R form of the radial equation.

    Dimensionless throughout: the shifted spectral parameter is e - Lambda/2.
    """
    lam = state.Lambda
    L = state.qn.L
    if y_samples is None:
        upper = domain(lam).upper
        hi = min(upper * 0.999, 6.0) if math.isfinite(upper) else 6.0
        y_samples = np.linspace(0.05, hi, 60)
    e_shift = 2.0 * state.e - lam
    worst = 0.0
    for y in y_samples:
        R, R1, R2 = eval_state_with_derivatives(state, float(y))
        u = y * R
        u1 = R + y * R1
        u2 = 2.0 * R1 + y * R2
        w = lam * y * y + 1.0
        t1 = w * u2
        t2 = lam * y * u1
        t3 = (e_shift - (lam + 1.0) * y * y / w - L * (L + 1) * w / (y * y)) * u
        scale = max(abs(t1), abs(t2), abs(t3), 1e-300)
        worst = max(worst, abs(t1 + t2 + t3) / scale)
    return worst
