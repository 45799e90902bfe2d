"""Classical dynamics of the nonlinear oscillator with position-dependent mass.

1D motion has the exact solution x = A sin(omega*t + phi) with amplitude and
frequency locked by A**2 = (alpha**2/omega**2 - 1)/lam; planar motion is
integrated in (r, rdot) with the angle reconstructed from the conserved
C = r**2*thetadot.  All integration goes through the adaptive RK45 driver in
:mod:`nlosc.kernels`; energy is monitored, not enforced.

This module uses the bare coupling g = m*alpha**2 throughout (not the
redefined quantum coupling cached on ModelParams).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np
from scipy.optimize import brentq

from .errors import DomainExit, OutsideDomain, RadialCollapse, StiffnessFailure
from .kernels import (
    STATUS_NONFINITE,
    STATUS_OK,
    integrate_adaptive,
    rhs_classical_1d,
    rhs_classical_planar,
)
from .params import ModelParams

_R_COLLAPSE = 1e-10


@dataclass(frozen=True)
class ClassicalState1D:
    t: float
    x: float
    v: float


@dataclass(frozen=True)
class ClassicalStatePlanar:
    t: float
    r: float
    rdot: float
    theta: float
    thetadot: float


@dataclass(frozen=True)
class Trajectory:
    """Sampled trajectory with per-sample conserved quantities.

    ``x`` holds the position (1D) or radius (planar); ``theta``/``thetadot``
    and ``angmom`` (= r**2*thetadot) are None for 1D runs.
    """

    t: np.ndarray
    x: np.ndarray
    v: np.ndarray
    H: np.ndarray
    theta: Optional[np.ndarray] = None
    thetadot: Optional[np.ndarray] = None
    angmom: Optional[np.ndarray] = None


def potential_1d(x: float, params: ModelParams) -> float:
    """V(x) = m*alpha**2*x**2 / (2*(lam*x**2 + 1))."""
    w = params.lam * x * x + 1.0
    if w <= 0:
        raise OutsideDomain(f"lam*x**2 + 1 = {w} <= 0 at x = {x}")
    return 0.5 * params.m * params.alpha**2 * x * x / w


def hamiltonian_1d(x: float, v: float, params: ModelParams) -> float:
    """Energy in canonical form H = (lam*x**2+1)*p**2/(2m) + V with p = M*v."""
    w = params.lam * x * x + 1.0
    if w <= 0:
        raise OutsideDomain(f"lam*x**2 + 1 = {w} <= 0 at x = {x}")
    p = params.m / w * v
    return w * p * p / (2.0 * params.m) + potential_1d(x, params)


def hamiltonian_1d_mass_form(x: float, v: float, params: ModelParams) -> float:
    """Same energy written as M*v**2/2 + V; agrees with hamiltonian_1d."""
    w = params.lam * x * x + 1.0
    if w <= 0:
        raise OutsideDomain(f"lam*x**2 + 1 = {w} <= 0 at x = {x}")
    return 0.5 * params.m / w * v * v + potential_1d(x, params)


def hamiltonian_planar(state: ClassicalStatePlanar, params: ModelParams) -> float:
    """H = (lam*r**2+1)*|p|**2/(2m) + V(r) with p = M*(rdot, r*thetadot)."""
    r = state.r
    if r <= 0:
        raise OutsideDomain(f"radius must be positive, got {r}")
    w = params.lam * r * r + 1.0
    if w <= 0:
        raise OutsideDomain(f"lam*r**2 + 1 = {w} <= 0 at r = {r}")
    M = params.m / w
    v_sq = state.rdot**2 + (r * state.thetadot) ** 2
    return w * (M * M * v_sq) / (2.0 * params.m) + potential_1d(r, params)


def spring_constant(x: float, A: float, omega: float, params: ModelParams) -> float:
    """Effective spring stiffness K = m*omega**2*(1 + lam*A**2)/(lam*x**2 + 1)."""
    w = params.lam * x * x + 1.0
    if w <= 0:
        raise OutsideDomain(f"lam*x**2 + 1 = {w} <= 0 at x = {x}")
    return params.m * omega**2 * (1.0 + params.lam * A * A) / w


def analytic_1d(
    A: float, omega: float, phi: float, params: ModelParams
) -> Tuple[Callable[[float], float], bool]:
    """Sinusoid x(t) = A*sin(omega*t + phi) and whether (A, omega) satisfy
    the amplitude-frequency constraint A**2 = (alpha**2/omega**2 - 1)/lam."""
    if omega <= 0:
        raise ValueError(f"omega must be positive, got {omega}")

    def x_of_t(t: float) -> float:
        return A * math.sin(omega * t + phi)

    if params.lam == 0.0:
        ok = abs(omega - params.alpha) <= 1e-12 * params.alpha
    else:
        target = (params.alpha**2 / omega**2 - 1.0) / params.lam
        ok = abs(A * A - target) <= 1e-12 * max(abs(target), 1.0)
    return x_of_t, ok


def constraint_amplitude(omega: float, params: ModelParams) -> float:
    """Amplitude locked to omega: A = sqrt((alpha**2/omega**2 - 1)/lam)."""
    if params.lam == 0.0:
        raise ValueError("lam = 0 leaves the amplitude unconstrained")
    a_sq = (params.alpha**2 / omega**2 - 1.0) / params.lam
    if a_sq < 0:
        raise ValueError(f"constraint gives A**2 = {a_sq} < 0 for omega = {omega}")
    return math.sqrt(a_sq)


def _check_status(status: int, what: str, lam: float) -> None:
    if status == STATUS_NONFINITE:
        raise DomainExit(f"{what} left the configuration domain (non-finite state)")
    if status != STATUS_OK:
        if lam < 0:
            # the coefficients are smooth everywhere except at the edge of
            # the lam < 0 domain, so a stalled step controller means the
            # trajectory ran into lam*x**2 + 1 -> 0
            raise DomainExit(f"{what} stalled at the domain boundary lam*x**2 + 1 -> 0")
        raise StiffnessFailure(f"{what} failed: step-size underflow")


def integrate_1d(
    x0: float,
    v0: float,
    params: ModelParams,
    t_end: float,
    tol: float = 1e-10,
    n_samples: int = 1000,
) -> Trajectory:
    """Integrate (lam*x**2+1)*xdd - lam*x*xd**2 + alpha**2*x = 0."""
    if params.lam * x0 * x0 + 1.0 <= 0:
        raise OutsideDomain(f"initial point x0 = {x0} outside the domain")
    if t_end <= 0:
        raise ValueError(f"t_end must be positive, got {t_end}")
    ts = np.linspace(0.0, t_end, n_samples)
    args = np.array([params.lam, params.alpha**2])
    out, status, _ = integrate_adaptive(
        rhs_classical_1d, 0.0, np.array([x0, v0]), ts[1:], tol, tol, args, 10_000_000
    )
    _check_status(status, "1D integration", params.lam)
    xs = np.concatenate(([x0], out[:, 0]))
    vs = np.concatenate(([v0], out[:, 1]))
    if params.lam < 0 and np.any(params.lam * xs * xs + 1.0 <= 0):
        raise DomainExit("trajectory crossed lam*x**2 + 1 = 0")
    H = np.array([hamiltonian_1d(float(x), float(v), params) for x, v in zip(xs, vs)])
    return Trajectory(t=ts, x=xs, v=vs, H=H)


def integrate_planar(
    r0: float,
    rdot0: float,
    C: float,
    params: ModelParams,
    t_end: float,
    tol: float = 1e-10,
    n_samples: int = 1000,
) -> Trajectory:
    """Integrate the planar radial equation with theta reconstructed from C."""
    if r0 <= 0:
        raise OutsideDomain(f"initial radius must be positive, got {r0}")
    if params.lam * r0 * r0 + 1.0 <= 0:
        raise OutsideDomain(f"initial point r0 = {r0} outside the domain")
    if t_end <= 0:
        raise ValueError(f"t_end must be positive, got {t_end}")
    ts = np.linspace(0.0, t_end, n_samples)
    args = np.array([params.lam, params.alpha**2, C])
    out, status, _ = integrate_adaptive(
        rhs_classical_planar, 0.0, np.array([r0, rdot0, 0.0]), ts[1:], tol, tol, args, 10_000_000
    )
    if status == STATUS_NONFINITE and C != 0.0:
        raise RadialCollapse("radius collapsed toward r = 0")
    _check_status(status, "planar integration", params.lam)
    rs = np.concatenate(([r0], out[:, 0]))
    rds = np.concatenate(([rdot0], out[:, 1]))
    thetas = np.concatenate(([0.0], out[:, 2]))
    if np.any(rs <= _R_COLLAPSE):
        raise RadialCollapse(f"radius fell below {_R_COLLAPSE}")
    if params.lam < 0 and np.any(params.lam * rs * rs + 1.0 <= 0):
        raise DomainExit("trajectory crossed lam*r**2 + 1 = 0")
    thetadots = C / (rs * rs)
    H = np.array(
        [
            hamiltonian_planar(ClassicalStatePlanar(float(t), float(r), float(rd), float(th), float(td)), params)
            for t, r, rd, th, td in zip(ts, rs, rds, thetas, thetadots)
        ]
    )
    return Trajectory(t=ts, x=rs, v=rds, H=H, theta=thetas, thetadot=thetadots, angmom=rs * rs * thetadots)


def measure_period(traj: Trajectory) -> float:
    """Mean spacing of upward zero crossings of x(t), located by cubic Hermite
    interpolation between samples (the velocity supplies the slopes)."""
    t, x, v = traj.t, traj.x, traj.v
    crossings = []
    for i in range(len(t) - 1):
        if x[i] <= 0.0 < x[i + 1] or (x[i] < 0.0 <= x[i + 1]):
            h = t[i + 1] - t[i]
            # cubic Hermite on [0, 1]
            p0, p1, m0, m1 = x[i], x[i + 1], v[i] * h, v[i + 1] * h
            coeffs = [
                p0,
                m0,
                -3.0 * p0 + 3.0 * p1 - 2.0 * m0 - m1,
                2.0 * p0 - 2.0 * p1 + m0 + m1,
            ]
            # one root in (0, 1); bisect the Horner form
            def poly(s):
                return ((coeffs[3] * s + coeffs[2]) * s + coeffs[1]) * s + coeffs[0]

            lo, hi = 0.0, 1.0
            for _ in range(80):
                mid = 0.5 * (lo + hi)
                if poly(lo) * poly(mid) <= 0:
                    hi = mid
                else:
                    lo = mid
            crossings.append(t[i] + 0.5 * (lo + hi) * h)
    if len(crossings) < 2:
        raise ValueError("need at least two upward zero crossings to measure a period")
    gaps = np.diff(crossings)
    return float(np.mean(gaps))


def circular_orbit_radius(C: float, params: ModelParams) -> float:
    """Radius with rdd = 0 at rd = 0: alpha**2*r = (lam*r**2+1)*C**2/r**3 + lam*C**2/r."""
    if C == 0.0:
        raise ValueError("C = 0 has no circular orbit")

    # rdd from the radial equation at rdot = 0:
    # rdd = C**2/r**3 + (lam*r*C**2/r**2 - alpha**2*r)/(lam*r**2+1)
    def rdd(r: float) -> float:
        w = params.lam * r * r + 1.0
        return C * C / r**3 + (params.lam * C * C / r - params.alpha**2 * r) / w

    r_guess = math.sqrt(abs(C) / params.alpha)
    lo, hi = r_guess, r_guess
    while rdd(lo) < 0 and lo > 1e-8:
        lo *= 0.5
    while rdd(hi) > 0:
        hi *= 2.0
        if params.lam < 0 and hi * hi >= -1.0 / params.lam:
            hi = 0.999999 * math.sqrt(-1.0 / params.lam)
            break
    return float(brentq(rdd, lo, hi, xtol=1e-14, rtol=1e-15))
