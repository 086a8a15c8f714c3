"""Steady-state populations and the clockwise cycle flux.

The stationary distribution solves W rho = 0 with the fourth equation
replaced by the normalization constraint, exactly mirroring the matrix
construction used to derive the closed-form cycle flux.  At the stationary
point the four legs of the cycle A->B->D->C->A carry a common net rate, the
clockwise cycle flux Gamma_cw; the upper-lead energy current is kappa times
this single number.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DegenerateNetworkError, NumericalError, PreconditionError
from .kinetics import Generator, PopulationVector
from .model import BathConfig, SystemParams, transition_energies

COND_LIMIT = 1e12


@dataclass(frozen=True)
class SteadyState:
    """Stationary populations plus the clockwise cycle flux Gamma_cw."""

    rho: PopulationVector
    gamma_cw: float
    legs: np.ndarray  # the four cycle-leg net rates, for diagnostics


def steady_state(w: Generator) -> SteadyState:
    """Stationary point of the generator, with cycle-flux consistency checks.

    Raises :class:`DegenerateNetworkError` when the normalized system is
    singular or has a 1-norm condition estimate above 1e12, and
    :class:`NumericalError` if the four cycle legs fail to agree, which
    would indicate a corrupted generator rather than roundoff.
    """
    w_arr = w.matrix if isinstance(w, Generator) else np.asarray(w, float)
    aug = w_arr.copy()
    aug[3, :] = 1.0
    cond = np.linalg.cond(aug, 1)
    if not np.isfinite(cond) or cond > COND_LIMIT:
        raise DegenerateNetworkError(
            f"steady-state system is degenerate (condition estimate {cond:.3e})"
        )
    rho, ok = _kernels.steady_rho(w_arr)
    if not ok:
        raise DegenerateNetworkError("steady-state system is exactly singular")
    residual = float(np.abs(w_arr @ rho).max())
    scale = max(1.0, float(np.abs(w_arr).max()))
    if residual > 1e-12 * scale:
        raise NumericalError(f"kernel residual {residual:.3e} exceeds tolerance")

    legs = _kernels.cycle_legs(w_arr, rho)
    gamma_cw = float(legs[0])
    if float(np.abs(legs - gamma_cw).max()) > 1e-12 * scale:
        raise NumericalError(
            f"cycle legs disagree beyond tolerance: {np.asarray(legs)}"
        )
    # clip solver roundoff only; genuine negatives already failed above
    rho = np.where(np.abs(rho) < 1e-15, np.abs(rho), rho)
    return SteadyState(rho=PopulationVector(rho), gamma_cw=gamma_cw, legs=np.asarray(legs))


def cycle_flux_closed_form(sys: SystemParams, baths: BathConfig) -> float:
    """Explicit cycle flux for equal tunneling rates on all three leads.

    Writing f1 = f+_l(w_ab) + f+_r(w_ab), f2 = f+_l(w_cd) + f+_r(w_cd),
    g1 = f+_u(w_ac) and g2 = f+_u(w_bd), the stationary cycle flux is

        Gamma_cw = gamma * (f1*[f2*(g2 - g1) + 2*g2*(g1 - 1)]
                            - 2*g1*f2*(g2 - 1))
                   / (3*f1*(g1 - g2) - 6 + 3*f2*(g2 - g1))

    which agrees with the linear solve identically (the denominator is the
    negated spanning-tree normalization, the numerator the negated cycle
    affinity imbalance).  Requires gamma_l = gamma_r = gamma_u.
    """
    g_l, g_r, g_u = baths.l.gamma, baths.r.gamma, baths.u.gamma
    gmax = max(g_l, g_r, g_u)
    if max(abs(g_l - g_r), abs(g_l - g_u)) > 1e-12 * gmax:
        raise PreconditionError(
            "closed-form cycle flux assumes equal tunneling rates; got "
            f"gamma=({g_l}, {g_r}, {g_u})"
        )
    gamma = g_l
    tt = transition_energies(sys)
    f1 = (_kernels.fermi_occ(baths.l.beta, baths.l.mu, tt.omega_ab)
          + _kernels.fermi_occ(baths.r.beta, baths.r.mu, tt.omega_ab))
    f2 = (_kernels.fermi_occ(baths.l.beta, baths.l.mu, tt.omega_cd)
          + _kernels.fermi_occ(baths.r.beta, baths.r.mu, tt.omega_cd))
    g1 = _kernels.fermi_occ(baths.u.beta, baths.u.mu, tt.omega_ac)
    g2 = _kernels.fermi_occ(baths.u.beta, baths.u.mu, tt.omega_bd)
    num = f1 * (f2 * (g2 - g1) + 2.0 * g2 * (g1 - 1.0)) - 2.0 * g1 * f2 * (g2 - 1.0)
    den = 3.0 * f1 * (g1 - g2) - 6.0 + 3.0 * f2 * (g2 - g1)
    return float(gamma * num / den)
