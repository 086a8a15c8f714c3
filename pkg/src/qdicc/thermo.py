"""Entropy production, entropy flux and the entropic force set.

Two independent constructions are kept side by side on purpose:

* macroscopic - forces from reservoir parameters, entropy production as
  the beta-weighted sum of heat currents (equivalently the bilinear
  force-flux decomposition);
* microscopic - forces as logarithms of rate-constant ratios, entropy
  production in the network (rate-log) form whose six summands are each
  of the shape (a - b) ln(a/b) and hence individually non-negative.

At the steady state the two constructions agree term by term; their
disagreement is the single most sensitive bug detector in this code base,
so the equivalence is asserted in tests rather than coupled at runtime.

Only the flux set (J_E^u, J_E^r, J_N^r) and its conjugate forces are
represented; the other equivalent bilinear decompositions carry the same
total entropy production and are not implemented.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import (DegenerateRateError, LogDomainError, NumericalError,
                     UndefinedForceError)
from .kinetics import PopulationVector, RateConstants, Trajectory
from .model import BathConfig, SystemParams
from .transport import CurrentSet


@dataclass(frozen=True)
class ForceSet:
    """Entropic biases conjugate to (J_E^u, J_E^r, J_N^r).

    f_e_u = beta_l - beta_u, f_e_r = beta_l - beta_r (units k_B per energy)
    and f_n_r = beta_r mu_r - beta_l mu_l (units k_B).  They coincide with
    real thermodynamic forces only in the reduced two-force setups.
    """

    f_e_u: float
    f_e_r: float
    f_n_r: float

    def __post_init__(self):
        for name in ("f_e_u", "f_e_r", "f_n_r"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")


@dataclass(frozen=True)
class MNFactors:
    """Left/right rate-asymmetry ratios of the two bottom-dot channels.

    m compares the A<->B channel across the two leads, n the C<->D channel.
    Both equal one for identical leads; their positions relative to one
    determine the signs of the channel fluxes at the steady state.
    """

    m: float
    n: float

    def __post_init__(self):
        if not (self.m > 0 and math.isfinite(self.m)):
            raise ValueError(f"m must be positive and finite, got {self.m}")
        if not (self.n > 0 and math.isfinite(self.n)):
            raise ValueError(f"n must be positive and finite, got {self.n}")


@dataclass(frozen=True)
class EntropyReport:
    """Entropy-rate bookkeeping; fields not produced by an operation are None.

    sigma_dot / phi_dot come from the microscopic network form,
    sigma_dot_macro from the beta-weighted heat currents, decomposition is
    the three bilinear products (J_E^u F_E^u, J_E^r F_E^r, J_N^r F_N^r).
    """

    sigma_dot: float | None = None
    phi_dot: float | None = None
    sigma_dot_macro: float | None = None
    decomposition: tuple[float, float, float] | None = None


def forces_macro(baths: BathConfig) -> ForceSet:
    """Entropic biases from reservoir parameters alone."""
    return ForceSet(
        f_e_u=baths.l.beta - baths.u.beta,
        f_e_r=baths.l.beta - baths.r.beta,
        f_n_r=baths.r.beta * baths.r.mu - baths.l.beta * baths.l.mu,
    )


def mn_factors(rc: RateConstants) -> MNFactors:
    """Rate-asymmetry ratios m and n of the two bottom-dot channels."""
    den_m = rc.k_ba_r * rc.k_ab_l
    den_n = rc.k_dc_r * rc.k_cd_l
    if den_m == 0.0 or den_n == 0.0:
        raise DegenerateRateError("rate-ratio denominator vanishes")
    return MNFactors(
        m=(rc.k_ab_r * rc.k_ba_l) / den_m,
        n=(rc.k_cd_r * rc.k_dc_l) / den_n,
    )


def forces_micro(rc: RateConstants, sys: SystemParams) -> ForceSet:
    """Entropic biases reconstructed from rate-constant logarithms.

    f_e_u is (1/kappa) times the log of the eight-rate product around the
    cycle taken through lead l; f_e_r is (1/kappa) ln(n/m); f_n_r combines
    m and n with the scaled coupling theta = eps_b/kappa as
    (1 + theta) ln m - theta ln n (equivalently ln m - eps_b * f_e_r).
    Equals the macroscopic construction identically.
    """
    if sys.kappa == 0.0:
        raise UndefinedForceError("microscopic forces are undefined for kappa = 0")
    if np.any(rc.values <= 0.0):
        raise LogDomainError("microscopic forces need strictly positive rates")
    inv_kappa = 1.0 / sys.kappa
    theta = sys.theta
    cycle_l = (rc.k_ab_l * rc.k_bd_u * rc.k_dc_l * rc.k_ca_u) / (
        rc.k_ba_l * rc.k_db_u * rc.k_cd_l * rc.k_ac_u
    )
    mn = mn_factors(rc)
    log_m = math.log(mn.m)
    log_n = math.log(mn.n)
    return ForceSet(
        f_e_u=inv_kappa * math.log(cycle_l),
        f_e_r=inv_kappa * (log_n - log_m),
        f_n_r=(1.0 + theta) * log_m - theta * log_n,
    )


def entropy_production_macro(cs: CurrentSet, baths: BathConfig,
                             fs: ForceSet) -> EntropyReport:
    """Macroscopic entropy production rate at the steady state.

    Computed two ways: as -sum(beta_lam * J_Q^lam) and as the bilinear
    force-flux sum; the two are the same identity modulo the conservation
    laws, so a mismatch beyond 1e-12 raises.
    """
    sigma_q = -(baths.l.beta * cs.j_q_l + baths.r.beta * cs.j_q_r
                + baths.u.beta * cs.j_q_u)
    decomposition = (
        cs.j_e_u * fs.f_e_u,
        cs.j_e_r * fs.f_e_r,
        cs.j_n_r * fs.f_n_r,
    )
    sigma_ff = decomposition[0] + decomposition[1] + decomposition[2]
    if abs(sigma_q - sigma_ff) > 1e-12 * max(1.0, abs(sigma_q)):
        raise NumericalError(
            f"heat-current and force-flux entropy rates disagree: "
            f"{sigma_q!r} vs {sigma_ff!r}"
        )
    return EntropyReport(sigma_dot_macro=sigma_q, decomposition=decomposition)


def _validated_rho(rho) -> np.ndarray:
    values = rho.values if isinstance(rho, PopulationVector) else np.asarray(rho, float)
    if np.any(values <= 0.0):
        raise LogDomainError(
            "network entropy form needs strictly positive populations"
        )
    return values


def entropy_production_micro(rc: RateConstants, rho) -> EntropyReport:
    """Network-form entropy production and flux rates at given populations.

    Valid at or away from the steady state; populations and rates must be
    strictly positive (zero populations belong to the boundary where the
    rate-log form diverges; they are rejected, never clamped).
    """
    if np.any(rc.values <= 0.0):
        raise LogDomainError("network entropy form needs strictly positive rates")
    values = _validated_rho(rho)
    sigma, phi, _terms = _kernels.schnakenberg(rc.values, values)
    return EntropyReport(sigma_dot=float(sigma), phi_dot=float(phi))


def schnakenberg_terms(rc: RateConstants, rho) -> np.ndarray:
    """The six individually non-negative production summands."""
    if np.any(rc.values <= 0.0):
        raise LogDomainError("network entropy form needs strictly positive rates")
    values = _validated_rho(rho)
    _sigma, _phi, terms = _kernels.schnakenberg(rc.values, values)
    return np.asarray(terms)


@dataclass(frozen=True)
class TransientEntropyBalance:
    """Per-sample entropy balance along a trajectory (interior samples).

    ds_dt is the centered finite difference of the Shannon entropy;
    sigma_dot and phi_dot are the instantaneous network-form rates, so
    ds_dt ~ sigma_dot + phi_dot up to O(dt^2) discretization error.
    """

    times: np.ndarray
    ds_dt: np.ndarray
    sigma_dot: np.ndarray
    phi_dot: np.ndarray


def entropy_balance_transient(trajectory: Trajectory,
                              rc: RateConstants) -> TransientEntropyBalance:
    """Entropy balance along an evolve() trajectory, at interior samples.

    Requires at least three samples and strictly positive populations
    throughout (interior of the simplex).
    """
    times = np.asarray(trajectory.times, float)
    pops = np.asarray(trajectory.populations, float)
    if len(times) < 3:
        raise ValueError("need at least three samples for a centered difference")
    if np.any(pops <= 0.0):
        raise LogDomainError("trajectory touches the simplex boundary")
    if np.any(rc.values <= 0.0):
        raise LogDomainError("network entropy form needs strictly positive rates")
    shannon = -np.sum(pops * np.log(pops), axis=1)
    ds_dt = (shannon[2:] - shannon[:-2]) / (times[2:] - times[:-2])
    n = len(times) - 2
    sigma = np.empty(n)
    phi = np.empty(n)
    for idx in range(1, len(times) - 1):
        s, p, _t = _kernels.schnakenberg(rc.values, pops[idx])
        sigma[idx - 1] = s
        phi[idx - 1] = p
    return TransientEntropyBalance(
        times=times[1:-1].copy(), ds_dt=ds_dt, sigma_dot=sigma, phi_dot=phi
    )
