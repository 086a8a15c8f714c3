"""Regime analysis for coupled transport with two parallel forces.

Setting beta_l = beta_u kills the upper-lead energy bias, leaving exactly
two forces (f_e_r, f_n_r) conjugate to (J_E^r, J_N^r), with entropy
production sigma = J_E^r f_e_r + J_N^r f_n_r >= 0.  In that plane:

* both forces parallel and one conjugate current running against both is
  the inverse-current regime (energy or particle flavor - never both,
  which would break the second law);
* one force zero and the non-conjugate current negative is the pseudo
  inverse-current precursor;
* anti-parallel forces with a current beaten by the opposing force is the
  conventional cross effect (thermoelectric operation).

The inverse regimes require the level swap eps_b + kappa < 0; with them the
device acts as an autonomous refrigerator (negative J_E^r) or engine
(negative J_N^r), with performance bounded by the ideal-refrigerator COP
and the Carnot efficiency respectively.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import NumericalError, PreconditionError, SecondLawViolationError
from .kinetics import RateConstants, generator, rate_constants
from .model import BathConfig, Lead, Reservoir, SystemParams
from .steadystate import SteadyState, steady_state
from .thermo import (ForceSet, entropy_production_macro,
                     entropy_production_micro, forces_macro, mn_factors)
from .transport import CurrentSet, conservation_report, currents


class Regime(enum.Enum):
    """Classification of a point in the (force, force) plane."""

    EQUILIBRIUM = "Equilibrium"
    NORMAL = "Normal"
    CROSS_EFFECT_ENERGY = "CrossEffectEnergy"
    CROSS_EFFECT_PARTICLE = "CrossEffectParticle"
    PSEUDO_ICC_ENERGY = "PseudoIccEnergy"
    PSEUDO_ICC_PARTICLE = "PseudoIccParticle"
    ICC_ENERGY = "IccEnergy"
    ICC_PARTICLE = "IccParticle"


def icc_reduction(beta: float, beta_r: float, mu_l: float, mu_r: float,
                  mu_u: float, gamma: float = 1.0) -> BathConfig:
    """Bath configuration with beta_l = beta_u = beta (two-force setup).

    The upper-lead energy bias is identically zero, leaving the parallel
    force pair (f_e_r, f_n_r) that can exhibit inverse currents.
    """
    return BathConfig(
        l=Reservoir(Lead.L, beta=beta, mu=mu_l, gamma=gamma),
        r=Reservoir(Lead.R, beta=beta_r, mu=mu_r, gamma=gamma),
        u=Reservoir(Lead.U, beta=beta, mu=mu_u, gamma=gamma),
    )


def thermoelectric_reduction(beta: float, beta_u: float, mu_l: float,
                             mu_r: float, mu_u: float,
                             gamma: float = 1.0) -> BathConfig:
    """Bath configuration with beta_l = beta_r = beta.

    The right-lead energy bias vanishes and the remaining pair
    (f_e_u, f_n_r) drives conventional cross effects (engine/refrigerator
    operation against a single opposing force), never inverse currents.
    """
    return BathConfig(
        l=Reservoir(Lead.L, beta=beta, mu=mu_l, gamma=gamma),
        r=Reservoir(Lead.R, beta=beta, mu=mu_r, gamma=gamma),
        u=Reservoir(Lead.U, beta=beta_u, mu=mu_u, gamma=gamma),
    )


def invert_forces(f_e: float, f_n: float, beta_r: float,
                  mu_r: float) -> tuple[float, float]:
    """Bath parameters (beta, mu_l) realizing given forces in the two-force setup.

    beta = beta_r + f_e and mu_l = (beta_r mu_r - f_n) / beta; composing
    with the macroscopic force formulas round-trips exactly.
    """
    beta = beta_r + f_e
    if beta <= 0:
        raise ValueError(
            f"force f_e={f_e} needs beta_r > {-f_e} to keep beta positive"
        )
    mu_l = (beta_r * mu_r - f_n) / beta
    return beta, mu_l


def xy_variables(rc: RateConstants, ss: SteadyState) -> tuple[float, float]:
    """Right-minus-left channel flux asymmetries (x, y) at the steady state.

    x refers to the A<->B channel and y to the C<->D channel; the right-lead
    particle current is (x + y)/2, and the individual right-lead channel
    fluxes recombine as (x + Gamma_cw)/2 and (y - Gamma_cw)/2.
    """
    rho = ss.rho.values
    g_ab_l = rc.k_ab_l * rho[0] - rc.k_ba_l * rho[1]
    g_ab_r = rc.k_ab_r * rho[0] - rc.k_ba_r * rho[1]
    g_cd_l = rc.k_cd_l * rho[2] - rc.k_dc_l * rho[3]
    g_cd_r = rc.k_cd_r * rho[2] - rc.k_dc_r * rho[3]
    x = g_ab_r - g_ab_l
    y = g_cd_r - g_cd_l
    scale = max(1.0, float(rc.values.max()))
    if (abs(g_ab_r - 0.5 * (x + ss.gamma_cw)) > 1e-12 * scale
            or abs(g_cd_r - 0.5 * (y - ss.gamma_cw)) > 1e-12 * scale):
        raise NumericalError("channel fluxes inconsistent with the cycle flux")
    return x, y


def pq_ratio(rc: RateConstants) -> float:
    """Cycle-direction predictor for the two-force setup.

    With the upper-lead energy bias zero, the combined-lead cycle affinity
    factorizes into the ratio

        p / q,  p = (1 + k_ab_r/k_ab_l) / (1 + k_ba_r/k_ba_l),
                q = (1 + k_cd_r/k_cd_l) / (1 + k_dc_r/k_dc_l),

    and the clockwise cycle flux has the sign of (p/q - 1): above one the
    cycle runs clockwise, below one anticlockwise, at one it stalls.

    Raises :class:`PreconditionError` when called outside the reduced
    setup (detected through the lead-l cycle product deviating from one).
    """
    if (rc.values <= 0).any():
        raise PreconditionError("cycle predictor needs strictly positive rates")
    cycle_l = (rc.k_ab_l * rc.k_bd_u * rc.k_dc_l * rc.k_ca_u) / (
        rc.k_ba_l * rc.k_db_u * rc.k_cd_l * rc.k_ac_u
    )
    if abs(math.log(cycle_l)) > 1e-9:
        raise PreconditionError(
            "cycle predictor is only valid when the upper-lead energy bias "
            "vanishes (beta_l = beta_u)"
        )
    p = (1.0 + rc.k_ab_r / rc.k_ab_l) / (1.0 + rc.k_ba_r / rc.k_ba_l)
    q = (1.0 + rc.k_cd_r / rc.k_cd_l) / (1.0 + rc.k_dc_r / rc.k_dc_l)
    return p / q


def classify(fs: ForceSet, cs: CurrentSet, tol_sign: float = 1e-10,
             tol_force: float = 1e-12) -> Regime:
    """Assign a regime label from the two-force set and right-lead currents.

    ``tol_sign`` separates numerically zero currents from genuine signals;
    ``tol_force`` decides when a force counts as zero.  Both quadrants of
    parallel forces are handled by sign mirroring; anti-parallel quadrants
    map to the cross effects.  Combinations that would make the entropy
    production rate negative raise :class:`SecondLawViolationError`.
    """
    f_e, f_n = fs.f_e_r, fs.f_n_r
    j_e, j_n = cs.j_e_r, cs.j_n_r
    fe_zero = abs(f_e) <= tol_force
    fn_zero = abs(f_n) <= tol_force

    if fe_zero and fn_zero:
        if abs(j_e) > tol_sign or abs(j_n) > tol_sign:
            raise NumericalError(
                f"zero forces must carry zero currents, got "
                f"j_e_r={j_e!r}, j_n_r={j_n!r}"
            )
        return Regime.EQUILIBRIUM

    if not fe_zero and not fn_zero and (f_e > 0) == (f_n > 0):
        sign = 1.0 if f_e > 0 else -1.0
        inverse_energy = sign * j_e < -tol_sign
        inverse_particle = sign * j_n < -tol_sign
        if inverse_energy and inverse_particle:
            raise SecondLawViolationError(
                "both currents run against two parallel forces"
            )
        if inverse_energy:
            return Regime.ICC_ENERGY
        if inverse_particle:
            return Regime.ICC_PARTICLE
        return Regime.NORMAL

    if fe_zero or fn_zero:
        if fe_zero:
            sign = 1.0 if f_n > 0 else -1.0
            if sign * j_n < -tol_sign:
                raise SecondLawViolationError(
                    "conjugate particle current opposes the only nonzero force"
                )
            if sign * j_e < -tol_sign:
                return Regime.PSEUDO_ICC_ENERGY
            return Regime.NORMAL
        sign = 1.0 if f_e > 0 else -1.0
        if sign * j_e < -tol_sign:
            raise SecondLawViolationError(
                "conjugate energy current opposes the only nonzero force"
            )
        if sign * j_n < -tol_sign:
            return Regime.PSEUDO_ICC_PARTICLE
        return Regime.NORMAL

    # anti-parallel forces: conventional cross effects
    cross_energy = j_e * f_e < -tol_sign * abs(f_e)
    cross_particle = j_n * f_n < -tol_sign * abs(f_n)
    if cross_energy and cross_particle:
        raise SecondLawViolationError(
            "both currents oppose their conjugate forces"
        )
    if cross_energy:
        return Regime.CROSS_EFFECT_ENERGY
    if cross_particle:
        return Regime.CROSS_EFFECT_PARTICLE
    return Regime.NORMAL


def cop(cs: CurrentSet, baths: BathConfig, fs: ForceSet) -> float | None:
    """Refrigeration coefficient of performance, defined in the
    inverse-energy-current regime (j_e_r < 0 against two positive forces).

    zeta = -J_E^r beta_r / (J_N^r f_n_r), bounded by the ideal value
    T_cold / (T_hot - T_cold) built from the two distinct temperatures;
    returns None outside the regime.
    """
    if not (fs.f_e_r > 0 and fs.f_n_r > 0 and cs.j_e_r < 0):
        return None
    return (-cs.j_e_r * baths.r.beta) / (cs.j_n_r * fs.f_n_r)


def cop_ideal(baths: BathConfig) -> float:
    """Ideal-refrigerator COP T_cold / (T_hot - T_cold) from the two
    distinct inverse temperatures of the reduced setup."""
    beta_cold = max(baths.l.beta, baths.r.beta)
    beta_hot = min(baths.l.beta, baths.r.beta)
    if beta_cold == beta_hot:
        raise PreconditionError("ideal COP diverges without a thermal bias")
    return beta_hot / (beta_cold - beta_hot)


def efficiency(cs: CurrentSet, baths: BathConfig, fs: ForceSet) -> float | None:
    """Engine efficiency, defined in the inverse-particle-current regime
    (j_n_r < 0 against two positive forces, with j_e_r > 0 as input).

    eta = -J_N^r f_n_r / (beta J_E^r) with beta the cold-side inverse
    temperature; bounded by the Carnot value; None outside the regime.
    """
    if not (fs.f_e_r > 0 and fs.f_n_r > 0 and cs.j_n_r < 0 and cs.j_e_r > 0):
        return None
    return (-cs.j_n_r * fs.f_n_r) / (baths.l.beta * cs.j_e_r)


def carnot_efficiency(baths: BathConfig) -> float:
    """Carnot bound (T_hot - T_cold) / T_hot from the two distinct
    inverse temperatures of the reduced setup."""
    beta_cold = max(baths.l.beta, baths.r.beta)
    beta_hot = min(baths.l.beta, baths.r.beta)
    return 1.0 - beta_hot / beta_cold


@dataclass(frozen=True)
class IccPoint:
    """Full diagnostic record of one solved bath configuration."""

    forces: ForceSet
    currents: CurrentSet
    gamma_cw: float
    x: float
    y: float
    m: float
    n: float
    pq: float | None
    regime: Regime | None
    cop: float | None
    efficiency: float | None
    sigma_macro: float
    sigma_micro: float
    res_j_e: float
    res_j_n: float


def analyze_point(sys: SystemParams, baths: BathConfig,
                  tol_sign: float = 1e-10,
                  tol_force: float = 1e-12) -> IccPoint:
    """Solve one configuration end to end and classify it.

    The cycle predictor, regime label and performance figures are only
    produced when the configuration actually is two-force reduced
    (zero upper-lead energy bias); otherwise those fields are None.
    """
    rc = rate_constants(sys, baths)
    ss = steady_state(generator(rc))
    cs = currents(rc, ss, sys, baths)
    fs = forces_macro(baths)
    x, y = xy_variables(rc, ss)
    mn = mn_factors(rc)
    macro = entropy_production_macro(cs, baths, fs)
    micro = entropy_production_micro(rc, ss.rho)
    report = conservation_report(cs)

    reduced = abs(fs.f_e_u) <= tol_force
    pq = pq_ratio(rc) if reduced else None
    regime = classify(fs, cs, tol_sign=tol_sign, tol_force=tol_force) if reduced else None
    zeta = cop(cs, baths, fs) if regime is Regime.ICC_ENERGY else None
    eta = efficiency(cs, baths, fs) if regime is Regime.ICC_PARTICLE else None
    return IccPoint(
        forces=fs,
        currents=cs,
        gamma_cw=ss.gamma_cw,
        x=x,
        y=y,
        m=mn.m,
        n=mn.n,
        pq=pq,
        regime=regime,
        cop=zeta,
        efficiency=eta,
        sigma_macro=macro.sigma_dot_macro,
        sigma_micro=micro.sigma_dot,
        res_j_e=report.sum_j_e,
        res_j_n=report.sum_j_n,
    )
