"""Hot numeric kernels with a numba fast path and a pure-numpy fallback.

Every kernel is written as plain scalar/array Python that numba can compile
in nopython mode.  When the environment variable ``QDICC_NUMBA`` is set to
``0``/``false``/``off``/``no`` (or numba is unavailable) the very same
functions run uncompiled, so both backends execute identical arithmetic in
identical order.  Jitted kernels keep the original Python function on their
``py_func`` attribute, which the test suite and the benchmark use to compare
the two paths.

Channel layout for the 12 directed reservoir-resolved rate constants::

    0..3   lead l:  A->B, B->A, C->D, D->C
    4..7   lead r:  A->B, B->A, C->D, D->C
    8..11  lead u:  A->C, C->A, B->D, D->B

States are indexed A=0, B=1, C=2, D=3 throughout.
"""
from __future__ import annotations

import os

import numpy as np

_flag = os.environ.get("QDICC_NUMBA", "1").strip().lower()
NUMBA_ENABLED = _flag not in ("0", "false", "off", "no")

if NUMBA_ENABLED:
    try:
        from numba import njit
    except ImportError:  # pragma: no cover - numba is a declared dependency
        NUMBA_ENABLED = False

if not NUMBA_ENABLED:
    def njit(*args, **kwargs):
        """No-op stand-in for numba.njit selecting the pure-numpy path."""
        if args and callable(args[0]):
            return args[0]

        def wrap(func):
            return func

        return wrap


# channel indices, kept as module-level ints so njit code can close over them
L_AB, L_BA, L_CD, L_DC = 0, 1, 2, 3
R_AB, R_BA, R_CD, R_DC = 4, 5, 6, 7
U_AC, U_CA, U_BD, U_DB = 8, 9, 10, 11

# rk4 failure codes
EVOLVE_OK = 0
EVOLVE_DRIFT = 1
EVOLVE_NEGATIVE = 2


@njit(cache=True)
def fermi_occ(beta, mu, omega):
    """Occupation [1 + exp(beta*(omega - mu))]^-1, overflow-safe branch form."""
    x = beta * (omega - mu)
    if x >= 0.0:
        e = np.exp(-x)
        return e / (1.0 + e)
    return 1.0 / (1.0 + np.exp(x))


@njit(cache=True)
def fermi_pair(beta, mu, omega):
    """Occupation and hole factors sharing one stable branch.

    Both factors come out with small relative (not just absolute) error,
    which matters because entropic forces take logarithms of the rates;
    computing the hole factor as 1 - f would lose all significance when
    f is close to one.
    """
    x = beta * (omega - mu)
    if x >= 0.0:
        e = np.exp(-x)
        den = 1.0 + e
        return e / den, 1.0 / den
    e = np.exp(x)
    den = 1.0 + e
    return 1.0 / den, e / den


@njit(cache=True)
def rate_vector(eps_b, eps_u, kappa,
                beta_l, beta_r, beta_u,
                mu_l, mu_r, mu_u,
                gamma_l, gamma_r, gamma_u):
    """The 12 directed rate constants gamma_lam * f^(+/-) in channel order.

    Each excitation/de-excitation pair shares one occupation evaluation, so
    the fermionic sum rule k+ + k- = gamma holds to within an ulp and both
    partners keep full relative accuracy even deep in the Fermi tails.
    """
    w_ab = eps_b
    w_cd = eps_b + kappa
    w_ac = eps_u
    w_bd = eps_u + kappa

    k = np.empty(12)
    occ, hole = fermi_pair(beta_l, mu_l, w_ab)
    k[L_AB] = gamma_l * occ
    k[L_BA] = gamma_l * hole
    occ, hole = fermi_pair(beta_l, mu_l, w_cd)
    k[L_CD] = gamma_l * occ
    k[L_DC] = gamma_l * hole
    occ, hole = fermi_pair(beta_r, mu_r, w_ab)
    k[R_AB] = gamma_r * occ
    k[R_BA] = gamma_r * hole
    occ, hole = fermi_pair(beta_r, mu_r, w_cd)
    k[R_CD] = gamma_r * occ
    k[R_DC] = gamma_r * hole
    occ, hole = fermi_pair(beta_u, mu_u, w_ac)
    k[U_AC] = gamma_u * occ
    k[U_CA] = gamma_u * hole
    occ, hole = fermi_pair(beta_u, mu_u, w_bd)
    k[U_BD] = gamma_u * occ
    k[U_DB] = gamma_u * hole
    return k


@njit(cache=True)
def generator_matrix(k):
    """4x4 Markov generator W with W[j, i] = total rate i -> j.

    Forbidden channels (B<->C, A<->D) stay exactly zero; each diagonal entry
    is minus its column sum so columns sum to zero identically.
    """
    w = np.zeros((4, 4))
    w[1, 0] = k[L_AB] + k[R_AB]
    w[0, 1] = k[L_BA] + k[R_BA]
    w[3, 2] = k[L_CD] + k[R_CD]
    w[2, 3] = k[L_DC] + k[R_DC]
    w[2, 0] = k[U_AC]
    w[0, 2] = k[U_CA]
    w[3, 1] = k[U_BD]
    w[1, 3] = k[U_DB]
    for i in range(4):
        s = 0.0
        for j in range(4):
            if j != i:
                s += w[j, i]
        w[i, i] = -s
    return w


@njit(cache=True)
def solve4(a_in, b_in):
    """Solve a 4x4 dense system by Gaussian elimination with partial pivoting.

    Returns (x, ok); ok is False when a pivot vanishes.  Hand-rolled so the
    jitted and uncompiled paths share bitwise-identical arithmetic.
    """
    a = a_in.copy()
    b = b_in.copy()
    n = 4
    for col in range(n):
        piv = col
        big = abs(a[col, col])
        for row in range(col + 1, n):
            v = abs(a[row, col])
            if v > big:
                big = v
                piv = row
        if big == 0.0:
            return b, False
        if piv != col:
            for j in range(n):
                tmp = a[col, j]
                a[col, j] = a[piv, j]
                a[piv, j] = tmp
            tmp = b[col]
            b[col] = b[piv]
            b[piv] = tmp
        inv = 1.0 / a[col, col]
        for row in range(col + 1, n):
            fac = a[row, col] * inv
            if fac != 0.0:
                for j in range(col, n):
                    a[row, j] -= fac * a[col, j]
                b[row] -= fac * b[col]
    x = np.empty(n)
    for row in range(n - 1, -1, -1):
        s = b[row]
        for j in range(row + 1, n):
            s -= a[row, j] * x[j]
        x[row] = s / a[row, row]
    return x, True


@njit(cache=True)
def steady_rho(w):
    """Kernel of the generator, normalized: solve W rho = 0 with the last
    row replaced by the probability constraint sum(rho) = 1."""
    a = w.copy()
    for j in range(4):
        a[3, j] = 1.0
    b = np.zeros(4)
    b[3] = 1.0
    return solve4(a, b)


@njit(cache=True)
def cycle_legs(w, rho):
    """Net rates along the four legs of the cycle A->B->D->C->A.

    Order: (A->B via l+r), (B->D via u), (D->C via l+r), (C->A via u).
    At steady state all four coincide with the clockwise cycle flux.
    """
    legs = np.empty(4)
    legs[0] = w[1, 0] * rho[0] - w[0, 1] * rho[1]
    legs[1] = w[3, 1] * rho[1] - w[1, 3] * rho[3]
    legs[2] = w[2, 3] * rho[3] - w[3, 2] * rho[2]
    legs[3] = w[0, 2] * rho[2] - w[2, 0] * rho[0]
    return legs


@njit(cache=True)
def channel_fluxes(k, rho):
    """Net excitation-direction fluxes for the six (lead, pair) channels.

    Order: AB via l, AB via r, CD via l, CD via r, AC via u, BD via u.
    """
    g = np.empty(6)
    g[0] = k[L_AB] * rho[0] - k[L_BA] * rho[1]
    g[1] = k[R_AB] * rho[0] - k[R_BA] * rho[1]
    g[2] = k[L_CD] * rho[2] - k[L_DC] * rho[3]
    g[3] = k[R_CD] * rho[2] - k[R_DC] * rho[3]
    g[4] = k[U_AC] * rho[0] - k[U_CA] * rho[2]
    g[5] = k[U_BD] * rho[1] - k[U_DB] * rho[3]
    return g


@njit(cache=True)
def currents_vector(k, rho, eps_b, eps_u, kappa, mu_l, mu_r, mu_u):
    """Per-lead energy, particle and heat currents (l, r, u order).

    Positive values mean flow from the reservoir into the system.  Energy
    currents weight each channel flux by its transition energy; heat
    currents subtract mu_lam per transported particle.
    """
    g = channel_fluxes(k, rho)
    out = np.empty(9)
    je_l = eps_b * g[0] + (eps_b + kappa) * g[2]
    je_r = eps_b * g[1] + (eps_b + kappa) * g[3]
    je_u = eps_u * g[4] + (eps_u + kappa) * g[5]
    jn_l = g[0] + g[2]
    jn_r = g[1] + g[3]
    jn_u = g[4] + g[5]
    out[0] = je_l
    out[1] = je_r
    out[2] = je_u
    out[3] = jn_l
    out[4] = jn_r
    out[5] = jn_u
    out[6] = je_l - mu_l * jn_l
    out[7] = je_r - mu_r * jn_r
    out[8] = je_u - mu_u * jn_u
    return out


@njit(cache=True)
def schnakenberg(k, rho):
    """Entropy production rate, entropy flux rate and the six production
    summands, from the rate-log network form.

    Each production summand is (a - b) * ln(a / b) with a, b the directed
    one-way fluxes of a channel, hence individually non-negative.  The flux
    term per channel is -(a - b) * ln(k_fwd / k_bwd).  Requires strictly
    positive rates and populations; the wrapper validates.
    """
    fwd_k = np.empty(6)
    bwd_k = np.empty(6)
    fwd_p = np.empty(6)
    bwd_p = np.empty(6)
    # channels: (A->B, l), (A->B, r), (B->D, u), (D->C, l), (D->C, r), (C->A, u)
    fwd_k[0] = k[L_AB]; bwd_k[0] = k[L_BA]; fwd_p[0] = rho[0]; bwd_p[0] = rho[1]
    fwd_k[1] = k[R_AB]; bwd_k[1] = k[R_BA]; fwd_p[1] = rho[0]; bwd_p[1] = rho[1]
    fwd_k[2] = k[U_BD]; bwd_k[2] = k[U_DB]; fwd_p[2] = rho[1]; bwd_p[2] = rho[3]
    fwd_k[3] = k[L_DC]; bwd_k[3] = k[L_CD]; fwd_p[3] = rho[3]; bwd_p[3] = rho[2]
    fwd_k[4] = k[R_DC]; bwd_k[4] = k[R_CD]; fwd_p[4] = rho[3]; bwd_p[4] = rho[2]
    fwd_k[5] = k[U_CA]; bwd_k[5] = k[U_AC]; fwd_p[5] = rho[2]; bwd_p[5] = rho[0]

    terms = np.empty(6)
    sigma = 0.0
    phi = 0.0
    for c in range(6):
        a = fwd_k[c] * fwd_p[c]
        b = bwd_k[c] * bwd_p[c]
        flux = a - b
        terms[c] = flux * np.log(a / b)
        sigma += terms[c]
        phi -= flux * np.log(fwd_k[c] / bwd_k[c])
    return sigma, phi, terms


@njit(cache=True)
def rk4_evolve(w, rho0, dt, n_steps, sample_stride,
               renorm_tol, drift_tol, negative_tol):
    """Fixed-step classic 4th-order integration of d(rho)/dt = W rho.

    Samples are recorded at step 0, every ``sample_stride`` steps and at the
    final step.  Per step the simplex is policed: drift beyond ``drift_tol``
    or a population below ``-negative_tol`` aborts (fail codes 1 / 2);
    drift above ``renorm_tol`` is repaired by renormalization.

    Returns (times, samples, n_samples, fail_code, fail_step).
    """
    n_rec = n_steps // sample_stride + 2
    times = np.empty(n_rec)
    samples = np.empty((n_rec, 4))
    rho = rho0.copy()
    times[0] = 0.0
    samples[0, :] = rho
    n_out = 1
    k1 = np.empty(4)
    k2 = np.empty(4)
    k3 = np.empty(4)
    k4 = np.empty(4)
    tmp = np.empty(4)
    for step in range(1, n_steps + 1):
        for i in range(4):
            s = 0.0
            for j in range(4):
                s += w[i, j] * rho[j]
            k1[i] = s
        for i in range(4):
            tmp[i] = rho[i] + 0.5 * dt * k1[i]
        for i in range(4):
            s = 0.0
            for j in range(4):
                s += w[i, j] * tmp[j]
            k2[i] = s
        for i in range(4):
            tmp[i] = rho[i] + 0.5 * dt * k2[i]
        for i in range(4):
            s = 0.0
            for j in range(4):
                s += w[i, j] * tmp[j]
            k3[i] = s
        for i in range(4):
            tmp[i] = rho[i] + dt * k3[i]
        for i in range(4):
            s = 0.0
            for j in range(4):
                s += w[i, j] * tmp[j]
            k4[i] = s
        for i in range(4):
            rho[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])

        total = rho[0] + rho[1] + rho[2] + rho[3]
        drift = abs(total - 1.0)
        if drift > drift_tol:
            return times, samples, n_out, EVOLVE_DRIFT, step
        low = rho[0]
        for i in range(1, 4):
            if rho[i] < low:
                low = rho[i]
        if low < -negative_tol:
            return times, samples, n_out, EVOLVE_NEGATIVE, step
        if drift > renorm_tol:
            inv = 1.0 / total
            for i in range(4):
                rho[i] *= inv
        if step % sample_stride == 0 or step == n_steps:
            times[n_out] = step * dt
            samples[n_out, :] = rho
            n_out += 1
    return times, samples, n_out, EVOLVE_OK, n_steps
