"""Shared fixtures and independent oracles for the test suite."""
import numpy as np
import pytest

from qdicc import BathConfig, Lead, Reservoir, SystemParams

# fixed parameter set used for the sign-structure reproductions: attractive
# coupling with |kappa| > eps_b (level swap), right lead at beta=1, mu=1,
# upper-lead chemical potential above both upper-dot transition energies so
# the upper dot stays loaded
EPS_B = 1.0
EPS_U = 2.5
KAPPA_ATTRACTIVE = -1.5
KAPPA_REPULSIVE = +1.5
BETA_R = 1.0
MU_R = 1.0
MU_U = 3.0


@pytest.fixture(scope="session")
def attractive_system():
    return SystemParams(eps_b=EPS_B, eps_u=EPS_U, kappa=KAPPA_ATTRACTIVE)


@pytest.fixture(scope="session")
def repulsive_system():
    return SystemParams(eps_b=EPS_B, eps_u=EPS_U, kappa=KAPPA_REPULSIVE)


def make_baths(beta_l, beta_r, beta_u, mu_l, mu_r, mu_u,
               gamma_l=1.0, gamma_r=1.0, gamma_u=1.0):
    return BathConfig(
        l=Reservoir(Lead.L, beta=beta_l, mu=mu_l, gamma=gamma_l),
        r=Reservoir(Lead.R, beta=beta_r, mu=mu_r, gamma=gamma_r),
        u=Reservoir(Lead.U, beta=beta_u, mu=mu_u, gamma=gamma_u),
    )


def equal_baths(beta, mu, gamma=1.0):
    return make_baths(beta, beta, beta, mu, mu, mu, gamma, gamma, gamma)


def gibbs_state(sys, beta, mu):
    """Grand-canonical stationary weights exp(-beta (eps_i - mu n_i)).

    Independent of the package's eigenenergy helper: energies and occupation
    numbers are written out from the model definition directly.
    """
    energies = np.array([0.0, sys.eps_b, sys.eps_u, sys.eps_b + sys.eps_u + sys.kappa])
    occupation = np.array([0.0, 1.0, 1.0, 2.0])
    w = np.exp(-beta * (energies - mu * occupation))
    return w / w.sum()


def random_system(rng, kappa_range=(-3.0, 3.0)):
    eps_b = rng.uniform(0.05, 3.0)
    eps_u = rng.uniform(eps_b + 0.05, 5.0)
    kappa = rng.uniform(*kappa_range)
    return SystemParams(eps_b=eps_b, eps_u=eps_u, kappa=kappa)


def random_baths(rng, equal_gamma=True):
    betas = rng.uniform(0.1, 5.0, 3)
    mus = rng.uniform(-3.0, 3.0, 3)
    if equal_gamma:
        gammas = (1.0, 1.0, 1.0)
    else:
        gammas = tuple(rng.uniform(0.2, 3.0, 3))
    return make_baths(betas[0], betas[1], betas[2], mus[0], mus[1], mus[2], *gammas)
