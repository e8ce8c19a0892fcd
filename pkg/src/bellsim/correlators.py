"""Closed-form correlators for each state family.

Every function here is the algebraic expectation of the CHSH (or Mermin)
combination on its state family; each one is cross-checked against the
generic matrix route in the test suite.  All formulas broadcast over numpy
arrays, so a batch of parameter points evaluates in one call.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import DenseOperator, StateVector, expectation
from .observables import TSIRELSON_BOUND

CHSH_CLASSICAL_BOUND = 2.0
MERMIN3_CLASSICAL_BOUND = 2.0
MERMIN3_QUANTUM_BOUND = 4.0
MERMIN4_CLASSICAL_BOUND = 2.0
MERMIN4_QUANTUM_BOUND = 4.0 * math.sqrt(2.0)

# Standard maximizing phases (alpha, alpha', beta, beta') for the cos(a+b)
# family; they yield 2 sqrt(2) on the first Bell state.
STANDARD_CHSH_ANGLES = (0.0, np.pi / 2, -np.pi / 4, np.pi / 4)
# Same combination for the cos(a-b) family (spin singlets).
STANDARD_CHSH_ANGLES_DIFF = (0.0, np.pi / 2, np.pi / 4, -np.pi / 4)
# Maximizing phases (a, a', b, b', c, c') for the order-3 Mermin form.
STANDARD_MERMIN3_ANGLES = (0.0, np.pi / 2, -np.pi / 4, np.pi / 4, -np.pi / 4, np.pi / 4)
# Each party at (d, d + pi/2) with 4d = pi/4 maximizes the order-4 form.
STANDARD_MERMIN4_ANGLES = tuple(
    v for _ in range(4) for v in (np.pi / 16, np.pi / 16 + np.pi / 2)
)

_M4_SIGNS = (-1.0, 1.0, 1.0, -1.0, -1.0)


@dataclass(frozen=True)
class CorrelatorReport:
    """A correlator value classified against its classical/quantum bounds."""

    value: float
    classical_bound: float
    quantum_bound: float
    violated: bool
    settings: tuple = ()

    def __post_init__(self):
        if abs(self.value) > self.quantum_bound + 1e-9:
            raise ValueError(
                f"|value| = {abs(self.value)} exceeds the quantum bound "
                f"{self.quantum_bound}"
            )


def generic_correlator(state: StateVector, operator: DenseOperator,
                       classical_bound: float = CHSH_CLASSICAL_BOUND,
                       quantum_bound: float = TSIRELSON_BOUND,
                       settings: tuple = ()) -> CorrelatorReport:
    """Matrix-route correlator <psi|O|psi> classified against its bounds.

    Violation is strict: |value| must exceed the classical bound, threshold
    cases count as non-violations.
    """
    val = expectation(operator, state)
    if operator.hermitian and abs(val.imag) > 1e-10:
        raise ValueError(f"Hermitian expectation came out complex: {val}")
    value = float(val.real)
    settings_t = tuple(np.atleast_1d(settings).tolist()) if np.size(settings) else ()
    return CorrelatorReport(
        value=value,
        classical_bound=float(classical_bound),
        quantum_bound=float(quantum_bound),
        violated=bool(abs(value) > classical_bound),
        settings=settings_t,
    )


# ---------------------------------------------------------------------------
# Two-qubit closed forms
# ---------------------------------------------------------------------------

def chsh_phi0_phase(alpha, alpha_p, beta, beta_p):
    """CHSH on the first Bell state with phase-flip observables:
    cos(a+b) + cos(a'+b) + cos(a+b') - cos(a'+b')."""
    return (np.cos(alpha + beta) + np.cos(alpha_p + beta)
            + np.cos(alpha + beta_p) - np.cos(alpha_p + beta_p))


def _e_phi0_polar(theta, omega, alpha, beta):
    return np.cos(theta) * np.cos(omega) + np.sin(theta) * np.sin(omega) * np.cos(alpha + beta)


def chsh_phi0_polar(theta, theta_p, omega, omega_p, alpha, alpha_p, beta, beta_p):
    """CHSH on the first Bell state with full polar observables; reduces to
    chsh_phi0_phase at theta = theta' = omega = omega' = pi/2."""
    return (_e_phi0_polar(theta, omega, alpha, beta)
            + _e_phi0_polar(theta_p, omega, alpha_p, beta)
            + _e_phi0_polar(theta, omega_p, alpha, beta_p)
            - _e_phi0_polar(theta_p, omega_p, alpha_p, beta_p))


def gisin_ab(n, theta, omega, alpha, beta):
    """Single-setting correlator <A (x) B> on the N-family state."""
    s3 = math.sqrt(n - 3.0)
    return (np.cos(theta) * np.cos(omega) * (n - 4.0)
            + 2.0 * np.cos(theta) * np.sin(omega) * (1.0 - s3) * np.cos(beta)
            + 2.0 * np.sin(theta) * np.cos(omega) * (1.0 - s3) * np.cos(alpha)
            + 2.0 * np.sin(theta) * np.sin(omega)
            * (s3 * np.cos(alpha + beta) + np.cos(alpha - beta))) / float(n)


def chsh_gisin(n, theta, theta_p, omega, omega_p, alpha, alpha_p, beta, beta_p):
    """CHSH on the N-family state with polar observables."""
    if n < 3:
        raise ValueError(f"family parameter N must be >= 3, got {n}")
    return (gisin_ab(n, theta, omega, alpha, beta)
            + gisin_ab(n, theta_p, omega, alpha_p, beta)
            + gisin_ab(n, theta, omega_p, alpha, beta_p)
            - gisin_ab(n, theta_p, omega_p, alpha_p, beta_p))


def chsh_rstate(r, theta, theta_p, omega, omega_p, alpha, alpha_p, beta, beta_p):
    """CHSH on (|+-> + r|-+>)/sqrt(1+r^2) with polar observables."""
    k = 2.0 * r / (1.0 + r * r)

    def e(t, o, a, b):
        return k * np.sin(t) * np.sin(o) * np.cos(a - b) - np.cos(t) * np.cos(o)

    return (e(theta, omega, alpha, beta) + e(theta_p, omega, alpha_p, beta)
            + e(theta, omega_p, alpha, beta_p) - e(theta_p, omega_p, alpha_p, beta_p))


def chsh_product_plusminus(theta, theta_p, omega, omega_p, *_ignored_phases):
    """CHSH on the product state |+-> with polar observables.  The phases drop
    out; the value is bounded by 2 for every setting."""
    return (-np.cos(theta) * np.cos(omega) - np.cos(theta_p) * np.cos(omega)
            - np.cos(theta) * np.cos(omega_p) + np.cos(theta_p) * np.cos(omega_p))


# ---------------------------------------------------------------------------
# Spin singlets
# ---------------------------------------------------------------------------

def chsh_spin1(alpha, alpha_p, beta, beta_p):
    """CHSH on the spin-1 singlet with the |m> <-> |-m> phase observables:
    (2/3) (1 + cos(a-b) + cos(a'-b) + cos(a-b') - cos(a'-b'))."""
    return (2.0 / 3.0) * (1.0 + np.cos(alpha - beta) + np.cos(alpha_p - beta)
                          + np.cos(alpha - beta_p) - np.cos(alpha_p - beta_p))


def chsh_spin_j(j, alphas, alphas_p, betas, betas_p):
    """CHSH on the spin-j singlet with per-pair phases (last axis indexes the
    (m, -m) pairs).

    Each pair contributes a cos(a-b) CHSH block scaled by 2/(2j+1); integer j
    adds the unpaired-|0> constant 2/(2j+1), half-integer j flips the overall
    sign.
    """
    twoj = int(round(2 * j))
    a, ap = np.asarray(alphas, dtype=float), np.asarray(alphas_p, dtype=float)
    b, bp = np.asarray(betas, dtype=float), np.asarray(betas_p, dtype=float)
    npairs = twoj // 2 if twoj % 2 == 0 else (twoj + 1) // 2
    if a.shape[-1] != npairs:
        raise ValueError(f"spin j={j} needs {npairs} phases per observable")
    combo = (np.cos(a - b) + np.cos(ap - b) + np.cos(a - bp) - np.cos(ap - bp)).sum(axis=-1)
    scale = 2.0 / (twoj + 1.0)
    if twoj % 2 == 0:
        return scale * (1.0 + combo)
    return -scale * combo


def spin_j_max(j) -> float:
    """Largest |CHSH| on the spin-j singlet: 2 sqrt(2) for half-integer j,
    (2/(2j+1)) (1 + 2j sqrt(2)) for integer j."""
    twoj = int(round(2 * j))
    if twoj % 2:
        return TSIRELSON_BOUND
    return (2.0 / (twoj + 1.0)) * (1.0 + twoj * math.sqrt(2.0))


# ---------------------------------------------------------------------------
# Fock-space families
# ---------------------------------------------------------------------------

def coherent_pair_series(x, max_terms: int = 60, rel_tol: float = 1e-15):
    """Sum of x^(4n+1)/sqrt((2n)!(2n+1)!), the single-mode factor of the
    coherent-state overlap sum.  Stops once a term drops below rel_tol of the
    partial sum."""
    total = 0.0
    for n in range(max_terms):
        term = float(x) ** (4 * n + 1) / math.sqrt(
            math.factorial(2 * n) * math.factorial(2 * n + 1)
        )
        total += term
        if abs(term) < rel_tol * max(abs(total), 1e-300):
            break
    return total


def coherent_omega(eta, sigma, phi):
    """exp(-(eta^2+sigma^2)) / (1 + cos(phi) exp(-2(eta^2+sigma^2)))."""
    s = eta * eta + sigma * sigma
    return np.exp(-s) / (1.0 + np.cos(phi) * np.exp(-2.0 * s))


def chsh_coherent(eta, sigma, phi, alpha, alpha_p, beta, beta_p,
                  max_terms: int = 60):
    """CHSH on the entangled coherent state with even/odd phase observables.

    4 Omega Delta [ (cos a cos b - cos(phi) sin a sin b) + (a', b) + (a, b')
    - (a', b') ] with Delta the separable double series.
    """
    delta = coherent_pair_series(eta, max_terms) * coherent_pair_series(sigma, max_terms)
    om = coherent_omega(eta, sigma, phi)
    cp = np.cos(phi)

    def term(a, b):
        return np.cos(a) * np.cos(b) - cp * np.sin(a) * np.sin(b)

    return 4.0 * om * delta * (term(alpha, beta) + term(alpha_p, beta)
                               + term(alpha, beta_p) - term(alpha_p, beta_p))


def chsh_squeezed(lam, alpha, alpha_p, beta, beta_p):
    """CHSH on the two-mode squeezed state:
    2 lam/(1+lam^2) (cos(a+b) + cos(a'+b) + cos(a+b') - cos(a'+b'))."""
    lam = np.asarray(lam, dtype=float)
    if np.any(lam <= 0.0) or np.any(lam >= 1.0):
        raise ValueError("squeezing parameter must satisfy 0 < lam < 1")
    pref = 2.0 * lam / (1.0 + lam * lam)
    return pref * (np.cos(alpha + beta) + np.cos(alpha_p + beta)
                   + np.cos(alpha + beta_p) - np.cos(alpha_p + beta_p))


# ---------------------------------------------------------------------------
# Mermin forms on GHZ states
# ---------------------------------------------------------------------------

def mermin3_ghz(alpha, alpha_p, beta, beta_p, gamma, gamma_p):
    """Order-3 Mermin combination on the 3-party GHZ state:
    cos(a'+b+c) + cos(a+b'+c) + cos(a+b+c') - cos(a'+b'+c').

    The matrix route on (|+++> - |--->)/sqrt(2) yields the negative of this
    expression; magnitudes agree, and the classification only uses |value|.
    """
    return (np.cos(alpha_p + beta + gamma) + np.cos(alpha + beta_p + gamma)
            + np.cos(alpha + beta + gamma_p) - np.cos(alpha_p + beta_p + gamma_p))


def mermin4_ghz(a, a_p, b, b_p, c, c_p, d, d_p):
    """Order-4 Mermin combination on the 4-party GHZ state, matching the
    matrix route sign for sign."""
    angles = (a, a_p, b, b_p, c, c_p, d, d_p)
    total = 0.0
    for bits in np.ndindex(2, 2, 2, 2):
        s = sum(angles[2 * party + bit] for party, bit in enumerate(bits))
        total = total + _M4_SIGNS[sum(bits)] * np.cos(s)
    return -total / 2.0
