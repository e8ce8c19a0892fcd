"""Shared test utilities: seeded random operators, states and settings."""

import numpy as np

from bellsim import DenseOperator, PairingScheme, phase_flip_observable, polar_observable

SQRT2 = np.sqrt(2.0)


def random_hermitian(rng, dim):
    m = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return DenseOperator((m + m.conj().T) / 2.0)


def random_operator(rng, dim):
    return DenseOperator(rng.standard_normal((dim, dim))
                         + 1j * rng.standard_normal((dim, dim)))


def random_unit(rng):
    v = rng.standard_normal(3)
    return v / np.linalg.norm(v)


def random_qubit_observable(rng):
    """Haar-ish random dichotomic qubit observable n.sigma."""
    theta = np.arccos(rng.uniform(-1.0, 1.0))
    return polar_observable(theta, rng.uniform(0.0, 2 * np.pi))


def random_phase_observable(rng, scheme: PairingScheme):
    return phase_flip_observable(rng.uniform(0.0, 2 * np.pi, len(scheme.pairs)), scheme)


def schmidt_rank_bruteforce(psi, tol=1e-8):
    """Independent Schmidt-rank oracle: build the reduced density matrix of
    the first factor by explicit summation and count its eigenvalues whose
    square roots exceed tol."""
    da, db = psi.shape
    amps = psi.amplitudes.reshape(da, db)
    rho = np.zeros((da, da), dtype=np.complex128)
    for i in range(da):
        for k in range(da):
            acc = 0.0 + 0.0j
            for j in range(db):
                acc += amps[i, j] * np.conj(amps[k, j])
            rho[i, k] = acc
    eigs = np.linalg.eigvalsh(rho)
    return int(np.count_nonzero(np.sqrt(np.clip(eigs, 0.0, None)) > tol))
