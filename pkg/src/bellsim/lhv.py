"""Monte-Carlo estimation of local-hidden-variable correlators.

A model is a hidden-variable distribution plus two deterministic +-1 response
functions, one per side; by interface shape the A response never sees the B
setting and vice versa.  Estimates are computed in fixed blocks of samples,
each block drawing from its own child seed, so sharding blocks across workers
cannot change the merged result.  All per-sample products are accumulated as
exact integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels

BLOCK_SIZE = 1 << 16
DEFAULT_SAMPLES = 1_000_000


@dataclass(frozen=True)
class LhvEstimate:
    """Monte-Carlo mean with its standard error (sample std / sqrt(n))."""

    mean: float
    std_error: float
    samples: int
    dichotomy_failures: int = 0


@dataclass(frozen=True)
class LhvModel:
    """Hidden-variable sampler plus deterministic +-1 response functions.

    ``sample(rng, n)`` returns an (n, 3) array of unit hidden-variable
    vectors; ``response_a(setting, lam)`` / ``response_b(setting, lam)``
    return +-1 integer arrays over the batch.  Models must satisfy the
    anti-correlation constraint response_b(v, lam) = -response_a(v, lam);
    construction probes it on random draws.
    """

    name: str
    sample: object
    response_a: object
    response_b: object
    kernel: str | None = field(default=None, repr=False)

    def __post_init__(self):
        probe = np.random.default_rng(0xBE11)
        lam = self.sample(probe, 64)
        if lam.shape != (64, 3):
            raise ValueError("sampler must return an (n, 3) array")
        for _ in range(4):
            v = _random_unit(probe)
            ra = np.asarray(self.response_a(v, lam))
            rb = np.asarray(self.response_b(v, lam))
            if not np.all(np.abs(ra) == 1) or not np.all(np.abs(rb) == 1):
                raise ValueError("responses must take values in {-1, +1}")
            if not np.array_equal(rb, -ra):
                raise ValueError(
                    "model violates the anti-correlation constraint "
                    "response_b(v, lam) = -response_a(v, lam)"
                )


def _random_unit(rng) -> np.ndarray:
    v = rng.standard_normal(3)
    return v / np.linalg.norm(v)


def uniform_sphere(rng, n: int) -> np.ndarray:
    """n directions uniform on the unit sphere, via normalized Gaussians."""
    g = rng.standard_normal((n, 3))
    return g / np.maximum(np.linalg.norm(g, axis=1, keepdims=True), 1e-300)


def _sign_response(setting, lam):
    # sign(0) counts as +1; a measure-zero convention
    return np.where(lam @ np.asarray(setting, dtype=float) >= 0.0, 1, -1)


SIGN_MODEL = LhvModel(
    name="sign",
    sample=uniform_sphere,
    response_a=_sign_response,
    response_b=lambda setting, lam: -_sign_response(setting, lam),
    kernel="sign",
)

MODELS = {SIGN_MODEL.name: SIGN_MODEL}


def register_model(model: LhvModel) -> None:
    """Make a custom model available to lookup (and the command line)."""
    MODELS[model.name] = model


def get_model(name: str) -> LhvModel:
    try:
        return MODELS[name]
    except KeyError:
        raise KeyError(f"unknown LHV model {name!r}; known: {sorted(MODELS)}") from None


def _unit(vec, label: str) -> np.ndarray:
    v = np.asarray(vec, dtype=float)
    if v.shape != (3,) or abs(np.linalg.norm(v) - 1.0) > 1e-9:
        raise ValueError(f"setting {label} must be a unit 3-vector, got {vec}")
    return v


def _block_rng(seed: int, block: int) -> np.random.Generator:
    # one child stream per fixed-size block; the merge over blocks is then
    # independent of how blocks are distributed across workers
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(block,)))


def _iter_blocks(n: int):
    block = 0
    done = 0
    while done < n:
        m = min(BLOCK_SIZE, n - done)
        yield block, m
        done += m
        block += 1


def estimate_E(model: LhvModel, a, b, n: int = DEFAULT_SAMPLES,
               seed: int = 0) -> LhvEstimate:
    """Monte-Carlo estimate of E(a, b) = <A(a, lam) B(b, lam)>."""
    a, b = _unit(a, "a"), _unit(b, "b")
    if n < 1:
        raise ValueError("need at least one sample")
    total = 0
    fast = model.kernel == "sign"
    for block, m in _iter_blocks(n):
        rng = _block_rng(seed, block)
        if fast:
            total += _kernels.sign_products(rng.standard_normal((m, 3)), a, b)
        else:
            lam = model.sample(rng, m)
            total += int(np.sum(
                np.asarray(model.response_a(a, lam), dtype=np.int64)
                * np.asarray(model.response_b(b, lam), dtype=np.int64)
            ))
    mean = total / n
    var = (n - n * mean * mean) / (n - 1) if n > 1 else 0.0  # products are +-1
    return LhvEstimate(mean=mean, std_error=math.sqrt(max(var, 0.0) / n), samples=n)


def chsh_lhv(model: LhvModel, a, a_p, b, b_p, n: int = DEFAULT_SAMPLES,
             seed: int = 0) -> LhvEstimate:
    """Monte-Carlo mean of the per-sample CHSH combination
    A(a)B(b) + A(a')B(b) + A(a)B(b') - A(a')B(b').

    Every draw evaluates the combination with one shared hidden variable, so
    each sample lands exactly on -2 or +2; ``dichotomy_failures`` counts the
    samples that did not (always zero for a valid model).
    """
    a, a_p, b, b_p = (_unit(v, lbl) for v, lbl in
                      zip((a, a_p, b, b_p), ("a", "a'", "b", "b'")))
    if n < 1:
        raise ValueError("need at least one sample")
    total = 0
    bad = 0
    fast = model.kernel == "sign"
    for block, m in _iter_blocks(n):
        rng = _block_rng(seed, block)
        if fast:
            t, k = _kernels.sign_chsh(rng.standard_normal((m, 3)), a, a_p, b, b_p)
        else:
            lam = model.sample(rng, m)
            ra = np.asarray(model.response_a(a, lam), dtype=np.int64)
            rap = np.asarray(model.response_a(a_p, lam), dtype=np.int64)
            rb = np.asarray(model.response_b(b, lam), dtype=np.int64)
            rbp = np.asarray(model.response_b(b_p, lam), dtype=np.int64)
            c = ra * rb + rap * rb + ra * rbp - rap * rbp
            t = int(np.sum(c))
            k = int(np.count_nonzero(c * c != 4))
        total += t
        bad += k
    mean = total / n
    var = (4.0 * n - n * mean * mean) / (n - 1) if n > 1 else 0.0  # c^2 = 4
    return LhvEstimate(mean=mean, std_error=math.sqrt(max(var, 0.0) / n),
                       samples=n, dichotomy_failures=bad)


def singlet_quantum_E(a, b) -> float:
    """Quantum reference for the spin singlet: E(a, b) = -cos(theta_ab)."""
    return -float(np.dot(_unit(a, "a"), _unit(b, "b")))


def singlet_quantum_chsh(a, a_p, b, b_p) -> float:
    """Quantum CHSH value on the singlet at the given measurement directions."""
    return (singlet_quantum_E(a, b) + singlet_quantum_E(a_p, b)
            + singlet_quantum_E(a, b_p) - singlet_quantum_E(a_p, b_p))
