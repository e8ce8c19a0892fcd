"""Maximize |correlator| over observable parameters for a named scenario.

The search is a coarse scan (a midpoint grid with 8 points per dimension, or
seeded uniform sampling once the full grid would exceed the evaluation cap)
followed by Nelder-Mead refinement started from the best scan points.  The
whole pipeline is deterministic given (scenario, restarts, seed); restarts
only ever add starting points, so the best value is monotone in them.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .linalg import ATOL_OPT
from .observables import TSIRELSON_BOUND
from . import correlators as co

GRID_POINTS_PER_DIM = 8
EVALUATION_CAP = 1_000_000
TWO_PI = 2.0 * np.pi

PHASE_DOMAIN = (0.0, TWO_PI)
POLAR_DOMAIN = (0.0, np.pi)


@dataclass(frozen=True)
class Scenario:
    """A (state family, observable family, parameter domain) triple.

    ``evaluator`` maps a parameter array of shape (..., d) to correlator
    values of shape (...); ``kinds`` labels each parameter "phase" or
    "polar"; ``polar_mate`` maps a polar index to the phase index it pairs
    with, so canonicalizing theta -> 2 pi - theta can shift the mate by pi
    without changing the value.
    """

    name: str
    evaluator: object
    domain: tuple
    kinds: tuple
    polar_mate: dict = field(default_factory=dict)
    classical_bound: float = co.CHSH_CLASSICAL_BOUND
    quantum_bound: float = TSIRELSON_BOUND
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.domain:
            raise ValueError("scenario needs a nonempty parameter domain")
        if len(self.kinds) != len(self.domain):
            raise ValueError("one kind label per parameter required")

    @property
    def ndim(self) -> int:
        return len(self.domain)


@dataclass(frozen=True)
class OptimizationResult:
    best_value: float
    best_settings: tuple
    evaluations: int
    converged: bool


def _canonicalize(scenario: Scenario, x: np.ndarray) -> np.ndarray:
    """Wrap settings into their domains without changing the evaluator value."""
    out = np.array(x, dtype=float)
    for i, kind in enumerate(scenario.kinds):
        out[i] = out[i] % TWO_PI
        if kind == "polar" and out[i] > np.pi:
            out[i] = TWO_PI - out[i]
            mate = scenario.polar_mate.get(i)
            if mate is not None:
                out[mate] = (out[mate] + np.pi) % TWO_PI
    return out


def _scan_points(scenario: Scenario, rng: np.random.Generator) -> np.ndarray:
    lo = np.array([d[0] for d in scenario.domain])
    hi = np.array([d[1] for d in scenario.domain])
    d = scenario.ndim
    if GRID_POINTS_PER_DIM ** d <= EVALUATION_CAP:
        axes = [lo[i] + (np.arange(GRID_POINTS_PER_DIM) + 0.5)
                * (hi[i] - lo[i]) / GRID_POINTS_PER_DIM for i in range(d)]
        mesh = np.meshgrid(*axes, indexing="ij")
        return np.stack([m.ravel() for m in mesh], axis=-1)
    return rng.uniform(lo, hi, size=(EVALUATION_CAP, d))


def maximize_violation(scenario: Scenario, restarts: int = 8,
                       seed: int = 0) -> OptimizationResult:
    """Largest |correlator| over the scenario domain.

    Refines the top ``restarts`` scan points with Nelder-Mead; ties between
    refined optima break toward the lexicographically smallest settings
    vector.  Non-convergence of the winning run is flagged, never raised.
    """
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    rng = np.random.default_rng(seed)
    points = _scan_points(scenario, rng)
    values = np.abs(np.asarray(scenario.evaluator(points), dtype=float))
    evaluations = points.shape[0]
    order = np.argsort(-values, kind="stable")[:restarts]

    def objective(x):
        return -abs(float(scenario.evaluator(x)))

    best = None  # (value, settings tuple, converged)
    for idx in order:
        res = minimize(objective, points[idx], method="Nelder-Mead",
                       options=dict(xatol=ATOL_OPT, fatol=ATOL_OPT,
                                    maxiter=2000, maxfev=4000))
        evaluations += int(res.nfev)
        settings = tuple(_canonicalize(scenario, res.x).tolist())
        value = abs(float(scenario.evaluator(np.array(settings))))
        cand = (value, settings, bool(res.success))
        if best is None or value > best[0] or (value == best[0] and settings < best[1]):
            best = cand
    return OptimizationResult(best_value=best[0], best_settings=best[1],
                              evaluations=evaluations, converged=best[2])


def table_gisin(n_values, restarts: int = 8, seed: int = 0):
    """Maximal CHSH value of the N-family state for each N, as (N, max) rows."""
    rows = []
    for n in n_values:
        result = maximize_violation(make_scenario("gisin", n=n),
                                    restarts=restarts, seed=seed)
        rows.append((int(n), result.best_value))
    return rows


# ---------------------------------------------------------------------------
# Scenario factories
# ---------------------------------------------------------------------------

def _phase_scenario(name, evaluator, n_phases, classical=co.CHSH_CLASSICAL_BOUND,
                    quantum=TSIRELSON_BOUND, params=None):
    return Scenario(
        name=name,
        evaluator=evaluator,
        domain=(PHASE_DOMAIN,) * n_phases,
        kinds=("phase",) * n_phases,
        classical_bound=classical,
        quantum_bound=quantum,
        params=params or {},
    )


def _polar8_scenario(name, evaluator, params=None):
    # parameter order: theta, theta', omega, omega', alpha, alpha', beta, beta'
    return Scenario(
        name=name,
        evaluator=evaluator,
        domain=(POLAR_DOMAIN,) * 4 + (PHASE_DOMAIN,) * 4,
        kinds=("polar",) * 4 + ("phase",) * 4,
        polar_mate={0: 4, 1: 5, 2: 6, 3: 7},
        params=params or {},
    )


def scenario_chsh_phase() -> Scenario:
    return _phase_scenario(
        "chsh-phase", lambda p: co.chsh_phi0_phase(*(p[..., i] for i in range(4))), 4
    )


def scenario_chsh_polar() -> Scenario:
    return _polar8_scenario(
        "chsh-polar", lambda p: co.chsh_phi0_polar(*(p[..., i] for i in range(8)))
    )


def scenario_product_state() -> Scenario:
    return _polar8_scenario(
        "product-state",
        lambda p: co.chsh_product_plusminus(*(p[..., i] for i in range(8))),
    )


def scenario_gisin(n) -> Scenario:
    n = int(n)
    if n < 3:
        raise ValueError(f"family parameter N must be >= 3, got {n}")
    return _polar8_scenario(
        "gisin",
        lambda p: co.chsh_gisin(n, *(p[..., i] for i in range(8))),
        params={"n": n},
    )


def scenario_r_state(r) -> Scenario:
    r = float(r)
    return _polar8_scenario(
        "r-state",
        lambda p: co.chsh_rstate(r, *(p[..., i] for i in range(8))),
        params={"r": r},
    )


def scenario_spin(j) -> Scenario:
    twoj = int(round(2 * float(j)))
    if abs(2 * float(j) - twoj) > 1e-9 or twoj < 1:
        raise ValueError(f"spin must be a positive integer or half-integer, got {j}")
    npairs = twoj // 2 if twoj % 2 == 0 else (twoj + 1) // 2

    def evaluator(p):
        return co.chsh_spin_j(
            twoj / 2.0,
            p[..., 0:npairs],
            p[..., npairs:2 * npairs],
            p[..., 2 * npairs:3 * npairs],
            p[..., 3 * npairs:4 * npairs],
        )

    return _phase_scenario(f"spin-{twoj / 2:g}", evaluator, 4 * npairs,
                           params={"j": twoj / 2.0})


def scenario_squeezed(lam) -> Scenario:
    lam = float(lam)
    if not 0.0 < lam < 1.0:
        raise ValueError("squeezing parameter must satisfy 0 < lam < 1")
    return _phase_scenario(
        "squeezed",
        lambda p: co.chsh_squeezed(lam, *(p[..., i] for i in range(4))),
        4,
        params={"lam": lam},
    )


def scenario_coherent(eta, sigma, phi) -> Scenario:
    eta, sigma, phi = float(eta), float(sigma), float(phi)
    return _phase_scenario(
        "coherent",
        lambda p: co.chsh_coherent(eta, sigma, phi, *(p[..., i] for i in range(4))),
        4,
        params={"eta": eta, "sigma": sigma, "phi": phi},
    )


def scenario_mermin3() -> Scenario:
    return _phase_scenario(
        "mermin3",
        lambda p: co.mermin3_ghz(*(p[..., i] for i in range(6))),
        6,
        classical=co.MERMIN3_CLASSICAL_BOUND,
        quantum=co.MERMIN3_QUANTUM_BOUND,
    )


def scenario_mermin4() -> Scenario:
    return _phase_scenario(
        "mermin4",
        lambda p: co.mermin4_ghz(*(p[..., i] for i in range(8))),
        8,
        classical=co.MERMIN4_CLASSICAL_BOUND,
        quantum=co.MERMIN4_QUANTUM_BOUND,
    )


SCENARIO_FACTORIES = {
    "chsh-phase": (scenario_chsh_phase, ()),
    "chsh-polar": (scenario_chsh_polar, ()),
    "product-state": (scenario_product_state, ()),
    "gisin": (scenario_gisin, ("n",)),
    "r-state": (scenario_r_state, ("r",)),
    "spin": (scenario_spin, ("j",)),
    "squeezed": (scenario_squeezed, ("lam",)),
    "coherent": (scenario_coherent, ("eta", "sigma", "phi")),
    "mermin3": (scenario_mermin3, ()),
    "mermin4": (scenario_mermin4, ()),
}


def make_scenario(name: str, **params) -> Scenario:
    """Build a registered scenario; raises KeyError for unknown names and
    ValueError when a required parameter is missing."""
    try:
        factory, required = SCENARIO_FACTORIES[name]
    except KeyError:
        raise KeyError(
            f"unknown scenario {name!r}; known: {sorted(SCENARIO_FACTORIES)}"
        ) from None
    missing = [k for k in required if params.get(k) is None]
    if missing:
        raise ValueError(f"scenario {name!r} requires parameters {missing}")
    return factory(**{k: params[k] for k in required})
