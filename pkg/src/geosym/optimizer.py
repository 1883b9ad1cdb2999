"""Closest product states: G(psi), the symmetric-restricted maximum, and derived measures.

The general problem is solved by alternating slot updates (higher-order power
iteration): with every other factor fixed, ``|psi(..., a, ...)|`` is maximized
exactly by ``a = conj(v) / |v|`` where ``v`` is the contraction of ``psi`` with
the remaining factors.  The symmetric problem ``max_a |psi(a, ..., a)|`` uses a
shifted power iteration with a step-rejection safeguard, which makes the
objective non-decreasing for any starting shift.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from itertools import combinations

import numpy as np

from .tensor_core import (
    Contractor,
    ProductState,
    StateTensor,
    contract_all_but,
    equal_up_to_phase,
    evaluate_form,
    is_symmetric,
    phase_fix,
    random_unit_vector,
    symmetric_projection,
)

FIELDS = ("complex", "real")
_ZERO = 1e-14


@dataclass(frozen=True)
class OptimizerConfig:
    max_iterations: int = 2000
    convergence_tol: float = 1e-12
    restarts: int = 20
    master_seed: int = 0
    shift: float = 1.0
    field: str = "complex"
    # largest factor displacement allowed in the final sweep
    step_tol: float = 1e-10

    def __post_init__(self):
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if self.convergence_tol <= 0 or self.step_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if self.shift < 0:
            raise ValueError("shift must be >= 0")
        if self.field not in FIELDS:
            raise ValueError(f"field must be one of {FIELDS}")

    @property
    def real(self) -> bool:
        return self.field == "real"

    def with_(self, **changes) -> "OptimizerConfig":
        return replace(self, **changes)


@dataclass(frozen=True, eq=False)
class OptimizationResult:
    """Best product state found over all restarts.

    For operator problems ``overlap_g`` holds ``|<phi|X|phi>|`` and is not
    bounded by one.
    """

    overlap_g: float
    maximizer: ProductState
    iterations_used: int
    converged: bool
    restart_values: tuple
    restart_maximizers: tuple = field(default=(), repr=False)


def restart_rngs(master_seed: int, restarts: int) -> list[np.random.Generator]:
    """One independent stream per restart, keyed by ``(master_seed, index)``."""
    return [np.random.default_rng([int(master_seed), r]) for r in range(restarts)]


def _check_field(state: StateTensor, cfg: OptimizerConfig):
    if cfg.real and not state.is_real():
        raise ValueError("real-field optimization needs a state with real amplitudes")


def _initial_factors(rngs, n: int, k: int, real: bool) -> list[np.ndarray]:
    starts = [[random_unit_vector(k, rng, real) for _ in range(n)] for rng in rngs]
    return [np.array([s[j] for s in starts]) for j in range(n)]


def _alternating_ascent(contractor: Contractor, factors: list[np.ndarray], rngs,
                        cfg: OptimizerConfig):
    """Batched alternating updates; ``factors`` are modified in place."""
    n = contractor.n
    R = factors[0].shape[0]
    value = np.abs(contractor.value(factors))
    active = np.ones(R, dtype=bool)
    converged = np.zeros(R, dtype=bool)
    iters = np.zeros(R, dtype=int)
    for _ in range(cfg.max_iterations):
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        sub = [f[idx] for f in factors]
        step = np.zeros(idx.size)
        for s in range(n):
            v = contractor.contract(sub, s)
            if cfg.real:
                v = v.real
            norm = np.linalg.norm(v, axis=1)
            new = np.empty_like(sub[s])
            ok = norm > _ZERO
            new[ok] = v[ok].conj() / norm[ok, None]
            for j in np.flatnonzero(~ok):
                new[j] = random_unit_vector(contractor.k, rngs[idx[j]], cfg.real)
            step = np.maximum(step, np.linalg.norm(new - sub[s], axis=1))
            sub[s] = new
        for s in range(n):
            factors[s][idx] = sub[s]
        new_value = np.abs(contractor.value(sub))
        gain = new_value - value[idx]
        value[idx] = new_value
        iters[idx] += 1
        done = (gain < cfg.convergence_tol) & (step < cfg.step_tol)
        converged[idx[done]] = True
        active[idx[done]] = False
    return value, iters, converged


def closest_product_state(state: StateTensor, cfg: OptimizerConfig | None = None) -> OptimizationResult:
    """Maximize ``|<psi|a_1,...,a_N>|`` over product states (multi-start)."""
    cfg = cfg or OptimizerConfig()
    _check_field(state, cfg)
    n, k = state.n_parties, state.local_dim
    tensor = state.tensor.conj()
    if cfg.real:
        tensor = tensor.real
    contractor = Contractor(tensor)
    rngs = restart_rngs(cfg.master_seed, cfg.restarts)
    factors = _initial_factors(rngs, n, k, cfg.real)
    values, iters, converged = _alternating_ascent(contractor, factors, rngs, cfg)

    products = tuple(
        ProductState(tuple(phase_fix(factors[j][r]) for j in range(n))) for r in range(cfg.restarts)
    )
    best = int(np.argmax(values))
    maximizer = products[best]
    return OptimizationResult(
        overlap_g=abs(evaluate_form(state, maximizer)),
        maximizer=maximizer,
        iterations_used=int(iters[best]),
        converged=bool(converged[best]),
        restart_values=tuple(float(v) for v in values),
        restart_maximizers=products,
    )


def ascent_trace(state: StateTensor, start: ProductState, sweeps: int = 10) -> list[float]:
    """Objective after every single-slot update, starting from ``start``."""
    product = start
    trace = [abs(evaluate_form(state, product))]
    for _ in range(sweeps):
        for s in range(state.n_parties):
            v = contract_all_but(state, product, s)
            if np.linalg.norm(v) <= _ZERO:
                return trace
            product = product.replace(s, v.conj())
            trace.append(abs(evaluate_form(state, product)))
    return trace


def symmetric_ascent(tensor: np.ndarray, cfg: OptimizerConfig, shift: float | None = None):
    """Maximize ``|T(a, ..., a)|`` for a symmetric tensor ``T`` (already conjugated).

    Update ``a <- normalize(p * conj(v) + s * a)`` where ``v`` contracts all
    but one slot with ``a`` and ``p`` is the phase of the current value.  A
    step that lowers the objective is rejected and that restart's shift is
    doubled.  Returns ``(value, vector, restart_values, converged)``.
    """
    n = tensor.ndim
    k = tensor.shape[0]
    contractor = Contractor(tensor)
    rngs = restart_rngs(cfg.master_seed, cfg.restarts)
    a = np.array([random_unit_vector(k, rng, cfg.real) for rng in rngs])
    R = a.shape[0]
    shifts = np.full(R, cfg.shift if shift is None else shift, dtype=float)

    def contract(vecs):
        v = contractor.contract([vecs] * n, 0)
        return v.real if cfg.real else v

    v = contract(a)
    f = np.sum(v * a, axis=1)
    active = np.ones(R, dtype=bool)
    converged = np.zeros(R, dtype=bool)
    for _ in range(cfg.max_iterations):
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        fa = f[idx]
        mag = np.abs(fa)
        phase = np.where(mag > _ZERO, fa / np.where(mag > _ZERO, mag, 1.0), 1.0)
        if cfg.real:
            phase = phase.real
        cand = phase[:, None] * v[idx].conj() + shifts[idx, None] * a[idx]
        norm = np.linalg.norm(cand, axis=1)
        cand = np.where(norm[:, None] > _ZERO, cand / np.where(norm > _ZERO, norm, 1.0)[:, None], a[idx])
        v_c = contract(cand)
        f_c = np.sum(v_c * cand, axis=1)
        gain = np.abs(f_c) - mag
        accept = gain >= -1e-15
        step = np.linalg.norm(cand - a[idx], axis=1)
        good = idx[accept]
        a[good], v[good], f[good] = cand[accept], v_c[accept], f_c[accept]
        shifts[idx[~accept]] *= 2.0
        done = accept & (gain < cfg.convergence_tol) & (step < cfg.step_tol)
        # a rejected step that is already tiny means rounding noise at a maximum
        done |= ~accept & (step < cfg.step_tol)
        converged[idx[done]] = True
        active[idx[done]] = False
    values = np.abs(f)
    best = int(np.argmax(values))
    return float(values[best]), phase_fix(a[best]), tuple(float(x) for x in values), bool(converged[best])


def closest_symmetric_product_state(state: StateTensor, cfg: OptimizerConfig | None = None):
    """Maximize ``|psi(a, ..., a)|`` over unit ``a`` for a symmetric state.

    Returns ``(value, a)``.
    """
    cfg = cfg or OptimizerConfig()
    if not is_symmetric(state, 1e-8):
        raise ValueError("state is not permutationally symmetric")
    _check_field(state, cfg)
    tensor = symmetric_projection(state.tensor.conj(), state.n_parties)
    if cfg.real:
        tensor = tensor.real
    value, vec, _, _ = symmetric_ascent(tensor, cfg)
    return value, vec


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


def stationarity_residual(state: StateTensor, product: ProductState) -> float:
    """``max_s |v_s - L conj(a_s)|`` with ``L`` the form value; zero at critical points."""
    lam = evaluate_form(state, product)
    return max(
        float(np.linalg.norm(contract_all_but(state, product, s) - lam * product.factors[s].conj()))
        for s in range(state.n_parties)
    )


def symmetrize_maximizer(state: StateTensor, maximizer: ProductState, tol: float = 1e-8) -> np.ndarray:
    """Fold a maximizing product of ``N = 2**l`` factors into one vector ``z``.

    Factors are merged pairwise, ``b = (a1 + a2) / |a1 + a2|``, level by level.
    Using the difference ``a1 - a2`` instead only flips the sign of the form
    value, so the larger of the two is taken; this covers ``a1 = -a2`` and
    keeps the division well conditioned.  ``z`` lies in the span of the
    factors and ``|psi(z, ..., z)|`` equals the input value.
    """
    n = state.n_parties
    if not _is_power_of_two(n):
        raise ValueError(f"number of parties {n} is not a power of two")
    if maximizer.n_parties != n:
        raise ValueError("maximizer does not match the state")
    target = abs(evaluate_form(state, maximizer))
    if stationarity_residual(state, maximizer) > tol:
        raise ValueError("factors are not a stationary point of the form, so not a maximizer")
    vecs = [np.asarray(f) for f in maximizer.factors]
    while len(vecs) > 1:
        merged = []
        for a1, a2 in zip(vecs[::2], vecs[1::2]):
            plus, minus = a1 + a2, a1 - a2
            b = plus if np.linalg.norm(plus) >= np.linalg.norm(minus) else minus
            merged.append(b / np.linalg.norm(b))
        vecs = merged
    zeta = vecs[0]
    achieved = abs(evaluate_form(state, ProductState.symmetric(zeta, n)))
    if abs(achieved - target) > max(tol, 1e-12):
        raise ValueError("folding lost the form value; the input is not a maximizer")
    return zeta


def geometric_measure(g: float) -> float:
    """``1 - G**2``."""
    _check_overlap(g)
    return 1.0 - min(g, 1.0) ** 2


def log_geometric_measure(g: float) -> float:
    """``-2 log2 G``; infinite for ``G = 0``."""
    _check_overlap(g)
    if g == 0:
        return math.inf
    return 0.0 - 2.0 * math.log2(min(g, 1.0))


def _check_overlap(g: float):
    if not (0.0 <= g <= 1.0 + 1e-12):
        raise ValueError(f"overlap {g!r} outside [0, 1]")


def verify_symmetric_maximizer(result: OptimizationResult | ProductState, tol: float = 1e-6) -> bool:
    """True when every pair of factors is equal up to a phase."""
    product = result.maximizer if isinstance(result, OptimizationResult) else result
    return all(equal_up_to_phase(a, b, tol) for a, b in combinations(product.factors, 2))


def max_pair_deviation(product: ProductState) -> float:
    """Largest ``1 - |<a_i|a_j>|`` over factor pairs."""
    return max((1.0 - abs(np.vdot(a, b)) for a, b in combinations(product.factors, 2)), default=0.0)
