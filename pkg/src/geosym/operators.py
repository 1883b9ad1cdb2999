"""Expectation values of Hermitian operators over (symmetric) product states.

``g_hat(X)`` maximizes ``|<phi|X|phi>|`` over product states, ``g_hat_symmetric``
over ``|a>^{(x)N}``.  The general problem alternates exact slot updates: with
the other factors fixed the objective is ``a^dagger H a`` for an effective
``k x k`` Hermitian ``H``, maximized in absolute value by the eigenvector of
the eigenvalue of largest magnitude.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .optimizer import (
    OptimizationResult,
    OptimizerConfig,
    restart_rngs,
)
from .tensor_core import ProductState, phase_fix, random_unit_vector, symmetric_projection

PAULI = (
    np.eye(2, dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)
_ZERO = 1e-14


@dataclass(frozen=True, eq=False)
class HermitianOperator:
    n_parties: int
    local_dim: int
    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        dim = self.local_dim**self.n_parties
        if m.shape != (dim, dim):
            raise ValueError(f"expected a {dim}x{dim} matrix, got {m.shape}")
        if not np.all(np.isfinite(m)):
            raise ValueError("matrix entries must be finite")
        scale = max(np.linalg.norm(m), 1.0)
        if np.linalg.norm(m - m.conj().T) > 1e-10 * scale:
            raise ValueError("operator is not Hermitian")
        m = (m + m.conj().T) / 2
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def tensor(self) -> np.ndarray:
        """Shape ``(k,)*N + (k,)*N``: row (bra) indices first."""
        return self.matrix.reshape((self.local_dim,) * (2 * self.n_parties))

    def norm(self) -> float:
        return float(np.max(np.abs(np.linalg.eigvalsh(self.matrix))))

    def expectation(self, product: ProductState) -> float:
        phi = product.amplitudes()
        return float(np.real(np.vdot(phi, self.matrix @ phi)))


@dataclass(frozen=True)
class SymmetryClass:
    perm_invariant: bool
    perm_symmetric: bool
    positive: bool
    full_correlation_qubit: bool | None


# -- constructors ------------------------------------------------------------

def projector(state_amplitudes) -> np.ndarray:
    v = np.asarray(state_amplitudes, dtype=complex).reshape(-1)
    return np.outer(v, v.conj())


def pauli_string(indices) -> np.ndarray:
    """Kronecker product of Paulis; index 0 is the identity, 1..3 are x, y, z."""
    return reduce(np.kron, (PAULI[i] for i in indices))


def symmetric_projector(n: int, k: int) -> np.ndarray:
    eye = np.eye(k**n).reshape((k,) * n + (k**n,))
    return symmetric_projection(eye, n).reshape(k**n, k**n)


def operator_from_correlations(lam: np.ndarray) -> HermitianOperator:
    """``X = sum lam[i,j,...] sigma_i (x) sigma_j (x) ...`` for ``lam`` of shape (3,)*N."""
    lam = np.asarray(lam, dtype=float)
    n = lam.ndim
    m = np.zeros((2**n, 2**n), dtype=complex)
    for idx in itertools.product(range(3), repeat=n):
        if lam[idx] != 0:
            m += lam[idx] * pauli_string([i + 1 for i in idx])
    return HermitianOperator(n, 2, m)


# -- effective matrices ------------------------------------------------------

class _EffectiveMatrices:
    """Batched ``H_s[r] = <others| X |others>`` on slot ``s``."""

    def __init__(self, op: HermitianOperator):
        self.n, self.k = op.n_parties, op.local_dim
        n = self.n
        t = op.tensor
        # axes: other rows, other cols, slot row, slot col
        self._moved = [np.ascontiguousarray(np.moveaxis(t, (s, n + s), (-2, -1))).reshape(-1)
                       for s in range(n)]

    def __call__(self, factors, slot: int) -> np.ndarray:
        k = self.k
        others = [factors[j] for j in range(self.n) if j != slot]
        flat = self._moved[slot]
        if not others:
            return np.broadcast_to(flat.reshape(k, k), (factors[0].shape[0], k, k)).copy()
        R = others[0].shape[0]
        t = others[0].conj() @ flat.reshape(k, -1)
        for f in others[1:]:
            t = np.einsum("ri,rij->rj", f.conj(), t.reshape(R, k, -1))
        for f in others:
            t = np.einsum("ri,rij->rj", f, t.reshape(R, k, -1))
        return t.reshape(R, k, k)


def _select_eigvec(h: np.ndarray):
    """Eigenvector of largest-magnitude eigenvalue; ties go to the positive one."""
    w, v = np.linalg.eigh(h)
    top = w[:, -1]
    bottom = w[:, 0]
    pick_top = top >= -bottom - 1e-12 * np.maximum(1.0, np.abs(top))
    vec = np.where(pick_top[:, None], v[:, :, -1], v[:, :, 0])
    val = np.where(pick_top, top, bottom)
    return vec, np.abs(val)


def _check_hermitian(x) -> HermitianOperator:
    if not isinstance(x, HermitianOperator):
        raise TypeError("expected a HermitianOperator")
    return x


def g_hat(x: HermitianOperator, cfg: OptimizerConfig | None = None) -> OptimizationResult:
    """``max |<phi|X|phi>|`` over product states ``phi``."""
    x = _check_hermitian(x)
    cfg = cfg or OptimizerConfig()
    n, k = x.n_parties, x.local_dim
    eff = _EffectiveMatrices(x)
    rngs = restart_rngs(cfg.master_seed, cfg.restarts)
    starts = [[random_unit_vector(k, rng, cfg.real) for _ in range(n)] for rng in rngs]
    factors = [np.array([s[j] for s in starts]) for j in range(n)]
    R = cfg.restarts

    def objective(fs):
        h = eff(fs, n - 1)
        return np.abs(np.real(np.einsum("ri,rij,rj->r", fs[-1].conj(), h, fs[-1])))

    value = objective(factors)
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
            h = eff(sub, s)
            if cfg.real:
                h = h.real
            vec, val = _select_eigvec(h)
            # align phase with the previous factor so convergence is measurable
            overlap = np.sum(sub[s].conj() * vec, axis=1)
            ph = np.where(np.abs(overlap) > _ZERO, overlap.conj() / np.maximum(np.abs(overlap), _ZERO), 1.0)
            if cfg.real:
                ph = np.sign(ph.real) + (ph.real == 0)
            vec = vec * ph[:, None]
            step = np.maximum(step, np.linalg.norm(vec - sub[s], axis=1))
            sub[s] = vec
        for s in range(n):
            factors[s][idx] = sub[s]
        gain = val - value[idx]
        value[idx] = val
        iters[idx] += 1
        done = (gain < cfg.convergence_tol) & (step < cfg.step_tol)
        converged[idx[done]] = True
        active[idx[done]] = False

    products = tuple(
        ProductState(tuple(phase_fix(factors[j][r]) for j in range(n))) for r in range(R)
    )
    best = int(np.argmax(value))
    return OptimizationResult(
        overlap_g=abs(x.expectation(products[best])),
        maximizer=products[best],
        iterations_used=int(iters[best]),
        converged=bool(converged[best]),
        restart_values=tuple(float(v) for v in value),
        restart_maximizers=products,
    )


def g_hat_symmetric(x: HermitianOperator, cfg: OptimizerConfig | None = None,
                    shift: float | None = None):
    """``max |<a...a|X|a...a>|`` over unit ``a``; returns ``(value, a)``.

    Only ``Pi_S X Pi_S`` is seen by symmetric products.  For each sign
    ``sigma`` the ascent ``a <- normalize(sigma H(a) a + s a)`` increases
    ``sigma <a..a|X|a..a>``, with ``H(a)`` the slot-0 effective matrix; a
    step that lowers it is rejected and the shift doubled.  The default
    shift is the operator norm.
    """
    x = _check_hermitian(x)
    cfg = cfg or OptimizerConfig()
    n, k = x.n_parties, x.local_dim
    ps = symmetric_projector(n, k)
    xs = HermitianOperator(n, k, ps @ x.matrix @ ps)
    eff = _EffectiveMatrices(xs)
    shift0 = x.norm() if shift is None else shift
    rngs = restart_rngs(cfg.master_seed, cfg.restarts)
    starts = np.array([random_unit_vector(k, rng, cfg.real) for rng in rngs])

    best_val, best_vec = -1.0, None
    for sigma in (1.0, -1.0):
        a = starts.copy()
        R = a.shape[0]
        shifts = np.full(R, max(shift0, 1e-12))

        def evaluate(vecs):
            h = eff([vecs] * n, 0)
            if cfg.real:
                h = h.real
            ha = np.einsum("rij,rj->ri", h, vecs)
            return ha, np.real(np.sum(vecs.conj() * ha, axis=1))

        ha, q = evaluate(a)
        active = np.ones(R, dtype=bool)
        for _ in range(cfg.max_iterations):
            idx = np.flatnonzero(active)
            if idx.size == 0:
                break
            cand = sigma * ha[idx] + shifts[idx, None] * a[idx]
            cand = cand / np.linalg.norm(cand, axis=1)[:, None]
            ha_c, q_c = evaluate(cand)
            gain = sigma * (q_c - q[idx])
            accept = gain >= -1e-15
            step = np.linalg.norm(cand - a[idx], axis=1)
            good = idx[accept]
            a[good], ha[good], q[good] = cand[accept], ha_c[accept], q_c[accept]
            shifts[idx[~accept]] *= 2.0
            done = accept & (gain < cfg.convergence_tol) & (step < cfg.step_tol)
            # a rejected step that is already tiny means rounding noise at a maximum
            done |= ~accept & (step < cfg.step_tol)
            active[idx[done]] = False
        vals = np.abs(q)
        r = int(np.argmax(vals))
        if vals[r] > best_val:
            best_val, best_vec = float(vals[r]), phase_fix(a[r])
    return best_val, best_vec


# -- classification ------------------------------------------------------------

def _permute_operator(m: np.ndarray, n: int, k: int, perm) -> np.ndarray:
    t = m.reshape((k,) * (2 * n))
    axes = list(perm) + [n + p for p in perm]
    return np.transpose(t, axes).reshape(k**n, k**n)


def pauli_coefficients(x: HermitianOperator) -> np.ndarray:
    """Real coefficients ``c[i1..iN] = Tr(X sigma_i1 (x) ... ) / 2**N``, shape (4,)*N."""
    if x.local_dim != 2:
        raise ValueError("Pauli expansion needs qubits (local_dim = 2)")
    n = x.n_parties
    paulis = np.array(PAULI)
    # Tr(X P) = sum_{r,c} X[r, c] P[c, r], site by site
    operands = [x.tensor, list(range(2 * n))]
    for j in range(n):
        operands += [paulis, [2 * n + j, n + j, j]]
    operands.append([2 * n + j for j in range(n)])
    return np.real(np.einsum(*operands, optimize="greedy")) / 2**n


def classify(x: HermitianOperator, tol: float = 1e-10) -> SymmetryClass:
    n, k = x.n_parties, x.local_dim
    m = x.matrix
    scale = max(1.0, float(np.max(np.abs(m))))
    invariant = True
    for i, j in itertools.combinations(range(n), 2):
        perm = list(range(n))
        perm[i], perm[j] = j, i
        if np.max(np.abs(_permute_operator(m, n, k, perm) - m)) > tol * scale:
            invariant = False
            break
    ps = symmetric_projector(n, k)
    perm_symmetric = bool(np.max(np.abs(m - ps @ m @ ps)) <= tol * scale)
    positive = bool(np.linalg.eigvalsh(m)[0] >= -tol * scale)
    full_corr = None
    if k == 2:
        coeffs = pauli_coefficients(x)
        mask = np.zeros(coeffs.shape, dtype=bool)
        for idx in itertools.product(range(4), repeat=n):
            mask[idx] = 0 in idx
        full_corr = bool(np.max(np.abs(coeffs[mask]), initial=0.0) <= tol * scale)
    return SymmetryClass(invariant, perm_symmetric, positive, full_corr)


def bloch_correlation_form(x: HermitianOperator) -> np.ndarray:
    """Correlation tensor ``lam`` (shape (3,)*N) of a full-correlation qubit operator.

    For a product state with Bloch vectors ``r_j``,
    ``<phi|X|phi> = sum lam[i,j,...] r_1[i] r_2[j] ...``.
    """
    cls = classify(x)
    if not cls.full_correlation_qubit:
        raise ValueError("operator has terms with identity factors")
    if not cls.perm_invariant:
        raise ValueError("operator is not permutationally invariant")
    coeffs = pauli_coefficients(x)
    return coeffs[(slice(1, 4),) * x.n_parties].copy()


def bloch_vector(v) -> np.ndarray:
    v = np.asarray(v, dtype=complex)
    return np.array([np.real(np.vdot(v, p @ v)) for p in PAULI[1:]])


def bloch_form_maximum(lam: np.ndarray, cfg: OptimizerConfig | None = None):
    """``max |lam(r_1, ..., r_N)|`` over real unit vectors, via the real-field state optimizer.

    Returns ``(value, result)`` where ``result`` is the optimization over the
    normalized form.
    """
    from .optimizer import closest_product_state
    from .tensor_core import StateTensor

    cfg = (cfg or OptimizerConfig()).with_(field="real")
    lam = np.asarray(lam, dtype=float)
    scale = np.linalg.norm(lam)
    if scale == 0:
        raise ValueError("zero correlation tensor")
    state = StateTensor(lam.ndim, 3, lam.reshape(-1) / scale)
    result = closest_product_state(state, cfg)
    return result.overlap_g * scale, result


def bloch_form_symmetric_maximum(lam: np.ndarray, cfg: OptimizerConfig | None = None):
    """``max |lam(r, ..., r)|`` over real unit ``r``; returns ``(value, r)``."""
    from .optimizer import symmetric_ascent

    cfg = (cfg or OptimizerConfig()).with_(field="real")
    lam = np.asarray(lam, dtype=float)
    sym = symmetric_projection(lam, lam.ndim)
    scale = np.linalg.norm(sym)
    if scale == 0:
        return 0.0, np.array([1.0, 0.0, 0.0])
    value, r, _, _ = symmetric_ascent(sym / scale, cfg)
    return value * scale, np.real(r)


def qubit_from_bloch(r) -> np.ndarray:
    """Pure qubit state with unit Bloch vector ``r``."""
    r = np.asarray(r, dtype=float)
    r = r / np.linalg.norm(r)
    theta = np.arccos(np.clip(r[2], -1.0, 1.0))
    phi = np.arctan2(r[1], r[0])
    return np.array([np.cos(theta / 2), np.exp(1j * phi) * np.sin(theta / 2)])
