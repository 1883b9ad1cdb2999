"""Brute-force grid maximization over product states, used as an independent check.

Each grid factor is a unit vector with its global phase fixed:

    qubit:  (cos(t/2), e^{ip} sin(t/2)),                       t in [0, pi], p in [0, 2pi)
    qutrit: (cos(t1/2), e^{ip1} sin(t1/2) cos(t2/2), e^{ip2} sin(t1/2) sin(t2/2))

For the state overlap the last two factors are not gridded: with the others
fixed the best pair is given exactly by the top singular value of the
remaining ``k x k`` matrix.  For operators the last factor is the top
eigenvector (in absolute value) of its effective matrix.  Every returned
value is attained by the returned product state, so it is a lower bound on
the true maximum.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .operators import HermitianOperator, _EffectiveMatrices
from .tensor_core import Contractor, ProductState, StateTensor, evaluate_form

ZOOM = 2


@dataclass(frozen=True)
class GridSpec:
    points_per_angle: int = 24
    refinement_levels: int = 3
    field: str = "complex"

    def __post_init__(self):
        if self.points_per_angle < 4:
            raise ValueError("points_per_angle must be >= 4")
        if self.refinement_levels < 0:
            raise ValueError("refinement_levels must be >= 0")
        if self.field not in ("complex", "real"):
            raise ValueError("field must be 'complex' or 'real'")


def _n_angles(k: int) -> int:
    if k == 2:
        return 1
    if k == 3:
        return 2
    raise ValueError(f"grid oracle supports local_dim 2 or 3, not {k}")


def params_to_vectors(params: np.ndarray, k: int) -> np.ndarray:
    """Rows ``(thetas..., phis...)`` to unit vectors."""
    params = np.atleast_2d(params)
    h = _n_angles(k)
    th, ph = params[:, :h] / 2, params[:, h:]
    out = np.empty((params.shape[0], k), dtype=complex)
    if k == 2:
        out[:, 0] = np.cos(th[:, 0])
        out[:, 1] = np.exp(1j * ph[:, 0]) * np.sin(th[:, 0])
    else:
        out[:, 0] = np.cos(th[:, 0])
        out[:, 1] = np.exp(1j * ph[:, 0]) * np.sin(th[:, 0]) * np.cos(th[:, 1])
        out[:, 2] = np.exp(1j * ph[:, 1]) * np.sin(th[:, 0]) * np.sin(th[:, 1])
    return out


def _coarse_params(k: int, m: int, field: str) -> np.ndarray:
    h = _n_angles(k)
    thetas = np.pi * np.arange(m + 1) / m
    phis = np.array([0.0, np.pi]) if field == "real" else 2 * np.pi * np.arange(m) / m
    rows = []
    for combo in itertools.product(*([thetas] * h + [phis] * (k - 1))):
        rows.append(combo)
    params = np.array(rows)
    # a zero component makes its phase meaningless; keep only p = 0 there
    vecs = params_to_vectors(params, k)
    keep = np.ones(len(params), dtype=bool)
    for c in range(1, k):
        keep &= ~((np.abs(vecs[:, c]) < 1e-15) & (params[:, h + c - 1] != 0.0))
    return params[keep]


def _local_params(center: np.ndarray, steps: np.ndarray, k: int, field: str) -> np.ndarray:
    """Grid of +-ZOOM old steps around ``center`` at half the step size."""
    h = _n_angles(k)
    axes = []
    for i, (c, s) in enumerate(zip(center, steps)):
        if i >= h and field == "real":
            axes.append(np.array([c]))
            continue
        pts = c + (s / 2) * np.arange(-2 * ZOOM, 2 * ZOOM + 1)
        if i < h:
            pts = np.unique(np.clip(pts, 0.0, np.pi))
        else:
            pts = np.mod(pts, 2 * np.pi)
        axes.append(pts)
    return np.array(list(itertools.product(*axes)))


def _top_singular(mats: np.ndarray) -> np.ndarray:
    if mats.shape[-1] == 2:
        fro = np.sum(np.abs(mats) ** 2, axis=(-2, -1))
        det = np.abs(mats[..., 0, 0] * mats[..., 1, 1] - mats[..., 0, 1] * mats[..., 1, 0])
        return np.sqrt(np.maximum((fro + np.sqrt(np.maximum(fro**2 - 4 * det**2, 0.0))) / 2, 0.0))
    return np.linalg.svd(mats, compute_uv=False)[..., 0]


def _search_overlap(tensor: np.ndarray, grids: list[np.ndarray]):
    """Best ``(value, grid indices)`` with the last two slots solved exactly.

    ``tensor`` is conj(psi) with shape ``(k,)*N`` and ``len(grids) == N - 2``.
    The innermost (up to) two grid levels are vectorized; enumeration order
    is lexicographic and the first maximum wins.
    """
    k = tensor.shape[0]
    g = len(grids)
    inner = min(g, 2)
    outer = grids[: g - inner]
    best_val, best_idx = -1.0, None
    for prefix in itertools.product(*[range(len(G)) for G in outer]):
        t = tensor
        for G, p in zip(outer, prefix):
            t = np.tensordot(G[p], t, axes=([0], [0]))
        if inner == 2:
            a = np.tensordot(grids[-2], t, axes=([1], [0])).reshape(len(grids[-2]), k, k * k)
            mats = np.matmul(grids[-1], a)
        else:
            mats = np.tensordot(grids[-1], t, axes=([1], [0]))
        vals = _top_singular(mats.reshape(mats.shape[:inner] + (k, k)))
        flat = int(np.argmax(vals))
        if vals.flat[flat] > best_val:
            best_val = float(vals.flat[flat])
            best_idx = tuple(prefix) + np.unravel_index(flat, vals.shape)
    return best_val, best_idx


def _complete_pair(tensor: np.ndarray, vectors: list[np.ndarray]) -> list[np.ndarray]:
    k = tensor.shape[0]
    t = tensor
    for v in vectors:
        t = np.tensordot(v, t, axes=([0], [0]))
    u, _, vh = np.linalg.svd(np.asarray(t).reshape(k, k))
    # x^T M y = sigma_1 for x = conj(u_1), y = v_1
    return [u[:, 0].conj(), vh[0].conj()]


def _check_support(state_n: int, k: int, field: str, limit_qubits: int = 5, limit_qutrits: int = 3):
    _n_angles(k)
    if k == 2 and state_n > limit_qubits:
        raise ValueError(f"qubit grid oracle is limited to N <= {limit_qubits}")
    if k == 3 and state_n > limit_qutrits:
        raise ValueError(f"qutrit grid oracle is limited to N <= {limit_qutrits}")


def grid_max_overlap(state: StateTensor, spec: GridSpec | None = None):
    """Lower bound on G(psi) from a refined product grid; returns ``(value, product)``."""
    spec = spec or GridSpec()
    n, k = state.n_parties, state.local_dim
    _check_support(n, k, spec.field)
    tensor = state.tensor.conj()
    if spec.field == "real":
        if not state.is_real():
            raise ValueError("real-field oracle needs real amplitudes")
        tensor = tensor.real
    if n <= 2:
        if n == 1:
            vecs = [state.amplitudes.copy()]
        else:
            vecs = _complete_pair(tensor, [])
        if spec.field == "real":
            vecs = [_realify(v) for v in vecs]
        product = ProductState.from_vectors(vecs)
        return abs(evaluate_form(state, product)), product

    g = n - 2
    m = spec.points_per_angle
    coarse = _coarse_params(k, m, spec.field)
    h = _n_angles(k)
    steps = np.array([np.pi / m] * h + [2 * np.pi / m] * (k - 1))
    grids_params = [coarse] * g
    best_val, best_params = -1.0, None
    for level in range(spec.refinement_levels + 1):
        grids = [params_to_vectors(P, k) for P in grids_params]
        val, idx = _search_overlap(tensor, grids)
        if val > best_val:
            best_val = val
            best_params = [P[i] for P, i in zip(grids_params, idx)]
        grids_params = [_local_params(c, steps, k, spec.field) for c in best_params]
        steps = steps / 2
    vecs = [params_to_vectors(p, k)[0] for p in best_params]
    pair = _complete_pair(tensor, vecs)
    if spec.field == "real":
        pair = [_realify(v) for v in pair]
    product = ProductState.from_vectors(vecs + pair)
    return abs(evaluate_form(state, product)), product


def _realify(v: np.ndarray) -> np.ndarray:
    """Real representative of a vector that is real up to a global phase."""
    j = int(np.argmax(np.abs(v)))
    w = v * np.conj(v[j]) / abs(v[j])
    return w.real / np.linalg.norm(w.real)


def _symmetric_values(tensor: np.ndarray, vecs: np.ndarray) -> np.ndarray:
    c = Contractor(tensor)
    return np.abs(c.value([vecs] * tensor.ndim))


def _refined_single(objective, k: int, spec: GridSpec):
    m = spec.points_per_angle
    h = _n_angles(k)
    params = _coarse_params(k, m, spec.field)
    steps = np.array([np.pi / m] * h + [2 * np.pi / m] * (k - 1))
    best_val, best_p = -1.0, None
    for level in range(spec.refinement_levels + 1):
        vals = objective(params_to_vectors(params, k))
        i = int(np.argmax(vals))
        if vals[i] > best_val:
            best_val, best_p = float(vals[i]), params[i]
        params = _local_params(best_p, steps, k, spec.field)
        steps = steps / 2
    return best_val, params_to_vectors(best_p, k)[0]


def grid_max_symmetric(state: StateTensor, spec: GridSpec | None = None):
    """Lower bound on ``max_a |psi(a, ..., a)|``; returns ``(value, a)``."""
    spec = spec or GridSpec()
    _check_support(state.n_parties, state.local_dim, spec.field, limit_qubits=12, limit_qutrits=8)
    tensor = state.tensor.conj()
    return _refined_single(lambda vecs: _symmetric_values(tensor, vecs), state.local_dim, spec)


def _operator_values(eff: _EffectiveMatrices, grids: list[np.ndarray], n: int):
    """``max |eig|`` of the last slot's effective matrix over the product grid."""
    mesh = np.meshgrid(*[np.arange(len(G)) for G in grids], indexing="ij")
    flat = [m.reshape(-1) for m in mesh]
    factors = [G[i] for G, i in zip(grids, flat)]
    factors.append(np.zeros_like(factors[0]))
    h = eff(factors, n - 1)
    w = np.linalg.eigvalsh(h)
    return np.maximum(np.abs(w[:, 0]), np.abs(w[:, -1])), flat


def grid_max_operator(x: HermitianOperator, spec: GridSpec | None = None,
                      symmetric: bool = False) -> float:
    """Lower bound on ``G_hat(X)`` (or ``G_hat_S(X)`` with ``symmetric=True``)."""
    spec = spec or GridSpec()
    n, k = x.n_parties, x.local_dim
    _check_support(n, k, spec.field, limit_qubits=3 if not symmetric else 8,
                   limit_qutrits=2 if not symmetric else 4)
    if symmetric:
        m = x.matrix

        def objective(vecs):
            phis = vecs
            for _ in range(n - 1):
                phis = np.einsum("pi,pj->pij", phis, vecs).reshape(len(vecs), -1)
            return np.abs(np.real(np.einsum("pi,ij,pj->p", phis.conj(), m, phis)))

        return _refined_single(objective, k, spec)[0]

    eff = _EffectiveMatrices(x)
    if n == 1:
        w = np.linalg.eigvalsh(x.matrix)
        return float(max(abs(w[0]), abs(w[-1])))
    m_pts = spec.points_per_angle
    h = _n_angles(k)
    coarse = _coarse_params(k, m_pts, spec.field)
    steps = np.array([np.pi / m_pts] * h + [2 * np.pi / m_pts] * (k - 1))
    grids_params = [coarse] * (n - 1)
    best_val, best_params = -1.0, None
    for level in range(spec.refinement_levels + 1):
        grids = [params_to_vectors(P, k) for P in grids_params]
        vals, flat = _operator_values(eff, grids, n)
        i = int(np.argmax(vals))
        if vals[i] > best_val:
            best_val = float(vals[i])
            best_params = [P[f[i]] for P, f in zip(grids_params, flat)]
        grids_params = [_local_params(c, steps, k, spec.field) for c in best_params]
        steps = steps / 2
    return best_val
