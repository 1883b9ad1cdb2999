"""Symmetric (S) and translation-invariant (T) subspaces, and X = T minus S.

Every state in X is orthogonal to all symmetric product states ``a^{(x)N}``,
so its closest product state can never be symmetric.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .optimizer import OptimizerConfig, symmetric_ascent
from .tensor_core import (
    StateTensor,
    cyclic_shift,
    is_translation_invariant,
    symmetric_basis_matrix,
    symmetric_projection,
)

LABELS = ("S", "T", "X")
RANK_TOL = 1e-12


def totient(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def dim_translation_invariant(n: int, k: int) -> int:
    """Number of k-ary necklaces of length n: (1/n) sum_{j|n} phi(j) k**(n/j)."""
    if n < 1 or k < 2:
        raise ValueError("need n >= 1 and k >= 2")
    total = sum(totient(j) * k ** (n // j) for j in divisors(n))
    assert total % n == 0
    return total // n


def dim_symmetric(n: int, k: int) -> int:
    if n < 1 or k < 2:
        raise ValueError("need n >= 1 and k >= 2")
    return math.comb(n + k - 1, k - 1)


def necklace_representatives(n: int, k: int) -> list[tuple[int, ...]]:
    """Words that are lexicographically smallest among their rotations."""
    reps = []
    for word in itertools.product(range(k), repeat=n):
        if all(word <= word[r:] + word[:r] for r in range(1, n)):
            reps.append(word)
    return reps


def _flat_index(word, k: int) -> int:
    idx = 0
    for d in word:
        idx = idx * k + d
    return idx


def translation_basis_matrix(n: int, k: int) -> np.ndarray:
    """Normalized cyclic-orbit sums, one row per necklace representative."""
    reps = necklace_representatives(n, k)
    basis = np.zeros((len(reps), k**n))
    for row, word in enumerate(reps):
        orbit = {word[r:] + word[:r] for r in range(n)}
        for w in orbit:
            basis[row, _flat_index(w, k)] = 1.0
        basis[row] /= math.sqrt(len(orbit))
    return basis


def _orthonormalize_against(candidates: np.ndarray, fixed: np.ndarray, tol: float = RANK_TOL) -> np.ndarray:
    """Modified Gram-Schmidt of rows of ``candidates`` against ``fixed`` and each other.

    Each vector is orthogonalized twice; those whose residual norm falls
    below ``tol`` are dropped.
    """
    kept: list[np.ndarray] = []
    for v in candidates:
        w = np.array(v, dtype=complex)
        for _ in range(2):
            for u in itertools.chain(fixed, kept):
                w -= np.vdot(u, w) * u
        norm = np.linalg.norm(w)
        if norm > tol:
            kept.append(w / norm)
    return np.array(kept).reshape(len(kept), candidates.shape[1])


@dataclass(frozen=True, eq=False)
class SubspaceBasis:
    n_parties: int
    local_dim: int
    label: str
    vectors: tuple

    @property
    def matrix(self) -> np.ndarray:
        """Basis vectors as rows."""
        return np.array([v.amplitudes for v in self.vectors]).reshape(
            len(self.vectors), self.local_dim**self.n_parties)

    def __len__(self):
        return len(self.vectors)


def basis(label: str, n: int, k: int) -> SubspaceBasis:
    if label not in LABELS:
        raise ValueError(f"label must be one of {LABELS}")
    if label == "S":
        rows = symmetric_basis_matrix(n, k)
    elif label == "T":
        rows = translation_basis_matrix(n, k)
    else:
        rows = _orthonormalize_against(
            translation_basis_matrix(n, k), symmetric_basis_matrix(n, k).astype(complex))
    vectors = tuple(StateTensor(n, k, row) for row in rows)
    return SubspaceBasis(n, k, label, vectors)


def _randomized_rank(apply, dim: int, seed: int = 0) -> int:
    """Rank of a linear map on C^dim from its action on random test vectors."""
    rng = np.random.default_rng(seed)
    width = 8
    while True:
        width = min(width, dim)
        sample = apply(rng.standard_normal((dim, width)))
        rank = int(np.linalg.matrix_rank(sample, tol=1e-9 * max(1.0, np.linalg.norm(sample, 2))))
        if rank < width or width == dim:
            return rank
        width *= 2


def brute_force_rank(label: str, n: int, k: int) -> int:
    """Rank of the group-averaging projector, found by applying it to random vectors.

    T: average of the ``n`` cyclic shifts.  S: average over all permutations.
    Neither uses the dimension formulas.
    """
    shape = (k,) * n

    def translation(cols):
        t = cols.reshape(shape + (-1,))
        acc = np.zeros_like(t)
        for _ in range(n):
            acc += t
            t = cyclic_shift(t, n)
        return (acc / n).reshape(k**n, -1)

    def symmetric(cols):
        return symmetric_projection(cols.reshape(shape + (-1,)), n).reshape(k**n, -1)

    apply = {"T": translation, "S": symmetric}[label]
    return _randomized_rank(apply, k**n)


def symmetric_product_overlap(state: StateTensor, cfg: OptimizerConfig | None = None):
    """``max_a |<psi|a,...,a>|`` for any state, with its maximizer.

    Only the symmetric part of ``psi`` is seen by symmetric products, so the
    ascent runs on the projected tensor, which need not be normalized.
    """
    cfg = cfg or OptimizerConfig()
    tensor = symmetric_projection(state.tensor.conj(), state.n_parties)
    value, vec, _, _ = symmetric_ascent(tensor, cfg)
    return value, vec


def max_symmetric_product_overlap_is_zero(state: StateTensor, tol: float = 1e-8,
                                          cfg: OptimizerConfig | None = None) -> bool:
    """True when no symmetric product state overlaps the translation-invariant ``state``.

    Checked two ways: the norm of the symmetric component bounds every such
    overlap, and a direct symmetric ascent must also stay below ``tol``.
    """
    if not is_translation_invariant(state, 1e-10):
        raise ValueError("state is not translation invariant")
    sym_norm = np.linalg.norm(symmetric_projection(state.tensor, state.n_parties))
    value, _ = symmetric_product_overlap(state, cfg)
    return bool(sym_norm <= tol and value <= tol)
