"""Pure states as dense tensors and the multilinear form they define.

A state of ``N`` parties with ``k`` levels each is stored as ``k**N`` complex
amplitudes in row-major order, party 0 being the most significant digit.
The overlap with a product state is read as an ``N``-linear form

    psi(a_1, ..., a_N) = <psi | a_1, ..., a_N>
                       = sum_idx conj(psi_idx) * prod_j a_j[i_j]

so the stored (ket) amplitudes are conjugated and the factors are not.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

NORM_TOL = 1e-12


class ZeroProjectionError(ValueError):
    """Raised when a projection annihilates the state it was applied to."""


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex)
    a.setflags(write=False)
    return a


def _infer_parties(size: int, k: int) -> int:
    n = round(math.log(size, k)) if size > 1 else 0
    if n < 1 or k**n != size:
        raise ValueError(f"{size} amplitudes is not a power of local_dim={k}")
    return n


@dataclass(frozen=True, eq=False)
class StateTensor:
    """Normalized pure state of ``n_parties`` qudits with ``local_dim`` levels."""

    n_parties: int
    local_dim: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if int(self.n_parties) < 1:
            raise ValueError("n_parties must be >= 1")
        if int(self.local_dim) < 2:
            raise ValueError("local_dim must be >= 2")
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size != self.local_dim**self.n_parties:
            raise ValueError(
                f"expected {self.local_dim**self.n_parties} amplitudes, got {amps.size}"
            )
        if not np.all(np.isfinite(amps)):
            raise ValueError("amplitudes must be finite")
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state is not normalized (norm={norm!r})")
        object.__setattr__(self, "n_parties", int(self.n_parties))
        object.__setattr__(self, "local_dim", int(self.local_dim))
        object.__setattr__(self, "amplitudes", _frozen(amps))

    @classmethod
    def from_amplitudes(cls, amplitudes, local_dim: int = 2, n_parties: int | None = None,
                        normalize: bool = True) -> "StateTensor":
        amps = np.asarray(amplitudes, dtype=complex).reshape(-1)
        if n_parties is None:
            n_parties = _infer_parties(amps.size, local_dim)
        if normalize:
            norm = np.linalg.norm(amps)
            if norm == 0:
                raise ValueError("cannot normalize the zero vector")
            amps = amps / norm
        return cls(n_parties, local_dim, amps)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    @property
    def tensor(self) -> np.ndarray:
        """Amplitudes reshaped to ``(k,) * N``."""
        return self.amplitudes.reshape((self.local_dim,) * self.n_parties)

    def is_real(self, tol: float = 1e-12) -> bool:
        return bool(np.max(np.abs(self.amplitudes.imag)) <= tol)

    def __repr__(self):
        return f"StateTensor(n_parties={self.n_parties}, local_dim={self.local_dim})"


def normalize_vector(v) -> np.ndarray:
    v = np.asarray(v, dtype=complex).reshape(-1)
    norm = np.linalg.norm(v)
    if norm == 0 or not np.isfinite(norm):
        raise ValueError("cannot normalize a zero or non-finite vector")
    return v / norm


@dataclass(frozen=True, eq=False)
class ProductState:
    """Tensor product of unit vectors, one per party."""

    factors: tuple

    def __post_init__(self):
        factors = tuple(_frozen(np.asarray(f, dtype=complex).reshape(-1)) for f in self.factors)
        if not factors:
            raise ValueError("a product state needs at least one factor")
        k = factors[0].size
        if k < 2 or any(f.size != k for f in factors):
            raise ValueError("all factors must share one local dimension >= 2")
        for f in factors:
            if abs(np.linalg.norm(f) - 1.0) > NORM_TOL:
                raise ValueError("product factors must be normalized")
        object.__setattr__(self, "factors", factors)

    @classmethod
    def from_vectors(cls, vectors: Sequence, normalize: bool = True) -> "ProductState":
        if normalize:
            vectors = [normalize_vector(v) for v in vectors]
        return cls(tuple(vectors))

    @classmethod
    def symmetric(cls, vector, n_parties: int) -> "ProductState":
        v = normalize_vector(vector)
        return cls((v,) * n_parties)

    @property
    def n_parties(self) -> int:
        return len(self.factors)

    @property
    def local_dim(self) -> int:
        return self.factors[0].size

    def amplitudes(self) -> np.ndarray:
        out = np.ones(1, dtype=complex)
        for f in self.factors:
            out = np.kron(out, f)
        return out

    def to_state(self) -> StateTensor:
        return StateTensor(self.n_parties, self.local_dim, self.amplitudes())

    def replace(self, slot: int, vector) -> "ProductState":
        factors = list(self.factors)
        factors[slot] = normalize_vector(vector)
        return ProductState(tuple(factors))

    def __repr__(self):
        return f"ProductState(n_parties={self.n_parties}, local_dim={self.local_dim})"


# -- batched contraction ----------------------------------------------------

class Contractor:
    """Contract a fixed ``N``-index tensor against batches of vectors.

    ``factors`` are ``N`` arrays of shape ``(R, k)``; row ``r`` of every array
    belongs to the same product state.  The tensor is used as given, so pass
    ``conj(psi)`` to evaluate the form.
    """

    def __init__(self, tensor: np.ndarray):
        self.tensor = np.asarray(tensor)
        self.n = self.tensor.ndim
        self.k = self.tensor.shape[0]
        # slot axis moved last, contiguous
        self._moved = [np.ascontiguousarray(np.moveaxis(self.tensor, s, -1)).reshape(-1)
                       for s in range(self.n)]

    def contract(self, factors: Sequence[np.ndarray], slot: int) -> np.ndarray:
        """Vectors ``v[r, i]`` with basis vector ``e_i`` inserted at ``slot``."""
        k = self.k
        flat = self._moved[slot]
        others = [factors[j] for j in range(self.n) if j != slot]
        if not others:
            return np.broadcast_to(flat, (factors[0].shape[0], k)).copy()
        R = others[0].shape[0]
        tmp = others[0] @ flat.reshape(k, -1)
        for f in others[1:]:
            tmp = np.einsum("ri,rij->rj", f, tmp.reshape(R, k, -1))
        return tmp

    def value(self, factors: Sequence[np.ndarray]) -> np.ndarray:
        v = self.contract(factors, self.n - 1)
        return np.sum(v * factors[-1], axis=1)


def _check_pair(state: StateTensor, product: ProductState):
    if product.n_parties != state.n_parties or product.local_dim != state.local_dim:
        raise ValueError(
            f"product ({product.n_parties} x C^{product.local_dim}) does not match state "
            f"({state.n_parties} x C^{state.local_dim})"
        )


def _check_slot(slot: int, n: int):
    if not 0 <= slot < n:
        raise IndexError(f"slot {slot} out of range for {n} parties")


def evaluate_form(state: StateTensor, product: ProductState) -> complex:
    """Overlap ``<psi|a_1,...,a_N>``."""
    _check_pair(state, product)
    c = Contractor(state.tensor.conj())
    return complex(c.value([f[None, :] for f in product.factors])[0])


def contract_all_but(state: StateTensor, product: ProductState, slot: int) -> np.ndarray:
    """Vector ``v`` with ``v[i] = psi(..., e_i at slot, ...)``.

    The factor stored at ``slot`` is ignored, so
    ``evaluate_form(state, product.replace(slot, b)) == v @ b``.
    """
    _check_pair(state, product)
    _check_slot(slot, state.n_parties)
    c = Contractor(state.tensor.conj())
    return c.contract([f[None, :] for f in product.factors], slot)[0]


def quadratic_form_matrix(state: StateTensor, product: ProductState,
                          slot_a: int, slot_b: int) -> np.ndarray:
    """Matrix ``M[i, j]`` of the two-form left after fixing all other slots."""
    _check_pair(state, product)
    n, k = state.n_parties, state.local_dim
    _check_slot(slot_a, n)
    _check_slot(slot_b, n)
    if slot_a == slot_b:
        raise ValueError("slot_a and slot_b must differ")
    t = np.moveaxis(state.tensor.conj(), (slot_a, slot_b), (-2, -1))
    for j in range(n):
        if j in (slot_a, slot_b):
            continue
        t = np.tensordot(product.factors[j], t, axes=([0], [0]))
    return np.asarray(t).reshape(k, k)


# -- permutation structure ---------------------------------------------------

def symmetric_projection(array: np.ndarray, n_parties: int) -> np.ndarray:
    """Apply the symmetrizer over the first ``n_parties`` axes.

    Uses the coset factorization of the symmetric group: the average over
    S_N equals the product over m of (1 + sum_{j<m} (j m)) / (m + 1).
    """
    t = np.asarray(array)
    for m in range(1, n_parties):
        acc = t.copy()
        for j in range(m):
            acc = acc + np.swapaxes(t, j, m)
        t = acc / (m + 1)
    return t


def cyclic_shift(array: np.ndarray, n_parties: int) -> np.ndarray:
    """Move party 0 to the last position (translation by one site)."""
    return np.moveaxis(np.asarray(array), 0, n_parties - 1)


def symmetrize(state: StateTensor, tol: float = 1e-12) -> StateTensor:
    """Project onto the symmetric subspace and renormalize."""
    t = symmetric_projection(state.tensor, state.n_parties)
    norm = np.linalg.norm(t)
    if norm <= tol:
        raise ZeroProjectionError("state has no component in the symmetric subspace")
    return StateTensor(state.n_parties, state.local_dim, t.reshape(-1) / norm)


def is_symmetric(state: StateTensor, tol: float = 1e-10) -> bool:
    t = state.tensor
    for i, j in itertools.combinations(range(state.n_parties), 2):
        if np.max(np.abs(np.swapaxes(t, i, j) - t)) > tol:
            return False
    return True


def is_translation_invariant(state: StateTensor, tol: float = 1e-10) -> bool:
    t = state.tensor
    return bool(np.max(np.abs(cyclic_shift(t, state.n_parties) - t)) <= tol)


# -- occupation-number (Dicke) structure ------------------------------------

def occupation_keys(n: int, k: int) -> np.ndarray:
    """Integer key per basis index encoding its occupation numbers.

    key = sum_j (n+1)**digit_j, which is sum_l count_l (n+1)**l and thus
    unique per multiset of digits.
    """
    weights = (n + 1) ** np.arange(k, dtype=np.int64)
    keys = np.zeros((1,) * n, dtype=np.int64)
    for j in range(n):
        shape = [1] * n
        shape[j] = k
        keys = keys + weights.reshape(shape)
    return keys.reshape(-1)


def occupations(n: int, k: int) -> list[tuple[int, ...]]:
    """Sorted digit multisets, one per symmetric basis vector."""
    return list(itertools.combinations_with_replacement(range(k), n))


def _occupation_index(n: int, k: int):
    keys = occupation_keys(n, k)
    weights = (n + 1) ** np.arange(k, dtype=np.int64)
    occ_keys = np.array([sum(weights[d] for d in occ) for occ in occupations(n, k)],
                        dtype=np.int64)
    order = np.argsort(occ_keys)
    pos = order[np.searchsorted(occ_keys[order], keys)]
    counts = np.bincount(pos, minlength=occ_keys.size)
    return pos, counts


def symmetric_basis_matrix(n: int, k: int) -> np.ndarray:
    """Orthonormal occupation-number basis of the symmetric subspace, as rows."""
    pos, counts = _occupation_index(n, k)
    basis = np.zeros((counts.size, k**n))
    basis[pos, np.arange(k**n)] = 1.0 / np.sqrt(counts[pos])
    return basis


# -- sampling ----------------------------------------------------------------

def _gaussian(rng: np.random.Generator, size) -> np.ndarray:
    return rng.standard_normal(size) + 1j * rng.standard_normal(size)


def random_state(n: int, k: int, seed=None) -> StateTensor:
    """Haar-random pure state (normalized complex Gaussian)."""
    if n < 1 or k < 2:
        raise ValueError("need n >= 1 and k >= 2")
    rng = np.random.default_rng(seed)
    return StateTensor.from_amplitudes(_gaussian(rng, k**n), local_dim=k, n_parties=n)


def random_symmetric_state(n: int, k: int, seed=None) -> StateTensor:
    """Unitarily invariant random state of the symmetric subspace."""
    if n < 1 or k < 2:
        raise ValueError("need n >= 1 and k >= 2")
    rng = np.random.default_rng(seed)
    pos, counts = _occupation_index(n, k)
    coeffs = _gaussian(rng, counts.size)
    amps = coeffs[pos] / np.sqrt(counts[pos])
    return StateTensor.from_amplitudes(amps, local_dim=k, n_parties=n)


def random_unit_vector(k: int, rng: np.random.Generator, real: bool = False) -> np.ndarray:
    v = rng.standard_normal(k) if real else _gaussian(rng, k)
    return normalize_vector(v)


# -- phases --------------------------------------------------------------------

def phase_fix(v) -> np.ndarray:
    """Remove the global phase: the largest-magnitude entry becomes real positive."""
    v = np.asarray(v, dtype=complex).reshape(-1)
    j = int(np.argmax(np.abs(v)))
    if v[j] == 0:
        raise ValueError("cannot fix the phase of the zero vector")
    return v * (np.conj(v[j]) / abs(v[j]))


def equal_up_to_phase(u, v, tol: float = 1e-9) -> bool:
    """True when ``1 - |<u|v>| <= tol`` for the normalized vectors."""
    u = normalize_vector(u)
    v = normalize_vector(v)
    return bool(1.0 - abs(np.vdot(u, v)) <= tol)


# -- named states ------------------------------------------------------------

def basis_state(digits: str | Sequence[int], local_dim: int = 2) -> StateTensor:
    """Computational basis state, e.g. ``basis_state("001")``."""
    digits = [int(d) for d in digits]
    idx = 0
    for d in digits:
        if not 0 <= d < local_dim:
            raise ValueError(f"digit {d} out of range for local_dim={local_dim}")
        idx = idx * local_dim + d
    amps = np.zeros(local_dim ** len(digits), dtype=complex)
    amps[idx] = 1.0
    return StateTensor(len(digits), local_dim, amps)


def superposition(terms: dict[str, complex], local_dim: int = 2) -> StateTensor:
    """Normalized sum of basis states, e.g. ``{"0101": 1, "1010": 1}``."""
    n = len(next(iter(terms)))
    amps = np.zeros(local_dim**n, dtype=complex)
    for digits, c in terms.items():
        amps += c * basis_state(digits, local_dim).amplitudes
    return StateTensor.from_amplitudes(amps, local_dim=local_dim, n_parties=n)


def ghz_state(n: int, local_dim: int = 2) -> StateTensor:
    return superposition({str(d) * n: 1 for d in range(local_dim)}, local_dim)


def w_state(n: int) -> StateTensor:
    return superposition({"0" * j + "1" + "0" * (n - j - 1): 1 for j in range(n)})
