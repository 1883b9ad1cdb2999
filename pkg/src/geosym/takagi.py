"""Takagi factorization of complex symmetric matrices and degenerate two-forms.

A complex symmetric ``m`` is factored as ``m = U.T @ diag(r) @ U`` with ``U``
unitary and ``r`` the singular values in non-increasing order.  For the
two-form ``x.T @ m @ y`` the maximum of ``|x.T m y|`` over unit vectors is
``r[0]``, attained symmetrically at ``x = y = U^dagger e_0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .tensor_core import equal_up_to_phase, normalize_vector


@dataclass(frozen=True, eq=False)
class TakagiDecomposition:
    unitary: np.ndarray
    values: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return self.unitary.T @ (self.values[:, None] * self.unitary)

    def maximizer(self) -> np.ndarray:
        """Symmetric maximizer ``U^dagger e_0`` of the two-form."""
        return self.unitary[0].conj()


class DegenerateBlock(NamedTuple):
    start: int
    size: int
    value: float


class ObservationVectors(NamedTuple):
    delta1: np.ndarray
    delta2: np.ndarray
    eta: np.ndarray
    mu: np.ndarray
    mu_prime: np.ndarray


def _polar_unitary(q: np.ndarray) -> np.ndarray:
    w, _, vh = np.linalg.svd(q)
    return w @ vh


def takagi_factorize(m, sym_tol: float = 1e-10) -> TakagiDecomposition:
    """Factor ``m = U.T diag(r) U``.

    Takagi vectors ``q`` solve ``m conj(q) = r q``.  Writing ``q = x + iy``
    and ``m = A + iB`` this is the real symmetric eigenproblem
    ``[[A, B], [B, -A]] [x; y] = r [x; y]``, whose spectrum is ``+-r``.
    The eigenvectors of the ``k`` largest eigenvalues give the columns of
    ``U.T``; a final polar step restores exact unitarity where small values
    leave the columns ill-conditioned (this only perturbs the product by
    ``r * error``).
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("expected a square matrix")
    k = m.shape[0]
    scale = np.linalg.norm(m)
    if np.linalg.norm(m - m.T) > sym_tol * max(scale, np.finfo(float).tiny):
        raise ValueError("matrix is not symmetric")
    if scale == 0:
        return TakagiDecomposition(np.eye(k, dtype=complex), np.zeros(k))
    a, b = m.real, m.imag
    emb = np.block([[a, b], [b, -a]])
    emb = (emb + emb.T) / 2
    w, vecs = np.linalg.eigh(emb)
    top = np.argsort(w)[::-1][:k]
    values = np.clip(w[top], 0.0, None)
    q = vecs[:k, top] + 1j * vecs[k:, top]
    q = _polar_unitary(q)
    return TakagiDecomposition(q.T.copy(), values)


def degeneracy_blocks(dec: TakagiDecomposition, tol: float = 1e-8) -> list[DegenerateBlock]:
    """Maximal runs of values equal within ``tol`` relative to the top value."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    values = dec.values
    scale = values[0] if values[0] > 0 else 1.0
    blocks = []
    start = 0
    for i in range(1, len(values) + 1):
        if i == len(values) or abs(values[i] - values[start]) > tol * scale:
            blocks.append(DegenerateBlock(start, i - start, float(values[start])))
            start = i
    return blocks


def two_form(m: np.ndarray, x, y) -> complex:
    return complex(np.asarray(x) @ m @ np.asarray(y))


def _candidate_vectors(u_dag: np.ndarray, f1: np.ndarray, f2: np.ndarray) -> ObservationVectors:
    d1 = u_dag @ f1
    d2 = u_dag @ f2
    s = np.sqrt(2.0)
    return ObservationVectors(d1, d2, (d1 + d2) / s, (d1 + 1j * d2) / s, (d1 - 1j * d2) / s)


def _phase_margin(vecs: ObservationVectors, alpha: np.ndarray) -> float:
    """Smallest ``1 - |<v|alpha>|`` over the vectors clause (iii) constrains."""
    return min(1.0 - abs(np.vdot(v, alpha))
               for v in (vecs.delta1, vecs.delta2, vecs.eta, vecs.mu_prime))


def observation1_vectors(form, alpha, beta, tol: float = 1e-8,
                         margin: float = 1e-2) -> ObservationVectors:
    """Orthonormal ``delta1, delta2`` spanning ``{alpha, beta}`` for a degenerate form.

    ``(alpha, beta)`` must be a non-symmetric maximizer of ``|x.T form y|``.
    In Takagi coordinates ``beta = U^dagger e`` and ``alpha = U^dagger e*``
    with ``e`` in the leading degenerate block.  ``f1, f2`` come from
    Gram-Schmidt on ``(Re e, Im e)``; if that choice leaves one of the
    constructed vectors closer than ``margin`` to ``alpha`` (up to phase),
    the pair is rotated and possibly reflected, picking the angle on a grid
    that keeps every vector farthest from ``alpha``.
    """
    form = np.asarray(form, dtype=complex)
    alpha = normalize_vector(alpha)
    beta = normalize_vector(beta)
    if equal_up_to_phase(alpha, beta, tol):
        raise ValueError("alpha and beta are equal up to a phase; need a non-symmetric maximizer")
    dec = takagi_factorize(form)
    r1 = dec.values[0]
    if abs(abs(two_form(form, alpha, beta)) - r1) > tol * max(r1, 1.0):
        raise ValueError("(alpha, beta) does not maximize the two-form")
    lead = degeneracy_blocks(dec, tol)[0]
    if lead.size < 2:
        raise ValueError("leading Takagi value is simple; no non-symmetric maximizer exists")
    d = lead.size
    k = form.shape[0]
    e = dec.unitary @ beta
    e = normalize_vector(e[:d])
    re, im = e.real, e.imag
    first, second = (re, im) if np.linalg.norm(re) >= np.linalg.norm(im) else (im, re)
    f1 = first / np.linalg.norm(first)
    g = second - (f1 @ second) * f1
    if np.linalg.norm(g) <= np.sqrt(tol):
        raise ValueError("real and imaginary parts of e are parallel; alpha and beta coincide")
    f2 = g / np.linalg.norm(g)
    f1 = np.concatenate([f1, np.zeros(k - d)])
    f2 = np.concatenate([f2, np.zeros(k - d)])
    u_dag = dec.unitary.conj().T

    vecs = _candidate_vectors(u_dag, f1, f2)
    if _phase_margin(vecs, alpha) >= margin:
        return vecs
    best, best_margin = vecs, _phase_margin(vecs, alpha)
    for reflect in (1.0, -1.0):
        for theta in np.linspace(0.0, np.pi, 64, endpoint=False):
            c, s = np.cos(theta), np.sin(theta)
            cand = _candidate_vectors(u_dag, c * f1 + s * f2, reflect * (-s * f1 + c * f2))
            cm = _phase_margin(cand, alpha)
            if cm > best_margin:
                best, best_margin = cand, cm
    return best


def observation1_clauses(form, alpha, beta, vecs: ObservationVectors) -> dict[str, float]:
    """Deviations for the three clauses; all but ``iii_margin`` should be ~0.

    ``i_span``: residual of alpha and beta outside span(delta1, delta2),
    ``i_orthonormal``: deviation of (delta1, delta2) from orthonormality,
    ``ii_values``: largest gap between the five form values and G,
    ``iii_margin``: smallest ``1 - |<v|alpha>|`` over delta1, delta2, eta, mu'
    (must be positive).
    """
    form = np.asarray(form, dtype=complex)
    alpha = normalize_vector(alpha)
    beta = normalize_vector(beta)
    g = takagi_factorize(form).values[0]
    basis = np.column_stack([vecs.delta1, vecs.delta2])
    gram = basis.conj().T @ basis
    proj = basis @ basis.conj().T
    span = max(np.linalg.norm(alpha - proj @ alpha), np.linalg.norm(beta - proj @ beta))
    values = [
        two_form(form, vecs.delta1, vecs.delta1),
        two_form(form, vecs.delta2, vecs.delta2),
        two_form(form, vecs.eta, vecs.eta),
        two_form(form, vecs.mu, vecs.mu_prime),
    ]
    return {
        "i_span": float(span),
        "i_orthonormal": float(np.max(np.abs(gram - np.eye(2)))),
        "ii_values": float(max(abs(abs(v) - g) for v in values)),
        "iii_margin": float(_phase_margin(vecs, alpha)),
    }
