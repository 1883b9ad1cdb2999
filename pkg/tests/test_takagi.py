import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from geosym.takagi import (
    degeneracy_blocks,
    observation1_clauses,
    observation1_vectors,
    takagi_factorize,
    two_form,
)
from geosym.lab import degenerate_symmetric_matrix, degenerate_two_form, random_symmetric_matrix


def check_decomposition(m, tol=1e-10):
    dec = takagi_factorize(m)
    k = m.shape[0]
    scale = max(np.linalg.norm(m), 1e-300)
    assert np.linalg.norm(dec.reconstruct() - m) <= tol * scale
    assert np.allclose(dec.unitary.conj().T @ dec.unitary, np.eye(k), atol=tol)
    assert np.all(np.diff(dec.values) <= 0)
    # independent oracle: singular values from the SVD
    assert np.allclose(dec.values, np.linalg.svd(m, compute_uv=False), atol=tol * scale)
    return dec


def test_swap_matrix():
    m = np.array([[0, 1], [1, 0]], dtype=complex)
    dec = check_decomposition(m)
    assert np.allclose(dec.values, [1, 1])


def test_diagonal_complex():
    m = np.diag([1j, -2.0])
    dec = check_decomposition(m)
    assert np.allclose(dec.values, [2, 1])


def test_zero_and_rank_deficient():
    dec = check_decomposition(np.zeros((3, 3), dtype=complex))
    assert np.allclose(dec.values, 0)
    v = np.array([1, 1j, 2])
    dec = check_decomposition(np.outer(v, v))
    assert np.allclose(dec.values[1:], 0, atol=1e-12)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**31 - 1), st.integers(1, 8))
def test_random_matrices(seed, k):
    check_decomposition(random_symmetric_matrix(k, np.random.default_rng(seed)))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**31 - 1), st.integers(2, 8))
def test_degenerate_spectra(seed, k):
    check_decomposition(degenerate_symmetric_matrix(k, np.random.default_rng(seed)))


def test_maximizer_attains_top_value():
    m = random_symmetric_matrix(4, np.random.default_rng(3))
    dec = takagi_factorize(m)
    a = dec.maximizer()
    assert np.isclose(abs(two_form(m, a, a)), dec.values[0])


def test_rejects_non_symmetric():
    with pytest.raises(ValueError, match="symmetric"):
        takagi_factorize(np.array([[0, 1], [2, 0]]))
    with pytest.raises(ValueError):
        takagi_factorize(np.ones((2, 3)))


def test_degeneracy_blocks():
    dec = takagi_factorize(np.diag([2.0, 2.0, 1.0, 0.0]))
    blocks = degeneracy_blocks(dec)
    assert [(b.start, b.size) for b in blocks] == [(0, 2), (2, 1), (3, 1)]
    assert np.isclose(blocks[0].value, 2.0)
    with pytest.raises(ValueError):
        degeneracy_blocks(dec, tol=0)


def test_observation1_identity_form():
    form = np.eye(2)
    alpha = np.array([1, -1j]) / np.sqrt(2)
    beta = np.array([1, 1j]) / np.sqrt(2)
    assert np.isclose(two_form(form, alpha, beta), 1)
    vecs = observation1_vectors(form, alpha, beta)
    c = observation1_clauses(form, alpha, beta, vecs)
    assert c["i_span"] < 1e-8 and c["i_orthonormal"] < 1e-8 and c["ii_values"] < 1e-8
    assert c["iii_margin"] > 1e-8


def test_observation1_constructed_forms():
    rng = np.random.default_rng(0)
    for k in (2, 3, 4, 5):
        form, alpha, beta = degenerate_two_form(k, rng)
        vecs = observation1_vectors(form, alpha, beta)
        c = observation1_clauses(form, alpha, beta, vecs)
        assert max(c["i_span"], c["i_orthonormal"], c["ii_values"]) < 1e-8
        assert c["iii_margin"] > 1e-8


def test_observation1_errors():
    form = np.eye(2)
    a = np.array([1, 0])
    with pytest.raises(ValueError, match="phase"):
        observation1_vectors(form, a, 1j * a)
    with pytest.raises(ValueError, match="maximize"):
        observation1_vectors(form, a, np.array([0, 1]))
    # with a simple top value every maximizing pair is symmetric
    with pytest.raises(ValueError):
        observation1_vectors(np.diag([1.0, 0.5]), [1, -1j], [1, 1j])
