import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from geosym.tensor_core import (
    Contractor,
    ProductState,
    StateTensor,
    ZeroProjectionError,
    basis_state,
    contract_all_but,
    cyclic_shift,
    equal_up_to_phase,
    evaluate_form,
    ghz_state,
    is_symmetric,
    is_translation_invariant,
    phase_fix,
    quadratic_form_matrix,
    random_state,
    random_symmetric_state,
    random_unit_vector,
    superposition,
    symmetric_basis_matrix,
    symmetric_projection,
    symmetrize,
    w_state,
)

seeds = st.integers(min_value=0, max_value=2**31 - 1)


def random_product(n, k, seed):
    rng = np.random.default_rng(seed)
    return ProductState.from_vectors([random_unit_vector(k, rng) for _ in range(n)])


# -- construction ---------------------------------------------------------------

def test_state_requires_normalization():
    with pytest.raises(ValueError, match="normalized"):
        StateTensor(1, 2, [1.0, 1.0])
    with pytest.raises(ValueError, match="expected 4"):
        StateTensor(2, 2, [1.0, 0, 0])
    with pytest.raises(ValueError):
        StateTensor(1, 1, [1.0])
    with pytest.raises(ValueError, match="finite"):
        StateTensor(1, 2, [np.nan, 0])


def test_state_is_immutable_copy():
    amps = np.array([1.0, 0.0], dtype=complex)
    s = StateTensor(1, 2, amps)
    amps[0] = 5
    assert s.amplitudes[0] == 1
    with pytest.raises(ValueError):
        s.amplitudes[0] = 2


def test_from_amplitudes_infers_parties():
    s = StateTensor.from_amplitudes(np.ones(27), local_dim=3)
    assert (s.n_parties, s.local_dim) == (3, 3)
    assert np.isclose(np.linalg.norm(s.amplitudes), 1)
    with pytest.raises(ValueError):
        StateTensor.from_amplitudes(np.zeros(4))


def test_row_major_convention():
    s = basis_state("01")
    assert s.amplitudes[1] == 1
    assert s.tensor[0, 1] == 1
    s3 = basis_state("12", local_dim=3)
    assert s3.amplitudes[5] == 1


def test_product_state_validation():
    with pytest.raises(ValueError):
        ProductState(())
    with pytest.raises(ValueError):
        ProductState(([1.0, 0.0], [1.0, 0.0, 0.0]))
    with pytest.raises(ValueError):
        ProductState(([2.0, 0.0],))
    p = ProductState.from_vectors([[3, 4j], [1, 0]])
    assert np.isclose(np.linalg.norm(p.factors[0]), 1)
    assert p.to_state().n_parties == 2


# -- the multilinear form --------------------------------------------------------

def test_form_conjugates_the_state():
    s = StateTensor.from_amplitudes([1, 1j])
    p = ProductState.from_vectors([[0, 1]])
    assert np.isclose(evaluate_form(s, p), -1j / np.sqrt(2))


def test_form_known_values():
    assert np.isclose(abs(evaluate_form(ghz_state(3), ProductState.from_vectors([[1, 0]] * 3))),
                      1 / np.sqrt(2))
    a = np.array([np.sqrt(2 / 3), np.sqrt(1 / 3)])
    assert np.isclose(abs(evaluate_form(w_state(3), ProductState.symmetric(a, 3))), 2 / 3)


@settings(max_examples=30, deadline=None)
@given(seeds, st.integers(2, 4), st.integers(2, 3))
def test_form_is_multilinear(seed, n, k):
    rng = np.random.default_rng(seed)
    state = random_state(n, k, seed)
    p = random_product(n, k, seed + 1)
    slot = int(rng.integers(n))
    b = random_unit_vector(k, rng)
    c = random_unit_vector(k, rng)
    x, y = complex(rng.standard_normal(), rng.standard_normal()), rng.standard_normal()
    v = contract_all_but(state, p, slot)
    combo = x * b + y * c
    assert np.isclose(v @ combo, x * evaluate_form(state, p.replace(slot, b))
                      + y * evaluate_form(state, p.replace(slot, c)))


@settings(max_examples=30, deadline=None)
@given(seeds, st.integers(2, 4), st.integers(2, 3))
def test_contraction_consistency(seed, n, k):
    state = random_state(n, k, seed)
    p = random_product(n, k, seed + 1)
    value = evaluate_form(state, p)
    for slot in range(n):
        assert np.isclose(contract_all_but(state, p, slot) @ p.factors[slot], value)
    m = quadratic_form_matrix(state, p, 0, n - 1)
    assert np.isclose(p.factors[0] @ m @ p.factors[n - 1], value)
    # direct inner product with the product vector
    assert np.isclose(np.vdot(state.amplitudes, p.amplitudes()), value)


@settings(max_examples=30, deadline=None)
@given(seeds, st.integers(2, 4), st.integers(2, 3))
def test_symmetric_form_is_permutation_invariant(seed, n, k):
    state = random_symmetric_state(n, k, seed)
    p = random_product(n, k, seed + 1)
    perm = np.random.default_rng(seed).permutation(n)
    q = ProductState(tuple(p.factors[i] for i in perm))
    assert np.isclose(evaluate_form(state, p), evaluate_form(state, q))


def test_contractor_batches_match_single():
    state = random_state(3, 2, 7)
    rng = np.random.default_rng(0)
    batch = [np.array([random_unit_vector(2, rng) for _ in range(5)]) for _ in range(3)]
    c = Contractor(state.tensor.conj())
    values = c.value(batch)
    for r in range(5):
        p = ProductState(tuple(b[r] for b in batch))
        assert np.isclose(values[r], evaluate_form(state, p))


def test_slot_errors():
    s, p = ghz_state(3), ProductState.from_vectors([[1, 0]] * 3)
    with pytest.raises(IndexError):
        contract_all_but(s, p, 3)
    with pytest.raises(ValueError):
        quadratic_form_matrix(s, p, 1, 1)
    with pytest.raises(ValueError):
        evaluate_form(s, ProductState.from_vectors([[1, 0]] * 2))


# -- symmetry ----------------------------------------------------------------------

@settings(max_examples=25, deadline=None)
@given(seeds, st.integers(2, 4), st.integers(2, 3))
def test_symmetrize_is_idempotent(seed, n, k):
    state = random_state(n, k, seed)
    s1 = symmetrize(state)
    assert is_symmetric(s1)
    s2 = symmetrize(s1)
    assert np.allclose(s1.amplitudes, s2.amplitudes, atol=1e-12)


def test_symmetrize_zero_projection():
    singlet = superposition({"01": 1, "10": -1})
    with pytest.raises(ZeroProjectionError):
        symmetrize(singlet)


def test_projection_matches_permutation_average():
    import itertools
    t = random_state(3, 2, 3).tensor
    avg = sum(np.transpose(t, p) for p in itertools.permutations(range(3))) / 6
    assert np.allclose(symmetric_projection(t, 3), avg)


def test_symmetric_basis_is_orthonormal_and_symmetric():
    for n, k in [(3, 2), (4, 3), (2, 4)]:
        b = symmetric_basis_matrix(n, k)
        assert np.allclose(b @ b.T, np.eye(b.shape[0]))
        for row in b:
            assert is_symmetric(StateTensor(n, k, row))


def test_translation_invariance():
    assert is_translation_invariant(superposition({"0101": 1, "1010": 1}))
    assert not is_translation_invariant(basis_state("0011"))
    t = basis_state("001").tensor
    assert cyclic_shift(t, 3)[0, 1, 0] == 1


def test_random_symmetric_state_is_symmetric():
    assert is_symmetric(random_symmetric_state(4, 3, 1))
    a = random_symmetric_state(3, 2, 5).amplitudes
    assert np.array_equal(a, random_symmetric_state(3, 2, 5).amplitudes)


def test_phase_helpers():
    v = np.array([0.3, -0.9j])
    w = phase_fix(v)
    assert np.isclose(w[1], 0.9)
    assert equal_up_to_phase(v, np.exp(0.7j) * v)
    assert not equal_up_to_phase([1, 0], [1, 1])
    with pytest.raises(ValueError):
        phase_fix([0, 0])
