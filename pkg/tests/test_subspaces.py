import math

import numpy as np
import pytest

from geosym.optimizer import OptimizerConfig
from geosym.subspaces import (
    basis,
    brute_force_rank,
    dim_symmetric,
    dim_translation_invariant,
    divisors,
    max_symmetric_product_overlap_is_zero,
    necklace_representatives,
    symmetric_product_overlap,
    totient,
)
from geosym.tensor_core import (
    ProductState,
    StateTensor,
    basis_state,
    evaluate_form,
    ghz_state,
    is_symmetric,
    is_translation_invariant,
    random_unit_vector,
    superposition,
)


def test_number_theory():
    assert [totient(n) for n in range(1, 11)] == [1, 1, 2, 2, 4, 2, 6, 4, 6, 4]
    assert divisors(12) == [1, 2, 3, 4, 6, 12]


@pytest.mark.parametrize("n,k,s,t", [(4, 2, 5, 6), (3, 2, 4, 4), (6, 2, 7, 14), (3, 3, 10, 11), (1, 2, 2, 2)])
def test_dimensions(n, k, s, t):
    assert dim_symmetric(n, k) == s
    assert dim_translation_invariant(n, k) == t


def test_dimension_errors():
    with pytest.raises(ValueError):
        dim_symmetric(0, 2)
    with pytest.raises(ValueError):
        dim_translation_invariant(3, 1)


@pytest.mark.parametrize("n", range(1, 7))
@pytest.mark.parametrize("k", [2, 3])
def test_brute_force_ranks(n, k):
    assert brute_force_rank("T", n, k) == dim_translation_invariant(n, k)
    assert brute_force_rank("S", n, k) == dim_symmetric(n, k)
    assert len(necklace_representatives(n, k)) == dim_translation_invariant(n, k)


def test_bases_are_orthonormal_and_invariant():
    for label in "STX":
        b = basis(label, 4, 2)
        m = b.matrix
        assert np.allclose(m @ m.conj().T, np.eye(len(b)))
        for v in b.vectors:
            assert is_translation_invariant(v)
    assert [len(basis(label, 4, 2)) for label in "STX"] == [5, 6, 1]
    with pytest.raises(ValueError):
        basis("Q", 4, 2)


def test_x_basis_vector_4_2():
    (v,) = basis("X", 4, 2).vectors
    # orthogonal to the symmetric subspace, spanned by the orbits of 0011 and 0101
    orbit_0011 = superposition({"0011": 1, "0110": 1, "1100": 1, "1001": 1}).amplitudes
    orbit_0101 = superposition({"0101": 1, "1010": 1}).amplitudes
    expected = 2 * orbit_0011 - 2 * math.sqrt(2) * orbit_0101
    expected /= np.linalg.norm(expected)
    assert abs(abs(np.vdot(expected, v.amplitudes)) - 1) < 1e-12
    assert max_symmetric_product_overlap_is_zero(v)
    rng = np.random.default_rng(0)
    for _ in range(50):
        a = random_unit_vector(2, rng)
        assert abs(evaluate_form(v, ProductState.symmetric(a, 4))) < 1e-12


def test_overlap_predicate_false_cases():
    assert not max_symmetric_product_overlap_is_zero(ghz_state(4))
    assert not max_symmetric_product_overlap_is_zero(superposition({"0101": 1, "1010": 1}))
    with pytest.raises(ValueError, match="translation"):
        max_symmetric_product_overlap_is_zero(basis_state("0011"))


def test_symmetric_overlap_of_alternating_state():
    # grid oracle: max over a of |psi(a,a,a,a)| = sqrt(2)/4, at |a0|=|a1|
    g, a = symmetric_product_overlap(superposition({"0101": 1, "1010": 1}), OptimizerConfig())
    assert abs(g - math.sqrt(2) / 4) < 1e-9
    assert np.allclose(np.abs(a), [1 / math.sqrt(2)] * 2, atol=1e-6)
