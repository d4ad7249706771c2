from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, strategies as st

from nofbounds import cylinders
from nofbounds.caps import DEFAULT_CAPS
from nofbounds.cylinders import (
    CylinderIntersection,
    characteristic_tensor,
    enumerate_basis,
    is_cylinder_intersection,
    mu_star,
    search_count,
)
from nofbounds.errors import CapacityError
from nofbounds.tensors import (
    RationalTensor,
    contraction_product,
    hadamard_product,
    l1_norm,
    ones,
    random_rational,
    random_sign,
    sylvester,
)
from oracles import all_intersections, mu_star_matrix, mu_star_oracle

BASIS_SIZES = {(2,): 1, (2, 2): 9, (2, 3): 21, (3, 3): 49, (4, 2): 45, (2, 2, 2): 165}


@pytest.mark.parametrize("shape", sorted(BASIS_SIZES, key=len))
def test_basis_matches_brute_force(shape):
    basis = enumerate_basis(shape)
    brute = {b for b in all_intersections(shape) if any(b)}
    assert len(basis) == BASIS_SIZES[shape] == len(brute)
    got = {tuple(int(v) for v in row) for row in basis.matrix()}
    assert got == brute
    rows = [tuple(int(v) for v in row) for row in basis.matrix()]
    assert rows == sorted(rows)  # lexicographic, entry 0 first


def test_characteristic_tensor_examples():
    J = characteristic_tensor(CylinderIntersection.full((2, 2)))
    assert J == ones((2, 2))
    # Z_1 keeps column 0 in every row; Z_2 keeps both rows
    Z = CylinderIntersection((2, 2), ((1, 0), (1, 1)))
    assert characteristic_tensor(Z) == RationalTensor([[1, 0], [1, 0]])
    for idx in [(0, 1), (1, 0, 1)]:
        shape = (2,) * len(idx)
        T = characteristic_tensor(CylinderIntersection.from_cell(shape, idx))
        assert sum(T.entries) == 1 and T[idx] == 1


@pytest.mark.parametrize("shape", [(2, 2), (2, 3), (2, 2, 2)])
def test_basis_elements_are_intersections(shape):
    for T in enumerate_basis(shape).tensors():
        assert set(T.entries) <= {0, 1}
        assert is_cylinder_intersection(T)


def test_not_an_intersection():
    assert not is_cylinder_intersection(RationalTensor([[1, 0], [0, 1]]))


def test_mu_star_examples():
    assert mu_star(ones((2, 2))).value == 4
    assert mu_star(sylvester(2)).value == 2
    assert mu_star(contraction_product(sylvester(2))).value == 2
    assert mu_star(sylvester(4)).value == 5
    assert mu_star(sylvester(8)).value == 11


def test_witness_attains_value():
    rng = np.random.default_rng(3)
    for shape in [(3, 3), (2, 2, 2), (2, 3, 2)]:
        Q = random_rational(shape, rng)
        res = mu_star(Q)
        chi = characteristic_tensor(res.witness)
        assert abs(sum(a * b for a, b in zip(Q.entries, chi.entries))) == res.value


@pytest.mark.parametrize("seed", range(12))
def test_mu_star_against_oracles(seed):
    rng = np.random.default_rng(seed)
    shape = [(2, 2), (2, 3), (3, 2), (3, 3), (1, 3), (2, 2, 2)][seed % 6]
    Q = random_rational(shape, rng)
    want = mu_star_oracle(Q)
    assert mu_star(Q).value == want
    if len(shape) == 2:
        assert mu_star_matrix(Q) == want


def rational_tensors(shape):
    n = int(np.prod(shape))
    return st.lists(st.fractions(-4, 4, max_denominator=5), min_size=n, max_size=n).map(
        lambda v: RationalTensor(np.array(v, dtype=object).reshape(shape)))


@given(rational_tensors((2, 3)), rational_tensors((2, 3)), st.fractions(-3, 3, max_denominator=4))
def test_mu_star_is_a_norm(a, b, c):
    assert mu_star(a * c).value == abs(c) * mu_star(a).value
    assert mu_star(a + b).value <= mu_star(a).value + mu_star(b).value
    assert mu_star(a).value <= l1_norm(a)


@given(rational_tensors((2, 2, 2)))
def test_mu_star_at_most_l1_cube(a):
    assert mu_star(a).value <= l1_norm(a)


@given(st.integers(0, 10**6))
def test_sign_times_distribution(seed):
    rng = np.random.default_rng(seed)
    shape = [(3, 3), (2, 2, 2)][seed % 2]
    A = random_sign(shape, rng)
    w = rng.integers(0, 5, int(np.prod(shape)))
    if w.sum() == 0:
        w[0] = 1
    P = RationalTensor([F(int(v), int(w.sum())) for v in w], shape=shape)
    assert mu_star(hadamard_product(A, P)).value <= 1


def test_capacity():
    assert search_count((2, 2))[0] == 4
    with pytest.raises(CapacityError):
        enumerate_basis((3, 3, 3), DEFAULT_CAPS.with_(basis_enumeration=1000))
    with pytest.raises(CapacityError):
        mu_star(ones((4, 4, 4)), DEFAULT_CAPS.with_(search=1000))


def test_json_round_trip():
    Z = CylinderIntersection((2, 2), ((1, 0), (1, 1)))
    assert cylinders.from_json(Z.to_json()) == Z
