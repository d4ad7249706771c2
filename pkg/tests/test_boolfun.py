from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from nofbounds.boolfun import (
    AND,
    DISJ,
    MAJ,
    OR,
    XOR,
    BooleanFunction,
    RealFunction,
    character,
    chi,
    degree,
    fourier_transform,
    function_from_json,
    index,
    l1_of_function,
    monomials,
    point,
)
from nofbounds.errors import ValidationError
from oracles import fourier_oracle, or_table


def test_characters():
    for x in [(1, 1), (-1, 1), (1, -1), (-1, -1)]:
        assert character([], x) == 1
        assert character([0], x) == x[0]
    assert character([0, 1], (-1, -1)) == 1


def test_encoding():
    assert point(0b101, 3) == (-1, 1, -1)
    assert all(index(point(i, 4)) == i for i in range(16))


def test_builtin_tables():
    assert OR(2).table == (1, -1, -1, -1)
    assert AND(3)((-1, -1, -1)) == -1
    assert AND(3)((-1, 1, -1)) == 1
    assert list(OR(4).table) == or_table(4)
    # DISJ_{2,1}(x, y) = -OR_1(x AND y): +1 exactly when both are true
    d = DISJ(2, 1)
    assert [d((x, y)) for x in (1, -1) for y in (1, -1)] == [-1, -1, -1, 1]
    assert MAJ(3)((-1, -1, 1)) == -1 and MAJ(3)((-1, 1, 1)) == 1


def test_fourier_examples():
    assert fourier_transform(OR(1)).coefficients == (0, 1)
    assert fourier_transform(RealFunction(1, (1, 1))).coefficients == (1, 0)
    # OR_2 has mean -1/2 under the -1 = true encoding
    assert fourier_transform(OR(2)).coefficients == (F(-1, 2), F(1, 2), F(1, 2), F(1, 2))
    assert fourier_transform(AND(2)).coefficients == (F(1, 2), F(1, 2), F(1, 2), F(-1, 2))


def test_l1_examples():
    assert l1_of_function(OR(2)) == 4
    assert l1_of_function(RealFunction(2, (F(1, 2), 0, 0, F(-1, 2)))) == 1
    assert l1_of_function(RealFunction(2, (0, 0, 0, 0))) == 0


@pytest.mark.parametrize("m", range(5))
def test_character_orthogonality(m):
    n = 1 << m
    for S in range(n):
        for T in range(n):
            s = sum(chi(S, x) * chi(T, x) for x in range(n))
            assert s == (n if S == T else 0)


@pytest.mark.parametrize("m", range(1, 5))
def test_or_has_full_degree(m):
    assert degree(OR(m)) == m
    assert degree(XOR(m)) == m


@given(st.integers(0, 4).flatmap(
    lambda m: st.lists(st.fractions(-5, 5, max_denominator=7), min_size=1 << m, max_size=1 << m)))
def test_transform_round_trip(table):
    m = len(table).bit_length() - 1
    f = RealFunction(m, tuple(table))
    spec = fourier_transform(f)
    assert list(spec.coefficients) == fourier_oracle(table)
    assert spec.inverse().table == f.table


def test_monomial_order():
    assert monomials(3, 1) == [0, 1, 2, 4]
    assert len(monomials(4, 2)) == 11


def test_json_parsing():
    assert function_from_json({"name": "OR", "m": 3}) == OR(3)
    f = function_from_json({"m": 2, "table": "+---"})
    assert isinstance(f, BooleanFunction) and f.table == OR(2).table
    g = function_from_json({"m": 1, "table": ["1/2", "-1/2"]})
    assert g.table == (F(1, 2), F(-1, 2))
    assert function_from_json(f.to_json()) == f
    for bad in ({"name": "NAND", "m": 2}, {"m": 2, "table": "+x--"}, {"m": 2}, {"name": "OR"}):
        with pytest.raises(ValidationError):
            function_from_json(bad)


def test_validation():
    with pytest.raises(ValidationError):
        BooleanFunction(1, (1, 2))
    with pytest.raises(ValidationError):
        RealFunction(2, (1, 2, 3))
