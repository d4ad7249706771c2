from fractions import Fraction as F

import pytest

from nofbounds.approxdeg import (
    DualPolynomial,
    MonomialMatrix,
    alpha_d,
    deg_alpha,
    dual_polynomial,
    lemma_dual_value,
    sign_representable,
    verify_dual_polynomial,
)
from nofbounds.boolfun import AND, MAJ, OR, XOR, BooleanFunction, character
from nofbounds.caps import DEFAULT_CAPS
from nofbounds.errors import CapacityError, ValidationError
from nofbounds.rational import INF

FROZEN = {
    "XOR2": (XOR(2), [INF, INF, 1]),
    "XOR3": (XOR(3), [INF, INF, INF, 1]),
    "AND2": (AND(2), [INF, 3, 1]),
    "OR2": (OR(2), [INF, 3, 1]),
    "OR3": (OR(3), [INF, 5, F(5, 3), 1]),
    "OR4": (OR(4), [INF, 7, 2, F(9, 7), 1]),
    "MAJ3": (MAJ(3), [INF, 3, 3, 1]),
}


@pytest.mark.parametrize("name", FROZEN)
def test_alpha_d_values(name):
    f, want = FROZEN[name]
    assert [alpha_d(f, d).value for d in range(f.m + 1)] == want


@pytest.mark.parametrize("name", FROZEN)
def test_lemma_dual_matches(name):
    f, want = FROZEN[name]
    for d in range(f.m):
        assert lemma_dual_value(f, d) == want[d]
    assert lemma_dual_value(f, f.m) is None


def test_optimal_polynomial_attains_value():
    f = OR(3)
    res = alpha_d(f, 1)
    for x in range(8):
        p = sum(c * (-1) ** bin(S & x).count("1") for S, c in zip(res.columns, res.polynomial))
        assert 1 <= f.table[x] * p <= res.value


def test_monomial_matrix():
    mm = MonomialMatrix.build(3, 2)
    assert mm.n_columns == MonomialMatrix.expected_columns(3, 2) == 7
    assert mm.W.shape == (8, 7)


def test_degree_examples():
    for alpha in (1, 2, F(7, 2), INF):
        assert deg_alpha(OR(1), alpha) == 1
    assert deg_alpha(OR(2), INF) == 1
    assert sign_representable(OR(2), 1) and not sign_representable(OR(2), 0)


def test_hand_sign_representation():
    f = OR(2)
    for x in range(4):
        x1, x2 = (-1 if x & 1 else 1), (-1 if x & 2 else 1)
        assert f.table[x] * (x1 + x2 - 1) > 0


@pytest.mark.parametrize("m", range(1, 5))
def test_nisan_szegedy_consistency(m):
    d = deg_alpha(OR(m), 3)
    assert 6 * d * d >= m


@pytest.mark.parametrize("f", [OR(3), MAJ(3), AND(2), XOR(2), OR(4)], ids=str)
def test_degree_monotone_in_alpha(f):
    degs = [deg_alpha(f, a) for a in (1, F(3, 2), 2, 3, 7, INF)]
    assert degs == sorted(degs, reverse=True)
    assert degs[0] == f.m


@pytest.mark.parametrize("m", range(1, 5))
@pytest.mark.parametrize("alpha", [F(3, 2), 2, 3, INF])
def test_bracketing(m, alpha):
    f = OR(m)
    d = deg_alpha(f, alpha)
    if alpha == INF:
        assert sign_representable(f, d) and (d == 0 or not sign_representable(f, d - 1))
    else:
        assert alpha_d(f, d).value <= alpha
        if d > 0:
            below = alpha_d(f, d - 1).value
            assert below == INF or below > alpha


@pytest.mark.parametrize("m", range(1, 5))
@pytest.mark.parametrize("alpha", [2, 3, INF])
def test_extracted_witnesses(m, alpha):
    f = OR(m)
    v = dual_polynomial(f, alpha)
    rep = verify_dual_polynomial(v, f, alpha)
    assert rep.ok and rep.l1 == 1
    assert v.vanishing_degree == deg_alpha(f, alpha) - 1
    assert DualPolynomial.from_json(v.to_json()) == v


def test_hand_witnesses():
    f = OR(2)
    v = DualPolynomial(2, (F(1, 2), 0, 0, F(-1, 2)), 0, F(1))
    rep = verify_dual_polynomial(v, f, 3)
    assert rep.ok and rep.correlation_value == 1
    g = XOR(2)
    w = DualPolynomial(2, tuple(F(character([0, 1], x), 4) for x in [(1, 1), (-1, 1), (1, -1), (-1, -1)]), 1, F(1))
    rep = verify_dual_polynomial(w, g, INF)
    assert rep.ok and rep.sign_consistent


def test_counterexamples():
    f = OR(2)
    doubled = DualPolynomial(2, (1, 0, 0, -1), 0, F(2))
    rep = verify_dual_polynomial(doubled, f, 3)
    assert not rep.normalized and not rep.ok
    leak = DualPolynomial(2, (F(1, 2), F(1, 2), 0, 0), 0, F(0))
    rep = verify_dual_polynomial(leak, f, 3)
    assert not rep.vanishing and rep.max_leak_degree == 0


def test_errors():
    with pytest.raises(ValidationError):
        dual_polynomial(BooleanFunction(2, (1, 1, 1, 1)), 3)
    with pytest.raises(ValidationError):
        deg_alpha(OR(2), F(1, 2))
    with pytest.raises(CapacityError):
        alpha_d(OR(4), 2, DEFAULT_CAPS.with_(approxdeg_arity=3))
