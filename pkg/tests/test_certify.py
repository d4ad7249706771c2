import math
from fractions import Fraction as F

import numpy as np
import pytest

from nofbounds.approxdeg import dual_polynomial
from nofbounds.boolfun import OR, XOR, RealFunction
from nofbounds.certificate import ASSUMPTION, Quantity, check_certificate
from nofbounds.certify import (
    E_HAT,
    cc_bounds,
    contraction_chain_check,
    degree_to_mu_alpha,
    disjointness_bound,
    disjointness_parameters,
    hadamard_bound,
    is_hadamard,
    norm_certificate,
    partition_certificate,
    pattern_mu_star_bound,
    proof_size_bound,
)
from nofbounds.cylinders import CylinderIntersection
from nofbounds.errors import ConditionViolated, ValidationError
from nofbounds.norms import mu, mu_alpha_dual, mu_alpha_primal
from nofbounds.pattern import PatternSpec, build_pattern_tensor
from nofbounds.rational import INF
from nofbounds.tensors import RationalTensor, SignTensor, ones, random_sign, sylvester
from oracles import disjointness_oracle


def checked(cert):
    rep = check_certificate(cert)
    assert rep.ok, rep.problems
    return cert


def test_e_hat_is_an_upper_bound():
    assert E_HAT > math.e and E_HAT - F(math.e) < F(1, 10**13)


def test_contraction_examples():
    c = checked(contraction_chain_check(sylvester(2)))
    env = c.env
    assert env["lhs"] == F(1, 4) and env["mid"] == F(1, 2) and env["E|BB|"] == F(1, 2)
    c = checked(contraction_chain_check(ones((2, 2))))
    assert c.env["lhs"] == c.env["mid"] == c.env["E|BB|"] == 1


def test_contraction_random_cubes():
    rng = np.random.default_rng(9)
    for _ in range(10):
        c = checked(contraction_chain_check(random_sign((2, 2, 2), rng)))
        assert c.ok


def test_is_hadamard():
    assert is_hadamard(sylvester(2)) and is_hadamard(sylvester(4)) and is_hadamard(sylvester(8))
    assert not is_hadamard(ones((2, 2)))
    assert not is_hadamard(SignTensor([[1, 1, -1], [1, 1, 1], [-1, -1, 1]]))
    with pytest.raises(ValidationError):
        hadamard_bound(SignTensor([[1, -1], [-1, 1]]))


@pytest.mark.parametrize("N,value", [(2, F(2)), (4, F(16, 5)), (8, F(64, 11))])
def test_hadamard_certificates(N, value):
    cert = checked(hadamard_bound(sylvester(N)))
    assert cert.final == value
    assert cert.final ** 2 >= N
    assert cert.env["mu_inf analytic"] ** 2 >= N


@pytest.mark.parametrize("N", [2, 4])
def test_hadamard_soundness(N):
    H = sylvester(N)
    assert hadamard_bound(H).final <= mu_alpha_primal(H, INF).value


def normalized_phi(m, alpha=3):
    v = dual_polynomial(OR(m), alpha)
    return RealFunction(m, v.values), v.vanishing_degree


def test_pattern_bound_examples():
    # m = 1 admits no nonzero phi vanishing up to degree 1, so the premises are supplied
    phi = RealFunction(1, (F(1, 2), F(-1, 2)))
    spec = PatternSpec(2, 1, 44, phi)
    printed = checked(pattern_mu_star_bound(spec, 1, convention="printed", verify_phi=False))
    assert printed.final == F(1, 2)
    assert printed.summary()[ASSUMPTION] >= 1
    provable = checked(pattern_mu_star_bound(spec, 1, verify_phi=False))
    assert provable.final == Quantity.pow2(F(-1, 2))
    with pytest.raises(ConditionViolated, match="need M >= 22"):
        pattern_mu_star_bound(PatternSpec(2, 1, 8, phi), 1, convention="printed", verify_phi=False)
    with pytest.raises(ConditionViolated, match="174"):
        pattern_mu_star_bound(PatternSpec(3, 1, 2, phi), 1, convention="printed", verify_phi=False)


def test_pattern_bound_verified_premises():
    phi, d = normalized_phi(4)
    assert d == 1
    cert = checked(pattern_mu_star_bound(PatternSpec(2, 4, 44, phi), d))
    assert cert.final == Quantity.pow2(F(-1, 2))
    assert cert.summary()[ASSUMPTION] == 0


def test_pattern_bound_premises():
    bad_scale = PatternSpec(2, 1, 44, RealFunction(1, (F(1, 2), F(-1, 2))), scale=1)
    with pytest.raises(ValidationError):
        pattern_mu_star_bound(bad_scale, 1)
    leaky = PatternSpec(2, 1, 44, RealFunction(1, (F(1, 2), F(1, 2))))
    with pytest.raises(ValidationError):
        pattern_mu_star_bound(leaky, 0)
    cert = checked(pattern_mu_star_bound(leaky, 0, verify_phi=False))
    assert cert.summary()[ASSUMPTION] == 1


def test_degree_chain_examples():
    printed = checked(degree_to_mu_alpha(OR(1), 2, 44, 2, 3, convention="printed"))
    assert printed.final == Quantity.pow2(F(1, 2)) / 4
    provable = checked(degree_to_mu_alpha(OR(1), 2, 44, 2, 3))
    assert provable.final == F(1, 4)
    assert provable.parameters["route"] == "analytic"
    with pytest.raises(ValidationError):
        degree_to_mu_alpha(OR(1), 2, 44, 3, 3)
    x = checked(degree_to_mu_alpha(XOR(2), 2, 22, INF, convention="printed"))
    assert x.parameters["degree"] == 2
    assert x.final == Quantity.pow2(F(2, 2)) / 2 ** 0 * x.env["numerator"]


@pytest.mark.parametrize("M", [2, 3])
@pytest.mark.parametrize("alpha", [1, F(3, 2), 2, INF])
def test_degree_chain_sound_small(M, alpha):
    cert = checked(degree_to_mu_alpha(OR(1), 2, M, alpha, 3))
    assert cert.parameters["route"] == "enumeration"
    A = build_pattern_tensor(PatternSpec(2, 1, M, OR(1)))
    # the dual LP is the faster of the two and equals the primal exactly
    assert cert.final <= mu_alpha_dual(A, alpha).value


def test_degree_chain_needs_condition():
    with pytest.raises(ConditionViolated):
        degree_to_mu_alpha(OR(2), 3, 4, 2, 3)


def test_cc_conversions():
    H = sylvester(2)
    base = hadamard_bound(H)
    r = checked(cc_bounds(base, F(1, 4)))
    assert r.final == base.final / 2
    n = checked(cc_bounds(base, kind="nondeterministic"))
    assert n.final == F(1, 2) and n.conclusion["vacuous"]
    d = checked(cc_bounds(norm_certificate("J", mu(ones((2, 2)))), kind="deterministic"))
    assert d.final == 1 and d.lower_bits == 0
    low = norm_certificate("H", mu_alpha_primal(H, F(3, 2)), alpha=F(3, 2))
    with pytest.raises(ValidationError):
        cc_bounds(low, F(1, 4))
    with pytest.raises(ValidationError):
        cc_bounds(base, F(1, 2))


def test_mu2_conversion_formula():
    H = sylvester(4)
    cert = norm_certificate("H4", mu_alpha_primal(H, 2), alpha=2)
    r = checked(cc_bounds(cert, F(1, 4)))
    assert r.final == mu_alpha_primal(H, 2).value / 2


def test_partition():
    A = RationalTensor([[1, 1], [1, -1]])
    J = CylinderIntersection.full((2, 2))
    cell = CylinderIntersection.from_cell((2, 2), (1, 1))
    cert = checked(partition_certificate(A, [(1, J), (-1, cell), (-1, cell)]))
    assert cert.final == 3 and mu(A).value <= 3
    with pytest.raises(ValidationError):
        partition_certificate(A, [(1, J)])


SPOT = [10**3, 10**6, 10**9, 10**12, 2**60]


@pytest.mark.parametrize("n", SPOT)
def test_disjointness_against_oracle(n):
    want = disjointness_oracle(n, 2)
    cert = checked(disjointness_bound(n, 2))
    p = cert.parameters
    assert (p["m"], p["M"], p["n_prime"], p["d"]) == (want["m"], want["M"], want["n_prime"], want["d"])
    assert cert.final == Quantity.pow2(want["bits"])
    assert p["n_prime"] <= n


def test_disjointness_million():
    c_k, m, M, n_prime, d = disjointness_parameters(10**6, 2)
    assert (m, M, n_prime, d) == (438, 1142, 500196, 9)
    cert = checked(disjointness_bound(10**6, 2))
    assert cert.final == 2 and not cert.conclusion["vacuous"]


def test_disjointness_trivial_and_errors():
    cert = checked(disjointness_bound(100, 2))
    assert cert.conclusion["trivial"] and cert.lower_bits == 0
    with pytest.raises(ValidationError):
        disjointness_bound(10**6, 2, eps=F(1, 3))
    printed = checked(disjointness_bound(10**6, 2, convention="printed"))
    assert printed.summary()[ASSUMPTION] > checked(disjointness_bound(10**6, 2)).summary()[ASSUMPTION]


@pytest.mark.parametrize("k", [2, 3])
def test_disjointness_monotone(k):
    ns = sorted({int(10 ** (e / 4)) for e in range(8, 80)} | {2**j for j in range(10, 200, 7)})
    bits = [disjointness_bound(n, k).lower_bits for n in ns]
    assert all(a <= b for a, b in zip(bits, bits[1:]))
    assert bits[-1] > 0


def test_proof_size_sweep():
    exps = []
    for j in (20, 30, 40, 60, 80, 100):
        cert = checked(proof_size_bound(2**j, 2))
        exps.append(cert.final)
    assert exps[0] == 0 and exps[1] == 0
    assert all(a <= b for a, b in zip(exps, exps[1:]))
    assert exps[-1] > 1
    assert checked(proof_size_bound(16, 2)).conclusion["trivial"]
