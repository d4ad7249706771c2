import copy
import json
from decimal import Decimal, getcontext
from fractions import Fraction as F

import pytest
from hypothesis import assume, given, strategies as st

from nofbounds.certificate import (
    ASSUMPTION,
    BoundCertificate,
    Chain,
    Quantity,
    certificate_from_json,
    check_certificate,
)
from nofbounds.errors import ValidationError

getcontext().prec = 120

pos_fracs = st.fractions(min_value=F(1, 1000), max_value=1000, max_denominator=1000)
exponents = st.fractions(-300, 300, max_denominator=8)
quantities = st.builds(Quantity, pos_fracs, exponents, st.integers(1, 6))


def as_decimal_log(q):
    f = Decimal(q.factor.numerator).ln() - Decimal(q.factor.denominator).ln()
    return f / q.root + Decimal(q.exponent.numerator) / Decimal(q.exponent.denominator) * Decimal(2).ln()


@given(quantities, quantities)
def test_order_matches_high_precision(a, b):
    la, lb = as_decimal_log(a), as_decimal_log(b)
    assume(abs(la - lb) > Decimal(10) ** -60)
    assert (a < b) == (la < lb)
    assert (a > b) == (la > lb)


@given(quantities, st.integers(1, 4))
def test_equal_representations(q, p):
    other = Quantity(q.factor**p, q.exponent, q.root * p)
    assert other == q and not other < q


@given(quantities, quantities)
def test_arithmetic(a, b):
    assert (a * b) / b == a
    assert (a ** 3).nth_root(3) == a
    assert a.nth_root(2) ** 2 == a


@given(quantities)
def test_floor_log(q):
    t = q.floor_log2_rational()
    assert Quantity.pow2(t) <= q < Quantity.pow2(t + F(1, q.root))


def test_normal_form():
    q = Quantity(F(8), F(1, 2))
    assert q.factor == 1 and q.exponent == F(7, 2)
    assert Quantity(F(4), 0, 2) == 2 and Quantity(F(4), 0, 2).root == 1
    assert str(Quantity(F(3), F(1, 2))) == "3*2^(1/2)"
    assert Quantity(F(1, 2)).is_rational
    with pytest.raises(ValidationError):
        Quantity(F(-1), F(1, 2))
    assert Quantity(F(-3)) < Quantity(0) < Quantity.pow2(-1000)


def test_huge_exponents():
    a = Quantity(F(3), F(10**6))
    b = Quantity(F(5), F(10**6))
    assert a < b
    assert Quantity(F(1), F(10**9)) > Quantity(F(10**100))


def test_from_json_round_trip():
    for q in [Quantity(F(3, 7), F(5, 3), 2), Quantity(F(9)), Quantity(F(1), F(-400))]:
        assert Quantity.from_json(json.loads(json.dumps(q.to_json()))) == q


def small_certificate():
    ch = Chain()
    ch.value("a", F(2), "a = 2")
    ch.value("b", Quantity(F(2), F(1, 2)), "b = 2^(3/2)")
    ch.derive("ab", "mul", ["a", "b"], "ab = a b")
    ch.derive("r", "root", ["ab"], "r = sqrt(ab)", root=2)
    s = ch.compare("r", ">=", "a", "r >= a")
    ch.fact("recorded", {"holds": True}, True, "an outside fact", status=ASSUMPTION, citation="outside")
    ch.bound("x", ">=", "r", "x >= r", requires=[s], citation="toy")
    return BoundCertificate("toy", ch.steps, {"subject": "x", "relation": ">=", "quantity": "r"})


def test_checker_accepts_and_round_trips():
    cert = small_certificate()
    assert cert.ok
    rep = check_certificate(cert)
    assert rep.ok, rep.problems
    assert rep.counts[ASSUMPTION] == 1
    again = certificate_from_json(json.loads(json.dumps(cert.to_json())))
    assert again.to_json() == cert.to_json()
    assert check_certificate(again).ok


@pytest.mark.parametrize("tamper", ["value", "derived", "compare", "status", "summary", "conclusion", "citation"])
def test_checker_detects_tampering(tamper):
    obj = copy.deepcopy(small_certificate().to_json())
    steps = obj["steps"]
    if tamper == "value":
        steps[0]["value"] = {"factor": "1", "exponent": "0"}
    elif tamper == "derived":
        steps[2]["value"] = {"factor": "7", "exponent": "1/2"}
    elif tamper == "compare":
        steps[4]["relation"] = "<"
    elif tamper == "status":
        steps[5]["status"] = "verified-exact"
        steps[5]["data"]["holds"] = False
    elif tamper == "summary":
        obj["summary"]["verified-exact"] += 1
    elif tamper == "conclusion":
        obj["conclusion"]["value"] = {"factor": "5", "exponent": "0"}
    elif tamper == "citation":
        steps[1]["citation"] = ""
    assert not check_certificate(obj).ok


def test_redefinition_rejected():
    ch = Chain()
    ch.value("a", 1, "a")
    with pytest.raises(ValueError):
        ch.value("a", 2, "a again")
