"""Local generating function, square-part sums, and the assembled identity."""

import math
from fractions import Fraction

import pytest

from planes import repnum
from planes.mds import (
    ONE,
    P,
    X1,
    X2,
    Y,
    MultiPoly,
    RationalFn,
    closed_local,
    f_sum_check,
    h_fn,
    h_series,
    l_value_check,
    lhs_local,
    odd_primes_upto,
    p_local,
    p_local_from_sum,
    q_local,
    rf_equal,
    rs3_identity_numeric,
    verify_local_identity,
)


# ---------------------------------------------------------------------------
# polynomial plumbing


def test_multipoly_arithmetic():
    f = (ONE + X1) * (ONE - X1)
    assert f == ONE - X1 ** 2
    assert (ONE + Y) ** 2 == ONE + 2 * Y + Y ** 2
    assert P - P == MultiPoly.const(0)
    assert not (P - P)


def test_monomial_negative_exponents():
    inv = MultiPoly.monomial(1, p=-1)
    assert inv * P == ONE
    assert MultiPoly.monomial(Fraction(1, 2), p=-2).evaluate(
        {"p": Fraction(4), "x1": Fraction(0), "x2": Fraction(0),
         "y": Fraction(0)}) == Fraction(1, 32)


def test_subst_monomial_zero_into_pole():
    inv = MultiPoly.monomial(1, p=-1)
    with pytest.raises(ZeroDivisionError):
        inv.subst_monomial("p", 0)
    # zero into an ordinary variable just kills the terms
    assert (X1 + Y).subst_monomial("x1", 0) == Y


def test_coefficient_and_truncate():
    f = ONE + 3 * P * Y ** 2 + P ** 2 * Y ** 4
    assert f.coefficient(y=2) == 3 * P
    assert f.coefficient(y=3) == MultiPoly.const(0)
    assert f.truncate({"y": 2}) == ONE + 3 * P * Y ** 2


def test_series_inverts_denominator():
    geom = RationalFn(ONE, (ONE - Y,))
    assert geom.series({"y": 3}) == ONE + Y + Y ** 2 + Y ** 3
    with pytest.raises(ValueError):
        RationalFn(ONE, (Y,)).series({"y": 3})
    with pytest.raises(ValueError):
        # the x1 tail never raises the y order, so inversion must refuse
        RationalFn(ONE, (ONE - X1,)).series({"y": 2})


@pytest.mark.parametrize("eps", [1, -1, 0])
def test_series_times_denominator_recovers_numerator(eps):
    fn = lhs_local(eps)
    caps = {"y": 12}
    s = fn.series(caps)
    assert (s * fn.den_product()).truncate(caps) == fn.num.truncate(caps)


def test_rf_equal_detects_difference():
    a = RationalFn(ONE, (ONE - Y,))
    b = RationalFn(ONE + Y, (ONE - Y ** 2,))
    c = RationalFn(ONE + Y, (ONE - Y,))
    assert rf_equal(a, b)
    assert not rf_equal(a, c)


# ---------------------------------------------------------------------------
# the generating function H


def test_h_series_boundary_rows():
    tab = h_series(6, 0, 10)
    for k in range(7):
        assert tab.coefficient(x1=k, x2=0, y=0) == ONE
    for m in range(11):
        assert tab.coefficient(x1=0, x2=0, y=m) == ONE
    with pytest.raises(ValueError):
        tab.coefficient(y=11)
    with pytest.raises(ValueError):
        h_series(-1, 0, 0)


def test_h_is_symmetric_in_x1_x2():
    caps = {"x1": 4, "x2": 4, "y": 4}
    s = h_fn().series(caps)
    # exponent tuples run (p, y, x1, x2); swap the last two slots
    flipped = MultiPoly({(e[0], e[1], e[3], e[2]): c
                         for e, c in s.terms.items()})
    assert s == flipped


def test_q_local_even_part_is_one_at_y_zero():
    q = q_local(divides=False)
    assert q.series({"x1": 0, "x2": 0, "y": 0}) == ONE


def test_q_local_argument_validation():
    with pytest.raises(ValueError):
        q_local(divides=True, eps=1)
    with pytest.raises(ValueError):
        q_local(divides=False, eps=0)


# ---------------------------------------------------------------------------
# local square-part series


def test_p_local_closed_numerators():
    assert p_local(1).num == (ONE - Y ** 2) * (ONE - P * Y ** 2)
    assert p_local(0).num == ONE + P * Y ** 2
    assert p_local(-1).num == ONE + 3 * Y ** 2 + 3 * P * Y ** 2 + P * Y ** 4
    with pytest.raises(ValueError):
        p_local(2)


def test_p_local_sum_first_coefficient():
    tab = p_local_from_sum(1, 3)
    assert tab.coefficient(y=2) == P ** 2 - ONE


@pytest.mark.parametrize("eps", [1, -1, 0])
def test_p_local_sum_matches_closed_form(eps):
    assert p_local_from_sum(eps, 8).poly == p_local(eps).series({"y": 16})


def test_p_local_sum_validation():
    with pytest.raises(ValueError):
        p_local_from_sum(2, 5)
    with pytest.raises(ValueError):
        p_local_from_sum(1, 0)


@pytest.mark.parametrize("eps", [1, -1, 0])
def test_closed_local_agrees_with_lhs(eps):
    assert rf_equal(lhs_local(eps), closed_local(eps))


# ---------------------------------------------------------------------------
# the three-case local identity


def test_local_identity_passes():
    report = verify_local_identity()
    assert report["status"] == "pass"
    cases = {c["eps"]: c for c in report["detail"]["cases"]}
    assert set(cases) == {1, -1, 0}
    for c in cases.values():
        assert c["symbolic"] and c["closed_form"]
        assert all(c["numeric_primes"].values())
        assert set(c["numeric_primes"]) == {"3", "5", "7", "11", "13"}


def test_local_identity_small_order():
    assert verify_local_identity(order=4)["status"] == "pass"
    with pytest.raises(ValueError):
        verify_local_identity(order=1)


# ---------------------------------------------------------------------------
# divisor sums against the Euler factors


@pytest.mark.parametrize("d0", [3, 11, 19])
def test_f_sum_check(d0):
    report = f_sum_check(d0, fmax=99)
    assert report["status"] == "pass"
    assert report["detail"]["mismatches"] == []


def test_f_sum_check_validation():
    with pytest.raises(ValueError):
        f_sum_check(5)
    with pytest.raises(ValueError):
        f_sum_check(75)


# ---------------------------------------------------------------------------
# L-values


def test_l_value_check_small():
    report = l_value_check(11, terms=10 ** 5)
    assert report["status"] == "pass"
    assert report["detail"]["closed_form"] == pytest.approx(
        math.pi / math.sqrt(11))


def test_l_value_check_rejects_out_of_scope():
    for bad in (3, 7, 75):
        with pytest.raises(ValueError):
            l_value_check(bad)


@pytest.mark.parametrize("d0", [11, 19, 43, 59])
def test_l_value_closed_form_matches_character_average(d0):
    """Finite character average: L(1, chi) = -pi d0^(-3/2) * sum a chi(a)."""
    chi = [repnum.kronecker_symbol(-d0, a) for a in range(d0)]
    finite = -math.pi / (d0 * math.sqrt(d0)) * sum(
        a * chi[a % d0] for a in range(1, d0))
    closed = math.pi * repnum.r3(d0) / (24 * math.sqrt(d0))
    assert finite == pytest.approx(closed, abs=1e-12)


# ---------------------------------------------------------------------------
# the assembled global identity


def test_odd_primes_upto():
    assert odd_primes_upto(10) == [3, 5, 7]
    assert odd_primes_upto(2) == []
    assert odd_primes_upto(30)[-1] == 29


def test_identity_numeric_coarse():
    report = rs3_identity_numeric(4.0, 3)
    assert report["detail"]["rel_diff"] < 1e-2


def test_identity_numeric_rejects_small_w():
    with pytest.raises(ValueError):
        rs3_identity_numeric(2.0, 100)
    with pytest.raises(ValueError):
        rs3_identity_numeric(1.5, 100)
