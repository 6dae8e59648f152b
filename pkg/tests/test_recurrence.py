import random
from fractions import Fraction

import pytest

from heunconv.errors import GeneratingPoleError, NoSolutionError, RecurrencePoleError
from heunconv.recurrence import (
    HeunParameters, closed_form_term, coefficients, constant_rule, generating_value,
    heun_recurrence, indicial_roots, make_heun_params,
)


def test_epsilon_is_derived():
    assert make_heun_params(1, 0, 1, 1, 1, 1).epsilon == 1
    assert make_heun_params(0.8, 0.5, 2, 1, 1, 1).epsilon == 2
    p = HeunParameters(2, 0, 3, 1, 0.5, 2)
    assert p.epsilon == p.alpha + p.beta - p.gamma - p.delta + 1


def test_a_zero_rejected():
    with pytest.raises(NoSolutionError, match="no solution"):
        make_heun_params(0, 1, 1, 1, 1, 1)


def test_params_are_immutable():
    p = make_heun_params(1, 0, 1, 1, 1, 1)
    with pytest.raises(AttributeError):
        p.a = 2


@pytest.mark.parametrize("gamma,expected", [(1, (0, 0)), (0.5, (0, 0.5)), (3, (0, -2))])
def test_indicial_roots(gamma, expected):
    assert indicial_roots(make_heun_params(1, 0, 1, 1, gamma, 1)) == expected


def test_hand_prefix_exact():
    p = make_heun_params(Fraction(1), 0, 1, 1, 1, 1)
    rule = heun_recurrence(p)
    d = coefficients(rule, 3)
    assert list(d) == [1, 0, Fraction(-1, 4), Fraction(-1, 3)]
    assert rule.a_fn(0) == 0
    assert rule.b_bar(1) == Fraction(1, 4)
    assert rule.b_fn(1) == Fraction(-1, 4)


def test_asymptotic_limits():
    rule = heun_recurrence(make_heun_params(0.8, 0.5, 2, 1, 1, 1))
    assert rule.asymptotic_A == pytest.approx(2.25)
    assert rule.asymptotic_B == pytest.approx(-1.25)


def test_normalized_coefficients_tend_to_one():
    rng = random.Random(7)
    # the O(1/n) constant carries a factor 1/(1+a), so stay away from a = -1
    for _ in range(50):
        a = rng.choice([rng.uniform(0.2, 5), rng.uniform(-5, -1.5)])
        p = make_heun_params(a, rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1),
                             rng.uniform(0.1, 1.5), rng.uniform(-1, 1))
        rule = heun_recurrence(p)
        for n in (1000, 5000, 20000):
            assert abs(rule.a_bar(n) - 1) + abs(rule.b_bar(n) - 1) < 10 / n


def test_a_minus_one_is_defined():
    # A = 0 there, A_n must not divide by 1 + a
    rule = heun_recurrence(make_heun_params(-1, 0.3, 1, 2, 1.5, 0.5))
    assert rule.asymptotic_A == 0
    assert rule.a_fn(100) != 0
    assert abs(rule.a_fn(10**6)) < 1e-5


def test_recurrence_invariant_holds():
    rule = heun_recurrence(make_heun_params(Fraction(4, 5), Fraction(1, 2), 2, 1, 1, 1))
    d = coefficients(rule, 30)
    assert d[1] == rule.a_fn(0) * d[0]
    for n in range(1, 30):
        assert d[n + 1] == rule.a_fn(n) * d[n] + rule.b_fn(n) * d[n - 1]


def test_complex_parameters():
    p = make_heun_params(1 + 1j, 0.5j, 1, 2, 1.5, 0.5)
    rule = heun_recurrence(p, lam=indicial_roots(p)[1])
    d = coefficients(rule, 20)
    assert isinstance(d[5], complex)
    assert rule.asymptotic_B == pytest.approx(-1 / (1 + 1j))


def test_pole_in_recurrence_named():
    with pytest.raises(RecurrencePoleError) as info:
        heun_recurrence(make_heun_params(2, 0, 1, 1, -3, 1))
    assert info.value.n == 3
    with pytest.raises(RecurrencePoleError) as info:
        heun_recurrence(make_heun_params(2, 0, 1, 1, 0.5, 1), lam=-2)
    assert info.value.n == 1


def test_fibonacci_and_constant_rules():
    assert list(coefficients(constant_rule(1, 1), 6)) == [1, 1, 2, 3, 5, 8, 13]
    fib = coefficients(constant_rule(1, 1), 30)
    a, b = 1, 1
    for n in range(2, 31):
        a, b = b, a + b
        assert fib[n] == b
    assert coefficients(constant_rule(2.25, -1.25), 2)[2] == pytest.approx(3.8125)
    assert list(coefficients(constant_rule(2, -1), 10)) == list(range(1, 12))


def test_coefficients_validates_inputs():
    with pytest.raises(ValueError):
        coefficients(constant_rule(1, 1), -1)
    with pytest.raises(ValueError):
        coefficients(constant_rule(1, 1), 3, d0=0)


def test_closed_form_examples():
    assert closed_form_term(1, 1, 5) == 8
    assert closed_form_term(2, -1, 7) == 8
    assert closed_form_term(2.25, -1.25, 2) == pytest.approx(3.8125, rel=1e-15)


def test_closed_form_against_exact_iteration():
    rng = random.Random(19)
    for _ in range(200):
        A = rng.uniform(-4, 4)
        B = rng.uniform(-4, 4)
        seq = coefficients(constant_rule(Fraction(A), Fraction(B)), 60)
        for n in range(61):
            ref = float(seq[n])
            got = closed_form_term(A, B, n)
            assert abs(got - ref) <= 1e-12 * abs(ref) + 1e-300, (A, B, n)


def test_closed_form_complex():
    A, B = 1 + 2j, -0.5 + 0.25j
    seq = coefficients(constant_rule(A, B), 25)
    for n in range(26):
        assert closed_form_term(A, B, n) == pytest.approx(seq[n], rel=1e-10)


def test_generating_value():
    assert generating_value(2.25, -1.25, 0.3) == pytest.approx(16 / 7, rel=1e-15)
    assert generating_value(2.25, -1.25, 0.7) == pytest.approx(80 / 3, rel=1e-14)
    assert generating_value(Fraction(9, 4), Fraction(-5, 4), Fraction(7, 10)) == Fraction(80, 3)
    assert generating_value(3, 2, 0) == 1
    with pytest.raises(GeneratingPoleError):
        generating_value(Fraction(9, 4), Fraction(-5, 4), Fraction(4, 5))


def test_partial_sum_error_bound():
    A, B, x = Fraction(9, 4), Fraction(-5, 4), Fraction(3, 10)
    g = generating_value(A, B, x)
    q = abs(A * x) + abs(B * x * x)
    seq = coefficients(constant_rule(A, B), 80)
    s = Fraction(0)
    for n in range(81):
        s += seq[n] * x ** n
        assert abs(g - s) <= q ** (n + 1) / (1 - q)
