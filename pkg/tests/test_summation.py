import math
import random
from fractions import Fraction

import pytest

from heunconv.domains import abs_test, heun_constants
from heunconv.errors import TooFewPointsError
from heunconv.recurrence import (
    coefficients, constant_rule, generating_value, heun_recurrence, make_heun_params,
)
from heunconv.scaled import ONE, ScaledReal, sr_to_fixed
from heunconv.summation import (
    _rect_sum, abs_diagonal_sum, diagonal_sum, direct_partials, direct_sum, double_series_args,
    heun_partials, heun_series_sum, partial_grid, probe, rect_double_sum, sum_report,
)


# -- exact-rational reference paths ------------------------------------------

def exact_direct(A, B, x, N):
    s, power = Fraction(0), Fraction(1)
    prev, cur = None, Fraction(1)
    for n in range(N + 1):
        s += cur * power
        power *= x
        prev, cur = cur, (A * cur if prev is None else A * cur + B * prev)
    return s


def exact_rect(xt, yt, N):
    total = Fraction(0)
    xp = Fraction(1)
    for n in range(N + 1):
        yp = Fraction(1)
        for m in range(N + 1):
            total += math.comb(n + m, n) * xp * yp
            yp *= yt
        xp *= xt
    return total


def slow_rect(xt, yt, N):
    """Same term order and update rule as the fast loop, through ScaledReal operators."""
    acc, row = ScaledReal(0), ONE
    for n in range(N + 1):
        t = row
        for m in range(N + 1):
            acc = acc + t
            t = t * ScaledReal(yt * (n + m + 1) / (m + 1))
        row = row * ScaledReal(xt)
    return acc


def rel(a, b):
    return abs(a / b - 1)


# -- direct sum --------------------------------------------------------------

def test_direct_examples():
    assert sr_to_fixed(direct_sum(0.8, 0.3, 10), 12) == "2.285559427400"
    assert sr_to_fixed(direct_sum(0.8, 0.3, 50), 12) == "2.285714285714"
    assert sr_to_fixed(direct_sum(0.8, 0.7, 10), 12) == "17.722665066666"
    assert direct_sum(0.8, 0.0, 37) == ONE
    assert direct_sum(-3.5, 0.0, 0) == ONE


def test_direct_against_exact_rational():
    for a, x in [(0.8, 0.3), (0.8, 0.7), (-2.0, 0.45), (3.0, -0.2), (-0.5, 0.3)]:
        A, B = heun_constants(a)
        for N in (0, 1, 5, 30, 100):
            ref = exact_direct(Fraction(A), Fraction(B), Fraction(x), N)
            assert rel(direct_sum(a, x, N).as_fraction(), ref) < 1e-13


def test_direct_closed_form_exact():
    # dbar_n = 5 (5/4)^n - 4 at a = 4/5
    A, B, x = Fraction(9, 4), Fraction(-5, 4), Fraction(7, 10)
    seq = coefficients(constant_rule(A, B), 60)
    assert all(seq[n] == 5 * Fraction(5, 4) ** n - 4 for n in range(61))
    for N in (10, 40, 60):
        closed = sum((5 * Fraction(5, 4) ** n - 4) * x ** n for n in range(N + 1))
        assert exact_direct(A, B, x, N) == closed
    assert float(exact_direct(A, B, x, 10)) == pytest.approx(17.722665066666007, abs=1e-12)


def test_partials_consistent_with_single_calls():
    ns = [0, 3, 10, 57, 200]
    for (N, v) in direct_partials(0.8, 0.7, ns):
        assert v == direct_sum(0.8, 0.7, N)


# -- double series -----------------------------------------------------------

def test_double_series_args():
    d = double_series_args(0.8, 0.3)
    assert d.x_tilde == pytest.approx(0.675)
    assert d.y_tilde == pytest.approx(-0.1125)
    assert d.abs_sum() == pytest.approx(0.7875)
    rng = random.Random(6)
    for _ in range(2000):
        a, x = rng.uniform(-3, 3), rng.uniform(-1.5, 1.5)
        assert (double_series_args(a, x).abs_sum() < 1) == abs_test(a, x)


def test_rect_examples():
    assert sr_to_fixed(rect_double_sum(0.8, 0.3, 10), 12) == "2.276337892064"
    assert abs(float(rect_double_sum(0.8, 0.3, 100)) - 2.285714285714) < 1e-10


def test_rect_against_exact_rational():
    for a, x in [(0.8, 0.3), (0.8, 0.7), (-2.0, 0.5), (1.5, -0.4)]:
        d = double_series_args(a, x)
        xt, yt = Fraction(d.x_tilde), Fraction(d.y_tilde)
        for N in (0, 1, 10, 40):
            ref = exact_rect(xt, yt, N)
            assert rel(rect_double_sum(a, x, N).as_fraction(), ref) < 1e-12


def test_rect_fast_loop_matches_scaled_reference_bitwise():
    for xt, yt, N in [(1.575, -0.6125, 60), (0.675, -0.1125, 40), (-3.0, 7.5, 25),
                      (0.0, 0.5, 5), (2.0, 0.0, 5)]:
        assert _rect_sum(xt, yt, N) == slow_rect(xt, yt, N)


def test_rect_corner_growth_ratio():
    d = double_series_args(0.8, 0.7)
    q = abs(d.x_tilde * d.y_tilde)
    N = 200
    corner = lambda n: math.lgamma(2 * n + 1) - 2 * math.lgamma(n + 1) + n * math.log(q)
    assert abs(math.exp(corner(N + 1) - corner(N)) / (4 * q) - 1) < 0.01
    assert 4 * q == pytest.approx(3.85875)


def test_rect_bounded_by_moduli_geometric():
    for a, x in [(0.8, 0.3), (-2.0, 0.5), (3.0, 0.6)]:
        d = double_series_args(a, x)
        bound = 1 / (1 - d.abs_sum())
        for N in (1, 5, 20, 80):
            assert abs(float(rect_double_sum(a, x, N))) <= bound


def test_sums_reach_generating_value_inside_region():
    rng = random.Random(9)
    hits = 0
    while hits < 15:
        a, x = rng.uniform(-3, 3), rng.uniform(-0.9, 0.9)
        if abs(a) < 0.05 or not abs_test(a, x) or double_series_args(a, x).abs_sum() > 0.85:
            continue
        hits += 1
        g = generating_value(*heun_constants(a), x)
        assert rel(float(direct_sum(a, x, 200)), g) < 1e-10
        assert rel(float(rect_double_sum(a, x, 200)), g) < 1e-10
        assert rel(float(diagonal_sum(a, x, 200)), g) < 1e-10


def test_diagonal_examples():
    assert float(abs_diagonal_sum(0.8, 0.3, 400)) == pytest.approx(1 / (1 - 0.7875), rel=1e-12)
    assert float(diagonal_sum(0.8, 0.3, 400)) == pytest.approx(1 / 0.4375, rel=1e-12)
    assert diagonal_sum(0.8, 0.3, 0) == ONE


# -- full Heun series --------------------------------------------------------

def test_heun_hand_value():
    p = make_heun_params(1, 0, 1, 1, 1, 1)
    assert heun_series_sum(p, 0, 0.5, 2) == 0.9375
    assert heun_series_sum(p, 0, 0.5, 0) == 1


def test_heun_constant_hook_bit_identical_to_direct():
    p = make_heun_params(0.8, 0.5, 2, 1, 1, 1)
    A, B = heun_constants(0.8)
    rule = constant_rule(A, B)
    for x in (0.3, 0.7, -0.45):
        ns = [0, 1, 10, 50, 100]
        got = heun_partials(p, 0, x, ns, rule=rule)
        want = direct_partials(0.8, x, ns)
        for (n1, g), (n2, w) in zip(got, want):
            assert n1 == n2 and ScaledReal(g) == w


def _series_derivatives(d, lam, x):
    y = dy = d2y = 0.0
    for n, c in enumerate(d):
        k = n + lam
        y += c * x ** k
        if k != 0:
            dy += c * k * x ** (k - 1)
        if k not in (0, 1):
            d2y += c * k * (k - 1) * x ** (k - 2)
    return y, dy, d2y


@pytest.mark.parametrize("which", [0, 1])
def test_heun_series_solves_the_equation(which):
    rng = random.Random(31 + which)
    for _ in range(20):
        a = rng.choice([rng.uniform(1.2, 4), rng.uniform(-4, -1.2)])
        q, al, be = rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)
        ga, de = rng.uniform(0.3, 2.5), rng.uniform(-2, 2)
        p = make_heun_params(a, q, al, be, ga, de)
        ep = p.epsilon
        lam = 0 if which == 0 else 1 - ga
        d = coefficients(heun_recurrence(p, lam), 160)
        x = 0.35
        y, dy, d2y = _series_derivatives(d, lam, x)
        res = (x * (x - 1) * (x - a) * d2y
               + (ga * (x - 1) * (x - a) + de * x * (x - a) + ep * x * (x - 1)) * dy
               + (al * be * x - q) * y)
        scale = abs(x * (x - 1) * (x - a) * d2y) + abs(dy) + abs(y)
        assert abs(res) < 1e-10 * scale


def test_heun_nonzero_exponent_needs_nonzero_x():
    p = make_heun_params(2, 0, 1, 1, 0.5, 1)
    with pytest.raises(ValueError):
        heun_series_sum(p, 0.5, 0.0, 5)


# -- probe -------------------------------------------------------------------

def test_probe_converged_table3():
    rep = sum_report("direct", 0.8, 0.3, [10, 50, 100, 200, 300, 400, 500, 600, 700, 800, 900, 1000])
    assert rep.verdict.kind == "converged"
    assert sr_to_fixed(rep.verdict.value, 12) == "2.285714285714"
    assert rep.verdict.at_N == 1000


def test_probe_diverging_table5():
    ns = [10, 50, 100, 200, 300, 400, 500, 600, 700, 800, 900, 1000]
    parts = [(N, rect_double_sum(0.8, 0.7, N)) for N in ns]
    v = probe(parts)
    assert v.kind == "diverging"
    assert v.ratio == pytest.approx(3.8588, rel=0.01)


def test_probe_constant_and_indeterminate():
    assert probe([(n, ScaledReal(2.5)) for n in range(8)]).kind == "converged"
    osc = [(n, ScaledReal((-1) ** n * 1.0)) for n in range(10)]
    assert probe(osc).kind == "indeterminate"
    with pytest.raises(TooFewPointsError):
        probe([(n, ONE) for n in range(7)])
    with pytest.raises(ValueError):
        probe([(n % 4, ONE) for n in range(9)])


def test_sum_report_csv_and_grid():
    rep = sum_report("direct", 0.8, 0.0, partial_grid(10))
    assert rep.verdict.kind == "converged"
    assert rep.to_csv().splitlines()[0] == "N,value"
    assert partial_grid(200) == list(range(20, 201, 20))
    assert partial_grid(3) == [0, 1, 2, 3]
    with pytest.raises(ValueError):
        sum_report("nope", 0.8, 0.3, [1])
