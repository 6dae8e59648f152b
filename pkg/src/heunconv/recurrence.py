"""Heun parameters, the three-term coefficient recurrence and constant-coefficient tools.

A Frobenius series ``y = sum d_n x**(n + lam)`` about x = 0 of the Heun equation

    y'' + (gamma/x + delta/(x-1) + eps/(x-a)) y' + (alpha*beta*x - q)/(x(x-1)(x-a)) y = 0

has coefficients obeying ``d_{n+1} = A_n d_n + B_n d_{n-1}`` with
``A_n -> (1+a)/a`` and ``B_n -> -1/a``.  All arithmetic here is generic: pass
``Fraction`` parameters to get exact rational sequences, complex ones for
complex sequences.
"""
from __future__ import annotations

from collections.abc import Callable, Iterator, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Complex, Real

import mpmath

from .errors import GeneratingPoleError, NoSolutionError, RecurrencePoleError

__all__ = [
    "HeunParameters",
    "RecurrenceRule",
    "CoefficientSequence",
    "make_heun_params",
    "indicial_roots",
    "heun_recurrence",
    "constant_rule",
    "coefficients",
    "closed_form_term",
    "generating_value",
]


@dataclass(frozen=True)
class HeunParameters:
    """The six free Heun parameters; ``epsilon`` is derived, never stored."""

    a: Complex
    q: Complex
    alpha: Complex
    beta: Complex
    gamma: Complex
    delta: Complex

    def __post_init__(self):
        if self.a == 0:
            raise NoSolutionError()

    @property
    def epsilon(self):
        return self.alpha + self.beta - self.gamma - self.delta + 1


def make_heun_params(a, q, alpha, beta, gamma, delta) -> HeunParameters:
    return HeunParameters(a, q, alpha, beta, gamma, delta)


def indicial_roots(params: HeunParameters) -> tuple:
    """Exponents of the two Frobenius solutions about x = 0: ``(0, 1 - gamma)``."""
    return 0, 1 - params.gamma


@dataclass(frozen=True)
class RecurrenceRule:
    """``d_{n+1} = a_fn(n) d_n + b_fn(n) d_{n-1}`` together with the limits of both maps."""

    a_fn: Callable[[int], Complex]
    b_fn: Callable[[int], Complex]
    asymptotic_A: Complex
    asymptotic_B: Complex

    def a_bar(self, n: int):
        """``A_n / A``; undefined (ZeroDivisionError) when the limit A is 0."""
        return self.a_fn(n) / self.asymptotic_A

    def b_bar(self, n: int):
        return self.b_fn(n) / self.asymptotic_B


def constant_rule(A, B) -> RecurrenceRule:
    return RecurrenceRule(lambda n: A, lambda n: B, A, B)


def _nonnegative_integer(z) -> int | None:
    if isinstance(z, complex):
        if z.imag != 0:
            return None
        z = z.real
    if z >= 0 and z == int(z):
        return int(z)
    return None


def heun_recurrence(params: HeunParameters, lam=0) -> RecurrenceRule:
    """Coefficient maps A_n, B_n of the Heun series with exponent ``lam``.

    A_n = ((1+a)/a) * Abar_n and B_n = (-1/a) * Bbar_n, where Abar_n and Bbar_n
    are ratios of monic quadratics in n.  A_n is evaluated without dividing by
    ``1 + a`` so that a = -1 (where A = 0) stays well defined.

    Raises RecurrencePoleError if ``(n+1+lam)(n+gamma+lam)`` vanishes for some n >= 0.
    """
    a, q = params.a, params.q
    al, be, ga, de = params.alpha, params.beta, params.gamma, params.delta
    ep = params.epsilon

    poles = [n for n in (_nonnegative_integer(-1 - lam), _nonnegative_integer(-ga - lam))
             if n is not None]
    if poles:
        raise RecurrencePoleError(min(poles))

    lin_a = ga + ep - 1 + 2 * lam + a * (ga + de - 1 + 2 * lam)
    const_a = lam * (ga + ep - 1 + lam + a * (ga + de - 1 + lam)) + q
    lin_b = al + be - 2 + 2 * lam
    const_b = (al - 1 + lam) * (be - 1 + lam)
    lin_d = 1 + ga + 2 * lam
    const_d = (1 + lam) * (ga + lam)

    def a_fn(n):
        den = a * (n * n + lin_d * n + const_d)
        return ((1 + a) * n * n + lin_a * n + const_a) / den

    def b_fn(n):
        den = a * (n * n + lin_d * n + const_d)
        return -(n * n + lin_b * n + const_b) / den

    return RecurrenceRule(a_fn, b_fn, (1 + a) / a, -1 / a)


@dataclass(frozen=True)
class CoefficientSequence(Sequence):
    """Terms ``d_0 .. d_N`` generated by ``rule``."""

    terms: tuple
    rule: RecurrenceRule = field(repr=False)

    def __getitem__(self, i):
        return self.terms[i]

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator:
        return iter(self.terms)


def iter_coefficients(rule: RecurrenceRule, d0=1) -> Iterator:
    """Endless stream d_0, d_1, ... with d_1 = A_0 d_0."""
    n = 0
    prev = None
    cur = d0
    while True:
        yield cur
        try:
            if prev is None:
                nxt = rule.a_fn(0) * cur
            else:
                nxt = rule.a_fn(n) * cur + rule.b_fn(n) * prev
        except ZeroDivisionError as exc:
            raise RecurrencePoleError(n) from exc
        prev, cur = cur, nxt
        n += 1


def coefficients(rule: RecurrenceRule, n_max: int, d0=1) -> CoefficientSequence:
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    if d0 == 0:
        raise ValueError("d0 must be nonzero")
    stream = iter_coefficients(rule, d0)
    return CoefficientSequence(tuple(next(stream) for _ in range(n_max + 1)), rule)


def _to_mp(v):
    if isinstance(v, Fraction):
        return mpmath.mpf(v.numerator) / v.denominator
    return mpmath.mpmathify(v)


def _is_degenerate(A, B) -> bool:
    if isinstance(A, Real) and isinstance(B, Real):
        return Fraction(A) ** 2 + 4 * Fraction(B) == 0
    A, B = complex(A), complex(B)
    ar, ai = Fraction(A.real), Fraction(A.imag)
    br, bi = Fraction(B.real), Fraction(B.imag)
    return ar * ar - ai * ai + 4 * br == 0 and 2 * ar * ai + 4 * bi == 0


def closed_form_term(A, B, n: int):
    """n-th term of ``c_{n+1} = A c_n + B c_{n-1}``, ``c_0 = 1``, ``c_1 = A``, in closed form.

    Evaluates ``((A+s)**(n+1) - (A-s)**(n+1)) / (2**(n+1) s)`` with ``s = sqrt(A*A + 4B)``
    in extended precision and rounds once to double, so cancellation between the
    two powers does not leak into the result.  For ``A*A + 4B == 0`` the limit
    ``(n+1) (A/2)**n`` is returned.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    real_input = isinstance(A, Real) and isinstance(B, Real)
    prec = 128 + 16 * (n + 1)
    with mpmath.workprec(prec):
        Am, Bm = _to_mp(A), _to_mp(B)
        if _is_degenerate(A, B):
            val = (n + 1) * (Am / 2) ** n
        else:
            s = mpmath.sqrt(Am * Am + 4 * Bm)
            hi, lo = (Am + s) / 2, (Am - s) / 2
            val = (hi ** (n + 1) - lo ** (n + 1)) / s
            scale = max(abs(hi), abs(lo)) ** n
            # below the working-precision noise floor the true term is zero
            if abs(val) <= scale * mpmath.ldexp(1, -(prec // 2)):
                val = mpmath.mpf(0)
        if real_input:
            return float(mpmath.re(val))
        return complex(val)


def generating_value(A, B, x):
    """Sum of ``c_n x**n`` for the sequence above: ``1 / (1 - A x - B x**2)``."""
    den = 1 - A * x - B * x * x
    if den == 0:
        raise GeneratingPoleError(f"1 - A x - B x^2 vanishes at x={x!r}")
    return 1 / den

