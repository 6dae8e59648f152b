"""Convergence conditions of nine transformed local Heun solutions.

Each variant is a Heun series ``Hl(a', q'; alpha', beta', gamma', delta'; t)``
in a new argument ``t(x)``, possibly times a prefactor.  Its convergence
condition is the absolute test ``|((1+a')/a') t| + |t**2/a'| < 1`` rewritten in
terms of (a, x); ``maier_condition`` evaluates the rewritten inequality
directly, ``maier_transformed_params`` exposes (a', t) and the new parameters.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .errors import ExcludedPointError, NoSolutionError
from .recurrence import HeunParameters

__all__ = ["VARIANT_IDS", "MaierVariant", "MaierTransform", "VARIANTS", "get_variant",
           "maier_condition", "maier_transformed_params"]


@dataclass(frozen=True)
class MaierVariant:
    id: str
    solution: str            # printed form of the local solution
    a_map: str               # a' as a function of a
    t_map: str               # t as a function of (a, x)
    excluded_points: tuple[str, ...]
    condition: Callable      # (a, x) -> float, left-hand side of "< 1"
    _params: Callable        # HeunParameters -> (a', q', alpha', beta', gamma', delta')
    _arg: Callable           # (a, x) -> t
    prefactor: str


@dataclass(frozen=True)
class MaierTransform:
    params: HeunParameters
    argument: Callable       # x -> t
    argument_text: str
    prefactor: str


def _a1a(p):
    a, q, al, be, ga, de = p.a, p.q, p.alpha, p.beta, p.gamma, p.delta
    return a, q - (de - 1) * ga * a, al - de + 1, be - de + 1, ga, 2 - de


def _a1b(p):
    a, q, al, be, ga, de = p.a, p.q, p.alpha, p.beta, p.gamma, p.delta
    return (a, q - (ga + de - 2) * a - (ga - 1) * (al + be - ga - de + 1),
            al - ga - de + 2, be - ga - de + 2, 2 - ga, 2 - de)


def _a2a(p):
    return 1 - p.a, -p.q + p.alpha * p.beta, p.alpha, p.beta, p.delta, p.gamma


def _a2b(p):
    a, q, al, be, ga, de = p.a, p.q, p.alpha, p.beta, p.gamma, p.delta
    return (1 - a, -q + (de - 1) * ga * a + (al - de + 1) * (be - de + 1),
            al - de + 1, be - de + 1, 2 - de, ga)


def _a3(p):
    a, q, al, be, ga, de = p.a, p.q, p.alpha, p.beta, p.gamma, p.delta
    return (1 / a, (q + al * ((al - ga - de + 1) * a - be + de)) / a,
            al, al - ga + 1, al - be + 1, de)


def _a4a(p):
    a, q, al, be, ga, de = p.a, p.q, p.alpha, p.beta, p.gamma, p.delta
    return 1 - a, -q + ga * be, -al + ga + de, be, ga, de


def _a4b(p):
    a, q, al, be, ga, de = p.a, p.q, p.alpha, p.beta, p.gamma, p.delta
    return (1 - a, -q + ga * ((de - 1) * a + be - de + 1),
            -al + ga + 1, be - de + 1, ga, 2 - de)


def _a5(p):
    a, q, al, be, ga, de = p.a, p.q, p.alpha, p.beta, p.gamma, p.delta
    return ((a - 1) / a, (-q + al * (de * a + be - de)) / a,
            al, al - ga + 1, de, al - be + 1)


def _a6(p):
    a, q, al, be, ga, de = p.a, p.q, p.alpha, p.beta, p.gamma, p.delta
    return a, q - (be - de) * al, al, -be + ga + de, de, ga


def _lhs_a1(a, x):
    return abs((1 + a) / a * x) + abs(x * x / a)


def _lhs_a2(a, x):
    return abs((1 - x) ** 2 / (1 - a)) + abs((2 - a) / (1 - a) * (1 - x))


def _lhs_a3(a, x):
    return abs(a * x ** -2) + abs((1 + a) * x ** -1)


def _lhs_a4(a, x):
    return abs((1 - a) * x * x / (x - a) ** 2) + abs((2 - a) * x / (x - a))


def _lhs_a5(a, x):
    return abs(a / (1 - a) * (x - 1) ** 2 / x ** 2) + abs((1 - 2 * a) / (1 - a) * (x - 1) / x)


def _lhs_a6(a, x):
    return abs(a * (x - 1) ** 2 / (x - a) ** 2) + abs((1 + a) * (x - 1) / (x - a))


_A_NE_1 = "a != 1"
_X_NE_A = "x != a"
_X_NE_0 = "x != 0"

VARIANTS: dict[str, MaierVariant] = {v.id: v for v in (
    MaierVariant("a1a", "(1-x)^(1-delta) Hl(a, q-(delta-1)gamma a; alpha-delta+1, beta-delta+1, "
                 "gamma, 2-delta; x)", "a", "x", (), _lhs_a1, _a1a,
                 lambda a, x: x, "(1-x)^(1-delta)"),
    MaierVariant("a1b", "x^(1-gamma) (1-x)^(1-delta) Hl(a, q-(gamma+delta-2)a-(gamma-1)"
                 "(alpha+beta-gamma-delta+1); alpha-gamma-delta+2, beta-gamma-delta+2, "
                 "2-gamma, 2-delta; x)", "a", "x", (), _lhs_a1, _a1b,
                 lambda a, x: x, "x^(1-gamma) (1-x)^(1-delta)"),
    MaierVariant("a2a", "Hl(1-a, -q+alpha beta; alpha, beta, delta, gamma; 1-x)",
                 "1-a", "1-x", (_A_NE_1,), _lhs_a2, _a2a, lambda a, x: 1 - x, "1"),
    MaierVariant("a2b", "(1-x)^(1-delta) Hl(1-a, -q+(delta-1)gamma a+(alpha-delta+1)"
                 "(beta-delta+1); alpha-delta+1, beta-delta+1, 2-delta, gamma; 1-x)",
                 "1-a", "1-x", (_A_NE_1,), _lhs_a2, _a2b, lambda a, x: 1 - x,
                 "(1-x)^(1-delta)"),
    MaierVariant("a3", "x^(-alpha) Hl(1/a, (q+alpha((alpha-gamma-delta+1)a-beta+delta))/a; "
                 "alpha, alpha-gamma+1, alpha-beta+1, delta; 1/x)",
                 "1/a", "1/x", (_X_NE_0,), _lhs_a3, _a3, lambda a, x: 1 / x, "x^(-alpha)"),
    MaierVariant("a4a", "(1-x/a)^(-beta) Hl(1-a, -q+gamma beta; -alpha+gamma+delta, beta, "
                 "gamma, delta; (1-a)x/(x-a))", "1-a", "(1-a)x/(x-a)", (_X_NE_A, _A_NE_1),
                 _lhs_a4, _a4a, lambda a, x: (1 - a) * x / (x - a), "(1-x/a)^(-beta)"),
    MaierVariant("a4b", "(1-x)^(1-delta) (1-x/a)^(-beta+delta-1) Hl(1-a, -q+gamma((delta-1)a"
                 "+beta-delta+1); -alpha+gamma+1, beta-delta+1, gamma, 2-delta; (1-a)x/(x-a))",
                 "1-a", "(1-a)x/(x-a)", (_X_NE_A, _A_NE_1), _lhs_a4, _a4b,
                 lambda a, x: (1 - a) * x / (x - a), "(1-x)^(1-delta) (1-x/a)^(-beta+delta-1)"),
    MaierVariant("a5", "x^(-alpha) Hl((a-1)/a, (-q+alpha(delta a+beta-delta))/a; alpha, "
                 "alpha-gamma+1, delta, alpha-beta+1; (x-1)/x)", "(a-1)/a", "(x-1)/x",
                 (_A_NE_1, _X_NE_0), _lhs_a5, _a5, lambda a, x: (x - 1) / x, "x^(-alpha)"),
    MaierVariant("a6", "((x-a)/(1-a))^(-alpha) Hl(a, q-(beta-delta)alpha; alpha, -beta+gamma"
                 "+delta, delta, gamma; a(x-1)/(x-a))", "a", "a(x-1)/(x-a)", (_X_NE_A,),
                 _lhs_a6, _a6, lambda a, x: a * (x - 1) / (x - a), "((x-a)/(1-a))^(-alpha)"),
)}

VARIANT_IDS = tuple(VARIANTS)


def get_variant(variant) -> MaierVariant:
    if isinstance(variant, MaierVariant):
        return variant
    key = str(variant).lower()
    if key not in VARIANTS:
        raise KeyError(f"unknown variant {variant!r}; expected one of {', '.join(VARIANT_IDS)}")
    return VARIANTS[key]


def _violated(constraint: str, a, x) -> bool:
    if constraint == _A_NE_1:
        return a == 1
    if constraint == _X_NE_A:
        return x == a
    if constraint == _X_NE_0:
        return x == 0
    raise AssertionError(constraint)


def _check(v: MaierVariant, a, x=None):
    if a == 0:
        raise NoSolutionError()
    for c in v.excluded_points:
        if c == _A_NE_1 and v.a_map != "a" and a == 1:
            raise ExcludedPointError(c, f"excluded point: {v.id} requires {c} "
                                        f"(transformed a' = {v.a_map} would vanish)")
        if x is not None and _violated(c, a, x):
            raise ExcludedPointError(c, f"excluded point: {v.id} requires {c}")


def maier_condition(variant, a, x) -> bool:
    """Convergence test of the variant's series at (a, x), from its rewritten inequality."""
    v = get_variant(variant)
    _check(v, a, x)
    return v.condition(a, x) < 1


def maier_transformed_params(variant, params: HeunParameters) -> MaierTransform:
    """New Heun parameters and argument map of the variant; epsilon' is re-derived."""
    v = get_variant(variant)
    _check(v, params.a)
    a = params.a
    new = HeunParameters(*v._params(params))
    return MaierTransform(new, lambda x: v._arg(a, x), v.t_map, v.prefactor)
