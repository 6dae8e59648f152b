"""Convergence domains of the Heun power series about x = 0.

Two analyses are provided side by side:

* the characteristic-root (Poincare-Perron) route, where the radius is the
  reciprocal of the dominant root modulus of ``rho**2 - A rho - B``;
* the absolute (dominating-series) test ``|A x| + |B x**2| < 1``.

For the Heun limits ``A = (1+a)/a`` and ``B = -1/a`` the roots are exactly
``{1, 1/a}``.
"""
from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from enum import Enum, IntEnum

import numpy as np

from .errors import NoSolutionError, PremiseViolation, RecurrencePoleError
from .recurrence import CoefficientSequence, RecurrenceRule, _is_degenerate, _nonnegative_integer

__all__ = [
    "Status",
    "Verdict",
    "CellClass",
    "CharacteristicRoots",
    "PPDomain",
    "AbsBound",
    "DomainVerdict",
    "RegionGrid",
    "heun_constants",
    "characteristic_roots",
    "pp_domain",
    "abs_test",
    "abs_radius",
    "abs_boundary",
    "ratio_test_radius",
    "ratio_test_limit",
    "revised_characteristic",
    "hypergeom_ratio_limit",
    "premise_start",
    "dominating_bound",
    "domain_verdict",
    "cell_class",
    "region_scan",
]

_REL_TOL = 1e-12


class Status(str, Enum):
    OK = "ok"
    NO_SOLUTION = "no_solution_a_zero"
    PP_INDETERMINATE = "pp_indeterminate_a_minus_one"


class Verdict(str, Enum):
    CONVERGES = "converges"
    DIVERGES = "diverges"
    BOUNDARY = "boundary"
    INDETERMINATE = "indeterminate"


class CellClass(IntEnum):
    OUTSIDE = 0
    PP_ONLY = 1
    BOTH = 2
    UNDEFINED = 3


def heun_constants(a):
    """Limits ``(A, B) = ((1+a)/a, -1/a)`` of the Heun recurrence coefficients."""
    if a == 0:
        raise NoSolutionError()
    return (1 + a) / a, -1 / a


# -- characteristic roots ----------------------------------------------------

@dataclass(frozen=True)
class CharacteristicRoots:
    rho1: complex
    rho2: complex
    degenerate: bool
    equimodular: bool


def _root_key(z: complex):
    return (abs(z), z.real, z.imag)


def characteristic_roots(A, B) -> CharacteristicRoots:
    """Roots of ``rho**2 - A rho - B``, ordered by modulus (ties: real, then imaginary part)."""
    A, B = complex(A), complex(B)
    s = cmath.sqrt(A * A + 4 * B)
    # pick the branch adding constructively; get the small root from the product -B
    if (A.conjugate() * s).real < 0:
        s = -s
    big = (A + s) / 2
    small = -B / big if big != 0 else 0j
    r1, r2 = sorted((small, big), key=_root_key)
    scale = max(abs(r1), abs(r2))
    degenerate = abs(r2 - r1) <= _REL_TOL * scale
    equimodular = not degenerate and math.isclose(abs(r1), abs(r2), rel_tol=_REL_TOL)
    return CharacteristicRoots(r1, r2, degenerate, equimodular)


@dataclass(frozen=True)
class PPDomain:
    radius: float | None
    status: Status


def pp_domain(a) -> PPDomain:
    """Disk ``|x| < radius`` from the dominant characteristic root: 1 for |a| >= 1, |a| otherwise."""
    if a == 0:
        return PPDomain(None, Status.NO_SOLUTION)
    m = abs(a)
    return PPDomain(1.0 if m >= 1 else float(m), Status.OK)


# -- absolute convergence ----------------------------------------------------

def abs_test(a, x) -> bool:
    """``|((1+a)/a) x| + |x**2 / a| < 1``."""
    if a == 0:
        raise NoSolutionError()
    return abs((1 + a) / a * x) + abs(x * x / a) < 1


def abs_radius(a) -> float:
    """Radius r of the disk where the absolute test holds; solves ``|A| r + |B| r**2 = 1``."""
    A, B = heun_constants(a)
    mA, mB = abs(A), abs(B)
    return 2 / (mA + math.sqrt(mA * mA + 4 * mB))


@dataclass(frozen=True)
class AbsBound:
    """Real interval ``lower < x < upper`` of absolute convergence for real a."""

    lower: float | None
    upper: float | None
    status: Status

    @property
    def radius(self) -> float | None:
        return self.upper

    def contains(self, x: float) -> bool:
        return self.status is Status.OK and self.lower < x < self.upper


def abs_boundary(a: float) -> AbsBound:
    if a == 0:
        return AbsBound(None, None, Status.NO_SOLUTION)
    if a > 0:
        # (-1 - a + sqrt(a^2 + 6a + 1)) / 2, rationalized to avoid cancellation
        r = 2 * a / (1 + a + math.sqrt(a * a + 6 * a + 1))
        return AbsBound(-r, r, Status.OK)
    if a > -1:
        return AbsBound(float(a), float(-a), Status.OK)
    return AbsBound(-1.0, 1.0, Status.OK)


# -- ratio test --------------------------------------------------------------

def ratio_test_radius(A, B, use_moduli: bool = False) -> float | None:
    """Reciprocal of ``lim |d_{n+1}/d_n|`` for the constant recurrence, from its closed form.

    With ``use_moduli`` the coefficients are first replaced by ``|A|, |B|``.
    Returns None when the two roots are distinct with equal moduli, where the
    ratio oscillates and the limit does not exist.
    """
    if use_moduli:
        A, B = abs(A), abs(B)
    if _is_degenerate(A, B):
        rho = abs(A) / 2
    else:
        s = cmath.sqrt(complex(A) * complex(A) + 4 * complex(B))
        p, m = abs(A + s), abs(A - s)
        if math.isclose(p, m, rel_tol=_REL_TOL):
            return None
        rho = max(p, m) / 2
    return math.inf if rho == 0 else 1 / rho


def ratio_test_limit(A, B, x, use_moduli: bool = False) -> Verdict:
    radius = ratio_test_radius(A, B, use_moduli)
    if radius is None:
        return Verdict.INDETERMINATE
    L = abs(x) / radius
    if math.isclose(L, 1.0, rel_tol=_REL_TOL):
        return Verdict.BOUNDARY
    return Verdict.CONVERGES if L < 1 else Verdict.DIVERGES


def revised_characteristic(moduli_coeffs) -> list[complex]:
    """Roots of ``rho**k + |c1| rho**(k-1) + ... + |ck|``."""
    coeffs = [abs(c) for c in moduli_coeffs]
    if not coeffs:
        raise ValueError("need at least one coefficient")
    if coeffs[-1] == 0:
        raise ValueError("last coefficient must be nonzero")
    poly = [1.0, *coeffs]
    roots = [complex(r) for r in np.roots(poly)]
    # polish: one Newton step per root tightens numpy's companion-matrix estimate
    dpoly = np.polyder(poly)
    polished = []
    for r in roots:
        dv = np.polyval(dpoly, r)
        if dv != 0:
            r2 = r - np.polyval(poly, r) / dv
            if abs(np.polyval(poly, r2)) <= abs(np.polyval(poly, r)):
                r = r2
        polished.append(complex(r))
    return sorted(polished, key=_root_key)


def hypergeom_ratio_limit(a, b, c, x) -> Verdict:
    """Ratio test on the hypergeometric series; the coefficient ratio tends to 1."""
    pole = _nonnegative_integer(-c)
    if pole is not None:
        raise RecurrencePoleError(pole, f"hypergeometric coefficients have a pole: c={c}")
    L = abs(x)
    if math.isclose(L, 1.0, rel_tol=_REL_TOL):
        return Verdict.BOUNDARY
    return Verdict.CONVERGES if L < 1 else Verdict.DIVERGES


# -- dominating series -------------------------------------------------------

def _premise_holds(rule: RecurrenceRule, n: int, lim_a: float, lim_b: float) -> bool:
    return abs(rule.a_fn(n)) < lim_a and abs(rule.b_fn(n)) < lim_b


def premise_start(rule: RecurrenceRule, n_max: int, eps: float = 0.5) -> int | None:
    """Smallest N >= 1 with ``|Abar_n|, |Bbar_n| < 1 + eps`` for all N <= n < n_max."""
    lim_a = (1 + eps) * abs(rule.asymptotic_A)
    lim_b = (1 + eps) * abs(rule.asymptotic_B)
    start = None
    for n in range(n_max - 1, 0, -1):
        if not _premise_holds(rule, n, lim_a, lim_b):
            break
        start = n
    return start


def dominating_bound(rule: RecurrenceRule, d: CoefficientSequence, N: int,
                     eps: float = 0.5) -> bool:
    """Check ``|d_{N+j}| <= c_j |d_N| + c_{j-1} |B~| |d_{N-1}|`` along the whole sequence.

    ``c_j`` follows ``c_{j+1} = |A~| c_j + |B~| c_{j-1}`` with ``c_0 = 1``,
    ``c_1 = |A~|`` and ``A~ = (1+eps) A``, ``B~ = (1+eps) B``.  The premise
    ``|Abar_n|, |Bbar_n| < 1 + eps`` is verified for every n used and a
    PremiseViolation names the first failing index.
    """
    terms = list(d)
    if not 1 <= N < len(terms):
        raise ValueError(f"N must satisfy 1 <= N < {len(terms)}")
    at = (1 + eps) * abs(rule.asymptotic_A)
    bt = (1 + eps) * abs(rule.asymptotic_B)
    for n in range(N, len(terms) - 1):
        if not _premise_holds(rule, n, at, bt):
            raise PremiseViolation(
                n, f"|Abar_n| or |Bbar_n| >= 1 + eps at n={n} (eps={eps})")

    head = abs(terms[N])
    tail = bt * abs(terms[N - 1])
    c_prev, c = 0.0, 1.0
    for j in range(1, len(terms) - N):
        c_prev, c = c, at * c + bt * c_prev
        if abs(terms[N + j]) > (c * head + c_prev * tail) * (1 + _REL_TOL):
            return False
    return True


# -- verdicts and region scans -----------------------------------------------

@dataclass(frozen=True)
class DomainVerdict:
    a: complex
    x: complex | None
    in_pp: bool
    in_abs: bool
    pp_radius: float | None
    abs_bound: AbsBound | float | None
    status: Status


def domain_verdict(a, x=None) -> DomainVerdict:
    """Both domains at parameter ``a`` and, when given, membership of ``x``.

    ``abs_bound`` is an AbsBound for real a and the disk radius for complex a.
    a = -1 gets status PP_INDETERMINATE: the root-moduli ratio test cannot
    decide there, although both regions are still reported.
    """
    if a == 0:
        return DomainVerdict(a, x, False, False, None, AbsBound(None, None, Status.NO_SOLUTION),
                             Status.NO_SOLUTION)
    pp = pp_domain(a)
    bound = abs_boundary(a) if not isinstance(a, complex) else abs_radius(a)
    status = Status.PP_INDETERMINATE if a == -1 else Status.OK
    in_pp = x is not None and abs(x) < pp.radius
    in_abs = x is not None and abs_test(a, x)
    return DomainVerdict(a, x, in_pp, in_abs, pp.radius, bound, status)


def cell_class(v: DomainVerdict) -> CellClass:
    if v.status is not Status.OK:
        return CellClass.UNDEFINED
    if v.in_pp and v.in_abs:
        return CellClass.BOTH
    if v.in_pp:
        return CellClass.PP_ONLY
    return CellClass.OUTSIDE


_SINGULAR_A = (0.0, -1.0)


@dataclass(frozen=True, eq=False)
class RegionGrid:
    """Cell-centred raster; ``cells[i, j]`` classifies ``(a_axis[j], x_axis[i])``.

    ``a_samples`` equals ``a_axis`` except in columns whose a-interval contains
    0 or -1; those are evaluated on the singular line itself.
    """

    a_axis: np.ndarray
    x_axis: np.ndarray
    a_samples: np.ndarray
    cells: np.ndarray

    def cell_at(self, a: float, x: float) -> CellClass:
        # a singular line is looked up by its sampled value, not by nearest centre
        hit = np.flatnonzero(self.a_samples == a)
        j = int(hit[0]) if hit.size else _index(a, self.a_axis)
        i = _index(x, self.x_axis)
        return CellClass(int(self.cells[i, j]))

    def to_csv(self) -> str:
        lines = ["a,x,class"]
        for i, x in enumerate(self.x_axis):
            for j, a in enumerate(self.a_axis):
                lines.append(f"{float(a)!r},{float(x)!r},{int(self.cells[i, j])}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        payload = {
            "a": [float(v) for v in self.a_axis],
            "x": [float(v) for v in self.x_axis],
            "shape": list(self.cells.shape),
            "class": [int(c) for c in self.cells.ravel(order="C")],
        }
        return json.dumps(payload)


def _index(v: float, centers: np.ndarray) -> int:
    w = centers[1] - centers[0] if len(centers) > 1 else 1.0
    lo = centers[0] - w / 2
    return int(min(max(math.floor((v - lo) / w), 0), len(centers) - 1))


def region_scan(a_min: float, a_max: float, x_min: float, x_max: float,
                res_a: int, res_x: int) -> RegionGrid:
    if res_a < 1 or res_x < 1:
        raise ValueError("resolutions must be positive")
    if not (a_min < a_max and x_min < x_max):
        raise ValueError("bounds must be strictly ordered")
    wa = (a_max - a_min) / res_a
    wx = (x_max - x_min) / res_x
    a_axis = a_min + wa * (np.arange(res_a) + 0.5)
    x_axis = x_min + wx * (np.arange(res_x) + 0.5)

    a_samples = a_axis.copy()
    for s in _SINGULAR_A:
        if a_min <= s <= a_max:
            j = min(int(math.floor((s - a_min) / wa)), res_a - 1)
            a_samples[j] = s

    cells = np.empty((res_x, res_a), dtype=np.int8)
    for j, a in enumerate(a_samples):
        a = float(a)
        for i, x in enumerate(x_axis):
            cells[i, j] = cell_class(domain_verdict(a, float(x)))
    return RegionGrid(a_axis, x_axis, a_samples, cells)
