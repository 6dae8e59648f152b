"""Partial sums of the asymptotic Heun series, its double-series expansion and full Heun series.

With ``A = (1+a)/a``, ``B = -1/a`` the asymptotic coefficients obey
``d_{n+1} = A d_n + B d_{n-1}`` and

    sum_n d_n x**n = 1 / (1 - A x - B x**2)
                   = sum_{n,m} C(n+m, n) xt**n yt**m,   xt = A x,  yt = B x**2.

All truncation indices are inclusive: ``N = 10`` sums eleven terms.  Sums that
can leave the double range are accumulated as ScaledReal.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from .domains import heun_constants
from .errors import TooFewPointsError
from .recurrence import HeunParameters, RecurrenceRule, heun_recurrence
from .scaled import ONE, ScaledReal, sr_to_sci

__all__ = [
    "DoubleSeriesArgs",
    "ProbeVerdict",
    "SumReport",
    "double_series_args",
    "direct_sum",
    "direct_partials",
    "rect_double_sum",
    "diagonal_sum",
    "abs_diagonal_sum",
    "diagonal_partials",
    "heun_series_sum",
    "heun_partials",
    "partial_grid",
    "probe",
    "sum_report",
]

_AGREE_REL = 1e-12
_DIVERGE_RATIO = 1.01
_WINDOW = 5
_MIN_POINTS = 8
_DROP_GAP = 60


@dataclass(frozen=True)
class DoubleSeriesArgs:
    x_tilde: complex
    y_tilde: complex

    def abs_sum(self) -> float:
        return abs(self.x_tilde) + abs(self.y_tilde)


def double_series_args(a, x) -> DoubleSeriesArgs:
    A, B = heun_constants(a)
    return DoubleSeriesArgs(A * x, B * x * x)


def _real(x, name: str = "x"):
    if isinstance(x, complex):
        raise TypeError(f"{name} must be real for scaled summation")
    return x


def _targets(ns) -> list[int]:
    targets = sorted(set(int(n) for n in ns))
    if not targets or targets[0] < 0:
        raise ValueError("truncation indices must be >= 0")
    return targets


# -- single series -----------------------------------------------------------

def direct_partials(a, x, ns) -> list[tuple[int, ScaledReal]]:
    """``sum_{n<=N} dbar_n x**n`` for every N in ``ns`` in one pass.

    Each value is bit-identical to ``direct_sum(a, x, N)``.
    """
    _real(a, "a"), _real(x)
    A, B = heun_constants(a)
    sA, sB, sx = ScaledReal(A), ScaledReal(B), ScaledReal(x)
    targets = _targets(ns)
    want = set(targets)
    out = []
    prev, cur = ONE, sA
    power, total = ONE, ONE
    if 0 in want:
        out.append((0, total))
    for n in range(1, targets[-1] + 1):
        power = power * sx
        total = total + cur * power
        prev, cur = cur, sA * cur + sB * prev
        if n in want:
            out.append((n, total))
    return out


def direct_sum(a, x, N: int) -> ScaledReal:
    return direct_partials(a, x, [N])[0][1]


# -- double series -----------------------------------------------------------

def rect_double_sum(a, x, N: int) -> ScaledReal:
    """Square truncation ``sum_{n<=N} sum_{m<=N} C(n+m, n) xt**n yt**m``.

    Outer loop over n, inner over m.  Terms are updated multiplicatively,
    ``t_{n,m+1} = t_{n,m} * yt (n+m+1)/(m+1)``, and accumulated with the
    ScaledReal rounding rules inlined for speed.
    """
    _real(a, "a"), _real(x)
    if N < 0:
        raise ValueError("N must be >= 0")
    args = double_series_args(a, x)
    return _rect_sum(float(args.x_tilde), float(args.y_tilde), N)


def _rect_sum(xt: float, yt: float, N: int) -> ScaledReal:
    frexp, ldexp = math.frexp, math.ldexp
    xm, k = frexp(xt)
    xm, xe = 2.0 * xm, k - 1
    rm, re_ = 1.0, 0          # row head xt**n
    am, ae = 0.0, 0           # accumulator
    for n in range(N + 1):
        tm, te = rm, re_
        for m in range(N + 1):
            if tm != 0.0:
                if am == 0.0:
                    am, ae = tm, te
                else:
                    gap = ae - te
                    if gap >= 0:
                        if gap <= _DROP_GAP:
                            am += ldexp(tm, -gap)
                    elif gap >= -_DROP_GAP:
                        am = tm + ldexp(am, gap)
                        ae = te
                    else:
                        am, ae = tm, te
                    if am == 0.0:
                        ae = 0
                    else:
                        f, k = frexp(am)
                        am, ae = 2.0 * f, ae + k - 1
                f, k = frexp(yt * (n + m + 1) / (m + 1))
                tm *= 2.0 * f
                if tm == 0.0:
                    te = 0
                else:
                    f, k2 = frexp(tm)
                    tm, te = 2.0 * f, te + k - 1 + k2 - 1
        if rm != 0.0:
            rm *= xm
            if rm == 0.0:
                re_ = 0
            else:
                f, k = frexp(rm)
                rm, re_ = 2.0 * f, re_ + xe + k - 1
    return ScaledReal._raw(am, ae)


def diagonal_partials(a, x, ns, moduli: bool = False) -> list[tuple[int, ScaledReal]]:
    """Diagonal resummation ``sum_{r<=R} (xt + yt)**r`` (or ``(|xt| + |yt|)**r``)."""
    _real(a, "a"), _real(x)
    args = double_series_args(a, x)
    z = args.abs_sum() if moduli else args.x_tilde + args.y_tilde
    sz = ScaledReal(z)
    targets = _targets(ns)
    want = set(targets)
    out = []
    power, total = ONE, ONE
    if 0 in want:
        out.append((0, total))
    for r in range(1, targets[-1] + 1):
        power = power * sz
        total = total + power
        if r in want:
            out.append((r, total))
    return out


def diagonal_sum(a, x, R: int) -> ScaledReal:
    return diagonal_partials(a, x, [R])[0][1]


def abs_diagonal_sum(a, x, R: int) -> ScaledReal:
    return diagonal_partials(a, x, [R], moduli=True)[0][1]


# -- full Heun series --------------------------------------------------------

def heun_partials(params: HeunParameters, lam, x, ns, rule: RecurrenceRule | None = None,
                  d0=1) -> list[tuple[int, object]]:
    """``sum_{n<=N} d_n x**(n+lam)`` for every N in ``ns``, in the arithmetic of the inputs.

    ``rule`` overrides the Heun recurrence (e.g. a constant rule); the
    operation order matches ``direct_partials`` so float results coincide bit
    for bit with the ScaledReal path.
    """
    if rule is None:
        rule = heun_recurrence(params, lam)
    if lam != 0 and x == 0:
        raise ValueError("x = 0 is not allowed for a nonzero exponent")
    targets = _targets(ns)
    want = set(targets)
    shift = 1 if lam == 0 else x ** lam
    out = []
    prev, cur = d0, rule.a_fn(0) * d0
    power, total = 1, d0
    if 0 in want:
        out.append((0, total if lam == 0 else total * shift))
    for n in range(1, targets[-1] + 1):
        power = power * x
        total = total + cur * power
        prev, cur = cur, rule.a_fn(n) * cur + rule.b_fn(n) * prev
        if n in want:
            out.append((n, total if lam == 0 else total * shift))
    return out


def heun_series_sum(params: HeunParameters, lam, x, N: int, rule: RecurrenceRule | None = None,
                    d0=1):
    return heun_partials(params, lam, x, [N], rule=rule, d0=d0)[0][1]


# -- convergence probe -------------------------------------------------------

@dataclass(frozen=True)
class ProbeVerdict:
    kind: str                       # "converged", "diverging" or "indeterminate"
    value: ScaledReal | None = None
    at_N: int | None = None
    ratio: float | None = None

    def describe(self) -> str:
        if self.kind == "converged":
            return f"converged {self.value} at N={self.at_N}"
        if self.kind == "diverging":
            return f"diverging ratio={self.ratio:.6g}"
        return "indeterminate"


def probe(partials) -> ProbeVerdict:
    """Classify a run of partial sums ``[(N, S_N), ...]`` by its last five entries.

    Converged when those five agree to relative 1e-12; diverging when their
    moduli increase strictly and the growth per unit N,
    ``(|S_last| / |S_first|) ** (1 / (N_last - N_first))``, exceeds 1.01.
    """
    if len(partials) < _MIN_POINTS:
        raise TooFewPointsError(f"need at least {_MIN_POINTS} partial sums, got {len(partials)}")
    Ns = [int(N) for N, _ in partials]
    if any(b <= a for a, b in zip(Ns, Ns[1:])):
        raise ValueError("partial sums must be given at strictly increasing N")
    window = [(N, ScaledReal(v)) for N, v in partials[-_WINDOW:]]
    vals = [v for _, v in window]
    top = max(abs(v) for v in vals)
    tol = top * _AGREE_REL
    if all(abs(u - v) <= tol for u, v in combinations(vals, 2)):
        return ProbeVerdict("converged", value=vals[-1], at_N=window[-1][0])
    mags = [abs(v) for v in vals]
    if all(b > a for a, b in zip(mags, mags[1:])) and not mags[0].is_zero():
        span = window[-1][0] - window[0][0]
        ratio = 2.0 ** ((mags[-1].log2_abs() - mags[0].log2_abs()) / span)
        if ratio > _DIVERGE_RATIO:
            return ProbeVerdict("diverging", ratio=ratio)
    return ProbeVerdict("indeterminate")


@dataclass(frozen=True)
class SumReport:
    partials: list
    verdict: ProbeVerdict

    def to_csv(self, digits: int = 13) -> str:
        rows = ["N,value"] + [f"{N},{sr_to_sci(v, digits)}" for N, v in self.partials]
        return "\n".join(rows) + "\n"


def partial_grid(n: int, count: int = 10) -> list[int]:
    """Truncation points for a probe up to ``n``: ``n*k/count`` for k = 1..count, or 0..n."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n < count:
        return list(range(n + 1))
    return sorted({round(n * k / count) for k in range(1, count + 1)})


def sum_report(method: str, a, x, ns, params: HeunParameters | None = None,
               lam=0) -> SumReport:
    """Partial sums by ``method`` ("direct", "double", "diagonal", "heun") and their probe verdict."""
    if method == "direct":
        partials = direct_partials(a, x, ns)
    elif method == "double":
        partials = [(N, rect_double_sum(a, x, N)) for N in _targets(ns)]
    elif method == "diagonal":
        partials = diagonal_partials(a, x, ns)
    elif method == "heun":
        if params is None:
            raise ValueError("method 'heun' needs parameters")
        partials = [(N, ScaledReal(v)) for N, v in heun_partials(params, lam, x, ns)]
    else:
        raise ValueError(f"unknown method {method!r}")
    try:
        verdict = probe(partials)
    except TooFewPointsError:
        verdict = ProbeVerdict("indeterminate")
    return SumReport(partials, verdict)
