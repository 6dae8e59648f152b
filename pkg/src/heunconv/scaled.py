"""Real numbers with a double-precision mantissa and an unbounded binary exponent.

A ``ScaledReal`` stores ``sign * mantissa * 2**exp2`` with ``mantissa`` in
[1, 2) and ``exp2`` a Python int.  Inside the normal double range every
operation rounds exactly like IEEE-754 binary64, so results agree bit for bit
with plain ``float`` arithmetic wherever the latter does not overflow.  Outside
that range (magnitudes such as 1e584) the exponent simply keeps growing.

Decimal output is produced from the exact binary value with integer arithmetic,
so printed exponents never depend on a floating ``log10``.
"""
from __future__ import annotations

import math
from decimal import ROUND_HALF_EVEN, Context, Decimal
from fractions import Fraction
from numbers import Rational

__all__ = [
    "ScaledReal",
    "sr_add",
    "sr_mul",
    "sr_neg",
    "sr_abs",
    "sr_cmp",
    "sr_to_sci",
    "sr_to_fixed",
    "sr_parse",
    "sr_binomial",
]

# Exponent gap beyond which the smaller addend cannot affect a 53-bit result.
_DROP_GAP = 60
_MANT_BITS = 53
_BINOMIAL_N_MAX = 10**6


def _normalize(m: float, e: int) -> tuple[float, int]:
    """Return signed mantissa in +-[1, 2) and exponent for ``m * 2**e``."""
    if m == 0.0:
        return 0.0, 0
    if math.isinf(m) or math.isnan(m):
        raise ValueError(f"cannot represent {m!r} as a ScaledReal")
    f, k = math.frexp(m)
    return 2.0 * f, e + k - 1


class ScaledReal:
    """Immutable scaled real ``sign * mantissa * 2**exp2``.

    ``ScaledReal(value, exp2=0)`` builds ``value * 2**exp2`` from an int,
    float or Fraction, rounding once to 53 bits.  Zero is canonical: sign 0,
    mantissa 0.0, exp2 0.
    """

    __slots__ = ("_m", "_e")

    def __init__(self, value=0.0, exp2: int = 0):
        if isinstance(value, ScaledReal):
            m, e = value._m, value._e + exp2
        elif isinstance(value, float):
            m, e = _normalize(value, exp2)
        elif isinstance(value, int):
            m, e = _from_ratio(value, 1)
            e += exp2
        elif isinstance(value, Rational):
            m, e = _from_ratio(value.numerator, value.denominator)
            e += exp2
        else:
            raise TypeError(f"ScaledReal needs a real number, got {type(value).__name__}")
        if m == 0.0:
            e = 0
        object.__setattr__(self, "_m", m)
        object.__setattr__(self, "_e", e)

    @classmethod
    def _raw(cls, m: float, e: int) -> ScaledReal:
        # m must already be normalized (or 0.0 with e == 0)
        obj = object.__new__(cls)
        object.__setattr__(obj, "_m", m)
        object.__setattr__(obj, "_e", e)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("ScaledReal is immutable")

    # -- fields ------------------------------------------------------------
    @property
    def sign(self) -> int:
        return (self._m > 0) - (self._m < 0)

    @property
    def mantissa(self) -> float:
        return abs(self._m)

    @property
    def exp2(self) -> int:
        return self._e

    def is_zero(self) -> bool:
        return self._m == 0.0

    def log2_abs(self) -> float:
        """``log2(|self|)``; ``-inf`` for zero."""
        if self._m == 0.0:
            return -math.inf
        return math.log2(abs(self._m)) + self._e

    def as_fraction(self) -> Fraction:
        """Exact rational value."""
        return Fraction(self._m) * (Fraction(2) ** self._e)

    # -- conversions -------------------------------------------------------
    def __float__(self) -> float:
        # raises OverflowError above the double range, like int -> float
        return math.ldexp(self._m, self._e)

    def __bool__(self) -> bool:
        return self._m != 0.0

    def __repr__(self) -> str:
        return f"ScaledReal({sr_to_sci(self, 17)})"

    def __str__(self) -> str:
        return sr_to_sci(self, 6)

    def __hash__(self):
        return hash((self._m, self._e))

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        return sr_add(self, _coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return sr_add(self, sr_neg(_coerce(other)))

    def __rsub__(self, other):
        return sr_add(_coerce(other), sr_neg(self))

    def __mul__(self, other):
        return sr_mul(self, _coerce(other))

    __rmul__ = __mul__

    def __neg__(self):
        return sr_neg(self)

    def __abs__(self):
        return sr_abs(self)

    def __eq__(self, other):
        try:
            return sr_cmp(self, _coerce(other)) == 0
        except TypeError:
            return NotImplemented

    def __lt__(self, other):
        return sr_cmp(self, _coerce(other)) < 0

    def __le__(self, other):
        return sr_cmp(self, _coerce(other)) <= 0

    def __gt__(self, other):
        return sr_cmp(self, _coerce(other)) > 0

    def __ge__(self, other):
        return sr_cmp(self, _coerce(other)) >= 0


ZERO = ScaledReal._raw(0.0, 0)
ONE = ScaledReal._raw(1.0, 0)


def _coerce(x) -> ScaledReal:
    if isinstance(x, ScaledReal):
        return x
    if isinstance(x, (int, float, Rational)) and not isinstance(x, bool):
        return ScaledReal(x)
    raise TypeError(f"unsupported operand type {type(x).__name__}")


def _from_ratio(num: int, den: int) -> tuple[float, int]:
    """Correctly rounded normalized mantissa/exponent of ``num/den``."""
    if den == 0:
        raise ZeroDivisionError("zero denominator")
    if num == 0:
        return 0.0, 0
    if den < 0:
        num, den = -num, -den
    shift = abs(num).bit_length() - den.bit_length()
    if shift > 0:
        den <<= shift
    else:
        num <<= -shift
    # int / int is correctly rounded; the quotient lies in (1/2, 2)
    return _normalize(num / den, shift)


def sr_add(x: ScaledReal, y: ScaledReal) -> ScaledReal:
    if x._m == 0.0:
        return y
    if y._m == 0.0:
        return x
    if x._e < y._e:
        x, y = y, x
    gap = x._e - y._e
    if gap > _DROP_GAP:
        return x
    m, e = _normalize(x._m + math.ldexp(y._m, -gap), x._e)
    return ScaledReal._raw(m, e)


def sr_mul(x: ScaledReal, y: ScaledReal) -> ScaledReal:
    if x._m == 0.0 or y._m == 0.0:
        return ZERO
    m, e = _normalize(x._m * y._m, x._e + y._e)
    return ScaledReal._raw(m, e)


def sr_neg(x: ScaledReal) -> ScaledReal:
    if x._m == 0.0:
        return x
    return ScaledReal._raw(-x._m, x._e)


def sr_abs(x: ScaledReal) -> ScaledReal:
    return x if x._m >= 0.0 else ScaledReal._raw(-x._m, x._e)


def sr_cmp(x: ScaledReal, y: ScaledReal) -> int:
    """Three-way comparison: -1, 0 or 1."""
    sx, sy = x.sign, y.sign
    if sx != sy:
        return -1 if sx < sy else 1
    if sx == 0:
        return 0
    if x._e != y._e:
        mag = -1 if x._e < y._e else 1
    elif x._m == y._m:
        return 0
    else:
        mag = -1 if abs(x._m) < abs(y._m) else 1
    return mag * sx


# -- decimal I/O ------------------------------------------------------------

def _exact_decimal(x: ScaledReal) -> Decimal:
    # |m| * 2**52 is an integer because m carries 53 significant bits
    mant = int(math.ldexp(abs(x._m), _MANT_BITS - 1))
    k = x._e - (_MANT_BITS - 1)
    if k >= 0:
        d = Decimal(mant << k)
    else:
        d = Decimal(mant * 5 ** (-k)).scaleb(k)
    return -d if x._m < 0 else d


def sr_to_sci(x: ScaledReal, digits: int = 6) -> str:
    """Decimal scientific string ``d.ddd...e+D`` with ``digits`` significant digits.

    Rounding is half-even on the exact binary value.  Zero prints as ``"0"``.
    """
    if digits < 1:
        raise ValueError("digits must be >= 1")
    x = _coerce(x)
    if x._m == 0.0:
        return "0"
    exact = _exact_decimal(x)
    ctx = Context(prec=digits, rounding=ROUND_HALF_EVEN, Emax=10**9, Emin=-(10**9))
    rounded = ctx.plus(exact)
    sign, dig, exp = rounded.as_tuple()
    sci_exp = exp + len(dig) - 1
    dig = dig + (0,) * (digits - len(dig))
    body = str(dig[0])
    if digits > 1:
        body += "." + "".join(map(str, dig[1:digits]))
    return f"{'-' if sign else ''}{body}e{'+' if sci_exp >= 0 else '-'}{abs(sci_exp)}"


def sr_to_fixed(x: ScaledReal, decimals: int = 12) -> str:
    """Fixed-point string with ``decimals`` digits after the point (half-even)."""
    if decimals < 0:
        raise ValueError("decimals must be >= 0")
    x = _coerce(x)
    exact = _exact_decimal(x)
    int_digits = max(1, exact.adjusted() + 1)
    ctx = Context(prec=int_digits + decimals + 2, rounding=ROUND_HALF_EVEN,
                  Emax=10**9, Emin=-(10**9))
    q = exact.quantize(Decimal(1).scaleb(-decimals), context=ctx)
    if q == 0:
        q = abs(q)
    return f"{q:f}"


def sr_parse(text: str) -> ScaledReal:
    """Parse a decimal string (as printed by ``sr_to_sci``) into a ScaledReal."""
    d = Decimal(text.strip())
    if not d.is_finite():
        raise ValueError(f"not a finite number: {text!r}")
    sign, dig, exp = d.as_tuple()
    num = int("".join(map(str, dig)) or "0")
    if sign:
        num = -num
    if exp >= 0:
        return ScaledReal(num * 10**exp)
    return ScaledReal(Fraction(num, 10 ** (-exp)))


# -- combinatorics ----------------------------------------------------------

def sr_binomial(n: int, k: int) -> ScaledReal:
    """Binomial coefficient C(n, k) by the multiplicative recurrence."""
    if not (isinstance(n, int) and isinstance(k, int)):
        raise TypeError("n and k must be integers")
    if not 0 <= k <= n or n > _BINOMIAL_N_MAX:
        raise ValueError(f"binomial({n}, {k}) outside 0 <= k <= n <= {_BINOMIAL_N_MAX}")
    k = min(k, n - k)
    m, e = 1.0, 0
    base = n - k
    for i in range(1, k + 1):
        m, e = _normalize(m * ((base + i) / i), e)
    return ScaledReal._raw(m, e)
