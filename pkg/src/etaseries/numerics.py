"""Precision contract and the few arithmetic kernels everything else builds on.

Real and complex numbers are plain :mod:`mpmath` ``mpf``/``mpc`` values bound
to a private :class:`mpmath.MPContext`, one per binary precision.  Binding to
a private context (instead of the global ``mpmath.mp``) means two evaluations
at different precisions never step on each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from functools import lru_cache

import mpmath

LOG2_10 = math.log2(10)
DEFAULT_GUARD_BITS = 32


@lru_cache(maxsize=None)
def _mp_context(bits: int) -> mpmath.MPContext:
    mp = mpmath.MPContext()
    mp.prec = bits
    return mp


def bits_for_digits(digits: int) -> int:
    return math.ceil(digits * LOG2_10)


@dataclass(frozen=True)
class PrecisionContext:
    """Working precision shared by every computation in one evaluation.

    ``mantissa_bits`` defaults to ``ceil(target_digits * log2 10) + guard_bits``.
    Instances are immutable; use :meth:`with_extra_bits` or :meth:`doubled`
    to derive new ones.
    """

    target_digits: int = 30
    guard_bits: int = DEFAULT_GUARD_BITS
    mantissa_bits: int = 0
    mp: mpmath.MPContext = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.target_digits < 1:
            raise ValueError("target_digits must be positive")
        if self.guard_bits < 0:
            raise ValueError("guard_bits must be non-negative")
        floor_bits = bits_for_digits(self.target_digits) + self.guard_bits
        if self.mantissa_bits == 0:
            object.__setattr__(self, "mantissa_bits", floor_bits)
        elif self.mantissa_bits < floor_bits:
            raise ValueError(
                f"mantissa_bits={self.mantissa_bits} is below the {floor_bits} bits "
                f"needed for {self.target_digits} digits plus {self.guard_bits} guard bits"
            )
        object.__setattr__(self, "mp", _mp_context(self.mantissa_bits))

    @property
    def tolerance(self):
        """Absolute tolerance ``10**-target_digits`` as a working-precision real."""
        return self.mp.mpf(10) ** (-self.target_digits)

    def with_extra_bits(self, extra: int) -> "PrecisionContext":
        if extra <= 0:
            return self
        return replace(self, guard_bits=self.guard_bits + extra, mantissa_bits=0)

    def doubled(self) -> "PrecisionContext":
        """Same target, twice the mantissa bits (the verification precision)."""
        return replace(self, mantissa_bits=2 * self.mantissa_bits)

    def real(self, x):
        return self.mp.mpf(x)

    def complex(self, x):
        return self.mp.mpc(x)

    def ulp(self, x):
        """One unit in the last place for a value of magnitude ``|x|``."""
        mp = self.mp
        a = abs(mp.mpmathify(x))
        if a == 0:
            return mp.ldexp(mp.mpf(1), -self.mantissa_bits)
        return mp.ldexp(mp.mpf(1), int(mp.floor(mp.log(a, 2))) + 1 - self.mantissa_bits)


def _exp_log(base, e, ctx: PrecisionContext):
    """``exp(e * log(base))`` with enough extra bits that the result is within ~1 ulp."""
    size = abs(e) * math.log(float(base)) if base != 1 else 0.0
    extra = 10 + (max(1, math.ceil(float(size))).bit_length())
    wide = _mp_context(ctx.mantissa_bits + extra)
    return wide.exp(wide.mpmathify(e) * wide.log(base))


def int_pow_complex(n: int, e, ctx: PrecisionContext):
    """Return ``n**e`` for a positive integer ``n`` and complex exponent ``e``."""
    mp = ctx.mp
    if n == 1:
        return mp.mpc(1)
    return mp.mpc(_exp_log(n, mp.mpc(e), ctx))


def real_pow(a, x, ctx: PrecisionContext):
    """Return ``a**x`` for real ``a > 0``.  Integer exponents are exact when representable."""
    mp = ctx.mp
    a = mp.mpf(a)
    if a <= 0:
        raise ValueError("real_pow needs a positive base")
    x = mp.mpf(x)
    if a == 1:
        return mp.mpf(1)
    if x == int(x) and abs(x) < 4096:
        return mp.power(a, x)
    wide = _mp_context(ctx.mantissa_bits + 10 + max(1, math.ceil(abs(float(x * mp.log(a))))).bit_length())
    return mp.mpf(wide.power(wide.mpf(a), wide.mpf(x)))


def as_complex(s, ctx: PrecisionContext):
    """Coerce ``s`` (int, float, str, complex, mpmath value) into the context."""
    return ctx.mp.mpc(s)


def to_context(x, ctx: PrecisionContext):
    """Re-round an mpmath value (real or complex) into ``ctx``."""
    if isinstance(x, complex) or type(x).__name__ == "mpc":
        return ctx.mp.mpc(x)
    return ctx.mp.mpf(x)
