"""Recurrence-defined coefficient sequences.

For an integer base ``b >= 2`` and ``Re s > 0`` two sequences are built:

``cstar[m]``
    ``cstar[0] = 1`` and for ``m >= 1``::

        cstar[m] = 1/(b**(s+m) - b) * sum_{j=1..m} (s+m)(s+m-1)...(s+m-j+1)/j! * g_j * cstar[m-j]

``c[m]``
    ``c[0] = 1`` and ``c[m] = 1/(b**(s+m) - b) * sum_{j=1..m} C(m, j) g_j c[m-j]``,

with ``g_j = 1**j + 2**j + ... + (b-1)**j``.  The two are related by
``cstar[m] = (s+1)_m / m! * c[m]``.  ``c`` is periodic in ``s`` with period
``2*pi*i / log b``; ``cstar`` is not.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb

from .numerics import PrecisionContext, as_complex, int_pow_complex, real_pow


@dataclass
class GammaTable:
    """``values[j] = sum_{a=1}^{b-1} a**j`` for ``j = 0..M`` (index 0 is ``b - 1``)."""

    b: int
    values: list

    @property
    def M(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, j: int):
        return self.values[j]


def gamma_table(b: int, M: int, ctx: PrecisionContext) -> GammaTable:
    if b < 2:
        raise ValueError(f"base must be an integer >= 2, got {b}")
    if M < 0:
        raise ValueError("M must be non-negative")
    mp = ctx.mp
    # integer power sums, rounded once each
    powers = [1] * (b - 1)
    values = [mp.mpf(b - 1)]
    for _ in range(M):
        powers = [p * a for p, a in zip(powers, range(1, b))]
        values.append(mp.mpf(sum(powers)))
    return GammaTable(b, values)


def gamma_real(b: int, x, ctx: PrecisionContext, shift: int = 0):
    """Power sum ``sum_{a<b} a**(x+shift)`` for real ``x`` and integer ``shift >= 0``."""
    mp = ctx.mp
    return mp.fsum(a**shift * real_pow(a, x, ctx) for a in range(1, b))


class CoefficientTable:
    """Cached ``cstar`` (and optionally ``c``) for fixed ``(b, s, precision)``.

    Tables grow in place through :meth:`extend_cstar` / :meth:`extend_c`; the
    same table serves every block length ``ell``.
    """

    def __init__(self, b: int, s, ctx: PrecisionContext):
        if b < 2:
            raise ValueError(f"base must be an integer >= 2, got {b}")
        self.b = b
        self.ctx = ctx
        self.s = as_complex(s, ctx)
        if self.s.real <= 0:
            raise ValueError("coefficients are defined for Re s > 0 only")
        mp = ctx.mp
        self._bs = int_pow_complex(b, self.s, ctx)  # b**s
        self._gammas = gamma_table(b, 0, ctx)
        self._denoms = [None]  # b**(s+m) - b, m >= 1
        self.cstar = [mp.mpc(1)]
        self.c = None

    @property
    def M(self) -> int:
        return len(self.cstar) - 1

    def _gamma(self, upto: int) -> GammaTable:
        if self._gammas.M < upto:
            self._gammas = gamma_table(self.b, upto, self.ctx)
        return self._gammas

    def denominator(self, m: int):
        """``b**(s+m) - b`` for ``m >= 1``."""
        while len(self._denoms) <= m:
            k = len(self._denoms)
            self._denoms.append(self._bs * self.ctx.mp.mpf(self.b) ** k - self.b)
        return self._denoms[m]

    def extend_cstar(self, upto: int) -> "CoefficientTable":
        s = self.s
        g = self._gamma(upto)
        unit_gammas = self.b == 2
        for m in range(len(self.cstar), upto + 1):
            acc = 0
            w = 1
            sm = s + m
            for j in range(1, m + 1):
                # falling factorial (s+m)...(s+m-j+1) / j!, built up in j
                w = w * (sm - (j - 1)) / j
                term = w * self.cstar[m - j]
                acc += term if unit_gammas else term * g[j]
            self.cstar.append(acc / self.denominator(m))
        return self

    def extend_c(self, upto: int) -> "CoefficientTable":
        mp = self.ctx.mp
        g = self._gamma(upto)
        if self.c is None:
            self.c = [mp.mpc(1)]
        c = self.c
        for m in range(len(c), upto + 1):
            acc = 0
            for j in range(1, m + 1):
                acc += comb(m, j) * g[j] * c[m - j]
            c.append(acc / self.denominator(m))
        return self

    def rising_ratio(self, m: int):
        """``(s+1)_m / m!``."""
        mp = self.ctx.mp
        r = mp.mpc(1)
        for j in range(1, m + 1):
            r *= (self.s + j) / j
        return r


def cstar_extend(table: CoefficientTable, upto: int) -> CoefficientTable:
    return table.extend_cstar(upto)


def c_extend(table: CoefficientTable, upto: int) -> CoefficientTable:
    return table.extend_c(upto)


@lru_cache(maxsize=128)
def _cached_table(b: int, s, ctx: PrecisionContext) -> CoefficientTable:
    return CoefficientTable(b, s, ctx)


def clear_cache() -> None:
    _cached_table.cache_clear()


def coefficient_table(b: int, s, ctx: PrecisionContext) -> CoefficientTable:
    """Shared table keyed by ``(b, s, precision)``."""
    return _cached_table(b, as_complex(s, ctx), ctx)


@dataclass
class PochhammerRatio:
    """``values[m] = |(s+1)_m| / (sigma+1)_m`` with ``sigma = Re s``.

    Each new factor ``|s+j| / (sigma+j)`` is ``>= 1`` and decreasing in ``j``,
    so the sequence is non-decreasing and grows ever more slowly.
    """

    s: object
    ctx: PrecisionContext
    values: list = field(default_factory=list)

    def __post_init__(self) -> None:
        self.s = as_complex(self.s, self.ctx)
        if not self.values:
            self.values = [self.ctx.mp.mpf(1)]

    @property
    def sigma(self):
        return self.s.real

    @property
    def M(self) -> int:
        return len(self.values) - 1

    def factor(self, j: int):
        mp = self.ctx.mp
        if self.s.imag == 0:
            return mp.mpf(1)
        return abs(self.s + j) / (self.sigma + j)

    def extend(self, upto: int) -> "PochhammerRatio":
        for j in range(len(self.values), upto + 1):
            self.values.append(self.values[-1] * self.factor(j))
        return self

    def value(self, m: int):
        self.extend(m)
        return self.values[m]


def pochhammer_ratio_extend(r: PochhammerRatio, upto: int) -> PochhammerRatio:
    return r.extend(upto)
