"""Verification paths that share no code with the production recurrence.

* exact Bernoulli numbers and the Bernoulli-sum closed form of ``u_m(s)``,
  which gives ``c_m`` and ``cstar_m`` without running the recurrence;
* the minorant sequence ``w_m`` (closed form and its own recurrence);
* a Chebyshev-weighted alternating-series evaluator for eta(s)
  (P. Borwein's second algorithm), used as the reference value.
"""

from __future__ import annotations

import math
from fractions import Fraction
from math import comb, perm

import mpmath

from .exceptions import NearPole
from .numerics import PrecisionContext, as_complex, bits_for_digits

# RationalQ: exact rationals are fractions.Fraction
RationalQ = Fraction

_BERNOULLI: list[Fraction] = [Fraction(1)]


def bernoulli(n: int) -> Fraction:
    """Exact ``B_n`` with ``B_1 = -1/2``, from ``sum_{k<=n} C(n+1, k) B_k = 0``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    for j in range(len(_BERNOULLI), n + 1):
        if j > 1 and j % 2:
            _BERNOULLI.append(Fraction(0))
            continue
        acc = sum(comb(j + 1, k) * _BERNOULLI[k] for k in range(j))
        _BERNOULLI.append(-acc / (j + 1))
    return _BERNOULLI[n]


def _checked_ratio(bx, b, threshold, what):
    d = bx - b
    if abs(d) < threshold:
        raise NearPole(f"{what} is within {mpmath.nstr(threshold, 3)} of b (pole of the closed form)")
    return bx / d


def u_m_closed(s, m: int, b: int, ctx: PrecisionContext):
    """Bernoulli-sum closed form of ``u_m(s)``; ``u_0 = b**s / (b**s - b)``."""
    mp = ctx.mp
    s = as_complex(s, ctx)
    threshold = mp.ldexp(mp.mpf(1), -(ctx.mantissa_bits // 4))

    def ratio(shift):
        bx = mp.exp((s + shift) * mp.log(b))
        return _checked_ratio(bx, b, threshold, f"b**(s+{shift})")

    first = ratio(0)
    if m == 0:
        return first
    terms = [first / (m + 1), -ratio(1) / 2]
    for k in range(1, m // 2 + 1):
        coeff = perm(m, 2 * k - 1) * bernoulli(2 * k) / math.factorial(2 * k)
        terms.append(mp.mpf(coeff.numerator) / coeff.denominator * ratio(2 * k))
    return mp.fsum(terms)


def c_via_bernoulli(s, m: int, b: int, ctx: PrecisionContext):
    """``c_m(s) = (1 - b**(1-s)) u_m(s)``."""
    mp = ctx.mp
    s = as_complex(s, ctx)
    return (1 - mp.exp((1 - s) * mp.log(b))) * u_m_closed(s, m, b, ctx)


def cstar_via_bernoulli(s, m: int, b: int, ctx: PrecisionContext):
    """``cstar_m(s) = (s+1)_m / m! * c_m(s)`` with ``c_m`` from the closed form."""
    mp = ctx.mp
    s = as_complex(s, ctx)
    return mp.rf(s + 1, m) / mp.factorial(m) * c_via_bernoulli(s, m, b, ctx)


def w_closed(sigma, b: int, m: int, ctx: PrecisionContext):
    """``(1 - b**-sigma) * sum_{k>=0} b**(-sigma k) (1 - b**-k)**m``, tail below ``2**-(bits+8)``.

    Summed with 32 extra bits so the ``m``-th powers do not eat the last digits.
    """
    if m == 0:
        # geometric series: exactly 1
        return ctx.mp.mpf(1)
    inner = ctx.with_extra_bits(32)
    mp = inner.mp
    sigma = mp.mpf(sigma)
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    r = mp.power(b, -sigma)
    threshold = mp.ldexp(mp.mpf(1), -ctx.mantissa_bits - 8)
    terms = []
    k = 1
    rk = r
    while rk / (1 - r) >= threshold:
        terms.append(rk * (1 - mp.power(b, -k)) ** m)
        k += 1
        rk *= r
    return ctx.mp.mpf((1 - r) * mp.fsum(terms))


def w_recurrence(sigma, b: int, M: int, ctx: PrecisionContext) -> list:
    """``w_0 = 1`` and ``(b**(m+sigma) - 1) w_m = sum_{j=1..m} C(m,j) (b-1)**j w_{m-j}``."""
    mp = ctx.mp
    sigma = mp.mpf(sigma)
    w = [mp.mpf(1)]
    for m in range(1, M + 1):
        acc = mp.fsum(comb(m, j) * (b - 1) ** j * w[m - j] for j in range(1, m + 1))
        w.append(acc / (b**m * mp.power(b, sigma) - 1))
    return w


def _borwein_weights(n: int) -> list[int]:
    # d_k = n * sum_{i<=k} (n+i-1)! 4**i / ((n-i)! (2i)!), exact integers
    d = []
    acc = Fraction(0)
    for i in range(n + 1):
        acc += Fraction(math.factorial(n + i - 1) * 4**i, math.factorial(n - i) * math.factorial(2 * i))
        d.append(n * acc)
    assert all(x.denominator == 1 for x in d)
    return [int(x) for x in d]


def borwein_terms(s, digits: int) -> int:
    """Term count for ``digits`` correct digits of eta(s) with the Chebyshev weights."""
    mp = mpmath.MPContext()
    mp.prec = 64
    s = mp.mpc(s)
    t = abs(s.imag)
    # error <= 3 (1 + 2|t|) e^{pi|t|/2} / (|Gamma(s)| (3+sqrt 8)**n)
    scale = mp.log10(3 * (1 + 2 * t)) + t * mp.pi / 2 / mp.log(10) + mp.log10(abs(mp.rgamma(s)))
    need = digits + max(0, float(scale))
    return max(4, math.ceil(need / math.log10(3 + math.sqrt(8))) + 2)


def eta_reference(s, digits: int):
    """eta(s) to about ``digits`` decimal places via Chebyshev-weighted partial sums.

    Works at ``digits + 10`` digits internally and returns an ``mpc`` in a private
    context of that precision.
    """
    work = digits + 10
    mp = mpmath.MPContext()
    n = borwein_terms(s, work)
    mp.prec = bits_for_digits(work) + n.bit_length() + 16
    s = mp.mpc(s)
    if s.real <= 0:
        raise ValueError("Re s must be positive")
    d = _borwein_weights(n)
    dn = d[n]
    terms = []
    for k in range(n):
        w = mp.mpf(dn - d[k]) / dn
        terms.append((w if k % 2 == 0 else -w) * mp.power(k + 1, -s))
    return mp.fsum(terms)


def zeta_reference(s, digits: int):
    """zeta(s) = eta(s) / (1 - 2**(1-s)) from :func:`eta_reference` (``s`` off the zeros of the factor)."""
    eta = eta_reference(s, digits + 5)
    mp = eta.context
    s = mp.mpc(s)
    return eta / (1 - mp.power(2, 1 - s))


def eta_b_reference(s, b: int, digits: int):
    """eta_b(s) = (1 - b**(1-s)) / (1 - 2**(1-s)) * eta(s)."""
    if b == 2:
        return eta_reference(s, digits)
    z = zeta_reference(s, digits + 5)
    mp = z.context
    return (1 - mp.power(b, 1 - mp.mpc(s))) * z
