"""Explicit coefficient bounds and the certified truncation planner.

For real ``sigma > 0`` the coefficients satisfy

    b**-sigma  <  cstar_m(sigma)  <=  prod_{j=1..m} (1 + g(sigma+j) / (b**(sigma+j) - b))  <=  P_b(sigma)

where ``g(x) = sum_{a<b} a**x``.  For complex ``s`` the modulus is controlled by
``|cstar_m(s)| <= |(s+1)_m| / (sigma+1)_m * cstar_m(sigma)``.  The planner turns
these into a closed-form geometric majorant of the series tail.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .coefficients import PochhammerRatio, gamma_real
from .exceptions import MaxTermsExceeded, PlanFailure
from .numerics import PrecisionContext, as_complex

MAX_BLOCK = 4096
AUTO_RATIO = 0.125
# relative slack absorbing rounding in the planner's own arithmetic
_PLAN_SLACK_BITS = 24


def cstar_sigma_bound_b2(sigma, m: int, ctx: PrecisionContext):
    """``(2**sigma - 2**-m) / (2**sigma - 1)``: the product bound for base 2 in closed form."""
    mp = ctx.mp
    t = mp.power(2, mp.mpf(sigma))
    return (t - mp.ldexp(mp.mpf(1), -m)) / (t - 1)


def product_factor(b: int, sigma, j: int, ctx: PrecisionContext):
    """``(b**x - b + g(x)) / (b**x - b)`` at ``x = sigma + j``."""
    mp = ctx.mp
    sigma = mp.mpf(sigma)
    # b**j * b**sigma: rounding sigma + j first would cost log2(j) bits
    bx = b**j * mp.power(b, sigma)
    return 1 + gamma_real(b, sigma, ctx, shift=j) / (bx - b)


def cstar_sigma_bound_product(b: int, sigma, m: int, ctx: PrecisionContext, running: bool = False):
    """Finite product bound on ``cstar_m(sigma)``; with ``running=True`` the list for ``0..m``."""
    mp = ctx.mp
    out = [mp.mpf(1)]
    for j in range(1, m + 1):
        out.append(out[-1] * product_factor(b, sigma, j, ctx))
    return out if running else out[-1]


def p_bound(b: int, sigma, ctx: PrecisionContext):
    """Upper bound for the infinite product ``P_b(sigma)``.

    Factors are ``1 + e_j`` with ``e_{j+1} <= e_j (b-1)/b``, so once ``e_J`` is below
    ``2**-(bits+8)`` the neglected log-tail is at most ``(b-1) e_J``; it is folded in
    as a factor ``exp((b-1) e_J)``.
    """
    mp = ctx.mp
    sigma = mp.mpf(sigma)
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    threshold = mp.ldexp(mp.mpf(1), -ctx.mantissa_bits - 8)
    prod = mp.mpf(1)
    j = 1
    while True:
        e = product_factor(b, sigma, j, ctx) - 1
        prod *= 1 + e
        if e < threshold:
            return prod * mp.exp((b - 1) * e)
        j += 1


@dataclass
class BoundProfile:
    """Bounds on ``cstar_m(sigma)`` for one ``(b, sigma)``.

    ``tight=True`` uses ``cstar_m(sigma) <= 1``, known for ``sigma > 1``.
    """

    b: int
    sigma: object
    ctx: PrecisionContext
    tight: bool = False
    upper_sigma: list = field(default_factory=list)
    _p: object = field(default=None, repr=False)

    def __post_init__(self) -> None:
        mp = self.ctx.mp
        self.sigma = mp.mpf(self.sigma)
        if self.sigma <= 0:
            raise ValueError("sigma must be positive")
        if self.tight and self.sigma <= 1:
            raise ValueError("the tight profile needs sigma > 1")
        if not self.upper_sigma:
            self.upper_sigma = [mp.mpf(1)]

    @property
    def lower(self):
        return self.ctx.mp.power(self.b, -self.sigma)

    @property
    def p_bound(self):
        if self._p is None:
            self._p = p_bound(self.b, self.sigma, self.ctx)
        return self._p

    def factor(self, j: int):
        if self.tight:
            return self.ctx.mp.mpf(1)
        return product_factor(self.b, self.sigma, j, self.ctx)

    def upper(self, m: int):
        for j in range(len(self.upper_sigma), m + 1):
            self.upper_sigma.append(self.upper_sigma[-1] * self.factor(j))
        return self.upper_sigma[m]


def cstar_abs_bound(s, m: int, profile: BoundProfile, poch: PochhammerRatio):
    """``|(s+1)_m| / (sigma+1)_m * upper_sigma[m]`` bounding ``|cstar_m(s)|``."""
    return poch.value(m) * profile.upper(m)


@dataclass
class TruncationPlan:
    """Certified truncation: keep terms ``m = 0..M``; the rest is below ``remainder_bound``."""

    M: int
    remainder_bound: object
    ratio: object
    ell: int
    b: int
    max_term: object
    per_term_majorant: str = (
        "|s|/(sigma+m) * C(M) q**(m-M) * (b-1) * b**((ell-1)(1-sigma-m))"
    )

    @property
    def block_size(self) -> int:
        return (self.b - 1) * self.b ** (self.ell - 1)


def tail_bound(s, b: int, ell: int, M: int, C_M, q, ctx: PrecisionContext):
    """Closed-form majorant of the tail ``sum_{m>M}`` and its ratio ``rho``.

    ``C_M`` bounds ``|cstar_M(s)|``; ``q`` bounds the growth factor of that bound for
    every later index.  Returns ``(tail, rho)``; ``tail`` is infinite when ``rho >= 1``.
    """
    mp = ctx.mp
    s = as_complex(s, ctx)
    sigma = s.real
    rho = q * mp.power(b, -(ell - 1))
    if rho >= 1:
        return mp.inf, rho
    lead = abs(s) / (sigma + M + 1) * C_M * (b - 1) * mp.power(b, (ell - 1) * (1 - sigma - M))
    return lead * rho / (1 - rho), rho


def plan_truncation(s, b: int, ell: int, tol, ctx: PrecisionContext,
                    max_terms: int = 10000, tight: bool = False) -> TruncationPlan:
    """Smallest ``M`` whose certified tail majorant is at most ``tol``."""
    if ell < 2:
        raise ValueError("ell must be at least 2")
    mp = ctx.mp
    s = as_complex(s, ctx)
    sigma = s.real
    if sigma <= 0:
        raise ValueError("Re s must be positive")
    tol = mp.mpf(tol)
    if tol <= 0:
        raise ValueError("tol must be positive")
    profile = BoundProfile(b, sigma, ctx, tight=tight and sigma > 1)
    poch = PochhammerRatio(s, ctx)
    slack = 1 + mp.ldexp(mp.mpf(1), -_PLAN_SLACK_BITS)
    block = mp.mpf(b - 1)
    C = mp.mpf(1)
    # m = 0 term is a plain block sum: |s/(s+0)| = 1
    max_term = block * mp.power(b, (ell - 1) * (1 - sigma))
    converging = False
    for M in range(max_terms + 1):
        q = poch.factor(M + 1) * profile.factor(M + 1)
        tail, rho = tail_bound(s, b, ell, M, C, q, ctx)
        if rho < 1:
            converging = True
            tail *= slack
            if tail <= tol:
                return TruncationPlan(M=M, remainder_bound=tail, ratio=rho, ell=ell, b=b,
                                      max_term=max_term)
        C *= q
        term = abs(s) / (sigma + M + 1) * C * block * mp.power(b, (ell - 1) * (1 - sigma - M - 1))
        if term > max_term:
            max_term = term
    if not converging:
        raise PlanFailure(
            f"geometric ratio stays >= 1 for every M <= {max_terms} (b={b}, ell={ell}); "
            "increase ell"
        )
    raise MaxTermsExceeded(f"tolerance {mp.nstr(tol, 3)} needs more than {max_terms} terms")


def auto_plan(s, b: int, tol, ctx: PrecisionContext, max_terms: int = 10000,
              tight: bool = False) -> TruncationPlan:
    """Plan with the smallest ``ell`` reaching ``rho <= 1/8`` within ``MAX_BLOCK`` block length.

    Falls back to the smallest ratio achieved when no admissible ``ell`` gets there.
    """
    best = None
    error = None
    ell = 2
    while (b - 1) * b ** (ell - 1) <= MAX_BLOCK:
        try:
            plan = plan_truncation(s, b, ell, tol, ctx, max_terms=max_terms, tight=tight)
        except (PlanFailure, MaxTermsExceeded) as exc:
            error = exc
        else:
            if plan.ratio <= AUTO_RATIO:
                return plan
            if best is None or plan.ratio < best.ratio:
                best = plan
        ell += 1
    if best is not None:
        return best
    if error is None:
        raise PlanFailure(f"base {b} admits no block length within {MAX_BLOCK}")
    raise error
