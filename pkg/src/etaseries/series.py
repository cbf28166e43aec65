"""Evaluation of eta_b(s), eta(s) and zeta(s) for Re s > 0.

With ``N = b**(ell-1)`` the representation used is::

    eta_b(s) = (1 - b**(1-s)) * sum_{0<n<N} n**-s
             + sum_{m>=0} (-1)**m * s/(s+m) * cstar_m(s) * sum_{N<=n<b*N} n**-(s+m)

and ``zeta(s) = eta_b(s) / (1 - b**(1-s))``.  The ``m``-series converges
geometrically with ratio about ``b**(1-ell)``; the number of kept terms comes
from :func:`etaseries.bounds.plan_truncation` before anything is summed.
"""

from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass, field

from .bounds import TruncationPlan, auto_plan, plan_truncation
from .coefficients import coefficient_table
from .exceptions import BaseExhausted, PoleAtOne
from .numerics import PrecisionContext, as_complex, int_pow_complex, to_context

logger = logging.getLogger(__name__)

ZETA_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29)


@dataclass(frozen=True)
class SeriesConfig:
    """Evaluation settings.  ``ell = 0`` lets the planner choose the block length."""

    b: int = 2
    ell: int = 0
    ctx: PrecisionContext = field(default_factory=PrecisionContext)
    max_terms: int = 10000
    tight: bool = False

    def __post_init__(self) -> None:
        if self.b < 2:
            raise ValueError(f"base must be an integer >= 2, got {self.b}")
        if self.ell != 0 and self.ell < 2:
            raise ValueError("ell must be 0 (automatic) or at least 2")


@dataclass
class EvaluationResult:
    value: object
    head: object
    terms_used: int
    remainder_bound: object
    b: int
    ell: int
    elapsed: float
    function: str = "eta_b"
    ratio: object = None


class BlockState:
    """``values[i] = n_i**-(s+m)`` over one block ``b**(ell-1) <= n < b**ell``.

    Stepping multiplies every entry by the stored reciprocal ``1/n_i``.
    """

    def __init__(self, s, b: int, ell: int, ctx: PrecisionContext):
        mp = ctx.mp
        lo, hi = b ** (ell - 1), b**ell
        self.ctx = ctx
        self.m = 0
        self.inv = [mp.mpf(1) / n for n in range(lo, hi)]
        self.values = [int_pow_complex(n, -s, ctx) for n in range(lo, hi)]

    def __len__(self) -> int:
        return len(self.values)

    def total(self):
        return self.ctx.mp.fsum(self.values)

    def step(self) -> None:
        self.values = [v * r for v, r in zip(self.values, self.inv)]
        self.m += 1


def _term_sign(m: int) -> int:
    return -1 if m & 1 else 1


def head_sum(s, b: int, ell: int, ctx: PrecisionContext):
    """``(1 - b**(1-s)) * sum_{0<n<b**(ell-1)} n**-s``."""
    mp = ctx.mp
    s = as_complex(s, ctx)
    factor = 1 - int_pow_complex(b, 1 - s, ctx)
    return factor * mp.fsum(int_pow_complex(n, -s, ctx) for n in range(1, b ** (ell - 1)))


def partial_sum(s, b: int, ell: int, M: int, ctx: PrecisionContext):
    """Head plus the ``m``-series truncated after index ``M``; returns ``(value, head)``."""
    mp = ctx.mp
    s = as_complex(s, ctx)
    table = coefficient_table(b, s, ctx).extend_cstar(M)
    head = head_sum(s, b, ell, ctx)
    block = BlockState(s, b, ell, ctx)
    terms = []
    for m in range(M + 1):
        if m:
            block.step()
        weight = table.cstar[m] if m == 0 else s / (s + m) * table.cstar[m]
        terms.append(_term_sign(m) * weight * block.total())
    return head + mp.fsum(terms), head


def _work_context(ctx: PrecisionContext, plan: TruncationPlan, block: int) -> PrecisionContext:
    # cancellation among terms as large as plan.max_term, plus accumulation over M and the block
    extra = math.ceil(math.log2(float(plan.max_term))) if plan.max_term > 1 else 0
    extra += math.ceil(math.log2(plan.M + block + 2))
    return ctx.with_extra_bits(extra)


def plan_for(s, cfg: SeriesConfig, tol) -> TruncationPlan:
    if cfg.ell:
        return plan_truncation(s, cfg.b, cfg.ell, tol, cfg.ctx, cfg.max_terms, cfg.tight)
    return auto_plan(s, cfg.b, tol, cfg.ctx, cfg.max_terms, cfg.tight)


def eta_b(s, cfg: SeriesConfig | None = None, tol=None) -> EvaluationResult:
    """``eta_b(s) = (1 - b**(1-s)) zeta(s)`` with a certified absolute truncation bound."""
    cfg = cfg or SeriesConfig()
    ctx = cfg.ctx
    start = time.perf_counter()
    s = as_complex(s, ctx)
    if s.real <= 0:
        raise ValueError("Re s must be positive")
    tol = ctx.tolerance if tol is None else ctx.mp.mpf(tol)
    plan = plan_for(s, cfg, tol)
    work = _work_context(ctx, plan, plan.block_size)
    logger.debug("b=%d ell=%d M=%d work bits=%d", plan.b, plan.ell, plan.M, work.mantissa_bits)
    value, head = partial_sum(to_context(s, work), cfg.b, plan.ell, plan.M, work)
    return EvaluationResult(
        value=to_context(value, ctx),
        head=to_context(head, ctx),
        terms_used=plan.M,
        remainder_bound=plan.remainder_bound,
        b=cfg.b,
        ell=plan.ell,
        elapsed=time.perf_counter() - start,
        function="eta" if cfg.b == 2 else "eta_b",
        ratio=plan.ratio,
    )


def eta(s, cfg: SeriesConfig | None = None, tol=None) -> EvaluationResult:
    """Euler's alternating series ``sum (-1)**(n-1) n**-s`` (base 2)."""
    cfg = cfg or SeriesConfig()
    if cfg.b != 2:
        cfg = SeriesConfig(2, cfg.ell, cfg.ctx, cfg.max_terms, cfg.tight)
    result = eta_b(s, cfg, tol)
    result.function = "eta"
    return result


def zeta(s, cfg: SeriesConfig | None = None, tol=None) -> EvaluationResult:
    """Riemann zeta from ``eta_b``, switching base when ``1 - b**(1-s)`` is nearly zero."""
    cfg = cfg or SeriesConfig()
    ctx = cfg.ctx
    mp = ctx.mp
    start = time.perf_counter()
    s = as_complex(s, ctx)
    if s == 1:
        raise PoleAtOne("zeta has a pole at s = 1")
    if s.real <= 0:
        raise ValueError("Re s must be positive")
    tol = ctx.tolerance if tol is None else mp.mpf(tol)
    threshold = mp.ldexp(mp.mpf(1), -(ctx.mantissa_bits // 4))
    candidates = [cfg.b] + [p for p in ZETA_BASES if p != cfg.b]
    for b in candidates:
        factor = 1 - int_pow_complex(b, 1 - s, ctx)
        size = abs(factor)
        if size < threshold:
            logger.info("1 - %d**(1-s) is %s; trying another base", b, mp.nstr(size, 3))
            continue
        extra = max(0, math.ceil(-math.log2(float(size))))
        # keep ell only for the requested base; other bases get their own choice
        ell = cfg.ell if b == cfg.b else 0
        sub = SeriesConfig(b, ell, ctx.with_extra_bits(extra), cfg.max_terms, cfg.tight)
        res = eta_b(s, sub, tol * size / 2)
        factor = 1 - int_pow_complex(b, 1 - to_context(s, sub.ctx), sub.ctx)
        return EvaluationResult(
            value=to_context(res.value / factor, ctx),
            head=res.head,
            terms_used=res.terms_used,
            remainder_bound=res.remainder_bound / size,
            b=b,
            ell=res.ell,
            elapsed=time.perf_counter() - start,
            function="zeta",
            ratio=res.ratio,
        )
    raise BaseExhausted(f"1 - b**(1-s) vanishes numerically for every base in {candidates}")
