"""Self-verification suite and scaling benchmark behind ``etaseries verify`` / ``bench``.

Every check returns a :class:`CheckResult`; the suite never raises on a failed
comparison, it records it.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from math import comb

import mpmath

from . import series
from .bounds import (
    BoundProfile,
    cstar_sigma_bound_b2,
    cstar_sigma_bound_product,
    p_bound,
)
from .coefficients import CoefficientTable, PochhammerRatio, clear_cache
from .numerics import PrecisionContext, to_context
from .oracle import cstar_via_bernoulli, eta_reference, w_closed, zeta_reference
from .series import SeriesConfig, _work_context, eta, partial_sum, plan_for, zeta


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    soft: bool = False

    def line(self) -> str:
        status = "PASS" if self.passed else ("SOFT-FAIL" if self.soft else "FAIL")
        return f"{status:9s} {self.name:24s} {self.detail}"


def random_points(n: int, seed: int = 0, sigma=(0.2, 3.0), tmax: float = 50.0):
    """``n`` points with Re s in ``sigma`` and |Im s| <= tmax, kept away from s = 1."""
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        s = complex(rng.uniform(*sigma), rng.uniform(-tmax, tmax))
        if abs(s - 1) > 0.1:
            out.append(s)
    return out


def _fmt(x) -> str:
    return mpmath.nstr(x, 3)


def check_known_values(digits: int = 50) -> CheckResult:
    ctx = PrecisionContext(digits)
    mp = ctx.mp
    r = eta(1, SeriesConfig(ctx=ctx))
    err = abs(r.value - mp.log(2))
    ok = err <= mp.mpf(10) ** -digits
    return CheckResult("eta(1)=log 2", ok, f"err={_fmt(err)} M={r.terms_used} ell={r.ell}")


def check_zeta_values(digits: int = 40) -> CheckResult:
    ctx = PrecisionContext(digits)
    mp = ctx.mp
    worst = []
    ok = True
    for s in (2, mp.mpf(1) / 2):
        r = zeta(s, SeriesConfig(ctx=ctx))
        ref = zeta_reference(s, 2 * digits)
        err = abs(r.value - ref)
        ok &= err <= r.remainder_bound + mp.mpf(10) ** -(digits + 5)
        worst.append(_fmt(err))
    return CheckResult("zeta(2), zeta(1/2)", bool(ok), "errs=" + ",".join(worst))


def check_ell_invariance(digits: int = 28, tol_exp: int = 25) -> CheckResult:
    ctx = PrecisionContext(digits)
    mp = ctx.mp
    s = mp.mpc("0.5", "14.134725")
    tol = mp.mpf(10) ** -tol_exp
    results = {ell: series.eta_b(s, SeriesConfig(2, ell, ctx), tol) for ell in (2, 3, 5, 8)}
    ok = True
    worst = mp.mpf(0)
    for a in results:
        for b in results:
            if a < b:
                ra, rb = results[a], results[b]
                diff = abs(ra.value - rb.value)
                ok &= diff <= ra.remainder_bound + rb.remainder_bound + mp.mpf(10) ** -(tol_exp + 3)
                worst = max(worst, diff)
    terms = ",".join(f"{ell}:{r.terms_used}" for ell, r in results.items())
    return CheckResult("ell-invariance", bool(ok), f"max diff={_fmt(worst)} terms={terms}")


def check_base_invariance(points, digits: int = 20) -> CheckResult:
    ctx = PrecisionContext(digits)
    mp = ctx.mp
    bad = 0
    for s in points:
        z2 = zeta(s, SeriesConfig(2, 0, ctx))
        z3 = zeta(s, SeriesConfig(3, 0, ctx))
        if abs(z2.value - z3.value) > z2.remainder_bound + z3.remainder_bound:
            bad += 1
    return CheckResult("base-invariance", bad == 0, f"{len(points) - bad}/{len(points)} agree")


def certified_case(s, b: int, ell: int, ctx: PrecisionContext, extra_terms: int = 50):
    """``(|partial(M) - partial(M+extra) at 2x bits|, remainder_bound, plan)`` for one case."""
    cfg = SeriesConfig(b, ell, ctx)
    plan = plan_for(ctx.mp.mpc(s), cfg, ctx.tolerance)
    res = series.eta_b(s, cfg)
    ref_ctx = _work_context(ctx.doubled(), plan, plan.block_size)
    ref, _ = partial_sum(ref_ctx.mp.mpc(s), b, ell, plan.M + extra_terms, ref_ctx)
    return abs(to_context(res.value, ref_ctx) - ref), res.remainder_bound, res


def check_certified_truncation(points, digits: int = 20, seed: int = 0) -> CheckResult:
    ctx = PrecisionContext(digits)
    rng = random.Random(seed + 1)
    bad = 0
    for s in points:
        b = rng.choice((2, 3, 5))
        ells = [ell for ell in range(2, 9) if (b - 1) * b ** (ell - 1) <= 4096]
        ell = rng.choice(ells)
        err, bound, _ = certified_case(s, b, ell, ctx)
        if not err <= bound:
            bad += 1
    return CheckResult("certified-truncation", bad == 0, f"{len(points) - bad}/{len(points)} within bound")


def check_certified_error(points, digits: int = 20) -> CheckResult:
    """Production eta against the independent Chebyshev-weighted reference."""
    ctx = PrecisionContext(digits)
    mp = ctx.mp
    slack = mp.ldexp(mp.mpf(1), -ctx.mantissa_bits + 16)
    bad = 0
    for s in points:
        r = eta(s, SeriesConfig(ctx=ctx))
        ref = eta_reference(s, 2 * digits)
        if abs(r.value - ref) > r.remainder_bound + slack:
            bad += 1
    return CheckResult("certified-error", bad == 0, f"{len(points) - bad}/{len(points)} vs reference")


def check_identity_at_one(M: int = 200, digits: int = 30, bases=(2, 3, 5)) -> CheckResult:
    ctx = PrecisionContext(digits)
    mp = ctx.mp
    tol = mp.mpf(10) ** -(digits - 2)
    worst = mp.mpf(0)
    for b in bases:
        t = CoefficientTable(b, 1, ctx).extend_cstar(M).extend_c(M)
        for m in range(M + 1):
            worst = max(worst, abs(t.cstar[m] - 1), abs(t.c[m] - mp.mpf(1) / (m + 1)))
    return CheckResult("cstar(1)=1, c(1)=1/(m+1)", worst <= tol, f"max err={_fmt(worst)}")


def check_oracle_agreement(M: int = 40, digits: int = 30) -> CheckResult:
    ctx = PrecisionContext(digits)
    mp = ctx.mp
    oracle_ctx = ctx.doubled()
    t = CoefficientTable(2, 2, ctx).extend_cstar(M)
    ok = True
    worst = mp.mpf(0)
    for m in range(M + 1):
        ref = cstar_via_bernoulli(2, m, 2, oracle_ctx)
        err = abs(t.cstar[m] - ref)
        ok &= err <= mp.ldexp(mp.mpf(1), -ctx.mantissa_bits + m + 24)
        worst = max(worst, err)
    return CheckResult("bernoulli-vs-recurrence", bool(ok), f"max err={_fmt(worst)}")


def check_b2_closed_form(M: int = 100, digits: int = 30) -> CheckResult:
    ctx = PrecisionContext(digits)
    mp = ctx.mp
    worst = mp.mpf(0)
    for sigma in ("0.3", "1", "2.5"):
        prods = cstar_sigma_bound_product(2, mp.mpf(sigma), M, ctx, running=True)
        for m, p in enumerate(prods):
            worst = max(worst, abs(p - cstar_sigma_bound_b2(mp.mpf(sigma), m, ctx)))
    return CheckResult("b=2 product closed form", worst <= mp.mpf(10) ** -30, f"max err={_fmt(worst)}")


def check_bound_sandwich(M: int = 200, digits: int = 30, bases=(2, 3, 5)) -> CheckResult:
    ctx = PrecisionContext(digits)
    mp = ctx.mp
    bad = 0
    for b in bases:
        for sigma in ("0.3", "1", "2.5"):
            sg = mp.mpf(sigma)
            t = CoefficientTable(b, sg, ctx).extend_cstar(M)
            prof = BoundProfile(b, sg, ctx)
            pb = p_bound(b, sg, ctx)
            for m in range(M + 1):
                c = t.cstar[m].real
                if not (prof.lower < c <= prof.upper(m) <= pb):
                    bad += 1
    return CheckResult("bound-sandwich", bad == 0, f"{bad} violations")


def check_equality_case(M: int = 50, digits: int = 30, sigma: str = "0.7") -> CheckResult:
    ctx = PrecisionContext(digits)
    mp = ctx.mp
    sg = mp.mpf(sigma)
    real = CoefficientTable(2, sg, ctx).extend_cstar(M)
    worst = mp.mpf(0)
    for k in (1, 2):
        s = mp.mpc(sg, 2 * mp.pi * k / mp.log(2))
        t = CoefficientTable(2, s, ctx).extend_cstar(M)
        poch = PochhammerRatio(s, ctx).extend(M)
        for m in range(M + 1):
            worst = max(worst, abs(abs(t.cstar[m]) - poch.values[m] * real.cstar[m].real))
    return CheckResult("equality-case", worst <= mp.mpf(10) ** -(digits - 4), f"max err={_fmt(worst)}")


def check_periodicity(M: int = 50, digits: int = 30, s=complex(0.7, 1.0)) -> CheckResult:
    ctx = PrecisionContext(digits)
    mp = ctx.mp
    worst = mp.mpf(0)
    for b in (2, 3):
        s0 = mp.mpc(s)
        a = CoefficientTable(b, s0, ctx).extend_c(M)
        p = CoefficientTable(b, s0 + 2j * mp.pi / mp.log(b), ctx).extend_c(M)
        worst = max(worst, max(abs(x - y) for x, y in zip(a.c, p.c)))
    return CheckResult("periodicity of c_m", worst <= mp.mpf(10) ** -(digits - 4), f"max err={_fmt(worst)}")


def check_w_identities(M: int = 30, digits: int = 30) -> CheckResult:
    ctx = PrecisionContext(digits)
    mp = ctx.mp
    bad = []
    for b in (2, 3, 5):
        for sigma in ("0.3", "1", "2.5"):
            sg = mp.mpf(sigma)
            w = [w_closed(sg, b, m, ctx) for m in range(M + 1)]
            c = CoefficientTable(b, sg, ctx).extend_c(M).c
            cstar = CoefficientTable(b, sg, ctx).extend_cstar(M).cstar
            for m in range(1, M + 1):
                lhs = (b**m * mp.power(b, sg) - 1) * w[m]
                rhs = mp.fsum(comb(m, j) * (b - 1) ** j * w[m - j] for j in range(1, m + 1))
                if abs(lhs - rhs) > 16 * ctx.ulp(lhs):
                    bad.append(f"rec b={b} s={sigma} m={m}")
                if not mp.power(b, sg) * w[m] > mp.factorial(m) / mp.rf(sg + 1, m):
                    bad.append(f"chain b={b} s={sigma} m={m}")
            for m in range(M + 1):
                if not (c[m].real >= w[m] and cstar[m].real > mp.power(b, -sg)):
                    bad.append(f"minorant b={b} s={sigma} m={m}")
    return CheckResult("w_m identities", not bad, "; ".join(bad[:3]) or "recurrence, chain, minorant")


def run_verify(quick: bool = False, seed: int = 0) -> list[CheckResult]:
    n = 8 if quick else 50
    pts = random_points(n, seed)
    M_long = 60 if quick else 200
    checks = [
        lambda: check_known_values(),
        lambda: check_zeta_values(),
        lambda: check_ell_invariance(),
        lambda: check_base_invariance(pts),
        lambda: check_certified_truncation(pts, seed=seed),
        lambda: check_certified_error(pts),
        lambda: check_identity_at_one(M_long),
        lambda: check_oracle_agreement(),
        lambda: check_b2_closed_form(),
        lambda: check_bound_sandwich(M_long),
        lambda: check_equality_case(),
        lambda: check_periodicity(),
        lambda: check_w_identities(),
    ]
    return [c() for c in checks]


# --- scaling benchmark -------------------------------------------------------

BENCH_T = (10, 20, 40, 80)
BENCH_DIGITS = (20, 40, 80)


def bench_rows(ell: int = 2, t_digits: int = 20, sigma: float = 0.5, fixed_t: int = 10,
               repeats: int = 3):
    """Rows ``(t, digits, M, elapsed_ms)`` for the t-sweep then the digits-sweep.

    Timings are the best of ``repeats`` cold evaluations (coefficient cache cleared).
    """
    rows = []
    cases = [(t, t_digits) for t in BENCH_T] + [(fixed_t, d) for d in BENCH_DIGITS]
    for t, digits in cases:
        ctx = PrecisionContext(digits)
        cfg = SeriesConfig(2, ell, ctx)
        best = None
        for _ in range(repeats):
            clear_cache()
            start = time.perf_counter()
            r = series.eta_b(complex(sigma, t), cfg)
            elapsed = (time.perf_counter() - start) * 1000
            best = elapsed if best is None else min(best, elapsed)
        rows.append((t, digits, r.terms_used, best))
    return rows


def bench_soft_checks(rows) -> list[CheckResult]:
    t_rows = {r[0]: r for r in rows[: len(BENCH_T)]}
    d_rows = {r[1]: r for r in rows[len(BENCH_T):]}
    out = []
    for t in BENCH_T[:-1]:
        ratio = t_rows[2 * t][2] / t_rows[t][2]
        out.append(CheckResult(f"M(t={2 * t})/M(t={t})", 1.5 <= ratio <= 2.6,
                               f"ratio={ratio:.2f} (band [1.5, 2.6])", soft=True))
    time_ratio = d_rows[80][3] / d_rows[40][3]
    out.append(CheckResult("time(80d)/time(40d)", time_ratio >= 2.5, f"ratio={time_ratio:.2f} (>= 2.5)",
                           soft=True))
    out.append(CheckResult("M(40d) > M(20d)", d_rows[40][2] > d_rows[20][2],
                           f"{d_rows[40][2]} vs {d_rows[20][2]}", soft=True))
    return out
