import mpmath
import pytest

from etaseries import series
from etaseries.checks import certified_case, random_points
from etaseries.coefficients import CoefficientTable
from etaseries.exceptions import BaseExhausted, MaxTermsExceeded, PoleAtOne
from etaseries.numerics import PrecisionContext
from etaseries.oracle import eta_reference
from etaseries.series import BlockState, SeriesConfig, eta, eta_b, head_sum, partial_sum, zeta

ZETA_HALF = "-1.4603545088095868128894991525152980125"


def test_head_sum_examples(ctx, mp):
    s = mp.mpc("0.8", 3)
    assert abs(head_sum(s, 2, 2, ctx) - (1 - mp.power(2, 1 - s))) <= ctx.ulp(1)
    assert head_sum(1, 2, 3, ctx) == 0
    expected = (1 - mp.power(2, 1 - s)) * (1 + mp.power(2, -s) + mp.power(3, -s))
    assert abs(head_sum(s, 2, 3, ctx) - expected) <= 4 * ctx.ulp(1)


def test_block_state_steps(ctx, mp):
    s = mp.mpc("0.5", 2)
    blk = BlockState(s, 3, 3, ctx)
    assert len(blk) == 18
    for _ in range(5):
        blk.step()
    direct = mp.fsum(mp.power(n, -(s + 5)) for n in range(9, 27))
    assert abs(blk.total() - direct) <= 32 * ctx.ulp(direct)


def test_worked_display_ell3(ctx, mp):
    s = mp.mpc(2)
    c = CoefficientTable(2, s, ctx).extend_cstar(3).cstar
    blk = lambda m: sum(mp.power(n, -s - m) for n in (4, 5, 6, 7))
    display = (1 - mp.power(2, 1 - s)) * (1 + mp.power(2, -s) + mp.power(3, -s)) + blk(0)
    display += sum((-1) ** m * s * c[m] / (s + m) * blk(m) for m in (1, 2, 3))
    value, _ = partial_sum(s, 2, 3, 3, ctx)
    assert abs(value - display) <= 16 * ctx.ulp(1)


def test_eta_at_one_is_log2(mp):
    ctx = PrecisionContext(50)
    r = eta(1, SeriesConfig(ctx=ctx))
    assert abs(r.value - ctx.mp.log(2)) <= ctx.mp.mpf(10) ** -50
    assert r.function == "eta" and r.b == 2 and r.ell >= 2


def test_eta_at_two(ctx, mp):
    r = eta(2, SeriesConfig(ctx=ctx))
    assert abs(r.value - mp.pi**2 / 12) <= r.remainder_bound + ctx.ulp(1)
    assert r.remainder_bound <= ctx.tolerance


def test_eta_ignores_other_base(ctx):
    r = eta(2, SeriesConfig(b=5, ctx=ctx))
    assert r.b == 2


def test_conjugate_symmetry(ctx, mp):
    s = mp.mpc("0.6", 17)
    a = eta(s, SeriesConfig(ctx=ctx)).value
    b = eta(mp.conj(s), SeriesConfig(ctx=ctx)).value
    assert a == mp.conj(b)


def test_zeta_values(ctx, mp):
    r = zeta(2, SeriesConfig(ctx=ctx))
    assert abs(r.value - mp.pi**2 / 6) <= r.remainder_bound + ctx.ulp(2)
    r = zeta(mp.mpf("0.5"), SeriesConfig(ctx=ctx))
    assert abs(r.value - mp.mpf(ZETA_HALF)) <= r.remainder_bound + mp.mpf(10) ** -36


def test_zeta_pole():
    with pytest.raises(PoleAtOne):
        zeta(1)


def test_zeta_switches_base_on_factor_zero(ctx, mp):
    s = mp.mpc(1, 2 * mp.pi / mp.log(2))
    r = zeta(s, SeriesConfig(b=2, ctx=ctx))
    assert r.b == 3
    direct = zeta(s, SeriesConfig(b=3, ctx=ctx))
    assert abs(r.value - direct.value) <= r.remainder_bound + direct.remainder_bound
    with mpmath.workprec(300):
        ref = mpmath.zeta(mpmath.mpc(s))
    assert abs(r.value - ref) <= r.remainder_bound + ctx.ulp(1)


def test_zeta_base_exhausted(ctx, mp):
    with pytest.raises(BaseExhausted):
        zeta(1 + mp.mpf(10) ** -20, SeriesConfig(ctx=ctx))


def test_max_terms_cap(ctx, mp):
    with pytest.raises(MaxTermsExceeded):
        eta_b(mp.mpc("0.5", 30), SeriesConfig(b=2, ell=2, ctx=ctx, max_terms=20))


def test_rejects_left_half_plane(ctx):
    with pytest.raises(ValueError):
        eta(-0.5, SeriesConfig(ctx=ctx))
    with pytest.raises(ValueError):
        SeriesConfig(ell=1)


@pytest.mark.parametrize("s", [complex(0.5, 14.134725), complex(2, 0), complex(0.25, -33)])
def test_ell_invariance(s):
    ctx = PrecisionContext(28)
    mp = ctx.mp
    tol = mp.mpf(10) ** -25
    res = [eta_b(s, SeriesConfig(2, ell, ctx), tol) for ell in (2, 3, 5, 8)]
    for a in res:
        for b in res:
            assert abs(a.value - b.value) <= a.remainder_bound + b.remainder_bound + mp.mpf(10) ** -28


def test_base_invariance_of_zeta():
    ctx = PrecisionContext(20)
    for s in random_points(6, seed=11, sigma=(0.2, 3), tmax=50):
        z2 = zeta(s, SeriesConfig(2, 0, ctx))
        z3 = zeta(s, SeriesConfig(3, 0, ctx))
        assert abs(z2.value - z3.value) <= z2.remainder_bound + z3.remainder_bound


@pytest.mark.parametrize("b,ell", [(2, 2), (2, 6), (3, 3), (5, 2), (5, 4)])
def test_certified_truncation(b, ell):
    ctx = PrecisionContext(20)
    for s in random_points(3, seed=b * 10 + ell, sigma=(0.1, 4), tmax=60):
        err, bound, _ = certified_case(s, b, ell, ctx)
        assert err <= bound


def test_certified_error_against_reference():
    ctx = PrecisionContext(20)
    mp = ctx.mp
    slack = mp.ldexp(mp.mpf(1), -ctx.mantissa_bits + 16)
    for s in random_points(5, seed=3, sigma=(0.1, 4), tmax=60):
        r = eta(s, SeriesConfig(ctx=ctx))
        assert abs(r.value - eta_reference(s, 40)) <= r.remainder_bound + slack


def test_term_count_monotone_in_t(ctx, mp):
    for ell in (2, 3, 5):
        cfg = SeriesConfig(2, ell, ctx)
        Ms = [series.plan_for(mp.mpc("0.5", t), cfg, ctx.tolerance).M for t in range(0, 81, 5)]
        assert all(b >= a for a, b in zip(Ms, Ms[1:]))


def test_alternating_sign_pattern_at_real_s(ctx, mp):
    s = mp.mpf("0.75")
    c = CoefficientTable(2, s, ctx).extend_cstar(20).cstar
    blk = BlockState(s, 2, 3, ctx)
    for m in range(21):
        if m:
            blk.step()
        term = (-1) ** m * s / (s + m) * c[m] * blk.total()
        assert term.imag == 0
        assert (term.real > 0) == (m % 2 == 0)


def test_dropping_the_sign_is_detected(monkeypatch):
    monkeypatch.setattr(series, "_term_sign", lambda m: 1)
    from etaseries.checks import check_certified_error

    assert not check_certified_error(random_points(2, seed=5)).passed
