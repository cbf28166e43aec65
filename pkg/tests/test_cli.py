import csv
import io
import json
import subprocess
import sys
from fractions import Fraction

import mpmath
import pytest

from etaseries.cli import format_fixed, main, parse_complex
from etaseries.numerics import PrecisionContext
from etaseries.series import SeriesConfig, eta


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize(
    "text,expected",
    [("2", ("2", "0")), ("0.5+14.134725i", ("0.5", "+14.134725")), ("1.5-2e1i", ("1.5", "-2e1")), (" .25 ", (".25", "0"))],
)
def test_parse_complex(text, expected):
    assert parse_complex(text) == expected


@pytest.mark.parametrize("text", ["", "i", "1+i", "2*3", "1+2j", "pi"])
def test_parse_complex_rejects(text):
    with pytest.raises(ValueError):
        parse_complex(text)


def test_format_fixed(mp):
    assert format_fixed(mp.mpf("0.5"), 3) == "0.500"
    assert format_fixed(mp.mpf("-1.25"), 1) == "-1.2"
    assert format_fixed(mp.mpf(0), 2) == "0.00"
    assert format_fixed(mp.mpf("-0.0004"), 3) == "0.000"
    assert format_fixed(mp.mpf("-0.0006"), 3) == "-0.001"
    assert format_fixed(mp.mpf(7), 0) == "7"


def test_eval_eta_one(capsys):
    code, out, _ = run(capsys, "eval", "--fn", "eta", "--s", "1", "--digits", "30")
    assert code == 0
    doc = json.loads(out)
    assert set(doc) == {"function", "s", "b", "ell", "value_re", "value_im", "terms_used",
                        "remainder_bound", "elapsed_ms"}
    assert doc["function"] == "eta"
    assert doc["value_re"].startswith("0.693147180559945309417232121458")
    assert float(doc["remainder_bound"]) <= 1e-30


def test_eval_zeta_two(capsys):
    code, out, _ = run(capsys, "eval", "--fn", "zeta", "--s", "2", "--digits", "30")
    assert code == 0
    assert json.loads(out)["value_re"] == "1.644934066848226436472415166646"


def test_eval_etab_csv(capsys):
    code, out, _ = run(capsys, "eval", "--fn", "etab", "--b", "3", "--s", "2", "--digits", "20", "--format", "csv")
    assert code == 0
    row = next(csv.DictReader(io.StringIO(out)))
    assert row["function"] == "eta_b" and row["b"] == "3"
    expected = (1 - mpmath.mpf(3) ** -1) * mpmath.pi**2 / 6
    assert abs(mpmath.mpf(row["value_re"]) - expected) < 1e-19


def test_exit_codes(capsys):
    assert run(capsys, "eval", "--fn", "zeta", "--s", "1")[0] == 4
    assert run(capsys, "eval", "--s", "0.5+30i", "--ell", "2", "--max-terms", "3")[0] == 3
    assert run(capsys, "eval", "--s", "0.5+30i", "--ell", "2", "--max-terms", "20")[0] == 3
    for bad in (["eval", "--s", "abc"], ["eval", "--s=-1"], ["eval", "--digits", "0"], ["eval", "--ell", "1"]):
        with pytest.raises(SystemExit) as exc:
            main(bad)
        assert exc.value.code == 2
    capsys.readouterr()


def test_json_round_trip(capsys):
    digits = 25
    code, out, _ = run(capsys, "eval", "--s", "0.7+21.5i", "--digits", str(digits))
    doc = json.loads(out)
    ctx = PrecisionContext(digits)
    value = eta(ctx.mp.mpc("0.7", "21.5"), SeriesConfig(ctx=ctx)).value
    half = Fraction(1, 2 * 10**digits)
    for key, part in (("value_re", value.real), ("value_im", value.imag)):
        exact = Fraction(*mpmath.libmp.to_rational(part._mpf_))
        assert abs(Fraction(doc[key]) - exact) <= half


def test_coeffs_csv(capsys):
    code, out, _ = run(capsys, "coeffs", "--s", "2", "--terms", "5", "--digits", "12")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["m", "re_cstar", "im_cstar", "abs_cstar", "bound_sigma"]
    assert len(rows) == 7
    assert float(rows[3][1]) == pytest.approx(4 / 7, abs=1e-11)
    assert all(float(r[3]) <= float(r[4]) for r in rows[1:])


def test_bounds_csv(capsys):
    code, out, _ = run(capsys, "bounds", "--s", "0.5+3i", "--b", "3", "--terms", "10")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["m", "upper_sigma", "abs_bound", "lower"]
    assert len(rows) == 12
    for r in rows[1:]:
        assert float(r[3]) < float(r[1]) <= float(r[2]) or r[0] == "0"


def test_verify_quick(capsys):
    code, out, _ = run(capsys, "verify", "--quick")
    assert code == 0
    assert "FAIL" not in out
    assert out.strip().endswith("checks passed")


def test_verify_detects_injected_fault(capsys, monkeypatch):
    from etaseries import series

    monkeypatch.setattr(series, "_term_sign", lambda m: 1)
    code, out, _ = run(capsys, "verify", "--quick")
    assert code == 1
    assert any(line.startswith("FAIL") and "certified-error" in line for line in out.splitlines())


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "etaseries", "eval", "--fn", "zeta", "--s", "1"],
                          capture_output=True, text=True)
    assert proc.returncode == 4
    assert "pole" in proc.stderr
