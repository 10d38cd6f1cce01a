"""Command line behaviour: exit codes, payload shapes, reproducibility."""

import json
from fractions import Fraction

import pytest
from click.testing import CliRunner

from cycloperiods import cli, intlat, stcurve
from cycloperiods.exactfield import (
    HALF, INV_ROOT4_3, IUNIT, ONE, RHO, TowerElem, cyclo,
)


@pytest.fixture()
def runner():
    return CliRunner()


def _text(result):
    out = result.output
    try:
        out += result.stderr
    except (ValueError, AttributeError):
        pass
    return out


# -- tower literals ---------------------------------------------------------

def test_parse_tower_literals():
    assert cli.parse_tower("i") == IUNIT
    assert cli.parse_tower("rho") == RHO
    assert cli.parse_tower("(1/2)+(-1)*zeta^3") == HALF - IUNIT
    assert cli.parse_tower("alpha^-1") == INV_ROOT4_3
    assert cli.parse_tower("2**3") == TowerElem.rational(8)
    assert cli.parse_tower("0.25") == TowerElem.rational(Fraction(1, 4))
    assert cli.parse_tower("1,2") == ONE + IUNIT * 2
    assert cli.parse_tower("0.5, -0.5") == HALF - HALF * IUNIT


@pytest.mark.parametrize("bad", [
    "", "1+", "(1", "zeta^x", "1$", "1/0", "0^-1", "frob",
])
def test_parse_tower_rejects(bad):
    with pytest.raises((cli.LiteralError, ZeroDivisionError)):
        cli.parse_tower(bad)


# -- verify -----------------------------------------------------------------

def test_verify_all_json(runner):
    result = runner.invoke(cli.main, ["verify", "--all", "--json"])
    assert result.exit_code == 0
    payload = json.loads(result.output)
    checks = payload["checks"]
    assert len(checks) == 13
    assert all(c["verdict"] == "pass" for c in checks)
    ids = [c["id"] for c in checks]
    assert ids == [
        "lattice-type", "cycle-basis", "cover-table", "split-product",
        "riemann-symbolic", "riemann-positive", "deck-twist",
        "module-form", "form-diagonal", "ball-point", "special-fiber",
        "module-endo", "display-audit"]
    conv = payload["conventions"]
    assert conv["positivity_sign"] == 1
    assert conv["embedding"] == "sigma"
    assert conv["deck_weight_exponents"] == [6, 4, 2, 2]


def test_verify_single_tag_renders_a_line(runner):
    result = runner.invoke(cli.main, ["verify", "--only", "snf"])
    assert result.exit_code == 0
    assert "PASS" in result.output
    assert "lattice-type" in result.output
    assert "1 passed, 0 failed, 0 inconclusive" in result.output


def test_verify_low_precision_is_inconclusive(runner):
    result = runner.invoke(cli.main,
                           ["verify", "--only", "positivity", "--prec", "16"])
    assert result.exit_code == 3
    assert "INCONCLUSIVE" in result.output


def test_verify_strict_flags_display_divergences(runner):
    result = runner.invoke(cli.main,
                           ["verify", "--only", "errata", "--strict"])
    assert result.exit_code == 1
    assert "FAIL" in result.output


def test_verify_usage_errors(runner):
    result = runner.invoke(cli.main, ["verify", "--prec", "8"])
    assert result.exit_code == 2
    result = runner.invoke(cli.main, ["verify", "--only", "nonsense"])
    assert result.exit_code == 2
    assert "known:" in _text(result)
    result = runner.invoke(cli.main, ["verify", "--all", "--only", "snf"])
    assert result.exit_code == 2


# -- emit ---------------------------------------------------------------------

def test_emit_special_fiber_exact(runner):
    result = runner.invoke(cli.main,
                           ["emit", "prym", "--special"])
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert payload["format"] == "exact-json"
    sp = stcurve.prym_special()
    got = [[TowerElem.from_json(x) for x in row]
           for row in payload["entries"]]
    assert got == [list(row) for row in sp]
    assert payload["polarization"] == intlat.mat_to_json(
        stcurve.PRYM_POLARIZATION)


def test_emit_is_reproducible(runner):
    args = ["emit", "prym", "--special", "--format", "decimal",
            "--prec", "64", "--digits", "12"]
    first = runner.invoke(cli.main, args)
    second = runner.invoke(cli.main, args)
    assert first.exit_code == second.exit_code == 0
    assert first.output == second.output


def test_emit_family_point_decimal(runner):
    result = runner.invoke(cli.main,
                           ["emit", "prym", "--z1", "0", "--z2", "0",
                            "--format", "decimal", "--prec", "64",
                            "--digits", "8"])
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert payload["precision_bits"] == 64
    assert payload["point"] == {"z1": "0", "z2": "0"}
    entries = payload["entries"]
    assert len(entries) == 3 and all(len(r) == 6 for r in entries)
    for row in entries:
        for re_s, im_s in row:
            float(re_s), float(im_s)


def test_emit_rejects_points_outside_the_ball(runner):
    result = runner.invoke(cli.main,
                           ["emit", "prym", "--z1", "1", "--z2", "0"])
    assert result.exit_code == 2
    assert "outside the unit ball" in _text(result)


def test_emit_genus4_point(runner):
    result = runner.invoke(cli.main,
                           ["emit", "genus4", "--tau", "i"])
    assert result.exit_code == 0
    payload = json.loads(result.output)
    row0 = [TowerElem.from_json(x) for x in payload["entries"][0]]
    assert row0[0] == IUNIT and row0[1] == IUNIT
    assert row0[2].is_zero()
    assert row0[3] == -ONE - IUNIT
    exact = stcurve.genus4_period_matrix().evaluate({"tau": IUNIT})
    got = [[TowerElem.from_json(x) for x in row]
           for row in payload["entries"]]
    assert got == [list(r) for r in exact]


def test_emit_usage_errors(runner):
    result = runner.invoke(cli.main, ["emit", "genus4"])
    assert result.exit_code == 2
    result = runner.invoke(cli.main, ["emit", "genus4", "--tau=-i"])
    assert result.exit_code == 2
    assert "positive imaginary part" in _text(result)
    result = runner.invoke(cli.main, ["emit", "prym", "--tau", "i"])
    assert result.exit_code == 2
    result = runner.invoke(cli.main,
                           ["emit", "prym", "--special", "--z1", "0",
                            "--z2", "0"])
    assert result.exit_code == 2
    result = runner.invoke(cli.main, ["emit", "prym", "--z1", "0"])
    assert result.exit_code == 2
    result = runner.invoke(cli.main,
                           ["emit", "prym", "--z1", "bogus", "--z2", "0"])
    assert result.exit_code == 2


# -- tools --------------------------------------------------------------------

def test_tools_snf(runner):
    blob = json.dumps(stcurve.PRYM_POLARIZATION)
    result = runner.invoke(cli.main, ["tools", "snf", "--matrix", blob])
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert payload["divisors"] == [1, 1, 1, 1, 3, 3]
    U, D, V = payload["U"], payload["D"], payload["V"]
    assert intlat.matmul(U, intlat.matmul(stcurve.PRYM_POLARIZATION, V)) == D


def test_tools_snf_from_file(runner, tmp_path):
    path = tmp_path / "mat.json"
    path.write_text(json.dumps([[4, 0], [0, 6]]))
    result = runner.invoke(cli.main, ["tools", "snf", "--file", str(path)])
    assert result.exit_code == 0
    assert json.loads(result.output)["divisors"] == [2, 12]
    result = runner.invoke(cli.main,
                           ["tools", "snf", "--matrix", "@" + str(path)])
    assert result.exit_code == 0
    assert json.loads(result.output)["divisors"] == [2, 12]


def test_tools_snf_usage_errors(runner):
    result = runner.invoke(cli.main, ["tools", "snf"])
    assert result.exit_code == 2
    result = runner.invoke(cli.main, ["tools", "snf", "--matrix", "not json"])
    assert result.exit_code == 2
    result = runner.invoke(cli.main,
                           ["tools", "snf", "--matrix", "[[0,2],[-2]]"])
    assert result.exit_code == 2
    result = runner.invoke(cli.main,
                           ["tools", "snf", "--file", "/no/such/file"])
    assert result.exit_code == 2


def test_tools_symplectic_basis(runner):
    blob = json.dumps(stcurve.PRYM_POLARIZATION)
    result = runner.invoke(cli.main,
                           ["tools", "symplectic-basis", "--matrix", blob])
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert payload["divisors"] == [1, 1, 3]
    result = runner.invoke(cli.main,
                           ["tools", "symplectic-basis", "--matrix",
                            "[[0,0],[0,0]]"])
    assert result.exit_code == 2
    assert "degenerate" in _text(result)
    result = runner.invoke(cli.main,
                           ["tools", "symplectic-basis", "--matrix",
                            "[[1,0],[0,1]]"])
    assert result.exit_code == 2


def test_tools_riemann_check(runner, tmp_path):
    path = tmp_path / "pm.json"
    path.write_text(json.dumps(stcurve.genus4_period_matrix().to_json()))
    result = runner.invoke(cli.main,
                           ["tools", "riemann-check", "--file", str(path),
                            "--at", "tau=i"])
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert payload["first_relation"] is True
    assert payload["positivity"] == "positive"
    assert len(payload["minor_ranges"]) == 4

    result = runner.invoke(cli.main,
                           ["tools", "riemann-check", "--file", str(path),
                            "--at", "tau=0-i"])
    assert result.exit_code == 1
    assert json.loads(result.output)["positivity"] == "not-positive"

    result = runner.invoke(cli.main,
                           ["tools", "riemann-check", "--file", str(path)])
    assert result.exit_code == 2
    assert "missing --at" in _text(result)

    result = runner.invoke(cli.main,
                           ["tools", "riemann-check", "--file", str(path),
                            "--at", "tau"])
    assert result.exit_code == 2

    result = runner.invoke(cli.main,
                           ["tools", "riemann-check", "--matrix", "{}"])
    assert result.exit_code == 2


def test_tools_covers(runner):
    result = runner.invoke(cli.main,
                           ["tools", "covers", "--n", "6",
                            "--exponents", "1,1,1,3"])
    assert result.exit_code == 0
    assert "genus 4" in result.output
    rows = [line.split() for line in result.output.splitlines()[1:6]]
    assert [[int(x) for x in r] for r in rows] == [
        [1, 2, 0], [2, 1, 0], [3, 2, 1], [4, 1, 1], [5, 2, 2]]

    result = runner.invoke(cli.main,
                           ["tools", "covers", "--n", "6",
                            "--exponents", "1,1,1"])
    assert result.exit_code == 2
    result = runner.invoke(cli.main,
                           ["tools", "covers", "--n", "6",
                            "--exponents", "x"])
    assert result.exit_code == 2
