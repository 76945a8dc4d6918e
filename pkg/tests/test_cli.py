import re
from pathlib import Path

import pytest
from click.testing import CliRunner

from singmat import _catalog_data, catalog
from singmat.cli import main

GERMS = Path(__file__).resolve().parent.parent / "germs"

NON_TRANSVERSE = """space = sym2
source_dim = 2
vars = x, y
entry 1 1 = x
entry 1 2 = y
entry 2 1 = y
entry 2 2 = y^2
"""


def run(*args):
    return CliRunner().invoke(main, [str(a) for a in args])


def machine_block(output):
    block = output.split("[report]\n", 1)[1]
    return dict(line.split(" = ", 1) for line in block.splitlines() if " = " in line)


def term_values(kv):
    idx = sorted({int(k.split(".")[1]) for k in kv if k.startswith("term.")})
    return [(int(kv[f"term.{i}.coef"]), int(kv[f"term.{i}.value"])) for i in idx]


def test_higher_mult():
    res = run("higher-mult", "--divisor", "E4sk", "--k", "3")
    assert res.exit_code == 0
    assert res.output.splitlines()[0].endswith("16")


def test_higher_mult_computed():
    res = run("higher-mult", "--divisor", "D2sy", "--k", "2", "--computed")
    assert res.exit_code == 0, res.output
    assert "1" in res.output.splitlines()[0]


def test_tau_and_cm_3fold():
    res = run("tau", GERMS / "a2_row01.germ")
    assert res.exit_code == 0
    assert res.output.startswith("tau = 1\n")
    res = run("cm-3fold", GERMS / "a2_row01.germ")
    assert res.exit_code == 0
    assert res.output.startswith("b3 - b2 = -1\n")


def test_mu_report_and_machine_block():
    res = run("mu", GERMS / "a2_row02.germ", "--divisor", "V13", "--machine",
              "--term-breakdown")
    assert res.exit_code == 0, res.output
    kv = machine_block(res.output)
    values = term_values(kv)
    assert len(values) >= 4
    assert int(kv["sign"]) * sum(c * v for c, v in values) == int(kv["value"])
    assert res.output.startswith(f"mu = {kv['value']}\n")
    assert "[codim 0]" in res.output
    assert "lambda_0" in res.output


def test_chi_machine_block_re_sums():
    res = run("chi", GERMS / "a2_row01.germ", "--machine")
    assert res.exit_code == 0, res.output
    kv = machine_block(res.output)
    values = term_values(kv)
    assert len(values) == 7
    assert int(kv["sign"]) * sum(c * v for c, v in values) == int(kv["value"])


def test_output_is_deterministic():
    args = ("mu", GERMS / "a2_row02.germ", "--divisor", "V13", "--machine")
    assert run(*args).output == run(*args).output


def test_prime_field_note():
    res = run("tau", GERMS / "a2_row02.germ", "--field", "Fp:32003")
    assert res.exit_code == 0
    assert "characteristic-p result, unverified in characteristic 0" in res.output
    assert res.output.startswith("tau = 3\n")


def test_malformed_file_exits_1(tmp_path):
    bad = tmp_path / "empty.germ"
    bad.write_text("space = sym2\nsource_dim = 2\nvars = x, y\nentry 1 1 = x +\n")
    res = run("mu", bad, "--divisor", "D2sy")
    assert res.exit_code == 1
    assert re.search(r"empty\.germ:4:", res.output)


def test_bad_field_exits_1():
    res = run("tau", GERMS / "a2_row01.germ", "--field", "Fp:8")
    assert res.exit_code == 1


def test_dimension_mismatch_exits_1():
    res = run("cm-surface", GERMS / "a2_row01.germ")
    assert res.exit_code == 1
    assert "n - p = 4" in res.output


def test_non_transverse_exits_2(tmp_path):
    path = tmp_path / "nt.germ"
    path.write_text(NON_TRANSVERSE)
    res = run("mu", path, "--divisor", "D2sy")
    assert res.exit_code == 2
    assert "mu_{E2sy}" in res.output


def test_resource_cap_exits_3():
    res = run("tau", GERMS / "a1_row1.germ", "--max-degree", "2")
    assert res.exit_code == 3
    assert "--max-degree" in res.output


def test_le_greuel_command(tmp_path):
    path = tmp_path / "icis.germ"
    path.write_text(NON_TRANSVERSE.replace("y^2\n", "y^2\nicis = x^2 + y^3\n"))
    res = run("le-greuel", path)
    assert res.exit_code == 0, res.output
    assert res.output.splitlines()[0].endswith("= 2")


def test_check_catalog_green():
    res = run("check-catalog")
    assert res.exit_code == 0
    assert "Saito determinant = 6*H" in res.output
    assert "FAIL" not in res.output


def test_check_catalog_names_corruption(monkeypatch):
    bad = dict(_catalog_data.DERLOG)
    bad["E2sy"] = [["0", "a", "3*b"], bad["E2sy"][1]]
    monkeypatch.setattr(_catalog_data, "DERLOG", bad)
    catalog.get_divisor.cache_clear()
    try:
        res = run("check-catalog")
    finally:
        catalog.get_divisor.cache_clear()
    assert res.exit_code != 0
    failing = [line for line in res.output.splitlines() if "FAIL" in line]
    assert failing and all("E2sy" in line for line in failing)


@pytest.mark.parametrize("command", ["mu", "tau", "cm-surface", "cm-3fold", "chi",
                                     "higher-mult", "le-greuel", "check-catalog"])
def test_commands_have_help(command):
    assert run(command, "--help").exit_code == 0
