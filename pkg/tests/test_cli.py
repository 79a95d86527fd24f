import json
import os
import shutil
import subprocess
import sys

import pytest

from toricsig import cli

GOLDEN = os.path.join(os.path.dirname(__file__), os.pardir, "golden")


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_fsig_quadric(capsys):
    assert run(capsys, "fsig", "quadric")[:2] == (0, "2/3\n")


def test_fsig_file(capsys, tmp_path):
    p = tmp_path / "cone.json"
    p.write_text(json.dumps({"dim": 4, "generators": [[int(i == j) for j in range(4)] for i in range(4)]}))
    assert run(capsys, "fsig", "--file", str(p))[:2] == (0, "1\n")
    assert run(capsys, "fsig", str(p))[:2] == (0, "1\n")


def test_decimal_output(capsys):
    assert run(capsys, "fsig", "quadric", "--decimal", "5")[1] == "0.66667\n"
    assert run(capsys, "fsig", "ex_second", "--decimal", "0")[1] == "0\n"
    assert cli.format_value(cli.Fraction(1, 8), 2) == "0.12"
    assert cli.format_value(cli.Fraction(-3, 8), 2) == "-0.38"
    assert cli.format_value(7, 3) == 7


def test_json_output(capsys):
    code, out, _ = run(capsys, "gorenstein", "veronese2_3", "--json", "--p", "5")
    data = json.loads(out)
    assert code == 0 and data["p"] == 5
    code, out, _ = run(capsys, "classgroup", "cyclic3_2", "--json")
    assert code == 0 and json.loads(out)


def test_p_flag_does_not_change_values(capsys):
    a = run(capsys, "decompose", "quadric", "--q", "4", "--json")[1]
    b = json.loads(run(capsys, "decompose", "quadric", "--q", "4", "--json", "--p", "2")[1])
    b.pop("p")
    assert json.loads(a) == b


def test_ring_commands(capsys):
    for argv in (["type", "veronese2_3"], ["conic", "quadric"], ["conic", "quadric", "--denoms", "5,7"],
                 ["ehk", "quadric", "--q-list", "4,8"], ["mult", "quadric", "--n-list", "4,8"],
                 ["check", "quadric"], ["decompose", "veronese2_2", "--q", "3"]):
        code, out, err = run(capsys, *argv)
        assert code == 0, (argv, err)
        assert out.strip()


def test_bounds_commands(capsys):
    assert run(capsys, "bounds", "v", "--s", "3/2", "--d", "2")[1] == "7/8\n"
    assert run(capsys, "bounds", "ae", "--e", "2", "--d", "3", "--s", "3/2")[1] == "1\n"
    assert run(capsys, "bounds", "euler", "--dmax", "12")[1] == "(1,0) (3,1) (5,2)\n"
    code, out, _ = run(capsys, "bounds", "table1", "--dmax", "6")
    lines = out.splitlines()
    assert code == 0
    assert lines[1].split()[-6:] == ["2", "3/2", "4/3", "29/24", "17/15", "781/720"]
    assert lines[2].split()[-6:] == ["2", "3/2", "4/3", "5/4", "8/7", "9/8"]


def test_classify_command(capsys):
    code, out, _ = run(capsys, "classify", "--d", "3", "--n", "4", "--json")
    data = json.loads(out)
    assert code == 0 and [c["fsig"] for c in data["classes"]] == ["2/3"]


def test_input_errors(capsys):
    assert run(capsys, "fsig", "no_such_ring")[0] == 2
    assert run(capsys, "bounds", "v", "--d", "3")[0] == 2
    assert run(capsys, "bounds", "v", "--s", "x/y", "--d", "3")[0] == 2
    assert run(capsys, "nonsense")[0] == 2
    assert run(capsys, "fsig", "--file", "/nonexistent/cone.json")[0] == 2


def test_invalid_cone_file(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({"dim": 2, "generators": [[2, 0], [0, 1]]}))
    code, _, err = run(capsys, "fsig", "--file", str(p))
    assert code == 2 and "NonPrimitiveRow" in err


def test_budget_exit(capsys):
    assert run(capsys, "decompose", "quadric", "--q", "64", "--budget", "1000")[0] == 3


def test_catalog_list(capsys):
    code, out, _ = run(capsys, "catalog", "list")
    assert code == 0 and "quadric" in out.split()


def test_golden_check(capsys, tmp_path):
    assert run(capsys, "catalog", "golden-check", "--dir", GOLDEN)[0] == 0
    bad = tmp_path / "golden"
    shutil.copytree(GOLDEN, bad)
    f = bad / "quadric" / "fsig.json"
    obj = json.loads(f.read_text())
    obj["value"] = "1/2"
    f.write_text(json.dumps(obj))
    code, out, _ = run(capsys, "catalog", "golden-check", "--dir", str(bad))
    assert code == 1 and "quadric" in out


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "toricsig", "fsig", "quadric"], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout == "2/3\n"
