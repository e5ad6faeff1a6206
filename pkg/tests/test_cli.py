import json
import subprocess
import sys

import pytest

from slopebases.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_dim_examples(capsys):
    assert run(capsys, "dim", "A2", "1,1")[:2] == (0, "2 2 OK\n")
    assert run(capsys, "dim", "A2", "0,0")[:2] == (0, "1 1 OK\n")
    assert run(capsys, "dim", "A3", "1,1,1")[:2] == (0, "4 4 OK\n")


def test_expand_examples(capsys):
    code, out, _ = run(capsys, "--json", "expand", "--elem", "phi:A2:M21", "--theta", "1,-1")
    assert code == 0 and len(json.loads(out)["monomials"]) == 2
    code, out, _ = run(capsys, "--json", "expand", "--elem", "phi:A2:M12", "--theta", "1,-1")
    assert len(json.loads(out)["monomials"]) == 1
    code, out, _ = run(capsys, "--json", "expand", "--cartan", "A2", "--elem", "zeta:1^2", "--theta", "1,-1")
    (m,) = json.loads(out)["monomials"]
    # ζ1·ζ1 = 2 · (the normalized semistable factor with value 1 on 11)
    assert m["coefficient"] == "2" and m["factors"][0]["values"] == [{"word": "11", "value": "1"}]


def test_expand_combination_and_file(capsys, tmp_path):
    code, out, _ = run(capsys, "--json", "polytope", "--elem", "phi:A2:M12", "--elem=-1*phi:A2:M21")
    assert code == 0 and len(json.loads(out)["vertices"]) == 4
    code, out, _ = run(capsys, "--json", "phi", "A2", "M12")
    path = tmp_path / "f.json"
    path.write_text(out)
    code, out2, _ = run(capsys, "--json", "expand", "--elem", f"file:{path}", "--theta", "1,-1")
    assert code == 0 and len(json.loads(out2)["monomials"]) == 1


def test_verify_examples(capsys):
    assert run(capsys, "verify", "factorization", "--cartan", "A2", "--h", "6", "--theta", "1,-1")[0] == 0
    assert run(capsys, "verify", "politeness", "--cartan", "A2", "--h", "4")[0] == 0
    code, out, _ = run(capsys, "verify", "a4-remark")
    assert code == 0
    assert "(0, 0, 4, 0)" in out and "(2, 1, 5, 1)" in out and "(0, 4, 0, 0)" in out and "(1, 5, 1, 2)" in out


def test_other_subcommands(capsys):
    assert run(capsys, "roots", "A2", "--theta", "1,-1")[1].count("root=") == 3
    assert run(capsys, "hom", "A2", "M12", "M21")[1] == "hom 1\next1 0\n"
    assert run(capsys, "semistable", "A2", "1,1", "--theta", "1,-1")[1].startswith("dim 1")
    assert "M12" in run(capsys, "basis", "A2", "1,1")[1]
    code, out, _ = run(capsys, "--json", "crystal", "A2", "--h", "2")
    assert code == 0 and len(json.loads(out)["nodes"]) == 1 + 2 + 4


def test_module_file(capsys, tmp_path):
    path = tmp_path / "n.txt"
    path.write_text("1 3\n 2\n")
    assert run(capsys, "hom", "A4", f"file:{path}", f"file:{path}")[1].startswith("hom 1")


def test_exit_codes(capsys):
    assert run(capsys, "dim", "A9", "1")[0] == 2
    assert run(capsys, "dim", "A2", "1,1,1")[0] == 2
    assert run(capsys, "verify", "nonsense")[0] == 2
    assert run(capsys, "verify", "politeness", "--cartan", "A3", "--h", "9")[0] == 2
    assert run(capsys, "expand", "--elem", "zeta:1", "--theta", "1,-1")[0] == 2
    assert run(capsys, "phi", "A2", "nope")[0] == 2


def test_json_output_is_deterministic(capsys):
    a = run(capsys, "--json", "verify", "perfect", "--cartan", "A2", "--h", "3")[1]
    b = run(capsys, "--json", "verify", "perfect", "--cartan", "A2", "--h", "3")[1]
    assert a == b and json.loads(a)["pass"]


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "slopebases.cli", "dim", "A2", "1,1"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "2 2 OK\n"
