import json
import subprocess
import sys
from fractions import Fraction

import pytest

from codedisc import cli
from codedisc.identities import verify
from codedisc.kernels import lambda_eval
from codedisc.lp_bounds import DualCertificate


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    assert code == 0, err
    return json.loads(out)


def test_disc_golay(capsys):
    code, out, _ = run(capsys, "disc", "--code", "golay23")
    assert code == 0
    assert "D = 409732557/1048576 (390.751)" in out


def test_disc_hamming_four(capsys):
    rec = run_json(capsys, "disc", "--code", "hamming:4", "--digits", "4")
    assert rec["discrepancy"] == "6435/4096" and rec["decimal"] == "1.571"
    assert rec["n"] == 15 and rec["N"] == 2048


def test_disc_full_cube_file(tmp_path, capsys):
    f = tmp_path / "cube3.txt"
    f.write_text("\n".join(format(i, "03b") for i in range(8)) + "\n")
    rec = run_json(capsys, "disc", "--file", str(f), "--brute")
    assert rec["discrepancy"] == "0" and rec["oracle_agrees"] is True
    assert rec["dual_distribution"] == ["1", "0", "0", "0"]


def test_disc_generator_file(tmp_path, capsys):
    f = tmp_path / "gen.txt"
    f.write_text("1110000\n0011100\n0000111\n")
    rec = run_json(capsys, "disc", "--file", str(f), "--generator")
    assert rec["discrepancy"] == "123/32"


def test_disc_csv(capsys):
    code, out, _ = run(capsys, "disc", "--code", "hamming:3", "--format", "csv")
    lines = out.strip().splitlines()
    assert lines[0] == "w,A,A_dual" and lines[4] == "3,7,0" and len(lines) == 9


def test_disc_errors(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("000\n01\n")
    code, _, err = run(capsys, "disc", "--file", str(bad))
    assert code == cli.EXIT_VALIDATION and "line 2" in err
    assert run(capsys, "disc")[0] == cli.EXIT_VALIDATION
    assert run(capsys, "disc", "--code", "nosuch:1")[0] == cli.EXIT_VALIDATION
    assert run(capsys, "disc", "--file", str(tmp_path / "missing.txt"))[0] == cli.EXIT_VALIDATION


def test_disc_resource_limit(capsys):
    code, _, err = run(capsys, "disc", "--code", "hamming:3", "--brute", "--oracle-limit", "4")
    assert code == cli.EXIT_RESOURCE and "resource limit" in err


def test_bound_lp(capsys):
    rec = run_json(capsys, "bound", "--lp", "7", "16")
    assert rec["lp"]["discrepancy"] == "35/32"
    assert rec["lp"]["distribution"] == ["1", "0", "0", "7", "7", "0", "0", "1"]


def test_bound_constant(capsys):
    rec = run_json(capsys, "bound", "--constant", "5", "2")
    assert rec["constant"]["energy"] == str(lambda_eval(5, 5))


def test_bound_emit_certificate(tmp_path, capsys):
    path = tmp_path / "cert.json"
    code, out, _ = run(capsys, "bound", "--hamming-type", "7", "16", "--emit-cert", str(path))
    assert code == 0 and "feasible: True" in out
    cert = DualCertificate.from_json(path.read_text())
    assert cert.feasible and cert.discrepancy_bound() == Fraction(35, 32)
    assert json.loads(path.read_text())["h"][4] == "0"


def test_bound_errors(capsys):
    assert run(capsys, "bound", "--two-term", "8", "4")[0] == cli.EXIT_VALIDATION
    assert run(capsys, "bound", "3", "9")[0] == cli.EXIT_VALIDATION
    assert run(capsys, "bound", "--lp", "--constant", "5", "2", "--emit-cert", "x.json")[0] == cli.EXIT_VALIDATION


def test_bound_all_families(capsys):
    rec = run_json(capsys, "bound", "7", "8", "--lp", "--constant", "--two-term", "--hamming-type")
    assert rec["two_term"]["energy"] == "720"
    assert rec["lp"]["discrepancy"] == "123/32"


def test_table(capsys):
    code, out, _ = run(capsys, "table", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "row,m,printed,computed,exact,verdict"
    assert any(line.startswith("hamming_D,4,1.571,1.571,") for line in lines)
    assert any(line.startswith("hamming_ED,4,17.336,17.336,") for line in lines)
    assert any(line.startswith("hamming_D,7,4.50471,4.50471,") for line in lines)
    assert any(line.startswith("hadamard_D_scaled,10,0.008,") for line in lines)


def test_verify(capsys):
    rec = run_json(capsys, "verify", "12")
    assert rec["passed"] is True and rec["failures"] == []
    assert run(capsys, "verify", "1")[0] == 0


def test_verify_failure_exit(monkeypatch, capsys):
    mutant = lambda n: (lambda w: lambda_eval(n, w) + (w >= 2))  # noqa: E731
    monkeypatch.setattr(cli, "verify", lambda n_max: verify(n_max, lam_factory=mutant))
    code, out, _ = run(capsys, "verify", "4")
    assert code == cli.EXIT_IDENTITY
    assert "[FAIL] closed(n=2)" in out


def test_random(capsys):
    rec = run_json(capsys, "random", "8", "16", "--trials", "200", "--seed", "3")
    assert rec["mean_within_3se"] is True and rec["variance_below_bound"] is True
    again = run_json(capsys, "random", "8", "16", "--trials", "200", "--seed", "3")
    assert rec == again


def test_random_threads_deterministic(capsys):
    a = run(capsys, "random", "6", "8", "--trials", "300", "--threads", "2", "--format", "csv")[1]
    b = run(capsys, "random", "6", "8", "--trials", "300", "--threads", "1", "--format", "csv")[1]
    assert a == b and len(a.splitlines()) == 301


def test_random_single_trial(capsys):
    rec = run_json(capsys, "random", "5", "4", "--trials", "1")
    assert rec["value"] == rec["mean"]


def test_space_cycle_antipodal(capsys):
    rec = run_json(capsys, "space", "cycle:6", "--subset", "0,3")
    assert rec["discrepancy"] == rec["definition"] == rec["scheme"] == "2/3"
    assert rec["agree"] is True


def test_space_hamming_matches_disc(tmp_path, capsys):
    from codedisc.codes import hamming_code
    from codedisc.metric_space import hamming_space

    f = tmp_path / "h7.txt"
    f.write_text(hamming_space(7).to_text())
    subset = ",".join(str(int(w)) for w in hamming_code(3).words)
    rec = run_json(capsys, "space", str(f), "--subset", subset)
    assert rec["discrepancy"] == run_json(capsys, "disc", "--code", "hamming:3")["discrepancy"]


def test_space_weights(tmp_path, capsys):
    w = tmp_path / "w.txt"
    w.write_text("1 1 1 1\n")
    rec = run_json(capsys, "space", "cycle:6", "--subset", "0,3", "--weights", str(w))
    assert rec["weighted"] == "2/3" and rec["weighted_orientation"] == "space-minus-subset"


def test_space_path_rejected(tmp_path, capsys):
    f = tmp_path / "path.txt"
    f.write_text("3 2\n0 1 2\n1 0 1\n2 1 0\n")
    code, _, err = run(capsys, "space", str(f), "--subset", "0")
    assert code == cli.EXIT_VALIDATION
    assert "witness: (0, 1, 1)" in err


def test_space_bad_inputs(capsys):
    assert run(capsys, "space", "torus:3", "--subset", "0")[0] == cli.EXIT_VALIDATION
    assert run(capsys, "space", "cycle:6", "--subset", "a")[0] == cli.EXIT_VALIDATION
    assert run(capsys, "space", "cycle:6", "--subset", "9")[0] == cli.EXIT_VALIDATION


def test_argparse_rejects_bad_digits():
    with pytest.raises(SystemExit):
        cli.main(["disc", "--code", "hamming:3", "--digits", "0"])


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "codedisc", "disc", "--code", "hamming:3"], capture_output=True, text=True
    )
    assert proc.returncode == 0 and "35/32" in proc.stdout
