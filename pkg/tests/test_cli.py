import json
import subprocess
import sys

import pytest

from fhtkit import cli
from fhtkit.affine_weyl import FoldGuardError
from fhtkit.characters import FormalCharacter
from fhtkit.verlinde import FusionElement


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


def test_info(capsys):
    doc = run_json(capsys, "info", "--type", "A2")
    assert doc["result"]["h_dual"] == 3
    assert set(doc["meta"]) >= {"tool_version", "lie_type", "level", "seed"}
    assert run_json(capsys, "info", "--type", "G2")["result"]["h_dual"] == 4


@pytest.mark.parametrize("argv", [
    ["info", "--type", "X3"],
    ["info", "--type", "E5"],
    ["fold", "--type", "A1", "--level", "3", "1,2"],
    ["fusion", "--type", "A1", "--k", "1", "2", "0"],
    ["verify", "--suite", "nonsense"],
    ["no-such-command"],
    ["info", "--format", "xml"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == "" and "error" in err


def test_fold(capsys):
    r = run_json(capsys, "fold", "--type", "A1", "--level", "3", "3")["result"]
    assert r["sign"] == -1 and r["weight"] == [1]
    assert run_json(capsys, "fold", "--type", "A1", "--level", "3", "2")["result"]["kind"] == "boundary"
    r = run_json(capsys, "fold", "--type", "A1", "--level", "3", "0")["result"]
    assert (r["sign"], r["weight"]) == (1, [0])


def test_fusion_and_table(capsys):
    r = run_json(capsys, "fusion", "--type", "A1", "--k", "1", "1", "1")["result"]
    assert r["product"] == [[[0], 1]]
    table = run_json(capsys, "fusion-table", "--type", "A2", "--k", "2", "--oracle", "smatrix")["result"]
    assert table["oracle"]["agrees"]
    row0 = [e for e in table["table"] if e["lambda"] == [0, 0]]
    assert len(row0) == len(table["weights"])
    assert all(e["product"] == [[e["mu"], 1]] for e in row0)


def test_oracle_disagreement_exit_3(capsys, monkeypatch):
    monkeypatch.setattr(cli, "verlinde_table", lambda rs, k: (
        {(a, b): FusionElement(k) for a in [(0,), (1,)] for b in [(0,), (1,)]}, 0.0))
    code, _, err = run(capsys, "fusion", "--type", "A1", "--k", "1", "1", "1", "--oracle", "smatrix")
    assert code == 3 and "disagree" in err
    code, _, _ = run(capsys, "fusion-table", "--type", "A1", "--k", "1", "--oracle", "smatrix")
    assert code == 3


def test_internal_failure_exit_4(capsys, monkeypatch):
    def boom(*a, **kw):
        raise FoldGuardError("cap exceeded")

    monkeypatch.setattr(cli, "affine_fold", boom)
    code, _, err = run(capsys, "fold", "--type", "A1", "--level", "3", "3")
    assert code == 4 and "invariant" in err


def test_fht_image_round_trips_through_character_json(capsys):
    r = run_json(capsys, "fht-image", "--type", "A1", "--k", "1", "--window", "8", "0")["result"]
    fc = FormalCharacter.from_json(r["character"])
    assert fc.support == {(0,): 1, (-2,): -1, (4,): -1, (6,): 1, (-6,): 1, (-8,): -1}


def test_s_matrix_and_group_law(capsys):
    r = run_json(capsys, "s-matrix", "--type", "A1", "--k", "2")["result"]
    assert r["symmetric"] and r["unitary"] and len(r["entries_re_im"]) == 3
    r = run_json(capsys, "group-law", "--type", "A2", "0,0;0,1", "0,0;1,0")["result"]
    assert r["psi_homomorphism_holds"] and r["sigma"] == -1


def test_algebra(capsys):
    r = run_json(capsys, "algebra", "--type", "A1", "--level", "3", "--window", "1", "--term", "1;0;2")["result"]
    assert len(r["blocks"]) == 6
    assert sum(v for b in r["blocks"] for row in b["matrix"] for v in row) == 2
    code, _, err = run(capsys, "algebra", "--type", "A1", "--level", "3", "--window", "1", "--term", "5;0")
    assert code == 2 and "window" in err


def test_verify_reports_oracle_equivalence(capsys):
    doc = run_json(capsys, "verify", "--suite", "verlinde", "--type", "A1", "--k", "6")
    checks = doc["result"]["suites"]["verlinde"]["A1:k=6"]
    assert checks["oracle_equivalence"] == {"passed": 49, "failed": 0}
    assert doc["result"]["all_passed"]


def test_config_file_and_flag_precedence(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# experiment\ntype = A2\nk = 2\nformat = json\n".replace("format", "output"))
    doc = run_json(capsys, "fusion-table", "--config", str(cfg))
    assert doc["meta"]["lie_type"] == "A2" and doc["meta"]["level"] == 2
    doc = run_json(capsys, "fusion-table", "--config", str(cfg), "--k", "1")
    assert doc["meta"]["level"] == 1 and len(doc["result"]["weights"]) == 3
    cfg.write_text("colour = blue\n")
    assert run(capsys, "info", "--config", str(cfg))[0] == 2


def test_output_formats(capsys):
    code, out, _ = run(capsys, "fusion", "--type", "A1", "--k", "2", "1", "1", "--format", "csv")
    assert code == 0 and out.splitlines() == ["nu,multiplicity", "[0],1", "[2],1"]
    code, out, _ = run(capsys, "fusion", "--type", "A1", "--k", "2", "1", "1", "--format", "pretty")
    assert out.strip() == "1*[0] + 1*[2]"


def test_identical_invocations_identical_bytes(capsys):
    a = run(capsys, "fht-image", "--type", "A2", "--k", "2", "--window", "6", "1,0")[1]
    b = run(capsys, "fht-image", "--type", "A2", "--k", "2", "--window", "6", "1,0")[1]
    assert a == b


def test_jobs_do_not_change_output(capsys):
    one = run(capsys, "fusion-table", "--type", "A2", "--k", "3", "--jobs", "1")[1]
    four = run(capsys, "fusion-table", "--type", "A2", "--k", "3", "--jobs", "4")[1]
    assert one == four


def test_cache_dir_flag(capsys, tmp_path):
    run_json(capsys, "fusion", "--type", "A2", "--k", "2", "1,1", "1,1", "--cache-dir", str(tmp_path))
    assert list(tmp_path.rglob("*.json"))


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "fhtkit.cli", "info", "--type", "A1", "--format", "pretty"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "h_dual: 2" in proc.stdout
