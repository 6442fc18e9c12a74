import json
import os

import pytest

from sumrep.cli import main


@pytest.fixture
def range50(tmp_path):
    path = tmp_path / "range50.txt"
    path.write_text("# 0..50\n" + "".join(f"{i}\n" for i in range(51)))
    return str(path)


@pytest.fixture
def sidon(tmp_path):
    path = tmp_path / "sidon.txt"
    path.write_text("0\n1\n3\n7\n")
    return str(path)


@pytest.fixture
def s123(tmp_path):
    path = tmp_path / "s123.txt"
    path.write_text("1\n2\n3\n")
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestRep:
    def test_single_n(self, capsys, s123):
        code, out, _ = run(capsys, "rep", "--h", "2", "--n", "4", "--set", s123)
        assert code == 0
        assert out.strip() == "r=2"

    def test_table_csv(self, capsys, s123):
        code, out, _ = run(capsys, "rep", "--h", "2", "--window", "2:6",
                           "--set", s123, "--format", "csv")
        assert code == 0
        assert "n,count" in out
        assert "4,2" in out

    def test_requires_exactly_one_target(self, capsys, s123):
        code, _, err = run(capsys, "rep", "--h", "2", "--set", s123)
        assert code == 2
        assert "exactly one" in err

    def test_bad_window(self, capsys, s123):
        code, _, err = run(capsys, "rep", "--h", "2", "--window", "oops",
                           "--set", s123)
        assert code == 2


class TestBhs:
    def test_sidon_true(self, capsys, sidon):
        code, out, _ = run(capsys, "bhs", "--h", "2", "--s", "1", "--set", sidon)
        assert code == 0
        assert out.strip() == "B_{2,1}: true"

    def test_violation_exit_one(self, capsys, tmp_path):
        path = tmp_path / "x.txt"
        path.write_text("0\n1\n3\n4\n")
        code, out, _ = run(capsys, "bhs", "--h", "2", "--s", "1", "--set", str(path))
        assert code == 1
        assert "false" in out
        assert "r(4) = 2" in out


class TestTheorem:
    def test_t1_text(self, capsys, range50):
        code, out, _ = run(capsys, "theorem", "--id", "T1", "--h", "2",
                           "--mode", "prefix:50", "--set", range50)
        assert code == 0
        assert "PASS" in out
        assert "n0=2 k0=1 w0=1" in out

    def test_t1_json_deterministic_without_meta(self, capsys, range50):
        args = ("theorem", "--id", "T1", "--h", "2", "--mode", "prefix:50",
                "--set", range50, "--format", "json", "--no-meta")
        code1, out1, _ = run(capsys, *args)
        code2, out2, _ = run(capsys, *args)
        assert code1 == code2 == 0
        assert out1 == out2
        doc = json.loads(out1)
        assert doc["verdict"] == "pass"
        assert "meta" not in doc

    def test_meta_present_by_default(self, capsys, range50):
        code, out, _ = run(capsys, "theorem", "--id", "T1", "--h", "2",
                           "--mode", "prefix:50", "--set", range50,
                           "--format", "json")
        assert code == 0
        assert "timestamp" in json.loads(out)["meta"]

    def test_fail_exit_one(self, capsys, sidon):
        code, out, _ = run(capsys, "theorem", "--id", "T1", "--h", "2",
                           "--set", sidon)
        assert code == 1
        assert "FAIL" in out

    def test_csv_export(self, capsys, range50):
        code, out, _ = run(capsys, "theorem", "--id", "T1", "--h", "2",
                           "--mode", "prefix:50", "--set", range50,
                           "--format", "csv")
        assert code == 0
        assert out.splitlines()[0] == "x,Ax,bound"


class TestPremise:
    def test_find_threshold(self, capsys, range50):
        code, out, _ = run(capsys, "premise", "--h", "2", "--ell", "3",
                           "--mode", "prefix:50", "--set", range50)
        assert code == 0
        assert "[4, 50]" in out and "holds" in out

    def test_explicit_threshold_failure(self, capsys, sidon):
        code, out, _ = run(capsys, "premise", "--h", "2", "--ell", "2",
                           "--n0", "0", "--set", sidon)
        assert code == 1
        assert "fails" in out

    def test_no_threshold_exists(self, capsys, sidon):
        code, out, _ = run(capsys, "premise", "--h", "2", "--ell", "2",
                           "--set", sidon)
        assert code == 1
        assert "no threshold" in out


class TestOtherCommands:
    def test_sumset(self, capsys, s123):
        code, out, _ = run(capsys, "sumset", "--h", "3", "--set", s123)
        assert code == 0
        assert out.split() == ["3", "4", "5", "6", "7", "8", "9"]

    def test_blocks(self, capsys, s123):
        code, out, _ = run(capsys, "blocks", "--h", "2", "--set", s123)
        assert code == 0
        assert out.splitlines()[0] == "k=1 [1,2): 1"

    def test_construct_density_pipeline(self, capsys, tmp_path):
        log_path = str(tmp_path / "log.json")
        code, out, _ = run(capsys, "construct", "--ell", "2", "--T", "300",
                           "--log-out", log_path)
        assert code == 0
        assert "certified: yes" in out
        code, out, _ = run(capsys, "density", "--log", log_path,
                           "--format", "csv")
        assert code == 0
        assert out.splitlines()[0] == "x,Ax,lower_bound,log_sq_ref"

    def test_selftest(self, capsys):
        code, out, _ = run(capsys, "selftest", "--trials", "4", "--seed", "7")
        assert code == 0
        assert "all checks passed" in out

    def test_out_file(self, capsys, s123, tmp_path):
        target = tmp_path / "out.txt"
        code, _, _ = run(capsys, "rep", "--h", "2", "--n", "4", "--set", s123,
                         "--out", str(target))
        assert code == 0
        assert target.read_text().strip() == "r=2"


class TestErrors:
    def test_malformed_set_file_line_number(self, capsys, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("3\nx9\n")
        code, _, err = run(capsys, "rep", "--h", "2", "--n", "4", "--set", str(path))
        assert code == 2
        assert "line 2" in err

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "rep", "--h", "2", "--n", "4",
                           "--set", "/nonexistent/none.txt")
        assert code == 2

    def test_unknown_command(self, capsys):
        assert run(capsys, "nope")[0] == 2

    def test_overflow_named(self, capsys, tmp_path):
        path = tmp_path / "huge.txt"
        path.write_text(f"{2**63}\n")
        code, _, err = run(capsys, "sumset", "--h", "3", "--set", str(path))
        assert code == 2
        assert "sumset" in err and "64-bit" in err

    def test_bad_mode(self, capsys, s123):
        code, _, err = run(capsys, "bhs", "--h", "2", "--s", "1",
                           "--set", s123, "--mode", "partial:3")
        assert code == 2

    def test_env_thread_cap(self, capsys, s123, monkeypatch):
        monkeypatch.setenv("SUMREP_THREADS", "2")
        code, out, _ = run(capsys, "rep", "--h", "2", "--window", "0:6",
                           "--set", s123, "--format", "csv")
        assert code == 0
        monkeypatch.setenv("SUMREP_THREADS", "zero")
        code, _, err = run(capsys, "rep", "--h", "2", "--window", "0:6",
                           "--set", s123)
        assert code == 2
