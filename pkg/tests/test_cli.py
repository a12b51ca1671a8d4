"""Command-line front end: subcommands, file formats, exit codes."""

import numpy as np
import pytest

from aglist import cli, codec, curve as cv, oracle


def run(*argv):
    return cli.main([str(a) for a in argv])


@pytest.fixture
def herm2(tmp_path):
    path = tmp_path / "herm2.code"
    assert run("code", "new", "hermitian", 2, 4, "--out", path) == 0
    return path


@pytest.fixture
def herm3(tmp_path):
    path = tmp_path / "herm3.code"
    assert run("code", "new", "hermitian", 3, 14, "--out", path) == 0
    return path


class TestCodeNew:
    def test_descriptor_round_trips(self, herm3):
        code = cli.read_descriptor(herm3)
        assert (code.n, code.k, code.dstar) == (26, 12, 12)

    def test_rational_descriptor(self, tmp_path):
        path = tmp_path / "rs.code"
        assert run("code", "new", "rational", 16, 6, "--out", path) == 0
        code = cli.read_descriptor(path)
        assert (code.n, code.k, code.dstar) == (15, 7, 9)

    def test_invalid_degree_names_the_bound(self, tmp_path, capsys):
        assert run("code", "new", "hermitian", 3, 4) == 2
        assert "2g-1" in capsys.readouterr().err

    def test_custom_exclusions(self, tmp_path):
        path = tmp_path / "short.code"
        assert run("code", "new", "hermitian", 2, 4,
                   "--exclude", "(0,1)", "--exclude", "(1,2)",
                   "--out", path) == 0
        code = cli.read_descriptor(path)
        assert code.n == 6
        assert code.p0 == cv.Place(1, 2)

    def test_modulus_mismatch_rejected(self, herm2, capsys):
        text = herm2.read_text().replace("modulus: 7", "modulus: 11")
        herm2.write_text(text)
        assert run("encode", herm2, herm2) == 2
        assert "modulus" in capsys.readouterr().err


class TestEncodeCorrupt:
    def test_encode_matches_library(self, herm2, tmp_path):
        msg, out = tmp_path / "m.txt", tmp_path / "w.txt"
        msg.write_text("1 2 3 0\n")
        assert run("encode", herm2, msg, "--out", out) == 0
        code = cli.read_descriptor(herm2)
        assert cli.read_word(out) == codec.encode(code, [1, 2, 3, 0])

    def test_corrupt_weight_zero_identity(self, herm2, tmp_path):
        word, out = tmp_path / "w.txt", tmp_path / "c.txt"
        word.write_text("0 1 2 3 0 1 2\n")
        assert run("corrupt", herm2, word, "--weight", 0, "--seed", 1,
                   "--out", out) == 0
        assert cli.read_word(out) == cli.read_word(word)

    def test_corrupt_deterministic_under_seed(self, herm2, tmp_path):
        word = tmp_path / "w.txt"
        word.write_text("0 1 2 3 0 1 2\n")
        a, b = tmp_path / "a.txt", tmp_path / "b.txt"
        for out in (a, b):
            assert run("corrupt", herm2, word, "--weight", 3, "--seed", 9,
                       "--out", out) == 0
        assert a.read_text() == b.read_text()

    def test_corrupt_distance_is_weight(self, herm2, tmp_path):
        word, out = tmp_path / "w.txt", tmp_path / "c.txt"
        word.write_text("0 1 2 3 0 1 2\n")
        before = cli.read_word(word)
        for seed in range(100):
            assert run("corrupt", herm2, word, "--weight", 2, "--seed", seed,
                       "--out", out) == 0
            after = cli.read_word(out)
            assert sum(a != b for a, b in zip(before, after)) == 2

    def test_corrupt_needs_seed(self, herm2, tmp_path, capsys):
        word = tmp_path / "w.txt"
        word.write_text("0 1 2 3 0 1 2\n")
        assert run("corrupt", herm2, word, "--weight", 1) == 2
        assert "seed" in capsys.readouterr().err

    def test_corrupt_weight_too_large(self, herm2, tmp_path):
        word = tmp_path / "w.txt"
        word.write_text("0 1 2 3 0 1 2\n")
        assert run("corrupt", herm2, word, "--weight", 8, "--seed", 1) == 2


class TestDecode:
    def test_round_trip(self, herm3, tmp_path, capsys):
        code = cli.read_descriptor(herm3)
        msg, sent, rec = (tmp_path / n for n in ("m.txt", "s.txt", "r.txt"))
        msg.write_text(" ".join("120345678012"))
        assert run("encode", herm3, msg, "--out", sent) == 0
        assert run("corrupt", herm3, sent, "--weight", 5, "--seed", 4,
                   "--out", rec) == 0
        assert run("decode", herm3, rec, "--e", 2, "--tau", 5) == 0
        out = capsys.readouterr().out
        assert "q_found=True list=1" in out
        assert "message " + " ".join("120345678012") in out

    def test_unique_success_writes_message(self, herm3, tmp_path):
        msg, sent, rec, dec = (
            tmp_path / n for n in ("m.txt", "s.txt", "r.txt", "d.txt")
        )
        msg.write_text(" ".join("120345678012"))
        run("encode", herm3, msg, "--out", sent)
        run("corrupt", herm3, sent, "--weight", 5, "--seed", 4, "--out", rec)
        assert run("decode", herm3, rec, "--unique", "--out", dec) == 0
        assert cli.read_word(dec) == cli.read_word(msg)

    def test_unique_failure_exits_3(self, herm2, tmp_path):
        code = cli.read_descriptor(herm2)
        rng = np.random.default_rng(0)
        for _ in range(300):
            rec = [int(v) for v in rng.integers(0, 4, 7)]
            if not oracle.exhaustive_list(code, rec, 1):
                break
        else:
            pytest.fail("no empty-ball word found")
        path = tmp_path / "r.txt"
        path.write_text(" ".join(map(str, rec)))
        assert run("decode", herm2, path, "--unique") == 3

    def test_out_file_holds_codewords(self, herm2, tmp_path):
        code = cli.read_descriptor(herm2)
        rec, out = tmp_path / "r.txt", tmp_path / "list.txt"
        word = codec.encode(code, [1, 0, 2, 3])
        rec.write_text(" ".join(map(str, word)))
        assert run("decode", herm2, rec, "--e", 1, "--out", out) == 0
        lines = [[int(v) for v in ln.split()] for ln in out.read_text().splitlines()]
        assert word in lines

    def test_dump_module_matrix(self, herm2, tmp_path):
        rec, dump = tmp_path / "r.txt", tmp_path / "mx.txt"
        rec.write_text("0 1 2 3 0 1 2")
        assert run("decode", herm2, rec, "--e", 1, "--tau", 0,
                   "--backend", "module", "--dump-module", dump) == 0
        text = dump.read_text()
        assert "# built" in text and "# reduced" in text
        assert len(text.splitlines()) >= 5


class TestRadiusTable:
    def test_frozen_hermitian_rows(self, herm3, capsys):
        assert run("radius-table", herm3, "--e-list", "0,1,2") == 0
        out = capsys.readouterr().out
        rows = [ln.split(",") for ln in out.splitlines()]
        assert rows[0][:4] == ["n", "degG", "g", "p"]
        taus = {r[6]: r[8] for r in rows[1:]}
        assert taus == {"0": "4", "1": "16/3", "2": "52/9"}

    def test_infeasible_cells_skipped(self, herm3, capsys):
        assert run("radius-table", herm3, "--s-list", "1",
                   "--ell-list", "1,2", "--e-list", "0") == 0
        out = capsys.readouterr().out
        assert len(out.splitlines()) == 2  # header + ell=1 only


class TestExperiment:
    def test_csv_schema_and_frontier(self, herm3, tmp_path):
        out = tmp_path / "exp.csv"
        assert run("experiment", herm3, "--weights", "4:5",
                   "--e-list", "0,1", "--trials", 5, "--seed", 3,
                   "--out", out) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == ("s,ell,e,weight,trials,successes,"
                            "mean_list_size,mean_wall_time_s,backend")
        cells = {}
        for ln in lines[1:]:
            s, ell, e, w, trials, succ = ln.split(",")[:6]
            cells[(e, w)] = (trials, succ)
        assert cells[("0", "4")] == ("5", "5")
        assert cells[("0", "5")] == ("5", "0")  # past the e=0 radius
        assert cells[("1", "5")] == ("5", "5")  # within the e=1 radius

    def test_reproducible(self, herm2, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        for out in (a, b):
            assert run("experiment", herm2, "--weights", "1",
                       "--e-list", "1", "--trials", 10, "--seed", 42,
                       "--out", out) == 0

        def stats(path):  # everything except the wall-time column
            rows = [ln.split(",") for ln in path.read_text().splitlines()]
            return [r[:7] + r[8:] for r in rows]

        assert stats(a) == stats(b)

    def test_weight_beyond_n_is_config_error(self, herm2):
        assert run("experiment", herm2, "--weights", "8",
                   "--trials", 1, "--seed", 1) == 2


class TestOracleCheck:
    def test_agreement(self, herm2, tmp_path):
        rec = tmp_path / "r.txt"
        rec.write_text("0 1 2 3 0 1 2")
        assert run("oracle-check", herm2, rec, "--e", 1, "--tau", 1) == 0


class TestBenchmark:
    def test_emits_report(self, tmp_path):
        out = tmp_path / "bench.csv"
        assert run("benchmark", "--q0-list", "2", "--trials", 1,
                   "--seed", 1, "--out", out) == 0
        lines = out.read_text().splitlines()
        assert lines[0].startswith("q0,n,k,m,e,")
        assert len(lines) == 2 and lines[1].startswith("2,7,4,4,1,")
