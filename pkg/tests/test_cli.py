import pytest

from tsol import cli
from tsol.core import format_tournament, parse_tournament, random_tournament
from tsol.verification import SweepReport


@pytest.fixture
def fig1_file(data_dir):
    return str(data_dir / "fig1.txt")


@pytest.fixture
def fig_cnf_file(data_dir):
    return str(data_dir / "fig.cnf")


def run(capsys, argv):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestSolve:
    def test_teq_exact(self, capsys, fig1_file):
        code, out, _ = run(capsys, ["solve", "--input", fig1_file, "--method", "teq-exact"])
        assert (code, out) == (0, "a b c\n")

    def test_banks(self, capsys, fig1_file):
        code, out, _ = run(capsys, ["solve", "--input", fig1_file, "--method", "banks"])
        assert (code, out) == (0, "a b c d\n")

    def test_heuristic(self, capsys, fig1_file):
        code, out, _ = run(capsys, ["solve", "--input", fig1_file, "--method", "teq-heuristic"])
        assert (code, out) == (0, "a b c\n")

    def test_topcycle(self, capsys, fig1_file):
        code, out, _ = run(capsys, ["solve", "--input", fig1_file, "--method", "topcycle"])
        assert (code, out) == (0, "a b c d e\n")

    def test_banks_member_false(self, capsys, fig1_file):
        code, out, _ = run(
            capsys,
            ["solve", "--input", fig1_file, "--method", "banks", "--member", "e"],
        )
        assert (code, out) == (0, "false\n")

    def test_banks_member_witness(self, capsys, fig1_file):
        code, out, _ = run(
            capsys,
            ["solve", "--input", fig1_file, "--method", "banks", "--member", "d"],
        )
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "true"
        assert lines[1].startswith("chain: d > ")

    def test_teq_member_path(self, capsys, fig1_file):
        code, out, _ = run(
            capsys,
            ["solve", "--input", fig1_file, "--method", "teq-exact", "--member", "a"],
        )
        lines = out.splitlines()
        assert code == 0
        assert lines[0] == "true"
        assert lines[1].startswith("path: a => ")
        assert lines[1].endswith("=> a")

    def test_unknown_member_name(self, capsys, fig1_file):
        code, _, err = run(
            capsys,
            ["solve", "--input", fig1_file, "--method", "banks", "--member", "zz"],
        )
        assert code == 2
        assert "zz" in err

    def test_trace(self, capsys, fig1_file):
        code, out, _ = run(
            capsys, ["solve", "--input", fig1_file, "--method", "teq-exact", "--trace", "1"]
        )
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "a b c"
        assert lines[1] == "TEQ{a b c d e} = {a b c}"
        assert len(lines) == 7

    def test_parse_error_names_line(self, capsys, tmp_path):
        bad = tmp_path / "bad.txt"
        bad.write_text("tournament 2\na b\n-1\nx-\n")
        code, _, err = run(capsys, ["solve", "--input", str(bad)])
        assert code == 2
        assert "line 4" in err

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run(capsys, ["solve", "--input", str(tmp_path / "nope.txt")])
        assert code == 2

    def test_time_budget_exceeded(self, capsys, tmp_path):
        # 80 alternatives always run on the pure kernel, far over this budget
        big = tmp_path / "big.txt"
        big.write_text(format_tournament(random_tournament(80, 1)))
        code, out, _ = run(
            capsys,
            ["solve", "--input", str(big), "--method", "teq-exact", "--time-budget-ms", "80"],
        )
        assert code == 3
        assert out.startswith("timeout method=teq-exact")

    def test_time_budget_met(self, capsys, fig1_file):
        code, out, _ = run(
            capsys,
            ["solve", "--input", fig1_file, "--method", "banks", "--time-budget-ms", "60000"],
        )
        assert (code, out) == (0, "a b c d\n")


class TestReduce:
    def test_banks_target(self, capsys, tmp_path, fig_cnf_file):
        out_file = tmp_path / "g.trn"
        code, _, _ = run(
            capsys,
            [
                "reduce",
                "--input",
                fig_cnf_file,
                "--target",
                "banks",
                "--output",
                str(out_file),
            ],
        )
        assert code == 0
        t = parse_tournament(out_file.read_text())
        assert t.n == 17

    def test_teq_target_stdout(self, capsys, fig_cnf_file):
        code, out, _ = run(capsys, ["reduce", "--input", fig_cnf_file, "--target", "teq"])
        assert code == 0
        assert parse_tournament(out).n == 29

    def test_deterministic_bytes(self, capsys, tmp_path, fig_cnf_file):
        outputs = []
        for name in ("a.trn", "b.trn"):
            path = tmp_path / name
            run(
                capsys,
                ["reduce", "--input", fig_cnf_file, "--target", "teq", "--output", str(path)],
            )
            outputs.append(path.read_bytes())
        assert outputs[0] == outputs[1]

    def test_labels_and_dot(self, capsys, tmp_path, fig_cnf_file):
        labels = tmp_path / "labels.tsv"
        dot = tmp_path / "g.dot"
        code, _, _ = run(
            capsys,
            [
                "reduce",
                "--input",
                fig_cnf_file,
                "--target",
                "banks",
                "--output",
                str(tmp_path / "g.trn"),
                "--labels",
                str(labels),
                "--dot",
                str(dot),
            ],
        )
        assert code == 0
        assert labels.read_text().splitlines()[0] == "d\tdecision"
        assert "cluster_level_1" in dot.read_text()

    def test_invalid_clause_exit_2(self, capsys, tmp_path):
        bad = tmp_path / "bad.cnf"
        bad.write_text("p cnf 2 1\n1 -1 2 0\n")
        code, _, err = run(capsys, ["reduce", "--input", str(bad), "--target", "banks"])
        assert code == 2
        assert "clause 1" in err

    def test_reduced_file_round_trips_through_solve(self, capsys, tmp_path, fig_cnf_file):
        out_file = tmp_path / "g.trn"
        run(
            capsys,
            ["reduce", "--input", fig_cnf_file, "--target", "banks", "--output", str(out_file)],
        )
        code, out, _ = run(
            capsys,
            ["solve", "--input", str(out_file), "--method", "banks", "--member", "d"],
        )
        assert code == 0
        assert out.splitlines()[0] == "true"


class TestVerify:
    def test_banks_agree(self, capsys, fig_cnf_file):
        code, out, _ = run(capsys, ["verify", "--input", fig_cnf_file, "--target", "banks"])
        assert code == 0
        assert out == "SAT=true MEMBER=true VERDICT=AGREE\n"

    def test_teq_single_clause(self, capsys, tmp_path):
        f = tmp_path / "one.cnf"
        f.write_text("p cnf 3 1\n1 2 3 0\n")
        code, out, _ = run(capsys, ["verify", "--input", str(f), "--target", "teq"])
        assert code == 0
        assert out == "SAT=true MEMBER=true VERDICT=AGREE\n"

    def test_teq_fig_unverified(self, capsys, fig_cnf_file):
        code, out, err = run(capsys, ["verify", "--input", fig_cnf_file, "--target", "teq"])
        assert code == 0
        assert out == "SAT=true MEMBER=true VERDICT=UNVERIFIED\n"
        assert "unverified" in err

    def test_disagree_exit_code(self, capsys, fig_cnf_file, monkeypatch):
        from tsol.verification import ReductionVerdict

        monkeypatch.setattr(
            cli,
            "verify_banks_reduction",
            lambda f: ReductionVerdict(True, False, "DISAGREE", None, True),
        )
        code, out, _ = run(capsys, ["verify", "--input", fig_cnf_file, "--target", "banks"])
        assert code == 1
        assert out == "SAT=true MEMBER=false VERDICT=DISAGREE\n"


class TestSweepCommand:
    def test_n3_exhaustive(self, capsys):
        code, out, err = run(capsys, ["sweep", "--n", "3", "--exhaustive"])
        assert code == 0
        assert "8 instances, 0 failures" in out
        assert "duration:" in err

    def test_n1(self, capsys):
        code, out, _ = run(capsys, ["sweep", "--n", "1"])
        assert code == 0
        assert "1 instances, 0 failures" in out

    def test_worker_invariance(self, capsys, tmp_path):
        texts = []
        for workers in ("1", "2"):
            path = tmp_path / f"report{workers}.txt"
            code, _, _ = run(
                capsys,
                ["sweep", "--n", "4", "--workers", workers, "--output", str(path)],
            )
            assert code == 0
            texts.append(path.read_text())
        assert texts[0] == texts[1]

    def test_random_mode(self, capsys):
        code, out, _ = run(
            capsys, ["sweep", "--n", "9", "--random", "--samples", "5", "--seed", "3"]
        )
        assert code == 0
        assert "5 instances, 0 failures" in out

    def test_cap_exit_2(self, capsys):
        code, _, err = run(capsys, ["sweep", "--n", "9"])
        assert code == 2
        assert "capped" in err

    def test_failure_exit_1(self, capsys, monkeypatch):
        fake = SweepReport(
            ns=(3,),
            mode="exhaustive",
            checks=("nonempty",),
            seed=0,
            samples=0,
            workers=1,
            instances=8,
            passes={"nonempty": 7},
            failures={"nonempty": 1},
            counterexamples=("nonempty n=3 bits=5",),
            duration_s=0.0,
        )
        monkeypatch.setattr(cli, "sweep", lambda *a, **k: fake)
        code, out, _ = run(capsys, ["sweep", "--n", "3"])
        assert code == 1
        assert "FAIL nonempty n=3 bits=5" in out


class TestBench:
    def test_table_shape(self, capsys):
        code, out, _ = run(
            capsys, ["bench", "--sizes", "5,6", "--samples", "2", "--seed", "1"]
        )
        assert code == 0
        lines = out.splitlines()
        assert lines[0].split() == [
            "size",
            "method",
            "backend",
            "mean_ms",
            "median_ms",
            "mean_calls",
            "median_calls",
        ]
        assert len(lines) == 1 + 2 * 2  # sizes x methods
        assert any("teq-heuristic" in l for l in lines)

    def test_range_parsing(self, capsys):
        code, out, _ = run(capsys, ["bench", "--sizes", "4..5", "--samples", "1"])
        assert code == 0
        assert len(out.splitlines()) == 1 + 2 * 2

    def test_python_backend_requestable(self, capsys):
        code, out, _ = run(
            capsys,
            ["bench", "--sizes", "5", "--samples", "1", "--backends", "python"],
        )
        assert code == 0
        assert "python" in out

    def test_unknown_backend(self, capsys):
        code, _, err = run(
            capsys, ["bench", "--sizes", "5", "--samples", "1", "--backends", "rust"]
        )
        assert code == 2
