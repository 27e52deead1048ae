from properorient.cli import EXIT_FAILED, EXIT_INPUT, EXIT_OK, main, run_instance
from properorient.database import get_runs
from properorient.graph import parse_graph, parse_orientation, verify_proper

from .conftest import FIXTURES, fixture_path


def test_mad(capsys):
    assert main(["mad", fixture_path("k4.pog")]) == EXIT_OK
    assert capsys.readouterr().out == "mad = 3/1\nk = 2\n"


def test_hakimi_feasible(capsys):
    assert main(["hakimi", fixture_path("k4.pog")]) == EXIT_OK
    graph, _ = parse_graph((FIXTURES / "k4.pog").read_text())
    orientation = parse_orientation(capsys.readouterr().out, graph)
    assert max(orientation.outdegrees(graph.n)) <= 2


def test_hakimi_infeasible(capsys):
    assert main(["hakimi", fixture_path("k4.pog"), "--k", "1"]) == EXIT_FAILED
    assert capsys.readouterr().out == "inf 1 2 3 4\n"


def test_orient3_writes_verified_orientation(capsys, tmp_path):
    trace_file = tmp_path / "trace.txt"
    assert main(["orient3", fixture_path("k33.pog"), "--trace", str(trace_file)]) == EXIT_OK
    graph, _ = parse_graph((FIXTURES / "k33.pog").read_text())
    report = verify_proper(graph, parse_orientation(capsys.readouterr().out, graph), bound=9)
    assert report.is_proper and report.within_bound
    trace = trace_file.read_text()
    assert trace.startswith("orient3 n=6 m=9 k=2 bound=9")
    assert "ASSERT" in trace
    assert " FAIL" not in trace


def test_orient3_is_byte_identical_across_runs(capsys):
    main(["orient3", fixture_path("c5.pog")])
    first = capsys.readouterr().out
    main(["orient3", fixture_path("c5.pog")])
    assert capsys.readouterr().out == first


def test_orient3_rejects_k4(capsys):
    assert main(["orient3", fixture_path("k4.pog")]) == EXIT_INPUT


def test_verify(capsys):
    args = ["verify", fixture_path("k3.pog"), fixture_path("k3_transitive.orient"), "--bound", "2"]
    assert main(args) == EXIT_OK
    assert capsys.readouterr().out == "proper = true\nmax_outdeg = 2\nbound = 2 ok\n"


def test_verify_reports_violations(capsys):
    assert main(["verify", fixture_path("k3.pog"), fixture_path("k3_cyclic.orient")]) == EXIT_FAILED
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "proper = false"
    assert "violation 1 2 1" in lines


def test_verify_bound_exceeded(capsys):
    args = ["verify", fixture_path("k3.pog"), fixture_path("k3_transitive.orient"), "--bound", "1"]
    assert main(args) == EXIT_FAILED
    assert "bound = 1 exceeded" in capsys.readouterr().out


def test_chi(capsys):
    assert main(["chi", fixture_path("k3.pog")]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "chi_orient = 2"
    assert out.splitlines()[1] == "o pog 3 3"


def test_chi_max_k(capsys):
    assert main(["chi", fixture_path("k3.pog"), "--max-k", "1"]) == EXIT_FAILED
    assert capsys.readouterr().out == "chi_orient > 1\n"
    assert main(["chi", fixture_path("k3.pog"), "--max-k", "2"]) == EXIT_OK
    assert capsys.readouterr().out.splitlines()[0] == "chi_orient = 2"
    assert main(["chi", fixture_path("k3.pog"), "--max-k", "-1"]) == EXIT_INPUT


def test_gen_random(capsys, tmp_path):
    assert main(["gen-random", "--sizes", "8", "8", "8", "--p", "2/5", "--seed", "1"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "p pog 24 81 3"
    target = tmp_path / "g.pog"
    main(["gen-random", "--sizes", "8", "8", "8", "--p", "2/5", "--seed", "1", "-o", str(target)])
    assert target.read_text() == out


def test_gen_random_bad_probability(capsys):
    assert main(["gen-random", "--sizes", "1", "1", "1", "--p", "half", "--seed", "1"]) == EXIT_INPUT


def test_construct(capsys):
    assert main(["construct", "--k", "1", "--r", "3"]) == EXIT_OK
    assert capsys.readouterr().out.splitlines()[0] == "p pog 48 48 3"


def test_construct_check(capsys):
    assert main(["construct-check", "--k", "1", "--r", "3"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "n=48 m=48 closed-forms match" in out
    assert "check b-blocks PASS" in out


def test_construct_check_counting_only(capsys):
    assert main(["construct-check", "--k", "7", "--r", "3", "--counting-only"]) == EXIT_OK
    out = capsys.readouterr().out.splitlines()
    assert out == [
        "k=7 r=3 u=7",
        "cross_edges=147 budget=133",
        "inequality=holds",
        "hypothesis k>13/2 ok",
    ]


def test_input_errors(capsys, tmp_path):
    assert main(["mad", fixture_path("loop.pog")]) == EXIT_INPUT
    assert main(["mad", str(tmp_path / "missing.pog")]) == EXIT_INPUT
    assert main(["frobnicate"]) == EXIT_INPUT
    assert main([]) == EXIT_INPUT


def test_batch_logs_runs(capsys, db_path):
    files = [fixture_path("k3.pog"), fixture_path("star9.pog")]
    assert main(["batch", *files]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines == [
        f"{files[0]} k=1 bound=8 maxout=2 PASS",
        f"{files[1]} k=1 bound=8 maxout=8 PASS",
    ]
    runs = get_runs()
    assert [run.source for run in runs] == list(reversed(files))
    assert all(run.success for run in runs)


def test_batch_without_log(capsys, tmp_path):
    db = tmp_path / "unused.db"
    assert main(["batch", fixture_path("k3.pog"), fixture_path("k4.pog"), "--no-log", "--db", str(db)]) == EXIT_FAILED
    assert capsys.readouterr().out.splitlines()[1].endswith("FAIL")
    assert not db.exists()


def test_run_instance_never_raises():
    record = run_instance(fixture_path("loop.pog"))
    assert not record.success
    assert record.error_message.startswith("input error")
