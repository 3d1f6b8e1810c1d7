from __future__ import annotations

from pathlib import Path

import pytest

from cfpq import fixpoint_relations, gen_ablist, oracle_eval, parse_grammar, sym
from cfpq.cli import main

GRAMMAR = "S -> a S b\nS ->\n"
GRAPH = "1\ta\t2\n1\ta\t3\n2\tb\t3\n3\ta\t1\n3\tb\t4\n"
QUERY = "1\tS\n3\tS\n"
RESULTS = "1\tS\t1\n1\tS\t3\n1\tS\t4\n3\tS\t3\n3\tS\t4\n"


@pytest.fixture
def workdir(tmp_path: Path) -> Path:
    (tmp_path / "g.cfg").write_text(GRAMMAR)
    (tmp_path / "d.tsv").write_text(GRAPH)
    (tmp_path / "q.tsv").write_text(QUERY)
    return tmp_path


def _stderr_stats(capsys) -> dict[str, str]:
    err = capsys.readouterr().err
    return dict(line.split("=", 1) for line in err.splitlines() if "=" in line)


def test_eval_writes_sorted_results_file(workdir, capsys):
    out = workdir / "results.tsv"
    code = main(
        [
            "eval",
            "--grammar", str(workdir / "g.cfg"),
            "--graph", str(workdir / "d.tsv"),
            "--query", str(workdir / "q.tsv"),
            "--out", str(out),
        ]
    )
    assert code == 0
    assert out.read_text() == RESULTS
    stats = _stderr_stats(capsys)
    assert stats["results"] == "5"
    assert stats["items_created"] == "6"
    assert stats["edges_added"] == "6"
    assert "elapsed_ms" in stats


def test_eval_defaults_to_stdout(workdir, capsys):
    code = main(
        ["eval", "--grammar", str(workdir / "g.cfg"), "--graph", str(workdir / "d.tsv"),
         "--query", str(workdir / "q.tsv")]
    )
    assert code == 0
    assert capsys.readouterr().out == RESULTS


def test_eval_all_vertices_by_default(workdir, capsys):
    code = main(
        ["eval", "--grammar", str(workdir / "g.cfg"), "--graph", str(workdir / "d.tsv")]
    )
    assert code == 0
    out = capsys.readouterr().out
    # the two epsilon self-answers for vertices 2 and 4 join the five rows
    assert len(out.splitlines()) == 7
    assert "2\tS\t2" in out
    assert "4\tS\t4" in out


def test_eval_all_from_rejects_non_nonterminal(workdir, capsys):
    code = main(
        ["eval", "--grammar", str(workdir / "g.cfg"), "--graph", str(workdir / "d.tsv"),
         "--all-from", "Z"]
    )
    assert code == 2
    assert "not a nonterminal" in capsys.readouterr().err


def test_eval_lists_all_query_offenders(workdir, capsys):
    bad = workdir / "bad.tsv"
    bad.write_text("9\tS\n1\tX\nnot a pair\n1\tS\n")
    code = main(
        ["eval", "--grammar", str(workdir / "g.cfg"), "--graph", str(workdir / "d.tsv"),
         "--query", str(bad)]
    )
    assert code == 2
    err = capsys.readouterr().err
    assert "line 1" in err and "unknown vertex '9'" in err
    assert "line 2" in err and "unknown nonterminal 'X'" in err
    assert "line 3" in err


def test_eval_requires_exactly_one_graph_source(workdir, capsys):
    assert main(["eval", "--grammar", str(workdir / "g.cfg")]) == 2
    assert main(
        ["eval", "--grammar", str(workdir / "g.cfg"), "--graph", str(workdir / "d.tsv"),
         "--gen", "ablist", "--n", "2"]
    ) == 2


def test_eval_missing_file_is_a_clean_error(workdir, capsys):
    code = main(["eval", "--grammar", str(workdir / "nope.cfg"), "--graph", str(workdir / "d.tsv")])
    assert code == 2
    assert "cannot read" in capsys.readouterr().err


def test_eval_rejects_label_clash(workdir, capsys):
    tainted = workdir / "t.tsv"
    tainted.write_text("1\tS\t2\n")
    code = main(["eval", "--grammar", str(workdir / "g.cfg"), "--graph", str(tainted)])
    assert code == 2
    assert "collide" in capsys.readouterr().err


def test_gen_ablist_golden(capsys):
    assert main(["gen", "ablist", "--n", "2"]) == 0
    assert capsys.readouterr().out == "0\ta\t1\n1\ta\t2\n2\tb\t3\n3\tb\t4\n"


def test_gen_complete_exact(capsys):
    assert main(["gen", "complete", "--n", "2", "--labels", "a"]) == 0
    assert capsys.readouterr().out == "0\ta\t0\n0\ta\t1\n1\ta\t0\n1\ta\t1\n"


def test_gen_barabasi_deterministic(capsys):
    assert main(["gen", "barabasi", "--n", "40", "--k", "3", "--seed", "5"]) == 0
    first = capsys.readouterr().out
    assert main(["gen", "barabasi", "--n", "40", "--k", "3", "--seed", "5"]) == 0
    assert capsys.readouterr().out == first


def test_gen_rejects_bad_params(capsys):
    assert main(["gen", "cycle", "--n", "0"]) == 2
    assert main(["gen", "barabasi", "--n", "3", "--k", "9"]) == 2


def test_check_agrees_on_the_example(workdir, capsys):
    code = main(["check", "--grammar", str(workdir / "g.cfg"), "--graph", str(workdir / "d.tsv")])
    assert code == 0
    out = capsys.readouterr().out
    assert out.startswith("check: ok")
    assert "disciplines=fifo,lifo,random" in out


def test_check_reports_the_first_mismatch(workdir, capsys, monkeypatch):
    import cfpq.cli as cli_module

    real_evaluate = cli_module.evaluate

    def corrupted(grammar, graph, query, discipline="fifo", seed=0):
        result = real_evaluate(grammar, graph, query, discipline, seed)
        result.answers = {pair: targets ^ {0} for pair, targets in result.answers.items()}
        return result

    monkeypatch.setattr(cli_module, "evaluate", corrupted)
    code = main(["check", "--grammar", str(workdir / "g.cfg"), "--graph", str(workdir / "d.tsv")])
    assert code == 1
    out = capsys.readouterr().out
    assert "mismatch under fifo" in out
    assert "engine=" in out and "oracle=" in out


def test_eval_on_an_empty_graph(workdir, capsys):
    code = main(["eval", "--grammar", str(workdir / "g.cfg"), "--gen", "complete", "--n", "0"])
    assert code == 0
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "results=0" in captured.err


def test_check_respects_the_size_budget(workdir, capsys):
    code = main(
        ["check", "--grammar", str(workdir / "g.cfg"), "--graph", str(workdir / "d.tsv"),
         "--max-triples", "3"]
    )
    assert code == 2
    assert "over the budget" in capsys.readouterr().err


def test_bench_sweeps_and_is_stable(workdir, capsys):
    code = main(
        ["bench", "--grammar", str(workdir / "g.cfg"), "--gen", "ablist", "--n", "2,4",
         "--reps", "2"]
    )
    assert code == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].split("\t") == [
        "grammar", "graph", "vertices", "triples", "results", "time_ms",
        "items_created", "pops", "edges_added", "insertions",
    ]
    assert len(lines) == 3
    grammar = parse_grammar(GRAMMAR)
    for line, n in zip(lines[1:], (2, 4)):
        row = dict(zip(lines[0].split("\t"), line.split("\t")))
        assert row["grammar"] == "g"
        assert row["graph"] == f"ablist(n={n})"
        graph = gen_ablist(n)
        table = fixpoint_relations(grammar, graph)
        expected = sum(len(oracle_eval(table, v, sym("S"))) for v in graph.vertices())
        assert int(row["results"]) == expected
        assert int(row["vertices"]) == 2 * n + 1


def test_bench_continues_past_failing_rows(workdir, capsys):
    code = main(
        ["bench", "--grammar", f"{workdir / 'g.cfg'},{workdir / 'missing.cfg'}",
         "--gen", "ablist", "--n", "2"]
    )
    assert code == 1
    captured = capsys.readouterr()
    assert len(captured.out.splitlines()) == 2  # header + the surviving row
    assert "missing" in captured.err


def test_bench_rejects_zero_reps(workdir, capsys):
    code = main(
        ["bench", "--grammar", str(workdir / "g.cfg"), "--gen", "ablist", "--n", "2",
         "--reps", "0"]
    )
    assert code == 2
    assert "--reps" in capsys.readouterr().err


def test_add_inverses_round_trip(tmp_path, capsys):
    (tmp_path / "inv.cfg").write_text("S -> p p^-1\n")
    (tmp_path / "e.tsv").write_text("x\tp\ty\n")
    code = main(
        ["eval", "--grammar", str(tmp_path / "inv.cfg"), "--graph", str(tmp_path / "e.tsv"),
         "--add-inverses"]
    )
    assert code == 0
    assert capsys.readouterr().out == "x\tS\tx\n"
    # without the flag there is no inverse edge, hence no answer
    code = main(
        ["eval", "--grammar", str(tmp_path / "inv.cfg"), "--graph", str(tmp_path / "e.tsv")]
    )
    assert code == 0
    assert capsys.readouterr().out == ""


def test_ntriples_files_load_by_suffix(tmp_path, capsys):
    (tmp_path / "g.cfg").write_text("S -> p\n")
    (tmp_path / "d.nt").write_text("<http://e/x> <http://e/p> <http://e/y> .\n")
    code = main(["eval", "--grammar", str(tmp_path / "g.cfg"), "--graph", str(tmp_path / "d.nt")])
    assert code == 0
    assert capsys.readouterr().out == "x\tS\ty\n"
