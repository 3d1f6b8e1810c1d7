"""Command-line front end: evaluate queries, generate graphs, cross-check, benchmark.

    cfpq eval  --grammar g.cfg --graph edges.tsv --query pairs.tsv --out results.tsv
    cfpq eval  --grammar g.cfg --gen ablist --n 50            # all vertices x start
    cfpq gen   barabasi --n 100 --k 3 --seed 1 --out edges.tsv
    cfpq check --grammar g.cfg --gen barabasi --n 40 --k 3 --seed 7
    cfpq bench --grammar a.cfg,b.cfg --gen ablist --n 50,100 --reps 3

Results are TSV rows ``source<TAB>nonterminal<TAB>target`` sorted
ascending; run statistics go to stderr as ``key=value`` lines so stdout
stays pipeable. ``check`` exits 0 iff all three worklist disciplines
agree with the reference evaluator, ``bench`` emits one table row per
(grammar, graph) combination and keeps sweeping past failing rows.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from .engine import evaluate, results_tsv
from .errors import CfpqError
from .grammar import Grammar, Symbol, parse_grammar, sym
from .graph import (
    GENERATORS,
    DataGraph,
    gen_ablist,
    gen_barabasi,
    gen_complete,
    gen_cycle,
    gen_string,
    load_ntriples,
    load_triples,
    to_tsv,
    with_inverses,
)
from .oracle import DEFAULT_MAX_TRIPLES, fixpoint_relations, oracle_eval


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CfpqError(f"cannot read {path}: {exc}") from exc


def _load_grammar(path: str) -> Grammar:
    return parse_grammar(_read_text(path))


def _load_graph(path: str, add_inverses: bool) -> DataGraph:
    text = _read_text(path)
    if path.endswith(".nt"):
        return load_ntriples(text, add_inverses=add_inverses)
    return load_triples(text, add_inverses=add_inverses)


def _split_labels(spec: str) -> list[str]:
    return [token for token in spec.split(",") if token]


def _generate(kind: str, n: int | None, k: int, labels: list[str], seed: int) -> DataGraph:
    if n is None:
        raise CfpqError("--gen requires --n")
    if kind == "complete":
        return gen_complete(n, labels)
    if kind == "cycle":
        return gen_cycle(n, labels[0] if labels else "s")
    if kind == "string":
        return gen_string(n, labels[0] if labels else "s")
    if kind == "ablist":
        return gen_ablist(n)
    if kind == "barabasi":
        return gen_barabasi(n, k, seed, labels)
    raise CfpqError(f"unknown generator {kind!r}; available: {', '.join(sorted(GENERATORS))}")


def _describe_gen(kind: str, n: int, k: int, labels: list[str], seed: int) -> str:
    if kind == "barabasi":
        return f"barabasi(n={n},k={k},seed={seed},labels={','.join(labels)})"
    if kind == "complete":
        return f"complete(n={n},labels={','.join(labels)})"
    if kind in ("cycle", "string"):
        return f"{kind}(n={n},label={labels[0] if labels else 's'})"
    return f"{kind}(n={n})"


def _graph_from_args(args: argparse.Namespace) -> tuple[DataGraph, str]:
    if (args.graph is None) == (args.gen is None):
        raise CfpqError("exactly one of --graph or --gen is required")
    labels = _split_labels(args.labels)
    if args.graph is not None:
        return _load_graph(args.graph, args.add_inverses), Path(args.graph).name
    graph = _generate(args.gen, args.n, args.k, labels, args.seed)
    if args.add_inverses:
        graph = with_inverses(graph)
    return graph, _describe_gen(args.gen, args.n, args.k, labels, args.seed)


def _parse_query_file(text: str, graph: DataGraph, grammar: Grammar) -> list[tuple[int, Symbol]]:
    pairs: list[tuple[int, Symbol]] = []
    seen: set[tuple[int, Symbol]] = set()
    offenders: list[str] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 2:
            offenders.append(f"line {lineno}: expected 'vertex<TAB>nonterminal', got {line!r}")
            continue
        name, nt_text = fields
        problems = []
        if not graph.has_vertex(name):
            problems.append(f"unknown vertex {name!r}")
        nonterminal = sym(nt_text)
        if nonterminal not in grammar.nonterminals:
            problems.append(f"unknown nonterminal {nt_text!r}")
        if problems:
            offenders.append(f"line {lineno}: " + ", ".join(problems))
            continue
        pair = (graph.vertex_id(name), nonterminal)
        if pair not in seen:
            seen.add(pair)
            pairs.append(pair)
    if offenders:
        raise CfpqError("invalid query pairs:\n  " + "\n  ".join(offenders))
    return pairs


def _query_from_args(args: argparse.Namespace, grammar: Grammar, graph: DataGraph) -> list[tuple[int, Symbol]]:
    if args.query is not None and args.all_from is not None:
        raise CfpqError("--query and --all-from are mutually exclusive")
    if args.query is not None:
        return _parse_query_file(_read_text(args.query), graph, grammar)
    if args.all_from is not None:
        nonterminal = sym(args.all_from)
        if nonterminal not in grammar.nonterminals:
            raise CfpqError(f"--all-from: {args.all_from!r} is not a nonterminal of the grammar")
    else:
        nonterminal = grammar.start
    return [(vertex, nonterminal) for vertex in graph.vertices()]


def _check_labels(grammar: Grammar, graph: DataGraph) -> None:
    clash = sorted(s.text for s in graph.labels & grammar.nonterminals)
    if clash:
        raise CfpqError(f"graph labels collide with grammar nonterminals: {', '.join(clash)}")


def _write_output(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _stat_lines(pairs: list[tuple[str, object]]) -> None:
    for key, value in pairs:
        print(f"{key}={value}", file=sys.stderr)


# -- subcommands ---------------------------------------------------------


def cmd_eval(args: argparse.Namespace) -> int:
    grammar = _load_grammar(args.grammar)
    graph, _ = _graph_from_args(args)
    _check_labels(grammar, graph)
    query = _query_from_args(args, grammar, graph)
    started = time.perf_counter()
    result = evaluate(grammar, graph, query, args.discipline, args.seed)
    elapsed_ms = (time.perf_counter() - started) * 1000.0
    _write_output(results_tsv(result), args.out)
    total = sum(len(targets) for targets in result.answers.values())
    _stat_lines(
        [
            ("vertices", graph.vertex_count),
            ("input_triples", len(graph.triples)),
            *result.stats.as_dict().items(),
            ("elapsed_ms", f"{elapsed_ms:.3f}"),
            ("results", total),
        ]
    )
    return 0


def cmd_gen(args: argparse.Namespace) -> int:
    labels = _split_labels(args.labels)
    graph = _generate(args.kind, args.n, args.k, labels, args.seed)
    if args.add_inverses:
        graph = with_inverses(graph)
    _write_output(to_tsv(graph), args.out)
    _stat_lines([("vertices", graph.vertex_count), ("triples", len(graph.triples))])
    return 0


def cmd_check(args: argparse.Namespace) -> int:
    grammar = _load_grammar(args.grammar)
    graph, _ = _graph_from_args(args)
    _check_labels(grammar, graph)
    query = _query_from_args(args, grammar, graph)
    table = fixpoint_relations(grammar, graph, max_triples=args.max_triples)
    expected = {(v, nt): oracle_eval(table, v, nt) for v, nt in query}
    for discipline in ("fifo", "lifo", "random"):
        result = evaluate(grammar, graph, query, discipline, args.seed)
        if result.answers != expected:
            for pair in sorted(expected, key=lambda p: (graph.vertex_name(p[0]), p[1].text)):
                if result.answers[pair] != expected[pair]:
                    vertex, nonterminal = pair
                    got = sorted(graph.vertex_name(v) for v in result.answers[pair])
                    want = sorted(graph.vertex_name(v) for v in expected[pair])
                    print(
                        f"check: mismatch under {discipline} at ({graph.vertex_name(vertex)}, "
                        f"{nonterminal.text}): engine={got} oracle={want}"
                    )
                    return 1
    total = sum(len(targets) for targets in expected.values())
    print(f"check: ok pairs={len(query)} results={total} disciplines=fifo,lifo,random")
    return 0


def cmd_bench(args: argparse.Namespace) -> int:
    if args.reps < 1:
        raise CfpqError(f"--reps must be >= 1, got {args.reps}")
    grammar_paths = [p for p in args.grammar.split(",") if p]
    if not grammar_paths:
        raise CfpqError("--grammar needs at least one path")

    graph_specs: list[tuple[str, dict]] = []
    if (args.graph is None) == (args.gen is None):
        raise CfpqError("exactly one of --graph or --gen is required")
    labels = _split_labels(args.labels)
    if args.graph is not None:
        for path in args.graph.split(","):
            if path:
                graph_specs.append((Path(path).name, {"path": path}))
    else:
        if args.n is None:
            raise CfpqError("--gen requires --n")
        for n_text in args.n.split(","):
            if not n_text:
                continue
            try:
                n = int(n_text)
            except ValueError:
                raise CfpqError(f"--n: not an integer: {n_text!r}") from None
            desc = _describe_gen(args.gen, n, args.k, labels, args.seed)
            graph_specs.append((desc, {"kind": args.gen, "n": n}))
    if not graph_specs:
        raise CfpqError("no graphs to benchmark")

    header = [
        "grammar",
        "graph",
        "vertices",
        "triples",
        "results",
        "time_ms",
        "items_created",
        "pops",
        "edges_added",
        "insertions",
    ]
    lines = ["\t".join(header)]
    failures = 0
    for grammar_path in grammar_paths:
        for desc, spec in graph_specs:
            try:
                grammar = _load_grammar(grammar_path)
                if "path" in spec:
                    graph = _load_graph(spec["path"], args.add_inverses)
                else:
                    graph = _generate(spec["kind"], spec["n"], args.k, labels, args.seed)
                    if args.add_inverses:
                        graph = with_inverses(graph)
                _check_labels(grammar, graph)
                query = [(v, grammar.start) for v in graph.vertices()]
                times = []
                first_total: int | None = None
                stats = None
                for _ in range(args.reps):
                    started = time.perf_counter()
                    result = evaluate(grammar, graph, query, args.discipline, args.seed)
                    times.append((time.perf_counter() - started) * 1000.0)
                    total = sum(len(t) for t in result.answers.values())
                    if first_total is None:
                        first_total, stats = total, result.stats
                    elif total != first_total:
                        raise CfpqError(f"result count changed between repetitions: {first_total} vs {total}")
                row = [
                    Path(grammar_path).stem,
                    desc,
                    str(graph.vertex_count),
                    str(len(graph.triples)),
                    str(first_total),
                    f"{sum(times) / len(times):.3f}",
                    str(stats.items_created),
                    str(stats.pops),
                    str(stats.edges_added),
                    str(stats.insertions),
                ]
                lines.append("\t".join(row))
            except CfpqError as exc:
                failures += 1
                print(f"bench: {Path(grammar_path).stem} x {desc}: {exc}", file=sys.stderr)
    _write_output("\n".join(lines) + "\n", args.out)
    return 1 if failures else 0


# -- argument wiring -------------------------------------------------------


def _add_common_input_args(parser: argparse.ArgumentParser, n_as_list: bool) -> None:
    parser.add_argument("--grammar", required=True, help="grammar file (comma-separated list for bench)")
    parser.add_argument("--graph", help="triples file, TSV or .nt (comma-separated list for bench)")
    parser.add_argument("--gen", choices=sorted(GENERATORS), help="generate the graph instead of loading one")
    if n_as_list:
        parser.add_argument("--n", help="generator size, comma-separated list for sweeps")
    else:
        parser.add_argument("--n", type=int, help="generator size")
    parser.add_argument("--k", type=int, default=1, help="attachment degree for barabasi (default 1)")
    parser.add_argument("--labels", default="a,b,c,d", help="generator labels, comma separated")
    parser.add_argument("--add-inverses", action="store_true", help="also materialize (o, p^-1, s) edges")
    parser.add_argument("--seed", type=int, default=0, help="seed for generators and the random discipline")
    parser.add_argument("--discipline", choices=("fifo", "lifo", "random"), default="fifo")
    parser.add_argument("--out", help="output file (default: stdout)")


def _add_query_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--query", help="query pairs file: vertex<TAB>nonterminal per line")
    parser.add_argument(
        "--all-from",
        metavar="NT",
        help="query every vertex under this nonterminal (default: grammar start)",
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cfpq", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate a query, write result TSV")
    _add_common_input_args(p_eval, n_as_list=False)
    _add_query_args(p_eval)
    p_eval.set_defaults(func=cmd_eval)

    p_gen = sub.add_parser("gen", help="emit a synthetic graph as TSV")
    p_gen.add_argument("kind", choices=sorted(GENERATORS))
    p_gen.add_argument("--n", type=int, required=True, help="generator size")
    p_gen.add_argument("--k", type=int, default=1, help="attachment degree for barabasi (default 1)")
    p_gen.add_argument("--labels", default="a,b,c,d", help="generator labels, comma separated")
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--add-inverses", action="store_true")
    p_gen.add_argument("--out", help="output file (default: stdout)")
    p_gen.set_defaults(func=cmd_gen)

    p_check = sub.add_parser("check", help="engine vs reference evaluator under all disciplines")
    _add_common_input_args(p_check, n_as_list=False)
    _add_query_args(p_check)
    p_check.add_argument(
        "--max-triples",
        type=int,
        default=DEFAULT_MAX_TRIPLES,
        help=f"size budget of the reference evaluator (default {DEFAULT_MAX_TRIPLES})",
    )
    p_check.set_defaults(func=cmd_check)

    p_bench = sub.add_parser("bench", help="sweep grammars x graphs, one table row each")
    _add_common_input_args(p_bench, n_as_list=True)
    p_bench.add_argument("--reps", type=int, default=1, help="repetitions per row, times averaged")
    p_bench.set_defaults(func=cmd_bench)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CfpqError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
