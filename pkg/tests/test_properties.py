from __future__ import annotations

from hypothesis import given, settings
from hypothesis import strategies as st

from cfpq import (
    DataGraph,
    Grammar,
    Production,
    compose,
    evaluate,
    fixpoint_relations,
    gen_barabasi,
    oracle_eval,
    parse_grammar,
    reachable_via,
    results_tsv,
    serialize_grammar,
    sym,
    to_tsv,
)

NONTERMINAL_POOL = ("S", "A", "B")
TERMINAL_POOL = ("a", "b")


@st.composite
def grammars(draw) -> Grammar:
    nts = draw(
        st.lists(st.sampled_from(NONTERMINAL_POOL), min_size=1, max_size=3, unique=True)
    )
    alphabet = TERMINAL_POOL + tuple(nts)
    productions = []
    for nt in nts:
        for _ in range(draw(st.integers(1, 3))):
            rhs = draw(st.lists(st.sampled_from(alphabet), min_size=0, max_size=3))
            productions.append(Production(sym(nt), tuple(sym(s) for s in rhs)))
    return Grammar(productions, start=sym(nts[0]))


@st.composite
def graphs(draw) -> DataGraph:
    n = draw(st.integers(1, 5))
    g = DataGraph()
    for i in range(n):
        g.intern(str(i))
    edges = draw(
        st.lists(
            st.tuples(
                st.integers(0, n - 1),
                st.sampled_from(TERMINAL_POOL),
                st.integers(0, n - 1),
            ),
            max_size=12,
        )
    )
    for s, label, t in edges:
        g.add_edge(s, sym(label), t)
    return g


def _nullable(grammar: Grammar) -> set:
    """Closure of nonterminals deriving the empty string; engine-free."""
    nullable: set = set()
    changed = True
    while changed:
        changed = False
        for p in grammar.productions:
            if p.lhs not in nullable and all(s in nullable for s in p.rhs):
                nullable.add(p.lhs)
                changed = True
    return nullable


@settings(max_examples=60, deadline=None)
@given(grammars(), graphs())
def test_engine_agrees_with_reference_and_itself(grammar, graph):
    query = [(v, grammar.start) for v in graph.vertices()]
    table = fixpoint_relations(grammar, graph)
    expected = {(v, grammar.start): oracle_eval(table, v, grammar.start) for v in graph.vertices()}
    nullable = _nullable(grammar)

    renderings = set()
    for discipline, seed in (("fifo", 0), ("lifo", 0), ("random", 0), ("random", 9)):
        result = evaluate(grammar, graph, query, discipline, seed)
        assert result.answers == expected
        renderings.add(results_tsv(result))

        stats = result.stats
        v, p, k = graph.vertex_count, len(grammar.productions), grammar.max_rhs_len
        assert stats.items_created <= v * p
        assert stats.pops <= v * v * p * (k + 1)
        assert stats.pops == stats.insertions

        # derived edges carry nonterminal labels only
        for s, label, t in result.result_graph.triples - graph.triples:
            assert label in grammar.nonterminals

        for item in result.items:
            # at the fixpoint every entry is processed ...
            assert all(all(s.values()) for s in item.sets)
            # ... and each position set is sound for its matched prefix
            for j in range(len(item.production.rhs) + 1):
                allowed = reachable_via(table, item.origin, item.production.rhs[:j])
                assert set(item.sets[j]) <= allowed
            # items that can finish produced their self-closing edge
            if item.production.lhs in nullable:
                assert result.result_graph.has_edge(item.origin, item.production.lhs, item.origin)

    assert len(renderings) == 1


@settings(max_examples=60, deadline=None)
@given(graphs())
def test_successor_index_is_consistent(graph):
    for v in graph.vertices():
        for label in graph.labels:
            assert graph.successors(v, label) == sorted(
                {t for s, l, t in graph.triples if s == v and l == label}
            )


@settings(max_examples=80, deadline=None)
@given(grammars())
def test_grammar_round_trips_through_text(grammar):
    assert parse_grammar(serialize_grammar(grammar)) == grammar


_relations = st.sets(
    st.tuples(st.integers(0, 4), st.integers(0, 4)), max_size=10
)


@settings(max_examples=80, deadline=None)
@given(_relations, _relations, _relations)
def test_compose_is_associative(r1, r2, r3):
    assert compose(compose(r1, r2), r3) == compose(r1, compose(r2, r3))


@settings(max_examples=30, deadline=None)
@given(grammars(), graphs())
def test_reference_passes_are_monotone(grammar, graph):
    snapshots = []
    fixpoint_relations(grammar, graph, on_pass=snapshots.append)
    for earlier, later in zip(snapshots, snapshots[1:]):
        for symbol, relation in earlier.items():
            assert relation <= later[symbol]


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 25), st.integers(1, 4), st.integers(0, 2**32 - 1))
def test_barabasi_is_seed_deterministic(n, k, seed):
    if k > n:
        k = n
    assert to_tsv(gen_barabasi(n, k, seed)) == to_tsv(gen_barabasi(n, k, seed))
