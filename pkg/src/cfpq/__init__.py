"""Context-free path queries over edge-labeled directed graphs."""

from .engine import (
    EvalResult,
    Evaluation,
    Stats,
    TraceItem,
    Worklist,
    evaluate,
    final_items,
    marked_union,
    render_item,
    results_tsv,
)
from .errors import (
    CfpqError,
    EmptyGrammar,
    InvalidGrammar,
    InvalidParams,
    MalformedRule,
    MalformedTriple,
    SizeGuardExceeded,
    UnknownNonterminal,
    UnknownVertex,
)
from .grammar import Grammar, Production, Symbol, as_symbol, parse_grammar, serialize_grammar, sym
from .graph import (
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
from .oracle import RelationTable, compose, fixpoint_relations, oracle_eval, reachable_via
from .presets import preset, preset_names

__version__ = "0.1.0"

__all__ = [
    "CfpqError",
    "DataGraph",
    "EmptyGrammar",
    "EvalResult",
    "Evaluation",
    "Grammar",
    "InvalidGrammar",
    "InvalidParams",
    "MalformedRule",
    "MalformedTriple",
    "Production",
    "RelationTable",
    "SizeGuardExceeded",
    "Stats",
    "Symbol",
    "TraceItem",
    "UnknownNonterminal",
    "UnknownVertex",
    "Worklist",
    "as_symbol",
    "compose",
    "evaluate",
    "final_items",
    "fixpoint_relations",
    "gen_ablist",
    "gen_barabasi",
    "gen_complete",
    "gen_cycle",
    "gen_string",
    "load_ntriples",
    "load_triples",
    "marked_union",
    "oracle_eval",
    "parse_grammar",
    "preset",
    "preset_names",
    "reachable_via",
    "render_item",
    "results_tsv",
    "serialize_grammar",
    "sym",
    "to_tsv",
    "with_inverses",
    "__version__",
]
