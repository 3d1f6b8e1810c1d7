"""Built-in benchmark grammars, mirrored as files under grammars/.

The single-terminal dense/sparse grammars spell their terminal ``s``;
substitute another spelling by editing a copy of the file (or building
the Grammar in code) when the target graph uses different labels.
"""

from __future__ import annotations

from .grammar import Grammar, parse_grammar

GRAMMARS: dict[str, str] = {
    # balanced a..b nesting, ambiguous concatenation rule included
    "ab_ambiguous": "S -> S S | a S b\nS ->\n",
    # same language, one-rule unambiguous form
    "ab_unambiguous": "S -> a S b S\nS ->\n",
    # one or more s edges (heavily ambiguous chaining)
    "hlg_dense": "A -> A A | s\n",
    # zero or more s edges, with an interleaving helper nonterminal
    "hlg_sparse": "B -> B A | A B |\nA -> s\n",
    # same-depth subclass/type hierarchy walks, one-level-minimum
    "sc_t": (
        "S -> subClassOf S subClassOf^-1 | type S type^-1"
        " | subClassOf subClassOf^-1 | type type^-1\n"
    ),
    # subclass descent one step deeper than the ascent
    "sc": "S -> B subClassOf^-1\nB -> subClassOf B subClassOf^-1 |\n",
    # matched broaderTransitive up/down walks
    "bt": (
        "S -> broaderTransitive S broaderTransitive^-1"
        " | broaderTransitive broaderTransitive^-1\n"
    ),
    # a^n b^m c^m d^n with n >= 1
    "kjp_an_bm_cm_dn": "S -> a S d | a X d\nX -> b X c |\n",
}


def preset_names() -> list[str]:
    return sorted(GRAMMARS)


def preset(name: str) -> Grammar:
    try:
        text = GRAMMARS[name]
    except KeyError:
        raise ValueError(f"unknown grammar preset {name!r}; available: {', '.join(preset_names())}") from None
    return parse_grammar(text)
