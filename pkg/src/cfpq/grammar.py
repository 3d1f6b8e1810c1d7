"""Context-free grammar model and a small text format for grammar files.

A grammar is a list of productions ``A -> x y z`` over interned symbols.
The nonterminals are the symbols that appear on some left-hand side;
every other symbol mentioned on a right-hand side is a terminal. The
start symbol is the left-hand side of the first rule.

Grammar file format (``.cfg`` by convention, UTF-8):

    # full-line or trailing comments start with '#'
    S -> a S b              # one rule per line, tokens split on whitespace
    S -> S S | a S b        # '|' separates alternatives of one left-hand side
    S ->                    # empty right-hand side derives the empty string

Symbol spellings are opaque tokens, so ``subClassOf^-1`` is a perfectly
ordinary terminal. ``#`` and ``|`` are reserved by the format and cannot
appear inside a spelling.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import EmptyGrammar, InvalidGrammar, MalformedRule, UnknownNonterminal

_ARROW = "->"


@dataclass(frozen=True, slots=True)
class Symbol:
    """An interned grammar/graph symbol; equal text means the same object."""

    id: int
    text: str

    def __repr__(self) -> str:
        return f"Symbol({self.text!r})"

    def __str__(self) -> str:
        return self.text


_interned: dict[str, Symbol] = {}


def sym(text: str) -> Symbol:
    """Intern ``text`` as a Symbol. Repeated calls return the same object."""
    s = _interned.get(text)
    if s is None:
        s = Symbol(len(_interned), text)
        _interned[text] = s
    return s


def as_symbol(value: str | Symbol) -> Symbol:
    return value if isinstance(value, Symbol) else sym(value)


@dataclass(frozen=True, slots=True)
class Production:
    """One rule ``lhs -> rhs``; an empty rhs derives the empty string."""

    lhs: Symbol
    rhs: tuple[Symbol, ...]

    def __repr__(self) -> str:
        return f"Production({self.lhs.text} -> {' '.join(s.text for s in self.rhs)})"


class Grammar:
    """Immutable bundle of productions plus the derived symbol partition.

    ``nonterminals`` and ``terminals`` are disjoint; every right-hand-side
    symbol belongs to exactly one of them. When ``nonterminals`` is not
    given it is inferred from the left-hand sides. Passing it explicitly
    lets callers promote extra symbols, but every declared nonterminal
    must then own at least one production.
    """

    __slots__ = ("productions", "start", "nonterminals", "terminals", "max_rhs_len", "_by_lhs")

    def __init__(
        self,
        productions: Iterable[Production],
        start: Symbol | None = None,
        nonterminals: Iterable[Symbol] | None = None,
    ):
        prods = tuple(productions)
        if not prods:
            raise EmptyGrammar("a grammar needs at least one production")
        defined = {p.lhs for p in prods}
        if nonterminals is None:
            nts = frozenset(defined)
        else:
            nts = frozenset(nonterminals)
            undefined = sorted(s.text for s in nts - defined)
            if undefined:
                raise InvalidGrammar(f"nonterminals without productions: {', '.join(undefined)}")
            stray = sorted(s.text for s in defined - nts)
            if stray:
                raise InvalidGrammar(f"left-hand sides not declared as nonterminals: {', '.join(stray)}")
        if start is None:
            start = prods[0].lhs
        if start not in nts:
            raise InvalidGrammar(f"start symbol {start.text!r} is not a nonterminal")

        by_lhs: dict[Symbol, list[Production]] = {}
        for p in prods:
            by_lhs.setdefault(p.lhs, []).append(p)

        self.productions = prods
        self.start = start
        self.nonterminals = nts
        self.terminals = frozenset(s for p in prods for s in p.rhs if s not in nts)
        self.max_rhs_len = max(len(p.rhs) for p in prods)
        self._by_lhs = {a: tuple(ps) for a, ps in by_lhs.items()}

    def productions_of(self, a: Symbol) -> tuple[Production, ...]:
        """All productions with left-hand side ``a``, in source order."""
        if a not in self.nonterminals:
            raise UnknownNonterminal(f"{a.text!r} is not a nonterminal of this grammar")
        return self._by_lhs[a]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Grammar):
            return NotImplemented
        return (
            self.productions == other.productions
            and self.start == other.start
            and self.nonterminals == other.nonterminals
        )

    def __hash__(self) -> int:
        return hash((self.productions, self.start, self.nonterminals))

    def __repr__(self) -> str:
        return (
            f"Grammar(start={self.start.text}, |N|={len(self.nonterminals)}, "
            f"|T|={len(self.terminals)}, |P|={len(self.productions)})"
        )


def parse_grammar(text: str) -> Grammar:
    """Parse grammar text (see the module docstring for the format).

    Raises EmptyGrammar when no rules are found and MalformedRule on a
    line that is not ``LHS -> ...``.
    """
    productions: list[Production] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) < 2 or tokens[0] == _ARROW or tokens[1] != _ARROW:
            raise MalformedRule(f"line {lineno}: expected 'LHS -> symbols...', got {line!r}")
        for t in tokens:
            if "|" in t and t != "|":
                raise MalformedRule(f"line {lineno}: '|' may not appear inside a symbol: {t!r}")
        lhs = sym(tokens[0])
        alternative: list[Symbol] = []
        for t in tokens[2:]:
            if t == "|":
                productions.append(Production(lhs, tuple(alternative)))
                alternative = []
            else:
                alternative.append(sym(t))
        productions.append(Production(lhs, tuple(alternative)))
    if not productions:
        raise EmptyGrammar("no grammar rules found")
    return Grammar(productions)


def serialize_grammar(grammar: Grammar) -> str:
    """Render a grammar back to the text format, one production per line.

    Parsing the output of ``serialize_grammar`` yields a structurally
    identical grammar (same productions in order, same start symbol).
    """
    lines = []
    for p in grammar.productions:
        rhs = " ".join(s.text for s in p.rhs)
        lines.append(f"{p.lhs.text} -> {rhs}".rstrip())
    return "\n".join(lines) + "\n"
