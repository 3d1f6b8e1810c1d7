"""Edge-labeled directed graphs stored as a triple set with a successor index.

Vertices are dense integers assigned in first-appearance order; the
original vertex tokens are kept in a side table so loaders and writers
can round-trip external names. Labels are interned Symbols and the graph
places no restriction on the label alphabet (the query engine adds
nonterminal-labeled edges to its working copy).

Also home to the synthetic generators used by the benchmark CLI and a
thin N-Triples pre-tokenizer (IRIs and literals become opaque local-name
tokens; full RDF semantics is out of scope).
"""

from __future__ import annotations

import random
from bisect import bisect_right
from itertools import accumulate
from typing import Sequence

from .errors import InvalidParams, MalformedTriple, UnknownVertex
from .grammar import Symbol, as_symbol, sym

Triple = tuple[int, Symbol, int]

INVERSE_SUFFIX = "^-1"


class DataGraph:
    """Mutable triple store ``(source, label, target)`` over dense vertex ids.

    ``triples`` is the authoritative edge set; ``successors`` answers the
    one lookup the evaluator needs. Treat ``triples`` as read-only and go
    through ``add_edge`` so the successor index stays consistent.
    """

    __slots__ = ("_names", "_ids", "triples", "labels", "_succ")

    def __init__(self) -> None:
        self._names: list[str] = []
        self._ids: dict[str, int] = {}
        self.triples: set[Triple] = set()
        self.labels: set[Symbol] = set()
        self._succ: dict[tuple[int, Symbol], set[int]] = {}

    # -- vertices ------------------------------------------------------

    @property
    def vertex_count(self) -> int:
        return len(self._names)

    def vertices(self) -> range:
        return range(len(self._names))

    def intern(self, name: str) -> int:
        """Return the id of ``name``, adding a new vertex on first sight."""
        vid = self._ids.get(name)
        if vid is None:
            vid = len(self._names)
            self._ids[name] = vid
            self._names.append(name)
        return vid

    def has_vertex(self, name: str) -> bool:
        return name in self._ids

    def vertex_id(self, name: str) -> int:
        try:
            return self._ids[name]
        except KeyError:
            raise UnknownVertex(f"no vertex named {name!r}") from None

    def vertex_name(self, vid: int) -> str:
        if not 0 <= vid < len(self._names):
            raise UnknownVertex(f"vertex id {vid} out of range")
        return self._names[vid]

    # -- edges ---------------------------------------------------------

    def add_edge(self, source: int, label: Symbol, target: int) -> bool:
        """Insert a triple; returns True iff it was not already present."""
        n = len(self._names)
        if not (0 <= source < n and 0 <= target < n):
            raise UnknownVertex(f"edge endpoint out of range: ({source}, {label.text}, {target})")
        triple = (source, label, target)
        if triple in self.triples:
            return False
        self.triples.add(triple)
        self.labels.add(label)
        self._succ.setdefault((source, label), set()).add(target)
        return True

    def has_edge(self, source: int, label: Symbol, target: int) -> bool:
        return (source, label, target) in self.triples

    def successors(self, source: int, label: Symbol) -> list[int]:
        """Targets of ``label``-edges leaving ``source``, ascending."""
        targets = self._succ.get((source, label))
        return sorted(targets) if targets else []

    def copy(self) -> DataGraph:
        g = DataGraph()
        g._names = list(self._names)
        g._ids = dict(self._ids)
        g.triples = set(self.triples)
        g.labels = set(self.labels)
        g._succ = {key: set(targets) for key, targets in self._succ.items()}
        return g

    def __repr__(self) -> str:
        return f"DataGraph(|V|={len(self._names)}, |E|={len(self.triples)})"


# -- text formats -------------------------------------------------------


def load_triples(text: str, add_inverses: bool = False) -> DataGraph:
    """Parse tab-separated ``subject<TAB>predicate<TAB>object`` lines.

    Vertex ids are assigned in first-appearance order (subject before
    object within a line); duplicate triples collapse. With
    ``add_inverses`` every input triple (s, p, o) also materializes
    (o, p^-1, s), which adds labels but never vertices.
    """
    g = DataGraph()
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        fields = line.split("\t")
        if len(fields) != 3:
            raise MalformedTriple(f"line {lineno}: expected 3 tab-separated fields, got {len(fields)}")
        s, p, o = fields
        g.add_edge(g.intern(s), sym(p), g.intern(o))
    if add_inverses:
        return with_inverses(g)
    return g


def with_inverses(g: DataGraph) -> DataGraph:
    """Copy ``g`` and add (o, p^-1, s) for every existing triple."""
    out = g.copy()
    for s, p, o in g.triples:
        out.add_edge(o, sym(p.text + INVERSE_SUFFIX), s)
    return out


def to_tsv(g: DataGraph) -> str:
    """Render the triple set as sorted TSV lines with external names."""
    rows = sorted((s, label.text, t) for s, label, t in g.triples)
    return "".join(f"{g.vertex_name(s)}\t{label}\t{g.vertex_name(t)}\n" for s, label, t in rows)


def _local_name(field: str) -> str:
    if field.startswith("<") and field.endswith(">"):
        iri = field[1:-1]
        for separator in ("#", "/"):
            idx = iri.rfind(separator)
            if idx != -1 and idx + 1 < len(iri):
                return iri[idx + 1 :]
        return iri
    return field


def load_ntriples(text: str, add_inverses: bool = False) -> DataGraph:
    """Thin N-Triples reader: three whitespace-separated terms and a dot.

    IRIs map to the token after their last '#' or '/'; anything else
    (blank nodes, literals) is kept verbatim as an opaque vertex token.
    """
    g = DataGraph()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split(None, 2)
        if len(parts) != 3:
            raise MalformedTriple(f"line {lineno}: expected 'subject predicate object .'")
        s, p, rest = parts
        rest = rest.rstrip()
        if rest.endswith("."):
            rest = rest[:-1].rstrip()
        if not rest:
            raise MalformedTriple(f"line {lineno}: missing object term")
        g.add_edge(g.intern(_local_name(s)), sym(_local_name(p)), g.intern(_local_name(rest)))
    if add_inverses:
        return with_inverses(g)
    return g


# -- synthetic generators ------------------------------------------------


def _fresh(n: int) -> DataGraph:
    if n < 0:
        raise InvalidParams(f"vertex count must be >= 0, got {n}")
    g = DataGraph()
    for i in range(n):
        g.intern(str(i))
    return g


def _label_list(labels: Sequence[str | Symbol]) -> list[Symbol]:
    out = [as_symbol(l) for l in labels]
    if not out:
        raise InvalidParams("at least one label is required")
    return out


def gen_complete(n: int, labels: Sequence[str | Symbol] = ("a",)) -> DataGraph:
    """Complete graph: every ordered pair (self-loops included) under every label."""
    labs = _label_list(labels)
    g = _fresh(n)
    for s in range(n):
        for label in labs:
            for t in range(n):
                g.add_edge(s, label, t)
    return g


def gen_ablist(n: int) -> DataGraph:
    """Chain of 2n+1 vertices tracing the word a^n b^n."""
    g = _fresh(2 * n + 1)
    a, b = sym("a"), sym("b")
    for i in range(n):
        g.add_edge(i, a, i + 1)
    for i in range(n, 2 * n):
        g.add_edge(i, b, i + 1)
    return g


def gen_string(n: int, label: str | Symbol = "s") -> DataGraph:
    """Chain of n+1 vertices connected by n same-labeled edges."""
    g = _fresh(n + 1)
    lab = as_symbol(label)
    for i in range(n):
        g.add_edge(i, lab, i + 1)
    return g


def gen_cycle(n: int, label: str | Symbol = "s") -> DataGraph:
    """Directed ring of n >= 1 vertices under one label."""
    if n < 1:
        raise InvalidParams(f"cycle needs at least one vertex, got {n}")
    g = _fresh(n)
    lab = as_symbol(label)
    for i in range(n):
        g.add_edge(i, lab, (i + 1) % n)
    return g


def gen_barabasi(
    n: int,
    k: int,
    seed: int = 0,
    labels: Sequence[str | Symbol] = ("a", "b", "c", "d"),
) -> DataGraph:
    """Preferential-attachment graph with uniformly random labels.

    Starts from a directed clique on vertices 0..k-1 (every ordered pair,
    row-major, label drawn uniformly), then each vertex v in k..n-1 draws
    k edges v -> t with t chosen among 0..v-1 proportionally to current
    in+out degree over the deduplicated edge set. When every candidate
    still has degree zero (k = 1) the target is drawn uniformly. Per
    edge the target is drawn first (cumulative-weight bisection on
    ``rng.random()``), then the label (``rng.randrange``); the rng is
    ``random.Random(seed)``. Identical parameters reproduce the graph
    bit-for-bit.
    """
    if not 1 <= k <= n:
        raise InvalidParams(f"need 1 <= k <= n, got k={k}, n={n}")
    labs = _label_list(labels)
    rng = random.Random(seed)
    g = _fresh(n)
    degree = [0] * n

    def insert(s: int, label: Symbol, t: int) -> None:
        if g.add_edge(s, label, t):
            degree[s] += 1
            degree[t] += 1

    for s in range(k):
        for t in range(k):
            if s != t:
                insert(s, labs[rng.randrange(len(labs))], t)
    for v in range(k, n):
        for _ in range(k):
            weights = list(accumulate(degree[:v]))
            total = weights[-1]
            if total == 0:
                target = rng.randrange(v)
            else:
                target = bisect_right(weights, rng.random() * total)
            insert(v, labs[rng.randrange(len(labs))], target)
    return g


GENERATORS = {
    "complete": gen_complete,
    "cycle": gen_cycle,
    "string": gen_string,
    "ablist": gen_ablist,
    "barabasi": gen_barabasi,
}
