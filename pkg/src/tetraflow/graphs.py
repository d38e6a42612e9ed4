"""Labelled Kontsevich graphs, canonical forms, and reduced rational graph sums.

A graph has ``m`` ordered sinks (labels ``0..m-1``) and ``n`` internal
vertices (labels ``m..m+n-1``).  Every internal vertex is the source of an
ordered pair of edges (left, right); swapping a pair negates the operator
the graph encodes, relabelling internal vertices does not change it.  The
text encoding of a graph is ``m n t1 t2 ... t_{2n}`` where the k-th pair
holds the two targets of vertex ``m+k``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations


class GraphError(ValueError):
    """Malformed graph data or text encoding."""


@dataclass(frozen=True)
class KontsevichGraph:
    sink_count: int
    internal_count: int
    targets: tuple[tuple[int, int], ...]

    def __post_init__(self):
        m, n = self.sink_count, self.internal_count
        if m < 0 or n < 0:
            raise GraphError("negative vertex counts")
        if len(self.targets) != n:
            raise GraphError(f"expected {n} target pairs, got {len(self.targets)}")
        for pair in self.targets:
            for t in pair:
                if not 0 <= t < m + n:
                    raise GraphError(f"target {t} out of range [0, {m + n})")

    @property
    def key(self) -> tuple[int, int, tuple[int, ...]]:
        flat = tuple(t for pair in self.targets for t in pair)
        return (self.sink_count, self.internal_count, flat)

    def sink_in_degrees(self) -> list[int]:
        deg = [0] * self.sink_count
        for a, b in self.targets:
            if a < self.sink_count:
                deg[a] += 1
            if b < self.sink_count:
                deg[b] += 1
        return deg

    def is_multivector_term(self) -> bool:
        """Differential order (1,...,1): every sink receives exactly one edge."""
        return all(d == 1 for d in self.sink_in_degrees())

    def permute_sinks(self, sigma: tuple[int, ...]) -> "KontsevichGraph":
        """Relabel sink s as sigma[s]; internal labels are untouched."""
        m = self.sink_count
        relabel = lambda v: sigma[v] if v < m else v
        return KontsevichGraph(
            m, self.internal_count,
            tuple((relabel(a), relabel(b)) for a, b in self.targets))


@dataclass(frozen=True)
class NormalForm:
    sink_count: int
    internal_count: int
    encoding: tuple[int, ...]
    sign: int  # +1, -1, or 0 for self-antisymmetric graphs


_PERMS: dict[int, list[tuple[int, ...]]] = {}


def _perms(n: int) -> list[tuple[int, ...]]:
    if n not in _PERMS:
        _PERMS[n] = list(permutations(range(n)))
    return _PERMS[n]


_NF_CACHE: dict[tuple[int, int, tuple[int, ...]], NormalForm] = {}


def normal_form(g: KontsevichGraph) -> NormalForm:
    """Orbit-minimal encoding of ``g`` under internal relabellings and edge swaps.

    The encoding is the lexicographically smallest flattened target sequence
    over the n! * 2^n group; each left/right swap used contributes a factor
    -1 to the sign and relabellings contribute nothing.  The sign is 0 when
    the minimum is reached with both parities, i.e. the graph equals minus
    itself (double edges, the wedge standing on two equal wedges, ...).
    """
    key = g.key
    cached = _NF_CACHE.get(key)
    if cached is not None:
        return cached
    m, n, _ = key
    for a, b in g.targets:
        if a == b:
            nf = NormalForm(m, n, (), 0)
            _NF_CACHE[key] = nf
            return nf
    targets = g.targets
    best: tuple[int, ...] | None = None
    best_parity = 0
    zero = False
    for pi in _perms(n):
        new_pairs: list[tuple[int, int]] = [(0, 0)] * n
        parity = 0
        for k in range(n):
            a, b = targets[k]
            if a >= m:
                a = m + pi[a - m]
            if b >= m:
                b = m + pi[b - m]
            if a > b:
                a, b = b, a
                parity ^= 1
            new_pairs[pi[k]] = (a, b)
        seq = tuple(t for pair in new_pairs for t in pair)
        if best is None or seq < best:
            best, best_parity, zero = seq, parity, False
        elif seq == best and parity != best_parity:
            zero = True
    assert best is not None
    sign = 0 if zero else (1 if best_parity == 0 else -1)
    nf = NormalForm(m, n, best, 0 if zero else sign)
    _NF_CACHE[key] = nf
    return nf


def graph_from_encoding(m: int, n: int, encoding: tuple[int, ...]) -> KontsevichGraph:
    pairs = tuple((encoding[2 * k], encoding[2 * k + 1]) for k in range(n))
    return KontsevichGraph(m, n, pairs)


class GraphSum:
    """Reduced formal sum of normal-form graphs with exact rational coefficients.

    Keys are ``(m, n, encoding)`` triples; normal-form signs are folded into
    the coefficients on insertion and zero coefficients are dropped, so two
    sums are equal iff they encode the same operator combination.  Iteration
    is in lexicographic key order, which makes serialization deterministic.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms: dict[tuple[int, int, tuple[int, ...]], Fraction] = terms or {}

    def add_graph(self, g: KontsevichGraph, c: Fraction | int) -> None:
        if not c:
            return
        nf = normal_form(g)
        if nf.sign == 0:
            return
        key = (nf.sink_count, nf.internal_count, nf.encoding)
        new = self.terms.get(key, Fraction(0)) + Fraction(c) * nf.sign
        if new:
            self.terms[key] = new
        else:
            self.terms.pop(key, None)

    def add_sum(self, other: "GraphSum", scale: Fraction | int = 1) -> None:
        if not scale:
            return
        scale = Fraction(scale)
        for key, c in other.terms.items():
            new = self.terms.get(key, Fraction(0)) + c * scale
            if new:
                self.terms[key] = new
            else:
                self.terms.pop(key, None)

    def __add__(self, other: "GraphSum") -> "GraphSum":
        out = GraphSum(dict(self.terms))
        out.add_sum(other)
        return out

    def __sub__(self, other: "GraphSum") -> "GraphSum":
        out = GraphSum(dict(self.terms))
        out.add_sum(other, -1)
        return out

    def scaled(self, c: Fraction | int) -> "GraphSum":
        c = Fraction(c)
        if not c:
            return GraphSum()
        return GraphSum({k: v * c for k, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, GraphSum) and self.terms == other.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def items(self):
        """(key, coefficient) pairs in lexicographic key order."""
        return sorted(self.terms.items())

    def graphs(self):
        for (m, n, enc), c in self.items():
            yield graph_from_encoding(m, n, enc), c

    def signatures(self) -> set[tuple[int, int]]:
        return {(m, n) for (m, n, _) in self.terms}

    def serialize(self) -> str:
        lines = []
        for (m, n, enc), c in self.items():
            body = " ".join(str(t) for t in enc)
            lines.append(f"{m} {n} {body} {format_coeff(c)}" if n else f"{m} {n} {format_coeff(c)}")
        return "\n".join(lines) + ("\n" if lines else "")

    @staticmethod
    def single(g: KontsevichGraph, c: Fraction | int = 1) -> "GraphSum":
        out = GraphSum()
        out.add_graph(g, c)
        return out


def format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def parse_coeff(tok: str) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError) as exc:
        raise GraphError(f"malformed rational {tok!r}") from exc


def parse_graph_line(line: str) -> tuple[KontsevichGraph, Fraction]:
    """Parse one ``m n t1 ... t_{2n} coeff`` line into a labelled graph."""
    toks = line.split()
    if len(toks) < 3:
        raise GraphError(f"wrong token count in {line!r}")
    try:
        m, n = int(toks[0]), int(toks[1])
    except ValueError as exc:
        raise GraphError(f"bad prefix in {line!r}") from exc
    if m < 0 or n < 0 or len(toks) != 2 + 2 * n + 1:
        raise GraphError(f"wrong token count in {line!r}: expected {2 + 2*n + 1} tokens")
    try:
        flat = [int(t) for t in toks[2:2 + 2 * n]]
    except ValueError as exc:
        raise GraphError(f"bad target in {line!r}") from exc
    coeff = parse_coeff(toks[-1])
    pairs = tuple((flat[2 * k], flat[2 * k + 1]) for k in range(n))
    return KontsevichGraph(m, n, pairs), coeff


def serialize_graph(g: KontsevichGraph, c: Fraction) -> str:
    flat = " ".join(str(t) for pair in g.targets for t in pair)
    if flat:
        return f"{g.sink_count} {g.internal_count} {flat} {format_coeff(c)}"
    return f"{g.sink_count} {g.internal_count} {format_coeff(c)}"


def read_graph_sum(text: str) -> GraphSum:
    """Reduce a graph-sum file ('#' comments and blank lines skipped)."""
    out = GraphSum()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            g, c = parse_graph_line(line)
        except GraphError as exc:
            raise GraphError(f"line {lineno}: {exc}") from exc
        out.add_graph(g, c)
    return out


def read_graph_lines(text: str) -> list[tuple[KontsevichGraph, Fraction]]:
    """Parse a graph-sum file keeping labelled terms and order, no reduction."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            out.append(parse_graph_line(line))
        except GraphError as exc:
            raise GraphError(f"line {lineno}: {exc}") from exc
    return out
