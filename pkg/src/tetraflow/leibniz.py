"""Leibniz graphs: wedge vertices plus Jacobiator placeholder vertices.

A Leibniz graph on ``m`` sinks has ``w`` ordinary wedge vertices (labels
``m..m+w-1``) and one or two Jacobiator vertices; the i-th Jacobiator is
referred to by the placeholder label ``m+w+i`` and carries an ordered
triple of pairwise distinct targets.  Expansion realizes each Jacobiator by
its three two-vertex terms and distributes every edge landing on a
placeholder over the two realization vertices by the Leibniz rule, so a
pattern with r_i edges onto Jacobiator i expands into
``prod_i 3 * 2^{r_i}`` labelled Kontsevich graphs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations, product

from .graphs import (GraphError, GraphSum, KontsevichGraph, format_coeff,
                     parse_coeff)


@dataclass(frozen=True)
class LeibnizGraph:
    sink_count: int
    wedge_targets: tuple[tuple[int, int], ...]
    jac_targets: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        m, w, j = self.sink_count, self.wedge_count, self.jac_count
        if j not in (1, 2):
            raise GraphError("expected one or two Jacobiator vertices")
        hi = m + w + j
        for pair in self.wedge_targets:
            for t in pair:
                if not 0 <= t < hi:
                    raise GraphError(f"wedge target {t} out of range [0, {hi})")
        for i, triple in enumerate(self.jac_targets):
            if len(set(triple)) != 3:
                raise GraphError(f"Jacobiator targets {triple} are not distinct")
            for t in triple:
                if not 0 <= t < hi:
                    raise GraphError(f"Jacobiator target {t} out of range [0, {hi})")
                if t == m + w + i:
                    raise GraphError("Jacobiator may not target itself")

    @property
    def wedge_count(self) -> int:
        return len(self.wedge_targets)

    @property
    def jac_count(self) -> int:
        return len(self.jac_targets)

    @property
    def key(self):
        return (self.sink_count, self.wedge_targets, self.jac_targets)


def expand_terms(L: LeibnizGraph) -> list[KontsevichGraph]:
    """All labelled Kontsevich graphs of the expansion, each with weight +1.

    Realization vertices take the highest labels: Jacobiator i becomes the
    pair (m+w+2i, m+w+2i+1), the first carrying the first two arguments and
    the second carrying (first vertex, third argument).
    """
    m, w, j = L.sink_count, L.wedge_count, L.jac_count
    n = w + 2 * j
    low = [m + w + 2 * i for i in range(j)]
    high = [m + w + 2 * i + 1 for i in range(j)]

    # unresolved edges onto Jacobiator i carry the sentinel -(i+1)
    def enc(v: int) -> int:
        return -(v - m - w + 1) if v >= m + w else v

    out: list[KontsevichGraph] = []
    rotations = ((0, 1, 2), (1, 2, 0), (2, 0, 1))
    for rots in product(rotations, repeat=j):
        pairs: list[list[int]] = [[enc(a), enc(b)] for a, b in L.wedge_targets]
        for i in range(j):
            t = [enc(x) for x in L.jac_targets[i]]
            r = rots[i]
            pairs.append([t[r[0]], t[r[1]]])
            pairs.append([low[i], t[r[2]]])
        slots = [(k, s) for k, pair in enumerate(pairs) for s in (0, 1)
                 if pair[s] < 0]
        for choice in product((0, 1), repeat=len(slots)):
            resolved = [list(p) for p in pairs]
            for (k, s), up in zip(slots, choice):
                i = -resolved[k][s] - 1
                resolved[k][s] = high[i] if up else low[i]
            out.append(KontsevichGraph(m, n, tuple(tuple(p) for p in resolved)))
    return out


def expand(L: LeibnizGraph, coeff: Fraction | int = 1) -> GraphSum:
    s = GraphSum()
    for g in expand_terms(L):
        s.add_graph(g, coeff)
    return s


def expand_combination(terms) -> GraphSum:
    """Reduced expansion of a list of (LeibnizGraph, coefficient) pairs."""
    s = GraphSum()
    for L, c in terms:
        for g in expand_terms(L):
            s.add_graph(g, c)
    return s


# ---------------------------------------------------------------------------
# canonical form

_LNF_CACHE: dict = {}


def leibniz_normal_form(L: LeibnizGraph) -> tuple[tuple, int]:
    """Canonical encoding and sign of a Leibniz graph.

    Minimizes over wedge relabellings, signed per-wedge swaps, signed
    permutations of each Jacobiator's targets, and (sign-free) interchange
    of the Jacobiator copies; sign 0 for self-antisymmetric patterns.
    """
    key = L.key
    cached = _LNF_CACHE.get(key)
    if cached is not None:
        return cached
    m, w, j = L.sink_count, L.wedge_count, L.jac_count
    best = None
    best_parity = 0
    zero = False
    for rho in permutations(range(j)):
        for pi in permutations(range(w)):
            def relabel(v: int) -> int:
                if v < m:
                    return v
                if v < m + w:
                    return m + pi[v - m]
                return m + w + rho[v - m - w]

            parity = 0
            new_wedges: list[tuple[int, int]] = [(0, 0)] * w
            for k in range(w):
                a, b = L.wedge_targets[k]
                a, b = relabel(a), relabel(b)
                if a > b:
                    a, b = b, a
                    parity ^= 1
                new_wedges[pi[k]] = (a, b)
            new_jacs: list[tuple[int, int, int]] = [(0, 0, 0)] * j
            for i in range(j):
                trip = sorted(relabel(t) for t in L.jac_targets[i])
                orig = [relabel(t) for t in L.jac_targets[i]]
                parity ^= _perm_parity(orig)
                new_jacs[rho[i]] = tuple(trip)
            enc = (tuple(new_wedges), tuple(new_jacs))
            if best is None or enc < best:
                best, best_parity, zero = enc, parity, False
            elif enc == best and parity != best_parity:
                zero = True
    sign = 0 if zero else (1 if best_parity == 0 else -1)
    result = ((m,) + best, sign)
    _LNF_CACHE[key] = result
    return result


def _perm_parity(seq) -> int:
    """Parity (0/1) of the permutation sorting ``seq`` ascending."""
    seq = list(seq)
    parity = 0
    for a in range(len(seq)):
        for b in range(len(seq) - 1 - a):
            if seq[b] > seq[b + 1]:
                seq[b], seq[b + 1] = seq[b + 1], seq[b]
                parity ^= 1
    return parity


# ---------------------------------------------------------------------------
# text formats


def serialize_leibniz(L: LeibnizGraph, c: Fraction | int) -> str:
    parts = [str(L.sink_count), str(L.wedge_count)]
    parts += [str(t) for pair in L.wedge_targets for t in pair]
    for triple in L.jac_targets:
        parts.append("|")
        parts += [str(t) for t in triple]
    parts.append(format_coeff(Fraction(c)))
    return " ".join(parts)


def parse_leibniz_line(line: str) -> tuple[LeibnizGraph, Fraction]:
    toks = line.split()
    if len(toks) < 4 or "|" not in toks:
        raise GraphError(f"bad Leibniz graph line {line!r}")
    try:
        m, w = int(toks[0]), int(toks[1])
    except ValueError as exc:
        raise GraphError(f"bad prefix in {line!r}") from exc
    rest = toks[2:]
    bar = rest.index("|")
    if bar != 2 * w:
        raise GraphError(f"expected {2*w} wedge targets in {line!r}")
    wedge_flat = [int(t) for t in rest[:bar]]
    wedges = tuple((wedge_flat[2 * k], wedge_flat[2 * k + 1]) for k in range(w))
    groups: list[list[str]] = []
    for tok in rest[bar:]:
        if tok == "|":
            groups.append([])
        else:
            groups[-1].append(tok)
    coeff = parse_coeff(groups[-1][-1])
    groups[-1] = groups[-1][:-1]
    jacs = []
    for grp in groups:
        if len(grp) != 3:
            raise GraphError(f"expected 3 Jacobiator targets in {line!r}")
        jacs.append(tuple(int(t) for t in grp))
    return LeibnizGraph(m, wedges, tuple(jacs)), coeff


def serialize_leibniz_placeholder(L: LeibnizGraph, c: Fraction | int) -> str:
    """One-Jacobiator encoding with the placeholder written as a Kontsevich
    graph prefix: wedge pairs, then (t1, t2), then (placeholder, t3)."""
    if L.jac_count != 1:
        raise GraphError("placeholder encoding covers one Jacobiator only")
    m, w = L.sink_count, L.wedge_count
    t1, t2, t3 = L.jac_targets[0]
    flat = [t for pair in L.wedge_targets for t in pair] + [t1, t2, m + w, t3]
    return f"{m} {w + 2} " + " ".join(str(t) for t in flat) + f" {format_coeff(Fraction(c))}"


def parse_leibniz_placeholder_line(line: str) -> tuple[LeibnizGraph, Fraction]:
    toks = line.split()
    try:
        m, n = int(toks[0]), int(toks[1])
    except (ValueError, IndexError) as exc:
        raise GraphError(f"bad prefix in {line!r}") from exc
    w = n - 2
    if w < 0 or len(toks) != 2 + 2 * n + 1:
        raise GraphError(f"wrong token count in {line!r}")
    flat = [int(t) for t in toks[2:2 + 2 * n]]
    coeff = parse_coeff(toks[-1])
    wedges = tuple((flat[2 * k], flat[2 * k + 1]) for k in range(w))
    for pair in wedges:
        for t in pair:
            if t > m + w:
                raise GraphError(f"wedge edge onto hidden vertex in {line!r}")
    if flat[2 * w + 2] != m + w:
        raise GraphError(f"expected placeholder {m + w} in {line!r}")
    jac = (flat[2 * w], flat[2 * w + 1], flat[2 * w + 3])
    return LeibnizGraph(m, wedges, (jac,)), coeff


# ---------------------------------------------------------------------------
# ansatz generation

LINEAR_CLASS_ORDER = ("jac3", "jac2", "jac1-pair", "jac1-split", "jac0-pair", "jac0-split")


def _pair_options(v: int, others: list[int], jac: int, tadpoles: bool) -> list[tuple[int, int]]:
    cand = ([v] if tadpoles else []) + others + [jac]
    return [tuple(sorted(p)) for p in combinations(sorted(cand), 2)]


def _free_options(v: int, others: list[int], jac: int, tadpoles: bool) -> list[int]:
    return sorted(([v] if tadpoles else []) + others + [jac])


def generate_linear_classes(tadpoles: bool = True) -> dict[str, list[LeibnizGraph]]:
    """Tri-vector Leibniz ansatz: 3 wedges + 1 Jacobiator, sinks of in-degree 1.

    Patterns are enumerated per structural class with a fixed canonical
    assignment of sinks to the vertices standing on them; the sink
    permutations are restored downstream by skew-symmetrization.
    """
    w1, w2, w3, jac = 3, 4, 5, 6
    po = lambda v, others: _pair_options(v, others, jac, tadpoles)
    fo = lambda v, others: _free_options(v, others, jac, tadpoles)
    classes: dict[str, list[LeibnizGraph]] = {name: [] for name in LINEAR_CLASS_ORDER}

    def mk(wedges, jt):
        return LeibnizGraph(3, tuple(wedges), (tuple(jt),))

    # Jacobiator on all three sinks
    for p1 in po(w1, [w2, w3]):
        for p2 in po(w2, [w1, w3]):
            for p3 in po(w3, [w1, w2]):
                classes["jac3"].append(mk([p1, p2, p3], (0, 1, 2)))
    # Jacobiator on two sinks, one wedge on the remaining sink
    for t in (w1, w2, w3):
        for x in fo(w1, [w2, w3]):
            for p2 in po(w2, [w1, w3]):
                for p3 in po(w3, [w1, w2]):
                    classes["jac2"].append(mk([(0, x), p2, p3], (1, 2, t)))
    # Jacobiator on one sink, one wedge on both remaining sinks
    for ta, tb in combinations((w1, w2, w3), 2):
        for p2 in po(w2, [w1, w3]):
            for p3 in po(w3, [w1, w2]):
                classes["jac1-pair"].append(mk([(0, 1), p2, p3], (2, ta, tb)))
    # Jacobiator on one sink, two wedges on one remaining sink each
    for ta, tb in combinations((w1, w2, w3), 2):
        for x in fo(w1, [w2, w3]):
            for y in fo(w2, [w1, w3]):
                for p3 in po(w3, [w1, w2]):
                    classes["jac1-split"].append(mk([(0, x), (1, y), p3], (2, ta, tb)))
    # Jacobiator on no sink, one wedge on two sinks
    for x in fo(w2, [w1, w3]):
        for p3 in po(w3, [w1, w2]):
            classes["jac0-pair"].append(mk([(0, 1), (2, x), p3], (w1, w2, w3)))
    # Jacobiator on no sink, every wedge on one sink
    for x in fo(w1, [w2, w3]):
        for y in fo(w2, [w1, w3]):
            for z in fo(w3, [w1, w2]):
                classes["jac0-split"].append(mk([(0, x), (1, y), (2, z)], (w1, w2, w3)))
    return classes


def generate_ansatz_linear(tadpoles: bool = True) -> list[LeibnizGraph]:
    classes = generate_linear_classes(tadpoles)
    out: list[LeibnizGraph] = []
    for name in LINEAR_CLASS_ORDER:
        out.extend(classes[name])
    return out


def generate_ansatz_quadratic(tadpoles: bool = True) -> list[LeibnizGraph]:
    """Bilinear-in-Jacobiator tri-vector patterns: one wedge, two Jacobiators.

    Each Jacobiator's targets are pairwise distinct (hence no Jacobiator hits
    the other copy with more than one arrow) and each sink has in-degree 1.
    Up to relabelling sinks and interchanging the two copies there are eight
    such patterns with tadpoles allowed, three without.
    """
    wedge, jacA, jacB = 3, 4, 5
    out: list[LeibnizGraph] = []
    # one Jacobiator on two sinks, the other on the third
    wedge_pairs = ([(wedge, jacA), (wedge, jacB)] if tadpoles else []) + [(jacA, jacB)]
    for third in (wedge, jacB):
        for wp in wedge_pairs:
            out.append(LeibnizGraph(3, (wp,), ((0, 1, third), (2, wedge, jacA))))
    # both Jacobiators on one sink each, the wedge on the third
    xs = ([wedge] if tadpoles else []) + [jacA]
    for x in xs:
        out.append(LeibnizGraph(3, ((2, x),), ((0, wedge, jacB), (1, wedge, jacA))))
    return out


def generate_bivector_leibniz(tadpoles: bool = True) -> list[LeibnizGraph]:
    """All bi-vector Leibniz graphs: two sinks, two wedges, one Jacobiator.

    Enumerated over every sink assignment and deduplicated by the canonical
    form; used for the cohomological (non)triviality run-through.
    """
    w1, w2, jac = 2, 3, 4
    seen = {}
    sources = (w1, w2, jac)
    for s0 in sources:
        for s1 in sources:
            ground = {w1: [], w2: [], jac: []}
            ground[s0].append(0)
            ground[s1].append(1)
            if len(ground[jac]) > 2:
                continue
            jac_free = [list(c) for c in combinations(
                [v for v in (w1, w2)], 3 - len(ground[jac]))]
            w1_free = _slot_options(w1, [w2], jac, 2 - len(ground[w1]), tadpoles)
            w2_free = _slot_options(w2, [w1], jac, 2 - len(ground[w2]), tadpoles)
            for jf in jac_free:
                jt = tuple(ground[jac] + jf)
                if len(set(jt)) != 3:
                    continue
                for f1 in w1_free:
                    for f2 in w2_free:
                        p1 = tuple(sorted(ground[w1] + list(f1)))
                        p2 = tuple(sorted(ground[w2] + list(f2)))
                        if len(p1) != 2 or len(p2) != 2 or p1[0] == p1[1] or p2[0] == p2[1]:
                            continue
                        L = LeibnizGraph(2, (p1, p2), (jt,))
                        enc, sign = leibniz_normal_form(L)
                        if sign != 0 and enc not in seen:
                            seen[enc] = L
    return [seen[k] for k in sorted(seen)]


def _slot_options(v, others, jac, free, tadpoles):
    cand = ([v] if tadpoles else []) + others + [jac]
    if free == 0:
        return [()]
    if free == 1:
        return [(x,) for x in sorted(cand)]
    return [p for p in combinations(sorted(cand), 2)]


def read_leibniz_file(text: str, placeholder: bool = False) -> list[tuple[LeibnizGraph, Fraction]]:
    out = []
    parse = parse_leibniz_placeholder_line if placeholder else parse_leibniz_line
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            out.append(parse(line))
        except GraphError as exc:
            raise GraphError(f"line {lineno}: {exc}") from exc
    return out
