"""Independent symbolic oracle: exact polynomial multivectors on R^d.

Everything here works componentwise with multivariate polynomials over the
rationals, with no reference to the graph machinery, so that evaluating a
graph sum (``eval_graph``) and the closed component formulas (``gamma1``,
``gamma2``, ``schouten_components``) can be compared as genuinely
independent computations.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
import random

from .graphs import GraphError, GraphSum, KontsevichGraph


class Polynomial:
    """Multivariate polynomial over Q, keyed by exponent tuples."""

    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms: dict | None = None):
        self.dim = dim
        self.terms: dict[tuple[int, ...], Fraction] = terms or {}

    @classmethod
    def zero(cls, dim: int) -> "Polynomial":
        return cls(dim)

    @classmethod
    def const(cls, dim: int, c) -> "Polynomial":
        c = _num(c)
        return cls(dim, {(0,) * dim: c} if c else {})

    @classmethod
    def var(cls, dim: int, i: int) -> "Polynomial":
        expo = [0] * dim
        expo[i] = 1
        return cls(dim, {tuple(expo): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, Polynomial) and self.dim == other.dim and self.terms == other.terms

    def __hash__(self):
        return hash((self.dim, frozenset(self.terms.items())))

    def __add__(self, other: "Polynomial") -> "Polynomial":
        out = dict(self.terms)
        get = out.get
        for e, c in other.terms.items():
            new = get(e, 0) + c
            if new:
                out[e] = new
            else:
                out.pop(e, None)
        return Polynomial(self.dim, out)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.dim, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return self.scaled(other)
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out: dict[tuple[int, ...], Fraction | int] = {}
        get = out.get
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = get(e, 0) + c1 * c2
        for e in [e for e, c in out.items() if not c]:
            del out[e]
        return Polynomial(self.dim, out)

    __rmul__ = __mul__

    def scaled(self, c) -> "Polynomial":
        c = _num(c)
        if not c:
            return Polynomial(self.dim)
        return Polynomial(self.dim, {e: v * c for e, v in self.terms.items()})

    def __pow__(self, k: int) -> "Polynomial":
        out = Polynomial.const(self.dim, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def diff(self, i: int) -> "Polynomial":
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = c * e[i]
        return Polynomial(self.dim, out)

    def diff_multi(self, idxs) -> "Polynomial":
        p = self
        for i in idxs:
            if p.is_zero():
                break
            p = p.diff(i)
        return p

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        # canonical graded-lexicographic order, highest degree first
        keys = sorted(self.terms, key=lambda e: (-sum(e), tuple(-x for x in e)))
        parts = []
        for e in keys:
            c = self.terms[e]
            mono = "*".join(f"x{i+1}^{k}" if k > 1 else f"x{i+1}"
                            for i, k in enumerate(e) if k)
            if mono:
                body = mono if abs(c) == 1 else f"{_fmt(abs(c))}*{mono}"
            else:
                body = _fmt(abs(c))
            parts.append(("-" if c < 0 else "+", body))
        sign0, body0 = parts[0]
        text = ("-" if sign0 == "-" else "") + body0
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


def _num(c):
    """Normalize a coefficient: plain int when integral, Fraction otherwise."""
    if isinstance(c, int):
        return c
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else c


def _fmt(c) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class PolyMultivector:
    """Totally antisymmetric p-vector with polynomial components.

    Components are stored on strictly increasing index tuples; access with a
    permuted tuple picks up the permutation sign, repeated indices give 0.
    """

    __slots__ = ("dim", "arity", "comps", "_dcache")

    def __init__(self, dim: int, arity: int, comps: dict | None = None):
        self.dim = dim
        self.arity = arity
        self.comps: dict[tuple[int, ...], Polynomial] = comps or {}
        self._dcache: dict | None = None

    def component(self, idx: tuple[int, ...]) -> Polynomial:
        if len(set(idx)) != len(idx):
            return Polynomial.zero(self.dim)
        order, sign = _sort_sign(idx)
        p = self.comps.get(order)
        if p is None:
            return Polynomial.zero(self.dim)
        return p if sign == 1 else -p

    def set_component(self, idx: tuple[int, ...], p: Polynomial) -> None:
        order, sign = _sort_sign(idx)
        if sign == 0:
            raise GraphError("repeated index in multivector component")
        if p.is_zero():
            self.comps.pop(order, None)
        else:
            self.comps[order] = p if sign == 1 else -p

    def add_component(self, idx: tuple[int, ...], p: Polynomial) -> None:
        self.set_component(idx, self.component(idx) + p)

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self.comps.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyMultivector):
            return NotImplemented
        if (self.dim, self.arity) != (other.dim, other.arity):
            return False
        keys = set(self.comps) | set(other.comps)
        return all(self.component(k) == other.component(k) for k in keys)

    def scaled(self, c) -> "PolyMultivector":
        return PolyMultivector(self.dim, self.arity,
                               {k: p.scaled(c) for k, p in self.comps.items() if c})

    def __add__(self, other: "PolyMultivector") -> "PolyMultivector":
        out = PolyMultivector(self.dim, self.arity, dict(self.comps))
        for k, p in other.comps.items():
            out.add_component(k, p)
        return out

    def __sub__(self, other: "PolyMultivector") -> "PolyMultivector":
        return self + other.scaled(-1)

    def lines(self) -> list[str]:
        out = []
        for k in sorted(self.comps):
            out.append(" ".join(str(i + 1) for i in k) + f" {self.comps[k]}")
        return out


def _sort_sign(idx: tuple[int, ...]) -> tuple[tuple[int, ...], int]:
    lst = list(idx)
    sign = 1
    for a in range(len(lst)):
        for b in range(len(lst) - 1 - a):
            if lst[b] > lst[b + 1]:
                lst[b], lst[b + 1] = lst[b + 1], lst[b]
                sign = -sign
            elif lst[b] == lst[b + 1]:
                return tuple(lst), 0
    return tuple(lst), sign


class PolyOperator:
    """Polydifferential operator: per-sink differentiation multi-indices."""

    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms: dict | None = None):
        self.dim = dim
        self.terms: dict[tuple[tuple[int, ...], ...], Polynomial] = terms or {}

    def add(self, key: tuple[tuple[int, ...], ...], p: Polynomial) -> None:
        new = self.terms.get(key, Polynomial.zero(self.dim)) + p
        if new.is_zero():
            self.terms.pop(key, None)
        else:
            self.terms[key] = new

    def add_op(self, other: "PolyOperator", scale=1) -> None:
        for k, p in other.terms.items():
            self.add(k, p.scaled(scale))

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return isinstance(other, PolyOperator) and self.dim == other.dim and self.terms == other.terms

    def to_multivector(self, arity: int | None = None) -> PolyMultivector:
        """Extract the multivector of a differential-order (1,...,1) operator.

        Raises if the operator is not totally antisymmetric in its arguments.
        """
        raw: dict[tuple[int, ...], Polynomial] = {}
        for key, p in self.terms.items():
            if any(len(mi) != 1 for mi in key):
                raise GraphError(f"operator key {key} is not first order per argument")
            idx = tuple(mi[0] for mi in key)
            arity = len(idx)
            raw[idx] = p
        if arity is None:
            raise GraphError("empty operator has no definite arity")
        if not raw:
            return PolyMultivector(self.dim, arity)
        out = PolyMultivector(self.dim, arity)
        seen = set()
        for idx, p in raw.items():
            order, sign = _sort_sign(idx)
            if sign == 0:
                if not p.is_zero():
                    raise GraphError("repeated-index component is nonzero")
                continue
            if order in seen:
                continue
            seen.add(order)
            ref = p if sign == 1 else -p
            for perm_idx in _index_permutations(order):
                _, s2 = _sort_sign(perm_idx)
                got = raw.get(perm_idx, Polynomial.zero(self.dim))
                if got != (ref if s2 == 1 else -ref):
                    raise GraphError("operator is not totally antisymmetric")
            if not ref.is_zero():
                out.comps[order] = ref
        return out


def _index_permutations(order: tuple[int, ...]):
    from itertools import permutations as _perms
    return _perms(order)


# ---------------------------------------------------------------------------
# graph evaluation


def eval_graph(g: KontsevichGraph, P: PolyMultivector) -> PolyOperator:
    """Evaluate a graph on a bi-vector: sum over all edge index assignments.

    Every internal vertex contributes the P component of its (left, right)
    edge indices, differentiated by the indices of its incoming edges; sink
    multi-indices collect the indices of edges into each sink.  Assignments
    are enumerated depth-first so that a vanishing vertex factor prunes the
    whole subtree.
    """
    if P.arity != 2:
        raise GraphError("eval_graph expects a bi-vector")
    d = P.dim
    m, n = g.sink_count, g.internal_count
    op = PolyOperator(d)

    maxdeg = max((p.degree() for p in P.comps.values()), default=-1)
    indeg = [0] * (m + n)
    for a, b in g.targets:
        indeg[a] += 1
        indeg[b] += 1
    if any(indeg[m + k] > maxdeg for k in range(n)):
        return op

    pairs = [(i, j) for i in range(d) for j in range(d)
             if i != j and not P.component((i, j)).is_zero()]
    if not pairs:
        return op

    incoming: list[list[tuple[int, int]]] = [[] for _ in range(m + n)]
    for k, (a, b) in enumerate(g.targets):
        incoming[a].append((k, 0))
        incoming[b].append((k, 1))

    if P._dcache is None:
        P._dcache = {}
    dcache = P._dcache

    def deriv(pair: tuple[int, int], idxs: tuple[int, ...]) -> Polynomial:
        key = (pair, idxs)
        p = dcache.get(key)
        if p is None:
            p = P.component(pair).diff_multi(idxs)
            dcache[key] = p
        return p

    # vertex k's factor is computable once k and all sources of its
    # incoming edges are assigned
    ready_at = []
    for k in range(n):
        srcs = [src for src, _ in incoming[m + k]]
        ready_at.append(max([k] + srcs))
    completed_at = [[] for _ in range(n)]
    for k in range(n):
        completed_at[ready_at[k]].append(k)

    one = Polynomial.const(d, 1)
    assign: list[tuple[int, int]] = [(0, 0)] * n

    def walk(t: int, partial: Polynomial) -> None:
        if t == n:
            key = tuple(tuple(sorted(assign[src][slot] for src, slot in incoming[s]))
                        for s in range(m))
            op.add(key, partial)
            return
        for pair in pairs:
            assign[t] = pair
            factor = partial
            for v in completed_at[t]:
                idxs = tuple(sorted(assign[src][slot] for src, slot in incoming[m + v]))
                dp = deriv(assign[v], idxs)
                if dp.is_zero():
                    factor = None
                    break
                factor = factor * dp
            if factor is not None:
                walk(t + 1, factor)

    walk(0, one)
    return op


def eval_graph_sum(s: GraphSum, P: PolyMultivector) -> PolyOperator:
    out = PolyOperator(P.dim)
    for g, c in s.graphs():
        out.add_op(eval_graph(g, P), c)
    return out


# ---------------------------------------------------------------------------
# closed component formulas


def gamma1(P: PolyMultivector) -> PolyMultivector:
    """First tetrahedral generator, computed from its index formula."""
    d = P.dim
    out = PolyMultivector(d, 2)
    nz = [(k, kp) for k in range(d) for kp in range(d)
          if k != kp and not P.component((k, kp)).is_zero()]
    for i in range(d):
        for j in range(i + 1, d):
            pij = P.component((i, j))
            if pij.is_zero():
                continue
            total = Polynomial.zero(d)
            for k, kp in nz:
                t1 = pij.diff(k)
                if t1.is_zero():
                    continue
                for l, lp in nz:
                    t2 = t1.diff(l)
                    if t2.is_zero():
                        continue
                    for mm, mp in nz:
                        t3 = t2.diff(mm)
                        if t3.is_zero():
                            continue
                        term = (t3 * P.component((k, kp)).diff(lp)
                                * P.component((l, lp)).diff(mp)
                                * P.component((mm, mp)).diff(kp))
                        if not term.is_zero():
                            total = total + term
            if not total.is_zero():
                out.set_component((i, j), total)
    return out


def gamma2_prime(P: PolyMultivector) -> list[list[Polynomial]]:
    """Second tetrahedral generator before antisymmetrization, as a full matrix."""
    d = P.dim
    mat = [[Polynomial.zero(d) for _ in range(d)] for _ in range(d)]
    nz = [(a, b) for a in range(d) for b in range(d)
          if a != b and not P.component((a, b)).is_zero()]
    for i, j in nz:
        pij = P.component((i, j))
        for k, mm in nz:
            pkm = P.component((k, mm))
            t1 = pij.diff(k)
            if t1.is_zero():
                continue
            for kp, l in nz:
                t2 = t1.diff(l)
                if t2.is_zero():
                    continue
                s1 = pkm.diff(kp)
                if s1.is_zero():
                    continue
                for mp, lp in nz:
                    s2 = s1.diff(lp)
                    if s2.is_zero():
                        continue
                    term = (t2 * s2 * P.component((kp, l)).diff(mp)
                            * P.component((mp, lp)).diff(j))
                    if not term.is_zero():
                        mat[i][mm] = mat[i][mm] + term
    return mat


def gamma2(P: PolyMultivector) -> PolyMultivector:
    d = P.dim
    mat = gamma2_prime(P)
    out = PolyMultivector(d, 2)
    half = Fraction(1, 2)
    for i in range(d):
        for j in range(i + 1, d):
            comp = (mat[i][j] - mat[j][i]).scaled(half)
            if not comp.is_zero():
                out.set_component((i, j), comp)
    return out


def flow(P: PolyMultivector, a, b) -> PolyMultivector:
    return gamma1(P).scaled(a) + gamma2(P).scaled(b)


def schouten_components(A: PolyMultivector, B: PolyMultivector) -> PolyMultivector:
    """Component Schouten bracket of two bi-vectors (six-term sum per i<j<k)."""
    if A.dim != B.dim:
        raise GraphError("dimension mismatch")
    if A.arity != 2 or B.arity != 2:
        raise GraphError("schouten_components expects bi-vectors")
    d = A.dim
    out = PolyMultivector(d, 3)
    for i in range(d):
        for j in range(i + 1, d):
            for k in range(j + 1, d):
                total = Polynomial.zero(d)
                for s in range(d):
                    total = total + (
                        A.component((s, k)) * B.component((i, j)).diff(s)
                        + B.component((s, k)) * A.component((i, j)).diff(s)
                        + A.component((s, j)) * B.component((k, i)).diff(s)
                        + B.component((s, j)) * A.component((k, i)).diff(s)
                        + A.component((s, i)) * B.component((j, k)).diff(s)
                        + B.component((s, i)) * A.component((j, k)).diff(s))
                if not total.is_zero():
                    out.set_component((i, j, k), total)
    return out


def schouten_bivector_vector(P: PolyMultivector, X: PolyMultivector) -> PolyMultivector:
    """[[P, X]]^{ij} = sum_s X^s d_s P^{ij} + P^{si} d_s X^j - P^{sj} d_s X^i."""
    d = P.dim
    out = PolyMultivector(d, 2)
    for i in range(d):
        for j in range(i + 1, d):
            total = Polynomial.zero(d)
            for s in range(d):
                total = total + (X.component((s,)) * P.component((i, j)).diff(s)
                                 + P.component((s, i)) * X.component((j,)).diff(s)
                                 - P.component((s, j)) * X.component((i,)).diff(s))
            if not total.is_zero():
                out.set_component((i, j), total)
    return out


def vector_commutator(X: PolyMultivector, Y: PolyMultivector) -> PolyMultivector:
    d = X.dim
    out = PolyMultivector(d, 1)
    for i in range(d):
        total = Polynomial.zero(d)
        for s in range(d):
            total = total + (X.component((s,)) * Y.component((i,)).diff(s)
                             - Y.component((s,)) * X.component((i,)).diff(s))
        if not total.is_zero():
            out.set_component((i,), total)
    return out


def jacobian_bracket(f: Polynomial, g: Polynomial) -> PolyMultivector:
    """Poisson structure {u,v} = f * det d(g,u,v)/d(x1,x2,x3) on R^3."""
    if f.dim != 3 or g.dim != 3:
        raise GraphError("jacobian_bracket lives on R^3")
    P = PolyMultivector(3, 2)
    P.set_component((0, 1), f * g.diff(2))
    P.set_component((0, 2), -(f * g.diff(1)))
    P.set_component((1, 2), f * g.diff(0))
    return P


def jacobi_check(P: PolyMultivector) -> bool:
    return schouten_components(P, P).is_zero()


def ratio_scan(P: PolyMultivector, ratios) -> list[tuple[Fraction, Fraction, bool]]:
    """For each (a, b), does [[P, a*G1(P) + b*G2(P)]] vanish identically?"""
    g1 = gamma1(P)
    g2 = gamma2(P)
    out = []
    for a, b in ratios:
        a, b = Fraction(a), Fraction(b)
        q = g1.scaled(a) + g2.scaled(b)
        out.append((a, b, schouten_components(P, q).is_zero()))
    return out


def random_bivector(d: int, max_degree: int, rng: random.Random,
                    coeff_range: int = 3) -> PolyMultivector:
    """Seeded random polynomial bi-vector (generally not Poisson)."""
    exps = [e for e in product(range(max_degree + 1), repeat=d) if sum(e) <= max_degree]
    P = PolyMultivector(d, 2)
    for i in range(d):
        for j in range(i + 1, d):
            terms = {}
            for e in exps:
                c = rng.randint(-coeff_range, coeff_range)
                if c:
                    terms[e] = c
            if terms:
                P.set_component((i, j), Polynomial(d, terms))
    return P


def sparse_random_bivector(d: int, max_degree: int, rng: random.Random,
                           monomials: int = 3, coeff_range: int = 3) -> PolyMultivector:
    """Seeded random bi-vector with few monomials per component.

    Keeps exact evaluation affordable in higher dimension while still
    exercising arbitrary index patterns; at least one component carries a
    full-degree monomial so third derivatives stay nontrivial.
    """
    exps = [e for e in product(range(max_degree + 1), repeat=d) if sum(e) <= max_degree]
    top = [e for e in exps if sum(e) == max_degree]
    P = PolyMultivector(d, 2)
    comps = [(i, j) for i in range(d) for j in range(i + 1, d)]
    forced = rng.choice(comps)
    for i, j in comps:
        if (i, j) != forced and rng.random() < 0.3:
            continue
        terms: dict[tuple[int, ...], int] = {}
        for e in rng.sample(exps, min(monomials, len(exps))):
            c = rng.randint(-coeff_range, coeff_range)
            if c:
                terms[e] = c
        if (i, j) == forced:
            terms[rng.choice(top)] = rng.randint(1, coeff_range)
        if terms:
            P.set_component((i, j), Polynomial(d, terms))
    return P


# ---------------------------------------------------------------------------
# text formats


def parse_polynomial(text: str, dim: int) -> Polynomial:
    """Parse ``+ - * ^`` expressions over rationals and variables x1..xd."""
    toks = _tokenize(text)
    pos = [0]

    def peek():
        return toks[pos[0]] if pos[0] < len(toks) else None

    def take():
        t = peek()
        pos[0] += 1
        return t

    def parse_expr() -> Polynomial:
        t = peek()
        if t in ("+", "-"):
            take()
            p = parse_term()
            p = p if t == "+" else -p
        else:
            p = parse_term()
        while peek() in ("+", "-"):
            op = take()
            q = parse_term()
            p = p + q if op == "+" else p - q
        return p

    def parse_term() -> Polynomial:
        p = parse_factor()
        while peek() == "*":
            take()
            p = p * parse_factor()
        return p

    def parse_factor() -> Polynomial:
        p = parse_atom()
        while peek() == "^":
            take()
            t = take()
            if t is None or not t.isdigit():
                raise GraphError(f"expected integer exponent in {text!r}")
            p = p ** int(t)
        return p

    def parse_atom() -> Polynomial:
        t = take()
        if t is None:
            raise GraphError(f"unexpected end of polynomial {text!r}")
        if t == "(":
            p = parse_expr()
            if take() != ")":
                raise GraphError(f"unbalanced parentheses in {text!r}")
            return p
        if t == "-":
            return -parse_atom()
        if t.startswith("x"):
            i = int(t[1:])
            if not 1 <= i <= dim:
                raise GraphError(f"variable {t} out of range for dimension {dim}")
            return Polynomial.var(dim, i - 1)
        try:
            return Polynomial.const(dim, _num(Fraction(t)))
        except (ValueError, ZeroDivisionError) as exc:
            raise GraphError(f"bad token {t!r} in polynomial {text!r}") from exc

    p = parse_expr()
    if peek() is not None:
        raise GraphError(f"trailing tokens in polynomial {text!r}")
    return p


def _tokenize(text: str) -> list[str]:
    toks = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "+-*^()":
            toks.append(ch)
            i += 1
        elif ch == "x":
            j = i + 1
            while j < len(text) and text[j].isdigit():
                j += 1
            if j == i + 1:
                raise GraphError(f"bad variable at {text[i:]!r}")
            toks.append(text[i:j])
            i = j
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            if j < len(text) and text[j] == "/":
                k = j + 1
                while k < len(text) and text[k].isdigit():
                    k += 1
                j = k
            toks.append(text[i:j])
            i = j
        else:
            raise GraphError(f"bad character {ch!r} in polynomial")
    return toks


def parse_poisson_file(text: str) -> PolyMultivector:
    """First line is the dimension, then ``i j <polynomial>`` lines with i < j."""
    lines = [l.strip() for l in text.splitlines()]
    lines = [l for l in lines if l and not l.startswith("#")]
    if not lines:
        raise GraphError("empty structure file")
    try:
        d = int(lines[0])
    except ValueError as exc:
        raise GraphError(f"bad dimension line {lines[0]!r}") from exc
    P = PolyMultivector(d, 2)
    for line in lines[1:]:
        parts = line.split(None, 2)
        if len(parts) != 3:
            raise GraphError(f"bad component line {line!r}")
        i, j = int(parts[0]), int(parts[1])
        if not 1 <= i < j <= d:
            raise GraphError(f"component indices {i} {j} out of range")
        P.add_component((i - 1, j - 1), parse_polynomial(parts[2], d))
    return P


def factorization_identity_check(P: PolyMultivector) -> bool:
    """Operator identity behind the factorization, on an arbitrary bi-vector.

    Evaluates the 39-graph tri-vector and, independently, the raw 201-term
    Kontsevich expansion of the reference Leibniz-graph solution (labelled
    terms, no graph-level reduction) and compares the two polydifferential
    operators exactly.  The identity holds whether or not P is Poisson.
    """
    from fractions import Fraction as _Fr
    from .leibniz import expand_terms
    from .ops import lhs_trivector
    from .reference import PRESENTATION_SCALE, solution_rows_printed

    lhs_op = eval_graph_sum(lhs_trivector(_Fr(1, 4), _Fr(3, 2)), P)
    rhs_op = PolyOperator(P.dim)
    cache: dict = {}
    for L, c in solution_rows_printed():
        for g in expand_terms(L):
            op = cache.get(g.key)
            if op is None:
                op = eval_graph(g, P)
                cache[g.key] = op
            rhs_op.add_op(op, _Fr(c, PRESENTATION_SCALE))
    return lhs_op == rhs_op


def reference_structure() -> PolyMultivector:
    """The degenerate Jacobian-class structure f = x1, g = x1*x2*x3 + x2."""
    f = Polynomial.var(3, 0)
    g = (Polynomial.var(3, 0) * Polynomial.var(3, 1) * Polynomial.var(3, 2)
         + Polynomial.var(3, 1))
    return jacobian_bracket(f, g)
