import random
from fractions import Fraction

import pytest

from tetraflow import reference
from tetraflow.graphs import GraphError, GraphSum, KontsevichGraph
from tetraflow.leibniz import LeibnizGraph, expand
from tetraflow.linsys import (LinearSystem, assemble, build_columns,
                              minimize_support, solve, verify_factorization)


def toy_system(columns, rhs):
    ncols = len(columns)
    nrows = max((max(col) + 1 for col in columns if col), default=len(rhs))
    nrows = max(nrows, len(rhs))
    return LinearSystem(
        row_keys=list(range(nrows)),
        col_ids=[f"c{j}" for j in range(ncols)],
        columns=[{i: Fraction(v) for i, v in col.items()} for col in columns],
        rhs={i: Fraction(v) for i, v in rhs.items() if v},
    )


def residual(sys, x):
    res = dict(sys.rhs)
    for j, v in x.items():
        for i, a in sys.columns[j].items():
            res[i] = res.get(i, Fraction(0)) - a * v
    return {i: v for i, v in res.items() if v}


def test_solver_random_consistent_systems():
    rng = random.Random(2026)
    for _ in range(40):
        nrows, ncols = rng.randint(1, 8), rng.randint(1, 8)
        columns = []
        for _ in range(ncols):
            col = {i: rng.randint(-3, 3) for i in rng.sample(range(nrows), rng.randint(0, nrows))}
            columns.append({i: v for i, v in col.items() if v})
        x_true = {j: rng.randint(-2, 2) for j in range(ncols)}
        rhs = {}
        for j, v in x_true.items():
            for i, a in columns[j].items():
                rhs[i] = rhs.get(i, 0) + a * v
        sys = toy_system(columns, rhs)
        space = solve(sys)
        assert space.feasible
        assert not residual(sys, space.particular)
        for vec in space.nullspace:
            assert not residual(toy_system(columns, {}), vec)


def test_solver_infeasible_witness():
    sys = toy_system([{0: 1}, {0: 2}], {0: 1, 1: 5})
    space = solve(sys)
    assert not space.feasible
    assert space.witness_row == 1


def test_solver_infeasible_after_elimination():
    # x0 + x1 = 1, x0 + x1 = 2
    sys = toy_system([{0: 1, 1: 1}, {0: 1, 1: 1}], {0: 1, 1: 2})
    assert not solve(sys).feasible


def test_minimize_support_duplicate_columns():
    sys = toy_system([{0: 1}, {0: 1}, {0: 1}], {0: 3})
    space = solve(sys)
    x = minimize_support(space)
    assert len(x) == 1
    assert not residual(sys, x)


def test_minimize_support_unique_solution_unchanged():
    sys = toy_system([{0: 1}, {1: 1}], {0: 2, 1: 3})
    space = solve(sys)
    assert minimize_support(space) == {0: Fraction(2), 1: Fraction(3)}


def test_minimize_support_zero_rhs():
    sys = toy_system([{0: 1}, {0: 2}], {})
    assert minimize_support(solve(sys)) == {}


def test_minimize_support_rejects_infeasible():
    with pytest.raises(GraphError):
        minimize_support(solve(toy_system([{0: 1}], {0: 1, 1: 1})))


def test_assemble_trivial_cases(lhs39):
    cols = build_columns([LeibnizGraph(3, ((0, 4), (1, 5), (2, 3)), ((3, 4, 5),))])
    # absent target graph -> infeasible
    lone = GraphSum.single(KontsevichGraph(3, 5, ((0, 1), (2, 3), (3, 4), (3, 5), (3, 6))), 1)
    sp = solve(assemble(lone, [(cid, col) for cid, col, _ in cols]))
    assert not sp.feasible
    # homogeneous system: x = 0 works
    sp0 = solve(assemble(GraphSum(), [(cid, col) for cid, col, _ in cols]))
    assert sp0.feasible and sp0.particular == {}


def test_verify_factorization_cases(lhs39):
    sol = reference.solution_rows()
    assert verify_factorization(sol, lhs39)
    bad = [(L, c if k else c + 1) for k, (L, c) in enumerate(sol)]
    assert not verify_factorization(bad, lhs39)
    assert verify_factorization([], GraphSum())


def test_dump_format():
    sys = toy_system([{0: 1, 1: -2}], {0: 5})
    text = sys.dump()
    assert "0=1" in text and "rhs=5" in text


def test_unbalanced_ratio_is_infeasible(columns):
    """Any ratio other than 1:6 admits no Leibniz-graph factorization."""
    from tetraflow.ops import lhs_trivector
    target = lhs_trivector(1, 1)
    sp = solve(assemble(target, [(cid, col) for cid, col, _ in columns]))
    assert not sp.feasible
    assert sp.witness_row is not None


def test_solver_reproduction_shares_columns(lhs39, ansatz, columns):
    from tetraflow.linsys import solve_factorization
    result = solve_factorization(lhs39, ansatz, columns=columns)
    assert result.feasible and result.support <= 27
    assert verify_factorization(result.flattened, lhs39)
    # nontrivial nullspace: the factorizing operator is not unique
    assert len(result.space.free_cols) > 0


def test_nontrivial_empty_target_feasible():
    from tetraflow.leibniz import generate_bivector_leibniz, expand
    from tetraflow.ops import alternation, one_vector_graphs, schouten_bracket, wedge_sum
    cols = []
    for g in one_vector_graphs(3):
        col = schouten_bracket(wedge_sum(), GraphSum.single(g, 1), 2, 1)
        if col:
            cols.append(("x", col))
    for L in generate_bivector_leibniz():
        col = alternation(expand(L), 2)
        if col:
            cols.append(("n", col))
    sp = solve(assemble(GraphSum(), cols))
    assert sp.feasible and sp.particular == {}


def test_quadratic_sanity_inversion():
    """A target equal to one bilinear pattern's expansion is solved by that
    pattern with coefficient 1."""
    from tetraflow.leibniz import generate_ansatz_quadratic
    quad = build_columns(generate_ansatz_quadratic())
    cid, col, L = quad[0]
    sp = solve(assemble(col, [(c, s) for c, s, _ in quad]))
    assert sp.feasible
    x = minimize_support(sp)
    assert x == {0: Fraction(1)}
