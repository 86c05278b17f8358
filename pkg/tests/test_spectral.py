import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bispec.errors import ConvergenceError, GraphError, ParameterError
from bispec.families import family
from bispec.graph import BipartiteGraph, complete, empty, is_connected, new_graph, quasi_complement
from bispec.spectral import (
    COMPARISON_SLACK,
    DEFAULT_TOL,
    all_bounds,
    check_nosal,
    check_q_lower,
    check_q_upper,
    check_rho_lower,
    compare,
    lemma35_table,
    lemma36_chain,
    power_iteration,
    q1_quartic,
    q_radius,
    rho,
    rho_Q1_closed_form,
    rho_vector,
    signless_laplacian,
    spectral_report,
)
from oracles import eig_q, eig_rho, full_adjacency


@st.composite
def graphs(draw, max_side=7):
    m = draw(st.integers(1, max_side))
    n = draw(st.integers(1, max_side))
    rows = tuple(draw(st.integers(0, (1 << n) - 1)) for _ in range(m))
    return BipartiteGraph(m, n, rows)


def test_complete_graph_values():
    assert abs(rho(complete(5, 3)) - math.sqrt(15)) < 1e-9
    assert abs(q_radius(complete(2, 5)) - 7) < 1e-9


def test_edgeless_is_exactly_zero():
    for g in (empty(3, 4), empty(0, 0), empty(2, 0)):
        assert rho(g) == 0.0 and q_radius(g) == 0.0


def test_q_3_1_has_radius_two():
    assert abs(rho(family("Q", 3, 1)) - 2) < 1e-9


@settings(max_examples=200)
@given(graphs())
def test_agrees_with_dense_eigensolver(g):
    assert abs(rho(g) - eig_rho(g)) < 1e-8
    assert abs(q_radius(g) - eig_q(g)) < 1e-8
    assert rho(g) <= q_radius(g) + 1e-12


@settings(max_examples=100)
@given(graphs())
def test_report_residuals_reverified(g):
    rep = spectral_report(g)
    assert rep.rho_residual <= DEFAULT_TOL and rep.q_residual <= DEFAULT_TOL
    if g.edge_count:
        a = full_adjacency(g)
        v = rho_vector(g)
        assert np.linalg.norm(a @ v - rep.rho * v) / np.linalg.norm(v) <= DEFAULT_TOL
        assert np.all(v >= 0)
        q_mat = np.diag(a.sum(axis=1)) + a
        _, w, _, _ = power_iteration(signless_laplacian(g))
        assert np.linalg.norm(q_mat @ w - rep.q * w) <= DEFAULT_TOL


def test_report_reference_values():
    rep = spectral_report(complete(3, 3))
    assert rep.reference == {"complete_rho": 3.0, "complete_q": 6.0}
    assert spectral_report(family("Q", 4, 1)).reference == {}


def test_disconnected_takes_largest_component():
    for n in range(2, 10):
        for k in range(1, n // 2 + 1):
            assert abs(rho(family("R", n, k)) - (n - k)) < 1e-9
    assert abs(q_radius(family("R", 6, 1)) - 10) < 1e-9


def test_perron_monotonicity_on_connected_graphs():
    rng = np.random.default_rng(11)
    done = 0
    while done < 1000:
        m, n = (int(v) for v in rng.integers(2, 7, size=2))
        a = rng.random((m, n)) < rng.uniform(0.3, 0.9)
        g = new_graph(m, n, list(zip(*np.nonzero(a))))
        missing = list(zip(*np.nonzero(~a)))
        if not missing or not is_connected(g):
            continue
        i, j = missing[int(rng.integers(len(missing)))]
        bigger = new_graph(m, n, list(g.edges()) + [(i, j)])
        assert rho(bigger) - rho(g) > 1e-10
        done += 1


def test_eigenvector_is_constant_on_blocks_of_q_n_1():
    # X1 = {0}, X2 = {1..n-1}, Y1 = {0..n-3}, Y2 = {n-2, n-1}
    for n in (4, 6, 9):
        g = family("Q", n, 1)
        v = rho_vector(g)
        x, y = v[:n], v[n:]
        for block in (x[1:], y[: n - 2], y[n - 2:]):
            assert np.ptp(block) < 1e-8


def test_power_iteration_contract():
    with pytest.raises(ValueError):
        power_iteration(np.eye(2), tol=0)
    m = np.array([[2.0, 1.0], [1.0, 1.9]])
    with pytest.raises(ConvergenceError) as info:
        power_iteration(m @ m, tol=1e-15, max_iter=2)
    assert info.value.residual > 0
    # all-ones start orthogonal to the image: fallback start still converges
    theta, _, _, _ = power_iteration(np.array([[1.0, -1.0], [-1.0, 1.0]]))
    assert abs(theta - 2) < 1e-9


# closed form


def test_closed_form_examples():
    assert rho_Q1_closed_form(3) == pytest.approx(2, abs=1e-12)
    assert rho_Q1_closed_form(4) == pytest.approx(math.sqrt(5 + math.sqrt(13)), abs=1e-12)
    with pytest.raises(ParameterError):
        rho_Q1_closed_form(2)


def test_closed_form_matches_solver_and_quartic():
    for n in range(3, 51):
        r = rho(family("Q", n, 1))
        assert abs(r - rho_Q1_closed_form(n)) < 1e-7
        assert abs(q1_quartic(n, r)) < 1e-5


# bound checks


def test_nosal_examples():
    assert check_nosal(complete(4, 4)).satisfied
    assert abs(check_nosal(complete(4, 4)).slack) < 1e-9
    c = check_nosal(new_graph(3, 3, [(0, 0), (1, 1), (2, 2)]))
    assert c.satisfied and abs(c.left - 1) < 1e-12 and abs(c.right - math.sqrt(3)) < 1e-12


def test_q_upper_examples():
    c = check_q_upper(complete(5, 5))
    assert c.satisfied and abs(c.slack) < 1e-9
    for n in range(3, 12):
        c = check_q_upper(family("Q", n, 1))
        assert c.satisfied and abs(c.right - (2 * n - 2 + 2 / n)) < 1e-12 and c.left < 2 * n - 1
    with pytest.raises(GraphError):
        check_q_upper(complete(3, 4))
    assert check_q_upper(complete(3, 4), embed=True).satisfied
    with pytest.raises(GraphError):
        check_q_upper(complete(2, 4), embed=True)


def test_lower_bounds_on_p4():
    p4 = new_graph(2, 2, [(0, 0), (0, 1), (1, 1)])
    c = check_rho_lower(p4)
    golden = (1 + math.sqrt(5)) / 2  # largest root of x^4 - 3x^2 + 1
    assert abs(c.left - math.sqrt(2)) < 1e-12 and abs(c.right - golden) < 1e-9 and c.satisfied
    assert check_q_lower(p4).satisfied


def test_lower_bounds_tight_on_semiregular():
    for m, n in [(2, 5), (3, 3), (4, 1)]:
        assert abs(check_rho_lower(complete(m, n)).slack) < 1e-7
        assert abs(check_q_lower(complete(m, n)).slack) < 1e-7


def test_lower_bounds_need_an_edge():
    with pytest.raises(GraphError):
        check_rho_lower(empty(2, 2))
    with pytest.raises(GraphError):
        check_q_lower(empty(2, 2))


def test_all_bounds_selection():
    assert len(all_bounds(complete(3, 3))) == 4
    assert len(all_bounds(complete(2, 4))) == 3
    assert len(all_bounds(empty(3, 3))) == 2


def test_compare_semantics():
    assert compare("a", 1.0, "<=", 1.0 - COMPARISON_SLACK / 2).satisfied
    assert not compare("a", 1.0, "<=", 1.0 - 2 * COMPARISON_SLACK).satisfied
    tie = compare("a", 1.0, "<", 1.0 + COMPARISON_SLACK / 2)
    assert not tie.satisfied and tie.indeterminate
    assert compare("a", 2.0, ">", 1.0).satisfied
    assert compare("a", 1.0, "=", 1.0 + 1e-9).satisfied
    with pytest.raises(ValueError):
        compare("a", 1.0, "!=", 2.0)


@given(st.floats(-10, 10), st.floats(-10, 10))
def test_bound_check_invariant(left, right):
    c = compare("x", left, "<=", right)
    assert c.satisfied == (left <= right + COMPARISON_SLACK)
    assert c.slack == right - left
    assert len(c.csv_row()) == 5


def test_comparison_table_example():
    checks = {c.bound: c for c in lemma35_table(5, 1)}
    assert all(c.satisfied and not c.indeterminate for c in checks.values())
    assert checks["rho(Q)>rho(K_{n,n-k-1})"].left > math.sqrt(15)
    assert checks["q(S)>q(K_{n,n-k-1})"].left > 8
    assert abs(checks["rho(R^)=rho(K_{k,n-k})"].left - 2) < 1e-9
    assert abs(checks["q(S^)=q(K_{n-k,k})"].left - 5) < 1e-9
    assert abs(checks["q(T^)=q(K_{n-k-1,k+1})"].left - 5) < 1e-9


def test_comparison_table_boundary_and_range():
    for k in range(1, 6):
        checks = lemma35_table(2 * k + 1, k)
        assert len(checks) == 14
        assert all(c.satisfied for c in checks)
    assert len(lemma35_table(8, 2)) == 16
    with pytest.raises(ParameterError):
        lemma35_table(4, 2)
    with pytest.raises(ParameterError):
        lemma35_table(5, 0)


def test_quasi_complement_of_r_has_biclique_radius():
    for n, k in [(6, 2), (7, 3), (5, 1)]:
        assert abs(rho(quasi_complement(family("R", n, k))) - math.sqrt(k * (n - k))) < 1e-9


def test_chain_at_three_and_ten():
    c3 = lemma36_chain(3)
    assert all(c.satisfied for c in c3)
    assert c3[1].relation == "=" and abs(c3[1].left - 2) < 1e-9 and abs(c3[1].right - 2) < 1e-9
    c10 = lemma36_chain(10)
    assert all(c.satisfied and not c.indeterminate for c in c10)
    assert c10[1].relation == "<"
    with pytest.raises(ParameterError):
        lemma36_chain(2)
