"""Largest adjacency and signless-Laplacian eigenvalues by power iteration,
together with the closed-form values and inequalities they are audited against.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import ConvergenceError, GraphError, ParameterError
from .families import family
from .graph import BipartiteGraph, X, Y, add_isolated_vertex, complete, quasi_complement

DEFAULT_TOL = 1e-10
TIGHT_TOL = 1e-13
COMPARISON_SLACK = 1e-7
MAX_ITER = 100_000


def power_iteration(matrix: np.ndarray, tol: float = DEFAULT_TOL, max_iter: int = MAX_ITER):
    """Dominant eigenpair of a symmetric entrywise-nonnegative matrix.

    Starts from the all-ones vector; stops when ``||M v - theta v|| < tol``
    for the unit iterate ``v`` and Rayleigh quotient ``theta``. The absolute
    tolerance is floored at a few ulps of ``||M||`` since nothing below that
    is representable.

    Returns ``(theta, v, iterations, residual)``.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    size = matrix.shape[0]
    if size == 0 or not matrix.any():
        return 0.0, np.ones(size) / math.sqrt(max(size, 1)), 0, 0.0
    floor = 64 * np.finfo(float).eps * np.abs(matrix).sum(axis=1).max()
    target = max(tol, floor)
    v = np.ones(size) / math.sqrt(size)
    if not (matrix @ v).any():
        # start orthogonal to everything the matrix sees
        v = 1.0 + 0.5 * np.sin(np.arange(1, size + 1))
        v /= np.linalg.norm(v)
    residual = math.inf
    for it in range(1, max_iter + 1):
        w = matrix @ v
        theta = float(v @ w)
        residual = float(np.linalg.norm(w - theta * v))
        if residual < target:
            return theta, v, it, residual
        v = w / np.linalg.norm(w)
    raise ConvergenceError(f"power iteration did not converge in {max_iter} steps", residual)


def _rho_eigenpair(g: BipartiteGraph, tol: float):
    """Return (rho, eigvec on X+Y, iterations, adjacency residual)."""
    b = g.biadjacency()
    if g.edge_count == 0:
        return 0.0, None, 0, 0.0
    # B B^T on the smaller side has eigenvalue rho^2 and no +-rho pairing.
    if g.m <= g.n:
        mu, u, its, _ = power_iteration(b @ b.T, tol)
        r = math.sqrt(mu)
        vec = np.concatenate([u, b.T @ u / r])
    else:
        mu, u, its, _ = power_iteration(b.T @ b, tol)
        r = math.sqrt(mu)
        vec = np.concatenate([b @ u / r, u])
    a = g.adjacency()
    residual = float(np.linalg.norm(a @ vec - r * vec) / np.linalg.norm(vec))
    return r, vec, its, residual


def signless_laplacian(g: BipartiteGraph) -> np.ndarray:
    a = g.adjacency()
    return np.diag(a.sum(axis=1)) + a


def _q_eigenpair(g: BipartiteGraph, tol: float):
    if g.edge_count == 0:
        return 0.0, None, 0, 0.0
    theta, v, its, residual = power_iteration(signless_laplacian(g), tol)
    return theta, v, its, residual


def rho(g: BipartiteGraph, tol: float = DEFAULT_TOL) -> float:
    """Adjacency spectral radius."""
    return _rho_eigenpair(g, tol)[0]


def rho_vector(g: BipartiteGraph, tol: float = DEFAULT_TOL) -> np.ndarray | None:
    """Nonnegative Perron vector of the adjacency matrix (X entries first), or None if edgeless."""
    return _rho_eigenpair(g, tol)[1]


def q_radius(g: BipartiteGraph, tol: float = DEFAULT_TOL) -> float:
    """Spectral radius of the signless Laplacian ``D + A``."""
    return _q_eigenpair(g, tol)[0]


def _closed_forms(g: BipartiteGraph) -> dict:
    if g.m and g.n and g.edge_count == g.m * g.n:
        return {"complete_rho": math.sqrt(g.m * g.n), "complete_q": float(g.m + g.n)}
    return {}


@dataclass(frozen=True)
class SpectralReport:
    rho: float
    q: float
    rho_iterations: int
    q_iterations: int
    rho_residual: float
    q_residual: float
    reference: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)


def spectral_report(g: BipartiteGraph, tol: float = DEFAULT_TOL) -> SpectralReport:
    r, _, r_its, r_res = _rho_eigenpair(g, tol)
    q, _, q_its, q_res = _q_eigenpair(g, tol)
    return SpectralReport(r, q, r_its, q_its, r_res, q_res, _closed_forms(g))


def rho_q1_closed_form(n: int) -> float:
    """Spectral radius of Q_n^1: the larger root of
    ``r^4 - (n^2 - 2n + 2) r^2 + 2 (n-1)(n-2) = 0``.
    """
    if n < 3:
        raise ParameterError(f"Q_n^1 needs n >= 3, got {n}")
    a = n * n - 2 * n + 2
    return math.sqrt((a + math.sqrt(a * a - 8 * (n - 1) * (n - 2))) / 2)


def q1_quartic(n: int, r: float) -> float:
    return r**4 - (n * n - 2 * n + 2) * r**2 + 2 * (n - 1) * (n - 2)


# bound checks


@dataclass(frozen=True)
class BoundCheck:
    """``left <relation> right`` evaluated in floating point.

    ``slack`` is ``right - left``. Strict relations within the comparison
    slack are neither satisfied nor violated but ``indeterminate``.
    """

    bound: str
    left: float
    right: float
    relation: str
    satisfied: bool
    slack: float
    indeterminate: bool = False

    def csv_row(self) -> list:
        return [self.bound, repr(self.left), repr(self.right), str(self.satisfied).lower(), repr(self.slack)]


def compare(bound: str, left: float, relation: str, right: float,
            slack: float = COMPARISON_SLACK) -> BoundCheck:
    gap = right - left
    indeterminate = False
    if relation == "<=":
        ok = gap >= -slack
    elif relation == ">=":
        ok = gap <= slack
    elif relation == "=":
        ok = abs(gap) <= slack
    elif relation == "<":
        ok = gap > slack
        indeterminate = abs(gap) <= slack
    elif relation == ">":
        ok = gap < -slack
        indeterminate = abs(gap) <= slack
    else:
        raise ValueError(f"unknown relation {relation!r}")
    return BoundCheck(bound, float(left), float(right), relation, bool(ok), float(gap), indeterminate)


def check_nosal(g: BipartiteGraph, tol: float = DEFAULT_TOL) -> BoundCheck:
    return compare("rho<=sqrt(e)", rho(g, tol), "<=", math.sqrt(g.edge_count))


def check_q_upper(g: BipartiteGraph, tol: float = DEFAULT_TOL, embed: bool = False) -> BoundCheck:
    """``q(G) <= e(G)/n + n`` for balanced ``G`` on ``2n`` vertices.

    With ``embed`` a nearly balanced graph is first padded with an isolated
    vertex on its smaller side.
    """
    if g.m != g.n:
        if embed and abs(g.m - g.n) == 1:
            g = add_isolated_vertex(g, X if g.m < g.n else Y)
        else:
            raise GraphError(f"q upper bound needs a balanced graph, got parts {g.shape}")
    n = g.n
    right = g.edge_count / n + n if n else 0.0
    return compare("q<=e/n+n", q_radius(g, tol), "<=", right)


def _edge_degrees(g: BipartiteGraph):
    if g.edge_count == 0:
        raise GraphError("minimum over edges is undefined for an edgeless graph")
    dx, dy = g.x_degrees(), g.y_degrees()
    return [(dx[i], dy[j]) for i, j in g.edges()]


def check_rho_lower(g: BipartiteGraph, tol: float = DEFAULT_TOL) -> BoundCheck:
    low = min(math.sqrt(a * b) for a, b in _edge_degrees(g))
    return compare("min sqrt(d(u)d(v))<=rho", low, "<=", rho(g, tol))


def check_q_lower(g: BipartiteGraph, tol: float = DEFAULT_TOL) -> BoundCheck:
    low = min(a + b for a, b in _edge_degrees(g))
    return compare("min d(u)+d(v)<=q", float(low), "<=", q_radius(g, tol))


def all_bounds(g: BipartiteGraph, tol: float = DEFAULT_TOL) -> list[BoundCheck]:
    """The four inequalities, skipping those whose precondition ``g`` fails."""
    out = [check_nosal(g, tol)]
    if g.m == g.n or abs(g.m - g.n) == 1:
        out.append(check_q_upper(g, tol, embed=True))
    if g.edge_count:
        out.append(check_rho_lower(g, tol))
        out.append(check_q_lower(g, tol))
    return out


def lemma35_table(n: int, k: int, tol: float = DEFAULT_TOL) -> list[BoundCheck]:
    """Numeric audit of the comparison table for Q, S, R-hat, S-hat and T-hat.

    The T-hat line is included only when ``T_n^k`` exists (``n >= 2k + 2``).
    """
    if k < 1 or n < 2 * k + 1:
        raise ParameterError(f"table needs k >= 1 and n >= 2k+1, got n={n}, k={k}")
    Q, S, R = family("Q", n, k), family("S", n, k), family("R", n, k)
    kb = complete(n, n - k - 1)
    r_kb, q_kb = rho(kb, tol), q_radius(kb, tol)
    sq_big, sq_small = math.sqrt(n * (n - k - 1)), math.sqrt(k * (n - k))
    checks = [
        compare("rho(Q)>rho(K_{n,n-k-1})", rho(Q, tol), ">", r_kb),
        compare("rho(S)>rho(K_{n,n-k-1})", rho(S, tol), ">", r_kb),
        compare("rho(K_{n,n-k-1})=sqrt(n(n-k-1))", r_kb, "=", sq_big),
        compare("q(Q)>q(K_{n,n-k-1})", q_radius(Q, tol), ">", q_kb),
        compare("q(S)>q(K_{n,n-k-1})", q_radius(S, tol), ">", q_kb),
        compare("q(K_{n,n-k-1})=2n-k-1", q_kb, "=", 2 * n - k - 1),
        compare("rho(R^)=rho(K_{k,n-k})", rho(quasi_complement(R), tol), "=", rho(complete(k, n - k), tol)),
        compare("rho(K_{k,n-k})=sqrt(k(n-k))", rho(complete(k, n - k), tol), "=", sq_small),
        compare("rho(S^)=rho(K_{n-k,k})", rho(quasi_complement(S), tol), "=", rho(complete(n - k, k), tol)),
        compare("rho(K_{n-k,k})=sqrt(k(n-k))", rho(complete(n - k, k), tol), "=", sq_small),
        compare("q(R^)=q(K_{k,n-k})", q_radius(quasi_complement(R), tol), "=", q_radius(complete(k, n - k), tol)),
        compare("q(K_{k,n-k})=n", q_radius(complete(k, n - k), tol), "=", n),
        compare("q(S^)=q(K_{n-k,k})", q_radius(quasi_complement(S), tol), "=", q_radius(complete(n - k, k), tol)),
        compare("q(K_{n-k,k})=n", q_radius(complete(n - k, k), tol), "=", n),
    ]
    if n >= 2 * k + 2:
        T = family("T", n, k)
        q_kt = q_radius(complete(n - k - 1, k + 1), tol)
        checks += [
            compare("q(T^)=q(K_{n-k-1,k+1})", q_radius(quasi_complement(T), tol), "=", q_kt),
            compare("q(K_{n-k-1,k+1})=n", q_kt, "=", n),
        ]
    return checks


def lemma36_chain(n: int, tol: float = DEFAULT_TOL) -> list[BoundCheck]:
    """rho(S_n^1) < rho(Q_n^1) <= rho(R_n^1) = rho(T_n^0) = n-1 and
    2n-1 = q(Q_n^0) > q(Q_n^1) > q(R_n^1) = 2n-2.

    The middle comparison is strict for ``n >= 4`` and an equality at ``n = 3``.
    """
    if n < 3:
        raise ParameterError(f"chain needs n >= 3, got {n}")
    r_s, r_q = rho(family("S", n, 1), tol), rho(family("Q", n, 1), tol)
    r_r, r_t = rho(family("R", n, 1), tol), rho(family("T", n, 0), tol)
    q_q0, q_q1, q_r = (q_radius(family(*a), tol) for a in (("Q", n, 0), ("Q", n, 1), ("R", n, 1)))
    return [
        compare("rho(S_n^1)<rho(Q_n^1)", r_s, "<", r_q),
        compare("rho(Q_n^1)<rho(R_n^1)" if n >= 4 else "rho(Q_n^1)=rho(R_n^1)", r_q, "<" if n >= 4 else "=", r_r),
        compare("rho(R_n^1)=rho(T_n^0)", r_r, "=", r_t),
        compare("rho(T_n^0)=n-1", r_t, "=", n - 1),
        compare("2n-1=q(Q_n^0)", 2 * n - 1, "=", q_q0),
        compare("q(Q_n^0)>q(Q_n^1)", q_q0, ">", q_q1),
        compare("q(Q_n^1)>q(R_n^1)", q_q1, ">", q_r),
        compare("q(R_n^1)=2n-2", q_r, "=", 2 * n - 2),
    ]


rho_Q1_closed_form = rho_q1_closed_form
