"""Hamilton paths and cycles in bipartite graphs.

Exact decisions use a subset dynamic program over ``(visited set, last
vertex)`` states, stored per visited set as a bitmask of feasible end
vertices. The bipartite closure reduces most dense inputs to a complete
bipartite graph before any search is needed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .errors import GraphError, SizeLimitError
from .graph import (
    BipartiteGraph,
    VertexId,
    X,
    Y,
    _bits,
    _popcount,
    add_universal_vertex,
    is_connected,
)

EXACT_LIMIT = 24


@dataclass(frozen=True)
class PathCertificate:
    vertices: tuple[VertexId, ...]

    def to_list(self):
        return [[v.side, v.index] for v in self.vertices]


@dataclass(frozen=True)
class CycleCertificate:
    """Closing edge from the last vertex back to the first is implied."""

    vertices: tuple[VertexId, ...]

    def to_list(self):
        return [[v.side, v.index] for v in self.vertices]


def _adjacent(g: BipartiteGraph, u: VertexId, v: VertexId) -> bool:
    if u.side == v.side:
        return False
    x, y = (u, v) if u.side == X else (v, u)
    return g.has_edge(x.index, y.index)


def check_path(g: BipartiteGraph, vertices) -> bool:
    """Independent validation of a spanning path."""
    vs = [VertexId(*v) for v in vertices]
    everything = {VertexId(X, i) for i in range(g.m)} | {VertexId(Y, j) for j in range(g.n)}
    if len(vs) != len(everything) or set(vs) != everything:
        return False
    return all(_adjacent(g, a, b) for a, b in zip(vs, vs[1:]))


def check_cycle(g: BipartiteGraph, vertices) -> bool:
    vs = [VertexId(*v) for v in vertices]
    return len(vs) >= 4 and check_path(g, vs) and _adjacent(g, vs[-1], vs[0])


# closure


@dataclass(frozen=True)
class ClosureTrace:
    graph: BipartiteGraph
    added: tuple[tuple[int, int, int], ...] = field(default=())
    """``(x, y, degree sum at the time of addition)`` in insertion order."""

    def to_dict(self):
        return {
            "graph": self.graph.to_dict(),
            "added": [{"x": x, "y": y, "degree_sum": s} for x, y, s in self.added],
        }


def _require_balanced(g: BipartiteGraph, what: str) -> None:
    if g.m != g.n:
        raise GraphError(
            f"{what} needs a balanced graph, got parts {g.shape}; for a nearly balanced "
            "graph first add a universal vertex to the smaller side (add_universal_vertex)"
        )


def b_closure(g: BipartiteGraph, reverse: bool = False) -> ClosureTrace:
    """Join nonadjacent cross pairs with degree sum >= n+1 until none remain.

    Pairs are scanned in lexicographic order (``reverse`` flips it) and the
    scan restarts after every addition.
    """
    _require_balanced(g, "B-closure")
    n = g.n
    rows = list(g.rows)
    dx = g.x_degrees()
    dy = g.y_degrees()
    pairs = [(i, j) for i in range(n) for j in range(n)]
    if reverse:
        pairs.reverse()
    added = []
    while True:
        for i, j in pairs:
            if not rows[i] >> j & 1 and dx[i] + dy[j] >= n + 1:
                added.append((i, j, dx[i] + dy[j]))
                rows[i] |= 1 << j
                dx[i] += 1
                dy[j] += 1
                break
        else:
            break
    return ClosureTrace(BipartiteGraph(n, n, tuple(rows)), tuple(added))


def is_b_closed(g: BipartiteGraph) -> bool:
    _require_balanced(g, "B-closedness")
    dx, dy = g.x_degrees(), g.y_degrees()
    return not any(
        not g.rows[i] >> j & 1 and dx[i] + dy[j] >= g.n + 1 for i in range(g.n) for j in range(g.n)
    )


# exact search


def _unified_adjacency(g: BipartiteGraph) -> list[int]:
    """X-vertex i -> bit i, Y-vertex j -> bit m+j."""
    m = g.m
    adj = [row << m for row in g.rows]
    adj += list(g.columns)
    return adj


def _to_vertex(g, v):
    return VertexId(X, v) if v < g.m else VertexId(Y, v - g.m)


def _spanning_walk(adj, total, starts, closing=None):
    """Vertex order of a spanning path beginning in ``starts`` (a bitmask),
    ending next to ``closing`` if given, else ``None``.
    """
    full = (1 << total) - 1
    layers = [{1 << s: 1 << s for s in _bits(starts)}]
    for _ in range(total - 1):
        nxt: dict[int, int] = {}
        for mask, ends in layers[-1].items():
            reach = 0
            for v in _bits(ends):
                reach |= adj[v]
            reach &= ~mask
            for w in _bits(reach):
                key = mask | 1 << w
                nxt[key] = nxt.get(key, 0) | 1 << w
        if not nxt:
            return None
        layers.append(nxt)
    ends = layers[-1].get(full, 0)
    if closing is not None:
        ends &= adj[closing]
    if not ends:
        return None
    cur = (ends & -ends).bit_length() - 1
    order = [cur]
    mask = full
    for layer in reversed(layers[:-1]):
        mask ^= 1 << cur
        prev = layer[mask] & adj[cur]
        cur = (prev & -prev).bit_length() - 1
        order.append(cur)
    order.reverse()
    return order


def _guard(g, limit):
    if g.order > limit:
        raise SizeLimitError(
            f"exact search is limited to {limit} vertices, got {g.order}; "
            "reduce with b_closure or raise the limit"
        )


def hamilton_cycle(g: BipartiteGraph, limit: int = EXACT_LIMIT) -> CycleCertificate | None:
    _guard(g, limit)
    if g.m != g.n or g.n < 2 or g.edge_count < 2 * g.n:
        return None
    if min(g.x_degrees() + g.y_degrees()) < 2 or not is_connected(g):
        return None
    adj = _unified_adjacency(g)
    order = _spanning_walk(adj, g.order, 1, closing=0)
    if order is None:
        return None
    return CycleCertificate(tuple(_to_vertex(g, v) for v in order))


def hamilton_path(g: BipartiteGraph, limit: int = EXACT_LIMIT) -> PathCertificate | None:
    _guard(g, limit)
    if abs(g.m - g.n) > 1:
        return None
    if g.order == 0:
        return PathCertificate(())
    if g.order == 1:
        return PathCertificate((VertexId(X, 0) if g.m else VertexId(Y, 0),))
    degs = g.x_degrees() + g.y_degrees()
    if min(degs) == 0 or sum(d == 1 for d in degs) > 2 or not is_connected(g):
        return None
    # a spanning path starts on the larger side; for equal sides start in X
    if g.n > g.m:
        starts = ((1 << g.n) - 1) << g.m
    else:
        starts = (1 << g.m) - 1
    order = _spanning_walk(_unified_adjacency(g), g.order, starts)
    if order is None:
        return None
    return PathCertificate(tuple(_to_vertex(g, v) for v in order))


# closure pipeline


@dataclass(frozen=True)
class Decision:
    answer: bool
    method: str
    certificate: PathCertificate | CycleCertificate | None = None

    def __bool__(self):
        return self.answer


def _is_complete(g):
    return g.edge_count == g.m * g.n


def is_hamiltonian(g: BipartiteGraph, certificate: bool = False, limit: int = EXACT_LIMIT) -> Decision:
    """Decide Hamiltonicity of a balanced graph through its B-closure.

    Only existence transfers through the closure, so a requested certificate
    is searched for on ``g`` itself.
    """
    _require_balanced(g, "Hamiltonicity")
    if certificate:
        cert = hamilton_cycle(g, limit)
        return Decision(cert is not None, "exact", cert)
    if g.n < 2:
        return Decision(False, "order")
    closed = b_closure(g).graph
    if _is_complete(closed):
        return Decision(True, "closure-complete")
    return Decision(hamilton_cycle(closed, limit) is not None, "closure-exact")


def is_traceable(g: BipartiteGraph, certificate: bool = False, limit: int = EXACT_LIMIT) -> Decision:
    """Decide traceability.

    Balanced graphs go through the B-closure. A nearly balanced graph is
    traceable iff adding a universal vertex to its smaller side makes it
    Hamiltonian.
    """
    if abs(g.m - g.n) > 1:
        return Decision(False, "parity")
    if certificate or min(g.m, g.n) == 0:
        cert = hamilton_path(g, limit)
        return Decision(cert is not None, "exact", cert)
    if g.m == g.n:
        closed = b_closure(g).graph
        if _is_complete(closed):
            return Decision(True, "closure-complete")
        return Decision(hamilton_path(closed, limit) is not None, "closure-exact")
    augmented = add_universal_vertex(g, X if g.m < g.n else Y)
    d = is_hamiltonian(augmented, limit=limit)
    return Decision(d.answer, "augment+" + d.method)


# bicliques


@dataclass(frozen=True)
class BicliqueWitness:
    x_set: tuple[int, ...]
    y_set: tuple[int, ...]

    @property
    def s(self) -> int:
        return len(self.x_set)

    @property
    def t(self) -> int:
        return len(self.y_set)

    @property
    def order(self) -> int:
        return self.s + self.t


BICLIQUE_LIMIT = 20


def max_biclique(g: BipartiteGraph) -> BicliqueWitness:
    """Largest complete bipartite subgraph ``X' x Y'`` by ``|X'| + |Y'|``,
    ties broken towards larger ``|X'|``. Either side may be empty.

    Every maximal biclique is ``(N(B), N(N(B)))`` for some subset ``B`` of one
    side, so enumerating subsets of the smaller side is exact.
    """
    if min(g.m, g.n) > BICLIQUE_LIMIT:
        raise SizeLimitError(f"max_biclique supports a smaller side up to {BICLIQUE_LIMIT}, got {g.shape}")
    full_x, full_y = (1 << g.m) - 1, (1 << g.n) - 1
    cols = g.columns
    if g.n <= g.m:
        small, other, full_small, full_other, small_x = cols, g.rows, full_y, full_x, False
    else:
        small, other, full_small, full_other, small_x = g.rows, cols, full_x, full_y, True
    best_key, best = None, None
    for subset in range(full_small + 1):
        common = full_other
        for v in _bits(subset):
            common &= small[v]
        back = full_small
        for u in _bits(common):
            back &= other[u]
        xs, ys = (back, common) if small_x else (common, back)
        key = (_popcount(xs) + _popcount(ys), _popcount(xs))
        if best_key is None or key > best_key:
            best_key, best = key, (xs, ys)
    xs, ys = best
    return BicliqueWitness(tuple(_bits(xs)), tuple(_bits(ys)))


def contains_biclique(g: BipartiteGraph, s: int, t: int, either_side: bool = True) -> bool:
    """Whether ``K_{s,t}`` (s vertices in X, t in Y) is a subgraph.

    With ``either_side`` the orientation ``K_{t,s}`` also counts.
    """
    def fits(rows, a, b, width):
        if a == 0:
            return b <= width
        return any(_popcount(_and_all(rows, c, width)) >= b for c in combinations(range(len(rows)), a))

    if s <= g.m and t <= g.n and fits(g.rows, s, t, g.n):
        return True
    if either_side and t <= g.m and s <= g.n:
        return fits(g.rows, t, s, g.n)
    return False


def _and_all(rows, idx, width):
    acc = (1 << width) - 1
    for i in idx:
        acc &= rows[i]
    return acc
