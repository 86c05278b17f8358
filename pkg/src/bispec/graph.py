"""Bipartite graphs with a fixed, ordered bipartition.

A graph lives on ``X = {x_0..x_{m-1}}`` and ``Y = {y_0..y_{n-1}}``. Edges are
stored as ``m`` integer bit rows: bit ``j`` of ``rows[i]`` is set iff
``x_i y_j`` is an edge. Python integers are unbounded, so a row never needs to
be split into machine words.

The partition is never swapped implicitly: ``(m, n)`` and ``(n, m)`` graphs
are different objects, and only :func:`canonical_form` (when ``m == n``) and
:func:`is_subgraph_upto_iso` consider the side swap.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product
from typing import Iterable, Iterator, NamedTuple, Sequence

import numpy as np

from .errors import GraphError, SizeLimitError

X = "X"
Y = "Y"

CANONICAL_LIMIT = 8


class VertexId(NamedTuple):
    side: str
    index: int

    def __str__(self):
        return f"{self.side.lower()}{self.index}"


def _bits(value: int) -> Iterator[int]:
    while value:
        low = value & -value
        yield low.bit_length() - 1
        value ^= low


def _popcount(value: int) -> int:
    return bin(value).count("1")


@dataclass(frozen=True)
class BipartiteGraph:
    m: int
    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        # accept numpy integers and lists, store plain ints
        object.__setattr__(self, "m", int(self.m))
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "rows", tuple(int(r) for r in self.rows))
        if self.m < 0 or self.n < 0:
            raise GraphError(f"negative part size ({self.m}, {self.n})")
        if len(self.rows) != self.m:
            raise GraphError(f"expected {self.m} rows, got {len(self.rows)}")
        full = (1 << self.n) - 1
        for i, row in enumerate(self.rows):
            if row < 0 or row & ~full:
                raise GraphError(f"row {i} uses bits outside the {self.n} Y-vertices")

    @property
    def shape(self) -> tuple[int, int]:
        return (self.m, self.n)

    @property
    def order(self) -> int:
        return self.m + self.n

    @property
    def edge_count(self) -> int:
        return sum(_popcount(r) for r in self.rows)

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.rows[i] >> j & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i, row in enumerate(self.rows) for j in _bits(row)]

    @property
    def columns(self) -> tuple[int, ...]:
        """Neighbourhoods of the Y-vertices as bitmasks over X."""
        cols = [0] * self.n
        for i, row in enumerate(self.rows):
            for j in _bits(row):
                cols[j] |= 1 << i
        return tuple(cols)

    def x_degrees(self) -> list[int]:
        return [_popcount(r) for r in self.rows]

    def y_degrees(self) -> list[int]:
        return [_popcount(c) for c in self.columns]

    def transpose(self) -> BipartiteGraph:
        """The same graph with the roles of X and Y exchanged."""
        return BipartiteGraph(self.n, self.m, self.columns)

    def biadjacency(self) -> np.ndarray:
        out = np.zeros((self.m, self.n))
        for i, j in self.edges():
            out[i, j] = 1.0
        return out

    def adjacency(self) -> np.ndarray:
        """Full ``(m+n) x (m+n)`` adjacency matrix, X-vertices first."""
        b = self.biadjacency()
        out = np.zeros((self.order, self.order))
        out[: self.m, self.m :] = b
        out[self.m :, : self.m] = b.T
        return out

    # serialization

    def to_dict(self) -> dict:
        return {"m": self.m, "n": self.n, "edges": [list(e) for e in sorted(self.edges())]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def to_compact(self) -> str:
        width = -(-self.n // 4)
        body = "".join(format(r, "x").zfill(width) for r in self.rows) if width else ""
        return f"{self.m}:{self.n}:{body}"

    @classmethod
    def from_dict(cls, data: dict) -> BipartiteGraph:
        try:
            return new_graph(int(data["m"]), int(data["n"]), [tuple(e) for e in data["edges"]])
        except (KeyError, TypeError) as exc:
            raise GraphError(f"malformed graph object: {exc}") from None

    @classmethod
    def from_json(cls, text: str) -> BipartiteGraph:
        return cls.from_dict(json.loads(text))

    @classmethod
    def from_compact(cls, text: str) -> BipartiteGraph:
        try:
            m_s, n_s, body = text.strip().split(":")
            m, n = int(m_s), int(n_s)
        except ValueError:
            raise GraphError(f"compact graph must look like m:n:HEX, got {text!r}") from None
        width = -(-n // 4)
        if len(body) != m * width:
            raise GraphError(f"expected {m * width} hex digits for a {m}x{n} graph, got {len(body)}")
        rows = tuple(int(body[i * width : (i + 1) * width], 16) for i in range(m)) if width else (0,) * m
        return cls(m, n, rows)

    def __str__(self):
        return self.to_compact()


def parse_graph(text: str) -> BipartiteGraph:
    """Read either the JSON object form or the compact ``m:n:HEX`` form."""
    text = text.strip()
    if text.startswith("{"):
        return BipartiteGraph.from_json(text)
    return BipartiteGraph.from_compact(text)


def new_graph(m: int, n: int, edges: Iterable[Sequence[int]]) -> BipartiteGraph:
    if m < 0 or n < 0:
        raise GraphError(f"negative part size ({m}, {n})")
    rows = [0] * m
    for pair in edges:
        i, j = (int(v) for v in pair)
        if not (0 <= i < m and 0 <= j < n):
            raise GraphError(f"edge ({i}, {j}) out of range for parts of size ({m}, {n})")
        rows[i] |= 1 << j
    return BipartiteGraph(m, n, tuple(rows))


def complete(m: int, n: int) -> BipartiteGraph:
    return BipartiteGraph(m, n, ((1 << n) - 1,) * m)


def empty(m: int, n: int) -> BipartiteGraph:
    return BipartiteGraph(m, n, (0,) * m)


def quasi_complement(g: BipartiteGraph) -> BipartiteGraph:
    full = (1 << g.n) - 1
    return BipartiteGraph(g.m, g.n, tuple(full ^ r for r in g.rows))


def join(g1: BipartiteGraph, g2: BipartiteGraph) -> BipartiteGraph:
    """Union plus all edges ``X1 x Y2`` and ``X2 x Y1`` (the square-cup join).

    Layout: X = X1 then X2, Y = Y1 then Y2.
    """
    y2_all = ((1 << g2.n) - 1) << g1.n
    y1_all = (1 << g1.n) - 1
    rows = [r | y2_all for r in g1.rows] + [(r << g1.n) | y1_all for r in g2.rows]
    return BipartiteGraph(g1.m + g2.m, g1.n + g2.n, tuple(rows))


def disjoint_union(g1: BipartiteGraph, g2: BipartiteGraph) -> BipartiteGraph:
    rows = list(g1.rows) + [r << g1.n for r in g2.rows]
    return BipartiteGraph(g1.m + g2.m, g1.n + g2.n, tuple(rows))


def add_universal_vertex(g: BipartiteGraph, side: str) -> BipartiteGraph:
    """Append a vertex to ``side`` that is adjacent to every vertex of the other side."""
    if side == X:
        return BipartiteGraph(g.m + 1, g.n, g.rows + ((1 << g.n) - 1,))
    if side == Y:
        return BipartiteGraph(g.m, g.n + 1, tuple(r | 1 << g.n for r in g.rows))
    raise GraphError(f"side must be {X!r} or {Y!r}, got {side!r}")


def add_isolated_vertex(g: BipartiteGraph, side: str) -> BipartiteGraph:
    if side == X:
        return BipartiteGraph(g.m + 1, g.n, g.rows + (0,))
    if side == Y:
        return BipartiteGraph(g.m, g.n + 1, g.rows)
    raise GraphError(f"side must be {X!r} or {Y!r}, got {side!r}")


def degree(g: BipartiteGraph, v: VertexId | tuple[str, int]) -> int:
    side, index = v
    if side == X and 0 <= index < g.m:
        return _popcount(g.rows[index])
    if side == Y and 0 <= index < g.n:
        return sum(r >> index & 1 for r in g.rows)
    raise GraphError(f"no vertex {side}{index} in a graph with parts ({g.m}, {g.n})")


def min_degree(g: BipartiteGraph) -> int:
    degs = g.x_degrees() + g.y_degrees()
    return min(degs) if degs else 0


def edge_count(g: BipartiteGraph) -> int:
    return g.edge_count


def components(g: BipartiteGraph) -> list[tuple[int, int]]:
    """Connected components as ``(x_mask, y_mask)`` pairs; isolated vertices count."""
    cols = g.columns
    seen_x = seen_y = 0
    out = []
    for start_side, start_count in ((X, g.m), (Y, g.n)):
        for s in range(start_count):
            if (seen_x if start_side == X else seen_y) >> s & 1:
                continue
            cx, cy = (1 << s, 0) if start_side == X else (0, 1 << s)
            fx, fy = cx, cy
            while fx or fy:
                ny = 0
                for i in _bits(fx):
                    ny |= g.rows[i]
                nx = 0
                for j in _bits(fy):
                    nx |= cols[j]
                fx, fy = nx & ~cx, ny & ~cy
                cx |= fx
                cy |= fy
            seen_x |= cx
            seen_y |= cy
            out.append((cx, cy))
    return out


def is_connected(g: BipartiteGraph) -> bool:
    return len(components(g)) <= 1


def is_labeled_subgraph(g: BipartiteGraph, h: BipartiteGraph) -> bool:
    """``E(g) <= E(h)`` on identical vertex labels."""
    if g.shape != h.shape:
        raise GraphError(f"shape mismatch: {g.shape} vs {h.shape}")
    return all(a & ~b == 0 for a, b in zip(g.rows, h.rows))


class Embedding(NamedTuple):
    """``x_map[i]`` / ``y_map[j]`` give the image in the host of x_i / y_j.

    When ``swapped`` is true the maps refer to the transpose of the pattern,
    i.e. the pattern's X-vertices land on the host's Y side.
    """

    x_map: tuple[int, ...]
    y_map: tuple[int, ...]
    swapped: bool


def _match_columns(g_cols, h_cols, x_map):
    """Assign each pattern column to a distinct host column containing its image."""
    n = len(g_cols)
    images = []
    for c in g_cols:
        img = 0
        for i in _bits(c):
            img |= 1 << x_map[i]
        images.append(img)
    cand = [[b for b in range(n) if images[a] & ~h_cols[b] == 0] for a in range(n)]
    owner = [-1] * n

    def augment(a, visited):
        for b in cand[a]:
            if visited[b]:
                continue
            visited[b] = True
            if owner[b] < 0 or augment(owner[b], visited):
                owner[b] = a
                return True
        return False

    for a in sorted(range(n), key=lambda a: len(cand[a])):
        if not augment(a, [False] * n):
            return None
    y_map = [0] * n
    for b, a in enumerate(owner):
        y_map[a] = b
    return tuple(y_map)


def _embed_fixed(g, h):
    g_deg = g.x_degrees()
    h_deg = h.x_degrees()
    g_cols, h_cols = g.columns, h.columns
    order = sorted(range(g.m), key=lambda i: -g_deg[i])
    x_map = [0] * g.m
    used = [False] * h.m

    def extend(pos):
        if pos == g.m:
            return _match_columns(g_cols, h_cols, x_map)
        i = order[pos]
        for target in range(h.m):
            if used[target] or h_deg[target] < g_deg[i]:
                continue
            used[target] = True
            x_map[i] = target
            found = extend(pos + 1)
            used[target] = False
            if found is not None:
                return found
        return None

    y_map = extend(0)
    if y_map is None:
        return None
    return tuple(x_map), y_map


def _dominated(small, large):
    return all(a <= b for a, b in zip(sorted(small), sorted(large)))


def is_subgraph_upto_iso(g: BipartiteGraph, h: BipartiteGraph) -> Embedding | None:
    """Find a part-preserving injection of ``g`` into ``h``.

    Vertices may be permuted within each side; the sides may be exchanged only
    when ``m == n``. Returns a witness or ``None``.
    """
    if g.shape != h.shape:
        raise GraphError(f"shape mismatch: {g.shape} vs {h.shape}")
    if g.edge_count > h.edge_count:
        return None
    attempts = [(g, False)]
    if g.m == g.n:
        attempts.append((g.transpose(), True))
    for pattern, swapped in attempts:
        # a degree-nondecreasing bijection exists only if sorted degrees are dominated
        if not (_dominated(pattern.x_degrees(), h.x_degrees())
                and _dominated(pattern.y_degrees(), h.y_degrees())):
            continue
        found = _embed_fixed(pattern, h)
        if found is not None:
            return Embedding(found[0], found[1], swapped)
    return None


# canonical forms


@lru_cache(maxsize=None)
def _perm_table(perm: tuple[int, ...]) -> tuple[int, ...]:
    """Row value -> row value after sending column ``perm[k]`` to position ``k``."""
    size = len(perm)
    out = []
    for value in range(1 << size):
        r = 0
        for k, src in enumerate(perm):
            if value >> src & 1:
                r |= 1 << k
        out.append(r)
    return tuple(out)


def _remap(row, perm):
    r = 0
    for k, src in enumerate(perm):
        if row >> src & 1:
            r |= 1 << k
    return r


def _min_over_column_perms(rows: tuple[int, ...], n: int) -> tuple[int, ...]:
    """Lexicographically least sorted row tuple over degree-respecting column orders."""
    col_deg = [sum(r >> j & 1 for r in rows) for j in range(n)]
    classes: dict[int, list[int]] = {}
    for j in range(n):
        classes.setdefault(col_deg[j], []).append(j)
    groups = [classes[d] for d in sorted(classes, reverse=True)]
    best = None
    use_table = n <= 7
    for choice in product(*(permutations(gr) for gr in groups)):
        perm = tuple(j for part in choice for j in part)
        if use_table:
            table = _perm_table(perm)
            cand = tuple(sorted(table[r] for r in rows))
        else:
            cand = tuple(sorted(_remap(r, perm) for r in rows))
        if best is None or cand < best:
            best = cand
    return best if best is not None else tuple(sorted(rows))


def _canonical_rows(g: BipartiteGraph) -> BipartiteGraph:
    # permute the smaller side, sort the other
    if g.n <= g.m:
        return BipartiteGraph(g.m, g.n, _min_over_column_perms(g.rows, g.n))
    t = g.transpose()
    return BipartiteGraph(t.m, t.n, _min_over_column_perms(t.rows, t.n)).transpose()


def canonical_graph(g: BipartiteGraph, allow_swap: bool = True) -> BipartiteGraph:
    """Canonical representative of the isomorphism class of ``g``.

    The group is ``S_m x S_n``, extended by the side swap when ``m == n`` and
    ``allow_swap`` is set.
    """
    if g.m > CANONICAL_LIMIT or g.n > CANONICAL_LIMIT:
        raise SizeLimitError(
            f"canonical form supports parts up to {CANONICAL_LIMIT}, got {g.shape}; "
            "use labeled comparison instead"
        )
    rep = _canonical_rows(g)
    if allow_swap and g.m == g.n:
        alt = _canonical_rows(g.transpose())
        if alt.rows < rep.rows:
            rep = alt
    return rep


def canonical_form(g: BipartiteGraph, allow_swap: bool = True) -> bytes:
    return canonical_graph(g, allow_swap).to_compact().encode("ascii")
