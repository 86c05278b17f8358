"""Named extremal graphs and the block classes built from the square-cup join.

Every family is laid out deterministically: X1 before X2 and Y1 before Y2,
so two builds with the same parameters are identical row for row.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterator

from .errors import GraphError, ParameterError
from .graph import (
    BipartiteGraph,
    _popcount,
    complete,
    disjoint_union,
    empty,
    join,
    new_graph,
)

FIXED = ("Lspider", "L1", "L2")
_NAMES = {name.lower(): name for name in ("B", "Q", "R", "S", "T", "Gamma0") + FIXED}
_NAMES.update({"gamma": "Gamma0", "spider": "Lspider", "l": "Lspider"})

# spider: centre x0 joined to y0, y1, y2; leaves x1, x2, x3 hang off y0, y1, y2.
SPIDER_EDGES = ((0, 0), (0, 1), (0, 2), (1, 0), (2, 1), (3, 2))
# L1: x0 ~ {y1, y2, y3}, y0 ~ {x1, x2, x3}, plus x_i y_i for i = 1, 2, 3.
L1_EDGES = ((0, 1), (0, 2), (0, 3), (1, 0), (2, 0), (3, 0), (1, 1), (2, 2), (3, 3))
L2_EDGES = L1_EDGES + ((0, 0),)  # L1 plus x0 y0


def _check(cond: bool, name: str, n, k, rule: str) -> None:
    if not cond:
        raise ParameterError(f"{name}(n={n}, k={k}) outside admissible range {rule}")


def validate(name: str, n: int | None, k: int | None) -> None:
    if name in FIXED:
        return
    if n is None or (k is None and name != "Gamma0"):
        raise ParameterError(f"family {name} needs n" + ("" if name == "Gamma0" else " and k"))
    if name == "B":
        _check(1 <= k and 2 * k <= n, name, n, k, "1 <= k <= n/2")
    elif name == "Q":
        _check(0 <= k and 2 * k <= n - 1, name, n, k, "0 <= k <= (n-1)/2")
    elif name == "R":
        _check(1 <= k and 2 * k <= n, name, n, k, "1 <= k <= n/2")
    elif name == "S":
        _check(1 <= k and 2 * k <= n - 1, name, n, k, "1 <= k <= (n-1)/2")
    elif name == "T":
        _check(0 <= k and 2 * k <= n - 2, name, n, k, "0 <= k <= n/2 - 1")
    elif name == "Gamma0":
        _check(n >= 3, name, n, k, "n >= 3")


@dataclass(frozen=True)
class FamilySpec:
    name: str
    n: int | None = None
    k: int | None = None

    def __post_init__(self):
        canon = _NAMES.get(str(self.name).lower())
        if canon is None:
            raise ParameterError(f"unknown family {self.name!r}; expected one of {sorted(set(_NAMES.values()))}")
        object.__setattr__(self, "name", canon)
        if canon in FIXED:
            object.__setattr__(self, "n", 4)
            object.__setattr__(self, "k", None)
        validate(self.name, self.n, self.k)

    def __str__(self):
        if self.name in FIXED:
            return self.name
        if self.name == "Gamma0":
            return f"Gamma0_{self.n}"
        return f"{self.name}_{self.n}^{self.k}"


def build(spec: FamilySpec) -> BipartiteGraph:
    name, n, k = spec.name, spec.n, spec.k
    if name == "B":
        return join(complete(k, n - k), empty(n - k, k))
    if name == "Q":
        return join(complete(k, n - k - 1), empty(n - k, k + 1))
    if name == "R":
        return disjoint_union(complete(k, k), complete(n - k, n - k))
    if name == "S":
        return join(complete(k, n - k - 1), empty(n - k, k))
    if name == "T":
        return join(complete(k, n - k - 1), empty(n - k - 1, k + 1))
    if name == "Gamma0":
        return disjoint_union(complete(n - 2, n), empty(1, 0))
    if name == "Lspider":
        return new_graph(4, 3, SPIDER_EDGES)
    if name == "L1":
        return new_graph(4, 4, L1_EDGES)
    if name == "L2":
        return new_graph(4, 4, L2_EDGES)
    raise AssertionError(name)


def family(name: str, n: int | None = None, k: int | None = None) -> BipartiteGraph:
    """Shorthand for ``build(FamilySpec(name, n, k))``."""
    return build(FamilySpec(name, n, k))


def expected_edge_count(spec: FamilySpec) -> int:
    name, n, k = spec.name, spec.n, spec.k
    if name == "B":
        return n * (n - k) + k * k
    if name == "Q":
        return n * (n - k - 1) + k * (k + 1)
    if name == "R":
        return k * k + (n - k) ** 2
    if name == "S":
        return n * (n - k - 1) + k * k
    if name == "T":
        return n * k + (n - k - 1) ** 2
    if name == "Gamma0":
        return n * (n - 2)
    return {"Lspider": 6, "L1": 9, "L2": 10}[name]


# block classes


CLASSES = ("B", "S", "T")


def class_blocks(cls: str, n: int, k: int) -> tuple[int, int, int, int]:
    """Block sizes ``(|X1|, |Y1|, |X2|, |Y2|)`` of a class member.

    Members are ``H join Phi`` with ``H`` free on ``X1 x Y1``, complete
    ``X1 x Y2`` and ``X2 x Y1``, and no edges in ``X2 x Y2``. Each class is
    taken in the orientation of its edge-maximal graph (B, S or T).
    """
    cls = cls.upper()
    if cls not in CLASSES:
        raise ParameterError(f"unknown class {cls!r}; expected one of {CLASSES}")
    validate(cls, n, k)
    if cls == "B":
        return k, n - k, n - k, k
    if cls == "S":
        return k, n - k - 1, n - k, k
    return k, n - k - 1, n - k - 1, k + 1


def class_shape(cls: str, n: int, k: int) -> tuple[int, int]:
    a, b, c, d = class_blocks(cls, n, k)
    return a + c, b + d


@dataclass(frozen=True)
class ClassWitness:
    """A labeling exhibiting the class structure: which vertices form X2 and Y2."""

    cls: str
    n: int
    k: int
    x2: tuple[int, ...]
    y2: tuple[int, ...]

    @property
    def x1(self):
        return self._rest(self.x2, self._shape[0])

    @property
    def y1(self):
        return self._rest(self.y2, self._shape[1])

    @property
    def _shape(self):
        return class_shape(self.cls, self.n, self.k)

    @staticmethod
    def _rest(part, size):
        return tuple(i for i in range(size) if i not in part)


def member_of_class(g: BipartiteGraph, cls: str, n: int, k: int) -> ClassWitness | None:
    a, b, c, d = class_blocks(cls, n, k)
    if g.shape != (a + c, b + d):
        raise GraphError(f"class {cls.upper()}_{n}^{k} needs parts {(a + c, b + d)}, got {g.shape}")
    full_y = (1 << g.n) - 1
    cols = g.columns
    # Y2 vertices all have neighbourhood exactly X1 (|X1| = a), so Y2 lies
    # inside one class of identical columns of weight a.
    groups: dict[int, list[int]] = {}
    for j, col in enumerate(cols):
        if _popcount(col) == a:
            groups.setdefault(col, []).append(j)
    for x1_mask, ys in sorted(groups.items()):
        if len(ys) < d:
            continue
        x2 = [i for i in range(g.m) if not x1_mask >> i & 1]
        for y2 in combinations(ys, d):
            y2_mask = sum(1 << j for j in y2)
            y1_mask = full_y & ~y2_mask
            if all(g.rows[i] == y1_mask for i in x2):
                return ClassWitness(cls.upper(), n, k, tuple(x2), y2)
    return None


def class_members(cls: str, n: int, k: int) -> Iterator[BipartiteGraph]:
    """Every member in the fixed block layout, one per choice of the free block."""
    a, b, c, d = class_blocks(cls, n, k)
    for bits in product((0, 1), repeat=a * b):
        h = new_graph(a, b, [(i, j) for i in range(a) for j in range(b) if bits[i * b + j]])
        yield join(h, empty(c, d))


__all__ = [
    "FamilySpec",
    "ClassWitness",
    "build",
    "family",
    "expected_edge_count",
    "class_blocks",
    "class_shape",
    "member_of_class",
    "class_members",
    "validate",
]
