"""Executable statements of the traceability and Hamiltonicity theorems.

Each theorem is prepared for a concrete ``(n, k)``: spectral thresholds are
computed once (at tight tolerance) and the hypothesis, conclusion and
exception clauses become predicates over a :class:`GraphContext`.

Balanced theorems run on parts ``(n, n)``; nearly balanced ones on
``(n, n-1)``. Named exception graphs given in the other orientation are
transposed to fit, since every statement is invariant under isomorphism.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

from . import spectral
from .errors import ParameterError
from .families import class_shape, family, member_of_class
from .graph import (
    BipartiteGraph,
    canonical_form,
    is_subgraph_upto_iso,
    min_degree,
    quasi_complement,
)
from .hamiltonian import contains_biclique, is_b_closed, is_hamiltonian, is_traceable, max_biclique

# Values this close to a spectral threshold after the tight recomputation are
# treated as equal to it.
TIE = 1e-9


class GraphContext:
    """Lazily evaluated quantities of one graph, shared by all clauses."""

    def __init__(self, g: BipartiteGraph, tol: float = spectral.DEFAULT_TOL):
        self.g = g
        self.tol = tol
        self.borderline = False
        self._cache: dict = {}

    def _get(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    def hat(self):
        return self._get("hat", lambda: quasi_complement(self.g))

    def value(self, key: str, tol: float | None = None) -> float:
        tol = tol or self.tol
        graph = self.hat() if key.endswith("_hat") else self.g
        solver = spectral.rho if key.startswith("rho") else spectral.q_radius
        return self._get((key, tol), lambda: solver(graph, tol))

    def _settle(self, key, threshold):
        v = self.value(key)
        if abs(v - threshold) <= spectral.COMPARISON_SLACK:
            self.borderline = True
            v = self.value(key, spectral.TIGHT_TOL)
        return v

    def at_least(self, key: str, threshold: float) -> bool:
        return self._settle(key, threshold) >= threshold - TIE

    def at_most(self, key: str, threshold: float) -> bool:
        return self._settle(key, threshold) <= threshold + TIE

    @property
    def edges(self) -> int:
        return self.g.edge_count

    @property
    def delta(self) -> int:
        return self._get("delta", lambda: min_degree(self.g))

    @property
    def traceable(self) -> bool:
        return self._get("traceable", lambda: is_traceable(self.g).answer)

    @property
    def hamiltonian(self) -> bool:
        return self._get("hamiltonian", lambda: is_hamiltonian(self.g).answer)

    @property
    def canonical(self) -> bytes:
        return self._get("canonical", lambda: canonical_form(self.g))

    def spectra(self) -> dict:
        return {key: self.value(key) for key in ("rho", "q", "rho_hat", "q_hat")}


def fit(h: BipartiteGraph, shape: tuple[int, int]) -> BipartiteGraph | None:
    """``h`` or its transpose, whichever has parts ``shape``."""
    if h.shape == shape:
        return h
    if h.transpose().shape == shape:
        return h.transpose()
    return None


@dataclass
class Prepared:
    theorem: str
    n: int
    k: int
    shape: tuple[int, int]
    branch: str
    in_range: bool
    hypothesis: Callable[[GraphContext], bool]
    conclusion: Callable[[GraphContext], bool]
    exceptions: Callable[[GraphContext], list[str]] = lambda ctx: []
    min_edges: int = 0
    named: dict[str, BipartiteGraph] = field(default_factory=dict)
    """Specific exception graphs, oriented to ``shape``, for auditing."""


@dataclass(frozen=True)
class TheoremSpec:
    id: str
    summary: str
    balanced: bool
    _prepare: Callable[[int, int], Prepared]

    def prepare(self, n: int, k: int) -> Prepared:
        return self._prepare(n, k)

    def shape(self, n: int) -> tuple[int, int]:
        return (n, n) if self.balanced else (n, n - 1)


# clause builders


def _equals(named: dict[str, BipartiteGraph]):
    forms = {label: canonical_form(g) for label, g in named.items()}

    def match(ctx):
        return [label for label, form in forms.items() if form == ctx.canonical]

    return match


def _subgraph_of(named: dict[str, BipartiteGraph]):
    def match(ctx):
        return [label for label, h in named.items() if is_subgraph_upto_iso(ctx.g, h) is not None]

    return match


def _orientations(g: BipartiteGraph, shape):
    """Every orientation of ``g`` with parts ``shape`` (both when balanced)."""
    out = [h for h in (g, g.transpose()) if h.shape == shape]
    return out[:1] if g.m != g.n else out


def _in_classes(classes: list[tuple[str, int, int]], shape):
    def match(ctx):
        out = []
        for cls, n, k in classes:
            if any(member_of_class(h, cls, n, k) is not None
                   for h in _orientations(ctx.g, class_shape(cls, n, k))):
                out.append(f"{cls}class_{n}^{k}")
        return out

    return match


def _union(*matchers):
    def match(ctx):
        out = []
        for mt in matchers:
            out += mt(ctx)
        return out

    return match


def _named(shape, **graphs):
    out = {}
    for label, g in graphs.items():
        fitted = fit(g, shape)
        if fitted is None:
            raise ParameterError(f"{label} has parts {g.shape}, cannot compare with {shape}")
        out[label] = fitted
    return out


def _tight(fn, g):
    return fn(g, spectral.TIGHT_TOL)


def _rho_hat(g):
    return _tight(spectral.rho, quasi_complement(g))


def _q_hat(g):
    return _tight(spectral.q_radius, quasi_complement(g))


# theorem statements


def _moon_moser(n, k):
    if k < 1:
        raise ParameterError("Moon-Moser needs k >= 1")
    h = n // 2
    bound = max(n * (n - k) + k * k, n * (n - h) + h * h)
    return Prepared(
        "MM", n, k, (n, n), "", 2 * k <= n,
        hypothesis=lambda c: c.delta >= k and c.edges > bound,
        conclusion=lambda c: c.hamiltonian,
        min_edges=bound + 1,
    )


def _t21(n, k):
    shape = (n, n)
    ref = family("R", n, 1) if k == 1 else family("Q", n, k)
    label = "R_n^1" if k == 1 else "Q_n^k"
    thr = _tight(spectral.rho, ref)
    named = _named(shape, **{label: ref})
    return Prepared(
        "T2.1", n, k, shape, "(2)" if k == 1 else "(1)", n >= (k + 2) ** 2,
        hypothesis=lambda c: c.delta >= k and c.at_least("rho", thr),
        conclusion=lambda c: c.traceable,
        exceptions=_equals(named), named=named,
    )


def _t22(n, k):
    shape = (n, n)
    ref = family("Q", n, k)
    thr = _tight(spectral.q_radius, ref)
    named = _named(shape, **{"Q_n^k": ref})
    return Prepared(
        "T2.2", n, k, shape, "", n >= (k + 2) ** 2,
        hypothesis=lambda c: c.delta >= k and c.at_least("q", thr),
        conclusion=lambda c: c.traceable,
        exceptions=_equals(named), named=named,
    )


def _t23(n, k):
    shape = (n, n)
    if k >= 1:
        ref = family("R", n, k)
        thr = _rho_hat(ref)
        named = _named(shape, **{"R_n^k": ref})
        hyp = lambda c: c.delta >= k and c.at_most("rho_hat", thr)  # noqa: E731
        branch = "(1)"
    else:
        # the k = 0 branch is read with the same direction as branch (1)
        ref = family("Q", n, 0)
        thr = _rho_hat(ref)
        named = _named(shape, **{"Q_n^0": ref})
        hyp = lambda c: c.at_most("rho_hat", thr)  # noqa: E731
        branch = "(2)"
    return Prepared(
        "T2.3", n, k, shape, branch, n >= 2 * k,
        hypothesis=hyp, conclusion=lambda c: c.traceable,
        exceptions=_equals(named), named=named,
    )


def _t24(n, k):
    shape = (n, n)
    named = _named(shape, **{f"R_n^{j}": family("R", n, j) for j in range(1, n // 2 + 1)})
    return Prepared(
        "T2.4", n, k, shape, "", True,
        hypothesis=lambda c: c.at_most("q_hat", n),
        conclusion=lambda c: c.traceable,
        exceptions=_equals(named), named=named,
    )


def _t25(n, k):
    shape = (n, n - 1)
    ref, label = (family("S", n, k), "S_n^k") if k >= 1 else (family("T", n, 0), "T_n^0")
    thr = _tight(spectral.rho, ref)
    named = _named(shape, **{label: ref})
    return Prepared(
        "T2.5", n, k, shape, "(1)" if k >= 1 else "(2)", n >= (k + 1) ** 2,
        hypothesis=lambda c: c.delta >= k and c.at_least("rho", thr),
        conclusion=lambda c: c.traceable,
        exceptions=_equals(named), named=named,
    )


def _t26(n, k):
    shape = (n, n - 1)
    j = max(k, 1)
    ref = family("S", n, j)
    thr = _tight(spectral.q_radius, ref)
    named = _named(shape, **{f"S_n^{j}": ref})
    return Prepared(
        "T2.6", n, k, shape, "(1)" if k >= 1 else "(2)", n >= (k + 1) ** 2,
        hypothesis=lambda c: c.delta >= k and c.at_least("q", thr),
        conclusion=lambda c: c.traceable,
        exceptions=_equals(named), named=named,
    )


def _t27(n, k):
    shape = (n, n - 1)
    if k >= 1:
        ref = family("S", n, k)
        match = _in_classes([("S", n, k)], shape)
        named = _named(shape, **{"S_n^k": ref})
    else:
        ref = family("T", n, 0)
        named = _named(shape, **{"T_n^0": ref})
        match = _union(_in_classes([("S", n, 1)], shape), _equals(named))
    thr = _rho_hat(ref)
    return Prepared(
        "T2.7", n, k, shape, "(1)" if k >= 1 else "(2)", n >= 2 * k + 1,
        hypothesis=lambda c: c.delta >= k and c.at_most("rho_hat", thr),
        conclusion=lambda c: c.traceable,
        exceptions=match, named=named,
    )


def _t28(n, k):
    shape = (n, n - 1)
    classes = [("S", n, j) for j in range(1, (n - 1) // 2 + 1)]
    classes += [("T", n, j) for j in range(0, n // 2)]
    matchers = [_in_classes(classes, shape)]
    named = {}
    if n == 4:
        named = _named(shape, Lspider=family("Lspider"))
        matchers.append(_equals(named))
    return Prepared(
        "T2.8", n, k, shape, "", True,
        hypothesis=lambda c: c.at_most("q_hat", n),
        conclusion=lambda c: c.traceable,
        exceptions=_union(*matchers), named=named,
    )


def _subgraph_exceptions_q(n, k):
    named = {"Q_n^k": family("Q", n, k)}
    if k == 1:
        named["R_n^1"] = family("R", n, 1)
    return named


def _t61(n, k, use_q=False):
    if k < 1:
        raise ParameterError("needs k >= 1")
    shape = (n, n)
    named = _subgraph_exceptions_q(n, k)
    if use_q:
        hyp = lambda c: c.delta >= k and c.at_least("q", 2 * n - k - 1)  # noqa: E731
    else:
        thr = math.sqrt(n * (n - k - 1))
        hyp = lambda c: c.delta >= k and c.at_least("rho", thr)  # noqa: E731
    return Prepared(
        "T6.2" if use_q else "T6.1", n, k, shape, "", n >= (k + 2) ** 2,
        hypothesis=hyp, conclusion=lambda c: c.traceable,
        exceptions=_subgraph_of(named), named=named,
    )


def _t63(n, k, use_q=False):
    if k < 1:
        raise ParameterError("needs k >= 1")
    shape = (n, n - 1)
    named = _named(shape, **{"S_n^k": family("S", n, k)})
    if use_q:
        hyp = lambda c: c.delta >= k and c.at_least("q", 2 * n - k - 1)  # noqa: E731
    else:
        thr = math.sqrt(n * (n - k - 1))
        hyp = lambda c: c.delta >= k and c.at_least("rho", thr)  # noqa: E731
    return Prepared(
        "T6.4" if use_q else "T6.3", n, k, shape, "", n >= (k + 1) ** 2,
        hypothesis=hyp, conclusion=lambda c: c.traceable,
        exceptions=_subgraph_of(named), named=named,
    )


def _l44(n, k):
    if k < 1:
        raise ParameterError("needs k >= 1")
    bound = n * (n - k - 2) + (k + 2) ** 2

    def conclusion(c):
        if max_biclique(c.g).order < 2 * n - k - 1:
            return False
        if c.delta >= k:
            return contains_biclique(c.g, n, n - k - 1) or (k == 1 and contains_biclique(c.g, n - 1, n - 1))
        return True

    return Prepared(
        "L4.4", n, k, (n, n), "", n >= 2 * k + 3,
        hypothesis=lambda c: c.edges > bound and is_b_closed(c.g),
        conclusion=conclusion, min_edges=bound + 1,
    )


def _l45(n, k):
    if k < 1:
        raise ParameterError("needs k >= 1")
    bound = n * (n - k - 2) + (k + 2) ** 2
    named = _subgraph_exceptions_q(n, k)
    return Prepared(
        "L4.5", n, k, (n, n), "", n >= 2 * k + 3,
        hypothesis=lambda c: c.delta >= k and c.edges > bound,
        conclusion=lambda c: c.traceable,
        exceptions=_subgraph_of(named), min_edges=bound + 1, named=named,
    )


def _t43(n, k):
    if k < 1:
        raise ParameterError("needs k >= 1")
    bound = n * (n - k - 1) + (k + 1) ** 2

    def conclusion(c):
        if max_biclique(c.g).order < 2 * n - k:
            return False
        return c.delta < k or contains_biclique(c.g, n, n - k)

    return Prepared(
        "T4.3", n, k, (n, n), "", n >= 2 * k + 1,
        hypothesis=lambda c: c.edges > bound and is_b_closed(c.g),
        conclusion=conclusion, min_edges=bound + 1,
    )


def _t44(n, k):
    if k < 1:
        raise ParameterError("needs k >= 1")
    bound = n * (n - k - 1) + (k + 1) ** 2
    named = {"B_n^k": family("B", n, k)}
    return Prepared(
        "T4.4", n, k, (n, n), "", n >= 2 * k + 1,
        hypothesis=lambda c: c.delta >= k and c.edges > bound,
        conclusion=lambda c: c.hamiltonian,
        exceptions=_subgraph_of(named), min_edges=bound + 1, named=named,
    )


def _t46(part):
    def prepare(n, k):
        if k < 1:
            raise ParameterError("needs k >= 1")
        shape = (n, n)
        ref = family("B", n, k)
        if part == 1:
            thr = _tight(spectral.rho, ref)
            hyp = lambda c: c.delta >= k and c.at_least("rho", thr)  # noqa: E731
        elif part == 2:
            thr = _tight(spectral.q_radius, ref)
            hyp = lambda c: c.delta >= k and c.at_least("q", thr)  # noqa: E731
        else:
            thr = _rho_hat(ref)
            hyp = lambda c: c.delta >= k and c.at_most("rho_hat", thr)  # noqa: E731
        named = {"B_n^k": ref}
        if part == 3:
            extra = {"L1": family("L1"), "L2": family("L2")} if (n, k) == (4, 2) else {}
            named.update(extra)
            match = _union(_in_classes([("B", n, k)], shape), _equals(extra))
            in_range = n >= 2 * k
        else:
            match = _equals(named)
            in_range = n >= (k + 1) ** 2
        return Prepared(
            f"T4.6({part})", n, k, shape, "", in_range,
            hypothesis=hyp, conclusion=lambda c: c.hamiltonian,
            exceptions=match, named=named,
        )

    return prepare


def _t47(n, k):
    shape = (n, n)
    classes = [("B", n, j) for j in range(1, n // 2 + 1)]
    matchers = [_in_classes(classes, shape)]
    named = {f"B_n^{j}": family("B", n, j) for j in range(1, n // 2 + 1)}
    if n == 4:
        extra = {"L1": family("L1"), "L2": family("L2")}
        named.update(extra)
        matchers.append(_equals(extra))
    return Prepared(
        "T4.7", n, k, shape, "", True,
        hypothesis=lambda c: c.at_most("q_hat", n),
        conclusion=lambda c: c.hamiltonian,
        exceptions=_union(*matchers), named=named,
    )


THEOREMS: dict[str, TheoremSpec] = {
    t.id: t
    for t in [
        TheoremSpec("MM", "delta>=k, e>max{n(n-k)+k^2, n(n-h)+h^2} => Hamiltonian", True, _moon_moser),
        TheoremSpec("T2.1", "rho(G)>=rho(Q_n^k) (R_n^1 if k=1) => traceable or G=Q_n^k (R_n^1)", True, _t21),
        TheoremSpec("T2.2", "q(G)>=q(Q_n^k) => traceable or G=Q_n^k", True, _t22),
        TheoremSpec("T2.3", "rho(G^)<=rho(R_n^k ^) => traceable or G=R_n^k; k=0 uses Q_n^0", True, _t23),
        TheoremSpec("T2.4", "q(G^)<=n => traceable or G=R_n^k", True, _t24),
        TheoremSpec("T2.5", "rho(G)>=rho(S_n^k) (T_n^0 if k=0) => traceable or equal", False, _t25),
        TheoremSpec("T2.6", "q(G)>=q(S_n^max(k,1)) => traceable or equal", False, _t26),
        TheoremSpec("T2.7", "rho(G^)<=rho(S_n^k ^) => traceable or G in S-class", False, _t27),
        TheoremSpec("T2.8", "q(G^)<=n => traceable or G in S/T-classes or spider", False, _t28),
        TheoremSpec("T6.1", "rho(G)>=sqrt(n(n-k-1)) => traceable or G<=Q_n^k (R_n^1)", True, _t61),
        TheoremSpec("T6.2", "q(G)>=2n-k-1 => traceable or G<=Q_n^k (R_n^1)", True,
                    lambda n, k: _t61(n, k, use_q=True)),
        TheoremSpec("T6.3", "rho(G)>=sqrt(n(n-k-1)) => traceable or G<=S_n^k", False, _t63),
        TheoremSpec("T6.4", "q(G)>=2n-k-1 => traceable or G<=S_n^k", False,
                    lambda n, k: _t63(n, k, use_q=True)),
        TheoremSpec("L4.4", "B-closed, e>n(n-k-2)+(k+2)^2 => biclique of order 2n-k-1", True, _l44),
        TheoremSpec("L4.5", "delta>=k, e>n(n-k-2)+(k+2)^2 => traceable or G<=Q_n^k (R_n^1)", True, _l45),
        TheoremSpec("T4.3", "B-closed, e>n(n-k-1)+(k+1)^2 => biclique of order 2n-k", True, _t43),
        TheoremSpec("T4.4", "delta>=k, e>n(n-k-1)+(k+1)^2 => Hamiltonian or G<=B_n^k", True, _t44),
        TheoremSpec("T4.6(1)", "rho(G)>=rho(B_n^k) => Hamiltonian or G=B_n^k", True, _t46(1)),
        TheoremSpec("T4.6(2)", "q(G)>=q(B_n^k) => Hamiltonian or G=B_n^k", True, _t46(2)),
        TheoremSpec("T4.6(3)", "rho(G^)<=rho(B_n^k ^) => Hamiltonian or G in B-class, L1, L2", True, _t46(3)),
        TheoremSpec("T4.7", "q(G^)<=n => Hamiltonian or G in B-classes, L1, L2", True, _t47),
    ]
}


def get_theorem(theorem_id: str) -> TheoremSpec:
    key = theorem_id.strip().upper()
    for tid, spec in THEOREMS.items():
        if tid.upper() == key:
            return spec
    raise ParameterError(f"unknown theorem {theorem_id!r}; known: {', '.join(THEOREMS)}")
