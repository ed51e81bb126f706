"""Spanning-tree and 2-tree spanning-forest counts, computed exactly.

``f[i][j]`` counts the 2-tree spanning forests that put ``i`` and ``j``
in different trees; ``q[i][j]`` (anchored at ``v``) counts those with
``i`` and ``j`` together and ``v`` in the other tree. Both are plain
Python integers, so nothing overflows.

Two independent routes exist:

* per-entry determinants of Laplacian minors (:func:`tree_count`,
  :func:`forest_count`), fraction-free;
* one exact inversion of a grounded Laplacian, using
  ``f[i][j] = tau * resistance(i, j)`` (:func:`forest_matrix`).

Results are memoised per graph value.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ._exact import SparseLDL, bareiss_det
from .errors import ConsistencyError, InvalidParameterError
from .graph import Graph, require_connected

__all__ = [
    "ForestMatrix",
    "QMatrix",
    "tree_count",
    "forest_count",
    "forest_matrix",
    "q_matrix",
    "resistance_distance",
    "dfd",
    "dvec_dot_fv",
    "dqd",
    "one_separation_dfd",
    "grounded_factor",
    "grounded_tree_count",
]

_CACHE = 4096


@dataclass(frozen=True)
class ForestMatrix:
    """Symmetric integer matrix of separating 2-forest counts."""

    rows: tuple[tuple[int, ...], ...]

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __len__(self):
        return len(self.rows)

    def column(self, v: int) -> tuple[int, ...]:
        return tuple(row[v] for row in self.rows)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]


@dataclass(frozen=True)
class QMatrix:
    v: int
    rows: tuple[tuple[int, ...], ...]

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __len__(self):
        return len(self.rows)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]


def _minor(L, drop):
    keep = [i for i in range(len(L)) if i not in drop]
    return [[L[i][j] for j in keep] for i in keep]


@lru_cache(maxsize=_CACHE)
def tree_count(g: Graph) -> int:
    """Number of spanning trees (matrix-tree theorem, Bareiss determinant).

    0 for a disconnected graph, 1 for the trivial graph.
    """
    if g.n == 0:
        raise InvalidParameterError("empty graph")
    return bareiss_det(_minor(g.laplacian(), {0}))


def forest_count(g: Graph, i: int, j: int) -> int:
    """Number of 2-tree spanning forests separating ``i`` and ``j``.

    The determinant of the Laplacian with rows and columns ``i`` and
    ``j`` deleted. Returns 0 when ``i == j``.
    """
    g.check_vertex(i)
    g.check_vertex(j)
    if i == j:
        return 0
    return bareiss_det(_minor(g.laplacian(), {i, j}))


@lru_cache(maxsize=_CACHE)
def grounded_factor(g: Graph, ground: int) -> SparseLDL:
    """Exact factorisation of the Laplacian with row/column ``ground`` removed."""
    require_connected(g)
    entries = {i: {} for i in range(g.n) if i != ground}
    for i in entries:
        entries[i][i] = g.degrees[i]
    for u, v in g.edges:
        if u != ground and v != ground:
            entries[u][v] = -1
            entries[v][u] = -1
    return SparseLDL(entries)


def _as_int(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise ConsistencyError(f"{what} is not an integer: {x}")
    return x.numerator


def _tau_from_factor(fac: SparseLDL) -> int:
    return _as_int(fac.determinant(), "determinant of grounded Laplacian")


def grounded_tree_count(g: Graph, ground: int = 0) -> int:
    """Spanning-tree count read off the cached sparse factor grounded at ``ground``.

    Same value as :func:`tree_count`, but cheap for large sparse graphs.
    """
    g.check_vertex(ground)
    require_connected(g)
    if g.n == 1:
        return 1
    return _tau_from_factor(grounded_factor(g, ground))


@lru_cache(maxsize=_CACHE)
def forest_matrix(g: Graph) -> ForestMatrix:
    """The full matrix ``F`` of separating 2-forest counts.

    Grounds the Laplacian at vertex 0, inverts it exactly (``M``) and
    uses ``f[i][j] = tau * (M[i][i] + M[j][j] - 2 M[i][j])``.

    Raises
    ------
    DisconnectedGraphError
        If ``g`` is not connected.
    """
    require_connected(g)
    n = g.n
    if n == 1:
        return ForestMatrix(((0,),))
    fac = grounded_factor(g, 0)
    tau = _tau_from_factor(fac)
    M = [[Fraction(0)] * n for _ in range(n)]
    for j in range(1, n):
        col = fac.solve({j: 1})
        for i, x in col.items():
            M[i][j] = x
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == j:
                row.append(0)
            else:
                row.append(_as_int(tau * (M[i][i] + M[j][j] - 2 * M[i][j]), f"f[{i}][{j}]"))
        rows.append(tuple(row))
    return ForestMatrix(tuple(rows))


@lru_cache(maxsize=_CACHE)
def q_matrix(g: Graph, v: int) -> QMatrix:
    """``Q = (f^v 1^T + 1 (f^v)^T - F) / 2`` anchored at ``v``.

    The halving must be exact; an odd numerator raises
    :class:`ConsistencyError`.
    """
    g.check_vertex(v)
    F = forest_matrix(g)
    fv = F.column(v)
    rows = []
    for i in range(g.n):
        row = []
        for j in range(g.n):
            twice = fv[i] + fv[j] - F.rows[i][j]
            if twice % 2:
                raise ConsistencyError(f"odd numerator {twice} at q[{i}][{j}]")
            row.append(twice // 2)
        rows.append(tuple(row))
    return QMatrix(v, tuple(rows))


def resistance_distance(g: Graph, i: int, j: int) -> Fraction:
    """Effective resistance between ``i`` and ``j`` with unit edge resistances."""
    g.check_vertex(i)
    g.check_vertex(j)
    return Fraction(forest_matrix(g)[i, j], tree_count(g))


@lru_cache(maxsize=_CACHE)
def dfd(g: Graph) -> int:
    """``d^T F d`` for the degree vector ``d``."""
    F = forest_matrix(g)
    d = g.degrees
    return sum(d[i] * sum(F.rows[i][j] * d[j] for j in range(g.n)) for i in range(g.n))


def dvec_dot_fv(g: Graph, v: int) -> int:
    """``d^T f^v``: degree-weighted separating counts against ``v``."""
    g.check_vertex(v)
    F = forest_matrix(g)
    return sum(d * f for d, f in zip(g.degrees, F.column(v)))


@lru_cache(maxsize=_CACHE)
def dqd(g: Graph, v: int) -> int:
    """``d^T Q d`` anchored at ``v``, from a single grounded solve.

    Grounding the Laplacian at ``v`` gives ``Q = tau * L_v^{-1}`` (zero
    row and column at ``v``), so only ``L_v x = d`` needs solving.
    """
    g.check_vertex(v)
    require_connected(g)
    if g.n == 1:
        return 0
    fac = grounded_factor(g, v)
    tau = _tau_from_factor(fac)
    d = g.degrees
    x = fac.solve({i: d[i] for i in range(g.n) if i != v})
    return _as_int(tau * sum(d[i] * xi for i, xi in x.items()), "d^T Q d")


def one_separation_dfd(h1: Graph, v1: int, h2: Graph, v2: int) -> int:
    """``d^T F d`` of the graph glued at ``v1 ~ v2``, from the two pieces alone."""
    require_connected(h1)
    require_connected(h2)
    h1.check_vertex(v1)
    h2.check_vertex(v2)
    t1, t2 = tree_count(h1), tree_count(h2)
    return (
        t2 * dfd(h1)
        + t1 * dfd(h2)
        + 4 * t2 * h2.m * dvec_dot_fv(h1, v1)
        + 4 * t1 * h1.m * dvec_dot_fv(h2, v2)
    )

