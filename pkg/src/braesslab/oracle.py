"""Brute-force ground truth for small graphs.

Everything here is deliberately naive: spanning trees and 2-tree
spanning forests are enumerated edge subset by edge subset, and Kemeny's
constant comes from mean first passage times solved by a private
elimination routine. Graphs above the order bound are refused rather
than approximated.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .errors import ConsistencyError, InvalidParameterError, OracleBoundError
from .graph import Graph, require_connected

__all__ = [
    "DEFAULT_BOUND",
    "ForestCensus",
    "ForestTables",
    "iter_spanning_forests",
    "iter_spanning_trees",
    "enumerate_spanning_trees",
    "forest_tables",
    "census",
    "oracle_forest_matrix",
    "oracle_q_matrix",
    "mfpt_bruteforce",
    "levene_loizou_sums",
    "kemeny_bruteforce",
]

DEFAULT_BOUND = 10


def _check_bound(g: Graph, bound: int):
    if g.n > bound:
        raise OracleBoundError(f"oracle refuses n={g.n} > bound {bound}")


def iter_spanning_forests(g: Graph, trees: int, bound: int = DEFAULT_BOUND) -> Iterator[tuple[tuple, tuple[int, ...]]]:
    """Yield ``(edges, labels)`` for every spanning forest with exactly ``trees`` trees.

    ``labels[x]`` is the smallest vertex in the tree containing ``x``.
    Backtracks over edge subsets of size ``n - trees``, skipping any
    subset that closes a cycle.
    """
    _check_bound(g, bound)
    n = g.n
    if not 1 <= trees <= max(n, 1):
        return
    need = n - trees
    edges = g.edges
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    chosen = []

    def rec(start):
        if len(chosen) == need:
            labels = []
            for x in range(n):
                labels.append(find(x))
            # relabel roots by smallest member
            smallest = {}
            for x in range(n):
                smallest.setdefault(labels[x], x)
            yield tuple(chosen), tuple(smallest[r] for r in labels)
            return
        for idx in range(start, len(edges) - (need - len(chosen)) + 1):
            u, v = edges[idx]
            ru, rv = find(u), find(v)
            if ru == rv:
                continue
            parent[rv] = ru
            chosen.append(edges[idx])
            yield from rec(idx + 1)
            chosen.pop()
            parent[rv] = rv

    yield from rec(0)


def iter_spanning_trees(g: Graph, bound: int = DEFAULT_BOUND) -> Iterator[tuple]:
    """Edge sets of all spanning trees."""
    for edges, _ in iter_spanning_forests(g, 1, bound):
        yield edges


def enumerate_spanning_trees(g: Graph, bound: int = DEFAULT_BOUND) -> int:
    """Number of spanning trees, counted one by one."""
    _check_bound(g, bound)
    if g.n == 0:
        raise InvalidParameterError("empty graph")
    return sum(1 for _ in iter_spanning_trees(g, bound))


@dataclass(frozen=True)
class ForestTables:
    """Counts gathered in one sweep over the 2-tree spanning forests.

    ``f[i][j]``: forests separating ``i`` and ``j``.
    ``q[v][i][j]``: forests with ``i``, ``j`` together and ``v`` apart.
    """

    tau: int
    f: tuple[tuple[int, ...], ...]
    q: tuple[tuple[tuple[int, ...], ...], ...]


def forest_tables(g: Graph, bound: int = DEFAULT_BOUND) -> ForestTables:
    _check_bound(g, bound)
    n = g.n
    tau = enumerate_spanning_trees(g, bound)
    f = [[0] * n for _ in range(n)]
    q = [[[0] * n for _ in range(n)] for _ in range(n)]
    for _, labels in iter_spanning_forests(g, 2, bound):
        root = labels[0]
        a = [x for x in range(n) if labels[x] == root]
        b = [x for x in range(n) if labels[x] != root]
        for i in a:
            for j in b:
                f[i][j] += 1
                f[j][i] += 1
        for side, other in ((a, b), (b, a)):
            for v in other:
                qv = q[v]
                for i in side:
                    row = qv[i]
                    for j in side:
                        row[j] += 1
    return ForestTables(
        tau,
        tuple(tuple(r) for r in f),
        tuple(tuple(tuple(r) for r in qv) for qv in q),
    )


def oracle_forest_matrix(g: Graph, bound: int = DEFAULT_BOUND) -> list[list[int]]:
    return [list(r) for r in forest_tables(g, bound).f]


def oracle_q_matrix(g: Graph, v: int, bound: int = DEFAULT_BOUND) -> list[list[int]]:
    g.check_vertex(v)
    return [list(r) for r in forest_tables(g, bound).q[v]]


@dataclass(frozen=True)
class ForestCensus:
    """Classification of 2-tree spanning forests relative to ``i``, ``j`` and ``v``.

    Attribute names spell out which vertices share a tree:
    ``i_j`` separates ``i`` and ``j``; ``ij_v`` has ``i, j`` together
    apart from ``v``; ``i_vj`` has ``v, j`` together apart from ``i``;
    ``iv_j`` has ``i, v`` together apart from ``j``.
    """

    i: int
    j: int
    v: int
    i_j: int
    ij_v: int
    i_vj: int
    iv_j: int


def census(g: Graph, i: int, j: int, v: int, bound: int = DEFAULT_BOUND) -> ForestCensus:
    for x in (i, j, v):
        g.check_vertex(x)
    _check_bound(g, bound)
    i_j = ij_v = i_vj = iv_j = 0
    for _, lab in iter_spanning_forests(g, 2, bound):
        if lab[i] != lab[j]:
            i_j += 1
            if lab[v] == lab[j]:
                i_vj += 1
            if lab[v] == lab[i]:
                iv_j += 1
        elif lab[v] != lab[i]:
            ij_v += 1
    return ForestCensus(i, j, v, i_j, ij_v, i_vj, iv_j)


# --- Kemeny's constant from first passage times ---------------------------

def _gauss(a: list[list[Fraction]], b: list[Fraction]) -> list[Fraction]:
    n = len(a)
    for c in range(n):
        p = next(r for r in range(c, n) if a[r][c] != 0)
        a[c], a[p] = a[p], a[c]
        b[c], b[p] = b[p], b[c]
        for r in range(c + 1, n):
            if a[r][c]:
                t = a[r][c] / a[c][c]
                for k in range(c, n):
                    a[r][k] -= t * a[c][k]
                b[r] -= t * b[c]
    x = [Fraction(0)] * n
    for r in range(n - 1, -1, -1):
        s = b[r] - sum(a[r][k] * x[k] for k in range(r + 1, n))
        x[r] = s / a[r][r]
    return x


def mfpt_bruteforce(g: Graph, bound: int = DEFAULT_BOUND) -> list[list[Fraction]]:
    """Mean first passage times ``m[i][j]`` with ``m[i][i] = 0``.

    For each target ``j``: ``m[i][j] = 1 + sum_k P[i][k] m[k][j]`` for ``i != j``.
    """
    _check_bound(g, bound)
    require_connected(g, min_n=2)
    n = g.n
    deg = g.degrees
    adj = g.adjacency
    m = [[Fraction(0)] * n for _ in range(n)]
    for j in range(n):
        others = [i for i in range(n) if i != j]
        pos = {x: t for t, x in enumerate(others)}
        a = [[Fraction(0)] * len(others) for _ in others]
        for x in others:
            r = pos[x]
            a[r][r] += 1
            for y in adj[x]:
                if y != j:
                    a[r][pos[y]] -= Fraction(1, deg[x])
        sol = _gauss(a, [Fraction(1)] * len(others))
        for x in others:
            m[x][j] = sol[pos[x]]
    return m


def levene_loizou_sums(g: Graph, bound: int = DEFAULT_BOUND) -> dict[str, Fraction]:
    """``sum_ij w_i m_ij w_j`` under both diagonal conventions.

    ``"zero"`` uses ``m_ii = 0``; ``"return_time"`` uses ``m_ii = 1/w_i``.
    """
    m = mfpt_bruteforce(g, bound)
    two_m = 2 * g.m
    w = [Fraction(d, two_m) for d in g.degrees]
    n = g.n
    zero = sum(w[i] * m[i][j] * w[j] for i in range(n) for j in range(n))
    ret = zero + sum(w[i] * (1 / w[i]) * w[i] for i in range(n))
    return {"zero": zero, "return_time": ret}


def kemeny_bruteforce(g: Graph, bound: int = DEFAULT_BOUND) -> Fraction:
    """Kemeny's constant ``sum_j w_j m_ij``, checked to be independent of ``i``.

    Also checks ``kappa + 1 = sum_ij w_i m_ij w_j`` with return times on
    the diagonal. Any failure raises :class:`ConsistencyError`.
    """
    m = mfpt_bruteforce(g, bound)
    two_m = 2 * g.m
    w = [Fraction(d, two_m) for d in g.degrees]
    n = g.n
    vals = {sum(w[j] * m[i][j] for j in range(n)) for i in range(n)}
    if len(vals) != 1:
        raise ConsistencyError(f"first passage sums depend on the start vertex: {sorted(vals)}")
    kappa = vals.pop()
    ll = sum(w[i] * m[i][j] * w[j] for i in range(n) for j in range(n)) + sum(w)
    if ll != kappa + 1:
        raise ConsistencyError(f"weighted first passage sum {ll} != kappa + 1 = {kappa + 1}")
    return kappa
