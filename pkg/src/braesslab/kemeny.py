"""Kemeny's constant of the simple random walk on a connected graph.

The exact value ``d^T F d / (4 m tau)`` is authoritative. The spectral
and mean-first-passage routes exist to cross-check it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ._exact import solve_rational
from .errors import ConsistencyError, InvalidParameterError, NumericError
from .forests import dfd, tree_count
from .graph import Graph, require_connected

__all__ = ["KemenyValue", "kemeny_constant", "kemeny_spectral", "kemeny_mfpt", "mfpt_matrix"]

#: largest order accepted by the rational MFPT route
MFPT_MAX_N = 40


@dataclass(frozen=True)
class KemenyValue:
    exact: Fraction
    approx: float

    def __str__(self):
        return f"{self.exact} ≈ {self.approx:.6f}"


def kemeny_constant(g: Graph) -> KemenyValue:
    """Exact Kemeny constant as a reduced fraction.

    Raises
    ------
    DisconnectedGraphError
        If ``g`` is disconnected.
    InvalidParameterError
        If ``g`` has fewer than two vertices.
    """
    require_connected(g, min_n=2)
    exact = Fraction(dfd(g), 4 * g.m * tree_count(g))
    return KemenyValue(exact, float(exact))


def kemeny_spectral(g: Graph) -> float:
    """Sum of ``1 / (1 - lambda)`` over the non-unit transition eigenvalues.

    Uses the symmetric matrix ``D^{-1/2} A D^{-1/2}``, which has the same
    spectrum as ``D^{-1} A``.
    """
    require_connected(g, min_n=2)
    A = np.zeros((g.n, g.n))
    for u, v in g.edges:
        A[u, v] = A[v, u] = 1.0
    s = 1.0 / np.sqrt(np.asarray(g.degrees, dtype=float))
    S = A * s[:, None] * s[None, :]
    try:
        lam = np.linalg.eigvalsh(S)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"eigen-solver failed on n={g.n}, m={g.m}: {exc}") from exc
    lam = np.sort(lam)[::-1]
    if abs(lam[0] - 1.0) > 1e-8:
        raise NumericError(f"leading eigenvalue {lam[0]!r} is not 1")
    return float(np.sum(1.0 / (1.0 - lam[1:])))


def mfpt_matrix(g: Graph) -> list[list[Fraction]]:
    """Exact mean first passage times ``m[i][j]`` (``m[i][i] = 0``).

    For each target ``j`` solves ``m_ij = 1 + sum_k p_ik m_kj`` over
    ``i != j``.
    """
    require_connected(g, min_n=2)
    if g.n > MFPT_MAX_N:
        raise InvalidParameterError(f"MFPT route limited to n <= {MFPT_MAX_N}")
    n = g.n
    deg = g.degrees
    adj = g.adjacency
    out = [[Fraction(0)] * n for _ in range(n)]
    for j in range(n):
        idx = [i for i in range(n) if i != j]
        pos = {i: r for r, i in enumerate(idx)}
        A = [[Fraction(0)] * (n - 1) for _ in idx]
        for r, i in enumerate(idx):
            A[r][r] += 1
            for k in adj[i]:
                if k != j:
                    A[r][pos[k]] -= Fraction(1, deg[i])
        sol = solve_rational(A, [[1] for _ in idx])
        for r, i in enumerate(idx):
            out[i][j] = sol[r][0]
    return out


def kemeny_mfpt(g: Graph) -> Fraction:
    """Kemeny's constant from its definition ``sum_{j != i} m_ij w_j``.

    Evaluates the sum for every start vertex ``i`` and raises
    :class:`ConsistencyError` unless all agree.
    """
    M = mfpt_matrix(g)
    w = [Fraction(d, 2 * g.m) for d in g.degrees]
    values = {sum(M[i][j] * w[j] for j in range(g.n) if j != i) for i in range(g.n)}
    if len(values) != 1:
        raise ConsistencyError(f"Kemeny sum depends on the start vertex: {sorted(values)}")
    return values.pop()
