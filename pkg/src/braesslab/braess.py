"""Braess edges and the twin-pendent-path criterion.

Hang paths of lengths ``k1`` and ``k2`` from a vertex ``v`` of ``G``
(giving ``G~``) and then join their tips (giving ``G^``, which closes a
cycle of length ``k = k1 + k2 + 1``). Kemeny's constant goes up exactly
when the integer-valued

    Phi = k*phi_v + 4 m^2 tau k*phi1 + (2 m tau k / 3)*phi2 + (2 tau k / 3)*phi3

is positive, where ``phi_v = 2 d^T Q_{G,v} d`` depends on ``G`` and
``phi1..phi3`` are polynomials in ``(k1, k2)``. More precisely

    kappa(G^) - kappa(G~) = Phi / (4 k (m + k) (m + k - 1) tau).
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .errors import ConsistencyError, InvalidParameterError
from .forests import dfd, dqd, dvec_dot_fv, grounded_tree_count, tree_count
from .graph import (
    Graph,
    TwinPathSpec,
    attach_twin_paths,
    close_twin_paths,
    make_family,
    identify,
    require_connected,
)
from .kemeny import kemeny_constant

__all__ = [
    "PhiBreakdown",
    "ParadoxVerdict",
    "BraessEdge",
    "BraessScanResult",
    "phi_v",
    "phi_polys",
    "big_phi",
    "delta_kappa_from_phi",
    "is_paradoxical_at",
    "braess_scan",
    "dfd_with_path",
    "dfd_with_cycle",
]


def phi_v(g: Graph, v: int) -> int:
    """``phi_G(v) = d^T (2 f^v 1^T - F) d = 2 d^T Q_{G,v} d``; always positive."""
    require_connected(g, min_n=2)
    return 2 * dqd(g, v)


def phi_polys(k1: int, k2: int) -> tuple[Fraction, Fraction, Fraction]:
    """The three polynomials weighting ``m^2 tau``, ``m tau`` and ``tau``."""
    TwinPathSpec(0, k1, k2)
    s = k1 + k2
    p = k1 * k2
    phi1 = Fraction(-2 * s * (s - 1), 3) + 2 * p
    phi2 = Fraction(-s * (5 * s * s - s - 1) + 12 * p * (s + 1))
    phi3 = Fraction(-(s + 1) * s * (s - 1) ** 2)
    return phi1, phi2, phi3


@dataclass(frozen=True)
class PhiBreakdown:
    v: int
    k1: int
    k2: int
    phi_v: int
    phi1: Fraction
    phi2: Fraction
    phi3: Fraction
    m: int
    tau: int
    k: int
    Phi: Fraction

    @property
    def verdict(self) -> bool:
        """True iff joining the tips strictly increases Kemeny's constant."""
        return self.Phi > 0

    @property
    def boundary(self) -> bool:
        """Phi is exactly zero: the tip edge leaves Kemeny's constant unchanged."""
        return self.Phi == 0

    @property
    def sign(self) -> int:
        return (self.Phi > 0) - (self.Phi < 0)

    def delta_kappa(self) -> Fraction:
        return delta_kappa_from_phi(self.Phi, self.m, self.tau, self.k)


def big_phi(g: Graph, v: int, k1: int, k2: int) -> PhiBreakdown:
    """Evaluate ``Phi_G(v, k1, k2)`` exactly, with all of its ingredients."""
    g.check_vertex(v)
    phi1, phi2, phi3 = phi_polys(k1, k2)
    pv = phi_v(g, v)
    m, tau, k = g.m, grounded_tree_count(g, v), k1 + k2 + 1
    Phi = k * pv + 4 * m * m * tau * k * phi1 + Fraction(2 * m * tau * k, 3) * phi2 + Fraction(2 * tau * k, 3) * phi3
    return PhiBreakdown(v, k1, k2, pv, phi1, phi2, phi3, m, tau, k, Phi)


def delta_kappa_from_phi(Phi: Fraction, m: int, tau: int, k: int) -> Fraction:
    return Fraction(Phi) / (4 * k * (m + k) * (m + k - 1) * tau)


@dataclass(frozen=True)
class ParadoxVerdict:
    paradoxical: bool
    breakdown: PhiBreakdown
    g_tilde: Graph | None = None
    g_hat: Graph | None = None
    tips: tuple[int, int] | None = None
    delta_kappa: Fraction | None = None

    @property
    def boundary(self) -> bool:
        return self.breakdown.boundary

    def __bool__(self):
        return self.paradoxical


def is_paradoxical_at(g: Graph, v: int, k1: int, k2: int, verify: bool = False) -> ParadoxVerdict:
    """Decide whether joining the tips of twin paths at ``v`` is a Braess edge.

    With ``verify=True`` the two graphs are built, both Kemeny constants
    are computed exactly, and the difference must equal the value implied
    by ``Phi`` (in particular have the same sign); otherwise
    :class:`ConsistencyError` is raised.
    """
    bd = big_phi(g, v, k1, k2)
    if not verify:
        return ParadoxVerdict(bd.verdict, bd)
    g_tilde, _, tips = attach_twin_paths(g, TwinPathSpec(v, k1, k2))
    g_hat = close_twin_paths(g_tilde, tips)
    delta = kemeny_constant(g_hat).exact - kemeny_constant(g_tilde).exact
    sign = (delta > 0) - (delta < 0)
    if sign != bd.sign or delta != bd.delta_kappa():
        raise ConsistencyError(
            f"v={v}, (k1,k2)=({k1},{k2}): direct delta kappa {delta} disagrees with Phi={bd.Phi}"
        )
    return ParadoxVerdict(bd.verdict, bd, g_tilde, g_hat, tips, delta)


@dataclass(frozen=True)
class BraessEdge:
    edge: tuple[int, int]
    delta_kappa: Fraction

    @property
    def is_braess(self) -> bool:
        return self.delta_kappa > 0


@dataclass(frozen=True)
class BraessScanResult:
    entries: tuple[BraessEdge, ...]
    kappa: Fraction

    @property
    def paradoxical(self) -> bool:
        return any(e.is_braess for e in self.entries)

    @property
    def status(self) -> str:
        return "ok" if self.entries else "no non-edges"

    def braess_edges(self) -> list[tuple[int, int]]:
        return [e.edge for e in self.entries if e.is_braess]

    def ranked(self) -> list[BraessEdge]:
        """Entries by decreasing delta kappa, ties broken lexicographically."""
        return sorted(self.entries, key=lambda e: (-e.delta_kappa, e.edge))


def _default_threads() -> int:
    try:
        return max(1, int(os.environ.get("BRAESSLAB_THREADS", "1")))
    except ValueError:
        return 1


def braess_scan(g: Graph, threads: int | None = None) -> BraessScanResult:
    """Exact change in Kemeny's constant for every non-edge of ``g``.

    Entries are in lexicographic edge order regardless of ``threads``.
    A complete graph yields an empty scan (``status == "no non-edges"``).
    """
    require_connected(g, min_n=2)
    base = kemeny_constant(g).exact
    candidates = g.non_edges()

    def one(e):
        return BraessEdge(e, kemeny_constant(g.add_edge(*e)).exact - base)

    workers = threads if threads is not None else _default_threads()
    if workers > 1 and len(candidates) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            entries = list(pool.map(one, candidates))
    else:
        entries = [one(e) for e in candidates]
    return BraessScanResult(tuple(entries), base)


def dfd_with_path(h: Graph, v: int, k1: int, k2: int) -> int:
    """``d^T F d`` after hanging a path through ``v`` with arms ``k1`` and ``k2``.

    Closed form in terms of ``h`` alone; ``k1 + k2 >= 1``.
    """
    require_connected(h)
    h.check_vertex(v)
    if k1 < 0 or k2 < 0 or k1 + k2 < 1:
        raise InvalidParameterError(f"need k1, k2 >= 0 with k1 + k2 >= 1, got ({k1}, {k2})")
    s = k1 + k2
    tau, m = tree_count(h), h.m
    # 4s^3 + 2s = 2s(2s^2 + 1) is always divisible by 3
    return dfd(h) + 4 * s * dvec_dot_fv(h, v) + tau * ((4 * s**3 + 2 * s) // 3 + 4 * m * (k1 * k1 + k2 * k2))


def dfd_with_cycle(h: Graph, v: int, k: int) -> int:
    """``d^T F d`` after gluing a cycle of length ``k >= 3`` at ``v``."""
    require_connected(h)
    h.check_vertex(v)
    if k < 3:
        raise InvalidParameterError(f"cycle length must be >= 3, got {k}")
    tau, m = tree_count(h), h.m
    return k * dfd(h) + 4 * k * k * dvec_dot_fv(h, v) + 2 * tau * (k + 2 * m) * (k - 1) * k * (k + 1) // 3


def _path_composite(h: Graph, v: int, k1: int, k2: int) -> Graph:
    """Direct construction for :func:`dfd_with_path`, used by tests."""
    return identify(h, v, make_family("path", k1 + k2 + 1), k1)[0]
