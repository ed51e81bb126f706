"""Sequence-level analysis of ``phi_G(v) / (4 m^2 tau)`` over graph families.

Finite computation cannot settle a limit, so everything here reports
what was checked on a tested range. Known limits for the built-in
families are attached as annotations labelled ``"known"``, while
measured behaviour is labelled ``"observed"``; the two are never merged.

Tree helpers evaluate ``d^T Q d`` combinatorially (no linear algebra):
the decomposition along a longest path from a pendent vertex, the broom
closed form, the branch-wise lower bound and the path closed form.
"""

from __future__ import annotations

from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .braess import big_phi, phi_v
from .errors import InvalidParameterError
from .forests import grounded_tree_count
from .graph import (
    FAMILY_KINDS,
    BranchProfile,
    Graph,
    branches_at,
    distances_from,
    eccentricity,
    identify,
    is_tree,
    make_family,
    require_connected,
)

__all__ = [
    "FamilySpec",
    "RatioRecord",
    "RatioSeries",
    "ThresholdReport",
    "SequenceRecord",
    "SequenceDescriptor",
    "AugmentResult",
    "KNOWN_LIMITS",
    "KNOWN_THRESHOLDS",
    "STAR_PENDENT_PAIRS",
    "ratio",
    "ratio_series",
    "threshold_scan",
    "star_pendent_thresholds",
    "branch_min_dqd",
    "broom_dqd",
    "pendant_decomposition_dqd",
    "tree_dqd",
    "pn_dqd",
    "pn_dqd_extrema",
    "sequence_profile",
    "trend",
    "augment_until_paradoxical",
]

VERTEX_POLICIES = ("default", "pendent", "centre")


# --- families -------------------------------------------------------------

@dataclass(frozen=True)
class FamilySpec:
    """A sequence ``(G_n, v)`` indexed by the order ``n``.

    ``vertex_policy`` is ``"pendent"``, ``"centre"``, ``"default"``, a
    fixed vertex id, or a callable ``(graph, n) -> v``. For brooms,
    ``alpha`` is an int or a callable ``n -> alpha``. A ``"custom"``
    family supplies ``generator: n -> (graph, v)``.

    Labelling: path ``0-1-...``, pendent ``0``, centre ``(n-1)//2``;
    star centre ``n-1``, pendent ``0``; broom pendent ``0`` is the end
    of the handle away from the bristles.
    """

    kind: str
    vertex_policy: str | int | Callable[[Graph, int], int] = "default"
    alpha: int | Callable[[int], int] | None = None
    generator: Callable[[int], tuple[Graph, int]] | None = None
    name: str | None = None

    def __post_init__(self):
        if self.kind == "custom":
            if self.generator is None:
                raise InvalidParameterError("custom family needs a generator")
        elif self.kind not in FAMILY_KINDS:
            raise InvalidParameterError(f"unknown family kind {self.kind!r}")
        if self.kind == "broom" and self.alpha is None:
            raise InvalidParameterError("broom family needs alpha")
        vp = self.vertex_policy
        if isinstance(vp, str) and vp not in VERTEX_POLICIES:
            raise InvalidParameterError(f"unknown vertex policy {vp!r}")
        if isinstance(vp, str) and vp == "centre" and self.kind in ("broom", "complete", "cycle"):
            raise InvalidParameterError(f"{self.kind} has no distinguished centre")

    @property
    def label(self) -> str:
        if self.name:
            return self.name
        vp = self.vertex_policy
        vp = vp if isinstance(vp, (str, int)) else "custom"
        return f"{self.kind}[{vp}]"

    @property
    def min_n(self) -> int:
        if self.kind == "cycle":
            return 3
        if self.kind == "star" and self.vertex_policy == "centre":
            return 3
        if self.kind == "broom":
            return 2
        if self.kind == "custom":
            return 1
        return 2

    def _alpha(self, n: int) -> int:
        return self.alpha(n) if callable(self.alpha) else self.alpha

    def build(self, n: int) -> tuple[Graph, int]:
        """The member of order ``n`` and its specified vertex."""
        if self.kind == "custom":
            g, v = self.generator(n)
            if g.n != n:
                raise InvalidParameterError(f"generator returned order {g.n}, expected {n}")
            require_connected(g)
            g.check_vertex(v)
            return g, v
        g = make_family(self.kind, n, self._alpha(n) if self.kind == "broom" else None)
        vp = self.vertex_policy
        if callable(vp):
            v = vp(g, n)
        elif isinstance(vp, int):
            v = vp
        elif vp == "centre":
            v = n - 1 if self.kind == "star" else (n - 1) // 2
        else:
            v = 0
        g.check_vertex(v)
        return g, v


def _family(kind: str, policy="default") -> FamilySpec:
    return FamilySpec(kind, policy)


# limits of the ratio as n grows, keyed by (kind, policy)
KNOWN_LIMITS = {
    ("complete", "default"): "0",
    ("cycle", "default"): "inf",
    ("path", "pendent"): "inf",
    ("path", "default"): "inf",
    ("path", "centre"): "inf",
    ("star", "pendent"): "2",
    ("star", "default"): "2",
    ("star", "centre"): "0",
}

# smallest n from which (v, k1, k2)-paradoxicality holds, keyed by (kind, policy, k1, k2)
KNOWN_THRESHOLDS = {
    ("complete", "default", 1, 2): 7,
    ("complete", "default", 2, 2): 13,
    ("cycle", "default", 1, 2): 7,
    ("cycle", "default", 2, 2): 10,
    ("path", "pendent", 1, 2): 5,
    ("star", "pendent", 1, 1): 2,
    ("star", "pendent", 0, 2): 12,
    ("star", "pendent", 1, 2): 6,
    ("star", "pendent", 2, 2): 9,
    ("star", "pendent", 2, 3): 47,
}

STAR_PENDENT_PAIRS = ((1, 1), (0, 2), (1, 2), (2, 2), (2, 3))


def _policy_key(fam: FamilySpec) -> str | None:
    vp = fam.vertex_policy
    if isinstance(vp, str):
        if fam.kind == "path" and vp == "default":
            return "pendent"
        if fam.kind == "star" and vp == "default":
            return "pendent"
        return vp
    return None


def known_threshold(fam: FamilySpec, k1: int, k2: int) -> int | None:
    """Threshold on record for this family and pair (order-insensitive), if any."""
    key = _policy_key(fam)
    if fam.kind == "custom" or key is None:
        return None
    return KNOWN_THRESHOLDS.get((fam.kind, key, k1, k2), KNOWN_THRESHOLDS.get((fam.kind, key, k2, k1)))


def known_limit(fam: FamilySpec) -> str | None:
    key = _policy_key(fam)
    if fam.kind == "custom" or key is None:
        return None
    return KNOWN_LIMITS.get((fam.kind, key))


# --- ratio ----------------------------------------------------------------

def ratio(g: Graph, v: int) -> Fraction:
    """``phi_G(v) / (4 m^2 tau)``, exact."""
    pv = phi_v(g, v)
    return Fraction(pv, 4 * g.m * g.m * grounded_tree_count(g, v))


@dataclass(frozen=True)
class RatioRecord:
    n: int
    v: int
    m: int
    ratio: Fraction
    verdicts: tuple[tuple[tuple[int, int], bool], ...] = ()


@dataclass(frozen=True)
class RatioSeries:
    family: str
    records: tuple[RatioRecord, ...]
    known_limit: str | None = None

    def ratios(self) -> list[Fraction]:
        return [r.ratio for r in self.records]

    def observed_trend(self) -> str:
        return trend(self.ratios())


def _map_ordered(fn, items, threads):
    items = list(items)
    if threads and threads > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def ratio_series(
    fam: FamilySpec,
    n_range: Iterable[int],
    pairs: Sequence[tuple[int, int]] = (),
    threads: int | None = None,
) -> RatioSeries:
    def one(n):
        g, v = fam.build(n)
        verdicts = tuple(((k1, k2), big_phi(g, v, k1, k2).verdict) for k1, k2 in pairs)
        return RatioRecord(n, v, g.m, ratio(g, v), verdicts)

    ns = [n for n in n_range if n >= max(fam.min_n, 2)]
    return RatioSeries(fam.label, tuple(_map_ordered(one, ns, threads)), known_limit(fam))


# --- thresholds -----------------------------------------------------------

@dataclass(frozen=True)
class ThresholdReport:
    """Outcome of scanning ``Phi`` along a family for one pair ``(k1, k2)``.

    ``first_n_true`` is the smallest tested n with ``Phi > 0``; ``onset``
    is the start of the final run of positive verdicts reaching the end
    of the range. ``certified`` means every verdict from ``first_n_true``
    on is positive *and* the ratio is non-decreasing over that tail, which
    by the monotonicity argument extends paradoxicality past the range.
    The pair (1, 1) is paradoxical for every connected graph and is
    certified outright.
    """

    family: str
    k1: int
    k2: int
    tested_range: tuple[int, int]
    verdicts: tuple[tuple[int, int], ...]  # (n, sign of Phi)
    first_n_true: int | None
    onset: int | None
    boundary: tuple[int, ...]
    certified: bool
    ratio_monotone_tail: bool
    known: int | None = None
    note: str = ""

    @property
    def tail_all_true(self) -> bool:
        return self.first_n_true is not None and self.onset == self.first_n_true

    @property
    def agrees_with_known(self) -> bool | None:
        if self.known is None:
            return None
        return self.first_n_true == self.known and self.tail_all_true


def threshold_scan(
    fam: FamilySpec,
    k1: int,
    k2: int,
    n_range: Iterable[int],
    threads: int | None = None,
) -> ThresholdReport:
    """Evaluate ``Phi_{G_n}(v, k1, k2)`` for every ``n`` in ``n_range``."""
    ns = sorted({n for n in n_range if n >= max(fam.min_n, 2)})
    if not ns:
        raise InvalidParameterError("empty n range for this family")

    def one(n):
        g, v = fam.build(n)
        bd = big_phi(g, v, k1, k2)
        return n, bd.sign, ratio(g, v)

    rows = _map_ordered(one, ns, threads)
    verdicts = tuple((n, s) for n, s, _ in rows)
    boundary = tuple(n for n, s in verdicts if s == 0)
    first = next((n for n, s in verdicts if s > 0), None)
    onset = None
    for n, s in reversed(verdicts):
        if s > 0:
            onset = n
        else:
            break
    trivial = (min(k1, k2), max(k1, k2)) == (1, 1)
    monotone = False
    if first is not None:
        tail = [r for n, _, r in rows if n >= first]
        monotone = all(a <= b for a, b in zip(tail, tail[1:]))
    if trivial:
        certified = first is not None and onset == first
        note = "(1,1) is paradoxical for every connected graph"
    else:
        certified = first is not None and onset == first and monotone
        if certified:
            note = "non-decreasing ratio over the tested tail"
        elif first is not None and onset == first:
            note = "positive over the tested tail, ratio not monotone: no extension beyond range"
        else:
            note = "no stable positive tail in range"
    return ThresholdReport(
        fam.label, k1, k2, (ns[0], ns[-1]), verdicts, first, onset, boundary,
        certified, monotone, known_threshold(fam, k1, k2), note,
    )


def star_pendent_thresholds(n_max: int = 60, threads: int | None = None) -> list[ThresholdReport]:
    """Threshold reports for stars at a pendent vertex, both orders of each pair."""
    fam = FamilySpec("star", "pendent")
    out = []
    for k1, k2 in STAR_PENDENT_PAIRS:
        out.append(threshold_scan(fam, k1, k2, range(2, n_max + 1), threads))
        if k1 != k2:
            out.append(threshold_scan(fam, k2, k1, range(2, n_max + 1), threads))
    return out


# --- tree machinery -------------------------------------------------------

def _check_profile(pairs):
    for ni, ei in pairs:
        if not ni >= ei + 1 >= 2:
            raise InvalidParameterError(f"branch (n_i, e_i) = ({ni}, {ei}) needs n_i >= e_i + 1 >= 2")


def branch_min_dqd(profile: BranchProfile | Sequence[tuple[int, int]]) -> int:
    """Smallest ``d^T Q d`` over trees with the given branch sizes and eccentricities."""
    pairs = profile.pairs() if isinstance(profile, BranchProfile) else list(profile)
    _check_profile(pairs)
    total = 0
    for ni, ei in pairs:
        total += (ni - ei - 1) * (4 * ni + 4 * ei - 7) + ei * (2 * ei - 1) * (2 * ei + 1) // 3
    return total


def broom_dqd(n: int, alpha: int) -> int:
    """``d^T Q d`` of the broom at the handle end far from the bristles (vertex 0)."""
    if not n > alpha >= 1:
        raise InvalidParameterError(f"broom needs n > alpha >= 1, got ({n}, {alpha})")
    r = n - alpha - 1
    return 4 * (alpha - 1) * r * r + r * (4 * alpha * alpha - 3) + alpha * (2 * alpha - 1) * (2 * alpha + 1) // 3


def _bfs(adj, verts, src):
    dist = {src: 0}
    parent = {src: None}
    dq = deque([src])
    while dq:
        x = dq.popleft()
        for y in adj[x]:
            if y in verts and y not in dist:
                dist[y] = dist[x] + 1
                parent[y] = x
                dq.append(y)
    return dist, parent


def _reach(adj, verts, start, blocked):
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y in verts and y not in seen and y not in blocked:
                seen.add(y)
                stack.append(y)
    return seen


def _pendant_dqd(adj, verts: frozenset, v: int) -> int:
    if len(verts) == 1:
        return 0
    dist, parent = _bfs(adj, verts, v)
    alpha = max(dist.values())
    far = min(x for x, d in dist.items() if d == alpha)
    path = [far]
    while path[-1] != v:
        path.append(parent[path[-1]])
    path.reverse()
    on_path = set(path)
    sizes = [1] * (alpha + 1)
    inner = 0
    for k in range(1, alpha):
        tk = _reach(adj, verts, path[k], on_path - {path[k]})
        sizes[k] = len(tk)
        inner += _rooted_dqd(adj, frozenset(tk), path[k])
    total = inner + alpha * (2 * alpha - 1) * (2 * alpha + 1) // 3
    s = 0
    for i in range(alpha - 1, 0, -1):
        s += sizes[i] - 1
        total += 4 * s * s + 4 * s * (2 * (alpha - i) + 1)
    return total


def _rooted_dqd(adj, verts: frozenset, root: int) -> int:
    # additivity over the branches at root, each with root pendent
    total = 0
    for u in adj[root]:
        if u in verts:
            branch = _reach(adj, verts, u, {root}) | {root}
            total += _pendant_dqd(adj, frozenset(branch), root)
    return total


def _require_tree(t: Graph):
    if not is_tree(t):
        raise InvalidParameterError("graph is not a tree")


def pendant_decomposition_dqd(t: Graph, v: int) -> int:
    """``d^T Q_{T,v} d`` for a tree and a pendent ``v``, by splitting along a longest path.

    Take a longest path ``v = v0, ..., va`` from ``v`` and let ``T_k`` be
    the subtree hanging at ``v_k`` off the path, of order ``n_k``. With
    ``S_i = sum_{j=i}^{a-1} (n_j - 1)``::

        dQd = 4 sum S_i^2 + 4 sum S_i (2(a - i) + 1) + sum dQd(T_i, v_i)
              + a (2a - 1)(2a + 1) / 3

    The ``T_i`` terms recurse through branch additivity.
    """
    _require_tree(t)
    t.check_vertex(v)
    if t.n > 1 and len(t.adjacency[v]) != 1:
        raise InvalidParameterError(f"vertex {v} is not pendent")
    return _pendant_dqd(t.adjacency, frozenset(range(t.n)), v)


def tree_dqd(t: Graph, v: int) -> int:
    """``d^T Q_{T,v} d`` for any vertex of a tree, combinatorially."""
    _require_tree(t)
    t.check_vertex(v)
    return _rooted_dqd(t.adjacency, frozenset(range(t.n)), v)


def pn_dqd(n: int, v: int) -> int:
    """``d^T Q d`` of the path on ``n`` vertices at the 0-based vertex ``v``.

    The closed form is written in the 1-based position ``p = v + 1``:
    ``4(n-1)p^2 - 4(n^2-1)p + (4n^3 - n)/3 - 1``.
    """
    if n < 2 or not 0 <= v < n:
        raise InvalidParameterError(f"need n >= 2 and 0 <= v < n, got n={n}, v={v}")
    p = v + 1
    return 4 * (n - 1) * p * p - 4 * (n * n - 1) * p + (4 * n**3 - n) // 3 - 1


def pn_dqd_extrema(n: int) -> tuple[int, tuple[int, ...], int, tuple[int, ...]]:
    """``(min, argmin, max, argmax)`` of :func:`pn_dqd` over the vertices of the path."""
    vals = [pn_dqd(n, v) for v in range(n)]
    lo, hi = min(vals), max(vals)
    return (
        lo,
        tuple(v for v, x in enumerate(vals) if x == lo),
        hi,
        tuple(v for v, x in enumerate(vals) if x == hi),
    )


# --- sequence descriptors -------------------------------------------------

def trend(values: Sequence[Fraction]) -> str:
    """Exact classification of consecutive steps.

    ``"increasing"``/``"decreasing"`` are strict at every step, ``"flat"``
    means all equal, anything else is ``"mixed"``.
    """
    steps = [(b > a) - (b < a) for a, b in zip(values, values[1:])]
    if not steps or all(s == 0 for s in steps):
        return "flat"
    if all(s > 0 for s in steps):
        return "increasing"
    if all(s < 0 for s in steps):
        return "decreasing"
    return "mixed"


@dataclass(frozen=True)
class TrendSummary:
    label: str
    up: int
    down: int
    net: str  # last value against first

    @classmethod
    def of(cls, values: Sequence[Fraction]) -> TrendSummary:
        steps = [(b > a) - (b < a) for a, b in zip(values, values[1:])]
        net = "flat"
        if values and values[-1] > values[0]:
            net = "increasing"
        elif values and values[-1] < values[0]:
            net = "decreasing"
        return cls(trend(values), steps.count(1), steps.count(-1), net)


@dataclass(frozen=True)
class SequenceRecord:
    n: int
    v: int
    alpha: int
    ell: int
    beta: int
    ratio: Fraction

    @property
    def beta_alpha3_over_n2(self) -> Fraction:
        return Fraction(self.beta * self.alpha**3, self.n * self.n)

    @property
    def alpha3_over_n2(self) -> Fraction:
        """Cube of ``alpha / n^(2/3)``; same ordering, but exact."""
        return Fraction(self.alpha**3, self.n * self.n)


@dataclass(frozen=True)
class SequenceDescriptor:
    """Per-n eccentricity ``alpha``, branch count ``ell`` and the ``beta`` surrogate.

    ``beta`` counts branches at ``v`` whose eccentricity is at least
    ``cutoff * alpha``. It stands in for "eccentricity of the same order
    as alpha", which only makes sense for an infinite sequence.
    """

    family: str
    cutoff: Fraction
    records: tuple[SequenceRecord, ...]
    beta_alpha3_trend: TrendSummary = field(default=None)
    alpha_n23_trend: TrendSummary = field(default=None)
    ratio_trend: TrendSummary = field(default=None)
    known_limit: str | None = None


def sequence_profile(
    fam: FamilySpec,
    n_range: Iterable[int],
    cutoff: Fraction | float | str = Fraction(1, 2),
    threads: int | None = None,
) -> SequenceDescriptor:
    c = Fraction(cutoff)
    if not 0 < c <= 1:
        raise InvalidParameterError(f"cutoff must lie in (0, 1], got {cutoff}")

    def one(n):
        g, v = fam.build(n)
        alpha = eccentricity(g, v)
        prof = branches_at(g, v)
        beta = sum(1 for b in prof if b.eccentricity >= c * alpha)
        return SequenceRecord(n, v, alpha, len(prof), beta, ratio(g, v))

    ns = [n for n in n_range if n >= max(fam.min_n, 2)]
    recs = tuple(_map_ordered(one, ns, threads))
    return SequenceDescriptor(
        fam.label,
        c,
        recs,
        TrendSummary.of([r.beta_alpha3_over_n2 for r in recs]),
        TrendSummary.of([r.alpha3_over_n2 for r in recs]),
        TrendSummary.of([r.ratio for r in recs]),
        known_limit(fam),
    )


# --- construction ---------------------------------------------------------

@dataclass(frozen=True)
class AugmentResult:
    found: bool
    n_attach: int | None
    graph: Graph | None
    v: int
    checked: tuple[tuple[int, int], ...]  # (n, sign of Phi)

    @property
    def status(self) -> str:
        return "found" if self.found else "not found"


def augment_until_paradoxical(
    h: Graph,
    w: int,
    fam: FamilySpec,
    k1: int,
    k2: int,
    n_max: int,
    n_min: int | None = None,
) -> AugmentResult:
    """Glue ``G_n`` of ``fam`` onto ``h`` (its vertex onto ``w``) for growing ``n``.

    Returns the first composite that is ``(w, k1, k2)``-paradoxical, or a
    ``"not found"`` result once ``n_max`` is passed. ``w`` keeps its id
    in the composite.
    """
    require_connected(h)
    h.check_vertex(w)
    checked = []
    start = fam.min_n if n_min is None else n_min
    for n in range(start, n_max + 1):
        gn, v = fam.build(n)
        comp, _ = identify(h, w, gn, v)
        bd = big_phi(comp, w, k1, k2)
        checked.append((n, bd.sign))
        if bd.verdict:
            return AugmentResult(True, n, comp, w, tuple(checked))
    return AugmentResult(False, None, None, w, tuple(checked))
