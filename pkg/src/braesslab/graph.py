"""Simple undirected graphs, standard families and gluing constructions.

Vertices are the integers ``0..n-1``. Graphs are immutable; every
construction returns a new :class:`Graph`.

Family labellings
-----------------
* path ``P_n``: edges ``i ~ i+1``; vertex 0 is a pendent end.
* cycle ``C_n``: the path plus the edge ``0 ~ n-1``.
* star ``S_n``: centre ``n-1``, leaves ``0..n-2``.
* broom ``B_{n,alpha}``: handle ``0 ~ 1 ~ ... ~ alpha`` and bristles
  ``alpha+1..n-1``, all adjacent to ``alpha-1``. Vertex 0 is the
  far pendent vertex, at eccentricity ``alpha``.

Indices in the literature usually start at 1; ``v`` here is ``v+1`` there.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, NamedTuple, Sequence

from .errors import DisconnectedGraphError, EdgeListParseError, InvalidParameterError

__all__ = [
    "Graph",
    "TwinPathSpec",
    "TwinPathGraph",
    "Branch",
    "BranchProfile",
    "FAMILY_KINDS",
    "make_family",
    "identify",
    "attach_twin_paths",
    "close_twin_paths",
    "degree_vector",
    "distances_from",
    "eccentricity",
    "diameter",
    "components",
    "is_connected",
    "is_tree",
    "is_cut_vertex",
    "branches_at",
    "require_connected",
    "example_h",
    "random_connected_graph",
    "parse_edge_list",
    "read_edge_list",
    "format_edge_list",
    "write_edge_list",
]


@dataclass(frozen=True)
class Graph:
    """A simple undirected graph on vertices ``0..n-1``.

    ``edges`` may be given in any order and orientation; it is stored
    as a sorted tuple of pairs ``(u, v)`` with ``u < v``.
    """

    n: int
    edges: tuple[tuple[int, int], ...] = field(default=())

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 0:
            raise InvalidParameterError(f"vertex count must be a non-negative int, got {self.n!r}")
        canon = []
        for e in self.edges:
            u, v = (int(x) for x in e)
            if u == v:
                raise InvalidParameterError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InvalidParameterError(f"edge ({u}, {v}) has an endpoint outside 0..{self.n - 1}")
            canon.append((u, v) if u < v else (v, u))
        canon.sort()
        for a, b in zip(canon, canon[1:]):
            if a == b:
                raise InvalidParameterError(f"duplicate edge {a}")
        object.__setattr__(self, "edges", tuple(canon))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        adj = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return tuple(frozenset(a) for a in adj)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.adjacency)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def non_edges(self) -> list[tuple[int, int]]:
        """All vertex pairs ``(u, v)``, ``u < v``, that are not edges, sorted."""
        return [(u, v) for u, v in combinations(range(self.n), 2) if v not in self.adjacency[u]]

    def add_edge(self, u: int, v: int) -> Graph:
        if u == v or self.has_edge(u, v):
            raise InvalidParameterError(f"cannot add edge ({u}, {v})")
        return Graph(self.n, self.edges + ((u, v),))

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Return the graph with vertex ``i`` renamed ``perm[i]``."""
        if sorted(perm) != list(range(self.n)):
            raise InvalidParameterError("perm is not a permutation of the vertices")
        return Graph(self.n, tuple((perm[u], perm[v]) for u, v in self.edges))

    def laplacian(self) -> list[list[int]]:
        L = [[0] * self.n for _ in range(self.n)]
        for u, v in self.edges:
            L[u][v] = L[v][u] = -1
        for i, d in enumerate(self.degrees):
            L[i][i] = d
        return L

    def check_vertex(self, v: int) -> int:
        if not isinstance(v, int) or not 0 <= v < self.n:
            raise InvalidParameterError(f"vertex {v!r} not in 0..{self.n - 1}")
        return v

    def __repr__(self):
        return f"Graph(n={self.n}, edges={list(self.edges)})"


# --- families -------------------------------------------------------------

FAMILY_KINDS = ("complete", "cycle", "path", "star", "broom")


def make_family(kind: str, n: int, alpha: int | None = None) -> Graph:
    """Build the canonically labelled member of a standard family.

    Parameters
    ----------
    kind : {"complete", "cycle", "path", "star", "broom"}
    n : int
        Order of the graph.
    alpha : int, optional
        Handle length of a broom; required for ``kind="broom"``.

    Raises
    ------
    InvalidParameterError
        For an unknown kind or an out-of-range ``n``/``alpha``.
    """
    if not isinstance(n, int):
        raise InvalidParameterError(f"n must be an int, got {n!r}")
    if kind == "complete":
        if n < 1:
            raise InvalidParameterError("complete graph needs n >= 1")
        return Graph(n, tuple(combinations(range(n), 2)))
    if kind == "path":
        if n < 1:
            raise InvalidParameterError("path needs n >= 1")
        return Graph(n, tuple((i, i + 1) for i in range(n - 1)))
    if kind == "cycle":
        if n < 3:
            raise InvalidParameterError("cycle needs n >= 3")
        return Graph(n, tuple((i, i + 1) for i in range(n - 1)) + ((0, n - 1),))
    if kind == "star":
        if n < 1:
            raise InvalidParameterError("star needs n >= 1")
        return Graph(n, tuple((i, n - 1) for i in range(n - 1)))
    if kind == "broom":
        if alpha is None or not isinstance(alpha, int) or not n > alpha >= 1:
            raise InvalidParameterError(f"broom needs n > alpha >= 1, got n={n}, alpha={alpha}")
        handle = tuple((i, i + 1) for i in range(alpha))
        bristles = tuple((alpha - 1, b) for b in range(alpha + 1, n))
        return Graph(n, handle + bristles)
    raise InvalidParameterError(f"unknown family kind {kind!r}")


def example_h() -> tuple[Graph, int]:
    """Triangle 0-1-2 with a pendent vertex 3 on vertex 1; returns ``(H, w)`` with w = 0."""
    return Graph(4, ((0, 1), (0, 2), (1, 2), (1, 3))), 0


# --- constructions --------------------------------------------------------

def identify(g1: Graph, v1: int, g2: Graph, v2: int) -> tuple[Graph, list[int]]:
    """Glue ``g2`` onto ``g1`` by identifying ``v2`` with ``v1``.

    Vertices of ``g1`` keep their ids; the remaining vertices of ``g2``
    are appended in order. Returns the glued graph and ``mapping`` with
    ``mapping[x]`` the new id of vertex ``x`` of ``g2``.
    """
    if g1.n == 0 or g2.n == 0:
        raise InvalidParameterError("cannot identify vertices of an empty graph")
    g1.check_vertex(v1)
    g2.check_vertex(v2)
    mapping = []
    nxt = g1.n
    for x in range(g2.n):
        if x == v2:
            mapping.append(v1)
        else:
            mapping.append(nxt)
            nxt += 1
    edges = g1.edges + tuple((mapping[a], mapping[b]) for a, b in g2.edges)
    return Graph(g1.n + g2.n - 1, edges), mapping


@dataclass(frozen=True)
class TwinPathSpec:
    """Where and how long the two pendent paths are; ``k1 + k2 >= 2``."""

    v: int
    k1: int
    k2: int

    def __post_init__(self):
        if self.k1 < 0 or self.k2 < 0 or self.k1 + self.k2 < 2:
            raise InvalidParameterError(
                f"path lengths need k1, k2 >= 0 and k1 + k2 >= 2, got ({self.k1}, {self.k2})"
            )

    @property
    def k(self) -> int:
        """Length of the cycle closed by joining the two tips."""
        return self.k1 + self.k2 + 1


class TwinPathGraph(NamedTuple):
    graph: Graph
    v: int
    tips: tuple[int, int]


def attach_twin_paths(g: Graph, spec: TwinPathSpec) -> TwinPathGraph:
    """Hang paths of lengths ``k1`` and ``k2`` from ``spec.v``.

    The first path uses new vertices ``n..n+k1-1`` (tip last), the second
    ``n+k1..n+k1+k2-1``. A zero-length path has tip ``v`` itself.
    """
    v = g.check_vertex(spec.v)
    n = g.n
    edges = list(g.edges)
    tips = []
    start = n
    for length in (spec.k1, spec.k2):
        prev = v
        for x in range(start, start + length):
            edges.append((prev, x))
            prev = x
        tips.append(prev)
        start += length
    return TwinPathGraph(Graph(n + spec.k1 + spec.k2, tuple(edges)), v, (tips[0], tips[1]))


def close_twin_paths(g_tilde: Graph, tips: tuple[int, int]) -> Graph:
    """Insert the edge joining the two path tips."""
    a, b = tips
    g_tilde.check_vertex(a)
    g_tilde.check_vertex(b)
    if a == b:
        raise InvalidParameterError("tips coincide")
    if g_tilde.has_edge(a, b):
        raise InvalidParameterError(f"tips {a} and {b} are already adjacent")
    return g_tilde.add_edge(a, b)


# --- metric and structural queries ----------------------------------------

def degree_vector(g: Graph) -> tuple[int, ...]:
    return g.degrees


def distances_from(g: Graph, v: int) -> list[int | None]:
    """BFS distances from ``v``; ``None`` for unreachable vertices."""
    g.check_vertex(v)
    dist: list[int | None] = [None] * g.n
    dist[v] = 0
    queue = deque([v])
    adj = g.adjacency
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if dist[y] is None:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def components(g: Graph, removed: Iterable[int] = ()) -> list[list[int]]:
    """Connected components of ``g`` minus ``removed``, each sorted, ordered by least vertex."""
    skip = set(removed)
    seen = set(skip)
    out = []
    adj = g.adjacency
    for s in range(g.n):
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        stack = [s]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    comp.append(y)
                    stack.append(y)
        out.append(sorted(comp))
    return out


def is_connected(g: Graph) -> bool:
    return g.n > 0 and len(components(g)) == 1


def require_connected(g: Graph, min_n: int = 1) -> None:
    """Raise unless ``g`` is connected with at least ``min_n`` vertices."""
    if g.n < min_n:
        raise InvalidParameterError(f"need a connected graph on at least {min_n} vertices, got n={g.n}")
    comps = components(g)
    if len(comps) != 1:
        raise DisconnectedGraphError(components=comps)


def is_tree(g: Graph) -> bool:
    return is_connected(g) and g.m == g.n - 1


def is_cut_vertex(g: Graph, v: int) -> bool:
    g.check_vertex(v)
    require_connected(g)
    return len(components(g, removed=(v,))) >= 2


def eccentricity(g: Graph, v: int) -> int:
    require_connected(g)
    return max(distances_from(g, v))


def diameter(g: Graph) -> int:
    require_connected(g)
    return max(eccentricity(g, v) for v in range(g.n))


@dataclass(frozen=True)
class Branch:
    vertices: frozenset[int]
    size: int
    eccentricity: int

    def subgraph(self, g: Graph) -> tuple[Graph, dict[int, int]]:
        """Induced subgraph relabelled ``0..size-1`` in increasing order, plus the id map."""
        order = sorted(self.vertices)
        index = {x: i for i, x in enumerate(order)}
        edges = tuple((index[u], index[w]) for u, w in g.edges if u in index and w in index)
        return Graph(len(order), edges), index


@dataclass(frozen=True)
class BranchProfile:
    v: int
    branches: tuple[Branch, ...]

    def __len__(self):
        return len(self.branches)

    def __iter__(self):
        return iter(self.branches)

    def pairs(self) -> list[tuple[int, int]]:
        """``(size, eccentricity)`` of every branch."""
        return [(b.size, b.eccentricity) for b in self.branches]


def branches_at(g: Graph, v: int) -> BranchProfile:
    """The branches at ``v``: each component of ``g - v`` together with ``v``.

    When ``v`` is not a cut-vertex there is exactly one branch (all of ``g``).
    """
    require_connected(g)
    dist = distances_from(g, v)
    out = []
    for comp in components(g, removed=(v,)):
        verts = frozenset(comp) | {v}
        # shortest paths from v into a branch never leave it
        out.append(Branch(verts, len(verts), max(dist[x] for x in comp)))
    return BranchProfile(v, tuple(out))


# --- random graphs --------------------------------------------------------

def random_connected_graph(n: int, extra_edges: int, rng: random.Random) -> Graph:
    """Uniform random labelled spanning tree plus ``extra_edges`` random extra edges.

    ``extra_edges`` is clipped to the number of available non-edges.
    """
    if n < 1:
        raise InvalidParameterError("n must be positive")
    if n == 1:
        return Graph(1)
    if n == 2:
        edges = {(0, 1)}
    else:
        # decode a random Pruefer sequence
        seq = [rng.randrange(n) for _ in range(n - 2)]
        degree = [1] * n
        for x in seq:
            degree[x] += 1
        edges = set()
        for x in seq:
            leaf = min(i for i in range(n) if degree[i] == 1)
            edges.add((min(leaf, x), max(leaf, x)))
            degree[leaf] -= 1
            degree[x] -= 1
        u, w = (i for i in range(n) if degree[i] == 1)
        edges.add((u, w))
    pool = [e for e in combinations(range(n), 2) if e not in edges]
    edges.update(rng.sample(pool, min(extra_edges, len(pool))))
    return Graph(n, tuple(edges))


# --- edge-list files ------------------------------------------------------

def parse_edge_list(text: str) -> Graph:
    """Parse the edge-list format.

    Lines starting with ``#`` (after optional whitespace) and blank lines
    are ignored. The first remaining line holds ``n``; every further line
    holds ``u v`` with ``0 <= u < v < n``. Duplicate edges are rejected.
    """
    n = None
    edges = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 1:
                raise EdgeListParseError("expected a single vertex count", lineno)
            try:
                n = int(parts[0])
            except ValueError:
                raise EdgeListParseError(f"vertex count {parts[0]!r} is not an integer", lineno) from None
            if n < 0:
                raise EdgeListParseError("vertex count must be non-negative", lineno)
            continue
        if len(parts) != 2:
            raise EdgeListParseError(f"expected 'u v', got {line!r}", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListParseError(f"non-integer vertex in {line!r}", lineno) from None
        if not 0 <= u < v < n:
            raise EdgeListParseError(f"edge {u} {v} violates 0 <= u < v < {n}", lineno)
        if (u, v) in seen:
            raise EdgeListParseError(f"duplicate edge {u} {v}", lineno)
        seen.add((u, v))
        edges.append((u, v))
    if n is None:
        raise EdgeListParseError("missing vertex count")
    return Graph(n, tuple(edges))


def read_edge_list(path) -> Graph:
    with open(path, encoding="ascii") as fh:
        return parse_edge_list(fh.read())


def format_edge_list(g: Graph) -> str:
    lines = [str(g.n)] + [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def write_edge_list(g: Graph, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(format_edge_list(g))
