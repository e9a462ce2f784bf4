"""Finite multigraphs with stable edge identities.

A graph is a vertex count plus an ordered list of unordered endpoint pairs;
the edge id is the list position.  Parallel edges are allowed, loops are not
(endpoint maps always land in 2-element vertex sets).  All values here are
immutable after construction; operations never renumber the edges of their
inputs.

Vertex numbering conventions of derived graphs are frozen so that downstream
certificates are reproducible byte for byte:

* ``subdivision``: black vertex ``v`` keeps index ``v``; the white vertex of
  edge ``e`` gets index ``vertex_count + e``; edge ``e = {u, v}`` (stored with
  ``u < v``) becomes edges ``2e = {u, white}`` and ``2e+1 = {v, white}``.
* ``sdd``: black copies ``(v, c)`` map to ``2v + c``; whites follow as in the
  subdivision; edge ``e`` expands to ids ``4e .. 4e+3``.
* ``disjoint_copies``: vertex ``(v, i)`` maps to ``i*|V| + v`` and edge
  ``(e, i)`` to ``i*|E| + e``.
* ``quotient_white``: black indices are unchanged; the white classes are
  numbered by their smallest member, following the blacks.
"""
from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

from .errors import (BadSplit, IndexOutOfRange, LoopRejected, NotSeparating,
                     TetracensusError)
from .perm import Perm

BLACK = 0
WHITE = 1


class Dart(NamedTuple):
    """An edge with a chosen endpoint."""

    edge_id: int
    end: int


class Multigraph:
    """Immutable multigraph; treat instances as frozen values."""

    def __init__(self, vertex_count: int, edges: Sequence[tuple[int, int]]):
        pairs = []
        for u, v in edges:
            if u == v:
                raise LoopRejected(f"edge {{{u},{v}}} is a loop")
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise IndexOutOfRange(f"edge {{{u},{v}}} outside 0..{vertex_count - 1}")
            pairs.append((u, v) if u < v else (v, u))
        self.vertex_count = vertex_count
        self.edges: tuple[tuple[int, int], ...] = tuple(pairs)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def endpoints(self, e: int) -> tuple[int, int]:
        return self.edges[e]

    @cached_property
    def incidence(self) -> tuple[tuple[int, ...], ...]:
        """For each vertex, the ids of its incident edges, ascending."""
        inc: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for e, (u, v) in enumerate(self.edges):
            inc[u].append(e)
            inc[v].append(e)
        return tuple(tuple(x) for x in inc)

    @cached_property
    def adjacency(self) -> tuple[dict[int, int], ...]:
        """Weighted adjacency: ``adjacency[u][v]`` is the edge multiplicity."""
        adj: list[dict[int, int]] = [dict() for _ in range(self.vertex_count)]
        for u, v in self.edges:
            adj[u][v] = adj[u].get(v, 0) + 1
            adj[v][u] = adj[v].get(u, 0) + 1
        return tuple(adj)

    @cached_property
    def parallel_classes(self) -> dict[tuple[int, int], tuple[int, ...]]:
        """Edge ids grouped by endpoint pair, each group ascending."""
        groups: dict[tuple[int, int], list[int]] = {}
        for e, pair in enumerate(self.edges):
            groups.setdefault(pair, []).append(e)
        return {pair: tuple(ids) for pair, ids in groups.items()}

    def valence(self, v: int) -> int:
        return len(self.incidence[v])

    def is_simple(self) -> bool:
        return all(len(ids) == 1 for ids in self.parallel_classes.values())

    def is_regular(self, k: int | None = None) -> bool:
        vals = {self.valence(v) for v in range(self.vertex_count)}
        if k is None:
            return len(vals) <= 1
        return vals <= {k}

    def darts(self) -> list[Dart]:
        return [Dart(e, self.edges[e][side]) for e in range(self.edge_count) for side in (0, 1)]

    @property
    def dart_count(self) -> int:
        return 2 * self.edge_count

    def dart_index(self, dart: Dart) -> int:
        u, v = self.edges[dart.edge_id]
        if dart.end == u:
            return 2 * dart.edge_id
        if dart.end == v:
            return 2 * dart.edge_id + 1
        raise IndexOutOfRange(f"{dart.end} is not an endpoint of edge {dart.edge_id}")

    def other_end(self, e: int, v: int) -> int:
        u, w = self.edges[e]
        if v == u:
            return w
        if v == w:
            return u
        raise IndexOutOfRange(f"{v} is not an endpoint of edge {e}")

    def components(self) -> list[list[int]]:
        """Vertex sets of connected components, each sorted, by least vertex."""
        seen = [False] * self.vertex_count
        comps = []
        for start in range(self.vertex_count):
            if seen[start]:
                continue
            comp = [start]
            seen[start] = True
            queue = deque([start])
            while queue:
                u = queue.popleft()
                for w in self.adjacency[u]:
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        queue.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def bipartition(self) -> tuple[list[int], ...] | None:
        """A 2-coloring as (side0, side1) with the least vertex of each
        component in side0, or None if not bipartite."""
        color = [-1] * self.vertex_count
        for start in range(self.vertex_count):
            if color[start] != -1:
                continue
            color[start] = 0
            queue = deque([start])
            while queue:
                u = queue.popleft()
                for w in self.adjacency[u]:
                    if color[w] == -1:
                        color[w] = 1 - color[u]
                        queue.append(w)
                    elif color[w] == color[u]:
                        return None
        return ([v for v in range(self.vertex_count) if color[v] == 0],
                [v for v in range(self.vertex_count) if color[v] == 1])

    def girth(self) -> int | None:
        """Length of a shortest cycle; None for forests.  Parallel pairs
        count as 2-cycles."""
        if any(len(ids) > 1 for ids in self.parallel_classes.values()):
            return 2
        best: int | None = None
        for root in range(self.vertex_count):
            dist = {root: 0}
            parent_edge = {root: -1}
            queue = deque([root])
            while queue:
                u = queue.popleft()
                if best is not None and dist[u] * 2 >= best:
                    continue
                for e in self.incidence[u]:
                    w = self.other_end(e, u)
                    if e == parent_edge[u]:
                        continue
                    if w in dist:
                        cycle = dist[u] + dist[w] + 1
                        if best is None or cycle < best:
                            best = cycle
                    else:
                        dist[w] = dist[u] + 1
                        parent_edge[w] = e
                        queue.append(w)
        return best

    def edge_perm_of_vertex_perm(self, vperm: Perm) -> Perm:
        """The edge action induced by a vertex automorphism.

        Members of a parallel class are matched to the image class in
        ascending edge-id order, which makes the lift deterministic.
        """
        images = [0] * self.edge_count
        for pair, ids in self.parallel_classes.items():
            u, v = vperm[pair[0]], vperm[pair[1]]
            target = self.parallel_classes.get((u, v) if u < v else (v, u))
            if target is None or len(target) != len(ids):
                raise TetracensusError(f"{vperm} is not an automorphism (edge {pair})")
            for a, b in zip(ids, target):
                images[a] = b
        return Perm(images)

    def combined_perm(self, vperm: Perm, eperm: Perm | None = None) -> Perm:
        """Permutation of vertices+edges: vertex v is point v, edge e is
        point vertex_count + e."""
        if eperm is None:
            eperm = self.edge_perm_of_vertex_perm(vperm)
        n = self.vertex_count
        return Perm(list(vperm.images) + [n + x for x in eperm.images])

    def __eq__(self, other) -> bool:
        return (isinstance(other, Multigraph) and self.vertex_count == other.vertex_count
                and self.edges == other.edges)

    def __hash__(self) -> int:
        return hash((self.vertex_count, self.edges))

    def __repr__(self) -> str:
        return f"Multigraph({self.vertex_count}, {len(self.edges)} edges)"


def make_multigraph(vertex_count: int, endpoint_pairs: Iterable[Sequence[int]]) -> Multigraph:
    """Build a multigraph; edge ids follow the list order."""
    pairs = []
    for pair in endpoint_pairs:
        pair = tuple(pair)
        if len(pair) != 2:
            raise LoopRejected(f"endpoint pair {pair} does not have two entries")
        pairs.append(pair)
    return Multigraph(vertex_count, pairs)


class ColoredGraph:
    """Multigraph with a proper black/white vertex coloring."""

    def __init__(self, graph: Multigraph, colors: Sequence[int]):
        colors = tuple(colors)
        if len(colors) != graph.vertex_count:
            raise IndexOutOfRange("one color per vertex required")
        if any(c not in (BLACK, WHITE) for c in colors):
            raise TetracensusError("colors must be BLACK or WHITE")
        for u, v in graph.edges:
            if colors[u] == colors[v]:
                raise TetracensusError(f"edge {{{u},{v}}} is monochromatic")
        self.graph = graph
        self.colors = colors

    @cached_property
    def black_vertices(self) -> tuple[int, ...]:
        return tuple(v for v in range(self.graph.vertex_count) if self.colors[v] == BLACK)

    @cached_property
    def white_vertices(self) -> tuple[int, ...]:
        return tuple(v for v in range(self.graph.vertex_count) if self.colors[v] == WHITE)

    def white_valences(self) -> Counter:
        return Counter(self.graph.valence(v) for v in self.white_vertices)

    def __eq__(self, other) -> bool:
        return (isinstance(other, ColoredGraph) and self.graph == other.graph
                and self.colors == other.colors)

    def __hash__(self) -> int:
        return hash((self.graph, self.colors))

    def __repr__(self) -> str:
        return (f"ColoredGraph({len(self.black_vertices)} black, "
                f"{len(self.white_vertices)} white, {self.graph.edge_count} edges)")


def color_by_bipartition(graph: Multigraph, black_side: Iterable[int] | None = None) -> ColoredGraph:
    """2-color a bipartite graph; by default the side of vertex 0 is black."""
    sides = graph.bipartition()
    if sides is None:
        raise TetracensusError("graph is not bipartite")
    blacks = set(sides[0]) if black_side is None else set(black_side)
    colors = [BLACK if v in blacks else WHITE for v in range(graph.vertex_count)]
    return ColoredGraph(graph, colors)


@dataclass(frozen=True)
class StructureReport:
    vertex_count: int
    edge_count: int
    valences: tuple[int, ...]
    is_simple: bool
    is_bipartite: bool
    is_connected: bool
    components: tuple[tuple[int, ...], ...]
    girth: int | None


def analyze(g: Multigraph) -> StructureReport:
    return StructureReport(
        vertex_count=g.vertex_count,
        edge_count=g.edge_count,
        valences=tuple(sorted(g.valence(v) for v in range(g.vertex_count))),
        is_simple=g.is_simple(),
        is_bipartite=g.bipartition() is not None,
        is_connected=g.is_connected(),
        components=tuple(tuple(c) for c in g.components()),
        girth=g.girth(),
    )


def subdivision(x: Multigraph) -> ColoredGraph:
    """Replace every edge by a path of length 2 through a new white vertex."""
    n = x.vertex_count
    edges = []
    for e, (u, v) in enumerate(x.edges):
        edges.append((u, n + e))
        edges.append((v, n + e))
    graph = Multigraph(n + x.edge_count, edges)
    colors = [BLACK] * n + [WHITE] * x.edge_count
    return ColoredGraph(graph, colors)


def subdivision_white_of_edge(x: Multigraph, e: int) -> int:
    """White vertex of ``subdivision(x)`` carrying edge ``e``."""
    return x.vertex_count + e


def sdd(x: Multigraph) -> ColoredGraph:
    """Subdivided double: the subdivision with every black vertex doubled."""
    n = x.vertex_count
    white = lambda e: 2 * n + e
    edges = []
    for e, (u, v) in enumerate(x.edges):
        edges.append((2 * u, white(e)))
        edges.append((2 * u + 1, white(e)))
        edges.append((2 * v, white(e)))
        edges.append((2 * v + 1, white(e)))
    graph = Multigraph(2 * n + x.edge_count, edges)
    colors = [BLACK] * (2 * n) + [WHITE] * x.edge_count
    return ColoredGraph(graph, colors)


@dataclass(frozen=True)
class DisjointCopies:
    """k labelled copies of a base graph in one multigraph."""

    graph: Multigraph
    base: Multigraph
    k: int

    def vertex(self, v: int, copy: int) -> int:
        return copy * self.base.vertex_count + v

    def edge(self, e: int, copy: int) -> int:
        return copy * self.base.edge_count + e

    def vertex_label(self, v: int) -> tuple[int, int]:
        return (v % self.base.vertex_count, v // self.base.vertex_count)

    def edge_label(self, e: int) -> tuple[int, int]:
        return (e % self.base.edge_count, e // self.base.edge_count)


def disjoint_copies(b: Multigraph, k: int) -> DisjointCopies:
    if k < 1:
        raise IndexOutOfRange("k must be at least 1")
    n, m = b.vertex_count, b.edge_count
    edges = []
    for i in range(k):
        for (u, v) in b.edges:
            edges.append((i * n + u, i * n + v))
    return DisjointCopies(Multigraph(k * n, edges), b, k)


def quotient_white(xstar: ColoredGraph, classes: Sequence[Iterable[int]]) -> ColoredGraph:
    """Merge the white vertices within each class.

    Raises NotSeparating when two merged edges would become parallel, which
    happens exactly when the underlying relation related two adjacent edges.
    """
    whites = set(xstar.white_vertices)
    norm = [tuple(sorted(c)) for c in classes]
    flat = [v for c in norm for v in c]
    if sorted(flat) != sorted(whites) or len(flat) != len(set(flat)):
        raise BadSplit("classes must partition the white vertices exactly")
    norm.sort(key=lambda c: c[0])

    blacks = xstar.black_vertices
    black_index = {v: i for i, v in enumerate(blacks)}
    n_black = len(blacks)
    class_of = {}
    for i, cls in enumerate(norm):
        for w in cls:
            class_of[w] = n_black + i

    new_edges = []
    seen_pairs = set()
    for (u, v) in xstar.graph.edges:
        if xstar.colors[u] == WHITE:
            u, v = v, u
        a, b = black_index[u], class_of[v]
        if (a, b) in seen_pairs:
            raise NotSeparating(f"merging creates parallel edges at black vertex {u}")
        seen_pairs.add((a, b))
        new_edges.append((a, b))
    graph = Multigraph(n_black + len(norm), new_edges)
    colors = [BLACK] * n_black + [WHITE] * len(norm)
    return ColoredGraph(graph, colors)


def graph_to_text(g: Multigraph, colors: Sequence[int] | None = None) -> str:
    """The line-based text format: ``vertices N``, ``edge u v`` per edge in
    id order, and optional ``color v black|white`` lines."""
    lines = [f"vertices {g.vertex_count}"]
    lines += [f"edge {u} {v}" for u, v in g.edges]
    if colors is not None:
        names = {BLACK: "black", WHITE: "white"}
        lines += [f"color {v} {names[c]}" for v, c in enumerate(colors)]
    return "\n".join(lines) + "\n"


def graph_from_text(text: str) -> tuple[Multigraph, tuple[int, ...] | None]:
    vertices = None
    edges = []
    colors: dict[int, int] = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "vertices":
            vertices = int(parts[1])
        elif parts[0] == "edge":
            edges.append((int(parts[1]), int(parts[2])))
        elif parts[0] == "color":
            colors[int(parts[1])] = BLACK if parts[2] == "black" else WHITE
        else:
            raise TetracensusError(f"unrecognized line {line!r}")
    if vertices is None:
        raise TetracensusError("missing 'vertices N' header")
    g = Multigraph(vertices, edges)
    if not colors:
        return g, None
    if sorted(colors) != list(range(vertices)):
        raise TetracensusError("color lines must cover every vertex")
    return g, tuple(colors[v] for v in range(vertices))
