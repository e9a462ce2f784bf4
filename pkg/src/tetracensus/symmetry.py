"""Symmetry groups of multigraphs and structural classification.

Automorphism groups act on the combined domain vertices + edges (vertex v is
point v, edge e is point vertex_count + e); multigraphs need the edge part
because the vertex action alone is not faithful on parallel classes.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from . import families
from .automorphism import (Certificate, are_isomorphic, canonical_certificate,
                           vertex_automorphisms)
from .errors import TetracensusError
from .multigraph import BLACK, WHITE, ColoredGraph, Multigraph, sdd
from .perm import Perm
from .permgroup import PermGroup


@dataclass
class AutomorphismGroup:
    """A group of symmetries of a graph, acting on vertices + edges."""

    graph: Multigraph
    group: PermGroup
    colors: tuple[int, ...] | None = None  # set when color-preserving
    kind: str = "full"  # 'full' | 'color' | 'stabilizer' | 'subgroup'

    def order(self) -> int:
        return self.group.order()

    @property
    def n(self) -> int:
        return self.graph.vertex_count

    def vertex_action(self) -> PermGroup:
        return self.group.restrict(range(self.n))

    def edge_action(self) -> PermGroup:
        return self.group.restrict(range(self.n, self.n + self.graph.edge_count))

    def dart_perm(self, g: Perm) -> Perm:
        """Action of a combined permutation on dart indices 2e+side."""
        n = self.n
        graph = self.graph
        images = [0] * graph.dart_count
        for e, (u, v) in enumerate(graph.edges):
            e2 = g[n + e] - n
            a, b = graph.edges[e2]
            for side, end in ((0, u), (1, v)):
                end2 = g[end]
                side2 = 0 if end2 == a else 1
                images[2 * e + side] = 2 * e2 + side2
        return Perm(images)

    def dart_action(self) -> PermGroup:
        return PermGroup(self.graph.dart_count,
                         [self.dart_perm(g) for g in self.group.generators])

    def vertex_orbits(self) -> list[list[int]]:
        return [o for o in self.group.orbits(subset=range(self.n))]

    def edge_orbits(self) -> list[list[int]]:
        n = self.n
        return [[e - n for e in o]
                for o in self.group.orbits(subset=range(n, n + self.graph.edge_count))]

    def is_vertex_transitive(self) -> bool:
        return len(self.vertex_orbits()) <= 1

    def is_edge_transitive(self) -> bool:
        return len(self.edge_orbits()) <= 1

    def is_dart_transitive(self) -> bool:
        return self.dart_action().is_transitive()

    def stabilizer_of_vertex(self, v: int) -> AutomorphismGroup:
        return AutomorphismGroup(self.graph, self.group.stabilizer(v),
                                 self.colors, kind="subgroup")


def _combined_group(graph: Multigraph, vertex_gens: Iterable[tuple]) -> PermGroup:
    """Lift vertex generators and add the parallel-class kernel."""
    n = graph.vertex_count
    gens = [graph.combined_perm(Perm(images)) for images in vertex_gens]
    ident = list(range(n + graph.edge_count))
    for ids in graph.parallel_classes.values():
        if len(ids) >= 2:
            swap = list(ident)
            swap[n + ids[0]], swap[n + ids[1]] = swap[n + ids[1]], swap[n + ids[0]]
            gens.append(Perm(swap))
            if len(ids) > 2:
                cyc = list(ident)
                for a, b in zip(ids, ids[1:]):
                    cyc[n + a] = n + b
                cyc[n + ids[-1]] = n + ids[0]
                gens.append(Perm(cyc))
    return PermGroup(n + graph.edge_count, gens)


def automorphism_group(graph: Multigraph, budget: int | None = None) -> AutomorphismGroup:
    """The full automorphism group, acting faithfully on vertices + edges."""
    result = vertex_automorphisms(graph, None, budget)
    return AutomorphismGroup(graph, _combined_group(graph, result.generators))


def color_automorphism_group(cg: ColoredGraph, budget: int | None = None) -> AutomorphismGroup:
    """The color-preserving subgroup of the automorphism group."""
    result = vertex_automorphisms(cg.graph, cg.colors, budget)
    return AutomorphismGroup(cg.graph, _combined_group(cg.graph, result.generators),
                             colors=cg.colors, kind="color")


def partition_stabilizer(a: AutomorphismGroup, classes: Sequence[Iterable[int]],
                         budget: int | None = None) -> AutomorphismGroup:
    """Setwise stabilizer of an edge partition inside ``a``.

    Computed as the color-preserving automorphism group of the auxiliary
    graph with one node per vertex, per edge and per class (edge nodes join
    their endpoints, class nodes join their member edges); that group
    projects isomorphically onto the stabilizer acting on vertices + edges.
    ``a`` must be the full or the color-preserving group.
    """
    if a.kind not in ("full", "color"):
        raise TetracensusError("partition stabilizer needs the full or color group")
    graph = a.graph
    n, m = graph.vertex_count, graph.edge_count
    norm = [tuple(sorted(c)) for c in classes]
    flat = sorted(e for c in norm for e in c)
    if flat != list(range(m)):
        raise TetracensusError("classes must partition the edge set")
    norm.sort(key=lambda c: c[0])

    aux_edges = []
    for e, (u, v) in enumerate(graph.edges):
        aux_edges.append((u, n + e))
        aux_edges.append((v, n + e))
    for ci, cls in enumerate(norm):
        for e in cls:
            aux_edges.append((n + e, n + m + ci))
    aux = Multigraph(n + m + len(norm), aux_edges)
    if a.colors is not None:
        base_colors = [2 + c for c in a.colors]
    else:
        base_colors = [0] * n
    aux_colors = base_colors + [4] * m + [5] * len(norm)
    result = vertex_automorphisms(aux, aux_colors, budget)
    gens = [Perm(images[: n + m]) for images in result.generators]
    group = PermGroup(n + m, gens)
    return AutomorphismGroup(graph, group, a.colors, kind="stabilizer")


@dataclass(frozen=True)
class TransitivityReport:
    vertex_transitive: bool
    edge_transitive: bool
    dart_transitive: bool
    bi_transitive: bool | None
    semisymmetric: bool | None
    aut_order: int
    color_aut_order: int | None


def transitivity_report(graph: Multigraph,
                        coloring: Sequence[int] | None = None) -> TransitivityReport:
    """Orbit-based transitivity flags.

    ``bi_transitive``/``semisymmetric`` need a proper 2-coloring; when
    ``coloring`` is omitted they are computed from a bipartition when one
    exists, else reported as None.
    """
    aut = automorphism_group(graph)
    vt = aut.is_vertex_transitive()
    et = aut.is_edge_transitive()
    dt = aut.is_dart_transitive()
    bi = semi = None
    color_order = None
    colors = coloring
    if colors is None:
        sides = graph.bipartition()
        if sides is not None and graph.edge_count > 0:
            colors = tuple(BLACK if v in set(sides[0]) else WHITE
                           for v in range(graph.vertex_count))
    if colors is not None:
        try:
            cg = ColoredGraph(graph, colors)
        except TetracensusError:
            cg = None
        if cg is not None:
            caut = color_automorphism_group(cg)
            color_order = caut.order()
            bi = caut.is_edge_transitive()
            semi = bool(graph.is_regular() and bi and not vt)
    return TransitivityReport(vt, et, dt, bi, semi, aut.order(), color_order)


@dataclass
class LocalAction:
    """Action of a vertex stabilizer on the incident edges."""

    vertex: int
    incident_edges: tuple[int, ...]
    group: PermGroup  # acts on positions of incident_edges
    block_systems: list[list[tuple[int, int]]] = field(default_factory=list)


def local_action(a: AutomorphismGroup, v: int) -> LocalAction:
    incident = a.graph.incidence[v]
    n = a.n
    stab = a.group.stabilizer(v)
    points = [n + e for e in incident]
    induced = stab.restrict(points)
    blocks = induced.size2_block_systems() if induced.is_transitive() and incident else []
    return LocalAction(v, tuple(incident), induced, blocks)


# -- catalog identification --------------------------------------------------

_PRECEDENCE = ("wreath", "circulant", "rose_window", "px", "torus44", "sdd", "other", "dw")


def _quick_profile(g: Multigraph):
    from .multigraph import analyze

    r = analyze(g)
    return (r.vertex_count, r.edge_count, r.valences, r.is_simple, r.is_bipartite,
            r.is_connected, r.girth)


def _candidate_specs(n: int, include_reconstructed: bool) -> list[tuple[str, object]]:
    """(family bucket, spec or ('sdd', spec)) candidates with n vertices."""
    specs: list[tuple[str, object]] = []
    if n % 2 == 0 and n >= 6:
        specs.append(("wreath", families.wreath(n // 2)))
    if n >= 5:
        for b in range(2, n // 2 + 1):
            for a in range(1, b):
                specs.append(("circulant", families.circulant(n, (a, b))))
    if n % 2 == 0 and n >= 6:
        k = n // 2
        for a in range(1, k):
            for r in range(1, k):
                if 2 * r != k:
                    specs.append(("rose_window", families.rose_window(k, a, r)))
    for k in (1, 2, 3):
        if n % (1 << k) == 0 and n // (1 << k) >= 3:
            specs.append(("px", families.px(n // (1 << k), k)))
    for b in range(0, n + 1):
        for c in range(0, b + 1):
            if b * b + c * c == n and (b, c) != (0, 0):
                specs.append(("torus44", families.torus44("std", b, c)))
    for b in range(1, n + 1):
        for c in range(1, b + 1):
            if 2 * b * c == n:
                specs.append(("torus44", families.torus44("bracket", b, c)))
                if b != c:
                    specs.append(("torus44", families.torus44("bracket", c, b)))
    for b in range(1, n + 1):
        for c in range(0, b):
            if b * b - c * c == n:
                specs.append(("torus44", families.torus44("angle", b, c)))
    if n % 4 == 0 and n >= 8:
        for extra in (families.complete(5), families.petersen(),
                      families.line_graph_of(families.petersen()), families.heawood()):
            base = families.make_family(extra)
            if base.vertex_count == n // 4:
                specs.append(("sdd", ("sdd", extra)))
        for bucket, spec in _candidate_specs(n // 4, include_reconstructed):
            if bucket != "sdd" and not isinstance(spec, tuple):
                specs.append(("sdd", ("sdd", spec)))
    others: list[object] = [families.complete(n)]
    if n >= 3:
        others.append(families.doubled_cycle(n))
    if n == 2:
        for mult in (1, 2, 3, 4, 5, 6, 7, 8):
            others.append(families.dipole(mult))
    for mm in range(3, n):
        if n % mm == 0 and n // mm >= 3:
            others.append(families.cycle_product(mm, n // mm))
    if n == 10:
        others.append(families.petersen())
    if n == 15:
        others.append(families.line_graph_of(families.petersen()))
    if n == 14:
        others.append(families.heawood())
    specs.extend(("other", s) for s in others)
    if include_reconstructed and n % 3 == 0 and n // 3 >= 3:
        specs.append(("dw", families.dw(n // 3)))
    return specs


def identify(g: Multigraph, include_reconstructed: bool = False,
             budget: int | None = None) -> str | None:
    """Name of the first catalog family isomorphic to ``g``.

    Families are tried in a fixed precedence order (wreath, circulant, rose
    window, PX, torus, SDD-of-catalog, remaining named graphs, then the
    reconstructed DW family when enabled) so reports are stable.  Returns
    None when nothing in the catalog matches.
    """
    profile = _quick_profile(g)
    buckets: dict[str, list] = {b: [] for b in _PRECEDENCE}
    for bucket, spec in _candidate_specs(g.vertex_count, include_reconstructed):
        buckets[bucket].append(spec)
    for bucket in _PRECEDENCE:
        for spec in buckets.get(bucket, []):
            if isinstance(spec, tuple) and spec[0] == "sdd":
                try:
                    candidate = sdd(families.make_family(spec[1])).graph
                except TetracensusError:
                    continue
                name = f"SDD({families.format_spec(spec[1])})"
            else:
                try:
                    candidate = families.make_family(spec)
                except TetracensusError:
                    continue
                name = families.format_spec(spec)
            if candidate.vertex_count != g.vertex_count or candidate.edge_count != g.edge_count:
                continue
            if _quick_profile(candidate) != profile:
                continue
            if are_isomorphic(g, candidate, budget=budget) is not None:
                return name
    return None


__all__ = [
    "AutomorphismGroup", "automorphism_group", "color_automorphism_group",
    "partition_stabilizer", "TransitivityReport", "transitivity_report",
    "LocalAction", "local_action", "identify", "Certificate",
    "canonical_certificate", "are_isomorphic",
]
