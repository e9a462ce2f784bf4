"""Automorphisms, canonical labelings and isomorphism of multigraphs.

The engine runs equitable-degree refinement with individualization and
backtracking on the vertex set.  Parallel edges enter the refinement as
edge-multiplicity counts; the edge action of an automorphism is
reconstructed afterwards (parallel-class members matched by edge id).

The canonical form is the lexicographically least (refinement trace,
labeled-adjacency encoding) pair over the automorphism-pruned search tree,
so certificate equality is exactly isomorphism.  Discovered automorphisms
prune sibling branches; the search is deterministic, and its node budget
comes from TETRACENSUS_BUDGET when set.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import SearchBudgetExceeded, TetracensusError
from .multigraph import Multigraph
from .perm import Perm

DEFAULT_BUDGET = 20_000_000

_INDIVIDUALIZE = 0
_SPLIT = 1


def _budget(budget: int | None) -> int:
    if budget is not None:
        return budget
    env = os.environ.get("TETRACENSUS_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


@dataclass
class _Leaf:
    trace: tuple
    enc: bytes
    lab: tuple  # lab[i] = vertex with canonical label i


@dataclass
class EngineResult:
    generators: list[tuple]  # vertex permutations (image tuples)
    canonical_lab: tuple     # position i holds the vertex labeled i
    certificate: bytes
    nodes: int


class _UnionFind:
    __slots__ = ("parent",)

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        p = self.parent
        while p[a] != a:
            p[a] = p[p[a]]
            a = p[a]
        return a

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


class _Engine:
    def __init__(self, n: int, adj: list[list[tuple[int, int]]], colors: Sequence[int]):
        self.n = n
        self.adj = adj
        self.adjdict = [dict(row) for row in adj]
        self.simple = all(m == 1 for row in adj for (_, m) in row)
        ranks = {c: i for i, c in enumerate(sorted(set(colors)))}
        self.colors = [ranks[c] for c in colors]

    # -- partition machinery ------------------------------------------------

    def initial_partition(self) -> tuple[list[list[int]], list[int]]:
        by_color: dict[int, list[int]] = {}
        for v in range(self.n):
            by_color.setdefault(self.colors[v], []).append(v)
        cells = [by_color[c] for c in sorted(by_color)]
        cell_of = [0] * self.n
        for i, cell in enumerate(cells):
            for v in cell:
                cell_of[v] = i
        return cells, cell_of

    def refine(self, cells: list[list[int]], cell_of: list[int],
               worklist: list[int], trace: list) -> None:
        adj = self.adj
        simple = self.simple
        pending = set(worklist)
        queue = list(worklist)
        qi = 0
        while qi < len(queue):
            wi = queue[qi]
            qi += 1
            pending.discard(wi)
            splitter = cells[wi]
            acc: dict[int, object] = {}
            if simple:
                for w in splitter:
                    for (v, _m) in adj[w]:
                        acc[v] = acc.get(v, 0) + 1
            else:
                for w in splitter:
                    for (v, m) in adj[w]:
                        d = acc.get(v)
                        if d is None:
                            d = acc[v] = {}
                        d[m] = d.get(m, 0) + 1
            by_cell: dict[int, list[int]] = {}
            for v in acc:
                ci = cell_of[v]
                if len(cells[ci]) > 1:
                    by_cell.setdefault(ci, []).append(v)
            for ci in sorted(by_cell):
                members = cells[ci]
                if simple:
                    key_of = {v: acc.get(v, 0) for v in members}
                else:
                    key_of = {v: tuple(sorted(acc[v].items())) if v in acc else ()
                              for v in members}
                distinct = sorted(set(key_of.values()))
                if len(distinct) == 1:
                    continue
                groups = [[v for v in members if key_of[v] == k] for k in distinct]
                trace.append((_SPLIT, wi, ci,
                              tuple((k, len(g)) for k, g in zip(distinct, groups))))
                cells[ci] = groups[0]
                new_indices = [ci]
                for g in groups[1:]:
                    new_indices.append(len(cells))
                    for v in g:
                        cell_of[v] = len(cells)
                    cells.append(g)
                for idx in new_indices:
                    if idx not in pending:
                        pending.add(idx)
                        queue.append(idx)

    def individualize(self, cells: list[list[int]], cell_of: list[int],
                      v: int, trace: list) -> list[int]:
        ci = cell_of[v]
        rest = [u for u in cells[ci] if u != v]
        cells[ci] = [v]
        new_idx = len(cells)
        for u in rest:
            cell_of[u] = new_idx
        cells.append(rest)
        trace.append((_INDIVIDUALIZE, ci))
        return [ci, new_idx]

    def encode_leaf(self, lab: Sequence[int]) -> bytes:
        n = self.n
        pos = [0] * n
        for i, v in enumerate(lab):
            pos[v] = i
        out = bytearray()
        out += n.to_bytes(4, "big")
        for i in range(n):
            out += self.colors[lab[i]].to_bytes(2, "big")
        for i in range(n):
            row = sorted((pos[w], m) for (w, m) in self.adj[lab[i]] if pos[w] > i)
            out += len(row).to_bytes(2, "big")
            for (j, m) in row:
                out += j.to_bytes(2, "big")
                out += m.to_bytes(2, "big")
        return bytes(out)

    def _is_automorphism(self, images: Sequence[int]) -> bool:
        adjdict = self.adjdict
        colors = self.colors
        for v in range(self.n):
            if colors[images[v]] != colors[v]:
                return False
            row = adjdict[v]
            target = adjdict[images[v]]
            if len(row) != len(target):
                return False
            for w, m in row.items():
                if target.get(images[w]) != m:
                    return False
        return True

    # -- search -------------------------------------------------------------

    def run(self, budget: int) -> EngineResult:
        n = self.n
        if n > 65535:
            raise TetracensusError("engine limited to 65535 vertices")
        cells, cell_of = self.initial_partition()
        trace: list = []
        if cells:
            self.refine(cells, cell_of, list(range(len(cells))), trace)

        gens: list[tuple] = []
        gen_keys: set[tuple] = set()
        first: _Leaf | None = None
        best: _Leaf | None = None
        nodes = 0

        def prefix_viability(t: list, ref: _Leaf | None) -> int:
            """-1/0/+1: compare t against ref's trace prefix; 0 keeps the
            branch alive for matching ref."""
            if ref is None:
                return 0
            r = ref.trace
            k = min(len(t), len(r))
            for i in range(k):
                if t[i] != r[i]:
                    return -1 if t[i] < r[i] else 1
            return 1 if len(t) > len(r) else 0

        def add_automorphism(images: tuple) -> None:
            if images in gen_keys:
                return
            if all(i == v for i, v in enumerate(images)):
                return
            if not self._is_automorphism(images):
                raise TetracensusError("internal: leaf pair is not an automorphism")
            gen_keys.add(images)
            gens.append(images)

        def handle_leaf(trace: list, lab: tuple) -> None:
            nonlocal first, best
            enc = self.encode_leaf(lab)
            t = tuple(trace)
            leaf = _Leaf(t, enc, lab)
            if first is None:
                first = leaf
                best = leaf
                return
            if t == first.trace and enc == first.enc and lab != first.lab:
                images = [0] * self.n
                for i in range(self.n):
                    images[first.lab[i]] = lab[i]
                add_automorphism(tuple(images))
            assert best is not None
            if (t, enc) < (best.trace, best.enc):
                best = leaf
            elif t == best.trace and enc == best.enc and lab != best.lab:
                images = [0] * self.n
                for i in range(self.n):
                    images[best.lab[i]] = lab[i]
                add_automorphism(tuple(images))

        def rec(cells: list[list[int]], cell_of: list[int], trace: list,
                prefix: list[int]) -> None:
            nonlocal nodes
            nodes += 1
            if nodes > budget:
                raise SearchBudgetExceeded(f"node budget {budget} exhausted")
            if len(cells) == n:
                handle_leaf(trace, tuple(c[0] for c in cells))
                return
            target = -1
            target_size = n + 1
            for i, cell in enumerate(cells):
                if 1 < len(cell) < target_size:
                    target = i
                    target_size = len(cell)
            candidates = sorted(cells[target])
            processed: list[int] = []
            uf: _UnionFind | None = None
            uf_stamp = -1
            for v in candidates:
                if gens and uf_stamp < len(gens):
                    uf = _UnionFind(n)
                    for g in gens:
                        if all(g[p] == p for p in prefix):
                            for x in range(n):
                                uf.union(x, g[x])
                    uf_stamp = len(gens)
                if uf is not None and processed:
                    root = uf.find(v)
                    if any(uf.find(u) == root for u in processed):
                        continue
                processed.append(v)
                cells2 = [list(c) for c in cells]
                cell_of2 = list(cell_of)
                trace2 = list(trace)
                touched = self.individualize(cells2, cell_of2, v, trace2)
                self.refine(cells2, cell_of2, touched, trace2)
                if first is not None:
                    against_first = prefix_viability(trace2, first)
                    against_best = prefix_viability(trace2, best)
                    if against_first != 0 and against_best > 0:
                        continue
                prefix.append(v)
                rec(cells2, cell_of2, trace2, prefix)
                prefix.pop()

        if n == 0:
            return EngineResult([], (), b"\x00\x00\x00\x00", 0)
        rec(cells, cell_of, trace, [])
        assert best is not None
        return EngineResult(gens, best.lab, best.enc, nodes)


def _engine_for(graph: Multigraph, colors: Sequence[int] | None) -> _Engine:
    adj: list[list[tuple[int, int]]] = [
        sorted(graph.adjacency[v].items()) for v in range(graph.vertex_count)
    ]
    if colors is None:
        colors = [0] * graph.vertex_count
    return _Engine(graph.vertex_count, adj, colors)


def vertex_automorphisms(graph: Multigraph, colors: Sequence[int] | None = None,
                         budget: int | None = None) -> EngineResult:
    """Generators of the vertex-automorphism group plus a canonical form.

    ``colors`` constrains automorphisms to preserve the coloring.
    """
    return _engine_for(graph, colors).run(_budget(budget))


@dataclass(frozen=True)
class Certificate:
    """Complete isomorphism invariant; equal certificates mean isomorphic."""

    data: bytes

    def hex(self) -> str:
        return self.data.hex()

    def __str__(self) -> str:
        return self.data.hex()


def canonical_certificate(graph: Multigraph, colors: Sequence[int] | None = None,
                          budget: int | None = None) -> Certificate:
    return Certificate(vertex_automorphisms(graph, colors, budget).certificate)


@dataclass(frozen=True)
class Isomorphism:
    """Explicit vertex and edge bijections from one graph onto another."""

    vertex_map: tuple[int, ...]
    edge_map: tuple[int, ...]


def _edge_bijection(x: Multigraph, y: Multigraph, vmap: Sequence[int]) -> tuple[int, ...]:
    emap = [0] * x.edge_count
    for pair, ids in x.parallel_classes.items():
        u, v = vmap[pair[0]], vmap[pair[1]]
        key = (u, v) if u < v else (v, u)
        target = y.parallel_classes.get(key)
        if target is None or len(target) != len(ids):
            raise TetracensusError("vertex map does not carry edges onto edges")
        for a, b in zip(ids, target):
            emap[a] = b
    return tuple(emap)


def are_isomorphic(x: Multigraph, y: Multigraph,
                   xcolors: Sequence[int] | None = None,
                   ycolors: Sequence[int] | None = None,
                   budget: int | None = None) -> Isomorphism | None:
    """An explicit isomorphism, or None.  Colors, when given, must correspond."""
    if x.vertex_count != y.vertex_count or x.edge_count != y.edge_count:
        return None
    if sorted(x.adjacency[v].__len__() for v in range(x.vertex_count)) != \
       sorted(y.adjacency[v].__len__() for v in range(y.vertex_count)):
        return None
    rx = vertex_automorphisms(x, xcolors, budget)
    ry = vertex_automorphisms(y, ycolors, budget)
    if rx.certificate != ry.certificate:
        return None
    # label -> vertex maps compose into x -> y
    vmap = [0] * x.vertex_count
    for i in range(x.vertex_count):
        vmap[rx.canonical_lab[i]] = ry.canonical_lab[i]
    emap = _edge_bijection(x, y, vmap)
    for e, (u, v) in enumerate(x.edges):
        a, b = y.edges[emap[e]]
        if {vmap[u], vmap[v]} != {a, b}:
            raise TetracensusError("internal: edge bijection broken")
    return Isomorphism(tuple(vmap), emap)


def iso_as_perms(iso: Isomorphism, x: Multigraph) -> tuple[Perm, Perm]:
    return Perm(iso.vertex_map), Perm(iso.edge_map)


def colored_isomorphic(x, y, budget: int | None = None) -> Isomorphism | None:
    """Isomorphism of 2-colored graphs (coloring preserved)."""
    return are_isomorphic(x.graph, y.graph, x.colors, y.colors, budget)


def vertex_group_order_bruteforce(graph: Multigraph,
                                  colors: Sequence[int] | None = None) -> int:
    """Count color/multiplicity-preserving vertex bijections by brute force.

    Exponential; only sensible for at most ~8 vertices.  Used as the
    independent oracle for the search engine.
    """
    import itertools

    n = graph.vertex_count
    if colors is None:
        colors = [0] * n
    count = 0
    adj = graph.adjacency
    for perm in itertools.permutations(range(n)):
        if any(colors[perm[v]] != colors[v] for v in range(n)):
            continue
        ok = True
        for v in range(n):
            row = adj[v]
            target = adj[perm[v]]
            if len(row) != len(target) or any(target.get(perm[w]) != m for w, m in row.items()):
                ok = False
                break
        if ok:
            count += 1
    return count
