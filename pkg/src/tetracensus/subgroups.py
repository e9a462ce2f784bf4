"""Bounded exact subgroup search: minimal dart-transitive subgroups and a
full subgroup-lattice oracle.

Groups here are small enough (order at most a few thousand, enforced by the
caller's bound) to list every element and work with a multiplication table.
Subgroups are sets of element ids; all searches are deterministic.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BoundExceeded, NotDartTransitive
from .multigraph import Multigraph
from .perm import Perm
from .permgroup import PermGroup


@dataclass
class ElementTable:
    """Every element of a small permutation group plus its Cayley table."""

    elements: list[tuple]          # image tuples, elements[0] is the identity
    table: np.ndarray              # table[i, j] = id of elements[i] * elements[j]
    inverse: np.ndarray

    @property
    def size(self) -> int:
        return len(self.elements)

    def perm(self, i: int) -> Perm:
        return Perm(self.elements[i])


def element_table(group: PermGroup, limit: int) -> ElementTable:
    order = group.order()
    if order > limit:
        raise BoundExceeded(order, limit)
    base = group.base()
    if not base:
        base = [0] if group.degree else []
    elements = [tuple(range(group.degree))]
    elements += [p.images for p in group.elements() if not p.is_identity()]
    key_of = {tuple(el[b] for b in base): i for i, el in enumerate(elements)}
    n = len(elements)
    table = np.zeros((n, n), dtype=np.int32)
    for j, gj in enumerate(elements):
        for i, gi in enumerate(elements):
            table[i, j] = key_of[tuple(gj[gi[b]] for b in base)]
    inverse = np.zeros(n, dtype=np.int32)
    for i in range(n):
        row = table[i]
        inverse[i] = int(np.nonzero(row == 0)[0][0])
    return ElementTable(elements, table, inverse)


def closure(table: np.ndarray, gens: list[int]) -> frozenset[int]:
    """Subgroup generated by element ids (right-multiplication closure)."""
    seen = {0}
    queue = [0]
    for g in gens:
        if g not in seen:
            seen.add(g)
            queue.append(g)
    i = 0
    while i < len(queue):
        x = queue[i]
        i += 1
        for g in gens:
            y = int(table[x, g])
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return frozenset(seen)


def conjugate_subgroup(tab: ElementTable, sub: frozenset[int], x: int) -> frozenset[int]:
    xi = int(tab.inverse[x])
    t = tab.table
    return frozenset(int(t[int(t[xi, h]), x]) for h in sub)


def subgroup_canonical(tab: ElementTable, sub: frozenset[int]) -> tuple[int, ...]:
    """Least sorted id tuple over the whole conjugacy class."""
    best = tuple(sorted(sub))
    for x in range(1, tab.size):
        cand = tuple(sorted(conjugate_subgroup(tab, sub, x)))
        if cand < best:
            best = cand
    return best


def small_generating_ids(tab: ElementTable, sub: frozenset[int]) -> list[int]:
    gens: list[int] = []
    have: frozenset[int] = frozenset([0])
    for x in sorted(sub):
        if x not in have:
            gens.append(x)
            have = closure(tab.table, gens)
            if len(have) == len(sub):
                break
    return gens


def subgroup_lattice(tab: ElementTable) -> list[frozenset[int]]:
    """Every subgroup, by closing joins of cyclic subgroups.

    Exponential in principle; meant for the oracle route on groups of order
    at most ~2000 with tame lattices.
    """
    table = tab.table
    cyclics = []
    seen = set()
    for x in range(tab.size):
        c = closure(table, [x])
        if c not in seen:
            seen.add(c)
            cyclics.append((x, c))
    lattice = {frozenset([0])}
    lattice.update(c for _, c in cyclics)
    queue = sorted(lattice, key=sorted)
    qi = 0
    while qi < len(queue):
        sub = queue[qi]
        qi += 1
        gens = small_generating_ids(tab, sub)
        for x, c in cyclics:
            if x in sub or c <= sub:
                continue
            joined = closure(table, gens + [x])
            if joined not in lattice:
                lattice.add(joined)
                queue.append(joined)
    return sorted(lattice, key=lambda s: (len(s), sorted(s)))


def dart_images(tab: ElementTable, graph: Multigraph) -> np.ndarray:
    """dart_images[i] is the image of dart 0 under elements[i].

    The orbit of dart 0 under a subgroup H is exactly these images, because
    H is closed under products.
    """
    n = graph.vertex_count
    out = np.zeros(tab.size, dtype=np.int32)
    if graph.edge_count == 0:
        return out
    u0, _v0 = graph.edges[0]
    for i, el in enumerate(tab.elements):
        e2 = el[n + 0] - n
        end2 = el[u0]
        a, _b = graph.edges[e2]
        out[i] = 2 * e2 + (0 if end2 == a else 1)
    return out


def _transitive_endpoints(tab: ElementTable, graph: Multigraph,
                          bound: int) -> list[frozenset[int]]:
    """All subgroups reachable by the covering DFS that are dart-transitive.

    Every minimal dart-transitive subgroup of order <= bound is among them:
    following the DFS inside such a subgroup G always stays in G and stops
    at a transitive subgroup of G, which by minimality is G itself.
    """
    n_darts = graph.dart_count
    d0 = dart_images(tab, graph)
    buckets: dict[int, list[int]] = {}
    for i in range(tab.size):
        buckets.setdefault(int(d0[i]), []).append(i)
    table = tab.table
    found: list[frozenset[int]] = []
    visited: set[frozenset[int]] = set()

    def rec(sub: frozenset[int], gens: list[int]) -> None:
        if sub in visited:
            return
        visited.add(sub)
        covered = {int(d0[h]) for h in sub}
        if len(covered) == n_darts:
            found.append(sub)
            return
        target = min(d for d in range(n_darts) if d not in covered)
        for g in buckets.get(target, []):
            bigger = closure(table, gens + [g])
            if len(bigger) > bound:
                continue
            rec(bigger, small_generating_ids(tab, bigger))

    rec(frozenset([0]), [])
    return found


def minimal_dart_transitive_subgroups(a: PermGroup, graph: Multigraph,
                                      order_bound: int | None = None) -> list[PermGroup]:
    """Minimal dart-transitive subgroups of ``a``, one per a-conjugacy class.

    ``a`` must act on vertices+edges of ``graph``.  Exhaustive for subgroups
    of order at most the bound (default 50 * number of darts); raises
    BoundExceeded when |a| itself is larger, signalling the catalog route.
    """
    bound = order_bound if order_bound is not None else 50 * graph.dart_count
    if a.order() > bound:
        raise BoundExceeded(a.order(), bound)
    tab = element_table(a, bound)
    if graph.dart_count == 0:
        return [PermGroup.trivial(a.degree)]
    endpoints = _transitive_endpoints(tab, graph, bound)
    if not endpoints:
        return []
    minimal = [s for s in endpoints
               if not any(t < s for t in endpoints)]
    reps: dict[tuple[int, ...], frozenset[int]] = {}
    for s in minimal:
        key = subgroup_canonical(tab, s)
        if key not in reps:
            reps[key] = frozenset(key)
    out = []
    for key in sorted(reps):
        ids = small_generating_ids(tab, reps[key])
        out.append(PermGroup(a.degree, [tab.perm(i) for i in ids]))
    return out


def dart_transitive_subgroups_bruteforce(a: PermGroup, graph: Multigraph,
                                         limit: int = 2000) -> list[frozenset[int]]:
    """Oracle: every dart-transitive subgroup, from the full lattice."""
    tab = element_table(a, limit)
    d0 = dart_images(tab, graph)
    n_darts = graph.dart_count
    out = []
    for sub in subgroup_lattice(tab):
        if len({int(d0[h]) for h in sub}) == n_darts:
            out.append(sub)
    return out


def minimal_dart_transitive_bruteforce(a: PermGroup, graph: Multigraph,
                                       limit: int = 2000) -> list[tuple[int, ...]]:
    """Oracle route: canonical conjugacy-class keys of the minimal
    dart-transitive subgroups, via full lattice enumeration."""
    tab = element_table(a, limit)
    transitive = dart_transitive_subgroups_bruteforce(a, graph, limit)
    minimal = [s for s in transitive if not any(t < s for t in transitive)]
    return sorted({subgroup_canonical(tab, s) for s in minimal})
