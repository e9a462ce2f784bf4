"""Exact permutation groups via a deterministic Schreier-Sims chain.

Base points are chosen as the smallest moved point at each level, orbits are
explored in FIFO order with generators in list order, so orders, membership
answers and element enumeration are reproducible.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import BoundExceeded, DomainMismatch, NotSubgroup, NotTransitive
from .perm import Perm


def _mul(p: tuple, q: tuple) -> tuple:
    """x^(pq) = (x^p)^q."""
    return tuple(q[v] for v in p)


def _inv(p: tuple) -> tuple:
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


@dataclass
class _Level:
    base: int
    transversal: dict[int, tuple]


class PermGroup:
    """Group generated by permutations of {0..degree-1}."""

    def __init__(self, degree: int, generators: Iterable[Perm]):
        gens: list[Perm] = []
        seen = set()
        for g in generators:
            if g.degree != degree:
                raise DomainMismatch(f"generator degree {g.degree} != {degree}")
            if not g.is_identity() and g.images not in seen:
                seen.add(g.images)
                gens.append(g)
        self.degree = degree
        self.generators = tuple(gens)
        self._chain: list[_Level] | None = None
        self._strong: list[tuple] | None = None
        self._order: int | None = None

    @classmethod
    def trivial(cls, degree: int) -> PermGroup:
        return cls(degree, [])

    # -- stabilizer chain ---------------------------------------------------

    def _orbit_of_level(self, i: int, strong: list[tuple], base: list[int]) -> _Level:
        beta = base[i]
        prefix = base[:i]
        gens = [g for g in strong if all(g[b] == b for b in prefix)]
        ident = tuple(range(self.degree))
        trans = {beta: ident}
        queue = deque([beta])
        while queue:
            delta = queue.popleft()
            u = trans[delta]
            for g in gens:
                img = g[delta]
                if img not in trans:
                    trans[img] = _mul(u, g)
                    queue.append(img)
        return _Level(beta, trans)

    def _build_chain(self) -> None:
        if self._chain is not None:
            return
        strong: list[tuple] = [g.images for g in self.generators]
        base: list[int] = []
        for g in strong:
            if all(g[b] == b for b in base):
                base.append(min(i for i, v in enumerate(g) if v != i))
        levels = [self._orbit_of_level(i, strong, base) for i in range(len(base))]

        def strip(g: tuple, start: int) -> tuple[tuple, int]:
            for j in range(start, len(levels)):
                img = g[levels[j].base]
                if img not in levels[j].transversal:
                    return g, j
                g = _mul(g, _inv(levels[j].transversal[img]))
            return g, len(levels)

        i = len(levels) - 1
        while i >= 0:
            levels[i] = self._orbit_of_level(i, strong, base)
            level = levels[i]
            prefix = base[:i]
            s_i = [g for g in strong if all(g[b] == b for b in prefix)]
            new_gen = None
            for delta in sorted(level.transversal):
                u = level.transversal[delta]
                for s in s_i:
                    target = level.transversal[s[delta]]
                    schreier = _mul(_mul(u, s), _inv(target))
                    h, j = strip(schreier, i + 1)
                    if any(x != v for x, v in enumerate(h)):
                        new_gen = (h, j)
                        break
                if new_gen:
                    break
            if new_gen is None:
                i -= 1
                continue
            h, j = new_gen
            strong.append(h)
            if all(h[b] == b for b in base):
                base.append(min(x for x, v in enumerate(h) if v != x))
                levels.append(self._orbit_of_level(len(base) - 1, strong, base))
            i = min(j, len(levels) - 1)
        self._chain = levels
        self._strong = strong
        order = 1
        for level in levels:
            order *= len(level.transversal)
        self._order = order

    def order(self) -> int:
        self._build_chain()
        assert self._order is not None
        return self._order

    def base(self) -> list[int]:
        self._build_chain()
        assert self._chain is not None
        return [level.base for level in self._chain]

    def sift(self, p: Perm) -> Perm:
        """Residue of p after stripping through the chain; identity iff p is
        a member."""
        if p.degree != self.degree:
            raise DomainMismatch(f"degree {p.degree} != {self.degree}")
        self._build_chain()
        assert self._chain is not None
        g = p.images
        for level in self._chain:
            img = g[level.base]
            if img not in level.transversal:
                return Perm(g)
            g = _mul(g, _inv(level.transversal[img]))
        return Perm(g)

    def __contains__(self, p: Perm) -> bool:
        return self.sift(p).is_identity()

    def is_member(self, p: Perm) -> bool:
        return p in self

    # -- orbits -------------------------------------------------------------

    def orbit(self, point: int) -> list[int]:
        seen = {point}
        queue = deque([point])
        while queue:
            a = queue.popleft()
            for g in self.generators:
                b = g[a]
                if b not in seen:
                    seen.add(b)
                    queue.append(b)
        return sorted(seen)

    def orbit_transversal(self, point: int) -> dict[int, Perm]:
        """For each orbit point p, some group element u with point^u = p."""
        trans = {point: Perm.identity(self.degree)}
        queue = deque([point])
        while queue:
            a = queue.popleft()
            for g in self.generators:
                b = g[a]
                if b not in trans:
                    trans[b] = trans[a] * g
                    queue.append(b)
        return trans

    def orbits(self, subset: Sequence[int] | None = None) -> list[list[int]]:
        """Orbit partition (of the domain or of an invariant subset), each
        orbit sorted, ordered by least element."""
        domain = range(self.degree) if subset is None else sorted(subset)
        seen: set[int] = set()
        out = []
        for p in domain:
            if p in seen:
                continue
            orb = self.orbit(p)
            seen.update(orb)
            out.append(orb)
        return out

    def is_transitive(self, subset: Sequence[int] | None = None) -> bool:
        domain = list(range(self.degree)) if subset is None else sorted(subset)
        if not domain:
            return True
        return set(self.orbit(domain[0])) >= set(domain)

    # -- derived groups -----------------------------------------------------

    def stabilizer(self, point: int) -> PermGroup:
        """Point stabilizer via Schreier generators."""
        if not (0 <= point < self.degree):
            raise DomainMismatch(f"point {point} outside degree {self.degree}")
        trans = self.orbit_transversal(point)
        gens: list[Perm] = []
        seen = set()
        for a in sorted(trans):
            u = trans[a]
            for g in self.generators:
                h = u * g * trans[g[a]].inverse()
                if not h.is_identity() and h.images not in seen:
                    seen.add(h.images)
                    gens.append(h)
        stab = PermGroup(self.degree, gens)
        return stab

    def restrict(self, points: Sequence[int]) -> PermGroup:
        """Induced action on an invariant point list, reindexed by position."""
        return PermGroup(len(points), [g.restrict(points) for g in self.generators])

    def elements(self, limit: int | None = None) -> Iterator[Perm]:
        """All elements in a deterministic chain order."""
        self._build_chain()
        assert self._chain is not None
        if limit is not None and self.order() > limit:
            raise BoundExceeded(self.order(), limit)

        def rec(i: int) -> Iterator[tuple]:
            if i == len(self._chain):
                yield tuple(range(self.degree))
                return
            level = self._chain[i]
            for delta in sorted(level.transversal):
                u = level.transversal[delta]
                for rest in rec(i + 1):
                    yield _mul(rest, u)

        for imgs in rec(0):
            yield Perm(imgs)

    # -- blocks -------------------------------------------------------------

    def minimal_block(self, pair: Sequence[int]) -> list[int]:
        """Smallest block containing the pair, for a transitive action.

        Union-find closure: repeatedly merge images of merged points under
        the generators until the classes are generator-stable.
        """
        if not self.is_transitive():
            raise NotTransitive("blocks need a transitive action")
        x, y = pair
        parent = list(range(self.degree))

        def find(a: int) -> int:
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        def union(a: int, b: int) -> bool:
            ra, rb = find(a), find(b)
            if ra == rb:
                return False
            if ra > rb:
                ra, rb = rb, ra
            parent[rb] = ra
            return True

        queue = deque()
        union(x, y)
        queue.append((x, y))
        while queue:
            a, b = queue.popleft()
            for g in self.generators:
                if union(g[a], g[b]):
                    queue.append((g[a], g[b]))
        root = find(x)
        return sorted(p for p in range(self.degree) if find(p) == root)

    def size2_block_systems(self) -> list[list[tuple[int, int]]]:
        """All imprimitivity systems whose blocks have size 2.

        Runs minimal_block over {x0, y} for the fixed point x0 = 0 and keeps
        the closures of size two; each survivor is expanded to a full system
        by the orbit of the block.  The result is deduplicated and sorted.
        """
        if self.degree == 0:
            return []
        if not self.is_transitive():
            raise NotTransitive("block systems need a transitive action")
        systems = []
        seen = set()
        for y in range(1, self.degree):
            block = self.minimal_block((0, y))
            if len(block) != 2:
                continue
            blocks = {tuple(block)}
            queue = deque([tuple(block)])
            while queue:
                b = queue.popleft()
                for g in self.generators:
                    img = tuple(sorted((g[b[0]], g[b[1]])))
                    if img not in blocks:
                        blocks.add(img)
                        queue.append(img)
            system = sorted(blocks)
            flat = [p for b in system for p in b]
            if sorted(flat) != list(range(self.degree)):
                continue
            key = tuple(system)
            if key not in seen:
                seen.add(key)
                systems.append(system)
        return systems


@dataclass(frozen=True)
class BlockSystem:
    """Group-invariant partition into equal-size blocks."""

    blocks: tuple[tuple[int, ...], ...]

    @property
    def block_size(self) -> int:
        return len(self.blocks[0]) if self.blocks else 0

    def is_invariant_under(self, group: PermGroup) -> bool:
        block_set = {frozenset(b) for b in self.blocks}
        return all(frozenset(g[p] for p in b) in block_set
                   for b in self.blocks for g in group.generators)


def normalizes(p: Perm, h: PermGroup) -> bool:
    """True iff p^-1 * g * p lies in h for every generator g of h."""
    if p.degree != h.degree:
        raise DomainMismatch(f"degree {p.degree} != {h.degree}")
    return all(g.conjugate(p) in h for g in h.generators)


def conjugating_element(a: PermGroup, g: PermGroup, h: PermGroup,
                        limit: int = 2_000_000) -> Perm | None:
    """Some x in a with g^x = h, or None.

    Both groups must sit inside a; the sweep over a's elements follows the
    deterministic chain order, so the witness is reproducible.
    """
    for grp in (g, h):
        for gen in grp.generators:
            if gen not in a:
                raise NotSubgroup("conjugation candidates must lie in the ambient group")
    if g.order() != h.order():
        return None
    for x in a.elements(limit=limit):
        if all(gen.conjugate(x) in h for gen in g.generators):
            return x
    return None
