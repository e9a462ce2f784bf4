"""Permutations of {0..n-1}.

The action is written with superscripts, so products compose left to right:
``x ** (p * q) == (x ** p) ** q``.  A ``Perm`` is immutable and hashable; the
image list is the single source of truth.
"""
from __future__ import annotations

import math
import re
from typing import Iterable, Sequence

from .errors import DomainMismatch

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


class Perm:
    __slots__ = ("images",)

    def __init__(self, images: Sequence[int]):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation of 0..{len(images) - 1}: {images}")
        object.__setattr__(self, "images", images)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("Perm is immutable")

    @classmethod
    def identity(cls, n: int) -> Perm:
        return cls(range(n))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> Perm:
        images = list(range(n))
        for cycle in cycles:
            for a, b in zip(cycle, cycle[1:]):
                images[a] = b
            if cycle:
                images[cycle[-1]] = cycle[0]
        return cls(images)

    @classmethod
    def from_mapping(cls, n: int, mapping: dict[int, int]) -> Perm:
        images = list(range(n))
        for a, b in mapping.items():
            images[a] = b
        return cls(images)

    @property
    def degree(self) -> int:
        return len(self.images)

    def apply(self, point: int) -> int:
        return self.images[point]

    __getitem__ = apply

    def __mul__(self, other: Perm) -> Perm:
        """Product acting left to right: ``x^(p*q) = (x^p)^q``."""
        if other.degree != self.degree:
            raise DomainMismatch(f"degrees {self.degree} and {other.degree}")
        o = other.images
        return Perm([o[v] for v in self.images])

    def inverse(self) -> Perm:
        inv = [0] * len(self.images)
        for i, v in enumerate(self.images):
            inv[v] = i
        return Perm(inv)

    def __pow__(self, k: int) -> Perm:
        if k < 0:
            return self.inverse() ** (-k)
        result = Perm.identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self, by: Perm) -> Perm:
        """Return ``self^by = by^-1 * self * by``."""
        return by.inverse() * self * by

    def is_identity(self) -> bool:
        return all(i == v for i, v in enumerate(self.images))

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        seen = [False] * self.degree
        out = []
        for i in range(self.degree):
            if seen[i]:
                continue
            cycle = [i]
            seen[i] = True
            j = self.images[i]
            while j != i:
                seen[j] = True
                cycle.append(j)
                j = self.images[j]
            if len(cycle) > 1 or include_fixed:
                out.append(tuple(cycle))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.cycles(include_fixed=True)), reverse=True))

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles(include_fixed=True)))

    def support(self) -> tuple[int, ...]:
        return tuple(i for i, v in enumerate(self.images) if i != v)

    def restrict(self, points: Sequence[int]) -> Perm:
        """Induced permutation on ``points``, reindexed by list position.

        The point set must be invariant under the permutation.
        """
        index = {p: i for i, p in enumerate(points)}
        try:
            return Perm([index[self.images[p]] for p in points])
        except KeyError:
            raise DomainMismatch(f"{points} is not invariant")

    def __eq__(self, other) -> bool:
        return isinstance(other, Perm) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Perm({list(self.images)})"

    def __str__(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)

    def to_text(self) -> str:
        """Serialize in the ``perm n: i0 i1 ...`` text format."""
        return f"perm {self.degree}: " + " ".join(map(str, self.images))


def parse_perm(text: str, degree: int | None = None) -> Perm:
    """Parse either the image-list format or cycle notation.

    ``perm 5: 1 0 2 3 4`` or ``(0 1)(3 4)``; cycle input needs ``degree``
    unless every point appears in some cycle.
    """
    text = text.strip()
    if text.startswith("perm"):
        head, _, rest = text.partition(":")
        n = int(head.split()[1])
        images = [int(tok) for tok in rest.split()]
        if len(images) != n:
            raise ValueError(f"expected {n} images, got {len(images)}")
        return Perm(images)
    if text == "()" or text == "":
        return Perm.identity(degree or 0)
    cycles = []
    consumed = _CYCLE_RE.sub("", text).strip()
    if consumed:
        raise ValueError(f"cannot parse permutation {text!r}")
    for body in _CYCLE_RE.findall(text):
        entries = [int(tok) for tok in re.split(r"[,\s]+", body.strip()) if tok]
        if entries:
            cycles.append(entries)
    n = max((max(c) for c in cycles), default=-1) + 1
    if degree is not None:
        if degree < n:
            raise ValueError(f"cycles mention point {n - 1} >= degree {degree}")
        n = degree
    return Perm.from_cycles(n, cycles)
