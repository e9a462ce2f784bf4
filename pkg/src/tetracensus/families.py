"""Named graph families and the CLI shorthand for them.

Vertex numbering is frozen per family:

* ``Circulant(n, S)``: vertex ``i`` is index ``i``; edges grouped by
  connection element in the given order, then by base vertex, deduplicated.
* ``Wreath(n)`` (W(n,2)): vertex ``(i, j)`` is ``2i + j``; the edges of rung
  ``i`` are ``a_i, b_i, c_i, d_i`` at ids ``4i .. 4i+3`` where
  ``a_i = {(i,0),(i+1,0)}``, ``b_i = {(i,0),(i+1,1)}``,
  ``c_i = {(i,1),(i+1,1)}``, ``d_i = {(i,1),(i+1,0)}``.
* ``RoseWindow(n, a, r)``: ``A_i`` is ``i``, ``B_i`` is ``n + i``; edge ids:
  rim ``A_iA_{i+1}`` (0..n-1), in-spokes ``A_iB_i`` (n..2n-1), out-spokes
  ``B_iA_{i+a}`` (2n..3n-1), hub ``B_iB_{i+r}`` (3n..4n-1).
* ``PX(n, k)``: vertex ``(i, s)`` with bitstring ``s`` is
  ``i * 2^k + sum(s_j * 2^j)``; ``(i, s)`` is adjacent to ``(i+1, t)`` iff
  ``s[1:] == t[:-1]``.
* ``Torus44``: quotient of the square grid by the lattice spanned by two
  translations; ``std {b,c}`` uses (b,c) and (-c,b), ``bracket [b,c]`` uses
  (b,b) and (-c,c), ``angle <b,c>`` uses (b,c) and (c,b).  Vertices are
  numbered in BFS discovery order from the origin.
* ``DW(n)`` (DW(n,3), reconstructed; the census source defines it):
  vertex ``(i, j)`` on Z_n x Z_3 is ``3i + j``; ``(i,j) ~ (i+1,l)`` iff
  ``j != l``.
"""
from __future__ import annotations

import itertools
import re
from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .errors import InvalidParameter
from .multigraph import Multigraph
from .perm import Perm


@dataclass(frozen=True)
class FamilySpec:
    """Tagged union of family constructors; ``params`` is kind-specific."""

    kind: str
    params: tuple = ()

    def name(self) -> str:
        return format_spec(self)

    def __str__(self) -> str:
        return format_spec(self)


def complete(n: int) -> FamilySpec:
    return FamilySpec("complete", (n,))


def circulant(n: int, connections: Sequence[int]) -> FamilySpec:
    return FamilySpec("circulant", (n, tuple(connections)))


def wreath(n: int) -> FamilySpec:
    return FamilySpec("wreath", (n,))


def rose_window(n: int, a: int, r: int) -> FamilySpec:
    return FamilySpec("rose_window", (n, a, r))


def px(n: int, k: int) -> FamilySpec:
    return FamilySpec("px", (n, k))


def doubled_cycle(n: int) -> FamilySpec:
    return FamilySpec("doubled_cycle", (n,))


def dipole(m: int) -> FamilySpec:
    return FamilySpec("dipole", (m,))


def torus44(variant: str, b: int, c: int) -> FamilySpec:
    return FamilySpec("torus44", (variant, b, c))


def cycle_product(m: int, n: int) -> FamilySpec:
    return FamilySpec("cycle_product", (m, n))


def line_graph_of(spec: FamilySpec) -> FamilySpec:
    return FamilySpec("line_graph", (spec,))


def petersen() -> FamilySpec:
    return FamilySpec("petersen")


def heawood() -> FamilySpec:
    return FamilySpec("heawood")


def dw(n: int) -> FamilySpec:
    return FamilySpec("dw", (n,))


def torus_lattice(variant: str, b: int, c: int) -> tuple[tuple[int, int], tuple[int, int]]:
    if variant == "std":
        return (b, c), (-c, b)
    if variant == "bracket":
        return (b, b), (-c, c)
    if variant == "angle":
        return (b, c), (c, b)
    raise InvalidParameter(f"unknown torus variant {variant!r}")


def _make_torus(variant: str, b: int, c: int) -> Multigraph:
    (p, q), (r, s) = torus_lattice(variant, b, c)
    det = p * s - q * r
    if det == 0:
        raise InvalidParameter("torus translations are linearly dependent")
    det = abs(det)

    def coset(x: int, y: int) -> tuple[int, int]:
        # (x,y) and (x',y') are in the same lattice coset iff the adjugate
        # image agrees mod det.
        return ((s * x - r * y) % det, (-q * x + p * y) % det)

    index = {coset(0, 0): 0}
    order = [(0, 0)]
    queue = deque([(0, 0)])
    while queue:
        x, y = queue.popleft()
        for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1)):
            key = coset(x + dx, y + dy)
            if key not in index:
                index[key] = len(order)
                order.append((x + dx, y + dy))
                queue.append((x + dx, y + dy))
    if len(order) != det:
        raise InvalidParameter("lattice enumeration failed")
    edges = []
    for (x, y) in order:
        for dx, dy in ((1, 0), (0, 1)):
            u, v = index[coset(x, y)], index[coset(x + dx, y + dy)]
            if u == v:
                raise InvalidParameter(f"torus {variant}({b},{c}) degenerates to loops")
            edges.append((u, v))
    g = Multigraph(det, edges)
    if not g.is_simple():
        raise InvalidParameter(f"torus {variant}({b},{c}) has parallel edges")
    return g


def _make_circulant(n: int, connections: tuple[int, ...]) -> Multigraph:
    if n < 3:
        raise InvalidParameter("circulant needs n >= 3")
    norm = []
    for s in connections:
        s %= n
        if s == 0:
            raise InvalidParameter("connection element 0 gives loops")
        norm.append(s)
    reduced = {min(s, n - s) for s in norm}
    if len(reduced) != len(norm):
        raise InvalidParameter(f"connection set {connections} repeats a class mod +-")
    edges = []
    seen = set()
    for s in norm:
        for i in range(n):
            u, v = i, (i + s) % n
            key = (u, v) if u < v else (v, u)
            if key not in seen:
                seen.add(key)
                edges.append(key)
    return Multigraph(n, edges)


def _make_px(n: int, k: int) -> Multigraph:
    if n < 3 or k < 1:
        raise InvalidParameter("PX needs n >= 3 and k >= 1")

    def idx(i: int, bits: tuple[int, ...]) -> int:
        return i * (1 << k) + sum(b << j for j, b in enumerate(bits))

    edges = []
    for i in range(n):
        for bits in itertools.product((0, 1), repeat=k):
            for jp in (0, 1):
                edges.append((idx(i, bits), idx((i + 1) % n, bits[1:] + (jp,))))
    return Multigraph(n * (1 << k), edges)


def _make_rose_window(n: int, a: int, r: int) -> Multigraph:
    if n < 3:
        raise InvalidParameter("rose window needs n >= 3")
    if not (1 <= a <= n - 1):
        raise InvalidParameter("rose window needs 1 <= a <= n-1")
    if not (1 <= r <= n - 1) or 2 * r % n == 0:
        raise InvalidParameter("rose window needs 1 <= r <= n-1 with 2r != n")
    A = lambda i: i % n
    B = lambda i: n + i % n
    edges = []
    edges += [(A(i), A(i + 1)) for i in range(n)]
    edges += [(A(i), B(i)) for i in range(n)]
    edges += [(B(i), A(i + a)) for i in range(n)]
    edges += [(B(i), B(i + r)) for i in range(n)]
    return Multigraph(2 * n, edges)


_PETERSEN_EDGES = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
                   (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
                   (5, 7), (7, 9), (9, 6), (6, 8), (8, 5)]

# Ring 0..13 plus the seven chords of the standard circular drawing.
_HEAWOOD_CHORDS = [(0, 5), (2, 7), (4, 9), (6, 11), (8, 13), (10, 1), (12, 3)]


def make_family(spec: FamilySpec) -> Multigraph:
    kind, p = spec.kind, spec.params
    if kind == "complete":
        (n,) = p
        if n < 1:
            raise InvalidParameter("complete graph needs n >= 1")
        return Multigraph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])
    if kind == "circulant":
        return _make_circulant(*p)
    if kind == "wreath":
        (n,) = p
        if n < 3:
            raise InvalidParameter("wreath graph needs n >= 3")
        edges = []
        for i in range(n):
            j = (i + 1) % n
            edges += [(2 * i, 2 * j), (2 * i, 2 * j + 1), (2 * i + 1, 2 * j + 1), (2 * i + 1, 2 * j)]
        return Multigraph(2 * n, edges)
    if kind == "rose_window":
        return _make_rose_window(*p)
    if kind == "px":
        return _make_px(*p)
    if kind == "doubled_cycle":
        (n,) = p
        if n < 3:
            raise InvalidParameter("doubled cycle needs n >= 3")
        edges = []
        for i in range(n):
            edges += [(i, (i + 1) % n)] * 2
        return Multigraph(n, edges)
    if kind == "dipole":
        (m,) = p
        if m < 1:
            raise InvalidParameter("dipole needs multiplicity >= 1")
        return Multigraph(2, [(0, 1)] * m)
    if kind == "torus44":
        return _make_torus(*p)
    if kind == "cycle_product":
        m, n = p
        if m < 3 or n < 3:
            raise InvalidParameter("cycle product needs both lengths >= 3")
        idx = lambda i, j: i * n + j
        edges = [(idx(i, j), idx((i + 1) % m, j)) for i in range(m) for j in range(n)]
        edges += [(idx(i, j), idx(i, (j + 1) % n)) for i in range(m) for j in range(n)]
        return Multigraph(m * n, edges)
    if kind == "line_graph":
        (inner,) = p
        base = make_family(inner)
        if not base.is_simple():
            raise InvalidParameter("line graph is only built over simple bases")
        pairs = set()
        for v in range(base.vertex_count):
            for e1, e2 in itertools.combinations(base.incidence[v], 2):
                pairs.add((e1, e2))
        return Multigraph(base.edge_count, sorted(pairs))
    if kind == "petersen":
        return Multigraph(10, _PETERSEN_EDGES)
    if kind == "heawood":
        edges = [(i, (i + 1) % 14) for i in range(14)] + _HEAWOOD_CHORDS
        return Multigraph(14, edges)
    if kind == "dw":
        (n,) = p
        if n < 3:
            raise InvalidParameter("DW(n,3) needs n >= 3")
        edges = []
        for i in range(n):
            for j in range(3):
                for l in range(3):
                    if j != l:
                        edges.append((3 * i + j, 3 * ((i + 1) % n) + l))
        return Multigraph(3 * n, edges)
    raise InvalidParameter(f"unknown family kind {spec.kind!r}")


_SHORTHAND_RES: list[tuple[re.Pattern, object]] = [
    (re.compile(r"^K(\d+)$"), lambda m: complete(int(m[1]))),
    (re.compile(r"^C(\d+)\((\d+),(\d+)\)$"), lambda m: circulant(int(m[1]), (int(m[2]), int(m[3])))),
    (re.compile(r"^W\((\d+),2\)$"), lambda m: wreath(int(m[1]))),
    (re.compile(r"^R(\d+)\((\d+),(\d+)\)$"), lambda m: rose_window(int(m[1]), int(m[2]), int(m[3]))),
    (re.compile(r"^PX\((\d+),(\d+)\)$"), lambda m: px(int(m[1]), int(m[2]))),
    (re.compile(r"^T44\[(\d+),(\d+)\]$"), lambda m: torus44("bracket", int(m[1]), int(m[2]))),
    (re.compile(r"^T44<(\d+),(\d+)>$"), lambda m: torus44("angle", int(m[1]), int(m[2]))),
    (re.compile(r"^T44\{(\d+),(\d+)\}$"), lambda m: torus44("std", int(m[1]), int(m[2]))),
    (re.compile(r"^DC(\d+)$"), lambda m: doubled_cycle(int(m[1]))),
    (re.compile(r"^DIP(\d+)$"), lambda m: dipole(int(m[1]))),
    (re.compile(r"^C(\d+)xC(\d+)$"), lambda m: cycle_product(int(m[1]), int(m[2]))),
    (re.compile(r"^L\(Petersen\)$"), lambda m: line_graph_of(petersen())),
    (re.compile(r"^Petersen$"), lambda m: petersen()),
    (re.compile(r"^Heawood$"), lambda m: heawood()),
    (re.compile(r"^DW\((\d+),3\)$"), lambda m: dw(int(m[1]))),
]


def parse_family(text: str) -> FamilySpec:
    text = text.strip()
    for pattern, build in _SHORTHAND_RES:
        m = pattern.match(text)
        if m:
            return build(m)
    raise InvalidParameter(f"unrecognized family shorthand {text!r}")


def format_spec(spec: FamilySpec) -> str:
    kind, p = spec.kind, spec.params
    if kind == "complete":
        return f"K{p[0]}"
    if kind == "circulant":
        return f"C{p[0]}({p[1][0]},{p[1][1]})" if len(p[1]) == 2 else f"C{p[0]}{p[1]}"
    if kind == "wreath":
        return f"W({p[0]},2)"
    if kind == "rose_window":
        return f"R{p[0]}({p[1]},{p[2]})"
    if kind == "px":
        return f"PX({p[0]},{p[1]})"
    if kind == "torus44":
        variant, b, c = p
        brackets = {"std": "{{{},{}}}", "bracket": "[{},{}]", "angle": "<{},{}>"}
        return "T44" + brackets[variant].format(b, c)
    if kind == "doubled_cycle":
        return f"DC{p[0]}"
    if kind == "dipole":
        return f"DIP{p[0]}"
    if kind == "cycle_product":
        return f"C{p[0]}xC{p[1]}"
    if kind == "line_graph":
        return f"L({format_spec(p[0])})"
    if kind == "petersen":
        return "Petersen"
    if kind == "heawood":
        return "Heawood"
    if kind == "dw":
        return f"DW({p[0]},3)"
    raise InvalidParameter(f"unknown family kind {kind!r}")


@dataclass(frozen=True)
class WreathLabels:
    """Edge labels a_i, b_i, c_i, d_i of W(n,2) plus its standard generators.

    The generator perms act on vertices+edges of ``make_family(wreath(n))``:
    ``rho`` shifts (i,j) to (i+1,j), ``mu`` maps (i,j) to (-i,j), and
    ``tau(i)`` swaps (i,0) with (i,1).
    """

    n: int
    a: tuple[int, ...]
    b: tuple[int, ...]
    c: tuple[int, ...]
    d: tuple[int, ...]

    def rung(self, i: int) -> tuple[int, int, int, int]:
        i %= self.n
        return (self.a[i], self.b[i], self.c[i], self.d[i])


def wreath_labels(n: int) -> WreathLabels:
    return WreathLabels(
        n=n,
        a=tuple(4 * i for i in range(n)),
        b=tuple(4 * i + 1 for i in range(n)),
        c=tuple(4 * i + 2 for i in range(n)),
        d=tuple(4 * i + 3 for i in range(n)),
    )


def wreath_generators(n: int) -> dict[str, Perm]:
    """The combined vertex+edge actions of rho, mu and every tau_i."""
    g = make_family(wreath(n))
    vertex = lambda i, j: 2 * (i % n) + j
    rho_v = Perm([vertex(i + 1, j) for i in range(n) for j in range(2)])
    mu_v = Perm([vertex(-i, j) for i in range(n) for j in range(2)])
    gens = {
        "rho": g.combined_perm(rho_v),
        "mu": g.combined_perm(mu_v),
    }
    for k in range(n):
        images = list(range(2 * n))
        images[vertex(k, 0)], images[vertex(k, 1)] = vertex(k, 1), vertex(k, 0)
        gens[f"tau{k}"] = g.combined_perm(Perm(images))
    return gens
