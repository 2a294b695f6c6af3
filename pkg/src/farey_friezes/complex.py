"""Farey complexes over finite rings.

A vertex is a U-orbit of unimodular pairs ``(a, b)``, stored as the
lexicographically least pair in the orbit. There is a directed edge
``a/b -> c/d`` when ``ad - bc`` lies in U. When ``-1`` is in U the graph is
undirected and its faces are the images of the mutually adjacent triples of
the ``U = {+1, -1}`` complex.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional

from .errors import (
    DisconnectedComplex,
    FacesUndefined,
    InvalidDescriptor,
    NotAnEdge,
    RingTooLarge,
    UnsupportedFormat,
)
from .ring import (
    Payload,
    Ring,
    UnitSubgroup,
    ZMod,
    _split_top_level,
    plus_minus_units,
    trivial_units,
    parse_units,
)

Pair = tuple  # (a, b) of ring payloads
DEFAULT_MAX_VERTICES = 10**6


# pairs and labels -----------------------------------------------------------------


def scale(ring: Ring, lam: Payload, pair: Pair) -> Pair:
    return ring.mul(lam, pair[0]), ring.mul(lam, pair[1])


def pair_det(ring: Ring, u: Pair, v: Pair) -> Payload:
    """``ad - bc`` for ``u = (a, b)`` and ``v = (c, d)``."""
    return ring.det2(u[0], u[1], v[0], v[1])


def canonical(ring: Ring, units: Iterable[Payload], pair: Pair) -> Pair:
    """Least element of the orbit ``U * pair``.

    Over the integers the representative with positive denominator (or positive
    numerator when the denominator is 0) is used instead, to match ``a/b`` fractions.
    """
    if not ring.is_finite:
        return max((scale(ring, lam, pair) for lam in units), key=lambda p: (p[1], p[0]))
    return min(scale(ring, lam, pair) for lam in units)


def format_pair(ring: Ring, pair: Pair) -> str:
    return f"{ring.format(pair[0])}/{ring.format(pair[1])}"


def parse_pair(ring: Ring, text: str) -> Pair:
    parts = _split_top_level(text.strip(), "/")
    if len(parts) != 2:
        raise InvalidDescriptor(f"expected a fraction a/b, got {text!r}")
    return ring.parse(parts[0]), ring.parse(parts[1])


def parse_pairs(ring: Ring, text: str) -> list:
    """Comma-separated fractions, e.g. ``'2/0,2/3,1/2'``."""
    return [parse_pair(ring, tok) for tok in _split_top_level(text) if tok.strip()]


# SL2 matrices -------------------------------------------------------------------


@dataclass(frozen=True)
class SL2Matrix:
    """``(a b; c d)`` with ``ad - bc = 1``. Acts on column vectors."""

    ring: Ring
    a: Payload
    b: Payload
    c: Payload
    d: Payload

    def __post_init__(self) -> None:
        if self.ring.det2(self.a, self.b, self.c, self.d) != self.ring.one:
            raise InvalidDescriptor("matrix does not have determinant 1")

    @classmethod
    def identity(cls, ring: Ring) -> "SL2Matrix":
        return cls(ring, ring.one, ring.zero, ring.zero, ring.one)

    @classmethod
    def from_columns(cls, ring: Ring, first: Pair, second: Pair) -> "SL2Matrix":
        return cls(ring, first[0], second[0], first[1], second[1])

    def apply(self, pair: Pair) -> Pair:
        R, (x, y) = self.ring, pair
        return (R.add(R.mul(self.a, x), R.mul(self.b, y)),
                R.add(R.mul(self.c, x), R.mul(self.d, y)))

    def __matmul__(self, other: "SL2Matrix") -> "SL2Matrix":
        R = self.ring
        return SL2Matrix(
            R,
            R.add(R.mul(self.a, other.a), R.mul(self.b, other.c)),
            R.add(R.mul(self.a, other.b), R.mul(self.b, other.d)),
            R.add(R.mul(self.c, other.a), R.mul(self.d, other.c)),
            R.add(R.mul(self.c, other.b), R.mul(self.d, other.d)),
        )

    def inverse(self) -> "SL2Matrix":
        R = self.ring
        return SL2Matrix(R, self.d, R.neg(self.b), R.neg(self.c), self.a)

    def entries(self) -> tuple:
        return self.a, self.b, self.c, self.d

    def __str__(self) -> str:
        f = self.ring.format
        return f"({f(self.a)} {f(self.b)}; {f(self.c)} {f(self.d)})"


def edge_matrix(ring: Ring, u: Pair, v: Pair) -> SL2Matrix:
    """Matrix sending ``(1,0) -> lam^-1 u`` and ``(0,1) -> v`` where ``lam = det(u, v)``."""
    lam = pair_det(ring, u, v)
    if not ring.is_unit(lam):
        raise NotAnEdge(f"{format_pair(ring, u)} and {format_pair(ring, v)} are not adjacent")
    inv = ring.inverse(lam)
    return SL2Matrix.from_columns(ring, scale(ring, inv, u), v)


def edge_transporter(ring: Ring, e1: tuple, e2: tuple) -> SL2Matrix:
    """A matrix taking the directed edge ``e1`` onto ``e2`` (pairs of pairs)."""
    return edge_matrix(ring, *e2) @ edge_matrix(ring, *e1).inverse()


def out_neighbour_pairs(ring: Ring, pair: Pair) -> list:
    """All ``(c, d)`` with ``ad - bc = 1``; there are exactly ``|R|`` of them."""
    witness = ring.unimodular_witness(*pair)
    if witness is None:
        raise InvalidDescriptor(f"{format_pair(ring, pair)} is not unimodular")
    x, y = witness
    a, b = pair
    c0, d0 = ring.neg(y), x  # a*x + b*y = 1 gives a*d0 - b*c0 = 1
    return [(ring.add(c0, ring.mul(t, a)), ring.add(d0, ring.mul(t, b)))
            for t in ring.elements()]


# the complex ---------------------------------------------------------------------


@dataclass
class FareyComplex:
    ring: Ring
    units: UnitSubgroup
    vertices: tuple
    out_neighbours: tuple
    faces: tuple = ()
    index: dict = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        if not self.index:
            self.index = {v: i for i, v in enumerate(self.vertices)}

    @property
    def is_undirected(self) -> bool:
        return self.units.has_minus_one

    @property
    def has_faces(self) -> bool:
        return self.is_undirected

    def __len__(self) -> int:
        return len(self.vertices)

    # vertices
    def canonical(self, pair: Pair) -> Pair:
        return canonical(self.ring, self.units, pair)

    covering_map = canonical

    def vertex_index(self, pair: Pair) -> int:
        return self.index[self.canonical(pair)]

    def label(self, v: Pair) -> str:
        return format_pair(self.ring, v)

    def parse_vertex(self, text: str) -> Pair:
        pair = parse_pair(self.ring, text)
        if not self.ring.is_unimodular(*pair):
            raise InvalidDescriptor(f"{text} is not a unimodular pair")
        return self.canonical(pair)

    # edges
    def has_edge(self, u: Pair, v: Pair) -> bool:
        return pair_det(self.ring, u, v) in self.units

    def edges(self) -> list:
        return [(i, j) for i, nbrs in enumerate(self.out_neighbours) for j in nbrs]

    def undirected_edges(self) -> list:
        return [(i, j) for i, j in self.edges() if i < j]

    @cached_property
    def neighbour_sets(self) -> tuple:
        return tuple(frozenset(n) for n in self.out_neighbours)

    @cached_property
    def face_set(self) -> frozenset:
        return frozenset(self.faces)

    def is_face(self, i: int, j: int, k: int) -> bool:
        return tuple(sorted((i, j, k))) in self.face_set

    def apply_matrix(self, A: SL2Matrix, v: Pair) -> Pair:
        return self.canonical(A.apply(v))


def unimodular_pairs(ring: Ring) -> list:
    ring.require_finite("building a Farey complex")
    elems = ring.elements()
    return [(a, b) for a in elems for b in elems if ring.is_unimodular(a, b)]


def build_complex(ring: Ring, units=None, max_vertices: Optional[int] = None) -> FareyComplex:
    """The Farey complex of ``ring`` with unit group ``units`` (default ``{1}``)."""
    ring.require_finite("building a Farey complex")
    U = trivial_units(ring) if units is None else parse_units(ring, units)
    cap = DEFAULT_MAX_VERTICES if max_vertices is None else max_vertices
    if ring.order ** 2 > 64 * cap * len(U):
        raise RingTooLarge(f"{ring.name} is too large for a vertex cap of {cap}")
    verts = set()
    for pair in unimodular_pairs(ring):
        verts.add(canonical(ring, U, pair))
        if len(verts) > cap:
            raise RingTooLarge(f"more than {cap} vertices")
    vertices = tuple(sorted(verts))
    index = {v: i for i, v in enumerate(vertices)}
    out = []
    for v in vertices:
        nbrs = {index[canonical(ring, U, w)] for w in out_neighbour_pairs(ring, v)}
        out.append(tuple(sorted(nbrs)))
    cx = FareyComplex(ring, U, vertices, tuple(out), (), index)
    if U.has_minus_one:
        cx.faces = _faces(cx)
    return cx


def _triangles(cx: FareyComplex) -> list:
    nb = cx.neighbour_sets
    tris = []
    for u in range(len(cx)):
        for v in cx.out_neighbours[u]:
            if v <= u:
                continue
            for w in sorted(nb[u] & nb[v]):
                if w > v:
                    tris.append((u, v, w))
    return tris


def _faces(cx: FareyComplex) -> tuple:
    pm = plus_minus_units(cx.ring)
    if cx.units.elements == pm.elements:
        return tuple(_triangles(cx))
    base = build_complex(cx.ring, pm)
    faces = set()
    for tri in _triangles(base):
        image = tuple(sorted(cx.vertex_index(base.vertices[t]) for t in tri))
        faces.add(image)
    return tuple(sorted(faces))


# metric and topology ----------------------------------------------------------------


def eccentricity(cx: FareyComplex, source: int) -> int:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in cx.out_neighbours[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    if len(dist) != len(cx):
        raise DisconnectedComplex(f"vertex {cx.label(cx.vertices[source])} does not reach every vertex")
    return max(dist.values())


def diameter(cx: FareyComplex) -> int:
    """Largest directed distance between two vertices (BFS from every vertex)."""
    return max(eccentricity(cx, s) for s in range(len(cx)))


@dataclass(frozen=True)
class SurfaceReport:
    is_surface: bool
    axiom: Optional[int] = None  # 1: edge/face incidence, 2: connected links
    witness: tuple = ()
    detail: str = ""

    def __bool__(self) -> bool:
        return self.is_surface


def is_surface_complex(cx: FareyComplex) -> SurfaceReport:
    """Check that every edge lies in one or two faces and every vertex link is connected.

    The link condition is the requirement that any two neighbours of ``w``
    are joined by a chain of distinct neighbours, consecutive ones spanning
    a face with ``w``.
    """
    if not cx.has_faces:
        raise FacesUndefined("faces need -1 in the unit group")
    incidence: dict = {}
    for f in cx.faces:
        for e in ((f[0], f[1]), (f[0], f[2]), (f[1], f[2])):
            incidence[e] = incidence.get(e, 0) + 1
    for e in cx.undirected_edges():
        k = incidence.get(e, 0)
        if k not in (1, 2):
            u, v = (cx.label(cx.vertices[i]) for i in e)
            return SurfaceReport(False, 1, (u, v), f"edge {u} -- {v} lies in {k} faces")
    link: dict = {}
    for f in cx.faces:
        for w, x, y in ((f[0], f[1], f[2]), (f[1], f[0], f[2]), (f[2], f[0], f[1])):
            link.setdefault(w, {}).setdefault(x, set()).add(y)
            link[w].setdefault(y, set()).add(x)
    for w in range(len(cx)):
        nbrs = sorted(cx.out_neighbours[w])
        graph = link.get(w, {})
        start = nbrs[0]
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in graph.get(x, ()):
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        missing = [x for x in nbrs if x not in seen]
        if missing:
            lw, lu, lv = (cx.label(cx.vertices[i]) for i in (w, start, missing[0]))
            return SurfaceReport(
                False, 2, (lw, lu, lv),
                f"neighbours {lu} and {lv} of {lw} are not joined through faces at {lw}",
            )
    return SurfaceReport(True)


def prime_factors(n: int) -> list:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def genus_and_cusps(N: int) -> tuple[int, int]:
    """Genus and cusp count of the modular curve of level ``N``."""
    if N < 2:
        raise ValueError("level must be at least 2")
    if N == 2:
        return 0, 3
    density = Fraction(1)
    for p in prime_factors(N):
        density *= 1 - Fraction(1, p * p)
    cusps = Fraction(N * N, 2) * density
    genus = 1 + Fraction(N * N * (N - 6), 24) * density
    assert cusps.denominator == 1 and genus.denominator == 1
    return int(genus), int(cusps)


def euler_characteristic(cx: FareyComplex) -> int:
    if not cx.has_faces:
        raise FacesUndefined("faces need -1 in the unit group")
    return len(cx) - len(cx.undirected_edges()) + len(cx.faces)


# export ------------------------------------------------------------------------------


def complex_to_dict(cx: FareyComplex) -> dict:
    edges = cx.undirected_edges() if cx.is_undirected else cx.edges()
    return {
        "ring": cx.ring.descriptor(),
        "units": cx.units.labels(),
        "vertices": [cx.label(v) for v in cx.vertices],
        "edges": [list(e) for e in edges],
        "faces": [list(f) for f in cx.faces],
    }


def export_complex(cx: FareyComplex, fmt: str) -> str:
    """Serialise as ``json``, ``dot`` or ``off`` text (newline terminated)."""
    if fmt == "json":
        return json.dumps(complex_to_dict(cx)) + "\n"
    if fmt == "dot":
        labels = [cx.label(v) for v in cx.vertices]
        if cx.is_undirected:
            head, arrow, edges = "graph", "--", cx.undirected_edges()
        else:
            head, arrow, edges = "digraph", "->", cx.edges()
        lines = [f"{head} farey {{"]
        lines += [f'  "{lab}";' for lab in labels]
        lines += [f'  "{labels[i]}" {arrow} "{labels[j]}";' for i, j in edges]
        lines.append("}")
        return "\n".join(lines) + "\n"
    if fmt == "off":
        if not cx.has_faces:
            raise FacesUndefined("OFF export needs faces, which need -1 in the unit group")
        report = is_surface_complex(cx)
        if not report:
            raise UnsupportedFormat(f"OFF export needs a surface complex: {report.detail}")
        lines = ["OFF", f"# vertices: {' '.join(cx.label(v) for v in cx.vertices)}"]
        lines.append(f"{len(cx)} {len(cx.faces)} {len(cx.undirected_edges())}")
        # purely combinatorial: no embedding is computed
        lines += ["0 0 0"] * len(cx)
        lines += [f"3 {i} {j} {k}" for i, j, k in cx.faces]
        return "\n".join(lines) + "\n"
    raise UnsupportedFormat(f"unknown complex format {fmt!r}")


def farey_complex_mod(N: int, units="pm1") -> FareyComplex:
    """Shortcut for the complex of Z/N."""
    return build_complex(ZMod(N), units)
