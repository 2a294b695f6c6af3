"""Paths in Farey complexes, twisted paths and itineraries.

Vertices are orbit-canonical pairs (see :mod:`farey_friezes.complex`), so a
path never needs the whole complex to be built. This keeps paths over the
integers usable.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .complex import Pair, SL2Matrix, canonical, format_pair, pair_det, parse_pairs, scale
from .errors import (
    InvalidDescriptor,
    InvalidInitialLift,
    NotAPath,
    NotEquivalentEndpoints,
    PathTooShort,
)
from .ring import Payload, Ring, UnitSubgroup, trivial_units, parse_units


@dataclass(frozen=True)
class Path:
    """``v_0 -> v_1 -> ... -> v_n`` with ``det(v_{i-1}, v_i)`` in U at every step."""

    ring: Ring
    units: UnitSubgroup
    vertices: tuple

    def __post_init__(self) -> None:
        R, U = self.ring, self.units
        verts = tuple(canonical(R, U, (R.coerce(a), R.coerce(b))) for a, b in self.vertices)
        if not verts:
            raise NotAPath("a path needs at least one vertex")
        for v in verts:
            if not R.is_unimodular(*v):
                raise NotAPath(f"{format_pair(R, v)} is not a unimodular pair")
        for i in range(1, len(verts)):
            if pair_det(R, verts[i - 1], verts[i]) not in U:
                raise NotAPath(
                    f"no edge {format_pair(R, verts[i - 1])} -> {format_pair(R, verts[i])}"
                )
        object.__setattr__(self, "vertices", verts)

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    def __len__(self) -> int:
        return len(self.vertices)

    def __getitem__(self, i: int) -> Pair:
        return self.vertices[i]

    @property
    def is_lifted(self) -> bool:
        """True for paths in the complex with trivial unit group."""
        return len(self.units) == 1

    @property
    def is_closed(self) -> bool:
        return self.vertices[0] == self.vertices[-1]

    def labels(self) -> list:
        return [format_pair(self.ring, v) for v in self.vertices]

    def project(self, units) -> "Path":
        """Image under the covering map onto the complex with unit group ``units``."""
        return Path(self.ring, parse_units(self.ring, units), self.vertices)

    def transform(self, A: SL2Matrix) -> "Path":
        return Path(self.ring, self.units, tuple(A.apply(v) for v in self.vertices))

    def to_dict(self, twist: Optional[Payload] = None) -> dict:
        return {
            "ring": self.ring.descriptor(),
            "units": self.units.labels(),
            "vertices": self.labels(),
            "twist": None if twist is None else self.ring.format(twist),
        }

    def __str__(self) -> str:
        return " -> ".join(self.labels())


def lifted_path(ring: Ring, pairs: Iterable[Pair]) -> Path:
    """Path in the complex with ``U = {1}``."""
    return Path(ring, trivial_units(ring), tuple(pairs))


def make_path(ring: Ring, pairs: Iterable[Pair], units="pm1") -> Path:
    return Path(ring, parse_units(ring, units), tuple(pairs))


def parse_path(ring: Ring, text: str, units="pm1") -> Path:
    """Read ``'2/0,2/3,1/2'`` style text."""
    return make_path(ring, parse_pairs(ring, text), units)


# itineraries ------------------------------------------------------------------------


def itinerary_entry(ring: Ring, before: Pair, after: Pair) -> Payload:
    """``a_{i-1} b_{i+1} - b_{i-1} a_{i+1}``."""
    return pair_det(ring, before, after)


def itinerary(path: Path) -> tuple:
    """Entries ``e_1 .. e_{n-1}`` of a lifted path of length ``n >= 2``."""
    if not path.is_lifted:
        raise InvalidDescriptor("itineraries are computed on lifted paths; lift the path first")
    if path.length < 2:
        raise PathTooShort("an itinerary needs a path of length at least 2")
    v = path.vertices
    return tuple(itinerary_entry(path.ring, v[i - 1], v[i + 1]) for i in range(1, path.length))


def step(ring: Ring, prev: Pair, cur: Pair, e: Payload) -> Pair:
    """Next vertex of the three-term recurrence ``v_{i+1} = e_i v_i - v_{i-1}``."""
    return (ring.sub(ring.mul(e, cur[0]), prev[0]), ring.sub(ring.mul(e, cur[1]), prev[1]))


def path_from_itinerary(ring: Ring, start_edge: tuple, entries: Sequence[Payload]) -> Path:
    """The lifted path starting with ``start_edge`` whose itinerary is ``entries``."""
    u, v = start_edge
    if pair_det(ring, u, v) != ring.one:
        raise NotAPath("the start edge must have determinant 1")
    verts = [u, v]
    for e in entries:
        verts.append(step(ring, verts[-2], verts[-1], ring.coerce(e)))
    return lifted_path(ring, verts)


def standard_edge(ring: Ring) -> tuple:
    return (ring.one, ring.zero), (ring.zero, ring.one)


# lifting along the covering map ------------------------------------------------------------


def lift_path(path: Path, lift_of_v0: Optional[Pair] = None) -> Path:
    """Lift to the ``U = {1}`` complex with every edge determinant equal to 1.

    Lifts starting from ``mu * lift_of_v0`` are ``mu^((-1)^i)`` times this one.
    """
    R = path.ring
    start = path.vertices[0] if lift_of_v0 is None else (R.coerce(lift_of_v0[0]), R.coerce(lift_of_v0[1]))
    if canonical(R, path.units, start) != path.vertices[0]:
        raise InvalidInitialLift(
            f"{format_pair(R, start)} does not lie over {format_pair(R, path.vertices[0])}"
        )
    verts = [start]
    for w in path.vertices[1:]:
        mu = pair_det(R, verts[-1], w)
        verts.append(scale(R, R.inverse(mu), w))
    return lifted_path(R, verts)


def all_lifts(path: Path) -> list:
    """Every lift of ``path`` (one per unit in U)."""
    v0 = path.vertices[0]
    return [lift_path(path, scale(path.ring, mu, v0)) for mu in path.units]


# twisted paths ------------------------------------------------------------------------


@dataclass(frozen=True)
class TwistedPath:
    """A lifted path of length ``n`` with ``v_n = twist * v_0``.

    It stands for the bi-infinite path with ``v_{i+n} = twist^((-1)^i) v_i``.
    """

    base: Path
    twist: Payload

    def __post_init__(self) -> None:
        R, v = self.base.ring, self.base.vertices
        if not self.base.is_lifted:
            raise InvalidDescriptor("twisted paths are stored lifted")
        if self.base.length < 1:
            raise PathTooShort("a twisted path needs length at least 1")
        if not R.is_unit(self.twist) or scale(R, self.twist, v[0]) != v[-1]:
            raise NotEquivalentEndpoints("final vertex is not twist times the initial vertex")

    @property
    def ring(self) -> Ring:
        return self.base.ring

    @property
    def n(self) -> int:
        return self.base.length

    @property
    def is_closed(self) -> bool:
        """Closed in the complex with ``U = {+1, -1}``."""
        R = self.ring
        return self.twist in (R.one, R.neg(R.one))

    @property
    def is_semiclosed(self) -> bool:
        return self.twist == self.ring.neg(self.ring.one)

    def vertex(self, k: int) -> Pair:
        R, n, lam = self.ring, self.n, self.twist
        factor = R.one
        # v_{i+n} = lam^((-1)^i) v_i, read in both directions
        while k > n:
            i = k - n
            factor = R.mul(factor, lam if i % 2 == 0 else R.inverse(lam))
            k = i
        while k < 0:
            factor = R.mul(factor, R.inverse(lam) if k % 2 == 0 else lam)
            k += n
        return scale(R, factor, self.base.vertices[k])

    def cyclic_itinerary(self) -> tuple:
        """All ``n`` entries ``e_0 .. e_{n-1}`` of the bi-infinite path."""
        return tuple(
            itinerary_entry(self.ring, self.vertex(i - 1), self.vertex(i + 1)) for i in range(self.n)
        )

    def period(self) -> int:
        """Least ``p > 0`` with ``v_{i+p} = v_i`` for all ``i``."""
        R, n = self.ring, self.n
        sq = R.mul(self.twist, self.twist)
        # v_{i+2n} = v_i for odd n; for even n the shift by 2n multiplies by lam^(+-2)
        bound = 2 * n * (1 if n % 2 else R.multiplicative_order(sq))
        for p in range(1, bound + 1):
            if bound % p == 0 and all(self.vertex(i + p) == self.vertex(i) for i in range(2 * n)):
                return p
        return bound

    def to_dict(self) -> dict:
        return self.base.to_dict(self.twist)


def twist_of(path: Path) -> Payload:
    """``lam`` with ``v_n = lam * v_0`` for the lift of ``path`` from its first vertex."""
    lifted = path if path.is_lifted else lift_path(path)
    R = path.ring
    v0, vn = lifted.vertices[0], lifted.vertices[-1]
    x, y = R.unimodular_witness(*v0)
    lam = R.add(R.mul(vn[0], x), R.mul(vn[1], y))
    if not R.is_unit(lam) or scale(R, lam, v0) != vn:
        raise NotEquivalentEndpoints(
            f"{format_pair(R, vn)} is not a unit multiple of {format_pair(R, v0)}"
        )
    return lam


def make_twisted(path: Path) -> TwistedPath:
    """Twisted path from a path whose endpoints differ by a unit.

    Paths with a nontrivial unit group are lifted first from their first vertex.
    """
    lifted = path if path.is_lifted else lift_path(path)
    return TwistedPath(lifted, twist_of(lifted))


def unfold(twisted: TwistedPath, i_min: int, i_max: int) -> Path:
    """Vertices ``v_{i_min} .. v_{i_max}`` of the bi-infinite path."""
    if i_min > i_max:
        raise ValueError("empty window")
    return lifted_path(twisted.ring, [twisted.vertex(k) for k in range(i_min, i_max + 1)])


def path_to_json(path: Path, twist: Optional[Payload] = None) -> str:
    return json.dumps(path.to_dict(twist))
