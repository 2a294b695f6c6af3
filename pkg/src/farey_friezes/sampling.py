"""Seeded random objects for property checks and experiments."""
from __future__ import annotations

import random
from typing import Optional

from .complex import SL2Matrix, pair_det, scale
from .paths import Path, TwistedPath, lifted_path, path_from_itinerary, standard_edge
from .ring import Ring


def random_sl2(ring: Ring, rng: random.Random) -> SL2Matrix:
    """Uniform-ish element of SL2 via a random unimodular first column."""
    elems = ring.elements()
    while True:
        a, c = rng.choice(elems), rng.choice(elems)
        w = ring.unimodular_witness(a, c)
        if w is None:
            continue
        x, y = w  # a x + c y = 1, so (a, -y; c, x) has determinant 1
        t = rng.choice(elems)
        b, d = ring.sub(ring.mul(t, a), y), ring.add(ring.mul(t, c), x)
        return SL2Matrix(ring, a, b, c, d)


def random_lifted_path(ring: Ring, length: int, rng: random.Random) -> Path:
    """Random walk of the given length in the complex with trivial unit group."""
    elems = ring.elements()
    entries = [rng.choice(elems) for _ in range(max(length - 1, 0))]
    base = path_from_itinerary(ring, standard_edge(ring), entries)
    A = random_sl2(ring, rng)
    verts = [A.apply(v) for v in base.vertices[: length + 1]]
    return lifted_path(ring, verts)


def random_twisted_path(ring: Ring, n: int, rng: random.Random,
                        attempts: int = 10_000) -> Optional[TwistedPath]:
    """Random length-``n`` path whose last vertex is a unit multiple of the first."""
    for _ in range(attempts):
        head = random_lifted_path(ring, n - 1, rng)
        first, last = head.vertices[0], head.vertices[-1]
        d = pair_det(ring, last, first)
        if not ring.is_unit(d):
            continue
        lam = ring.inverse(d)
        return TwistedPath(lifted_path(ring, head.vertices + (scale(ring, lam, first),)), lam)
    return None
