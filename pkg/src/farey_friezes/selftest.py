"""Built-in acceptance checks, runnable via ``farey selftest``.

Each check returns ``(passed, detail)``. Expected values are fixed here and
never recomputed from the functions under test.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass
from typing import Callable

from .complex import build_complex, diameter, genus_and_cusps, is_surface_complex
from .errors import FareyError
from .frieze import (
    count_brute_force,
    count_formula,
    det3,
    extend_frieze,
    extension_entry,
    frieze_from_path,
    realize_quiddity,
    render_diamond,
    semiregular_friezes,
    tiling_from_paths,
    tiling_recurrences,
)
from .lifting import (
    CongruenceData,
    frieze_path_in_complex,
    is_strongly_contractible,
    lift_frieze,
    lift_tiling_positive,
)
from .paths import itinerary, lifted_path, make_path, make_twisted, path_from_itinerary
from .ring import IntegerRing, ZMod, galois_field, parse_ring
from .sampling import random_twisted_path

SEED = 20240601

# (shorthand, diameter of the U = {1} complex, diameter of the U = {+1, -1} complex
# predicted by the classification over products of Z/2, Z/3 and Z/4)
DIAMETER_TABLE = [
    ("z2", 1, 1), ("z3", 2, 1), ("z4", 2, 2), ("z5", 3, 3), ("z6", 3, 2), ("z7", 3, 3),
    ("z8", 3, 3), ("z9", 3, 3), ("z10", 3, 3), ("z11", 3, 3), ("z12", 3, 2), ("z13", 3, 3),
    ("z14", 3, 3), ("z15", 3, 3), ("z16", 3, 3), ("gf4", 3, 3), ("gf8", 3, 3), ("gf9", 3, 3),
    ("z2xz3", 3, 2), ("z3xz3", 3, 2), ("z4xz2", 3, 2),
    ("z2xz2", 2, 2), ("z2xz2xz2", 2, 2), ("z2xz2xz2xz2", 2, 2),
]

SURFACE_TABLE = [(f"z{N}", True) for N in range(2, 13)] + [
    ("gf4", False), ("z2xz2", False), ("z2xz3", False),
]

TWISTED_Z5_DIAMOND = (
    "                              4\n"
    "0   0   0   0   0   0   0   0   0   0\n"
    "  1   1   1   1   1   1   1   1   1\n"
    "4   1   3   3   1   4   2   2   4   1\n"
    "  3   2   3   2   3   2   3   2   3\n"
    "0   0   0   0   0   0   0   0   0   0\n"
)

Z5_TILING_ROWS = ("2 0 3 1 4 2 0 3 1 4 2", "1 3 0 2 4 1 3 0 2 4 1", "2 2 2 2 2 2 2 2 2 2 2")
Z5_TILING_GRID = "".join(Z5_TILING_ROWS[r % 3] + "\n" for r in range(11))

INTEGER_FRIEZE_DIAMOND = (
    "0   0   0   0   0   0   0   0   0   0\n"
    "  1   1   1   1   1   1   1   1   1\n"
    "1   3   1   2   2   1   3   1   2   2\n"
    "  2   2   1   3   1   2   2   1   3\n"
    "1   1   1   1   1   1   1   1   1   1\n"
    "  0   0   0   0   0   0   0   0   0\n"
)

INTEGER_TILING_GRID = (
    " 0 -1 -1 -2 -1  0  1  1  2  1  0 -1\n"
    " 1  0 -1 -3 -2 -1  0  1  3  2  1  0\n"
    " 1  1  0 -1 -1 -1 -1  0  1  1  1  1\n"
    " 2  3  1  0 -1 -2 -3 -1  0  1  2  3\n"
    " 1  2  1  1  0 -1 -2 -1 -1  0  1  2\n"
    " 0  1  1  2  1  0 -1 -1 -2 -1  0  1\n"
    "-1  0  1  3  2  1  0 -1 -3 -2 -1  0\n"
    "-1 -1  0  1  1  1  1  0 -1 -1 -1 -1\n"
    "-2 -3 -1  0  1  2  3  1  0 -1 -2 -3\n"
    "-1 -2 -1 -1  0  1  2  1  1  0 -1 -2\n"
    " 0 -1 -1 -2 -1  0  1  1  2  1  0 -1\n"
    " 1  0 -1 -3 -2 -1  0  1  3  2  1  0\n"
)

TORUS_GAMMA = [(3, 2), (1, 1), (1, 0), (2, 1), (3, 1), (1, 4), (1, 3), (3, 2)]
TORUS_DELTA = [(1, 0), (0, 1), (1, 4), (2, 3), (3, 2), (4, 1), (1, 0)]
HANDLE_PATH = [(2, 3), (1, 1), (2, 1), (3, 1), (2, 3)]
TWISTED_Z5_PATH = [(2, 0), (2, 3), (1, 2), (0, 1), (4, 0)]


@dataclass(frozen=True)
class CheckResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} criterion {self.number}: {self.title} ({self.seconds:.2f}s) {self.detail}".rstrip()


def _mismatches(rows) -> str:
    return "; ".join(f"{name}: got {got}, expected {want}" for name, got, want in rows)


def check_e_diameters():
    bad = []
    for name, want, _ in DIAMETER_TABLE:
        got = diameter(build_complex(parse_ring(name), "one"))
        if got != want:
            bad.append((name, got, want))
    return not bad, _mismatches(bad)


def check_f_diameters():
    bad = []
    for name, _, want in DIAMETER_TABLE:
        got = diameter(build_complex(parse_ring(name), "pm1"))
        if got != want:
            bad.append((name, got, want))
    return not bad, _mismatches(bad)


def check_surfaces():
    bad = []
    for name, want in SURFACE_TABLE:
        got = is_surface_complex(build_complex(parse_ring(name), "pm1")).is_surface
        if got != want:
            bad.append((name, got, want))
    return not bad, _mismatches(bad)


def check_cusps():
    bad = []
    for N in range(2, 13):
        cusps = genus_and_cusps(N)[1]
        verts = len(build_complex(ZMod(N), "pm1"))
        if cusps != verts:
            bad.append((f"N={N}", cusps, verts))
    fixed = {2: 3, 5: 12}
    bad += [(f"N={N}", genus_and_cusps(N)[1], v) for N, v in fixed.items() if genus_and_cusps(N)[1] != v]
    return not bad, _mismatches(bad)


def _count_check(kind: str, expected: Callable[[int, int, int], int]):
    bad = []
    for q in (2, 3, 4, 5):
        F = galois_field(q)
        for n in range(2, 7):
            got, want = count_brute_force(F, n, kind), expected(q, n, F.characteristic)
            if got != want:
                bad.append((f"q={q} n={n}", got, want))
    return not bad, _mismatches(bad)


def check_all_counts():
    return _count_check("all", lambda q, n, c: (q - 1) * (q ** (n - 1) + (-1) ** n) // (q + 1))


def check_regular_counts():
    return _count_check("regular", lambda q, n, c: count_formula(q, n, "regular", c))


def reference_grids() -> dict:
    """Reference frieze and tiling renderings keyed by panel letter."""
    R5, ZZ = ZMod(5), IntegerRing()
    twisted = frieze_from_path(make_twisted(lifted_path(R5, TWISTED_Z5_PATH)))
    show_twisted = lambda i, j: 0 <= i - j <= 4 or (i, j) == (11, 12)
    gamma = make_twisted(lifted_path(R5, [(1, 0), (1, 1), (3, 4), (1, 0)]))
    delta = make_twisted(lifted_path(R5, [(1, 2), (3, 2), (0, 2), (2, 2), (4, 2), (1, 2)]))
    integer_frieze = realize_quiddity((1, 3, 1, 2, 2), ZZ)
    return {
        "a": render_diamond(R5, lambda i, j: extension_entry(twisted, i, j), range(-1, 5), 8, 26, show_twisted),
        "b": tiling_from_paths(gamma, delta, 1, 11, 2, 12).render(),
        "c": integer_frieze.render(2, 20) if integer_frieze.n == 5 else f"width {integer_frieze.n}",
        "d": extend_frieze(integer_frieze, 0, 11, 0, 11).render(),
    }


def check_reference_grids():
    got = reference_grids()
    want = {"a": TWISTED_Z5_DIAMOND, "b": Z5_TILING_GRID, "c": INTEGER_FRIEZE_DIAMOND, "d": INTEGER_TILING_GRID}
    bad = [k for k in "abcd" if got[k] != want[k]]
    return not bad, "" if not bad else "mismatched grids: " + ",".join(bad)


def check_lifting():
    notes = []
    R6, R5 = ZMod(6), ZMod(5)
    handle = frieze_from_path(make_twisted(make_path(R6, HANDLE_PATH)))
    if lift_frieze(handle):
        notes.append("handle frieze lifted")
    twisted = frieze_from_path(make_twisted(lifted_path(R5, TWISTED_Z5_PATH)))
    if lift_frieze(twisted):
        notes.append("Z/5 frieze lifted")
    for N in (2, 3):
        for n in range(2, 6):
            for f in semiregular_friezes(ZMod(N), n):
                lifted = lift_frieze(f)
                if not lifted or CongruenceData(N).Theta(lifted) != f:
                    notes.append(f"Z/{N} width {n} frieze failed to lift")
    for n in range(2, 6):
        for f in semiregular_friezes(ZMod(4), n):
            tp, fpath = frieze_path_in_complex(f)
            independent = tp.is_closed and bool(is_strongly_contractible(fpath))
            if bool(lift_frieze(f)) != independent:
                notes.append(f"Z/4 width {n} disagreement")
    return not notes, "; ".join(notes)


def _sample_pairs(count: int, rng: random.Random):
    for t in range(count):
        N = (3, 5, 7)[t % 3]
        R = ZMod(N)
        yield N, random_twisted_path(R, rng.randint(3, 6), rng), random_twisted_path(R, rng.randint(3, 6), rng)


def check_positive_lifts():
    rng, bad = random.Random(SEED), []
    for N, gamma, delta in _sample_pairs(25, rng):
        i0, j0 = rng.randint(-5, 5), rng.randint(-5, 5)
        lifted = lift_tiling_positive(gamma, delta, i0, i0 + 6, j0, j0 + 6)
        base = tiling_from_paths(gamma, delta, i0, i0 + 6, j0, j0 + 6)
        ok = (min(min(r) for r in lifted.entries) >= 1 and lifted.is_tame() and lifted.is_sl2()
              and CongruenceData(N).Theta(lifted) == base)
        if not ok:
            bad.append(N)
    return not bad, "" if not bad else f"{len(bad)} failing windows"


def check_properties():
    notes = []
    R3 = ZMod(3)
    cx = build_complex(R3, "one")
    walks = [[v] for v in cx.vertices]
    for _ in range(4):
        walks = [w + [cx.vertices[j]] for w in walks for j in cx.out_neighbours[cx.index[w[-1]]]]
        for w in walks:
            if len(w) < 3:
                continue
            p = lifted_path(R3, w)
            if path_from_itinerary(R3, (w[0], w[1]), itinerary(p)) != p:
                notes.append("itinerary round trip")
    rng, ZZ = random.Random(SEED), IntegerRing()
    for _ in range(1000):
        m = [[rng.randint(-9, 9) for _ in range(3)] for _ in range(3)]
        minor = lambda r, c: m[r][c] * m[r + 1][c + 1] - m[r][c + 1] * m[r + 1][c]
        if det3(ZZ, m) * m[1][1] != minor(0, 0) * minor(1, 1) - minor(0, 1) * minor(1, 0):
            notes.append("condensation identity")
    for N, gamma, delta in _sample_pairs(100, rng):
        w = lift_tiling_positive(gamma, delta, 0, 5, 0, 5)
        r, s = tiling_recurrences(w)
        for i in range(1, 5):
            for j in range(6):
                if w[i - 1, j] + w[i + 1, j] != r[i] * w[i, j]:
                    notes.append("row recurrence")
    R6 = ZMod(6)
    if not is_strongly_contractible(make_path(R6, TORUS_GAMMA)):
        notes.append("torus gamma")
    if is_strongly_contractible(make_path(R6, TORUS_DELTA)):
        notes.append("torus delta")
    return not notes, "; ".join(sorted(set(notes)))


CHECKS = [
    (1, "diameters of the U = {1} complexes", check_e_diameters),
    (2, "diameters of the U = {+1, -1} complexes", check_f_diameters),
    (3, "surface classification", check_surfaces),
    (4, "cusps equal vertex counts", check_cusps),
    (5, "frieze counts over finite fields", check_all_counts),
    (6, "regular frieze counts", check_regular_counts),
    (7, "reference frieze and tiling grids", check_reference_grids),
    (8, "lifting decisions", check_lifting),
    (9, "positive tiling lifts", check_positive_lifts),
    (10, "property suites", check_properties),
]


def run_checks(numbers=None) -> list:
    results = []
    for number, title, fn in CHECKS:
        if numbers and number not in numbers:
            continue
        start = time.perf_counter()
        try:
            passed, detail = fn()
        except FareyError as exc:
            passed, detail = False, f"{type(exc).__name__}: {exc}"
        results.append(CheckResult(number, title, passed, detail, time.perf_counter() - start))
    return results
