"""Lifting matrices, paths, tilings and friezes from Z/N to the integers.

A frieze over Z/N lifts to an integer frieze of the same width exactly when
its path is closed in the ``U = {+1, -1}`` complex and can be shrunk to a
point by two kinds of move on the cyclic vertex sequence:

* ``E1`` deletes a spur ``v, u, v -> v``;
* ``E2`` deletes the middle vertex of a triangle ``u, v, w -> u, w``.

The search records the moves it used. Replaying them backwards over the
integers rebuilds the path one vertex at a time, which is how the integer
lift is produced.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from typing import Optional, Union

from .complex import (
    FareyComplex,
    Pair,
    SL2Matrix,
    build_complex,
    canonical,
    format_pair,
    pair_det,
)
from .errors import BudgetExceeded, InvalidDescriptor, NotClosed, NotContractible, NotSemiregular
from .frieze import Frieze, TilingWindow, frieze_from_path, path_from_frieze
from .paths import Path, TwistedPath, lift_path, lifted_path, make_path, twist_of, unfold
from .ring import IntegerRing, ZMod, _ext_gcd, plus_minus_units

ZZ = IntegerRing()
DEFAULT_SEARCH_BUDGET = 10**6
BUDGET_ENV = "FAREY_BUDGET"


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def search_budget(budget: Optional[int] = None) -> int:
    if budget is not None:
        return budget
    return int(os.environ.get(BUDGET_ENV, DEFAULT_SEARCH_BUDGET))


# reduction maps -------------------------------------------------------------------------


@dataclass(frozen=True)
class CongruenceData:
    """Reduction from the integers to Z/N on elements, pairs, matrices and arrays."""

    N: int

    @property
    def ring(self) -> ZMod:
        return ZMod(self.N)

    def reduce(self, x: int) -> int:
        return x % self.N

    def rho(self, pair: Pair, units="pm1") -> Pair:
        """Vertex reduction; with ``units='one'`` the exact pair is kept."""
        R = self.ring
        reduced = (pair[0] % self.N, pair[1] % self.N)
        U = plus_minus_units(R) if units == "pm1" else (R.one,)
        return canonical(R, U, reduced)

    def theta(self, A: SL2Matrix) -> SL2Matrix:
        return SL2Matrix(self.ring, *(x % self.N for x in A.entries()))

    def Theta(self, obj: Union[TilingWindow, Frieze]):
        if isinstance(obj, TilingWindow):
            return obj.map(self.reduce, self.ring)
        R = self.ring
        return Frieze.from_function(R, obj.n, lambda i, j: obj.entry(i, j) % self.N, obj.period)

    def reduce_path(self, path: Path, units="pm1") -> Path:
        return make_path(self.ring, [(a % self.N, b % self.N) for a, b in path.vertices], units)


# matrices ------------------------------------------------------------------------------------


def lift_matrix(A: SL2Matrix) -> SL2Matrix:
    """Integer matrix of determinant 1 reducing to ``A``."""
    R = A.ring
    if not isinstance(R, ZMod):
        raise InvalidDescriptor("matrix lifting is implemented for Z/N")
    N = R.n
    a, b, c, d = A.entries()
    d = d if d else N
    # make the bottom row coprime without leaving the congruence class
    t = 0
    while math.gcd(c + t * N, d) != 1:
        t += 1
    c += t * N
    k, rem = divmod(a * d - b * c - 1, N)
    assert rem == 0
    g, s, u = _ext_gcd(d, c)
    assert g == 1
    # (a + xN) d - (b + yN) c = 1 needs x d - y c = -k
    a, b = a - k * s * N, b + k * u * N
    return SL2Matrix(ZZ, a, b, c, d)


# positive lifts of paths and tilings ---------------------------------------------------------


def lift_vertex_positive(N: int, pair: Pair) -> Pair:
    """Coprime ``(a, b)`` with ``b > 0``, ``-1 < a/b < 1`` reducing to ``pair``."""
    a, b = pair[0] % N, pair[1] % N
    b0 = b if b > 0 else N
    while True:
        # largest admissible numerator first, so the slope starts close to 1
        top = b0 - 1 - (b0 - 1 - a) % N
        for a0 in range(top, -b0, -N):
            if math.gcd(a0, b0) == 1:
                return a0, b0
        b0 += N


def lift_step_positive(N: int, prev: Pair, target: Pair) -> Pair:
    """Next integer vertex ``(c, d)`` over ``target`` with ``ad - bc = 1``,
    ``d > 0`` and ``-1 < c/d < a/b``."""
    a, b = prev
    g, s, t = _ext_gcd(a, b)
    assert g == 1
    x0, y0 = -t, s  # a*y0 - b*x0 = 1
    vc, vd = target
    w1 = (y0 * vc - x0 * vd) % N
    if (a * vd - b * vc - 1) % N:
        raise InvalidDescriptor("target is not joined to the previous vertex by an edge of determinant 1")
    x, y = a * w1 + x0, b * w1 + y0
    k = max(_ceil_div(1 - y, N * b), _ceil_div(1 - x - y, N * (a + b)))
    return x + k * N * a, y + k * N * b


def lift_path_positive(path: Path) -> Path:
    """Integer lift of a lifted path over Z/N with positive denominators and
    slopes strictly decreasing inside ``(-1, 1)``."""
    R = path.ring
    if not isinstance(R, ZMod) or not path.is_lifted:
        raise InvalidDescriptor("positive lifting needs a lifted path over Z/N")
    N = R.n
    verts = [lift_vertex_positive(N, path.vertices[0])]
    for v in path.vertices[1:]:
        verts.append(lift_step_positive(N, verts[-1], v))
    return lifted_path(ZZ, verts)


def lift_tiling_positive(gamma: TwistedPath, delta: TwistedPath,
                         i0: int, i1: int, j0: int, j1: int) -> TilingWindow:
    """Positive integer window reducing to the tiling of ``(gamma, delta)`` mod N."""
    N = gamma.ring.n
    rows = lift_path_positive(unfold(gamma, i0, i1)).vertices
    cols = lift_path_positive(unfold(delta, j0, j1)).vertices
    # slopes of the shifted rows exceed N - 1 >= 1 > every column slope
    rows = [(a + N * b, b) for a, b in rows]
    entries = tuple(tuple(a * d - b * c for c, d in cols) for a, b in rows)
    return TilingWindow(ZZ, i0, j0, entries)


# strong contractibility ------------------------------------------------------------------------


@dataclass(frozen=True)
class Move:
    kind: str       # "E1" or "E2"
    position: int   # index of the removed vertex in the state it acts on
    length: int     # number of vertices in that cyclic state
    removed: str    # label of the removed vertex

    def to_dict(self) -> dict:
        return {"move": self.kind, "position": self.position, "length": self.length,
                "removed": self.removed}


@dataclass
class ReductionTrace:
    start: tuple                      # cyclic vertex sequence v_0 .. v_{n-1}
    moves: list = field(default_factory=list)

    def states(self) -> list:
        out = [tuple(self.start)]
        for mv in self.moves:
            out.append(apply_move(out[-1], mv.kind, mv.position))
        return out

    def to_dict(self, labeller=str) -> dict:
        return {"start": [labeller(v) for v in self.start],
                "moves": [m.to_dict() for m in self.moves]}


@dataclass(frozen=True)
class Contractibility:
    contractible: bool
    trace: Optional[ReductionTrace]
    explored: int

    def __bool__(self) -> bool:
        return self.contractible


def apply_move(state: tuple, kind: str, i: int) -> tuple:
    L = len(state)
    if kind == "E1":
        if L == 2:
            return (state[i - 1],)
        j = (i + 1) % L
        return tuple(v for t, v in enumerate(state) if t not in (i, j))
    return state[:i] + state[i + 1:]


def _moves(state: tuple, adjacent, is_face) -> list:
    L, out = len(state), []
    for i in range(L):
        a, c = state[i - 1], state[(i + 1) % L]
        if a == c and (L == 2 or L >= 4):
            out.append(("E1", i))
    if L >= 3:
        for i in range(L):
            a, b, c = state[i - 1], state[i], state[(i + 1) % L]
            if a != c and adjacent(a, c) and is_face(a, b, c):
                out.append(("E2", i))
    return out


def rotation_key(state: tuple) -> tuple:
    return min(state[k:] + state[:k] for k in range(len(state)))


def search_contraction(start: tuple, adjacent, is_face, budget: int,
                       order=None) -> tuple[Optional[list], int]:
    """Depth-first search for a move sequence shrinking ``start`` to one vertex.

    Returns ``(moves, explored)`` where ``moves`` is a list of ``(kind, i, length)``
    or ``None``. ``order`` may reorder candidate moves (used by tests).
    """
    failed: set = set()
    explored = 0

    def dfs(state: tuple) -> Optional[list]:
        nonlocal explored
        if len(state) == 1:
            return []
        key = rotation_key(state)
        if key in failed:
            return None
        explored += 1
        if explored > budget:
            raise BudgetExceeded(f"contractibility search exceeded {budget} states")
        moves = _moves(state, adjacent, is_face)
        if order is not None:
            moves = order(moves)
        for kind, i in moves:
            rest = dfs(apply_move(state, kind, i))
            if rest is not None:
                return [(kind, i, len(state))] + rest
        failed.add(key)
        return None

    return dfs(tuple(start)), explored


def _complex_for(path: Path, cx: Optional[FareyComplex]) -> FareyComplex:
    if cx is not None:
        return cx
    if not path.units.has_minus_one:
        raise InvalidDescriptor("moves over faces need -1 in the unit group")
    return build_complex(path.ring, path.units)


def is_strongly_contractible(path: Path, cx: Optional[FareyComplex] = None,
                             budget: Optional[int] = None, order=None) -> Contractibility:
    """Decide whether a closed path shrinks to a point by ``E1``/``E2`` moves.

    Moves read the path cyclically, so they may act across the base point.
    """
    if not path.is_closed:
        raise NotClosed("the path does not end where it starts")
    start = path.vertices[:-1]
    if not start:
        return Contractibility(True, ReductionTrace(path.vertices, []), 0)
    if path.ring.is_finite:
        cx = _complex_for(path, cx)
        idx = [cx.index[v] for v in start]
        nbrs = cx.neighbour_sets
        adjacent = lambda a, c: c in nbrs[a]
        is_face = cx.is_face
    else:
        # integer complex: adjacency is |det| = 1 and every triangle is a face
        idx = list(start)
        adjacent = lambda a, c: abs(pair_det(ZZ, a, c)) == 1
        is_face = lambda a, b, c: adjacent(a, b) and adjacent(b, c) and adjacent(a, c)
    found, explored = search_contraction(tuple(idx), adjacent, is_face, search_budget(budget), order)
    if found is None:
        return Contractibility(False, None, explored)
    R = path.ring
    moves = []
    state = tuple(start)
    for kind, i, L in found:
        moves.append(Move(kind, i, L, format_pair(R, state[i])))
        state = apply_move(state, kind, i)
    return Contractibility(True, ReductionTrace(tuple(start), moves), explored)


# lifting closed paths --------------------------------------------------------------------------


def _zz_vertex(pair: Pair) -> Pair:
    return canonical(ZZ, (1, -1), pair)


def _neighbour_over(N: int, base: Pair, target: Pair) -> Pair:
    """Integer neighbour of ``base`` lying over the Z/N vertex ``target``."""
    a, b = base
    g, s, t = _ext_gcd(a, b)
    x0, y0 = -t, s
    tc, td = target
    w2 = (a * td - b * tc) % N
    if w2 == N - 1 and N != 2:
        tc, td, w2 = -tc, -td, 1
    if w2 != 1 % N:
        raise NotContractible("consecutive vertices are not adjacent")
    w1 = (y0 * tc - x0 * td) % N
    return _zz_vertex((a * w1 + x0, b * w1 + y0))


def _mediant_over(N: int, left: Pair, right: Pair, target: Pair) -> Pair:
    (a, b), (c, d) = left, right
    R, U = ZMod(N), plus_minus_units(ZMod(N))
    for cand in ((a + c, b + d), (a - c, b - d)):
        if canonical(R, U, (cand[0] % N, cand[1] % N)) == target:
            return _zz_vertex(cand)
    raise NotContractible("no triangle over the required face")


def lift_closed_path(path: Path, trace: Optional[ReductionTrace] = None) -> Path:
    """Closed integer path reducing to the closed path ``path`` in the Z/N complex."""
    R = path.ring
    if not isinstance(R, ZMod) or set(path.units) != set(plus_minus_units(R)):
        raise InvalidDescriptor("closed-path lifting works in the Z/N complex with U = {+1, -1}")
    N = R.n
    if not path.is_closed:
        raise NotClosed("the path does not end where it starts")
    if trace is None:
        result = is_strongly_contractible(path)
        if not result:
            raise NotContractible("the path is not strongly contractible")
        trace = result.trace
    states = trace.states()
    if len(states[-1]) != 1:
        raise NotContractible("the trace does not end at a point")
    lifted = [_zz_vertex(lift_vertex_positive(N, states[-1][0]))]
    for mv, state in zip(reversed(trace.moves), reversed(states[:-1])):
        L, i = len(state), mv.position
        new: list = [None] * L
        if mv.kind == "E1":
            removed = {i} if L == 2 else {i, (i + 1) % L}
        else:
            removed = {i}
        kept = [t for t in range(L) if t not in removed]
        for t, v in zip(kept, lifted):
            new[t] = v
        if mv.kind == "E1":
            anchor = new[(i - 1) % L]
            new[i] = _neighbour_over(N, anchor, state[i])
            if L > 2:
                new[(i + 1) % L] = anchor
        else:
            new[i] = _mediant_over(N, new[(i - 1) % L], new[(i + 1) % L], state[i])
        lifted = new
    out = make_path(ZZ, lifted if path.length == 0 else lifted + [lifted[0]], "pm1")
    cong = CongruenceData(N)
    if tuple(cong.rho(v) for v in out.vertices) != path.vertices:
        raise NotContractible("replayed lift does not reduce to the path")
    return out


# lifting friezes ---------------------------------------------------------------------------------


@dataclass(frozen=True)
class NotLiftable:
    """Why a frieze over Z/N has no integer lift of the same width."""

    reason: str
    twist: str
    path: tuple
    explored: int = 0

    def __bool__(self) -> bool:
        return False

    def report(self) -> str:
        lines = [f"not liftable: {self.reason}",
                 f"path: {' -> '.join(self.path)}",
                 f"twist: {self.twist}"]
        if self.explored:
            lines.append(f"search exhausted {self.explored} cyclic states")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {"liftable": False, "reason": self.reason, "twist": self.twist,
                "path": list(self.path), "explored": self.explored}


def frieze_path_in_complex(f: Frieze) -> tuple[TwistedPath, Path]:
    """The twisted path of ``f`` and its image in the ``U = {+1, -1}`` complex."""
    tp = path_from_frieze(f)
    return tp, tp.base.project("pm1")


def lift_frieze(f: Frieze, budget: Optional[int] = None) -> Union[Frieze, NotLiftable]:
    """Integer frieze of the same width reducing to the semiregular frieze ``f``."""
    R = f.ring
    if not isinstance(R, ZMod):
        raise InvalidDescriptor("frieze lifting is implemented for Z/N")
    if not f.is_semiregular:
        raise NotSemiregular("lifting needs a semiregular frieze; normalise it first")
    tp, fpath = frieze_path_in_complex(f)
    labels = tuple(fpath.labels())
    twist = R.format(tp.twist)
    if not tp.is_closed:
        return NotLiftable("path is not closed (the second-last row is not all 1 or all -1)",
                           twist, labels)
    result = is_strongly_contractible(fpath, budget=budget)
    if not result:
        return NotLiftable("closed but not strongly contractible", twist, labels, result.explored)
    zpath = lift_closed_path(fpath, result.trace)
    ez = lift_path(zpath)
    lifted = frieze_from_path(TwistedPath(ez, twist_of(ez)))
    if CongruenceData(R.n).Theta(lifted) != f:
        raise NotContractible("integer lift does not reduce to the frieze")
    return lifted
