"""SL2-tilings, friezes, and their correspondence with paths.

Index conventions follow matrices: ``m[i, j]`` has row ``i`` (downward) and
column ``j`` (rightward). A frieze of width ``n`` is the band
``0 <= i - j <= n``; it is stored as one period of its diagonals
``(m[j, j], m[j+1, j], ..., m[j+n, j])``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Iterator, Optional, Sequence

from .complex import Pair, SL2Matrix
from .errors import (
    BudgetExceeded,
    InvalidDescriptor,
    NotAField,
    NotAFrieze,
    NotTame,
    WindowTooSmall,
)
from .paths import (
    TwistedPath,
    make_twisted,
    path_from_itinerary,
    standard_edge,
    step,
)
from .ring import Payload, Ring, make_ring

DEFAULT_BUDGET = 10**7


def det3(R: Ring, m: Sequence[Sequence[Payload]]) -> Payload:
    a, b, c = m[0]
    d, e, f = m[1]
    g, h, k = m[2]
    t1 = R.mul(a, R.det2(e, f, h, k))
    t2 = R.mul(b, R.det2(d, f, g, k))
    t3 = R.mul(c, R.det2(d, e, g, h))
    return R.add(R.sub(t1, t2), t3)


# tiling windows -----------------------------------------------------------------------------


@dataclass(frozen=True)
class TilingWindow:
    """Entries ``m[i, j]`` for ``i0 <= i < i0 + rows`` and ``j0 <= j < j0 + cols``."""

    ring: Ring
    i0: int
    j0: int
    entries: tuple  # tuple of row tuples

    @classmethod
    def from_function(cls, ring: Ring, fn: Callable[[int, int], Payload],
                      i0: int, i1: int, j0: int, j1: int) -> "TilingWindow":
        """Window over the inclusive ranges ``[i0, i1] x [j0, j1]``."""
        rows = tuple(tuple(fn(i, j) for j in range(j0, j1 + 1)) for i in range(i0, i1 + 1))
        return cls(ring, i0, j0, rows)

    @property
    def n_rows(self) -> int:
        return len(self.entries)

    @property
    def n_cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    @property
    def i1(self) -> int:
        return self.i0 + self.n_rows - 1

    @property
    def j1(self) -> int:
        return self.j0 + self.n_cols - 1

    def __getitem__(self, ij: tuple) -> Payload:
        i, j = ij
        return self.entries[i - self.i0][j - self.j0]

    def transpose(self) -> "TilingWindow":
        return TilingWindow(self.ring, self.j0, self.i0, tuple(zip(*self.entries)))

    def map(self, fn: Callable[[Payload], Payload], ring: Optional[Ring] = None) -> "TilingWindow":
        return TilingWindow(ring or self.ring, self.i0, self.j0,
                            tuple(tuple(fn(x) for x in row) for row in self.entries))

    def block(self, i: int, j: int, size: int) -> list:
        return [[self[i + a, j + b] for b in range(size)] for a in range(size)]

    def is_sl2(self) -> bool:
        """Every contiguous 2x2 block has determinant 1."""
        R, e = self.ring, self.entries
        return all(
            R.det2(e[r][c], e[r][c + 1], e[r + 1][c], e[r + 1][c + 1]) == R.one
            for r in range(self.n_rows - 1) for c in range(self.n_cols - 1)
        )

    def is_tame(self) -> bool:
        """Every contiguous 3x3 block has determinant 0."""
        if self.n_rows < 3 or self.n_cols < 3:
            raise WindowTooSmall("tameness needs a window of at least 3x3")
        R, e = self.ring, self.entries
        return all(
            det3(R, [row[c:c + 3] for row in e[r:r + 3]]) == R.zero
            for r in range(self.n_rows - 2) for c in range(self.n_cols - 2)
        )

    def to_csv(self) -> str:
        fmt = self.ring.format
        return "".join(",".join(fmt(x) for x in row) + "\n" for row in self.entries)

    def to_dict(self) -> dict:
        fmt = self.ring.format
        return {
            "ring": self.ring.descriptor(),
            "rows": [self.i0, self.i1],
            "cols": [self.j0, self.j1],
            "entries": [[fmt(x) for x in row] for row in self.entries],
        }

    def render(self) -> str:
        return render_grid(self.ring, self.entries)


def render_grid(ring: Ring, rows: Sequence[Sequence[Payload]]) -> str:
    """Right-aligned text grid, one line per row."""
    text = [[ring.format(x) for x in row] for row in rows]
    w = max((len(s) for row in text for s in row), default=1)
    return "".join(" ".join(s.rjust(w) for s in row) + "\n" for row in text)


def tiling_from_paths(gamma: TwistedPath, delta: TwistedPath,
                      i0: int, i1: int, j0: int, j1: int) -> TilingWindow:
    """Window of the tiling ``m[i, j] = a_i d_j - b_i c_j`` for ``gamma_i = (a_i, b_i)``
    and ``delta_j = (c_j, d_j)``."""
    R = gamma.ring
    rows = [gamma.vertex(i) for i in range(i0, i1 + 1)]
    cols = [delta.vertex(j) for j in range(j0, j1 + 1)]
    entries = tuple(tuple(R.det2(g[0], g[1], d[0], d[1]) for d in cols) for g in rows)
    return TilingWindow(R, i0, j0, entries)


def column_recurrence(window: TilingWindow) -> dict:
    """``s_j`` with ``m[i, j-1] + m[i, j+1] = s_j m[i, j]`` for interior columns."""
    if window.n_rows < 2 or window.n_cols < 3:
        raise WindowTooSmall("need at least 2 rows and 3 columns")
    R, out = window.ring, {}
    i = window.i0 + 1
    for j in range(window.j0 + 1, window.j1):
        s = R.det2(window[i - 1, j - 1], window[i - 1, j + 1], window[i, j - 1], window[i, j + 1])
        for r in range(window.i0, window.i1 + 1):
            if R.add(window[r, j - 1], window[r, j + 1]) != R.mul(s, window[r, j]):
                raise NotTame(f"no three-term recurrence at column {j}")
        out[j] = s
    return out


def tiling_recurrences(window: TilingWindow) -> tuple[dict, dict]:
    """Row and column recurrence coefficients ``(r, s)`` of a tame window."""
    if window.n_rows < 3 or window.n_cols < 3:
        raise WindowTooSmall("need at least 3 rows and 3 columns")
    s = column_recurrence(window)
    r = column_recurrence(window.transpose())
    return r, s


# friezes ------------------------------------------------------------------------------------


@dataclass(frozen=True)
class Frieze:
    """A width-``n`` frieze stored as one period of diagonals.

    ``diagonals[j % p][k] = m[j + k, j]`` for ``0 <= k <= n``.
    """

    ring: Ring
    n: int
    diagonals: tuple

    def __post_init__(self) -> None:
        R, n = self.ring, self.n
        if n < 2:
            raise NotAFrieze("width must be at least 2")
        diags = tuple(tuple(R.coerce(x) for x in d) for d in self.diagonals)
        if not diags or any(len(d) != n + 1 for d in diags):
            raise NotAFrieze(f"each diagonal needs {n + 1} entries")
        object.__setattr__(self, "diagonals", diags)
        for j in range(self.period):
            if self.entry(j, j) != R.zero or self.entry(j + n, j) != R.zero:
                raise NotAFrieze("top and bottom rows must be zero")
            for k in range(1, n):
                i = j + k
                lhs = R.det2(self.entry(i, j), self.entry(i, j + 1),
                             self.entry(i + 1, j), self.entry(i + 1, j + 1))
                if lhs != R.one:
                    raise NotAFrieze(f"diamond rule fails at ({i}, {j})")

    @classmethod
    def from_function(cls, ring: Ring, n: int, fn: Callable[[int, int], Payload],
                      bound: int) -> "Frieze":
        """Frieze whose entries are ``fn``; ``bound`` must be a period of ``fn``."""
        diags = [tuple(fn(j + k, j) for k in range(n + 1)) for j in range(bound)]
        p = minimal_period(diags)
        return cls(ring, n, tuple(diags[:p]))

    @property
    def period(self) -> int:
        return len(self.diagonals)

    def entry(self, i: int, j: int) -> Payload:
        k = i - j
        if not 0 <= k <= self.n:
            raise IndexError(f"({i}, {j}) lies outside the frieze")
        return self.diagonals[j % self.period][k]

    def __getitem__(self, ij: tuple) -> Payload:
        return self.entry(*ij)

    def row(self, k: int, start: int, count: int) -> list:
        """Entries ``m[j + k, j]`` for ``start <= j < start + count``."""
        return [self.entry(j + k, j) for j in range(start, start + count)]

    @property
    def alpha(self) -> Payload:
        return self.entry(1, 0)

    @property
    def beta(self) -> Payload:
        return self.entry(self.n - 1, 0)

    @property
    def twist(self) -> Payload:
        """``alpha / beta``, the factor in the extension rule."""
        return self.ring.div(self.alpha, self.beta)

    def _row_constant(self, k: int, value: Payload) -> bool:
        return all(d[k] == value for d in self.diagonals)

    @property
    def is_semiregular(self) -> bool:
        return self._row_constant(1, self.ring.one)

    @property
    def is_regular(self) -> bool:
        return self.is_semiregular and self._row_constant(self.n - 1, self.ring.one)

    @property
    def is_quasiregular(self) -> bool:
        R = self.ring
        return self.is_semiregular and (
            self._row_constant(self.n - 1, R.one) or self._row_constant(self.n - 1, R.neg(R.one))
        )

    @cached_property
    def is_tame(self) -> bool:
        R, n = self.ring, self.n
        for j in range(self.period):
            for k in range(2, n - 1):
                i = j + k
                block = [[self.entry(i + a, j + b) for b in (-1, 0, 1)] for a in (-1, 0, 1)]
                if det3(R, block) != R.zero:
                    return False
        return True

    def third_row(self, start: int, count: int) -> list:
        """``r_i = m[i+1, i-1]``."""
        return [self.entry(i + 1, i - 1) for i in range(start, start + count)]

    def to_dict(self) -> dict:
        fmt = self.ring.format
        return {
            "ring": self.ring.descriptor(),
            "width": self.n,
            "period": self.period,
            "diagonals": [[fmt(x) for x in d] for d in self.diagonals],
        }

    def to_csv(self) -> str:
        """One line per row ``k = 0..n`` over one period of columns."""
        fmt = self.ring.format
        return "".join(
            ",".join(fmt(d[k]) for d in self.diagonals) + "\n" for k in range(self.n + 1)
        )

    def render(self, x_min: Optional[int] = None, x_max: Optional[int] = None) -> str:
        if x_min is None:
            x_min = 0
        if x_max is None:
            x_max = x_min + max(2 * self.period, 2 * self.n + 2)
        return render_diamond(self.ring, self.entry, range(0, self.n + 1), x_min, x_max)


def minimal_period(items: Sequence) -> int:
    """Least ``p`` dividing ``len(items)`` with ``items`` invariant under a shift by ``p``."""
    N = len(items)
    for p in range(1, N + 1):
        if N % p == 0 and all(items[t] == items[t % p] for t in range(N)):
            return p
    return N


def render_diamond(ring: Ring, entry: Callable[[int, int], Payload], rows: Iterable[int],
                   x_min: int, x_max: int,
                   show: Optional[Callable[[int, int], bool]] = None) -> str:
    """Diamond layout: ``m[i, j]`` sits on line ``i - j`` at horizontal slot ``i + j``.

    Slots ``x_min..x_max`` are fixed-width cells separated by one space, so
    alternate lines are offset by half an entry. Trailing blanks are stripped.
    """
    cells = {}
    for k in rows:
        for x in range(x_min, x_max + 1):
            if (x - k) % 2:
                continue
            j = (x - k) // 2
            i = j + k
            if show is None or show(i, j):
                cells[k, x] = ring.format(entry(i, j))
    w = max((len(s) for s in cells.values()), default=1)
    lines = []
    for k in rows:
        slots = [cells.get((k, x), "").rjust(w) for x in range(x_min, x_max + 1)]
        lines.append(" ".join(slots).rstrip())
    return "\n".join(lines) + "\n"


def frieze_from_path(path) -> Frieze:
    """Semiregular frieze ``m[i, j] = a_j b_i - b_j a_i`` from a twisted path (or a
    path with equivalent endpoints) of length ``n >= 2``."""
    tp = path if isinstance(path, TwistedPath) else make_twisted(path)
    R, n = tp.ring, tp.n
    if n < 2:
        raise NotAFrieze("width must be at least 2")
    sq = R.mul(tp.twist, tp.twist)
    # shifting both indices by 2n multiplies entries by a power of twist^2
    bound = 2 * n * (1 if n % 2 else R.multiplicative_order(sq))
    verts = {}

    def v(k: int) -> Pair:
        if k not in verts:
            verts[k] = tp.vertex(k)
        return verts[k]

    def fn(i: int, j: int) -> Payload:
        (ai, bi), (aj, bj) = v(i), v(j)
        return R.sub(R.mul(aj, bi), R.mul(bj, ai))

    return Frieze.from_function(R, n, fn, bound)


def path_from_frieze(f: Frieze) -> TwistedPath:
    """Twisted path from ``(1,0) -> (0,1)`` with itinerary ``alpha^((-1)^i) m[i+1, i-1]``.

    Its frieze is the normalisation of ``f``.
    """
    R, n = f.ring, f.n
    alpha, alpha_inv = f.alpha, R.inverse(f.alpha)
    entries = []
    for i in range(1, n):
        scale_i = alpha if i % 2 == 0 else alpha_inv
        entries.append(R.mul(scale_i, f.entry(i + 1, i - 1)))
    path = path_from_itinerary(R, standard_edge(R), entries)
    return make_twisted(path)


def extension_entry(f: Frieze, i: int, j: int) -> Payload:
    """Entry of the unique tame SL2-tiling extending ``f``:
    ``m[i+n, j] = -lam^((-1)^i) m[i, j]`` with ``lam = alpha / beta``."""
    R, n = f.ring, f.n
    lam = f.twist
    lam_inv = R.inverse(lam)
    factor = R.one
    while i - j > n:
        i -= n
        factor = R.mul(factor, R.neg(lam if i % 2 == 0 else lam_inv))
    while i - j < 0:
        # m[i, j] = -lam^(-(-1)^i) m[i+n, j]
        factor = R.mul(factor, R.neg(lam_inv if i % 2 == 0 else lam))
        i += n
    return R.mul(factor, f.entry(i, j))


def extend_frieze(f: Frieze, i0: int, i1: int, j0: int, j1: int) -> TilingWindow:
    return TilingWindow.from_function(f.ring, lambda i, j: extension_entry(f, i, j), i0, i1, j0, j1)


def normalize_to_semiregular(f: Frieze) -> Frieze:
    """Multiply row ``i`` by ``alpha^((-1)^i)``."""
    R = f.ring
    alpha, alpha_inv = f.alpha, R.inverse(f.alpha)
    if alpha == R.one:
        return f

    def fn(i: int, j: int) -> Payload:
        return R.mul(alpha if i % 2 == 0 else alpha_inv, f.entry(i, j))

    bound = f.period * (1 if f.period % 2 == 0 else 2)
    return Frieze.from_function(R, f.n, fn, bound)


def scale_frieze(f: Frieze, alpha: Payload) -> Frieze:
    """Inverse of normalisation: a frieze with second row ``alpha^((-1)^i)``."""
    R = f.ring
    alpha_inv = R.inverse(alpha)

    def fn(i: int, j: int) -> Payload:
        return R.mul(alpha_inv if i % 2 == 0 else alpha, f.entry(i, j))

    bound = f.period * (1 if f.period % 2 == 0 else 2)
    return Frieze.from_function(R, f.n, fn, bound)


# quiddity sequences ---------------------------------------------------------------------------


def quiddity(f: Frieze) -> tuple:
    """Least period ``(r_1, ..., r_k)`` of the third row ``r_i = m[i+1, i-1]``."""
    row = f.third_row(1, f.period)
    return tuple(row[: minimal_period(row)])


def itinerary_matrix(R: Ring, e: Payload) -> SL2Matrix:
    return SL2Matrix(R, R.zero, R.neg(R.one), R.one, e)


def realize_quiddity(seq: Sequence, ring: Ring, max_power: int = 10**6) -> Frieze:
    """Semiregular frieze whose third row repeats ``seq``.

    With ``g = U_1 ... U_k`` and ``U_i = (0 -1; 1 e_i)``, the least ``m`` with
    ``g^m = lam I`` and ``lam^2 = 1`` (and ``mk >= 2``) gives width ``n = mk``.
    """
    R = ring
    seq = [R.coerce(e) for e in seq]
    if not seq:
        raise InvalidDescriptor("empty quiddity sequence")
    k = len(seq)
    g = SL2Matrix.identity(R)
    for e in seq:
        g = g @ itinerary_matrix(R, e)
    power = SL2Matrix.identity(R)
    limit = max_power if R.is_finite else 12  # finite-order elements of SL2(Z) have order <= 6
    for m in range(1, limit + 1):
        power = power @ g
        lam = power.a
        scalar = power.b == R.zero and power.c == R.zero and power.d == lam
        if scalar and R.mul(lam, lam) == R.one and m * k >= 2:
            entries = [seq[(i - 1) % k] for i in range(1, m * k)]
            path = path_from_itinerary(R, standard_edge(R), entries)
            return frieze_from_path(TwistedPath(path, lam))
    raise InvalidDescriptor("the quiddity matrix has no scalar power; no periodic frieze exists")


# counting -----------------------------------------------------------------------------------


KINDS = ("all", "semiregular", "regular")


def count_formula(q: int, n: int, kind: str, characteristic: int) -> int:
    """Closed forms for the number of tame friezes of width ``n`` over the field of order ``q``."""
    if kind not in KINDS:
        raise InvalidDescriptor(f"kind must be one of {KINDS}")
    semi = (q ** (n - 1) + (-1) ** n) // (q + 1)
    if kind == "semiregular":
        return semi
    if kind == "all":
        return (q - 1) * semi
    if n % 2:
        m = (n - 1) // 2
        return (q ** (2 * m) - 1) // (q * q - 1)
    m = n // 2
    binom = (q ** m - 1) * (q ** (m - 1) - 1) // ((q - 1) * (q * q - 1))
    if m % 2 == 0 and characteristic != 2:
        return (q - 1) * binom
    return (q - 1) * binom + q ** (m - 1)


def semiregular_itineraries(ring: Ring, n: int, regular: bool = False) -> Iterator[tuple]:
    """Tuples ``(e_1, ..., e_{n-1})`` whose path from ``(1,0) -> (0,1)`` ends at ``(lam, 0)``.

    With ``regular`` only ``lam = -1`` is kept.
    """
    R = ring
    elems = R.elements()
    minus_one = R.neg(R.one)
    start = standard_edge(R)

    def extend(prev: Pair, cur: Pair, prefix: list) -> Iterator[tuple]:
        if len(prefix) == n - 1:
            if cur[1] == R.zero and (not regular or cur[0] == minus_one):
                yield tuple(prefix)
            return
        for e in elems:
            prefix.append(e)
            yield from extend(cur, step(R, prev, cur, e), prefix)
            prefix.pop()

    yield from extend(start[0], start[1], [])


def semiregular_friezes(ring: Ring, n: int, regular: bool = False) -> Iterator[Frieze]:
    """All tame semiregular (or regular) friezes of width ``n`` over a finite ring."""
    R = ring
    for entries in semiregular_itineraries(R, n, regular):
        yield frieze_from_path(path_from_itinerary(R, standard_edge(R), entries))


def count_brute_force(ring: Ring, n: int, kind: str, budget: int = DEFAULT_BUDGET) -> int:
    R = ring
    R.require_finite("brute-force counting")
    if kind not in KINDS:
        raise InvalidDescriptor(f"kind must be one of {KINDS}")
    work = R.order ** (n - 1)
    if work > budget:
        raise BudgetExceeded(f"{work} itineraries exceed the budget of {budget}")
    semi = sum(1 for _ in semiregular_itineraries(R, n, regular=(kind == "regular")))
    if kind == "all":
        # normalisation is a bijection (alpha, semiregular frieze) <-> frieze
        return len(R.units()) * semi
    return semi


def count_friezes(ring: Ring, n: int, kind: str = "all", method: str = "formula",
                  budget: int = DEFAULT_BUDGET) -> int:
    """Number of tame friezes of width ``n`` of the given kind."""
    if n < 2:
        raise InvalidDescriptor("width must be at least 2")
    ring.require_finite("counting friezes")
    if method == "formula":
        if not ring.is_field():
            raise NotAField(f"{ring.name} is not a field")
        return count_formula(ring.order, n, kind, ring.characteristic)
    if method == "brute_force":
        return count_brute_force(ring, n, kind, budget)
    raise InvalidDescriptor(f"unknown method {method!r}")


# reading -------------------------------------------------------------------------------------


def frieze_from_dict(data: dict) -> Frieze:
    """Inverse of :meth:`Frieze.to_dict`."""
    R = make_ring(data["ring"])
    return Frieze(R, int(data["width"]), tuple(tuple(R.parse(x) for x in d) for d in data["diagonals"]))


def window_from_csv(ring: Ring, text: str, i0: int = 0, j0: int = 0) -> TilingWindow:
    rows = [line.split(",") for line in text.strip().splitlines() if line.strip()]
    if len({len(r) for r in rows}) > 1:
        raise InvalidDescriptor("ragged CSV window")
    return TilingWindow(ring, i0, j0, tuple(tuple(ring.parse(x.strip()) for x in r) for r in rows))


# reports -------------------------------------------------------------------------------------


def frieze_report(f: Frieze) -> dict:
    fmt = f.ring.format
    return {
        "width": f.n,
        "period": f.period,
        "alpha": fmt(f.alpha),
        "beta": fmt(f.beta),
        "twist": fmt(f.twist),
        "semiregular": f.is_semiregular,
        "regular": f.is_regular,
        "quasiregular": f.is_quasiregular,
        "tame": f.is_tame,
        "quiddity": [fmt(x) for x in quiddity(f)],
    }
