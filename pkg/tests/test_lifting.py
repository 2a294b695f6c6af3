import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from farey_friezes.complex import SL2Matrix, farey_complex_mod
from farey_friezes.errors import InvalidDescriptor, NotClosed, NotSemiregular
from farey_friezes.frieze import (
    frieze_from_path,
    scale_frieze,
    semiregular_friezes,
    tiling_from_paths,
)
from farey_friezes.lifting import (
    CongruenceData,
    apply_move,
    frieze_path_in_complex,
    is_strongly_contractible,
    lift_closed_path,
    lift_frieze,
    lift_matrix,
    lift_path_positive,
    lift_tiling_positive,
    lift_vertex_positive,
    search_contraction,
)
from farey_friezes.paths import TwistedPath, lift_path, lifted_path, make_path, make_twisted, twist_of
from farey_friezes.ring import IntegerRing, ZMod, galois_field
from farey_friezes.sampling import random_lifted_path, random_sl2, random_twisted_path

ZZ = IntegerRing()
TORUS_GAMMA = [(3, 2), (1, 1), (1, 0), (2, 1), (3, 1), (1, 4), (1, 3), (3, 2)]
TORUS_DELTA = [(1, 0), (0, 1), (1, 4), (2, 3), (3, 2), (4, 1), (1, 0)]
TWIST_TWO_PATH = [(2, 0), (2, 3), (1, 2), (0, 1), (4, 0)]


# matrices ---------------------------------------------------------------------------------------


def test_lift_identity():
    M = lift_matrix(SL2Matrix.identity(ZMod(7)))
    assert M.entries() == (1, 0, 0, 1)


def test_lift_quarter_turn_mod_5():
    M = lift_matrix(SL2Matrix(ZMod(5), 0, 4, 1, 0))
    assert M.entries() == (0, -1, 1, 5)


def test_lift_matrix_round_trip():
    rng = random.Random(21)
    for N in range(2, 13):
        R = ZMod(N)
        cong = CongruenceData(N)
        for _ in range(20):
            A = random_sl2(R, rng)
            M = lift_matrix(A)
            a, b, c, d = M.entries()
            assert a * d - b * c == 1
            assert cong.theta(M) == A


def test_lift_matrix_needs_zmod():
    with pytest.raises(InvalidDescriptor):
        lift_matrix(SL2Matrix.identity(galois_field(4)))


# positive lifts ---------------------------------------------------------------------------------


def test_positive_vertex_lifts():
    assert lift_vertex_positive(5, (1, 0)) == (1, 5)
    assert lift_vertex_positive(5, (0, 1)) == (0, 1)
    for N in (3, 7, 10):
        for a in range(N):
            for b in range(N):
                if ZMod(N).is_unimodular(a, b):
                    x, y = lift_vertex_positive(N, (a, b))
                    assert y > 0 and -y < x < y and (x - a) % N == 0 and (y - b) % N == 0


def test_positive_path_lifts_on_random_paths_mod_7():
    rng = random.Random(22)
    R = ZMod(7)
    for _ in range(50):
        p = random_lifted_path(R, 6, rng)
        z = lift_path_positive(p)
        v = z.vertices
        for (x, y), (a, b) in zip(v, p.vertices):
            assert y > 0 and -y < x < y
            assert (x - a) % 7 == 0 and (y - b) % 7 == 0
        for (a, b), (c, d) in zip(v, v[1:]):
            assert a * d - b * c == 1
            assert c * b < a * d  # slopes strictly decrease


def test_positive_tiling_lifts():
    rng = random.Random(23)
    for N in (3, 4, 5, 7, 9):
        cong = CongruenceData(N)
        for _ in range(4):
            g = random_twisted_path(ZMod(N), rng.randint(3, 6), rng)
            d = random_twisted_path(ZMod(N), rng.randint(3, 6), rng)
            i0, j0 = rng.randint(-6, 6), rng.randint(-6, 6)
            w = lift_tiling_positive(g, d, i0, i0 + 7, j0, j0 + 7)
            assert min(min(r) for r in w.entries) >= 1
            assert w.is_sl2() and w.is_tame()
            assert cong.Theta(w) == tiling_from_paths(g, d, i0, i0 + 7, j0, j0 + 7)


def test_positive_lift_rejects_projected_paths():
    with pytest.raises(InvalidDescriptor):
        lift_path_positive(make_path(ZMod(5), [(1, 0), (0, 1)]))


# strong contractibility --------------------------------------------------------------------------


def test_torus_paths():
    R6 = ZMod(6)
    gamma = is_strongly_contractible(make_path(R6, TORUS_GAMMA))
    delta = is_strongly_contractible(make_path(R6, TORUS_DELTA))
    assert gamma and gamma.trace is not None
    assert not delta and delta.trace is None and delta.explored > 0


def test_trace_replays_to_a_point():
    R6 = ZMod(6)
    res = is_strongly_contractible(make_path(R6, TORUS_GAMMA))
    states = res.trace.states()
    assert len(states[0]) == 7 and len(states[-1]) == 1
    assert all(m.kind in ("E1", "E2") for m in res.trace.moves)


def test_contractibility_needs_closed_path():
    with pytest.raises(NotClosed):
        is_strongly_contractible(make_path(ZMod(5), [(1, 0), (0, 1)]))


def test_point_and_backtrack_are_contractible():
    R = ZMod(5)
    assert is_strongly_contractible(make_path(R, [(1, 0)]))
    assert is_strongly_contractible(make_path(R, [(1, 0), (0, 1), (1, 0)]))
    assert is_strongly_contractible(make_path(R, [(1, 0), (0, 1), (1, 1), (1, 0)]))


def test_apply_move_shapes():
    assert apply_move((1, 2), "E1", 1) == (1,)
    assert apply_move((1, 2, 1, 3), "E1", 1) == (1, 3)
    assert apply_move((1, 2, 3), "E2", 1) == (1, 3)
    assert apply_move((1, 2, 3, 4), "E1", 3) == (2, 3)


def _closed_walks(cx, length):
    walks = [[v] for v in cx.vertices[:1]]  # vertex transitivity lets us fix the start
    for _ in range(length - 1):
        walks = [w + [cx.vertices[j]] for w in walks for j in cx.out_neighbours[cx.index[w[-1]]]]
    start = cx.index[cx.vertices[0]]
    return [w + [w[0]] for w in walks if start in cx.out_neighbours[cx.index[w[-1]]]]


def _decide(cx, walk, order):
    idx = tuple(cx.index[v] for v in walk[:-1])
    nbrs = cx.neighbour_sets
    found, _ = search_contraction(idx, lambda a, c: c in nbrs[a], cx.is_face, 10**6, order)
    return found is not None


@pytest.mark.parametrize("N", [4, 5, 6])
def test_move_order_does_not_matter(N):
    cx = farey_complex_mod(N)
    rng = random.Random(N)
    orders = [None, lambda ms: list(reversed(ms)),
              lambda ms: sorted(ms, key=lambda m: (m[0] != "E2", m[1])),
              lambda ms: rng.sample(ms, len(ms))]
    walks = []
    for length in range(2, 7):
        walks += _closed_walks(cx, length)
    for length in (7, 8):
        pool = _closed_walks(cx, length) if N < 6 or length == 7 else []
        walks += rng.sample(pool, min(len(pool), 300))
    assert walks
    for w in walks:
        answers = {_decide(cx, w, o) for o in orders}
        assert len(answers) == 1, w


# lifting closed paths ----------------------------------------------------------------------------


def test_lift_torus_gamma():
    R6 = ZMod(6)
    p = make_path(R6, TORUS_GAMMA)
    z = lift_closed_path(p)
    assert z.length == 7 and z.is_closed and z.ring == ZZ
    assert CongruenceData(6).reduce_path(z) == p


def test_lift_point_path():
    z = lift_closed_path(make_path(ZMod(5), [(2, 3)]))
    assert z.length == 0 and CongruenceData(5).rho(z.vertices[0]) == (2, 3)


def _integer_neighbour(v, rng):
    a, b = v
    # a y - b x = 1 via the extended Euclidean algorithm
    r0, r1, s0, s1, t0, t1 = a, b, 1, 0, 0, 1
    while r1:
        q = r0 // r1
        r0, r1, s0, s1, t0, t1 = r1, r0 - q * r1, s1, s0 - q * s1, t1, t0 - q * t1
    if r0 < 0:
        s0, t0 = -s0, -t0
    x, y = -t0, s0
    k = rng.randint(-3, 3)
    sign = rng.choice((1, -1))
    return sign * (x + k * a), sign * (y + k * b)


def random_contractible_integer_path(rng, steps):
    """Grow a closed path in the integer complex by inverse moves from a point."""
    state = [(1, 0)]
    for _ in range(steps):
        L = len(state)
        i = rng.randrange(L)
        if L == 1 or rng.random() < 0.5:
            w = _integer_neighbour(state[i], rng)
            state = state[: i + 1] + [w, state[i]] + state[i + 1:]
            if L == 1:
                state = [state[0], w]
        else:
            (a, b), (c, d) = state[i], state[(i + 1) % L]
            if a * d - b * c in (1, -1) and state[i] != state[(i + 1) % L]:
                s = rng.choice((1, -1))
                state = state[: i + 1] + [(a + s * c, b + s * d)] + state[i + 1:]
    return make_path(ZZ, state + [state[0]], "pm1")


def test_integer_growth_paths_are_contractible():
    rng = random.Random(24)
    for _ in range(30):
        z = random_contractible_integer_path(rng, rng.randint(1, 5))
        assert is_strongly_contractible(z)


@pytest.mark.parametrize("N", [3, 4, 5, 6, 7])
def test_projections_of_integer_paths_lift_back(N):
    rng = random.Random(100 + N)
    cong = CongruenceData(N)
    for _ in range(40):
        z = random_contractible_integer_path(rng, rng.randint(1, 5))
        p = cong.reduce_path(z)
        assert is_strongly_contractible(p)
        back = lift_closed_path(p)
        assert cong.reduce_path(back) == p


def test_lift_closed_path_errors():
    with pytest.raises(NotClosed):
        lift_closed_path(make_path(ZMod(5), [(1, 0), (0, 1)]))
    with pytest.raises(InvalidDescriptor):
        lift_closed_path(lifted_path(ZMod(5), [(1, 0)]))


# lifting friezes ---------------------------------------------------------------------------------


def closes_over_integers(entries, N, bound):
    """Bounded search for integers congruent to ``entries`` mod N whose path from the
    standard edge ends at (+-1, 0). Built from the recurrence alone."""
    choices = [[e + k * N for k in range(-(bound // N) - 1, bound // N + 2) if abs(e + k * N) <= bound]
               for e in entries]
    for ints in itertools.product(*choices):
        prev, cur = (1, 0), (0, 1)
        for e in ints:
            prev, cur = cur, (e * cur[0] - prev[0], e * cur[1] - prev[1])
        if cur[1] == 0 and cur[0] in (1, -1):
            return ints
    return None


def test_handle_frieze_is_not_liftable():
    f = frieze_from_path(make_path(ZMod(6), [(2, 3), (1, 1), (2, 1), (3, 1), (2, 3)]))
    out = lift_frieze(f)
    assert not out and out.reason == "closed but not strongly contractible"
    assert "not liftable" in out.report() and out.to_dict()["liftable"] is False


def test_twisted_z5_frieze_is_not_liftable():
    f = frieze_from_path(make_twisted(lifted_path(ZMod(5), TWIST_TWO_PATH)))
    out = lift_frieze(f)
    assert not out and out.reason.startswith("path is not closed") and out.twist == "2"


def test_lift_frieze_requires_semiregular():
    f = frieze_from_path(make_twisted(lifted_path(ZMod(5), TWIST_TWO_PATH)))
    with pytest.raises(NotSemiregular):
        lift_frieze(scale_frieze(f, 2))


@pytest.mark.parametrize("N", [2, 3])
def test_every_frieze_over_z2_and_z3_lifts(N):
    cong = CongruenceData(N)
    for n in range(2, 6):
        for f in semiregular_friezes(ZMod(N), n):
            g = lift_frieze(f)
            assert g and g.n == n and cong.Theta(g) == f
            assert g.is_semiregular and g.is_tame


@pytest.mark.parametrize("N", [4, 5, 6])
def test_lift_decisions_match_bounded_integer_search(N):
    cong = CongruenceData(N)
    for n in range(2, 6):
        for f in semiregular_friezes(ZMod(N), n):
            g = lift_frieze(f)
            entries = [f.entry(i + 1, i - 1) for i in range(1, n)]
            found = closes_over_integers(entries, N, 3 * N)
            assert bool(g) == (found is not None), (n, entries)
            if g:
                assert cong.Theta(g) == f and g.n == n


def test_survey_counts_for_z4():
    counts = []
    for n in (2, 3, 4, 5):
        fs = list(semiregular_friezes(ZMod(4), n))
        counts.append((sum(1 for f in fs if lift_frieze(f)), len(fs)))
    assert counts == [(1, 1), (2, 2), (11, 12), (40, 40)]


def test_frieze_path_in_complex_is_projection():
    f = frieze_from_path(make_path(ZMod(6), TORUS_GAMMA))
    tp, p = frieze_path_in_complex(f)
    assert p == tp.base.project("pm1") and p.is_closed


@settings(max_examples=25)
@given(st.sampled_from([4, 5, 6, 7]), st.integers(0, 10**6))
def test_liftable_projection_of_integer_frieze(N, seed):
    # every integer frieze reduces to a liftable frieze
    rng = random.Random(seed)
    z = random_contractible_integer_path(rng, rng.randint(2, 5))
    if z.length < 2:
        return
    ez = lift_path(z)
    fz = frieze_from_path(TwistedPath(ez, twist_of(ez)))
    f = CongruenceData(N).Theta(fz)
    assert lift_frieze(f)


def test_integer_adjacency_in_contractibility():
    assert is_strongly_contractible(make_path(ZZ, [(1, 0), (0, 1), (1, 1), (1, 0)]))
    # around the fan at infinity: 1/0 -> 0/1 -> 1/1 -> 2/1 -> 1/0 needs faces, not backtracks
    assert is_strongly_contractible(make_path(ZZ, [(1, 0), (0, 1), (1, 1), (2, 1), (1, 0)]))
