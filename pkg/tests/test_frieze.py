import json
import random

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from farey_friezes.errors import BudgetExceeded, NotAField, NotAFrieze, WindowTooSmall
from farey_friezes.frieze import (
    Frieze,
    TilingWindow,
    count_brute_force,
    count_formula,
    count_friezes,
    det3,
    extend_frieze,
    extension_entry,
    frieze_from_dict,
    frieze_from_path,
    normalize_to_semiregular,
    path_from_frieze,
    quiddity,
    realize_quiddity,
    scale_frieze,
    semiregular_friezes,
    tiling_from_paths,
    tiling_recurrences,
    window_from_csv,
)
from farey_friezes.paths import (
    itinerary,
    lifted_path,
    make_path,
    make_twisted,
    path_from_itinerary,
    standard_edge,
    unfold,
)
from farey_friezes.ring import IntegerRing, ZMod, galois_field
from farey_friezes.sampling import random_sl2, random_twisted_path

ZZ = IntegerRing()
R5 = ZMod(5)
TWIST_TWO_PATH = [(2, 0), (2, 3), (1, 2), (0, 1), (4, 0)]


def twisted_z5_frieze():
    return frieze_from_path(make_twisted(lifted_path(R5, TWIST_TWO_PATH)))


def z5_tiling_paths():
    gamma = make_twisted(lifted_path(R5, [(1, 0), (1, 1), (3, 4), (1, 0)]))
    delta = make_twisted(lifted_path(R5, [(1, 2), (3, 2), (0, 2), (2, 2), (4, 2), (1, 2)]))
    return gamma, delta


# tilings ----------------------------------------------------------------------------------------


def test_z5_tiling_window_from_two_paths():
    gamma, delta = z5_tiling_paths()
    w = tiling_from_paths(gamma, delta, 1, 11, 2, 12)
    rows = ([2, 0, 3, 1, 4, 2, 0, 3, 1, 4, 2], [1, 3, 0, 2, 4, 1, 3, 0, 2, 4, 1], [2] * 11)
    assert [list(r) for r in w.entries] == [rows[r % 3] for r in range(11)]
    assert w.is_sl2() and w.is_tame()


def test_tiling_entry_is_determinant():
    gamma, delta = z5_tiling_paths()
    w = tiling_from_paths(gamma, delta, -3, 4, -2, 5)
    for i in range(-3, 5):
        a, b = gamma.vertex(i)
        for j in range(-2, 6):
            c, d = delta.vertex(j)
            assert w[i, j] == (a * d - b * c) % 5


def test_same_path_twice_gives_zero_diagonal():
    rng = random.Random(11)
    for N in (5, 7, 9):
        tp = random_twisted_path(ZMod(N), 5, rng)
        w = tiling_from_paths(tp, tp, 0, 9, 0, 9)
        assert all(w[i, i] == 0 for i in range(10))


def test_tiling_is_sl2_invariant():
    rng = random.Random(12)
    R = ZMod(7)
    for _ in range(20):
        g, d = random_twisted_path(R, 4, rng), random_twisted_path(R, 5, rng)
        A = random_sl2(R, rng)
        g2, d2 = make_twisted(g.base.transform(A)), make_twisted(d.base.transform(A))
        assert tiling_from_paths(g, d, 0, 8, 0, 8).entries == tiling_from_paths(g2, d2, 0, 8, 0, 8).entries


def test_tameness_detects_corruption():
    gamma, delta = z5_tiling_paths()
    w = tiling_from_paths(gamma, delta, 0, 5, 0, 5)
    assert w.is_tame()
    rows = [list(r) for r in w.entries]
    rows[2][2] = (rows[2][2] + 1) % 5
    assert not TilingWindow(R5, 0, 0, tuple(map(tuple, rows))).is_tame()
    with pytest.raises(WindowTooSmall):
        TilingWindow(R5, 0, 0, ((1, 0), (0, 1))).is_tame()


def test_block_pattern_window_is_tame():
    # rows repeat a b -a -b with shifts: every 3x3 block is singular
    R = ZMod(7)
    a, b = 2, 3
    pattern = [a, b, -a % 7, -b % 7]
    rows = tuple(tuple(pattern[(j + i) % 4] for j in range(6)) for i in range(6))
    assert TilingWindow(R, 0, 0, rows).is_tame()


def test_recurrences_match_path_itineraries():
    rng = random.Random(13)
    for N in (5, 7, 8):
        R = ZMod(N)
        g, d = random_twisted_path(R, 4, rng), random_twisted_path(R, 5, rng)
        w = tiling_from_paths(g, d, 0, 7, 0, 7)
        r, s = tiling_recurrences(w)
        e_g = itinerary(unfold(g, 0, 7))
        e_d = itinerary(unfold(d, 0, 7))
        assert [r[i] for i in range(1, 7)] == list(e_g)
        assert [s[j] for j in range(1, 7)] == list(e_d)


def test_recurrences_of_integer_extension_are_the_quiddity():
    f = realize_quiddity((1, 3, 1, 2, 2), ZZ)
    w = extend_frieze(f, 0, 10, 0, 10)
    r, s = tiling_recurrences(w)
    seq = (1, 3, 1, 2, 2)
    assert all(r[i] == seq[(i - 1) % 5] for i in range(1, 10))
    assert all(s[j] == seq[(j - 1) % 5] for j in range(1, 10))


def test_condensation_identity_on_random_matrices():
    rng = random.Random(14)
    for _ in range(500):
        m = [[rng.randint(-20, 20) for _ in range(3)] for _ in range(3)]

        def minor(r, c):
            return m[r][c] * m[r + 1][c + 1] - m[r][c + 1] * m[r + 1][c]

        assert det3(ZZ, m) * m[1][1] == minor(0, 0) * minor(1, 1) - minor(0, 1) * minor(1, 0)


# friezes from paths -------------------------------------------------------------------------------


def test_twisted_z5_frieze_rows():
    f = twisted_z5_frieze()
    assert f.n == 4 and f.is_semiregular and not f.is_quasiregular
    assert f.row(2, 3, 8) == [4, 1, 3, 3, 1, 4, 2, 2]
    assert f.row(3, 3, 4) == [3, 2, 3, 2]
    assert f.twist == 3  # alpha / beta = 1 / 2, the negative of the path twist 2
    assert len(quiddity(f)) == 8


def test_twisted_z5_extension_entry_above_band():
    f = twisted_z5_frieze()
    assert extension_entry(f, 11, 12) == 4


def test_semiclosed_integer_path_gives_regular_frieze():
    f = frieze_from_path(lifted_path(ZZ, [(1, 0), (0, 1), (-1, 1), (-1, 0)]))
    assert f.n == 3 and f.is_regular
    assert f.third_row(0, 6) == [1] * 6


def test_width_four_regular_frieze_over_z6():
    f = realize_quiddity((2, 4), ZMod(6))
    assert f.n == 4 and f.is_regular
    assert f.third_row(1, 4) == [2, 4, 2, 4]


def test_frieze_entries_match_determinant_formula():
    rng = random.Random(15)
    R = ZMod(9)
    tp = random_twisted_path(R, 5, rng)
    f = frieze_from_path(tp)
    for j in range(-4, 10):
        for k in range(f.n + 1):
            (ai, bi), (aj, bj) = tp.vertex(j + k), tp.vertex(j)
            assert f.entry(j + k, j) == (aj * bi - bj * ai) % 9


@settings(max_examples=40)
@given(st.sampled_from([5, 6, 7, 8, 9]), st.integers(2, 6), st.integers(0, 10**6))
def test_path_frieze_round_trip(N, n, seed):
    R = ZMod(N)
    tp = random_twisted_path(R, n, random.Random(seed))
    if tp is None:
        return
    f = frieze_from_path(tp)
    assert f.is_semiregular and f.is_tame
    assert f.twist == R.neg(tp.twist)
    back = path_from_frieze(f)
    assert frieze_from_path(back) == f
    assert tp.cyclic_itinerary() == tuple(f.third_row(0, n))


@settings(max_examples=30)
@given(st.sampled_from([5, 7, 8]), st.integers(2, 5), st.integers(0, 10**6))
def test_frieze_is_sl2_invariant(N, n, seed):
    rng = random.Random(seed)
    R = ZMod(N)
    tp = random_twisted_path(R, n, rng)
    if tp is None:
        return
    A = random_sl2(R, rng)
    assert frieze_from_path(make_twisted(tp.base.transform(A))) == frieze_from_path(tp)


def test_extension_is_tame_sl2_tiling():
    rng = random.Random(16)
    for N in (5, 7, 11):
        tp = random_twisted_path(ZMod(N), rng.randint(3, 6), rng)
        f = frieze_from_path(tp)
        w = extend_frieze(f, -8, 14, -6, 10)
        assert w.is_sl2() and w.is_tame()
        for i in range(-8, 15):
            for j in range(-6, 11):
                if 0 <= i - j <= f.n:
                    assert w[i, j] == f.entry(i, j)


def test_extension_equals_tiling_of_path_with_itself_up_to_sign():
    tp = make_twisted(lifted_path(R5, TWIST_TWO_PATH))
    f = frieze_from_path(tp)
    w = tiling_from_paths(tp, tp, -5, 12, -5, 12)
    for i in range(-5, 13):
        for j in range(-5, 13):
            # a_j b_i - b_j a_i is minus the tiling entry a_i b_j - b_i a_j
            assert extension_entry(f, i, j) == (-w[i, j]) % 5


# normalisation -----------------------------------------------------------------------------------


def test_scale_and_normalize():
    f = twisted_z5_frieze()
    g = scale_frieze(f, 2)
    assert g.alpha == 2 and g.entry(2, 1) == 3 and not g.is_semiregular
    assert normalize_to_semiregular(g) == f
    assert normalize_to_semiregular(f) == f
    assert normalize_to_semiregular(normalize_to_semiregular(g)) == normalize_to_semiregular(g)


def test_normalisation_commutes_with_extension():
    f = twisted_z5_frieze()
    for alpha in (2, 3, 4):
        g = scale_frieze(f, alpha)
        inv = pow(alpha, -1, 5)
        for i in range(-6, 12):
            for j in range(-6, 12):
                factor = inv if i % 2 == 0 else alpha
                assert extension_entry(g, i, j) == factor * extension_entry(f, i, j) % 5


def test_frieze_validation():
    with pytest.raises(NotAFrieze):
        Frieze(R5, 1, ((0, 0),))
    with pytest.raises(NotAFrieze):
        Frieze(R5, 2, ((0, 1, 0), (0, 2, 0)))
    with pytest.raises(NotAFrieze):
        Frieze(R5, 2, ((1, 1, 0),))


# quiddity sequences -------------------------------------------------------------------------------


def test_realize_integer_quiddity():
    f = realize_quiddity((1, 3, 1, 2, 2), ZZ)
    assert f.n == 5 and f.is_regular
    assert f.third_row(1, 5) == [1, 3, 1, 2, 2]
    # m[j+3, j] = r_{j+1} r_{j+2} - 1 below a row of ones
    assert f.row(3, 0, 5) == [2, 2, 1, 3, 1]


def test_realize_quiddity_mod_7():
    f = realize_quiddity((1, 3, 1, 2, 2), ZMod(7))
    assert f.n == 5 and f.is_regular and quiddity(f) == (1, 3, 1, 2, 2)


def test_quiddity_round_trip_on_random_friezes():
    rng = random.Random(17)
    for N in (5, 7):
        for _ in range(10):
            tp = random_twisted_path(ZMod(N), rng.randint(2, 5), rng)
            f = frieze_from_path(tp)
            g = realize_quiddity(quiddity(f), ZMod(N))
            assert quiddity(g) == quiddity(f)
            assert g.third_row(1, 40) == f.third_row(1, 40)


# counting ------------------------------------------------------------------------------------------


def test_count_examples():
    assert count_friezes(galois_field(2), 3, "all") == 1
    assert count_friezes(galois_field(3), 4, "all") == 14
    assert count_friezes(galois_field(2), 4, "regular") == 3


@pytest.mark.parametrize("q", [2, 3, 4, 5])
@pytest.mark.parametrize("kind", ["all", "semiregular", "regular"])
def test_formula_matches_brute_force(q, kind):
    F = galois_field(q)
    for n in range(2, 6):
        assert count_friezes(F, n, kind) == count_friezes(F, n, kind, "brute_force")


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_formula_matches_written_out_closed_forms(q):
    char = galois_field(q).characteristic
    for n in range(2, 9):
        assert count_formula(q, n, "all", char) == oracles.all_count(q, n)
        assert count_formula(q, n, "regular", char) == oracles.regular_count(q, n, char)


@pytest.mark.parametrize("p,n,kind", [
    (2, 2, "all"), (2, 3, "all"), (2, 4, "all"), (2, 5, "all"),
    (2, 4, "regular"), (2, 5, "regular"),
    (3, 2, "all"), (3, 3, "all"), (3, 3, "semiregular"), (3, 4, "semiregular"),
    (3, 3, "regular"), (3, 4, "regular"),
])
def test_counts_match_direct_array_enumeration(p, n, kind):
    arrays = oracles.frieze_arrays(p, n, kind, 2 * n)
    assert len(arrays) == count_brute_force(ZMod(p), n, kind)


def test_enumerated_friezes_are_distinct_and_valid():
    fs = list(semiregular_friezes(ZMod(5), 4))
    assert len(fs) == len(set(fs)) == count_formula(5, 4, "semiregular", 5)
    assert all(f.is_semiregular and f.is_tame for f in fs)
    reg = list(semiregular_friezes(ZMod(5), 4, regular=True))
    assert all(f.is_regular for f in reg)


def test_counting_errors():
    with pytest.raises(NotAField):
        count_friezes(ZMod(6), 3)
    with pytest.raises(BudgetExceeded):
        count_friezes(ZMod(7), 9, "all", "brute_force", budget=10)
    assert count_friezes(ZMod(6), 3, "semiregular", "brute_force") >= 1


# serialisation --------------------------------------------------------------------------------------


def test_frieze_dict_round_trip():
    f = twisted_z5_frieze()
    assert frieze_from_dict(json.loads(json.dumps(f.to_dict()))) == f


def test_window_csv_round_trip():
    gamma, delta = z5_tiling_paths()
    w = tiling_from_paths(gamma, delta, 0, 4, 0, 6)
    back = window_from_csv(R5, w.to_csv())
    assert back.entries == w.entries


def test_frieze_from_projected_path():
    f = frieze_from_path(make_path(ZMod(6), [(2, 3), (1, 1), (2, 1), (3, 1), (2, 3)]))
    assert f.n == 4 and f.is_semiregular
    assert path_from_itinerary(ZMod(6), standard_edge(ZMod(6)), [2, 4, 2]).vertices[-1][1] == 0
