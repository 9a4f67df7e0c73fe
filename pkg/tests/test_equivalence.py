import random
from collections import Counter

import hypothesis
import pytest
from hypothesis import strategies as st

from cfigraphs import base_graph as bg
from cfigraphs import cfi
from cfigraphs import equivalence as eqv
from cfigraphs.errors import SizeGuardError


def test_lk_identity_and_paths():
    assert eqv.lk_equivalent(bg.petersen(), bg.petersen(), 2)
    assert not eqv.lk_equivalent(bg.path(1), bg.path(2), 2)
    assert not eqv.lk_equivalent(bg.path(2), bg.path(3), 2)
    # long paths collapse without counting
    assert eqv.lk_equivalent(bg.path(3), bg.path(9), 2)
    assert eqv.lk_equivalent(bg.path(4), bg.path(7), 2)


def test_lk_uses_colors():
    g = bg.path(1)
    assert eqv.lk_equivalent(g, g, 2, [0, 0], [0, 0])
    assert not eqv.lk_equivalent(g, g, 2, [0, 0], [0, 1])


def test_lk_monotone_in_k():
    y = cfi.build_cfi(bg.path(4)).graph
    yt = cfi.build_tilde(bg.path(4)).graph
    assert eqv.lk_equivalent(y, yt, 2)
    # k=3 may or may not hold, but k=1 must
    assert eqv.lk_equivalent(y, yt, 1)
    a, b = bg.path(2), bg.path(3)
    for k in (2, 3):
        if eqv.lk_equivalent(a, b, k + 1):
            assert eqv.lk_equivalent(a, b, k)


def test_two_variable_separation_on_paths():
    for m in (3, 4, 5):
        y = cfi.build_cfi(bg.path(m)).graph
        yt = cfi.build_tilde(bg.path(m)).graph
        assert eqv.lk_equivalent(y, yt, 2)
        assert not eqv.wl_equivalent(y, yt, 1)
    for base in (bg.path(3), bg.complete_bipartite(1, 3)):
        x = cfi.build_cfi(base, True)
        xt = cfi.build_tilde(base, True)
        assert not eqv.lk_equivalent(x.graph, xt.graph, 2, x.colors, xt.colors)


def test_wl1_basics():
    assert eqv.wl_equivalent(bg.cycle(6), bg.disjoint_union(bg.cycle(3), bg.cycle(3)), 1)
    assert not eqv.wl_equivalent(bg.cycle(6), bg.cycle(7), 1)
    assert not eqv.wl_equivalent(bg.path(3), bg.path(4), 1)
    assert eqv.wl_equivalent(bg.petersen(), bg.petersen(), 1)


def test_wl2_separates_cycle_unions():
    six = bg.cycle(6)
    two_threes = bg.disjoint_union(bg.cycle(3), bg.cycle(3))
    assert not eqv.wl_equivalent(six, two_threes, 2)


def test_wl_boundary_table():
    for base, tw in ((bg.path(3), 1), (bg.cycle(5), 2), (bg.complete(4), 3)):
        for colored in (False, True):
            y = cfi.build_cfi(base, colored)
            yt = cfi.build_tilde(base, colored)
            for k in (2, 3, 4):
                got = eqv.wl_equivalent(y.graph, yt.graph, k - 1, y.colors, yt.colors)
                assert got == (tw >= k), (base, colored, k)


def test_wl_relabel_invariance():
    rng = random.Random(11)
    y = cfi.build_cfi(bg.cycle(5)).graph
    yt = cfi.build_tilde(bg.cycle(5)).graph
    for dim in (1, 2):
        want = eqv.wl_equivalent(y, yt, dim)
        perm = list(range(yt.n))
        rng.shuffle(perm)
        assert eqv.wl_equivalent(y, yt.relabel(perm), dim) == want


def test_counting_implies_plain():
    # wherever WL at dim k-1 says equivalent, the k-variable fixpoint must too
    pairs = []
    for base in (bg.path(3), bg.cycle(4)):
        for colored in (False, True):
            y = cfi.build_cfi(base, colored)
            yt = cfi.build_tilde(base, colored)
            pairs.append((y.graph, yt.graph, y.colors, yt.colors))
    for g1, g2, c1, c2 in pairs:
        for k in (2, 3):
            if eqv.wl_equivalent(g1, g2, k - 1, c1, c2):
                assert eqv.lk_equivalent(g1, g2, k, c1, c2)


def test_colored_game_equals_plain_fixpoint_on_cfi():
    # with colors, the k-variable game and the counting game coincide on
    # twisted pairs: check the biconditional at k in {2, 3}
    for base in (bg.path(3), bg.cycle(4)):
        x = cfi.build_cfi(base, True)
        xt = cfi.build_tilde(base, True)
        for k in (2, 3):
            lk = eqv.lk_equivalent(x.graph, xt.graph, k, x.colors, xt.colors)
            ck = eqv.wl_equivalent(x.graph, xt.graph, k - 1, x.colors, xt.colors)
            assert lk == ck, (base, k)


def test_game_oracle_small():
    c3 = bg.cycle(3)
    two = bg.disjoint_union(c3, c3)
    six = bg.cycle(6)
    assert eqv.ck_equivalent_game(two, six, 2)
    assert not eqv.ck_equivalent_game(two, six, 3)
    assert eqv.ck_equivalent_game(six, six, 3)
    assert not eqv.ck_equivalent_game(bg.path(2), bg.path(3), 2)  # size mismatch


def test_game_oracle_agrees_with_wl():
    for base in (bg.path(3), bg.cycle(4)):
        for colored in (False, True):
            y = cfi.build_cfi(base, colored)
            yt = cfi.build_tilde(base, colored)
            for k in (2, 3):
                game = eqv.ck_equivalent_game(y.graph, yt.graph, k, y.colors, yt.colors)
                wl = eqv.wl_equivalent(y.graph, yt.graph, k - 1, y.colors, yt.colors)
                assert game == wl, (base, colored, k)


def test_game_guards():
    with pytest.raises(SizeGuardError):
        eqv.ck_equivalent_game(bg.path(3), bg.path(3), 4)
    big = cfi.build_cfi(bg.petersen()).graph
    with pytest.raises(SizeGuardError):
        eqv.ck_equivalent_game(big, big, 3)


def test_end_distance_profile():
    assert eqv.end_distance_profile(bg.path(4)) == Counter({0: 2, 1: 2, 2: 1})
    assert eqv.end_distance_profile(bg.path(1)) == Counter({0: 2})
    # even path length: the twisted pair differs already at the raw histogram
    y = cfi.build_cfi(bg.path(4)).graph
    yt = cfi.build_tilde(bg.path(4)).graph
    py, pt = eqv.end_distance_profile(y), eqv.end_distance_profile(yt)
    assert max(py) == 6 and max(pt) == 5
    assert py != pt
    # odd path length: raw histograms coincide (two center vertices on each
    # side); the counting separation needs one more refinement level, which
    # color refinement supplies
    y3 = cfi.build_cfi(bg.path(3)).graph
    yt3 = cfi.build_tilde(bg.path(3)).graph
    assert eqv.end_distance_profile(y3) == eqv.end_distance_profile(yt3)
    assert not eqv.wl_equivalent(y3, yt3, 1)
    with pytest.raises(ValueError):
        eqv.end_distance_profile(bg.cycle(4))


def test_reports_round_counts():
    rep = eqv.wl_equivalent_report(bg.cycle(5), bg.cycle(5), 1)
    assert rep.equivalent and len(rep.rounds) >= 1
    rep = eqv.lk_equivalent_report(bg.path(3), bg.path(9), 2)
    assert rep.equivalent and rep.rounds[-1] >= rep.rounds[0]


def test_lk_relabel_invariance():
    rng = random.Random(23)
    y = cfi.build_cfi(bg.path(4)).graph
    yt = cfi.build_tilde(bg.path(4)).graph
    want = eqv.lk_equivalent(y, yt, 2)
    perm = list(range(yt.n))
    rng.shuffle(perm)
    assert eqv.lk_equivalent(y, yt.relabel(perm), 2) == want


def test_record_uncolored_three_variable_relation():
    # whether plain 3-variable equivalence implies the counting version on
    # uncolored twisted pairs is open; record both verdicts, assert neither
    recorded = {}
    for name, base in (("P3", bg.path(3)), ("C4", bg.cycle(4))):
        y = cfi.build_cfi(base).graph
        yt = cfi.build_tilde(base).graph
        recorded[name] = {
            "lk3": eqv.lk_equivalent(y, yt, 3),
            "ck3": eqv.wl_equivalent(y, yt, 2),
        }
    print(f"uncolored 3-variable record: {recorded}")
    for entry in recorded.values():
        assert isinstance(entry["lk3"], bool) and isinstance(entry["ck3"], bool)


def naive_lk_game(g1, g2, k, colors1=None, colors2=None):
    """Explicit position-space fixpoint of the k-pebble game; tiny scale only.

    Positions are partial isomorphisms of size <= k (as frozen pair sets);
    a position of size < k survives iff every placement on either side has a
    reply staying in the surviving family; larger positions shed a pair
    first.  With downward closure, checking extensions from sizes < k
    suffices.  Verdict: the empty position survives.
    """
    c1 = colors1 or [0] * g1.n
    c2 = colors2 or [0] * g2.n

    def partial_iso(pairs):
        for (u1, v1) in pairs:
            if c1[u1] != c2[v1]:
                return False
            for (u2, v2) in pairs:
                if (u1 == u2) != (v1 == v2):
                    return False
                if u1 < u2 or (u1 == u2 and v1 < v2):
                    if g1.has_edge(u1, u2) != g2.has_edge(v1, v2):
                        return False
        return True

    from itertools import combinations, product

    alive = set()
    all_pairs = list(product(range(g1.n), range(g2.n)))
    for size in range(k + 1):
        for pairs in combinations(all_pairs, size):
            h = frozenset(pairs)
            if len(h) == size and partial_iso(h):
                alive.add(h)

    changed = True
    while changed:
        changed = False
        for h in sorted(alive, key=len):
            if len(h) >= k:
                continue
            ok = all(
                any(h | {(x, y)} in alive for y in range(g2.n)) for x in range(g1.n)
            ) and all(
                any(h | {(x, y)} in alive for x in range(g1.n)) for y in range(g2.n)
            )
            if not ok:
                # downward closure: kill the position and all supersets
                dead = {g for g in alive if h <= g}
                alive -= dead
                changed = True
                break
    return frozenset() in alive


@st.composite
def tiny_graph_pairs(draw):
    def one(n):
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        edges = draw(st.lists(st.sampled_from(pairs), unique=True,
                              max_size=len(pairs))) if pairs else []
        return bg.BaseGraph.from_edges(n, edges)

    n1 = draw(st.integers(1, 4))
    n2 = draw(st.integers(1, 4))
    return one(n1), one(n2)


@hypothesis.settings(max_examples=60, deadline=None)
@hypothesis.given(tiny_graph_pairs(), st.integers(1, 3))
def test_lk_refinement_matches_naive_game(pair, k):
    g1, g2 = pair
    assert eqv.lk_equivalent(g1, g2, k) == naive_lk_game(g1, g2, k)


@st.composite
def small_graph_pairs_same_size(draw):
    n = draw(st.integers(2, 6))

    def one():
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        edges = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs)))
        return bg.BaseGraph.from_edges(n, edges)

    return one(), one()


@hypothesis.settings(max_examples=40, deadline=None)
@hypothesis.given(small_graph_pairs_same_size(), st.integers(2, 3))
def test_game_oracle_matches_wl_on_random_pairs(pair, k):
    g1, g2 = pair
    assert eqv.ck_equivalent_game(g1, g2, k) == eqv.wl_equivalent(g1, g2, k - 1)


@hypothesis.settings(max_examples=40, deadline=None)
@hypothesis.given(tiny_graph_pairs())
def test_hierarchy_monotonicity_random(pair):
    g1, g2 = pair
    lk = [eqv.lk_equivalent(g1, g2, k) for k in (1, 2, 3)]
    for more, fewer in ((lk[2], lk[1]), (lk[1], lk[0])):
        if more:
            assert fewer  # more variables can only separate more
    wl = [eqv.wl_equivalent(g1, g2, dim) for dim in (1, 2)]
    if wl[1]:
        assert wl[0]
    # counting subsumes the plain fragment at the same variable count
    for k in (2, 3):
        if eqv.wl_equivalent(g1, g2, k - 1):
            assert eqv.lk_equivalent(g1, g2, k)
