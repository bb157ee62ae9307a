import itertools
import random
from fractions import Fraction as F

import pytest

from powerdex.his import (Domain, IncrementError, LocalIncrement,
                          apply_box_increment, appendix_game,
                          build_by_increments, check_local_increment,
                          classify_face, corner_increase, his_delta,
                          implied_increment, potential_influence,
                          replay_appendix, table1_rows)
from powerdex.indices import psi_exact
from powerdex.rational import gain_constant, loss_constant
from powerdex.sampling import random_regular_game
from powerdex.stepfun import (Discretization, coarsen, make_regular_step,
                              pointwise_equal, refine, uniform_grid,
                              validate, zero_game)

APPENDIX_PSI = [
    ("u0", (F(1, 2), F(1, 2))),
    ("u1", (F(1, 2), F(1, 2))),
    ("u2", (F(1, 2), F(1, 2))),
    ("u3", (F(39, 80), F(41, 80))),
    ("u4", (F(36, 80), F(44, 80))),
    ("u5", (F(38, 80), F(42, 80))),
    ("u6", (F(11, 20), F(9, 20))),
    ("u7", (F(11, 20), F(9, 20))),
    ("u8", (F(43, 80), F(37, 80))),
    ("u9", (F(41, 80), F(39, 80))),
    ("u10", (F(37, 80), F(43, 80))),
    ("u11", (F(39, 80), F(41, 80))),
    ("u12", (F(41, 80), F(39, 80))),
    ("u13", (F(9, 16), F(7, 16))),
]


def test_potential_influence_examples(appendix):
    assert potential_influence(appendix, [1], [F(1, 8)]) == F(2, 5)
    assert potential_influence(appendix, [1, 2], []) == 1
    with pytest.raises(ValueError):
        potential_influence(appendix, [1], [F(1)])


def test_potential_influence_null_player():
    from powerdex.axioms import null_extension
    disc = Discretization((F(0), F(1, 2), F(1)))
    one = make_regular_step(disc, {(1,): F(1, 3), (3,): F(2, 3)}, 1)
    g = null_extension(one, 2)
    for x in (F(1, 4), F(1, 2), F(7, 8)):
        assert potential_influence(g, [2], [x]) == 0


def test_his_delta_examples():
    inc = LocalIncrement(2, frozenset({2}), F(1, 10), Domain.of({1: (0, F(1, 4))}))
    assert his_delta(inc).shares == (F(-1, 80), F(1, 80))
    empty = LocalIncrement(2, frozenset(), F(1, 10), Domain.unit_cube([1, 2]))
    assert his_delta(empty).shares == (F(0), F(0))
    for l in (2, 3, 5):
        inc3 = LocalIncrement(3, frozenset({1, 3}), F(1),
                              Domain.of({2: (0, F(1, l))}))
        assert his_delta(inc3).shares == (F(1, 6 * l), F(-1, 3 * l), F(1, 6 * l))


def test_his_delta_always_conserves(rng):
    for _ in range(100):
        n = rng.randrange(2, 6)
        size = rng.randrange(1, n)
        coalition = frozenset(rng.sample(range(1, n + 1), size))
        others = [i for i in range(1, n + 1) if i not in coalition]
        dom = Domain.of({i: sorted((F(rng.randrange(0, 5), 4),
                                    F(rng.randrange(0, 5), 4))) for i in others})
        inc = LocalIncrement(n, coalition, F(rng.randrange(-8, 9), 10), dom)
        assert sum(his_delta(inc).shares) == 0


def test_classify_face_examples():
    disc = uniform_grid(2)
    e_bar = (3, 1, 3)
    both = classify_face((4, 0, 3), e_bar, disc)
    assert both.his_sign == 0 and not both.matters is None
    top = classify_face((4, 1, 4), e_bar, disc)
    assert top.coalition == frozenset({1, 3}) and top.matters
    inc = implied_increment(top, F(1), 3)
    assert inc.domain.volume() == F(1, 2)
    inner_point = classify_face((2, 1, 3), e_bar, disc)
    assert inner_point.his_sign == 0 and not inner_point.matters
    # interior-pinned coordinate: classified with sign but zero volume
    low = classify_face((3, 0, 2), e_bar, disc)
    assert low.his_sign == -1 and low.coalition == frozenset({2})
    assert implied_increment(low, F(1), 3).domain.volume() == 0


def test_check_local_increment_appendix_move(appendix):
    u2 = refine(coarsen(appendix, Discretization((F(0), F(1, 4), F(1)))),
                Discretization((F(0), F(1, 4), F(1))))
    # rebuild u2 -> u3: +0.1 on the x2=1 edge over (0, 1/4)
    values = dict(u2.values)
    values[(1, 4)] = values[(1, 4)] + F(1, 10)
    values[(2, 4)] = values[(2, 4)] + F(1, 20)
    u3 = u2.with_tag("raw")
    u3 = type(u2)(u2.disc, 2, values, "raw")
    inc = LocalIncrement(2, frozenset({2}), F(1, 10), Domain.of({1: (0, F(1, 4))}))
    ok, witness = check_local_increment(u2, u3, inc)
    assert ok, witness
    # wrong epsilon is rejected with a witness
    bad = LocalIncrement(2, frozenset({2}), F(1, 5), Domain.of({1: (0, F(1, 4))}))
    ok, witness = check_local_increment(u2, u3, bad)
    assert not ok and witness["T"] == (2,)


def test_check_local_increment_identity_needs_zero_eps(appendix):
    zero = LocalIncrement(2, frozenset({1}), F(0), Domain.of({2: (0, 1)}))
    ok, _ = check_local_increment(appendix, appendix, zero)
    assert ok
    nonzero = LocalIncrement(2, frozenset({1}), F(1, 10), Domain.of({2: (0, 1)}))
    ok, witness = check_local_increment(appendix, appendix, nonzero)
    assert not ok and witness is not None


def test_apply_box_increment_table_case():
    base = make_regular_step(uniform_grid(2), {
        b: (F(1) if b[1] == 3 else F(0))
        for b in itertools.product((1, 3), repeat=3)}, 3)
    out, delta = apply_box_increment(base, (3, 1, 3), 1)
    assert delta.shares == (F(1, 6), F(-1, 3), F(1, 6))
    diff = [a - b for a, b in zip(psi_exact(out).shares, psi_exact(base).shares)]
    assert tuple(diff) == delta.shares
    assert validate(out).ok


def test_apply_box_increment_extreme_boxes_have_no_effect():
    disc = uniform_grid(2)
    lowest = make_regular_step(disc, {
        b: (F(0) if b == (1, 1) else F(1, 2))
        for b in itertools.product((1, 3), repeat=2)}, 2)
    out, delta = apply_box_increment(lowest, (1, 1), F(1, 2))
    assert delta.shares == (F(0), F(0))
    assert psi_exact(out) == psi_exact(lowest)
    highest = make_regular_step(disc, {
        b: (F(1, 2) if b == (3, 3) else F(0))
        for b in itertools.product((1, 3), repeat=2)}, 2)
    out, delta = apply_box_increment(highest, (3, 3), F(1, 4))
    assert delta.shares == (F(0), F(0))


def test_apply_box_increment_phase_one_keeps_half_half():
    z = zero_game(2)
    out, delta = apply_box_increment(z, (1, 1), F(1, 10))
    assert delta.shares == (F(0), F(0))
    assert psi_exact(out).shares == (F(1, 2), F(1, 2))
    assert out.values[(1, 1)] == F(1, 10)
    assert out.values[(0, 0)] == 0 and out.values[(2, 2)] == 1


def test_apply_box_increment_rejects_monotonicity_breaks():
    z = zero_game(2)
    g = refine(z, Discretization((F(0), F(1, 2), F(1)))).with_tag("regular")
    with pytest.raises(IncrementError):
        apply_box_increment(g, (1, 3), F(1, 2))


def test_his_consistency_random_increments(rng):
    trials = 0
    while trials < 40:
        n = rng.randrange(2, 5)
        p = rng.randrange(1, 4) if n < 4 else rng.randrange(1, 3)
        g = random_regular_game(rng, n, p)
        box = tuple(rng.randrange(1, 2 * g.p, 2) for _ in range(n))
        room = [g.values[box[:i] + (box[i] + 2,) + box[i + 1:]] - g.values[box]
                for i in range(n) if box[i] + 2 <= 2 * g.p - 1]
        top = min(room) if room else 1 - g.values[box]
        if top <= 0:
            continue
        eps = top * F(rng.randrange(1, 4), 3)
        out, delta = apply_box_increment(g, box, eps)
        diff = tuple(a - b for a, b in
                     zip(psi_exact(out).shares, psi_exact(g).shares))
        assert diff == delta.shares
        assert sum(delta.shares) == 0
        trials += 1


def test_box_increment_interior_box_has_zero_delta():
    disc = Discretization((F(0), F(1, 4), F(1, 2), F(1)))
    ladder = {b: F(sum(b), 12) for b in itertools.product((1, 3, 5), repeat=2)}
    g = make_regular_step(disc, ladder, 2)
    box = (3, 3)  # closure stays inside the open unit square
    out, delta = apply_box_increment(g, box, F(1, 12))
    assert delta.shares == (F(0), F(0))
    assert psi_exact(out) == psi_exact(g)


def test_corner_increase_closed_form_all_partitions():
    for n in range(2, 6):
        players = set(range(1, n + 1))
        for r in range(1, n):
            for union in itertools.combinations(sorted(players), r):
                U = set(union)
                L = players - U
                u = len(U)
                for i in sorted(players):
                    got = corner_increase(sorted(L), sorted(U), 1, 2, i)
                    if i in U:
                        assert got == gain_constant(u, n)
                    else:
                        assert got == -loss_constant(u, n)


def test_corner_increase_matches_box_increment():
    for l in (2, 3):
        for L, U in (([2], [1, 3]), ([1, 2], [3]), ([3], [1, 2])):
            n = 3
            e_bar = tuple(1 if i in L else 2 * l - 1 for i in range(1, n + 1))
            boxes = {}
            for b in itertools.product(range(1, 2 * l, 2), repeat=n):
                above = all(x >= y for x, y in zip(b, e_bar))
                boxes[b] = F(1) if above and b != e_bar else F(0)
            base = make_regular_step(uniform_grid(l), boxes, n)
            out, delta = apply_box_increment(base, e_bar, 1)
            expected = tuple(corner_increase(L, U, 1, l, i)
                             for i in range(1, n + 1))
            assert delta.shares == expected


def test_table1_rows_exact():
    for l in (2, 3):
        rows = table1_rows(l, 1)
        by_s = {r["S"]: r for r in rows}
        assert len(rows) == 4
        assert by_s[(1, 3)]["vol"] == F(1, l)
        assert by_s[(1, 3)]["delta"] == (F(1, 6 * l), F(-1, 3 * l), F(1, 6 * l))
        assert by_s[(1,)]["delta"] == (F(1, 3 * l * l), F(-1, 6 * l * l),
                                       F(-1, 6 * l * l))
        assert by_s[(3,)]["delta"] == (F(-1, 6 * l * l), F(-1, 6 * l * l),
                                       F(1, 3 * l * l))
        assert by_s[(2,)]["delta"] == (F(1, 6 * l * l), F(-1, 3 * l * l),
                                       F(1, 6 * l * l))


def test_build_by_increments_appendix(appendix):
    result = build_by_increments(appendix)
    assert result.psi == (F(9, 16), F(7, 16))
    assert result.final.values == appendix.values
    phase2 = [s for s in result.steps if s.phase == 2][-1]
    assert phase2.psi == (F(11, 20), F(9, 20))
    # each phase ends on the coarsening of the target
    by_phase = {}
    for s in result.steps:
        by_phase[s.phase] = s
    # zero game: all increments vanish
    z = zero_game(2)
    rz = build_by_increments(z)
    assert all(s.eps == 0 for s in rz.steps)
    assert rz.psi == (F(1, 2), F(1, 2))


def test_build_phase_ends_at_coarsening(appendix):
    # replicate the loop, stopping after phase 2
    from powerdex.his import _phase_grid
    result = build_by_increments(appendix)
    partial = zero_game(2)
    for s in result.steps:
        if s.phase > 2:
            break
        grid = _phase_grid(appendix.disc.alpha, s.phase)
        partial = refine(partial, grid).with_tag("regular")
        if s.eps > 0:
            partial, _ = apply_box_increment(partial, s.box, s.eps)
    expected = coarsen(appendix, Discretization((F(0), F(1, 4), F(1))))
    assert pointwise_equal(partial, expected)


def test_build_order_independence(appendix, rng):
    def random_descending(boxes):
        remaining = list(boxes)
        out = []
        while remaining:
            maximal = [b for b in remaining
                       if not any(all(x >= y for x, y in zip(o, b)) and o != b
                                  for o in remaining)]
            pick = rng.choice(maximal)
            out.append(pick)
            remaining.remove(pick)
        return out

    games = [appendix] + [random_regular_game(rng, 2, 3) for _ in range(3)]
    for g in games:
        lex = build_by_increments(g)
        for _ in range(2):
            alt = build_by_increments(g, box_order=random_descending)
            assert alt.final.values == lex.final.values
            assert alt.psi == lex.psi


def test_replay_appendix_golden():
    result = replay_appendix()
    assert result.initial_psi == APPENDIX_PSI[0][1]
    assert len(result.moves) == 13
    for move, (_, expected) in zip(result.moves, APPENDIX_PSI[1:]):
        assert move.psi_his == expected
        assert move.psi_exact == expected
        assert move.check_ok
        assert sum(move.psi_his) == 1  # no efficiency leak along the way
    assert result.final_matches_target
    assert result.tracks_agree
    assert psi_exact(result.final).shares == (F(9, 16), F(7, 16))


def test_replay_moves_match_printed_parameters():
    result = replay_appendix()
    listed = [(sorted(m.increment.coalition), m.increment.epsilon)
              for m in result.moves]
    assert listed == [
        ([], F(1, 10)),
        ([1, 2], F(1, 2)),
        ([2], F(1, 10)), ([1], F(-1, 10)),
        ([1], F(1, 5)), ([2], F(-1, 5)),
        ([1, 2], F(3, 10)),
        ([2], F(1, 10)),
        ([2], F(1, 5)), ([1], F(-1, 5)),
        ([1], F(1, 5)),
        ([1], F(1, 5)), ([2], F(-1, 5)),
    ]

def test_replay_submove_totals_match_box_increments():
    """The grouped-move and per-box granularities agree box by box."""
    result = replay_appendix()
    psi_track = [result.initial_psi] + [m.psi_his for m in result.moves]
    move_deltas = [tuple(b - a for a, b in zip(prev, cur))
                   for prev, cur in zip(psi_track, psi_track[1:])]
    # moves per box in replay order
    replay_boxes = [((1, 1), 1), ((3, 3), 1), ((1, 3), 2), ((3, 1), 2),
                    ((5, 5), 1), ((3, 5), 1), ((1, 5), 2), ((5, 3), 1),
                    ((5, 1), 2)]
    totals = {}
    pos = 0
    for box, count in replay_boxes:
        chunk = move_deltas[pos:pos + count]
        totals[box] = tuple(sum(col) for col in zip(*chunk))
        pos += count
    build = build_by_increments(appendix_game())
    for step in build.steps:
        assert totals[step.box] == step.delta
