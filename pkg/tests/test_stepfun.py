import random
from fractions import Fraction as F

import pytest

from powerdex.sampling import random_regular_game
from powerdex.stepfun import (Discretization, adjacent_boxes,
                              coarsen, evaluate_step, join_meet,
                              make_regular_step, permute_axes,
                              pointwise_equal, refine, uniform_grid, validate,
                              zero_game)


def test_discretization_invariants():
    d = Discretization((F(0), F(1, 4), F(1, 2), F(1)))
    assert d.p == 3
    assert d.mesh() == F(1, 2)
    with pytest.raises(ValueError):
        Discretization((F(0), F(1, 2)))
    with pytest.raises(ValueError):
        Discretization((F(0), F(1, 2), F(1, 2), F(1)))


def test_regular_completion_examples(appendix):
    # the face at x1=1 over the top band averages the single adjacent box
    assert appendix.values[(6, 5)] == F(9, 10)
    # forced corners
    assert appendix.values[(6, 6)] == 1
    assert appendix.values[(0, 0)] == 0
    # point x1=1/2, x2 in (0,1/4): average of boxes worth 0.3 and 0.5
    assert appendix.values[(4, 1)] == F(2, 5)


def test_make_regular_step_rejects_bad_input():
    disc = Discretization((F(0), F(1)))
    with pytest.raises(ValueError):
        make_regular_step(disc, {(1,): F(3, 2)}, 1)
    with pytest.raises(ValueError):
        make_regular_step(disc, {}, 1)


def test_evaluate_step_examples(appendix):
    assert evaluate_step(appendix, (F(1, 8), F(3, 4))) == F(2, 5)
    assert evaluate_step(appendix, (1, 1)) == 1
    assert evaluate_step(appendix, (1, F(1, 8))) == F(1, 2)
    with pytest.raises(ValueError):
        evaluate_step(appendix, (F(9, 8), F(1, 2)))


def test_zero_game_shape():
    z = zero_game(2)
    assert z.values[(2, 2)] == 1
    assert all(v == 0 for d, v in z.values.items() if d != (2, 2))


def test_refine_is_pointwise_identity(appendix, rng):
    finer = Discretization((F(0), F(1, 8), F(1, 4), F(1, 2), F(1)))
    r = refine(appendix, finer)
    assert evaluate_step(r, (F(1, 16), F(1, 16))) == F(1, 10)
    for _ in range(1000):
        x = (F(rng.randrange(0, 33), 32), F(rng.randrange(0, 33), 32))
        assert evaluate_step(appendix, x) == evaluate_step(r, x)
    with pytest.raises(ValueError):
        refine(appendix, Discretization((F(0), F(1, 3), F(1))))


def test_refine_zero_game():
    z = zero_game(2)
    r = refine(z, Discretization((F(0), F(1, 2), F(1))))
    assert r.values[(4, 4)] == 1
    assert all(v == 0 for d, v in r.values.items() if d != (4, 4))


def test_coarsen_examples(appendix):
    half = coarsen(appendix, Discretization((F(0), F(1, 4), F(1))))
    assert half.values[(3, 3)] == F(3, 5)
    assert half.values[(1, 3)] == F(1, 5)
    assert half.values[(3, 1)] == F(3, 10)
    assert half.values[(1, 1)] == F(1, 10)
    single = coarsen(appendix, Discretization((F(0), F(1))))
    assert single.values[(1, 1)] == F(1, 10)
    # identity on the game's own grid
    assert coarsen(appendix, appendix.disc) == appendix


def test_refine_then_coarsen_round_trip(appendix):
    finer = Discretization((F(0), F(1, 8), F(1, 4), F(1, 2), F(1)))
    back = coarsen(refine(appendix, finer), appendix.disc)
    assert back.values == appendix.values


def test_join_meet_identities(appendix, rng):
    u = random_regular_game(rng, 2, 2)
    v = random_regular_game(rng, 2, 3)
    hi, lo = join_meet(u, v)
    ru = refine(u, hi.disc)
    rv = refine(v, hi.disc)
    for d in hi.faces():
        assert hi.values[d] >= max(ru.values[d], rv.values[d]) - 0  # max
        assert hi.values[d] + lo.values[d] == ru.values[d] + rv.values[d]
        assert lo.values[d] <= min(ru.values[d], rv.values[d])
    # idempotence
    hii, loo = join_meet(u, u)
    assert pointwise_equal(hii, u) and pointwise_equal(loo, u)
    # join with the all-or-nothing game changes nothing
    hi2, _ = join_meet(appendix, zero_game(2))
    assert pointwise_equal(hi2, appendix)


def test_validate_appendix_is_regular_monotone(appendix):
    report = validate(appendix)
    assert report.ok and report.monotone and report.tag_ok


def test_validate_flags_constructed_violation():
    disc = Discretization((F(0), F(1, 2), F(1)))
    g = make_regular_step(disc, {(1, 1): F(1, 2), (1, 3): F(3, 4),
                                 (3, 1): F(3, 4), (3, 3): F(1, 4)}, 2)
    report = validate(g)
    assert not report.monotone
    assert any("monotonicity" in v for v in report.violations)


def test_validate_zero_game_semi_regular():
    z = zero_game(2).with_tag("semi_regular")
    report = validate(z)
    assert report.ok


def test_regular_averaging_invariant(rng):
    for _ in range(20):
        g = random_regular_game(rng, rng.randrange(1, 4), rng.randrange(1, 4))
        corners = {(0,) * g.n, (2 * g.p,) * g.n}
        for d in g.faces():
            if all(di % 2 == 1 for di in d) or d in corners:
                continue
            adj = adjacent_boxes(d, g.p)
            assert g.values[d] * len(adj) == sum(g.values[b] for b in adj)
        assert validate(g).ok


def test_permute_axes_matches_point_permutation(appendix):
    pi = [2, 1]
    swapped = permute_axes(appendix, pi)
    x = (F(1, 8), F(3, 4))
    # (pi g)(x) = g(x_{pi(1)}, x_{pi(2)})
    assert evaluate_step(swapped, x) == evaluate_step(appendix, (x[1], x[0]))


def test_uniform_grid():
    assert uniform_grid(4).alpha == (F(0), F(1, 4), F(1, 2), F(3, 4), F(1))
