"""Power indices: the classical ordering-based index for coalition games,
its (j,k)-level generalizations, and the boundary-average index for games on
the unit cube (exact on step games, Monte-Carlo for black boxes).

Everything except the Monte-Carlo estimator is exact rational arithmetic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Sequence

import numpy as np

from .coalitions import CoalitionFunction, JKGame, SimpleGame
from .evaluables import EvaluableGame, step_game_evaluable
from .rational import ordering_weight
from .stepfun import StepGame

MAX_EXACT_PSI_PLAYERS = 6
MAX_ROLL_CALL_PLAYERS = 8
MAX_POINT_PLAYERS = 8
MAX_ORACLE_PLAYERS = 12


@dataclass
class PowerVector:
    """Per-player shares, exact rationals or MC estimates with errors."""

    shares: tuple
    mode: str = "exact"
    stderr: tuple | None = None
    samples: int | None = None
    seed: int | None = None
    c_table: dict | None = field(default=None, repr=False)

    @property
    def n(self) -> int:
        return len(self.shares)

    def total(self):
        return sum(self.shares)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, PowerVector):
            return self.mode == other.mode and self.shares == other.shares
        return tuple(self.shares) == tuple(other)


@dataclass
class BoundaryAverages:
    """The table T -> C(v, T): average outcome gap between coalition T at
    full support and at no support, keyed by coalition bitmask."""

    n: int
    table: dict[int, Fraction]

    def get(self, players) -> Fraction:
        mask = sum(1 << (i - 1) for i in players)
        return self.table[mask]


def _exact(shares) -> PowerVector:
    return PowerVector(tuple(Fraction(s) for s in shares), "exact")


def psi_from_c(c: dict[int, Fraction], n: int) -> PowerVector:
    """Combine a C-table with the ordering weights (s-1)!(n-s)!/n!."""
    shares = []
    for i in range(n):
        bit = 1 << i
        acc = Fraction(0)
        for s_mask in range(1 << n):
            if s_mask & bit:
                s = s_mask.bit_count()
                acc += ordering_weight(s, n) * (c[s_mask] - c[s_mask ^ bit])
        shares.append(acc)
    return _exact(shares)


# ---------------------------------------------------------------------------
# finite games

def ssi_coalition(v: CoalitionFunction | SimpleGame) -> PowerVector:
    """Ordering-based index from the coalition table; monotonicity is not
    required, so negative shares are possible for non-monotone inputs."""
    cf = v.inner if isinstance(v, SimpleGame) else v
    n = cf.n
    shares = [Fraction(0)] * n
    for mask in range(1, 1 << n):
        s = mask.bit_count()
        w = ordering_weight(s, n)
        for i in range(n):
            bit = 1 << i
            if mask & bit:
                diff = cf.values[mask] - cf.values[mask ^ bit]
                if diff:
                    shares[i] += w * diff
    return _exact(shares)


def ssi_roll_call(v: SimpleGame, vote_model: str = "all_yes") -> PowerVector:
    """Exact pivot-count average over all orderings of the voters.

    ``all_yes``: everyone votes yes and the pivot makes the coalition win.
    ``uniform_half``: all vote vectors weighted equally; the pivot is the
    first voter whose vote settles the outcome.
    """
    n = v.n
    if n > MAX_ROLL_CALL_PLAYERS:
        raise ValueError(f"roll call enumeration capped at n <= {MAX_ROLL_CALL_PLAYERS}")
    vals = v.inner.values
    counts = [0] * n
    full = (1 << n) - 1
    if vote_model == "all_yes":
        for pi in itertools.permutations(range(n)):
            m = 0
            for pos in pi:
                m |= 1 << pos
                if vals[m] == 1:
                    counts[pos] += 1
                    break
        return _exact(Fraction(c, factorial(n)) for c in counts)
    if vote_model == "uniform_half":
        for pi in itertools.permutations(range(n)):
            for x in range(1 << n):
                yes, rest = 0, full
                for pos in pi:
                    bit = 1 << pos
                    rest ^= bit
                    if x & bit:
                        yes |= bit
                    if vals[yes] == vals[yes | rest]:
                        counts[pos] += 1
                        break
        return _exact(Fraction(c, factorial(n) * (1 << n)) for c in counts)
    raise ValueError(f"unknown vote model {vote_model!r}")


def jk_ssi_pivot(v: JKGame) -> PowerVector:
    """Index by roll-call uncertainty reduction: each voter is credited with
    the number of output levels their vote rules out, over all orderings and
    approval profiles."""
    n, j, k = v.n, v.j, v.k
    if factorial(n) * j ** n > 200_000:
        raise ValueError("pivot enumeration exceeds the desk-scale cap")
    counts = [0] * n
    for pi in itertools.permutations(range(n)):
        for x in itertools.product(range(j), repeat=n):
            lo_prof = [0] * n
            hi_prof = [j - 1] * n
            lo, hi = 0, k - 1
            for pos in pi:
                lo_prof[pos] = x[pos]
                hi_prof[pos] = x[pos]
                new_lo = v.values[tuple(lo_prof)]
                new_hi = v.values[tuple(hi_prof)]
                counts[pos] += (hi - lo) - (new_hi - new_lo)
                lo, hi = new_lo, new_hi
    denom = factorial(n) * j ** n * (k - 1)
    return _exact(Fraction(c, denom) for c in counts)


def jk_boundary_averages(v: JKGame) -> dict[int, Fraction]:
    """Discrete C(v,T): mean gap between full and zero approval of T."""
    n, j, k = v.n, v.j, v.k
    c: dict[int, Fraction] = {0: Fraction(0)}
    for t_mask in range(1, 1 << n):
        free = [i for i in range(n) if not t_mask >> i & 1]
        total = 0
        for xf in itertools.product(range(j), repeat=len(free)):
            hi = [j - 1] * n
            lo = [0] * n
            for i, xi in zip(free, xf):
                hi[i] = xi
                lo[i] = xi
            total += v.values[tuple(hi)] - v.values[tuple(lo)]
        c[t_mask] = Fraction(total, j ** len(free) * (k - 1))
    return c


def jk_ssi_marginal(v: JKGame) -> PowerVector:
    """Same index through the discrete C-table instead of pivot counting."""
    return psi_from_c(jk_boundary_averages(v), v.n)


# ---------------------------------------------------------------------------
# step games

def boundary_averages(g: StepGame) -> BoundaryAverages:
    """Exact C(v,T) for a step game: for each box of the grid restricted to
    the free coordinates, its volume times the gap between the face with T
    pinned to 1 and the face with T pinned to 0."""
    n, p = g.n, g.p
    table: dict[int, Fraction] = {0: Fraction(0)}
    widths = [g.disc.alpha[h + 1] - g.disc.alpha[h] for h in range(p)]
    for t_mask in range(1, 1 << n):
        free = [i for i in range(n) if not t_mask >> i & 1]
        acc = Fraction(0)
        for box in itertools.product(range(1, 2 * p, 2), repeat=len(free)):
            hi = [2 * p] * n
            lo = [0] * n
            vol = Fraction(1)
            for i, b in zip(free, box):
                hi[i] = b
                lo[i] = b
                vol *= widths[(b - 1) // 2]
            acc += vol * (g.values[tuple(hi)] - g.values[tuple(lo)])
        table[t_mask] = acc
    return BoundaryAverages(n, table)


def psi_exact(g: StepGame) -> PowerVector:
    """Exact index of a step game via its boundary averages.  Only values on
    faces touching the cube boundary enter, so raw and semi-regular tables
    are accepted as-is."""
    if g.n > MAX_EXACT_PSI_PLAYERS:
        raise ValueError(f"exact index capped at n <= {MAX_EXACT_PSI_PLAYERS}")
    c = boundary_averages(g).table
    out = psi_from_c(c, g.n)
    out.c_table = c
    return out


def phi_two_player(a: Sequence, v: StepGame) -> PowerVector:
    """The two-voter family Phi^a_i = a_i + a_j C(v,{i}) - a_i C(v,{j})."""
    if v.n != 2:
        raise ValueError("defined for two-player games only")
    a1, a2 = (Fraction(x) for x in a)
    if a1 < 0 or a2 < 0 or a1 + a2 != 1:
        raise ValueError("parameters must be nonnegative and sum to 1")
    c = boundary_averages(v)
    c1, c2 = c.table[0b01], c.table[0b10]
    return _exact((a1 + a2 * c1 - a1 * c2, a2 + a1 * c2 - a2 * c1))


# ---------------------------------------------------------------------------
# black-box games

def _as_evaluable(v: EvaluableGame | StepGame) -> EvaluableGame:
    return step_game_evaluable(v) if isinstance(v, StepGame) else v


def psi_point(v: EvaluableGame | StepGame, alpha) -> PowerVector:
    """The single-profile variant: the roll-call sum evaluated at the
    constant profile (alpha, ..., alpha) instead of integrating."""
    game = _as_evaluable(v)
    n = game.n
    if n > MAX_POINT_PLAYERS:
        raise ValueError(f"point variant capped at n <= {MAX_POINT_PLAYERS}")
    a = Fraction(alpha)
    if a < 0 or a > 1:
        raise ValueError("alpha must lie in [0, 1]")
    memo: dict[tuple, Fraction] = {}

    def val(ones: int, zeros: int) -> Fraction:
        pt = tuple(Fraction(1) if ones >> i & 1 else
                   Fraction(0) if zeros >> i & 1 else a for i in range(n))
        if pt not in memo:
            memo[pt] = game.eval_exact(pt)
        return memo[pt]

    shares = [Fraction(0)] * n
    for pi in itertools.permutations(range(n)):
        rest = (1 << n) - 1
        for pos in pi:
            bit = 1 << pos
            after = rest ^ bit
            shares[pos] += (val(rest, 0) - val(0, rest)) - \
                           (val(after, 0) - val(0, after))
            rest = after
    nf = factorial(n)
    return _exact(s / nf for s in shares)


def psi_mc(v: EvaluableGame | StepGame, samples: int, seed: int,
           sampler=None) -> PowerVector:
    """Monte-Carlo estimate of the boundary-average index.

    One common batch of sample points serves every coalition T, which keeps
    the C-differences strongly correlated and the estimator variance low.
    ``sampler(rng, m, n)`` may supply points from an exchangeable density
    instead of the uniform default.  Deterministic for a given seed.
    """
    game = _as_evaluable(v)
    n = game.n
    if samples < 1:
        raise ValueError("need at least one sample")
    rng = np.random.default_rng(seed)
    pts = rng.random((samples, n)) if sampler is None else \
        np.asarray(sampler(rng, samples, n), dtype=np.float64)
    deltas: dict[int, np.ndarray] = {0: np.zeros(samples)}
    for t_mask in range(1, 1 << n):
        cols = [i for i in range(n) if t_mask >> i & 1]
        hi = pts.copy()
        lo = pts.copy()
        hi[:, cols] = 1.0
        lo[:, cols] = 0.0
        deltas[t_mask] = game.eval_array(hi) - game.eval_array(lo)
    estimates, errors = [], []
    for i in range(n):
        bit = 1 << i
        g_i = np.zeros(samples)
        for s_mask in range(1 << n):
            if s_mask & bit:
                w = float(ordering_weight(s_mask.bit_count(), n))
                g_i += w * (deltas[s_mask] - deltas[s_mask ^ bit])
        estimates.append(float(g_i.mean()))
        spread = float(g_i.std(ddof=1)) if samples > 1 else 0.0
        errors.append(spread / samples ** 0.5)
    c_est = {m: float(d.mean()) for m, d in deltas.items()}
    return PowerVector(tuple(estimates), "mc", tuple(errors),
                       samples=samples, seed=seed, c_table=c_est)


def psi_product_oracle(exponents: Sequence) -> PowerVector:
    """Closed form for v(x) = prod x_i^{a_i} with positive exponents:
    Psi_i = ((n-1)! + a_i * sum_{T not containing i} |T|!(n-1-|T|)! *
    prod_{j in T}(a_j+1)) / (n! * prod_j (a_j+1))."""
    a = [Fraction(e) for e in exponents]
    n = len(a)
    if n > MAX_ORACLE_PLAYERS:
        raise ValueError(f"oracle capped at n <= {MAX_ORACLE_PLAYERS}")
    if any(e <= 0 for e in a):
        raise ValueError("exponents must be positive")
    lam = Fraction(1)
    for e in a:
        lam *= e + 1
    shares = []
    for i in range(n):
        others = [x for k, x in enumerate(a) if k != i]
        acc = Fraction(0)
        for t_mask in range(1 << (n - 1)):
            t = t_mask.bit_count()
            prod = Fraction(1)
            for k in range(n - 1):
                if t_mask >> k & 1:
                    prod *= others[k] + 1
            acc += factorial(t) * factorial(n - 1 - t) * prod
        shares.append((factorial(n - 1) + a[i] * acc) / (factorial(n) * lam))
    return _exact(shares)
