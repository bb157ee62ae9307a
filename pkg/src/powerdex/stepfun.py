"""Step functions on rectangular pavings of the unit cube.

A grid is a strictly increasing breakpoint vector alpha = (0, a_1, ..., 1).
Faces of the paving are encoded with doubled integer coordinates
d_i in {0, ..., 2p}: even d_i means coordinate i is pinned to the breakpoint
alpha[d_i/2], odd d_i means it ranges over the open interval
(alpha[(d_i-1)/2], alpha[(d_i+1)/2]).  The face dimension is the number of
odd entries; all-odd faces are the open boxes.

The doubled encoding makes the "exists x <= y" comparability between two
faces coincide with componentwise <= on the encodings (points are closed,
intervals open), so monotonicity reduces to cover relations d -> d + e_i.

A step game stores one rational value per face of the grid, densely; desk
scale is capped at n <= 6 players and ~2M table entries.
"""

from __future__ import annotations

import itertools
from bisect import bisect_left
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

Face = tuple[int, ...]

MAX_STEP_PLAYERS = 6
MAX_TABLE_ENTRIES = 2_000_000
MAX_GRID_P = 5

TAG_RAW = "raw"
TAG_SEMI_REGULAR = "semi_regular"
TAG_REGULAR = "regular"
_TAGS = (TAG_RAW, TAG_SEMI_REGULAR, TAG_REGULAR)


@dataclass(frozen=True)
class Discretization:
    """Breakpoints 0 = alpha_0 < alpha_1 < ... < alpha_p = 1."""

    alpha: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        alpha = tuple(Fraction(a) for a in self.alpha)
        object.__setattr__(self, "alpha", alpha)
        if len(alpha) < 2:
            raise ValueError("need at least the breakpoints 0 and 1")
        if alpha[0] != 0 or alpha[-1] != 1:
            raise ValueError("breakpoints must start at 0 and end at 1")
        if any(a >= b for a, b in zip(alpha, alpha[1:])):
            raise ValueError("breakpoints must be strictly increasing")

    @property
    def p(self) -> int:
        return len(self.alpha) - 1

    def mesh(self) -> Fraction:
        """Largest gap between consecutive breakpoints."""
        return max(b - a for a, b in zip(self.alpha, self.alpha[1:]))

    def is_refinement_of(self, other: "Discretization") -> bool:
        return set(other.alpha) <= set(self.alpha)

    def merge(self, other: "Discretization") -> "Discretization":
        return Discretization(tuple(sorted(set(self.alpha) | set(other.alpha))))

    def coord_region(self, d: int) -> tuple[Fraction, Fraction, bool]:
        """(lo, hi, is_point) of the region encoded by doubled coordinate d."""
        if not 0 <= d <= 2 * self.p:
            raise ValueError(f"doubled coordinate {d} outside 0..{2 * self.p}")
        if d % 2 == 0:
            a = self.alpha[d // 2]
            return a, a, True
        return self.alpha[(d - 1) // 2], self.alpha[(d + 1) // 2], False


def uniform_grid(l: int) -> Discretization:
    """alpha = (0, 1/l, ..., 1)."""
    return Discretization(tuple(Fraction(h, l) for h in range(l + 1)))


def face_center(disc: Discretization, d: Face) -> tuple[Fraction, ...]:
    out = []
    for di in d:
        lo, hi, _ = disc.coord_region(di)
        out.append((lo + hi) / 2)
    return tuple(out)


def adjacent_boxes(d: Face, p: int) -> list[Face]:
    """E(d): the full-dimensional boxes whose closure contains face d."""
    choices = []
    for di in d:
        if di % 2 == 1:
            choices.append((di,))
        else:
            opts = tuple(c for c in (di - 1, di + 1) if 1 <= c <= 2 * p - 1)
            choices.append(opts)
    return [tuple(c) for c in itertools.product(*choices)]


class StepGame:
    """A step function given by a total face-value table on a shared grid."""

    def __init__(self, disc: Discretization, n: int,
                 values: dict[Face, Fraction], tag: str = TAG_RAW):
        if not 1 <= n <= MAX_STEP_PLAYERS:
            raise ValueError(f"player count must be in 1..{MAX_STEP_PLAYERS}")
        if tag not in _TAGS:
            raise ValueError(f"unknown tag {tag!r}")
        size = (2 * disc.p + 1) ** n
        if size > MAX_TABLE_ENTRIES:
            raise ValueError(f"face table with {size} entries exceeds desk scale")
        if len(values) != size:
            raise ValueError(f"face table must be total ({size} entries)")
        self.disc = disc
        self.n = n
        self.values = values
        self.tag = tag

    @property
    def p(self) -> int:
        return self.disc.p

    def faces(self) -> Iterator[Face]:
        return itertools.product(range(2 * self.p + 1), repeat=self.n)

    def boxes(self) -> Iterator[Face]:
        return itertools.product(range(1, 2 * self.p, 2), repeat=self.n)

    def value(self, d: Face) -> Fraction:
        return self.values[tuple(d)]

    def box_volume(self, d: Face) -> Fraction:
        vol = Fraction(1)
        for di in d:
            lo, hi, is_point = self.disc.coord_region(di)
            if is_point:
                return Fraction(0)
            vol *= hi - lo
        return vol

    def with_tag(self, tag: str) -> "StepGame":
        return StepGame(self.disc, self.n, self.values, tag)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, StepGame) and self.n == other.n
                and self.disc == other.disc and self.tag == other.tag
                and self.values == other.values)


def locate_face(disc: Discretization, x: Sequence) -> Face:
    """The unique face whose region contains the point x."""
    d = []
    for xi in x:
        xi = Fraction(xi)
        if xi < 0 or xi > 1:
            raise ValueError(f"coordinate {xi} outside [0, 1]")
        h = bisect_left(disc.alpha, xi)
        if disc.alpha[h] == xi:
            d.append(2 * h)
        else:
            d.append(2 * h - 1)
    return tuple(d)


def evaluate_step(g: StepGame, x: Sequence) -> Fraction:
    """Value of the step function at a point of the unit cube."""
    if len(x) != g.n:
        raise ValueError(f"point has {len(x)} coordinates, game has {g.n}")
    return g.values[locate_face(g.disc, x)]


def regular_completion(disc: Discretization, n: int,
                       box_values: dict[Face, Fraction]) -> dict[Face, Fraction]:
    """Total face table from box values: boundary faces take the mean of
    their adjacent boxes, the all-zeros/all-ones corners are pinned to 0/1."""
    p = disc.p
    values: dict[Face, Fraction] = {}
    for d in itertools.product(range(2 * p + 1), repeat=n):
        if all(di % 2 == 1 for di in d):
            values[d] = box_values[d]
            continue
        adj = adjacent_boxes(d, p)
        values[d] = sum(box_values[b] for b in adj) / len(adj)
    values[(0,) * n] = Fraction(0)
    values[(2 * p,) * n] = Fraction(1)
    return values


def make_regular_step(disc: Discretization, box_values: dict[Face, Fraction],
                      n: int | None = None) -> StepGame:
    """Regular step game from values on the full-dimensional boxes."""
    if disc.p > MAX_GRID_P:
        raise ValueError(f"desk scale caps the grid at p <= {MAX_GRID_P}")
    if n is None:
        if not box_values:
            raise ValueError("empty box table")
        n = len(next(iter(box_values)))
    boxes = list(itertools.product(range(1, 2 * disc.p, 2), repeat=n))
    table: dict[Face, Fraction] = {}
    for b in boxes:
        if b not in box_values:
            raise ValueError(f"missing value for box {b}")
        v = Fraction(box_values[b])
        if v < 0 or v > 1:
            raise ValueError(f"box value {v} outside [0, 1]")
        table[b] = v
    return StepGame(disc, n, regular_completion(disc, n, table), TAG_REGULAR)


def zero_game(n: int, disc: Discretization | None = None) -> StepGame:
    """The game worth 1 at the all-ones corner and 0 everywhere else."""
    if disc is None:
        disc = Discretization((Fraction(0), Fraction(1)))
    boxes = {b: Fraction(0)
             for b in itertools.product(range(1, 2 * disc.p, 2), repeat=n)}
    return make_regular_step(disc, boxes, n)


def refine(g: StepGame, disc2: Discretization) -> StepGame:
    """The same function re-indexed on a finer grid (raw tag)."""
    if not disc2.is_refinement_of(g.disc):
        raise ValueError("target grid must contain all breakpoints of the source")
    old_alpha = g.disc.alpha
    coord_map = []
    for d2 in range(2 * disc2.p + 1):
        if d2 % 2 == 0:
            a = disc2.alpha[d2 // 2]
            h = bisect_left(old_alpha, a)
            if h < len(old_alpha) and old_alpha[h] == a:
                coord_map.append(2 * h)
            else:
                coord_map.append(2 * h - 1)
        else:
            a = disc2.alpha[(d2 - 1) // 2]
            h = bisect_left(old_alpha, a)
            if h < len(old_alpha) and old_alpha[h] != a:
                h -= 1
            coord_map.append(2 * h + 1)
    values = {}
    for d in itertools.product(range(2 * disc2.p + 1), repeat=g.n):
        values[d] = g.values[tuple(coord_map[di] for di in d)]
    return StepGame(disc2, g.n, values, TAG_RAW)


def pointwise_equal(u: StepGame, v: StepGame) -> bool:
    if u.n != v.n:
        return False
    merged = u.disc.merge(v.disc)
    return refine(u, merged).values == refine(v, merged).values


def join_meet(u: StepGame, v: StepGame) -> tuple[StepGame, StepGame]:
    """Pointwise max and min of two games on their merged grid (raw tags)."""
    if u.n != v.n:
        raise ValueError("player counts differ")
    merged = u.disc.merge(v.disc)
    ru, rv = refine(u, merged), refine(v, merged)
    hi = {d: max(ru.values[d], rv.values[d]) for d in ru.faces()}
    lo = {d: min(ru.values[d], rv.values[d]) for d in ru.faces()}
    return (StepGame(merged, u.n, hi, TAG_RAW),
            StepGame(merged, u.n, lo, TAG_RAW))


def coarsen(v: StepGame, disc2: Discretization) -> StepGame:
    """Project onto a sub-grid, each coarse box taking the minimum of the
    fine boxes it covers; remaining faces by the regular completion."""
    if not v.disc.is_refinement_of(disc2):
        raise ValueError("target breakpoints must be a subset of the source")
    fine = v.disc.alpha
    spans = []
    for h in range(disc2.p):
        lo = fine.index(disc2.alpha[h])
        hi = fine.index(disc2.alpha[h + 1])
        spans.append([2 * t + 1 for t in range(lo, hi)])
    box_values = {}
    for cb in itertools.product(range(1, 2 * disc2.p, 2), repeat=v.n):
        covered = itertools.product(*(spans[(c - 1) // 2] for c in cb))
        box_values[cb] = min(v.values[b] for b in covered)
    return make_regular_step(disc2, box_values, v.n)


def permute_axes(g: StepGame, pi: Sequence[int]) -> StepGame:
    """(pi g)(x) = g(pi(x)) with pi(x)_i = x_{pi(i)}; pi is 1-based."""
    if sorted(pi) != list(range(1, g.n + 1)):
        raise ValueError("pi must be a permutation of 1..n")
    values = {}
    for d in g.faces():
        values[d] = g.values[tuple(d[pi[i] - 1] for i in range(g.n))]
    return StepGame(g.disc, g.n, values, g.tag)


@dataclass
class ValidationReport:
    """Outcome of the structural checks on a step game."""

    monotone: bool
    tag_ok: bool
    in_range: bool
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.monotone and self.tag_ok and self.in_range


def validate(g: StepGame) -> ValidationReport:
    """Check monotonicity, the claimed regularity tag and the value range.

    Monotonicity is checked over all comparable face pairs; with the doubled
    encoding comparability is componentwise <=, so cover pairs d -> d + e_i
    suffice.
    """
    violations: list[str] = []
    p = g.p
    in_range = True
    for d, val in g.values.items():
        if val < 0 or val > 1:
            in_range = False
            violations.append(f"value {val} at face {d} outside [0, 1]")
    monotone = True
    for d in g.faces():
        val = g.values[d]
        for i in range(g.n):
            if d[i] < 2 * p:
                up = d[:i] + (d[i] + 1,) + d[i + 1:]
                if val > g.values[up]:
                    monotone = False
                    violations.append(
                        f"monotonicity: value {val} at {d} exceeds "
                        f"{g.values[up]} at {up}")
    tag_ok = True
    if g.tag in (TAG_REGULAR, TAG_SEMI_REGULAR):
        corners = {(0,) * g.n, (2 * p,) * g.n}
        for d in g.faces():
            if all(di % 2 == 1 for di in d):
                continue
            if g.tag == TAG_REGULAR and d in corners:
                continue
            if g.tag == TAG_SEMI_REGULAR and any(di in (0, 2 * p) for di in d):
                continue
            adj = adjacent_boxes(d, p)
            mean = sum(g.values[b] for b in adj) / len(adj)
            if g.values[d] != mean:
                tag_ok = False
                violations.append(
                    f"{g.tag}: face {d} has {g.values[d]}, box mean is {mean}")
        if g.tag == TAG_REGULAR:
            if g.values[(0,) * g.n] != 0:
                tag_ok = False
                violations.append("regular: all-zeros corner must be 0")
            if g.values[(2 * p,) * g.n] != 1:
                tag_ok = False
                violations.append("regular: all-ones corner must be 1")
    return ValidationReport(monotone, tag_ok, in_range, violations)
