"""GCN(h; S1..Sn) game specifications, positions and moves."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from nimhoff.config import HEAP_CAP
from nimhoff.errors import SetSpecError
from nimhoff.sets import SpecParser, SubtractionSet, render_set_spec

Position = tuple[int, ...]


@dataclass(frozen=True)
class GcnSpec:
    """Cyclic bound ``h`` plus one subtraction set per heap."""

    h: int
    sets: tuple[SubtractionSet, ...]

    def __post_init__(self):
        object.__setattr__(self, "sets", tuple(self.sets))
        if self.h < 1:
            raise ValueError(f"h must be >= 1, got {self.h}")
        if not self.sets:
            raise ValueError("a GCN game needs at least one heap")

    @property
    def n(self) -> int:
        return len(self.sets)

    def __str__(self) -> str:
        return render_game_spec(self)


@dataclass(frozen=True)
class Move:
    """Per-heap removal amounts.  ``heap`` is the 0-based heap of a single-heap
    move, or ``None`` for a cyclic move."""

    removals: tuple[int, ...]
    heap: int | None = None

    @property
    def kind(self) -> str:
        return "cyclic" if self.heap is None else "single"

    def apply(self, pos: Sequence[int]) -> Position:
        return tuple(x - s for x, s in zip(pos, self.removals))

    def describe(self) -> str:
        if self.heap is None:
            return "cyclic " + ",".join(map(str, self.removals))
        return f"heap {self.heap + 1} remove {self.removals[self.heap]}"


def check_position(spec: GcnSpec, pos: Sequence[int]) -> Position:
    pos = tuple(int(x) for x in pos)
    if len(pos) != spec.n:
        raise ValueError(f"position has {len(pos)} heaps but the game has {spec.n}")
    for x in pos:
        if not 0 <= x <= HEAP_CAP:
            raise ValueError(f"heap size {x} outside 0..{HEAP_CAP}")
    return pos


@lru_cache(maxsize=4096)
def cyclic_removals(clipped: tuple[int, ...], budget: int) -> tuple[tuple[int, ...], ...]:
    """Nonzero removal vectors with ``s_i <= clipped[i]`` and ``sum <= budget``,
    in lexicographic order."""
    n = len(clipped)
    out = []

    def rec(i, left, acc):
        if i == n:
            if left != budget:
                out.append(tuple(acc))
            return
        for s in range(min(clipped[i], left) + 1):
            acc.append(s)
            rec(i + 1, left - s, acc)
            acc.pop()

    rec(0, budget, [])
    return tuple(out)


def _cyclic_for(spec: GcnSpec, pos: Position):
    budget = spec.h - 1
    if budget == 0:
        return ()
    return cyclic_removals(tuple(min(x, budget) for x in pos), budget)


def successors(spec: GcnSpec, pos: Position) -> Iterator[Position]:
    """Resulting positions of :func:`legal_moves`, in the same order."""
    for i, (x, S) in enumerate(zip(pos, spec.sets)):
        head, tail = pos[:i], pos[i + 1 :]
        for s in S.members_upto(x):
            yield head + (x - s,) + tail
    for r in _cyclic_for(spec, pos):
        yield tuple(x - s for x, s in zip(pos, r))


def legal_moves(spec: GcnSpec, pos: Sequence[int]) -> list[tuple[Move, Position]]:
    """All moves from ``pos`` paired with their result.

    Single-heap moves come first (heap by heap, ascending amount), then cyclic
    moves in lexicographic order of the removal vector.  A result reachable both
    ways is listed twice.
    """
    pos = check_position(spec, pos)
    n = spec.n
    out = []
    for i, (x, S) in enumerate(zip(pos, spec.sets)):
        for s in S.members_upto(x):
            removal = (0,) * i + (s,) + (0,) * (n - i - 1)
            move = Move(removal, i)
            out.append((move, move.apply(pos)))
    for r in _cyclic_for(spec, pos):
        move = Move(r)
        out.append((move, move.apply(pos)))
    return out


def parse_game_spec(text: str) -> GcnSpec:
    """Parse ``"gcn: h=<H>; sets=[<SET>; <SET>; ...]"``."""
    p = SpecParser(text)
    p.expect("gcn")
    p.expect(":")
    p.expect("h")
    p.expect("=")
    hpos = p.peek()[2]
    h = p.nat()
    if h < 1:
        raise SetSpecError("h must be >= 1", hpos)
    p.expect(";")
    p.expect("sets")
    p.expect("=")
    p.expect("[")
    sets = [p.set_expr()]
    while p.at(";"):
        p.i += 1
        sets.append(p.set_expr())
    p.expect("]")
    p.end()
    return GcnSpec(h, tuple(sets))


def render_game_spec(spec: GcnSpec) -> str:
    return f"gcn: h={spec.h}; sets=[" + "; ".join(render_set_spec(S) for S in spec.sets) + "]"
