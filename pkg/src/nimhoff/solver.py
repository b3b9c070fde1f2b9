"""Outcome classification and winning-move selection."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from nimhoff.errors import CoverageError, ResourceCapError, StairViolationError
from nimhoff.game import GcnSpec, Move, Position, check_position, legal_moves
from nimhoff.grundy import ClosedFormBreakdown, closed_form_sequences, gcn_closed_grundy
from nimhoff.oracle import OracleCache, Outcome, oracle_grundy

ENGINES = ("auto", "closed", "oracle")


@dataclass(frozen=True)
class MoveAdvice:
    outcome: Outcome
    winning_move: tuple[Move, Position] | None
    engine: str
    value: int
    breakdown: ClosedFormBreakdown | None = None


class _Evaluator:
    """G-values for ``pos`` and everything reachable from it, by one backend."""

    def __init__(self, spec: GcnSpec, pos: Position, engine: str):
        if engine not in ENGINES:
            raise ValueError(f"engine must be one of {ENGINES}, got {engine!r}")
        self.spec = spec
        self.sequences = None
        if engine in ("auto", "closed"):
            try:
                seqs = closed_form_sequences(spec, max(pos))
                gcn_closed_grundy(spec, pos, seqs)
                self.sequences = seqs
            except (StairViolationError, CoverageError, ResourceCapError):
                if engine == "closed":
                    raise
        self.engine = "closed-form" if self.sequences is not None else "oracle"
        self.cache = OracleCache(spec)

    def breakdown(self, pos: Position) -> ClosedFormBreakdown | None:
        if self.sequences is None:
            return None
        return gcn_closed_grundy(self.spec, pos, self.sequences)

    def value(self, pos: Position) -> int:
        if self.sequences is not None:
            return gcn_closed_grundy(self.spec, pos, self.sequences).value
        return oracle_grundy(self.spec, pos, self.cache)


def grundy_value(spec: GcnSpec, pos: Sequence[int], engine: str = "auto") -> tuple[int, str, ClosedFormBreakdown | None]:
    """``(value, engine used, breakdown or None)``."""
    pos = check_position(spec, pos)
    ev = _Evaluator(spec, pos, engine)
    return ev.value(pos), ev.engine, ev.breakdown(pos)


def outcome(spec: GcnSpec, pos: Sequence[int], engine: str = "auto") -> Outcome:
    value, _, _ = grundy_value(spec, pos, engine)
    return Outcome.P if value == 0 else Outcome.N


def best_move(spec: GcnSpec, pos: Sequence[int], engine: str = "auto") -> MoveAdvice:
    """First move in :func:`legal_moves` order that reaches a G-value of 0."""
    pos = check_position(spec, pos)
    ev = _Evaluator(spec, pos, engine)
    value = ev.value(pos)
    winning = None
    if value != 0:
        for move, result in legal_moves(spec, pos):
            if ev.value(result) == 0:
                winning = (move, result)
                break
    return MoveAdvice(
        outcome=Outcome.P if value == 0 else Outcome.N,
        winning_move=winning,
        engine=ev.engine,
        value=value,
        breakdown=ev.breakdown(pos),
    )
