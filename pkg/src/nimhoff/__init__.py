"""Generalized cyclic Nimhoff: Grundy values, h-stairs and subtraction-game analysis."""

from nimhoff.errors import (
    CoverageError,
    NimhoffError,
    ResourceCapError,
    SetSpecError,
    StairViolationError,
)
from nimhoff.game import GcnSpec, Move, legal_moves, parse_game_spec, render_game_spec
from nimhoff.grundy import (
    ClosedFormBreakdown,
    GrundySequence,
    PeriodicityReport,
    StairDecomposition,
    StairViolation,
    cyclic_nimhoff_grundy,
    detect_periodicity,
    gcn_closed_grundy,
    grundy_sequence,
    mex,
    nim_sum,
    stair_compose,
    stair_decompose,
    sum_grundy,
    verify_lift_identity,
)
from nimhoff.oracle import (
    OracleCache,
    Outcome,
    oracle_grundy,
    oracle_outcome,
    oracle_sum_grundy,
    verify_closed_form,
)
from nimhoff.sets import (
    SubtractionSet,
    lift_set,
    make_set,
    membership,
    parse_set_spec,
    render_set_spec,
)
from nimhoff.solver import MoveAdvice, best_move, outcome

__version__ = "0.1.0"
