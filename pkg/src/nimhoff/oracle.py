"""Brute-force ground truth: mex recursion over the full move DAG.

Nothing here uses a closed form; :func:`verify_closed_form` is the harness
that compares the two.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Hashable, Iterable, Sequence

from nimhoff.config import check_node_count
from nimhoff.errors import StairViolationError
from nimhoff.game import GcnSpec, Position, check_position, successors
from nimhoff.grundy import closed_form_sequences, gcn_closed_grundy, mex


class Outcome(str, Enum):
    N = "N"
    P = "P"


class OracleCache:
    """Memo table of G-values for one game."""

    def __init__(self, spec: GcnSpec):
        self.spec = spec
        self.table: dict[Position, int] = {}
        self.nodes = 0

    @property
    def peak(self) -> int:
        return len(self.table)

    def stats(self) -> dict[str, int]:
        return {"nodes": self.nodes, "peak_table": self.peak}


def _box_size(bounds: Iterable[int]) -> int:
    return math.prod(b + 1 for b in bounds)


def _memo_mex(root: Hashable, succ: Callable, table: dict) -> int:
    """Top-down memoised mex recursion with an explicit stack."""
    stack = [root]
    evaluated = 0
    while stack:
        node = stack[-1]
        if node in table:
            stack.pop()
            continue
        children = list(succ(node))
        missing = [c for c in children if c not in table]
        if missing:
            stack.extend(missing)
            continue
        table[node] = mex(table[c] for c in children)
        evaluated += 1
        stack.pop()
    return evaluated


def oracle_grundy(spec: GcnSpec, pos: Sequence[int], cache: OracleCache | None = None) -> int:
    pos = check_position(spec, pos)
    check_node_count(_box_size(pos))
    if cache is None:
        cache = OracleCache(spec)
    elif cache.spec != spec:
        raise ValueError("cache belongs to a different game")
    cache.nodes += _memo_mex(pos, lambda p: successors(spec, p), cache.table)
    return cache.table[pos]


def oracle_sweep(spec: GcnSpec, box: Sequence[int], cache: OracleCache | None = None) -> OracleCache:
    """Fill ``cache`` bottom-up for every position with ``x_i <= box[i]``."""
    box = check_position(spec, box)
    check_node_count(_box_size(box))
    if cache is None:
        cache = OracleCache(spec)
    table = cache.table
    # successors are componentwise <= and lexicographically smaller
    for pos in itertools.product(*(range(b + 1) for b in box)):
        if pos in table:
            continue
        table[pos] = mex(table[c] for c in successors(spec, pos))
        cache.nodes += 1
    return cache


def audit_cache(cache: OracleCache) -> Position | None:
    """First cached position whose value is not the mex of its successors."""
    spec, table = cache.spec, cache.table
    for pos, g in table.items():
        seen = {table[c] for c in successors(spec, pos)}
        if g in seen or any(v not in seen for v in range(g)):
            return pos
    return None


def oracle_outcome(spec: GcnSpec, pos: Sequence[int], table: dict | None = None) -> Outcome:
    """Win/lose search: N iff some move reaches a P-position."""
    pos = check_position(spec, pos)
    check_node_count(_box_size(pos))
    table = {} if table is None else table
    stack = [pos]
    while stack:
        node = stack[-1]
        if node in table:
            stack.pop()
            continue
        children = list(successors(spec, node))
        if any(table.get(c) is Outcome.P for c in children):
            table[node] = Outcome.N
            stack.pop()
            continue
        missing = [c for c in children if c not in table]
        if missing:
            stack.extend(missing)
            continue
        table[node] = Outcome.P
        stack.pop()
    return table[pos]


def oracle_sum_grundy(
    specA: GcnSpec, posA: Sequence[int], specB: GcnSpec, posB: Sequence[int]
) -> int:
    """G-value of the disjunctive sum, searched directly over pairs of positions."""
    posA = check_position(specA, posA)
    posB = check_position(specB, posB)
    check_node_count(_box_size(posA) * _box_size(posB))

    def succ(node):
        a, b = node
        for a2 in successors(specA, a):
            yield (a2, b)
        for b2 in successors(specB, b):
            yield (a, b2)

    table: dict = {}
    _memo_mex((posA, posB), succ, table)
    return table[(posA, posB)]


@dataclass
class VerifyReport:
    spec: GcnSpec
    box: Position
    rows: list[tuple[Position, int, int | None]] = field(default_factory=list)
    mismatches: list[tuple[Position, int, int]] = field(default_factory=list)
    stair_violation: StairViolationError | None = None
    elapsed: float = 0.0
    cache: OracleCache | None = None

    @property
    def positions(self) -> int:
        return len(self.rows)

    @property
    def ok(self) -> bool:
        return not self.mismatches and self.stair_violation is None

    def summary(self) -> str:
        if self.stair_violation is not None:
            return f"STAIR VIOLATION {self.stair_violation}; oracle values only for {self.positions} positions"
        if self.mismatches:
            pos, g, c = self.mismatches[0]
            return (
                f"MISMATCH {len(self.mismatches)} of {self.positions} positions; "
                f"first at {','.join(map(str, pos))}: oracle={g} closed={c}"
            )
        return f"OK {self.positions} positions"

    def to_text(self) -> str:
        lines = [self.summary()]
        lines.extend(
            f"mismatch {','.join(map(str, p))} oracle={g} closed={c}" for p, g, c in self.mismatches
        )
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        n = len(self.box)
        header = ",".join(f"x{i + 1}" for i in range(n)) + ",oracle,closed\n"
        bad = {p for p, _, _ in self.mismatches}
        ordered = [r for r in self.rows if r[0] in bad] + [r for r in self.rows if r[0] not in bad]
        body = "".join(
            ",".join(map(str, p)) + f",{g},{'' if c is None else c}\n" for p, g, c in ordered
        )
        return header + body


def verify_closed_form(spec: GcnSpec, box: Sequence[int]) -> VerifyReport:
    """Compare oracle and closed-form G-values on every position of the box."""
    start = time.perf_counter()
    box = check_position(spec, box)
    cache = oracle_sweep(spec, box)
    report = VerifyReport(spec, box, cache=cache)
    sequences = closed_form_sequences(spec, max(box))
    try:
        gcn_closed_grundy(spec, box, sequences)
    except StairViolationError as exc:
        report.stair_violation = exc
        sequences = None
    for pos in itertools.product(*(range(b + 1) for b in box)):
        g = cache.table[pos]
        c = None if sequences is None else gcn_closed_grundy(spec, pos, sequences).value
        report.rows.append((pos, g, c))
        if c is not None and c != g:
            report.mismatches.append((pos, g, c))
    report.elapsed = time.perf_counter() - start
    return report
