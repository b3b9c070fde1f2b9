"""Grundy sequences of subtraction games, h-stairs, closed forms and periodicity."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import reduce
from operator import xor
from typing import Iterable, Sequence

import numpy as np

from nimhoff.config import check_dp_length
from nimhoff.errors import CoverageError, StairViolationError
from nimhoff.game import GcnSpec, Position, check_position
from nimhoff.sets import SubtractionSet, lift_set

__all__ = [
    "ClosedFormBreakdown",
    "GrundySequence",
    "LiftReport",
    "PeriodicityReport",
    "StairDecomposition",
    "StairViolation",
    "closed_form_sequences",
    "cyclic_nimhoff_grundy",
    "detect_periodicity",
    "gcn_closed_grundy",
    "grundy_sequence",
    "lift_set",
    "mex",
    "nim_sum",
    "stair_compose",
    "stair_decompose",
    "stair_guarantee",
    "sum_grundy",
    "verify_lift_identity",
]


def mex(values: Iterable[int]) -> int:
    """Least nonnegative integer not in ``values``."""
    present = set(values)
    m = 0
    while m in present:
        m += 1
    return m


def nim_sum(values: Iterable[int]) -> int:
    return reduce(xor, values, 0)


def sum_grundy(component_values: Iterable[int]) -> int:
    """Grundy value of a disjunctive sum from the values of its components."""
    return nim_sum(component_values)


# ---------------------------------------------------------------------------
# h-stairs


@dataclass(frozen=True)
class StairDecomposition:
    h: int
    base: tuple[int, ...]
    source_length: int
    # base entry of a trailing incomplete block; consistent so far but not final
    provisional: int | None = None


@dataclass(frozen=True)
class StairViolation:
    h: int
    index: int


def stair_compose(a: Sequence[int], h: int) -> list[int]:
    """The h-stair ``b(x*h + r) = a(x)*h + r`` of ``a``."""
    if h < 1:
        raise ValueError(f"h must be >= 1, got {h}")
    return [ax * h + r for ax in a for r in range(h)]


def stair_decompose(b: Sequence[int], h: int) -> StairDecomposition | StairViolation:
    """Recover the base sequence of an h-stair, or report the first index that
    breaks the stair shape."""
    if h < 1:
        raise ValueError(f"h must be >= 1, got {h}")
    arr = np.asarray(b, dtype=np.int64)
    n = len(arr)
    if n == 0:
        return StairDecomposition(h, (), 0)
    idx = np.arange(n)
    heights = arr[::h] // h
    expected = np.repeat(heights, h)[:n] * h + idx % h
    bad = np.flatnonzero(arr != expected)
    if len(bad):
        return StairViolation(h, int(bad[0]))
    full = n // h
    base = tuple(int(v) for v in heights[:full])
    provisional = int(heights[full]) if n % h else None
    return StairDecomposition(h, base, n, provisional)


def stair_guarantee(S: SubtractionSet, h: int) -> str | None:
    """Name of a known family whose Grundy sequence is an h-stair for every
    index, or ``None`` if ``S`` is not recognised as one."""
    if h == 1:
        return "identity"
    if S.is_all:
        return "nim"
    span = S.threshold + math.lcm(h, S.modulus) + h
    if all(s in S for s in range(1, span) if s % h):
        if S.is_cofinite:
            excluded = S.complement_members()
            if excluded == [h * k for k in range(1, len(excluded) + 1)]:
                return "all-but-multiples"
        return "lift"
    if S.is_empty:
        return None
    # smallest non-member; {1..l-1} subset of S, no multiple of l in S, h | l
    l = next(s for s in range(1, span + S.modulus + 1) if s not in S)
    if l % h == 0:
        span = S.threshold + math.lcm(l, S.modulus) + l
        if all(k * l not in S for k in range(1, span // l + 1)):
            return "mod-l"
    if S.is_cofinite:
        excluded = S.complement_members()
        if len(excluded) == 2 and excluded[0] == h:
            return "all-but-pair"
    return None


# ---------------------------------------------------------------------------
# subtraction-game sequences


@dataclass(frozen=True)
class GrundySequence:
    """Prefix ``values[x] = G_S(x)`` for ``x < length``, computed by DP."""

    set: SubtractionSet
    values: tuple[int, ...]
    _stairs: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def length(self) -> int:
        return len(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, x):
        return self.values[x]

    def stair(self, h: int) -> StairDecomposition | StairViolation:
        """Cached :func:`stair_decompose` of the whole prefix."""
        if h not in self._stairs:
            self._stairs[h] = stair_decompose(self.values, h)
        return self._stairs[h]

    def stair_prefix(self, h: int) -> int:
        """Length of the longest prefix that is an h-stair."""
        res = self.stair(h)
        return res.index if isinstance(res, StairViolation) else self.length


def grundy_sequence(S: SubtractionSet, length: int) -> GrundySequence:
    """Grundy values of single heaps ``0..length-1`` in Subtraction(S)."""
    if length < 0:
        raise ValueError(f"length must be >= 0, got {length}")
    check_dp_length(length)
    values = np.zeros(length, dtype=np.int64)
    members = np.flatnonzero(S.mask(max(length - 1, 0)))
    k = 0
    for x in range(1, length):
        while k < len(members) and members[k] <= x:
            k += 1
        if k == 0:
            continue
        reach = values[x - members[:k]]
        seen = np.zeros(k + 1, dtype=bool)
        seen[reach[reach <= k]] = True
        values[x] = np.argmin(seen)
    return GrundySequence(S, tuple(int(v) for v in values))


# ---------------------------------------------------------------------------
# closed forms


@dataclass(frozen=True)
class ClosedFormBreakdown:
    h: int
    quotients: tuple[int, ...]
    remainders: tuple[int, ...]
    heights: tuple[int, ...]
    Q: int
    R: int
    value: int
    verified_bound: int
    basis: tuple[str, ...]

    def lines(self) -> list[str]:
        return [
            f"h={self.h}",
            "quotients=" + ",".join(map(str, self.quotients)),
            "remainders=" + ",".join(map(str, self.remainders)),
            "heights=" + ",".join(map(str, self.heights)),
            f"Q={self.Q}",
            f"R={self.R}",
            f"value={self.value}",
            f"verified_bound={self.verified_bound}",
            "basis=" + ",".join(self.basis),
        ]


def closed_form_sequences(spec: GcnSpec, bound: int) -> tuple[GrundySequence, ...]:
    """Per-heap sequences long enough for positions with every heap <= bound."""
    length = bound + spec.h
    cache: dict[SubtractionSet, GrundySequence] = {}
    for S in spec.sets:
        if S not in cache:
            cache[S] = grundy_sequence(S, length)
    return tuple(cache[S] for S in spec.sets)


def check_stair_preconditions(spec: GcnSpec, sequences: Sequence[GrundySequence], need: int) -> int:
    """Raise unless every sequence covers and is an h-stair on ``need`` terms.
    Returns the verified prefix length."""
    if len(sequences) != spec.n:
        raise ValueError(f"expected {spec.n} sequences, got {len(sequences)}")
    verified = None
    for i, (S, seq) in enumerate(zip(spec.sets, sequences)):
        if seq.set != S:
            raise ValueError(f"sequence {i + 1} belongs to a different subtraction set")
        if seq.length < need:
            raise CoverageError(f"heap {i + 1}: sequence has {seq.length} terms, {need} required")
        good = seq.stair_prefix(spec.h)
        if good < need:
            raise StairViolationError(i, good, spec.h)
        verified = good if verified is None else min(verified, good)
    return verified


def gcn_closed_grundy(spec: GcnSpec, pos: Sequence[int], sequences: Sequence[GrundySequence]) -> ClosedFormBreakdown:
    """Grundy value of ``pos`` from the per-heap subtraction sequences.

    Valid when each heap's sequence is an h-stair; that is checked on the first
    ``max(pos) + h`` terms and the checked bound is reported.
    """
    pos = check_position(spec, pos)
    h = spec.h
    verified = check_stair_preconditions(spec, sequences, max(pos) + h)
    heights = tuple(seq.values[x] // h for seq, x in zip(sequences, pos))
    Q = nim_sum(heights)
    R = sum(pos) % h
    basis = tuple(stair_guarantee(S, h) or "verified" for S in spec.sets)
    return ClosedFormBreakdown(
        h=h,
        quotients=tuple(x // h for x in pos),
        remainders=tuple(x % h for x in pos),
        heights=heights,
        Q=Q,
        R=R,
        value=Q * h + R,
        verified_bound=verified,
        basis=basis,
    )


def cyclic_nimhoff_grundy(h: int, pos: Sequence[int]) -> int:
    """Grundy value of cyclic Nimhoff: plain Nim on every heap plus the cyclic moves."""
    if h < 1:
        raise ValueError(f"h must be >= 1, got {h}")
    return nim_sum(x // h for x in pos) * h + sum(pos) % h


@dataclass(frozen=True)
class LiftReport:
    set: SubtractionSet
    h: int
    length: int
    mismatch: tuple[int, int, int] | None  # (n, lifted DP value, stair formula value)

    @property
    def ok(self) -> bool:
        return self.mismatch is None

    def summary(self) -> str:
        if self.ok:
            return f"lift identity OK for n < {self.length}"
        n, lhs, rhs = self.mismatch
        return f"lift identity MISMATCH at n={n}: lifted={lhs} formula={rhs}"


def verify_lift_identity(S: SubtractionSet, h: int, length: int) -> LiftReport:
    """Compare the DP on the lifted set against the stair formula built from
    the DP on ``S``, for every ``n < length``."""
    lifted = grundy_sequence(lift_set(S, h), length)
    base = grundy_sequence(S, -(-length // h))
    for n in range(length):
        expect = base.values[n // h] * h + n % h
        if lifted.values[n] != expect:
            return LiftReport(S, h, length, (n, lifted.values[n], expect))
    return LiftReport(S, h, length, None)


# ---------------------------------------------------------------------------
# periodicity


@dataclass(frozen=True)
class PeriodicityReport:
    classification: str  # purely-periodic | periodic | arithmetic-periodic | undetected
    period: int
    preperiod: int
    saltus: int
    checked_length: int

    def to_text(self) -> str:
        return (
            f"classification={self.classification}\n"
            f"p={self.period}\n"
            f"n0={self.preperiod}\n"
            f"saltus={self.saltus}\n"
            f"checked_length={self.checked_length}\n"
        )

    def summary(self) -> str:
        if self.classification == "undetected":
            return f"undetected (checked {self.checked_length} terms)"
        text = f"{self.classification.replace('-', ' ')} p={self.period} n0={self.preperiod}"
        if self.saltus:
            text += f" saltus={self.saltus}"
        return text


def detect_periodicity(values: Sequence[int], max_period: int) -> PeriodicityReport:
    """Find the smallest period ``p <= max_period`` with ``a(n+p) = a(n) + s``
    from some ``n0`` to the end of the prefix.

    A candidate counts only if the relation holds for at least ``p`` indices and
    for at least half of the ``len(values) - p`` comparable indices.  Ordinary
    periodicity (``s == 0``) wins over ``s > 0``.
    """
    a = np.asarray(values, dtype=np.int64)
    L = len(a)
    undetected = PeriodicityReport("undetected", 0, 0, 0, L)
    if max_period < 1 or L < 2 * max_period:
        return undetected
    arithmetic = None
    for p in range(1, max_period + 1):
        d = a[p:] - a[:-p]
        s = int(d[-1])
        bad = np.flatnonzero(d != s)
        n0 = int(bad[-1]) + 1 if len(bad) else 0
        span = L - p - n0
        if span < p or 2 * span < L - p:
            continue
        if s == 0:
            kind = "purely-periodic" if n0 == 0 else "periodic"
            return PeriodicityReport(kind, p, n0, 0, L)
        if s > 0 and arithmetic is None:
            arithmetic = PeriodicityReport("arithmetic-periodic", p, n0, s, L)
    return arithmetic or undetected


# ---------------------------------------------------------------------------
# exports


def sequence_csv(seq: GrundySequence) -> str:
    return "index,gvalue\n" + "".join(f"{i},{v}\n" for i, v in enumerate(seq.values))


def stair_csv(values: Sequence[int], h: int) -> str:
    """Sequence CSV with the stair block and base height of every index."""
    rows = ["index,gvalue,block,base\n"]
    rows.extend(f"{i},{v},{i // h},{values[i - i % h] // h}\n" for i, v in enumerate(values))
    return "".join(rows)
