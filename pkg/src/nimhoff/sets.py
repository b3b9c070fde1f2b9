"""Eventually periodic sets of positive integers.

A :class:`SubtractionSet` is described by an explicit prefix below ``threshold``
and a periodic rule above it: for ``s >= threshold``, ``s`` is a member iff
``s % modulus`` is in ``residues``.  Instances are always canonical (minimal
modulus, then minimal threshold), so ``==`` coincides with set equality.

The module also holds the set-spec mini-language::

    SET  := "all" | "finite:" LIST | "allbut:" LIST
          | "periodic(t=" NAT ", prefix=" LIST ", p=" NAT ", r=" LIST ")"
          | "lift(h=" NAT ", " SET ")"
    LIST := empty | ITEM ("," ITEM)*      ITEM := NAT | NAT ".." NAT
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

import numpy as np

from nimhoff.errors import SetSpecError

MAX_LITERAL = 2**32 - 1
MAX_EXPLICIT = 1_000_000


def _divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _canonical_parts(threshold, prefix, modulus, residues):
    residues = frozenset(residues)
    for d in _divisors(modulus):
        if all(((r + d) % modulus in residues) == (r in residues) for r in range(modulus)):
            residues = frozenset(r for r in residues if r < d)
            modulus = d
            break
    t = max(threshold, 1)
    prefix = set(prefix)
    while t > 1 and ((t - 1) in prefix) == ((t - 1) % modulus in residues):
        t -= 1
        prefix.discard(t)
    return t, frozenset(prefix), modulus, residues


@dataclass(frozen=True)
class SubtractionSet:
    threshold: int
    prefix_members: frozenset
    modulus: int
    residues: frozenset

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError(f"modulus must be >= 1, got {self.modulus}")
        if self.threshold < 1:
            raise ValueError(f"threshold must be >= 1, got {self.threshold}")
        bad = [r for r in self.residues if not 0 <= r < self.modulus]
        if bad:
            raise ValueError(f"residues {sorted(bad)} out of range for modulus {self.modulus}")
        bad = [m for m in self.prefix_members if not 1 <= m < self.threshold]
        if bad:
            raise ValueError(f"prefix members {sorted(bad)} must lie in [1, {self.threshold})")
        canon = _canonical_parts(self.threshold, self.prefix_members, self.modulus, self.residues)
        if canon != (self.threshold, self.prefix_members, self.modulus, self.residues):
            raise ValueError("SubtractionSet is not in canonical form; build it with make_set()")

    def __contains__(self, s: object) -> bool:
        if not isinstance(s, (int, np.integer)) or s < 1:
            return False
        if s < self.threshold:
            return s in self.prefix_members
        return (s % self.modulus) in self.residues

    def __repr__(self) -> str:
        return f"SubtractionSet({render_set_spec(self)!r})"

    @property
    def is_all(self) -> bool:
        return self.threshold == 1 and self.modulus == 1 and self.residues == {0}

    @property
    def is_finite(self) -> bool:
        return not self.residues

    @property
    def is_cofinite(self) -> bool:
        return self.modulus == 1 and self.residues == {0}

    @property
    def is_empty(self) -> bool:
        return self.is_finite and not self.prefix_members

    def complement_members(self) -> list[int]:
        """Non-members of a cofinite set, ascending."""
        if not self.is_cofinite:
            raise ValueError("complement is infinite")
        return [s for s in range(1, self.threshold) if s not in self.prefix_members]

    @lru_cache(maxsize=256)
    def members_upto(self, n: int) -> tuple[int, ...]:
        """All members ``s`` with ``1 <= s <= n``, ascending."""
        return tuple(int(s) for s in np.flatnonzero(self.mask(n)))

    def mask(self, n: int) -> np.ndarray:
        """Boolean array ``m`` of length ``n + 1`` with ``m[s] == (s in self)``."""
        s = np.arange(n + 1)
        out = np.isin(s % self.modulus, np.fromiter(self.residues, dtype=np.int64, count=len(self.residues)))
        out[: min(self.threshold, n + 1)] = False
        for m in self.prefix_members:
            if m <= n:
                out[m] = True
        return out


def membership(S: SubtractionSet, s: int) -> bool:
    """Whether the positive integer ``s`` belongs to ``S``."""
    if s < 1:
        raise ValueError(f"subtraction amounts are positive, got {s}")
    return s in S


def _check_items(items: Iterable[int], what: str) -> list[int]:
    items = [int(x) for x in items]
    for x in items:
        if x < 1:
            raise ValueError(f"{what} must contain positive integers, got {x}")
    if len(set(items)) != len(items):
        dup = sorted({x for x in items if items.count(x) > 1})
        raise ValueError(f"{what} contains duplicates: {dup}")
    return items


def periodic(threshold: int, prefix: Iterable[int], modulus: int, residues: Iterable[int]) -> SubtractionSet:
    """Set with explicit members below ``threshold`` and residue rule above it."""
    prefix = _check_items(prefix, "prefix")
    residues = list(residues)
    if modulus < 1:
        raise ValueError(f"modulus must be >= 1, got {modulus}")
    if threshold < 0:
        raise ValueError(f"threshold must be >= 0, got {threshold}")
    bad = [r for r in residues if not 0 <= r < modulus]
    if bad:
        raise ValueError(f"residues {bad} out of range 0..{modulus - 1}")
    if len(set(residues)) != len(residues):
        raise ValueError("residues contain duplicates")
    bad = [m for m in prefix if m >= threshold]
    if bad:
        raise ValueError(f"prefix members {bad} must be below threshold {threshold}")
    return SubtractionSet(*_canonical_parts(threshold, prefix, modulus, residues))


def all_positive() -> SubtractionSet:
    return SubtractionSet(1, frozenset(), 1, frozenset({0}))


def finite(items: Iterable[int]) -> SubtractionSet:
    items = _check_items(items, "finite set")
    return periodic(max(items, default=0) + 1, items, 1, ())


def all_but(items: Iterable[int]) -> SubtractionSet:
    items = _check_items(items, "excluded set")
    t = max(items, default=0) + 1
    excluded = set(items)
    return periodic(t, [s for s in range(1, t) if s not in excluded], 1, (0,))


def make_set(kind: str, *args) -> SubtractionSet:
    """Build a canonical set from ``kind`` in {"all", "finite", "all_but", "periodic"}."""
    if kind == "all":
        return all_positive()
    if kind == "finite":
        return finite(*args)
    if kind in ("all_but", "allbut"):
        return all_but(*args)
    if kind == "periodic":
        return periodic(*args)
    raise ValueError(f"unknown set kind {kind!r}")


def lift_set(S: SubtractionSet, h: int) -> SubtractionSet:
    """The set of positive integers except ``k*h`` for every ``k`` not in ``S``.

    Its Grundy sequence is the h-stair of the Grundy sequence of ``S``.
    """
    if h < 1:
        raise ValueError(f"h must be >= 1, got {h}")
    t, p = S.threshold * h, S.modulus * h
    prefix = [m for m in range(1, t) if m % h or (m // h) in S]
    residues = [r for r in range(p) if r % h or (r // h) in S.residues]
    return periodic(t, prefix, p, residues)


# ---------------------------------------------------------------------------
# set-spec language

_TOKEN = re.compile(r"\s*(?:(?P<nat>\d+)|(?P<range>\.\.)|(?P<word>[A-Za-z_]+)|(?P<sym>[,:()=;\[\]]))")


class SpecParser:
    """Recursive-descent parser over the set-spec (and game-spec) token stream."""

    def __init__(self, text: str):
        self.text = text
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None or m.end() == pos:
                if text[pos:].strip() == "":
                    break
                col = pos + len(text[pos:]) - len(text[pos:].lstrip())
                raise SetSpecError(f"unexpected character {text[col]!r}", col)
            kind = m.lastgroup
            self.tokens.append((kind, m.group(kind), m.start(kind)))
            pos = m.end()
        self.i = 0

    def peek(self, offset: int = 0):
        j = self.i + offset
        return self.tokens[j] if j < len(self.tokens) else ("eof", "", len(self.text))

    def at(self, value: str, offset: int = 0) -> bool:
        kind, val, _ = self.peek(offset)
        return kind != "nat" and kind != "eof" and val.lower() == value

    def expect(self, value: str) -> None:
        kind, val, pos = self.peek()
        if kind == "eof" or kind == "nat" or val.lower() != value:
            found = "end of input" if kind == "eof" else repr(val)
            raise SetSpecError(f"expected {value!r}, found {found}", pos)
        self.i += 1

    def nat(self) -> int:
        kind, val, pos = self.peek()
        if kind != "nat":
            found = "end of input" if kind == "eof" else repr(val)
            raise SetSpecError(f"expected a number, found {found}", pos)
        value = int(val)
        if value > MAX_LITERAL:
            raise SetSpecError(f"numeric literal {val} exceeds {MAX_LITERAL}", pos)
        self.i += 1
        return value

    def items(self) -> list[int]:
        out: list[int] = []
        if self.peek()[0] != "nat":
            return out
        while True:
            pos = self.peek()[2]
            lo = self.nat()
            if self.peek()[0] == "range":
                self.i += 1
                hi = self.nat()
                if hi < lo:
                    raise SetSpecError(f"empty range {lo}..{hi}", pos)
                if len(out) + hi - lo + 1 > MAX_EXPLICIT:
                    raise SetSpecError(f"list expands to more than {MAX_EXPLICIT} items", pos)
                out.extend(range(lo, hi + 1))
            else:
                out.append(lo)
            if self.at(",") and self.peek(1)[0] == "nat":
                self.i += 1
                continue
            return out

    def set_expr(self) -> SubtractionSet:
        kind, val, pos = self.peek()
        word = val.lower() if kind == "word" else None
        try:
            if word == "all":
                self.i += 1
                return all_positive()
            if word in ("finite", "allbut"):
                self.i += 1
                self.expect(":")
                items = self.items()
                return finite(items) if word == "finite" else all_but(items)
            if word == "periodic":
                self.i += 1
                self.expect("(")
                self.expect("t")
                self.expect("=")
                t = self.nat()
                self.expect(",")
                self.expect("prefix")
                self.expect("=")
                prefix = self.items()
                self.expect(",")
                self.expect("p")
                self.expect("=")
                p = self.nat()
                self.expect(",")
                self.expect("r")
                self.expect("=")
                residues = self.items()
                self.expect(")")
                return periodic(t, prefix, p, residues)
            if word == "lift":
                self.i += 1
                self.expect("(")
                self.expect("h")
                self.expect("=")
                h = self.nat()
                self.expect(",")
                inner = self.set_expr()
                self.expect(")")
                return lift_set(inner, h)
        except SetSpecError:
            raise
        except ValueError as exc:
            raise SetSpecError(str(exc), pos) from None
        found = "end of input" if kind == "eof" else repr(val)
        raise SetSpecError(f"expected a set (all, finite:, allbut:, periodic(, lift(), found {found}", pos)

    def end(self) -> None:
        kind, val, pos = self.peek()
        if kind != "eof":
            raise SetSpecError(f"unexpected trailing input {val!r}", pos)


def parse_set_spec(text: str) -> SubtractionSet:
    parser = SpecParser(text)
    result = parser.set_expr()
    parser.end()
    return result


def _render_items(items: Iterable[int]) -> str:
    items = sorted(items)
    parts = []
    i = 0
    while i < len(items):
        j = i
        while j + 1 < len(items) and items[j + 1] == items[j] + 1:
            j += 1
        if j - i >= 2:
            parts.append(f"{items[i]}..{items[j]}")
        else:
            parts.extend(str(x) for x in items[i : j + 1])
        i = j + 1
    return ",".join(parts)


def render_set_spec(S: SubtractionSet) -> str:
    if S.is_all:
        return "all"
    if S.is_finite:
        return "finite:" + _render_items(S.prefix_members)
    if S.is_cofinite:
        return "allbut:" + _render_items(S.complement_members())
    return (
        f"periodic(t={S.threshold}, prefix={_render_items(S.prefix_members)}, "
        f"p={S.modulus}, r={_render_items(S.residues)})"
    )
