"""Command-line interface.

Exit codes: 0 success, 1 mismatch/violation found, 2 usage or parse error,
3 resource cap exceeded or engine unavailable.
"""

from __future__ import annotations

import argparse
import sys
from typing import Callable, Sequence, TextIO

from nimhoff.errors import CoverageError, ResourceCapError, StairViolationError
from nimhoff.game import GcnSpec, Move, Position, legal_moves, parse_game_spec
from nimhoff.grundy import (
    StairViolation,
    detect_periodicity,
    grundy_sequence,
    sequence_csv,
    stair_csv,
    stair_decompose,
    verify_lift_identity,
)
from nimhoff.oracle import verify_closed_form
from nimhoff.sets import parse_set_spec, render_set_spec
from nimhoff.solver import best_move, grundy_value

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3
PREVIEW = 20


class UsageError(Exception):
    pass


def _parse_pos(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise UsageError(f"expected comma-separated nonnegative integers, got {text!r}") from None
    if any(v < 0 for v in values):
        raise UsageError(f"heap sizes must be nonnegative, got {text!r}")
    return values


def _csv(values) -> str:
    return ",".join(map(str, values))


def _preview(values) -> str:
    text = _csv(values[:PREVIEW])
    return text + ",..." if len(values) > PREVIEW else text


def _table(header: Sequence[str], rows) -> str:
    cols = list(zip(header, *rows)) if rows else [(h,) for h in header]
    widths = [max(len(str(c)) for c in col) for col in cols]
    lines = ["  ".join(str(h).rjust(w) for h, w in zip(header, widths))]
    lines += ["  ".join(str(c).rjust(w) for c, w in zip(row, widths)) for row in rows]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# commands; each returns (exit code, output text)


def cmd_seq(args) -> tuple[int, str]:
    seq = grundy_sequence(parse_set_spec(args.set), args.count)
    if args.format == "csv":
        return EXIT_OK, sequence_csv(seq)
    if args.format == "table":
        return EXIT_OK, _table(("index", "gvalue"), list(enumerate(seq.values)))
    return EXIT_OK, _csv(seq.values) + "\n"


def _game_and_pos(args) -> tuple[GcnSpec, Position]:
    spec = parse_game_spec(args.game)
    pos = _parse_pos(args.pos)
    if len(pos) != spec.n:
        raise UsageError(f"position has {len(pos)} heaps but the game has {spec.n}")
    return spec, pos


def _breakdown_lines(breakdown) -> list[str]:
    return [] if breakdown is None else ["  " + line for line in breakdown.lines()]


def cmd_grundy(args) -> tuple[int, str]:
    spec, pos = _game_and_pos(args)
    value, engine, breakdown = grundy_value(spec, pos, args.engine)
    lines = [f"grundy {value}", f"engine {engine}"] + _breakdown_lines(breakdown)
    return EXIT_OK, "\n".join(lines) + "\n"


def cmd_outcome(args) -> tuple[int, str]:
    spec, pos = _game_and_pos(args)
    value, engine, breakdown = grundy_value(spec, pos, args.engine)
    lines = [f"outcome {'P' if value == 0 else 'N'}", f"grundy {value}", f"engine {engine}"]
    return EXIT_OK, "\n".join(lines + _breakdown_lines(breakdown)) + "\n"


def cmd_best_move(args) -> tuple[int, str]:
    spec, pos = _game_and_pos(args)
    advice = best_move(spec, pos, args.engine)
    lines = [f"outcome {advice.outcome.value}", f"grundy {advice.value}"]
    if advice.winning_move is None:
        lines.append("move none")
    else:
        move, result = advice.winning_move
        lines += [f"move {move.describe()}", f"result {_csv(result)}"]
    lines.append(f"engine {advice.engine}")
    return EXIT_OK, "\n".join(lines + _breakdown_lines(advice.breakdown)) + "\n"


def cmd_verify(args) -> tuple[int, str]:
    spec = parse_game_spec(args.game)
    box = _parse_pos(args.box)
    if len(box) != spec.n:
        raise UsageError(f"box has {len(box)} bounds but the game has {spec.n} heaps")
    report = verify_closed_form(spec, box)
    text = report.to_csv() if args.format == "csv" else report.to_text()
    if args.timing:
        text += f"elapsed {report.elapsed:.3f}s\n"
    return (EXIT_OK if report.ok else EXIT_MISMATCH), text


def cmd_stair(args) -> tuple[int, str]:
    seq = grundy_sequence(parse_set_spec(args.set), args.count)
    res = stair_decompose(seq.values, args.h)
    if args.format == "csv":
        code = EXIT_MISMATCH if isinstance(res, StairViolation) else EXIT_OK
        if code:
            return code, f"{args.h}-stair VIOLATION at index {res.index}\n"
        return code, stair_csv(seq.values, args.h)
    if isinstance(res, StairViolation):
        value = seq.values[res.index]
        return EXIT_MISMATCH, f"{args.h}-stair VIOLATION at index {res.index} (value {value})\n"
    text = f"h-stair OK; base prefix {_preview(res.base)}\n"
    if res.provisional is not None:
        text += f"provisional base entry {res.provisional}\n"
    return EXIT_OK, text


def cmd_period(args) -> tuple[int, str]:
    seq = grundy_sequence(parse_set_spec(args.set), args.count)
    max_period = args.max_period if args.max_period is not None else args.count // 2
    report = detect_periodicity(seq.values, max_period)
    text = report.to_text() if args.format == "kv" else report.summary() + "\n"
    return (EXIT_MISMATCH if report.classification == "undetected" else EXIT_OK), text


def cmd_lift_check(args) -> tuple[int, str]:
    S = parse_set_spec(args.set)
    report = verify_lift_identity(S, args.h, args.count)
    return (EXIT_OK if report.ok else EXIT_MISMATCH), report.summary() + "\n"


# ---------------------------------------------------------------------------
# play


def _diagnose(spec: GcnSpec, pos: Position, removals: tuple[int, ...], heap: int | None) -> str:
    if any(s < 0 for s in removals) or (heap is not None and removals[heap] <= 0) or not any(removals):
        return "removals must be positive"
    for i, (x, s) in enumerate(zip(pos, removals)):
        if s > x:
            return f"heap {i + 1} has only {x} tokens (cannot remove {s})"
    if heap is not None:
        S = spec.sets[heap]
        return f"{removals[heap]} is not in the subtraction set of heap {heap + 1} ({render_set_spec(S)})"
    return f"cyclic removals must total less than h={spec.h} (got {sum(removals)})"


def parse_human_move(spec: GcnSpec, pos: Position, line: str) -> Move:
    """Parse ``heap i remove s`` or ``cyclic s1,...,sn`` and check it against
    :func:`legal_moves`.  Raises ``ValueError`` with the violated rule."""
    words = line.split()
    n = spec.n
    if len(words) == 4 and words[0] == "heap" and words[2] == "remove":
        try:
            i, s = int(words[1]), int(words[3])
        except ValueError:
            raise ValueError("usage: heap <i> remove <s>") from None
        if not 1 <= i <= n:
            raise ValueError(f"heap must be between 1 and {n}")
        move = Move((0,) * (i - 1) + (s,) + (0,) * (n - i), i - 1)
    elif len(words) == 2 and words[0] == "cyclic":
        try:
            removals = tuple(int(p) for p in words[1].split(","))
        except ValueError:
            raise ValueError("usage: cyclic <s1>,...,<sn>") from None
        if len(removals) != n:
            raise ValueError(f"cyclic move needs {n} amounts")
        move = Move(removals)
    else:
        raise ValueError("enter 'heap <i> remove <s>', 'cyclic <s1>,...,<sn>' or 'quit'")
    if move not in {m for m, _ in legal_moves(spec, pos)}:
        raise ValueError(_diagnose(spec, pos, move.removals, move.heap))
    return move


def play(
    spec: GcnSpec,
    pos: Sequence[int],
    human_first: bool = True,
    engine: str = "auto",
    read: Callable[[], str] | None = None,
    out: TextIO | None = None,
) -> str | None:
    """Turn-based session against the solver.  Returns the winner ("human" or
    "engine"), or ``None`` if the human quits."""
    out = out or sys.stdout
    if read is None:
        def read():
            line = sys.stdin.readline()
            if not line:
                raise EOFError
            return line

    pos = tuple(pos)
    human_turn = human_first
    while True:
        out.write(f"position {_csv(pos)}\n")
        if not legal_moves(spec, pos):
            loser, winner = ("human", "engine") if human_turn else ("engine", "human")
            out.write(f"no moves left: {loser} to move loses; {winner} wins\n")
            return winner
        if human_turn:
            out.write("your move> ")
            out.flush()
            try:
                line = read().strip()
            except EOFError:
                out.write("\nbye\n")
                return None
            if line in ("quit", "exit", "q"):
                out.write("bye\n")
                return None
            try:
                move = parse_human_move(spec, pos, line)
            except ValueError as exc:
                out.write(f"illegal: {exc}\n")
                continue
        else:
            advice = best_move(spec, pos, engine)
            if advice.winning_move is not None:
                move = advice.winning_move[0]
            else:
                move = legal_moves(spec, pos)[0][0]
            out.write(f"engine plays {move.describe()}\n")
        pos = move.apply(pos)
        human_turn = not human_turn


def cmd_play(args) -> tuple[int, str]:
    spec, pos = _game_and_pos(args)
    play(spec, pos, human_first=args.human_first, engine=args.engine)
    return EXIT_OK, ""


# ---------------------------------------------------------------------------


def _bool(text: str) -> bool:
    if text.lower() in ("true", "yes", "1"):
        return True
    if text.lower() in ("false", "no", "0"):
        return False
    raise argparse.ArgumentTypeError(f"expected true or false, got {text!r}")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nimhoff", description="Generalized cyclic Nimhoff toolkit.")
    parser.add_argument("--out", metavar="PATH", help="write the report to PATH instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help):
        p = sub.add_parser(name, help=help)
        p.set_defaults(func=func)
        p.add_argument("--out", metavar="PATH", default=argparse.SUPPRESS, help=argparse.SUPPRESS)
        return p

    p = add("seq", cmd_seq, "print the Grundy sequence of a subtraction game")
    p.add_argument("--set", required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--format", choices=("list", "csv", "table"), default="list")

    for name, func, help in (
        ("grundy", cmd_grundy, "G-value of a position"),
        ("outcome", cmd_outcome, "N/P classification of a position"),
        ("best-move", cmd_best_move, "winning move from a position"),
        ("play", cmd_play, "play against the solver"),
    ):
        p = add(name, func, help)
        p.add_argument("--game", required=True)
        p.add_argument("--pos", required=True)
        p.add_argument("--engine", choices=("auto", "closed", "oracle"), default="auto")
        if name == "play":
            p.add_argument("--human-first", type=_bool, default=True)

    p = add("verify", cmd_verify, "compare closed form against the oracle on a box")
    p.add_argument("--game", required=True)
    p.add_argument("--box", required=True)
    p.add_argument("--format", choices=("text", "csv"), default="text")
    p.add_argument("--timing", action="store_true")

    p = add("stair", cmd_stair, "h-stair decomposition of a Grundy sequence")
    p.add_argument("--set", required=True)
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--format", choices=("text", "csv"), default="text")

    p = add("period", cmd_period, "periodicity of a Grundy sequence")
    p.add_argument("--set", required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--max-period", type=int, default=None)
    p.add_argument("--format", choices=("text", "kv"), default="text")

    p = add("lift-check", cmd_lift_check, "check the lift identity on a prefix")
    p.add_argument("--set", required=True)
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--count", type=int, required=True)
    return parser


def main(argv: Sequence[str] | None = None, stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        for name in ("h", "count"):
            if getattr(args, name, 1) is not None and getattr(args, name, 1) < (1 if name == "h" else 0):
                raise UsageError(f"--{name} must be positive")
        code, text = args.func(args)
    except UsageError as exc:
        stderr.write(f"nimhoff: error: {exc}\n")
        return EXIT_USAGE
    except ResourceCapError as exc:
        stderr.write(f"nimhoff: resource cap: {exc}\n")
        return EXIT_RESOURCE
    except (StairViolationError, CoverageError) as exc:
        stderr.write(f"nimhoff: closed-form engine unavailable: {exc}\n")
        return EXIT_RESOURCE
    except ValueError as exc:
        stderr.write(f"nimhoff: error: {exc}\n")
        return EXIT_USAGE
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
