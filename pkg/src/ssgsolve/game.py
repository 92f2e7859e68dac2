"""Simple stochastic games: representation, validation and the ``.ssg`` format.

Positions are the integers ``0..n``.  Position 0 is the terminal GOAL; every
other position belongs to Max, Min or the coin (AVE) and has exactly two
ordered successor slots.  Parallel arcs and self-loops are allowed.

The ``.ssg`` text format::

    # comment
    ssg <n> <r>
    <id> <MAX|MIN|AVE> <s1> <s2>     (n lines, ids 1..n once each)
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping


class PositionKind(enum.Enum):
    GOAL = "GOAL"
    MAX = "MAX"
    MIN = "MIN"
    AVE = "AVE"


GOAL = 0


class GameFormatError(ValueError):
    """Raised by :func:`parse_game` on malformed input."""

    def __init__(self, message: str, line: int | None = None,
                 column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column else "")
            where += ": "
        super().__init__(where + message)


@dataclass(frozen=True)
class Violation:
    position: int | None
    message: str

    def __str__(self):
        if self.position is None:
            return self.message
        return f"position {self.position}: {self.message}"


@dataclass(frozen=True)
class SimpleStochasticGame:
    """A simple stochastic game with GOAL at index 0.

    ``kinds`` and ``successors`` are indexed by position and include an entry
    for GOAL (kind ``GOAL``, successors ``()``), so ``kinds[k]`` is the kind
    of position ``k``.  Instances are not validated on construction; use
    :func:`validate` or build them through :func:`make_game`.
    """

    n: int
    r: int
    kinds: tuple[PositionKind, ...]
    successors: tuple[tuple[int, ...], ...]
    comment: str = field(default="", compare=False)

    @cached_property
    def predecessors(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """For each position, the ``(predecessor, slot)`` arcs entering it."""
        preds: list[list[tuple[int, int]]] = [[] for _ in range(self.n + 1)]
        for k in range(1, self.n + 1):
            for slot, s in enumerate(self.successors[k]):
                preds[s].append((k, slot))
        return tuple(tuple(p) for p in preds)

    def positions(self, kind: PositionKind) -> list[int]:
        return [k for k in range(1, self.n + 1) if self.kinds[k] is kind]

    @cached_property
    def coins(self) -> tuple[int, ...]:
        return tuple(self.positions(PositionKind.AVE))

    @cached_property
    def max_positions(self) -> tuple[int, ...]:
        return tuple(self.positions(PositionKind.MAX))

    @cached_property
    def min_positions(self) -> tuple[int, ...]:
        return tuple(self.positions(PositionKind.MIN))


def make_game(kinds: Iterable[PositionKind | str],
              successors: Iterable[tuple[int, int]],
              comment: str = "") -> SimpleStochasticGame:
    """Build a game from per-position kinds and successor pairs for ``1..n``.

    Raises ``ValueError`` if the result does not validate.
    """
    ks = [PositionKind(k) if isinstance(k, str) else k for k in kinds]
    ss = [tuple(s) for s in successors]
    if len(ks) != len(ss):
        raise ValueError("kinds and successors differ in length")
    r = sum(k is PositionKind.AVE for k in ks)
    game = SimpleStochasticGame(
        n=len(ks), r=r,
        kinds=(PositionKind.GOAL, *ks),
        successors=((), *ss),
        comment=comment)
    problems = validate(game)
    if problems:
        raise ValueError("; ".join(map(str, problems)))
    return game


def validate(game: SimpleStochasticGame) -> list[Violation]:
    """List every structural problem in ``game``; empty means valid."""
    out: list[Violation] = []
    n = game.n
    if n < 1:
        out.append(Violation(None, "n must be at least 1"))
    if len(game.kinds) != n + 1 or len(game.successors) != n + 1:
        out.append(Violation(None, "kinds/successors must have n + 1 entries"))
        return out
    if game.kinds[0] is not PositionKind.GOAL:
        out.append(Violation(0, "position 0 must be GOAL"))
    if game.successors[0]:
        out.append(Violation(0, "GOAL has successors"))
    for k in range(1, n + 1):
        kind = game.kinds[k]
        if kind is PositionKind.GOAL:
            out.append(Violation(k, "extra GOAL position"))
        succ = game.successors[k]
        if len(succ) != 2:
            out.append(Violation(k, f"expected 2 successors, found {len(succ)}"))
        for s in succ:
            if not (isinstance(s, int) and 0 <= s <= n):
                out.append(Violation(k, f"successor out of range: {s}"))
    ave = sum(k is PositionKind.AVE for k in game.kinds)
    if ave != game.r:
        out.append(Violation(None, f"r mismatch: declared {game.r}, found {ave} AVE positions"))
    if not 0 <= game.r <= max(n, 0):
        out.append(Violation(None, f"r out of range: {game.r}"))
    return out


def _parse_int(tok: str, lineno: int, col: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise GameFormatError(f"expected integer, got {tok!r}", lineno, col) from None


def _tokens(line: str) -> list[tuple[str, int]]:
    """Whitespace-separated tokens with 1-based columns."""
    out = []
    i = 0
    while i < len(line):
        if line[i].isspace():
            i += 1
            continue
        j = i
        while j < len(line) and not line[j].isspace():
            j += 1
        out.append((line[i:j], i + 1))
        i = j
    return out


def parse_game(text: str, *, check: bool = True) -> SimpleStochasticGame:
    """Parse ``.ssg`` text.

    With ``check=False`` the declared ``r`` is kept even if it disagrees with
    the AVE count, so :func:`validate` can report it; syntax errors, missing
    or duplicate ids still raise :class:`GameFormatError`.
    """
    header = None
    entries: dict[int, tuple[PositionKind, tuple[int, int]]] = {}
    comments = []
    last_line = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        last_line = lineno
        line, hash_, rest = raw.partition("#")
        if hash_ and header is None:
            comments.append(rest.strip())
        toks = _tokens(line)
        if not toks:
            continue
        if header is None:
            if toks[0][0] != "ssg" or len(toks) != 3:
                raise GameFormatError("expected header 'ssg <n> <r>'", lineno, toks[0][1])
            n = _parse_int(*toks[1], lineno)
            r = _parse_int(*toks[2], lineno)
            if n < 1:
                raise GameFormatError("n must be at least 1", lineno, toks[1][1])
            header = (n, r)
            continue
        n = header[0]
        if len(toks) != 4:
            raise GameFormatError(
                "expected '<id> <MAX|MIN|AVE> <s1> <s2>'", lineno, toks[0][1])
        pid = _parse_int(*toks[0], lineno)
        if not 1 <= pid <= n:
            raise GameFormatError(f"id out of range: {pid}", lineno, toks[0][1])
        if pid in entries:
            raise GameFormatError(f"duplicate id {pid}", lineno, toks[0][1])
        kind_tok, kcol = toks[1]
        if kind_tok not in ("MAX", "MIN", "AVE"):
            raise GameFormatError(f"unknown position kind {kind_tok!r}", lineno, kcol)
        succ = []
        for tok, col in toks[2:]:
            s = _parse_int(tok, lineno, col)
            if not 0 <= s <= n:
                raise GameFormatError(f"successor out of range: {s}", lineno, col)
            succ.append(s)
        entries[pid] = (PositionKind(kind_tok), (succ[0], succ[1]))
    if header is None:
        raise GameFormatError("missing header 'ssg <n> <r>'", last_line or 1)
    n, r = header
    missing = [k for k in range(1, n + 1) if k not in entries]
    if missing:
        raise GameFormatError(f"missing position line for id {missing[0]}", last_line)
    kinds = (PositionKind.GOAL, *(entries[k][0] for k in range(1, n + 1)))
    found_r = sum(kind is PositionKind.AVE for kind in kinds)
    if check and found_r != r:
        raise GameFormatError(f"declared r={r} but found {found_r} AVE positions", 1)
    return SimpleStochasticGame(
        n=n, r=r, kinds=kinds,
        successors=((), *(entries[k][1] for k in range(1, n + 1))),
        comment="\n".join(comments))


def serialize_game(game: SimpleStochasticGame) -> str:
    lines = [f"# {c}" for c in game.comment.splitlines() if c]
    lines.append(f"ssg {game.n} {game.r}")
    for k in range(1, game.n + 1):
        s1, s2 = game.successors[k]
        lines.append(f"{k} {game.kinds[k].value} {s1} {s2}")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class PositionalStrategy:
    """Arc-slot choice (0 or 1) for each position of one player."""

    player: PositionKind
    choices: Mapping[int, int]

    def __getitem__(self, k: int) -> int:
        return self.choices[k]

    def __len__(self):
        return len(self.choices)

    def covers(self, game: SimpleStochasticGame) -> bool:
        return (set(self.choices) == set(game.positions(self.player))
                and all(c in (0, 1) for c in self.choices.values()))

    def successor(self, game: SimpleStochasticGame, k: int) -> int:
        return game.successors[k][self.choices[k]]
