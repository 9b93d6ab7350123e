"""Game records, engine prediction logs, and the join between them.

Board points are ``(col, row)`` tuples, 1-based, in SGF letter order
(``"pd"`` -> ``(16, 4)``).  ``None`` stands for a pass.
"""

from __future__ import annotations

import json
import string
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Optional

import numpy as np

from .errors import LogFormatError, SgfParseError, ValidationError

Point = Optional[tuple]

_SGF_LETTERS = string.ascii_lowercase + string.ascii_uppercase


class Color(str, Enum):
    BLACK = "B"
    WHITE = "W"

    @property
    def opponent(self) -> "Color":
        return Color.WHITE if self is Color.BLACK else Color.BLACK


class Winner(str, Enum):
    BLACK = "Black"
    WHITE = "White"
    UNKNOWN = "Unknown"


class Move(NamedTuple):
    move_no: int
    color: Color
    point: Point


def decode_point(value: str, board_size: int | None = None) -> Point:
    """SGF two-letter coordinate to ``(col, row)``; ``""``/``"pass"`` (and ``tt`` on small boards) is a pass."""
    if value in ("", "pass"):
        return None
    if value == "tt" and (board_size is None or board_size <= 19):
        return None
    if len(value) != 2 or any(ch not in _SGF_LETTERS for ch in value):
        raise ValidationError(f"malformed coordinate {value!r}")
    point = (_SGF_LETTERS.index(value[0]) + 1, _SGF_LETTERS.index(value[1]) + 1)
    if board_size is not None and not on_board(point, board_size):
        raise ValidationError(f"coordinate {value!r} is off a {board_size}x{board_size} board")
    return point


def encode_point(point: Point) -> str:
    if point is None:
        return ""
    col, row = point
    return _SGF_LETTERS[col - 1] + _SGF_LETTERS[row - 1]


def on_board(point: Point, board_size: int) -> bool:
    return point is None or (1 <= point[0] <= board_size and 1 <= point[1] <= board_size)


@dataclass(frozen=True)
class GameRecord:
    moves: tuple
    komi: float = 0.0
    handicap: int = 0
    result: Winner = Winner.UNKNOWN
    board_size: int = 19
    setup_black: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "moves", tuple(Move(*m) for m in self.moves))
        object.__setattr__(self, "setup_black", tuple(self.setup_black))
        object.__setattr__(self, "result", Winner(self.result))
        if not 2 <= self.board_size <= 52:
            raise ValidationError(f"unsupported board size {self.board_size}")
        if self.handicap < 0:
            raise ValidationError("handicap must be non-negative")
        expected = Color.WHITE if self.handicap > 0 else Color.BLACK
        for i, move in enumerate(self.moves, start=1):
            if move.move_no != i:
                raise ValidationError(f"move numbers must run 1..N without gaps (found {move.move_no} at position {i})")
            if Color(move.color) is not expected:
                raise ValidationError(f"move {i}: expected {expected.name.lower()} to play")
            if not on_board(move.point, self.board_size):
                raise ValidationError(f"move {i}: point {move.point} is off the board")
            expected = expected.opponent
        for point in self.setup_black:
            if point is None or not on_board(point, self.board_size):
                raise ValidationError(f"handicap stone {point} is off the board")

    @property
    def n_moves(self) -> int:
        return len(self.moves)


# --------------------------------------------------------------------------- SGF


def _is_letter(b: int) -> bool:
    return 65 <= b <= 90 or 97 <= b <= 122


class _SgfReader:
    def __init__(self, text: str):
        self.data = text.encode("utf-8")
        self.pos = 0

    def error(self, message):
        raise SgfParseError(message, self.pos)

    def skip_ws(self):
        while self.pos < len(self.data) and self.data[self.pos] in b" \t\r\n":
            self.pos += 1

    def peek(self) -> int | None:
        self.skip_ws()
        return self.data[self.pos] if self.pos < len(self.data) else None

    def expect(self, byte: bytes):
        if self.peek() != byte[0]:
            self.error(f"expected {byte.decode()!r}")
        self.pos += 1

    def game_tree(self) -> list:
        """Parse ``( sequence tree* )`` and return the nodes along the main line."""
        self.expect(b"(")
        nodes = []
        if self.peek() != ord(";"):
            self.error("game tree must start with a node")
        while self.peek() == ord(";"):
            self.pos += 1
            nodes.append(self.node())
        first_child = None
        while self.peek() == ord("("):
            child = self.game_tree()
            if first_child is None:
                first_child = child
        self.expect(b")")
        return nodes + (first_child or [])

    def node(self) -> list:
        props = []
        while True:
            c = self.peek()
            if c is None or not _is_letter(c):
                return props
            start = self.pos
            while self.pos < len(self.data) and _is_letter(self.data[self.pos]):
                self.pos += 1
            # FF[3] allowed lowercase letters inside identifiers; only the capitals are significant
            ident = "".join(ch for ch in self.data[start:self.pos].decode("ascii") if ch.isupper())
            end = self.pos
            values = []
            while self.peek() == ord("["):
                values.append(self.value())
            if not ident or not values:
                self.pos = start
                self.error(f"property {self.data[start:end].decode('ascii')!r} is malformed or has no value")
            props.append((ident, values, start))

    def value(self) -> str:
        self.pos += 1  # '['
        out = bytearray()
        while True:
            if self.pos >= len(self.data):
                self.error("unterminated property value")
            b = self.data[self.pos]
            if b == ord("\\"):
                self.pos += 1
                if self.pos >= len(self.data):
                    self.error("unterminated escape")
                out.append(self.data[self.pos])
            elif b == ord("]"):
                self.pos += 1
                return out.decode("utf-8", errors="replace")
            else:
                out.append(b)
            self.pos += 1


def _parse_result(value: str) -> Winner:
    value = value.strip().upper()
    if value.startswith("B+"):
        return Winner.BLACK
    if value.startswith("W+"):
        return Winner.WHITE
    return Winner.UNKNOWN


def parse_sgf(text: str) -> GameRecord:
    """Parse the main line of a single SGF game tree.

    Honors GM, SZ, KM, HA, AB, B, W and RE; every other property is ignored.
    Syntax errors raise :class:`SgfParseError` carrying a byte offset, bad
    coordinates raise :class:`ValidationError` naming the move number.
    """
    reader = _SgfReader(text)
    if reader.peek() is None:
        reader.error("empty input")
    nodes = reader.game_tree()
    trailing = reader.peek()
    if trailing is not None and trailing != ord("("):
        reader.error("unexpected data after game tree")

    root = {ident: values for ident, values, _ in nodes[0]}
    if "GM" in root and root["GM"][0].strip() not in ("", "1"):
        raise ValidationError(f"GM[{root['GM'][0]}] is not a Go record")
    board_size = 19
    if "SZ" in root:
        try:
            board_size = int(root["SZ"][0].strip())
        except ValueError:
            raise ValidationError(f"unsupported board size SZ[{root['SZ'][0]}]") from None
    try:
        komi = float(root["KM"][0]) if "KM" in root and root["KM"][0].strip() else 0.0
        handicap = int(root["HA"][0]) if "HA" in root and root["HA"][0].strip() else 0
    except ValueError as exc:
        raise ValidationError(f"bad KM/HA value: {exc}") from None
    result = _parse_result(root["RE"][0]) if "RE" in root else Winner.UNKNOWN
    setup = []
    for value in root.get("AB", []):
        try:
            setup.append(decode_point(value, board_size))
        except ValidationError as exc:
            raise ValidationError(f"handicap stone: {exc}") from None

    moves = []
    for props in nodes:
        played = [(ident, values) for ident, values, _ in props if ident in ("B", "W")]
        if len(played) > 1:
            raise ValidationError(f"move {len(moves) + 1}: node holds both a black and a white move")
        if played:
            ident, values = played[0]
            move_no = len(moves) + 1
            try:
                point = decode_point(values[0].strip(), board_size)
            except ValidationError as exc:
                raise ValidationError(f"move {move_no}: {exc}") from None
            moves.append(Move(move_no, Color(ident), point))
    return GameRecord(tuple(moves), komi, handicap, result, board_size, tuple(setup))


def serialize_sgf(game: GameRecord) -> str:
    parts = [f"(;GM[1]FF[4]SZ[{game.board_size}]KM[{game.komi!r}]HA[{game.handicap}]"]
    if game.result is Winner.BLACK:
        parts.append("RE[B+]")
    elif game.result is Winner.WHITE:
        parts.append("RE[W+]")
    if game.setup_black:
        parts.append("AB" + "".join(f"[{encode_point(p)}]" for p in game.setup_black))
    parts.extend(f";{m.color.value}[{encode_point(m.point)}]" for m in game.moves)
    parts.append(")")
    return "".join(parts)


# -------------------------------------------------------------- prediction logs


class Candidate(NamedTuple):
    point: Point
    sims: int
    winrate: float


@dataclass(frozen=True)
class PredictionRecord:
    """Engine telemetry for one move; winrates are from the mover's perspective."""

    move_no: int
    color: Color
    played: Point
    candidates: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "color", Color(self.color))
        object.__setattr__(self, "candidates", tuple(Candidate(*c) for c in self.candidates))
        if self.move_no < 1:
            raise ValidationError(f"move_no must be positive, got {self.move_no}")
        if len(self.candidates) > 5:
            raise ValidationError(f"move {self.move_no}: at most 5 candidates allowed")
        if not self.candidates and self.played is not None:
            raise ValidationError(f"move {self.move_no}: empty candidates list")
        for c in self.candidates:
            if not 0.0 <= c.winrate <= 1.0:
                raise ValidationError(f"move {self.move_no}: winrate {c.winrate} outside [0, 1]")
            if c.sims < 0:
                raise ValidationError(f"move {self.move_no}: negative simulation count")


@dataclass(frozen=True)
class PredictionLog:
    records: tuple
    mcts_budget: int
    engine_tag: str = ""

    def __post_init__(self):
        records = tuple(sorted(self.records, key=lambda r: r.move_no))
        for prev, cur in zip(records, records[1:]):
            if prev.move_no == cur.move_no:
                raise ValidationError(f"duplicate record for move {cur.move_no}")
        if self.mcts_budget <= 0:
            raise ValidationError("mcts_budget must be positive")
        object.__setattr__(self, "records", records)


_HEADER_KEYS = ("mcts_budget", "engine_tag")
_RECORD_KEYS = ("move_no", "color", "played", "candidates")
_CANDIDATE_KEYS = ("point", "sims", "winrate")


def _check_keys(obj, keys, lineno, what):
    if not isinstance(obj, dict):
        raise LogFormatError(f"{what} must be a JSON object", lineno)
    unknown = set(obj) - set(keys)
    if unknown:
        raise LogFormatError(f"unknown {what} key(s): {', '.join(sorted(unknown))}", lineno)
    missing = [k for k in keys if k not in obj]
    if missing:
        raise LogFormatError(f"missing {what} key(s): {', '.join(missing)}", lineno)


def _is_int(v):
    return isinstance(v, int) and not isinstance(v, bool)


def _is_number(v):
    return isinstance(v, (int, float)) and not isinstance(v, bool)


def _decode_log_point(value, lineno):
    if not isinstance(value, str):
        raise LogFormatError(f"coordinate must be a string, got {value!r}", lineno)
    try:
        return decode_point(value)
    except ValidationError as exc:
        raise LogFormatError(str(exc), lineno) from None


def parse_prediction_log(data) -> PredictionLog:
    """Parse the newline-delimited JSON log: a header line, then one record per move."""
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise LogFormatError(f"not UTF-8: {exc}") from None
    header = None
    records = []
    for lineno, line in enumerate(data.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise LogFormatError(f"invalid JSON: {exc.msg}", lineno) from None
        if header is None:
            _check_keys(obj, _HEADER_KEYS, lineno, "header")
            if not _is_int(obj["mcts_budget"]) or obj["mcts_budget"] <= 0:
                raise LogFormatError("mcts_budget must be a positive integer", lineno)
            if not isinstance(obj["engine_tag"], str):
                raise LogFormatError("engine_tag must be a string", lineno)
            header = obj
            continue
        _check_keys(obj, _RECORD_KEYS, lineno, "record")
        if not _is_int(obj["move_no"]):
            raise LogFormatError("move_no must be an integer", lineno)
        if obj["color"] not in ("B", "W"):
            raise LogFormatError(f"color must be 'B' or 'W', got {obj['color']!r}", lineno)
        if not isinstance(obj["candidates"], list):
            raise LogFormatError("candidates must be an array", lineno)
        candidates = []
        for cand in obj["candidates"]:
            _check_keys(cand, _CANDIDATE_KEYS, lineno, "candidate")
            if not _is_int(cand["sims"]) or not _is_number(cand["winrate"]):
                raise LogFormatError("sims must be an integer and winrate a number", lineno)
            candidates.append(Candidate(_decode_log_point(cand["point"], lineno), cand["sims"], float(cand["winrate"])))
        try:
            records.append(PredictionRecord(obj["move_no"], Color(obj["color"]),
                                            _decode_log_point(obj["played"], lineno), tuple(candidates)))
        except ValidationError as exc:
            raise LogFormatError(str(exc), lineno) from None
    if header is None:
        raise LogFormatError("missing header line")
    return PredictionLog(tuple(records), header["mcts_budget"], header["engine_tag"])


def _log_point(point: Point) -> str:
    return "pass" if point is None else encode_point(point)


def serialize_prediction_log(log: PredictionLog) -> str:
    lines = [json.dumps({"mcts_budget": log.mcts_budget, "engine_tag": log.engine_tag})]
    for rec in log.records:
        lines.append(json.dumps({
            "move_no": rec.move_no,
            "color": rec.color.value,
            "played": _log_point(rec.played),
            "candidates": [{"point": _log_point(c.point), "sims": c.sims, "winrate": c.winrate}
                           for c in rec.candidates],
        }))
    return "\n".join(lines) + "\n"


# ------------------------------------------------------------------------- join


@dataclass(frozen=True)
class AnalyzedGame:
    game: GameRecord
    log: PredictionLog
    joined: tuple  # one entry per game move; None where the log has no record

    @property
    def n_joined(self) -> int:
        return sum(r is not None for r in self.joined)


def join(game: GameRecord, log: PredictionLog) -> AnalyzedGame:
    """Pair each log record with the game move of the same number.

    A record whose colour or played point disagrees with the game, or whose
    move number exceeds the game length, is an error.  Missing records are
    allowed and show up as ``None``.
    """
    joined: list = [None] * game.n_moves
    for rec in log.records:
        if rec.move_no > game.n_moves:
            raise ValidationError(f"log record for move {rec.move_no} but the game has {game.n_moves} moves")
        move = game.moves[rec.move_no - 1]
        if rec.color is not move.color:
            raise ValidationError(f"move {rec.move_no}: log says {rec.color.name.lower()}, game says {move.color.name.lower()}")
        if rec.played != move.point:
            raise ValidationError(f"move {rec.move_no}: log played {_log_point(rec.played)}, game played {_log_point(move.point)}")
        for cand in rec.candidates:
            if not on_board(cand.point, game.board_size):
                raise ValidationError(f"move {rec.move_no}: candidate {_log_point(cand.point)} is off the board")
        joined[rec.move_no - 1] = rec
    return AnalyzedGame(game, log, tuple(joined))


# -------------------------------------------------------------- synthetic logs


@dataclass(frozen=True)
class SynthProfile:
    """Shape of a synthetic game.

    The Black-perspective winrate follows
    ``0.5 +/- amplitude * (t / n) ** curvature`` plus Gaussian noise, drifting
    toward ``winner``.
    """

    winner: Winner = Winner.BLACK
    amplitude: float = 0.35
    curvature: float = 1.5
    noise: float = 0.04
    top_rate: float = 0.55
    off_list_rate: float = 0.05
    mcts_budget: int = 3000
    board_size: int = 19
    komi: float = 6.5
    engine_tag: str = "synthetic"

    def __post_init__(self):
        object.__setattr__(self, "winner", Winner(self.winner))
        if self.winner is Winner.UNKNOWN:
            raise ValidationError("synthetic profile needs a Black or White winner")
        if not 0 <= self.amplitude < 0.5:
            raise ValidationError("amplitude must lie in [0, 0.5)")
        if not 0 <= self.top_rate + self.off_list_rate <= 1:
            raise ValidationError("top_rate + off_list_rate must lie in [0, 1]")


def synth_log(n_moves: int, profile: SynthProfile, seed: int) -> tuple:
    """Generate a deterministic ``(GameRecord, PredictionLog)`` pair."""
    if n_moves < 11:
        raise ValidationError(f"synthetic games need at least 11 moves, got {n_moves}")
    rng = np.random.default_rng(seed)
    size = profile.board_size
    points = [(c, r) for c in range(1, size + 1) for r in range(1, size + 1)]
    order = rng.permutation(len(points))
    sign = 1.0 if profile.winner is Winner.BLACK else -1.0

    moves, records = [], []
    color = Color.BLACK
    for t in range(1, n_moves + 1):
        played = points[order[t - 1]] if t <= len(points) else None
        moves.append(Move(t, color, played))

        p_black = 0.5 + sign * profile.amplitude * (t / n_moves) ** profile.curvature
        p_black = float(np.clip(p_black + profile.noise * rng.standard_normal(), 0.01, 0.99))
        mover_wr = p_black if color is Color.BLACK else 1.0 - p_black

        if played is None:
            records.append(PredictionRecord(t, color, None, ()))
            color = color.opponent
            continue

        u = rng.random()
        if u < profile.top_rate:
            rank = 0
        elif u < profile.top_rate + profile.off_list_rate:
            rank = None
        else:
            rank = int(rng.integers(1, 5))
        others = [points[i] for i in rng.choice(len(points), size=6, replace=False) if points[i] != played][:5]
        if rank is not None:
            others = others[:4]
            others.insert(rank, played)
        played_rank = 0 if rank is None else rank

        # a confident mover concentrates search on its top line
        lead = 0.45 + 0.5 * (mover_wr - 0.5)
        shares = lead * (1 - lead) ** np.arange(5)
        shares = shares * rng.uniform(0.9, 1.1, size=5)
        sims = np.sort((shares / shares.sum() * profile.mcts_budget).astype(int))[::-1]
        cands = []
        for r, point in enumerate(others):
            wr = float(np.clip(mover_wr + 0.01 * (played_rank - r), 0.0, 1.0))
            if r == played_rank and rank is not None:
                wr = mover_wr
            cands.append(Candidate(point, int(sims[r]), round(wr, 6)))
        records.append(PredictionRecord(t, color, played, tuple(cands)))
        color = color.opponent

    game = GameRecord(tuple(moves), profile.komi, 0, profile.winner, size)
    return game, PredictionLog(tuple(records), profile.mcts_budget, profile.engine_tag)


def load_game(sgf_text: str, log_data) -> AnalyzedGame:
    return join(parse_sgf(sgf_text), parse_prediction_log(log_data))

