"""Plain-text game commentary: per-player extremes, averages, top-move rates, verdict."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .dse import DecisionResult
from .errors import ValidationError
from .ingest import Color, PredictionRecord, encode_point


@dataclass(frozen=True)
class PlayerSummary:
    color: Color
    n_moves: int
    top3_sims: tuple     # ((move_no, sims), ...) descending
    bottom3_sims: tuple  # ascending
    max_wr: tuple        # (move_no, winrate), own perspective
    min_wr: tuple
    avg_wr: float
    tmr: float


@dataclass(frozen=True)
class GameSummary:
    black: Optional[PlayerSummary]
    white: Optional[PlayerSummary]
    overall: DecisionResult
    next_moves: tuple = ()  # ((point, winrate, sims), ...)

    def player(self, color: Color) -> Optional[PlayerSummary]:
        return self.black if color is Color.BLACK else self.white


def top3_next(record: PredictionRecord) -> list:
    return [(c.point, c.winrate, c.sims) for c in record.candidates[:3]]


def _player_summary(features, color):
    own = [f for f in features if f.color is color]
    if not own:
        return None
    sims = [(f.move_no, f.sims) for f in own]
    wr = [(f.move_no, f.wr_black if color is Color.BLACK else 1.0 - f.wr_black) for f in own]
    top = sorted(sims, key=lambda p: (-p[1], p[0]))[:3]
    bottom = sorted(sims, key=lambda p: (p[1], p[0]))[:3]
    max_wr = min(wr, key=lambda p: (-p[1], p[0]))
    min_wr = min(wr, key=lambda p: (p[1], p[0]))
    last = max(own, key=lambda f: f.move_no)
    tmr = last.tmr_black if color is Color.BLACK else last.tmr_white
    return PlayerSummary(color, len(own), tuple(top), tuple(bottom), max_wr, min_wr,
                         sum(v for _, v in wr) / len(wr), tmr)


def summarize(features: Sequence, decision: DecisionResult,
              next_record: Optional[PredictionRecord] = None) -> GameSummary:
    if not features:
        raise ValidationError("cannot summarize a game without analysed moves")
    return GameSummary(
        _player_summary(features, Color.BLACK),
        _player_summary(features, Color.WHITE),
        decision,
        tuple(top3_next(next_record)) if next_record is not None else (),
    )


def _pairs(pairs):
    return ", ".join(f"move {m} ({v})" for m, v in pairs)


def _point(p):
    return "pass" if p is None else encode_point(p)


def render(summary: GameSummary) -> str:
    lines = ["Game situation report", ""]
    for color in (Color.BLACK, Color.WHITE):
        p = summary.player(color)
        name = "Black" if color is Color.BLACK else "White"
        lines.append(f"[{name}]")
        if p is None:
            lines.extend(["  no analysed moves", ""])
            continue
        lines.extend([
            f"  Highest simulations: {_pairs(p.top3_sims)}",
            f"  Lowest simulations: {_pairs(p.bottom3_sims)}",
            f"  Highest winning rate: move {p.max_wr[0]} ({p.max_wr[1]:.2%})",
            f"  Lowest winning rate: move {p.min_wr[0]} ({p.min_wr[1]:.2%})",
            f"  Average winning rate: {p.avg_wr:.2%}",
            f"  Top-move rate: {p.tmr:.2%}",
            "",
        ])
    d = summary.overall
    lines.append(f"[Decision] K={d.k}, y_cgs={d.y_cgs:+.4f}, window votes: "
                 + " ".join(f"{lo}-{hi}:{v.fn_value:+d}" for (lo, hi), v in zip(d.windows, d.votes)))
    if summary.next_moves:
        lines.append("Suggested next moves: " + ", ".join(
            f"{_point(pt)} ({wr:.2%}, {sims} sims)" for pt, wr, sims in summary.next_moves))
    lines.append(f"Overall: {d.verdict.long_name}")
    return "\n".join(lines) + "\n"
