"""Decision support engine: vote over K neighbourhood windows to call the winner.

A game of N moves is split into K sub-games.  Window ``i < K`` is the 11
moves centred on ``round(N / K) * i``; the last window is always the final
11 moves.  Inside each window the non-uncertain labels are counted and the
most frequent one votes -2/-1/+1/+2; the weighted sum of votes is
thresholded back to a label.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from typing import Sequence

from .assessment import CgsLabel, CgsSequence
from .errors import DomainError, ValidationError
from .ingest import Winner

HALF_WIDTH = 5
MIN_MOVES = 2 * HALF_WIDTH + 1
VOTE_ORDER = (CgsLabel.B_PLUS_PLUS, CgsLabel.B_PLUS, CgsLabel.W_PLUS, CgsLabel.W_PLUS_PLUS)
OUTPUT_ARY = (-2, -1, 1, 2)
ZERO_TOL = 1e-12
WEIGHT_TOL = 1e-9


def round_half_away(x: float) -> int:
    return int(Decimal(x).quantize(Decimal(1), rounding=ROUND_HALF_UP))


def windows(n_moves: int, k: int) -> list:
    """Inclusive ``(first, last)`` move ranges of the K neighbourhood windows."""
    if n_moves < MIN_MOVES:
        raise DomainError(f"need at least {MIN_MOVES} moves, got {n_moves}")
    if not 1 <= k <= n_moves / 2:
        raise DomainError(f"k must lie in 1..{n_moves // 2} for {n_moves} moves, got {k}")
    index = round_half_away(n_moves / k)
    ranges = []
    for i in range(1, k):
        center = index * i
        # for large k the rounded index can push a centre past the end; both bounds stay in 1..N
        lo = min(max(1, center - HALF_WIDTH), n_moves)
        ranges.append((lo, min(n_moves, center + HALF_WIDTH)))
    ranges.append((n_moves - 2 * HALF_WIDTH, n_moves))
    return ranges


@dataclass(frozen=True)
class WindowVote:
    counts: tuple  # (B++, B+, W+, W++)
    fn_value: int

    @property
    def total(self) -> int:
        return sum(self.counts)


def window_vote(cgs: Sequence[CgsLabel]) -> WindowVote:
    """Majority vote over the non-uncertain labels; ties go to the earliest of B++, B+, W+, W++."""
    counts = tuple(sum(1 for lab in cgs if lab is v) for v in VOTE_ORDER)
    if sum(counts) == 0:
        return WindowVote(counts, 0)
    return WindowVote(counts, OUTPUT_ARY[counts.index(max(counts))])


def check_weights(weights, k: int) -> tuple:
    """Resolve ``None``/``"uniform"`` or validate an explicit weight vector."""
    if weights is None or (isinstance(weights, str) and weights == "uniform"):
        return tuple([1.0 / k] * k)
    weights = tuple(float(w) for w in weights)
    if len(weights) != k:
        raise ValidationError(f"expected {k} weights, got {len(weights)}")
    if any(w < 0 or not math.isfinite(w) for w in weights):
        raise ValidationError("weights must be finite and non-negative")
    if abs(math.fsum(weights) - 1.0) > WEIGHT_TOL:
        raise ValidationError(f"weights must sum to 1 (got {math.fsum(weights)!r})")
    return weights


def aggregate(votes: Sequence[WindowVote], weights=None) -> float:
    """Weighted sum of window votes.

    With uniform weights the sum is taken as ``sum(fn) / K`` so unanimous
    extreme votes land exactly on +/-2.
    """
    k = len(votes)
    if k == 0:
        raise ValidationError("no window votes to aggregate")
    fns = [v.fn_value for v in votes]
    if weights is None or (isinstance(weights, str) and weights == "uniform"):
        return sum(fns) / k
    weights = check_weights(weights, k)
    return math.fsum(fn * w for fn, w in zip(fns, weights))


def decide(y_cgs: float) -> CgsLabel:
    if y_cgs <= -2:
        return CgsLabel.B_PLUS_PLUS
    if y_cgs >= 2:
        return CgsLabel.W_PLUS_PLUS
    if abs(y_cgs) < ZERO_TOL:
        return CgsLabel.UNCERTAIN
    return CgsLabel.B_PLUS if y_cgs < 0 else CgsLabel.W_PLUS


@dataclass(frozen=True)
class DecisionResult:
    n_moves: int
    k: int
    weights: tuple
    windows: tuple
    votes: tuple
    y_cgs: float
    verdict: CgsLabel

    @property
    def fn_values(self) -> tuple:
        return tuple(v.fn_value for v in self.votes)

    def to_dict(self) -> dict:
        return {
            "n_moves": self.n_moves,
            "k": self.k,
            "weights": list(self.weights),
            "windows": [
                {"index": i, "moves": list(rng), "counts": dict(zip(("B++", "B+", "W+", "W++"), v.counts)),
                 "fn": v.fn_value}
                for i, (rng, v) in enumerate(zip(self.windows, self.votes), start=1)
            ],
            "y_cgs": self.y_cgs,
            "verdict": self.verdict.short,
        }


def _dense(cgs) -> list:
    if isinstance(cgs, CgsSequence):
        return cgs.dense()
    return [lab if isinstance(lab, CgsLabel) else CgsLabel.from_code(lab) for lab in cgs]


def predict(cgs, k: int = 4, weights=None) -> DecisionResult:
    """Run the full engine on a game's labels.

    ``cgs`` is a :class:`CgsSequence` or a dense list of labels for moves
    1..N.  ``weights`` defaults to uniform.
    """
    labels = _dense(cgs)
    n = len(labels)
    ranges = windows(n, k)
    resolved = check_weights(weights, k)
    votes = tuple(window_vote(labels[lo - 1:hi]) for lo, hi in ranges)
    y = aggregate(votes, weights)
    return DecisionResult(n, k, resolved, tuple(ranges), votes, y, decide(y))


def verdict_winner(label: CgsLabel) -> Winner:
    if label.code < 0:
        return Winner.BLACK
    if label.code > 0:
        return Winner.WHITE
    return Winner.UNKNOWN


# -------------------------------------------------------------------- evaluation


@dataclass(frozen=True)
class GameVerdict:
    game_id: str
    tag: str
    winner: Winner
    results: dict  # k -> DecisionResult

    def correct(self, k: int) -> bool:
        return verdict_winner(self.results[k].verdict) is self.winner


@dataclass(frozen=True)
class EvaluationReport:
    ks: tuple
    games: tuple

    def accuracy(self, k: int) -> float:
        return sum(g.correct(k) for g in self.games) / len(self.games)

    def to_text(self) -> str:
        head = ["Game", "Tag", "Winner"] + [f"K = {k}" for k in self.ks]
        rows = [[g.game_id, g.tag, g.winner.value] + [g.results[k].verdict.short for k in self.ks]
                for g in self.games]
        rows.append(["Accuracy", "", ""] + [f"{100 * self.accuracy(k):.0f}%" for k in self.ks])
        widths = [max(len(r[i]) for r in [head] + rows) for i in range(len(head))]
        fmt = lambda r: "  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip()  # noqa: E731
        rule = "  ".join("-" * w for w in widths)
        return "\n".join([fmt(head), rule] + [fmt(r) for r in rows[:-1]] + [rule, fmt(rows[-1])]) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["game_id", "tag", "winner"] + [f"verdict_k{k}" for k in self.ks])
        for g in self.games:
            writer.writerow([g.game_id, g.tag, g.winner.value] + [g.results[k].verdict.short for k in self.ks])
        writer.writerow(["accuracy", "", ""] + [f"{self.accuracy(k):.4f}" for k in self.ks])
        return buf.getvalue()


def evaluate(corpus, ks=(3, 4), weights=None) -> EvaluationReport:
    """Score verdicts against known winners for each K.

    ``corpus`` yields ``(game_id, cgs, winner)`` or ``(game_id, cgs, winner, tag)``.
    A verdict is correct when its side matches the winner; U is always wrong.
    """
    if isinstance(ks, int):
        ks = (ks,)
    ks = tuple(ks)
    if not ks:
        raise ValidationError("no K values requested")
    if weights not in (None, "uniform") and len(ks) > 1:
        raise ValidationError("explicit weights require a single K value")
    games = []
    for item in corpus:
        game_id, cgs, winner = item[:3]
        tag = item[3] if len(item) > 3 else ""
        winner = Winner(winner)
        if winner is Winner.UNKNOWN:
            raise ValidationError(f"game {game_id}: winner must be Black or White")
        games.append(GameVerdict(str(game_id), tag, winner, {k: predict(cgs, k, weights) for k in ks}))
    if not games:
        raise ValidationError("empty corpus")
    return EvaluationReport(ks, tuple(games))
