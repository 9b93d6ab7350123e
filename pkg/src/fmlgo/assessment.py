"""Per-move features and current-game-situation (CGS) labelling.

Four labelling methods are provided: winning-rate difference, simulation
difference, and two fuzzy rule bases.  All labels use the Black-negative
code convention (B++ = -2 ... W++ = +2).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from importlib import resources
from typing import Iterable, Sequence

from .errors import ValidationError
from .fml import FuzzySystem, infer, parse_fml
from .ingest import AnalyzedGame, Color

DEFAULT_T_SMALL = 0.05
DEFAULT_T_BIG = 0.25
DEFAULT_WINDOW = 10


class CgsLabel(Enum):
    B_PLUS_PLUS = -2
    B_PLUS = -1
    UNCERTAIN = 0
    W_PLUS = 1
    W_PLUS_PLUS = 2

    @property
    def code(self) -> int:
        return self.value

    @property
    def short(self) -> str:
        return _SHORT[self]

    @property
    def long_name(self) -> str:
        return _LONG[self]

    @property
    def camel(self) -> str:
        return _CAMEL[self]

    def mirror(self) -> "CgsLabel":
        return CgsLabel(-self.value)

    @classmethod
    def from_code(cls, code: int) -> "CgsLabel":
        return cls(int(code))

    @classmethod
    def parse(cls, text: str) -> "CgsLabel":
        """Accept ``B++``, ``B2``, enum names, or camel-case long names."""
        key = text.strip()
        for label in cls:
            if key in (label.short, label.name, label.camel, _TERM_NAMES[label]):
                return label
        raise ValidationError(f"unknown CGS label {text!r}")

    def __str__(self):
        return self.short


_SHORT = {CgsLabel.B_PLUS_PLUS: "B++", CgsLabel.B_PLUS: "B+", CgsLabel.UNCERTAIN: "U",
          CgsLabel.W_PLUS: "W+", CgsLabel.W_PLUS_PLUS: "W++"}
_TERM_NAMES = {CgsLabel.B_PLUS_PLUS: "B2", CgsLabel.B_PLUS: "B1", CgsLabel.UNCERTAIN: "U",
               CgsLabel.W_PLUS: "W1", CgsLabel.W_PLUS_PLUS: "W2"}
_CAMEL = {CgsLabel.B_PLUS_PLUS: "BlackObviousAdvantage", CgsLabel.B_PLUS: "BlackPossibleAdvantage",
          CgsLabel.UNCERTAIN: "UncertainSituation", CgsLabel.W_PLUS: "WhitePossibleAdvantage",
          CgsLabel.W_PLUS_PLUS: "WhiteObviousAdvantage"}
_LONG = {CgsLabel.B_PLUS_PLUS: "Black is obvious advantage", CgsLabel.B_PLUS: "Black is possible advantage",
         CgsLabel.UNCERTAIN: "Both are in an uncertain situation",
         CgsLabel.W_PLUS: "White is possible advantage", CgsLabel.W_PLUS_PLUS: "White is obvious advantage"}


@dataclass(frozen=True)
class MoveFeatures:
    move_no: int
    color: Color
    sims: int
    wr_black: float
    top_match: bool
    tmr_black: float
    tmr_white: float

    @property
    def tmr_diff(self) -> float:
        return self.tmr_black - self.tmr_white


@dataclass(frozen=True)
class CgsEntry:
    move_no: int
    label: CgsLabel
    method: str


@dataclass(frozen=True)
class CgsSequence:
    """Labels for the analysed moves of one game, in move order.

    ``n_moves`` is the full game length; moves without an entry count as
    uncertain when the sequence is densified.
    """

    entries: tuple
    method: str
    n_moves: int

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        prev = 0
        for e in self.entries:
            if e.move_no <= prev or e.move_no > self.n_moves:
                raise ValidationError(f"CGS entries must be strictly increasing within 1..{self.n_moves}")
            prev = e.move_no

    @classmethod
    def from_labels(cls, labels: Iterable[CgsLabel], method: str = "given"):
        labels = list(labels)
        return cls(tuple(CgsEntry(i, lab, method) for i, lab in enumerate(labels, start=1)), method, len(labels))

    @property
    def labels(self) -> tuple:
        return tuple(e.label for e in self.entries)

    def dense(self) -> list:
        out = [CgsLabel.UNCERTAIN] * self.n_moves
        for e in self.entries:
            out[e.move_no - 1] = e.label
        return out

    def mirrored(self) -> "CgsSequence":
        return CgsSequence(tuple(CgsEntry(e.move_no, e.label.mirror(), e.method) for e in self.entries),
                           self.method, self.n_moves)


def extract_features(game: AnalyzedGame) -> list:
    """Derive simulations, Black-perspective winrate and cumulative top-move rates.

    When the played move is not among the engine's candidates its simulation
    count is 0 and the previous move's winrate is carried forward (0.5 before
    the first move).
    """
    if game.n_joined == 0:
        raise ValidationError("no prediction records joined to the game")
    features = []
    wr_black = 0.5
    played = {Color.BLACK: 0, Color.WHITE: 0}
    top = {Color.BLACK: 0, Color.WHITE: 0}
    for rec in game.joined:
        if rec is None:
            continue
        hit = next((c for c in rec.candidates if rec.played is not None and c.point == rec.played), None)
        sims = 0
        if hit is not None:
            sims = hit.sims
            wr_black = hit.winrate if rec.color is Color.BLACK else 1.0 - hit.winrate
        top_match = rec.played is not None and bool(rec.candidates) and rec.candidates[0].point == rec.played
        played[rec.color] += 1
        top[rec.color] += top_match
        features.append(MoveFeatures(
            move_no=rec.move_no,
            color=rec.color,
            sims=sims,
            wr_black=wr_black,
            top_match=top_match,
            tmr_black=top[Color.BLACK] / played[Color.BLACK] if played[Color.BLACK] else 0.0,
            tmr_white=top[Color.WHITE] / played[Color.WHITE] if played[Color.WHITE] else 0.0,
        ))
    return features


def check_thresholds(t_small, t_big):
    if not 0 < t_small < t_big <= 0.5:
        raise ValidationError(f"thresholds must satisfy 0 < t_small < t_big <= 0.5, got ({t_small}, {t_big})")


def band(value: float, t_small: float, t_big: float) -> CgsLabel:
    """Map a Black-positive advantage score to a label; odd in ``value``."""
    mag = abs(value)
    level = 2 if mag >= t_big else 1 if mag >= t_small else 0
    return CgsLabel(-level if value > 0 else level)


def _sequence(features, labels, method, n_moves):
    if n_moves is None:
        n_moves = features[-1].move_no if features else 0
    return CgsSequence(tuple(CgsEntry(f.move_no, lab, method) for f, lab in zip(features, labels)),
                       method, n_moves)


def assess_wr_diff(features: Sequence[MoveFeatures], t_small=DEFAULT_T_SMALL, t_big=DEFAULT_T_BIG,
                   n_moves=None) -> CgsSequence:
    check_thresholds(t_small, t_big)
    labels = [band(f.wr_black - 0.5, t_small, t_big) for f in features]
    return _sequence(features, labels, "wr_diff", n_moves)


def sim_shares(features: Sequence[MoveFeatures], window: int = DEFAULT_WINDOW) -> list:
    """Normalised trailing-window simulation difference, Black positive.

    For each move, average the simulation counts of each player's moves among
    the last ``window`` move numbers and return ``(avg_b - avg_w) / (avg_b + avg_w)``.
    The share is 0 if either player has no move in the window or both
    averages are 0.
    """
    if window < 2:
        raise ValidationError("simulation window must be at least 2")
    out = []
    start = 0
    for i, f in enumerate(features):
        while features[start].move_no <= f.move_no - window:
            start += 1
        b = [g.sims for g in features[start:i + 1] if g.color is Color.BLACK]
        w = [g.sims for g in features[start:i + 1] if g.color is Color.WHITE]
        if not b or not w:
            out.append(0.0)
            continue
        avg_b, avg_w = sum(b) / len(b), sum(w) / len(w)
        total = avg_b + avg_w
        out.append((avg_b - avg_w) / total if total > 0 else 0.0)
    return out


def assess_sim_diff(features: Sequence[MoveFeatures], window: int = DEFAULT_WINDOW,
                    t_small=DEFAULT_T_SMALL, t_big=DEFAULT_T_BIG, n_moves=None) -> CgsSequence:
    check_thresholds(t_small, t_big)
    labels = [band(s, t_small, t_big) for s in sim_shares(features, window)]
    return _sequence(features, labels, "sim_diff", n_moves)


FML_INPUTS = {1: ("wr_black", "sim_share"), 2: ("wr_black", "sim_share", "tmr_diff")}


def _term_label_map(system: FuzzySystem) -> dict:
    terms = system.output.term_names
    if len(terms) != 5:
        raise ValidationError(f"output variable {system.output.name!r} must have exactly 5 terms, has {len(terms)}")
    mapping = {name: CgsLabel.parse(name) for name in terms}
    if len(set(mapping.values())) != 5:
        raise ValidationError("output terms must name each of the five CGS labels once")
    return mapping


def check_fml_system(system: FuzzySystem, variant: int) -> dict:
    if variant not in FML_INPUTS:
        raise ValidationError(f"FML variant must be 1 or 2, got {variant}")
    declared = {v.name for v in system.inputs}
    extra = declared - set(FML_INPUTS[variant])
    if extra:
        raise ValidationError(f"variant {variant} system declares unsupported inputs: {', '.join(sorted(extra))}")
    return _term_label_map(system)


def _crisp_label(system: FuzzySystem, mapping: dict, crisp: float) -> CgsLabel:
    # ties between output terms go to the less extreme label so mirrored inputs get mirrored labels
    x = round(crisp, 9)
    degrees = [(t.mf(x), mapping[t.name]) for t in system.output.terms]
    peak = max(d for d, _ in degrees)
    return min((lab for d, lab in degrees if d >= peak - 1e-9), key=lambda lab: abs(lab.code))


def assess_fml(features: Sequence[MoveFeatures], system: FuzzySystem, variant: int,
               window: int = DEFAULT_WINDOW, n_moves=None) -> CgsSequence:
    mapping = check_fml_system(system, variant)
    shares = sim_shares(features, window)
    labels = []
    for f, share in zip(features, shares):
        inputs = {"wr_black": f.wr_black, "sim_share": share}
        if variant == 2:
            inputs["tmr_diff"] = f.tmr_diff
        labels.append(_crisp_label(system, mapping, infer(system, inputs).crisp))
    return _sequence(features, labels, f"fml{variant}", n_moves)


def default_system(variant: int) -> FuzzySystem:
    """The bundled rule base for variant 1 or 2."""
    if variant not in FML_INPUTS:
        raise ValidationError(f"FML variant must be 1 or 2, got {variant}")
    text = resources.files("fmlgo").joinpath("data", f"assessment{variant}.fml").read_text(encoding="utf-8")
    return parse_fml(text)


METHODS = ("wr_diff", "sim_diff", "fml1", "fml2")


def assess(features: Sequence[MoveFeatures], method: str = "fml2", *, t_small=DEFAULT_T_SMALL,
           t_big=DEFAULT_T_BIG, window=DEFAULT_WINDOW, system: FuzzySystem | None = None,
           n_moves=None) -> CgsSequence:
    """Dispatch to one of the four labelling methods by name."""
    if method == "wr_diff":
        return assess_wr_diff(features, t_small, t_big, n_moves)
    if method == "sim_diff":
        return assess_sim_diff(features, window, t_small, t_big, n_moves)
    if method in ("fml1", "fml2"):
        variant = int(method[-1])
        return assess_fml(features, system or default_system(variant), variant, window, n_moves)
    raise ValidationError(f"unknown assessment method {method!r}; choose from {', '.join(METHODS)}")
