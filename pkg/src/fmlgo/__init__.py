"""Fuzzy assessment of Go game situations and windowed winner prediction."""

from .assessment import (CgsLabel, CgsSequence, MoveFeatures, assess, assess_fml, assess_sim_diff,
                         assess_wr_diff, default_system, extract_features)
from .dse import DecisionResult, WindowVote, aggregate, decide, evaluate, predict, window_vote, windows
from .errors import (DomainError, FmlError, FmlGoError, LogFormatError, SgfParseError, ValidationError)
from .estimators import CgsAssessor, DecisionSupportClassifier
from .ingest import (AnalyzedGame, Color, GameRecord, PredictionLog, PredictionRecord, SynthProfile, Winner,
                     join, parse_prediction_log, parse_sgf, serialize_prediction_log, serialize_sgf, synth_log)
from .report import render, summarize, top3_next

__version__ = "0.1.0"

__all__ = [
    "AnalyzedGame", "CgsAssessor", "CgsLabel", "CgsSequence", "Color", "DecisionResult",
    "DecisionSupportClassifier", "DomainError", "FmlError", "FmlGoError", "GameRecord", "LogFormatError",
    "MoveFeatures", "PredictionLog", "PredictionRecord", "SgfParseError", "SynthProfile", "ValidationError",
    "WindowVote", "Winner", "aggregate", "assess", "assess_fml", "assess_sim_diff", "assess_wr_diff", "decide",
    "default_system", "evaluate", "extract_features", "join", "parse_prediction_log", "parse_sgf", "predict",
    "render", "serialize_prediction_log", "serialize_sgf", "summarize", "synth_log", "top3_next",
    "window_vote", "windows",
]
