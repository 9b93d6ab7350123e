"""Input checks shared by the estimators and the CLI."""

from __future__ import annotations

from collections.abc import Sequence

from .assessment import METHODS, CgsLabel, CgsSequence, MoveFeatures
from .errors import ValidationError
from .ingest import AnalyzedGame


def check_label_sequence(seq) -> list:
    """Return a dense list of :class:`CgsLabel` from a sequence, codes, or short strings."""
    if isinstance(seq, CgsSequence):
        return seq.dense()
    if isinstance(seq, (str, bytes)) or not isinstance(seq, Sequence):
        raise ValidationError(f"expected a sequence of CGS labels, got {type(seq).__name__}")
    out = []
    for item in seq:
        if isinstance(item, CgsLabel):
            out.append(item)
        elif isinstance(item, str):
            out.append(CgsLabel.parse(item))
        else:
            try:
                out.append(CgsLabel.from_code(item))
            except (ValueError, TypeError):
                raise ValidationError(f"invalid CGS label {item!r}") from None
    return out


def check_label_sequences(X) -> list:
    if isinstance(X, (CgsSequence, str)) or not isinstance(X, Sequence):
        raise ValidationError("expected a list of games")
    return [check_label_sequence(x) for x in X]


def check_feature_games(X) -> list:
    """Accept analysed games or per-game feature lists; return feature lists."""
    from .assessment import extract_features

    if isinstance(X, AnalyzedGame) or not isinstance(X, Sequence):
        raise ValidationError("expected a list of games")
    out = []
    for item in X:
        if isinstance(item, AnalyzedGame):
            out.append((extract_features(item), item.game.n_moves))
        elif isinstance(item, Sequence) and item and all(isinstance(f, MoveFeatures) for f in item):
            out.append((list(item), None))
        else:
            raise ValidationError("each game must be an AnalyzedGame or a non-empty list of MoveFeatures")
    return out


def check_k(k) -> int:
    if isinstance(k, bool) or not isinstance(k, int) or k < 1:
        raise ValidationError(f"k must be a positive integer, got {k!r}")
    return k


def check_method(method: str) -> str:
    if method not in METHODS:
        raise ValidationError(f"unknown assessment method {method!r}; choose from {', '.join(METHODS)}")
    return method
