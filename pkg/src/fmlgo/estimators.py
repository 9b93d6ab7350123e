"""scikit-learn wrappers so assessment and prediction compose in a Pipeline.

``X`` is a list of games.  :class:`CgsAssessor` turns analysed games into
CGS label sequences; :class:`DecisionSupportClassifier` turns label
sequences into predicted winners ("Black", "White", or "Unknown" when the
engine returns an uncertain verdict).
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from . import dse
from .assessment import (DEFAULT_T_BIG, DEFAULT_T_SMALL, DEFAULT_WINDOW, check_thresholds, assess,
                         check_fml_system, default_system)
from .errors import ValidationError
from .fml import FuzzySystem, load_fml
from .validation import check_feature_games, check_k, check_label_sequences, check_method


class CgsAssessor(TransformerMixin, BaseEstimator):
    """Label every analysed move with a current-game-situation label.

    Parameters
    ----------
    method : {"wr_diff", "sim_diff", "fml1", "fml2"}
    t_small, t_big : float
        Band thresholds for the two difference methods.
    window : int
        Trailing window (in moves) for the simulation share.
    fml : str, path or FuzzySystem, optional
        Rule base for the fuzzy methods; the bundled one is used when None.
    """

    def __init__(self, method="fml2", t_small=DEFAULT_T_SMALL, t_big=DEFAULT_T_BIG,
                 window=DEFAULT_WINDOW, fml=None):
        self.method = method
        self.t_small = t_small
        self.t_big = t_big
        self.window = window
        self.fml = fml

    def fit(self, X=None, y=None):
        check_method(self.method)
        check_thresholds(self.t_small, self.t_big)
        if self.window < 2:
            raise ValidationError("window must be at least 2")
        self.system_ = None
        if self.method in ("fml1", "fml2"):
            variant = int(self.method[-1])
            if self.fml is None:
                system = default_system(variant)
            elif isinstance(self.fml, FuzzySystem):
                system = self.fml
            else:
                system = load_fml(self.fml)
            check_fml_system(system, variant)
            self.system_ = system
        return self

    def transform(self, X):
        check_is_fitted(self, "system_")
        return [
            assess(features, self.method, t_small=self.t_small, t_big=self.t_big, window=self.window,
                   system=self.system_, n_moves=n_moves)
            for features, n_moves in check_feature_games(X)
        ]


class DecisionSupportClassifier(ClassifierMixin, BaseEstimator):
    """Predict the winner of each game from its CGS labels by windowed voting."""

    def __init__(self, k=4, weights="uniform"):
        self.k = k
        self.weights = weights

    def fit(self, X=None, y=None):
        check_k(self.k)
        dse.check_weights(self.weights, self.k)
        self.classes_ = np.array(["Black", "White"])
        return self

    def explain(self, X) -> list:
        """Full :class:`~fmlgo.dse.DecisionResult` for every game."""
        check_is_fitted(self, "classes_")
        return [dse.predict(labels, self.k, self.weights) for labels in check_label_sequences(X)]

    def decision_function(self, X):
        """Aggregate vote ``y_cgs``; negative favours Black."""
        return np.array([r.y_cgs for r in self.explain(X)])

    def predict_label(self, X) -> list:
        return [r.verdict for r in self.explain(X)]

    def predict(self, X):
        return np.array([dse.verdict_winner(r.verdict).value for r in self.explain(X)], dtype=object)
