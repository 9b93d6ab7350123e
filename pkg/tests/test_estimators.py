import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import make_pipeline

from fmlgo.assessment import CgsLabel, CgsSequence
from fmlgo.errors import ValidationError
from fmlgo.estimators import CgsAssessor, DecisionSupportClassifier
from fmlgo.ingest import SynthProfile, Winner, join, synth_log


def games(n_games=6, seed=0):
    rng = np.random.default_rng(seed)
    X, y = [], []
    for i in range(n_games):
        winner = Winner.BLACK if i % 2 else Winner.WHITE
        game, log = synth_log(int(rng.integers(120, 200)), SynthProfile(winner=winner), int(rng.integers(2**32)))
        X.append(join(game, log))
        y.append(winner.value)
    return X, y


class TestCgsAssessor:
    def test_params_and_clone(self):
        est = CgsAssessor(method="wr_diff", window=8)
        assert est.get_params()["window"] == 8
        assert clone(est).get_params() == est.get_params()

    def test_transform_shapes(self):
        X, _ = games(2)
        out = CgsAssessor().fit(X).transform(X)
        assert len(out) == 2 and all(isinstance(s, CgsSequence) for s in out)
        assert [s.n_moves for s in out] == [g.game.n_moves for g in X]

    def test_not_fitted(self):
        with pytest.raises(NotFittedError):
            CgsAssessor().transform(games(1)[0])

    @pytest.mark.parametrize("params", [{"method": "x"}, {"t_small": 0.3, "t_big": 0.2}, {"window": 1}])
    def test_invalid_params(self, params):
        with pytest.raises(ValidationError):
            CgsAssessor(**params).fit()

    def test_rejects_bare_game(self):
        X, _ = games(1)
        with pytest.raises(ValidationError):
            CgsAssessor().fit().transform(X[0])


class TestDecisionSupportClassifier:
    def test_predict_labels(self):
        clf = DecisionSupportClassifier(k=4).fit()
        X = [[CgsLabel.W_PLUS] * 100, ["B++"] * 100, [0] * 100]
        assert list(clf.predict(X)) == ["White", "Black", "Unknown"]
        assert list(clf.decision_function(X)) == [1.0, -2.0, 0.0]
        assert clf.predict_label(X)[1] is CgsLabel.B_PLUS_PLUS

    def test_explicit_weights(self):
        clf = DecisionSupportClassifier(k=2, weights=[0.25, 0.75]).fit()
        assert clf.decision_function([["W++"] * 50 + ["B+"] * 50])[0] == pytest.approx(2 * 0.25 - 0.75)

    def test_bad_k(self):
        with pytest.raises(ValidationError):
            DecisionSupportClassifier(k=0).fit()

    def test_not_fitted(self):
        with pytest.raises(NotFittedError):
            DecisionSupportClassifier().predict([["U"] * 20])


def test_pipeline_scores_synthetic_corpus():
    X, y = games(8, seed=5)
    pipe = make_pipeline(CgsAssessor(method="wr_diff"), DecisionSupportClassifier(k=4))
    pipe.fit(X, y)
    assert pipe.score(X, y) == 1.0
    assert clone(pipe).get_params()["decisionsupportclassifier__k"] == 4
