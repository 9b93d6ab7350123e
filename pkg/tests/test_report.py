import pytest

from fmlgo.assessment import CgsLabel, MoveFeatures
from fmlgo.dse import predict
from fmlgo.errors import ValidationError
from fmlgo.ingest import Color
from fmlgo.report import render, summarize, top3_next

from helpers import record

B, W = Color.BLACK, Color.WHITE


def f(move_no, sims, wr_black=0.5, tmr=(0.0, 0.0)):
    return MoveFeatures(move_no, B if move_no % 2 else W, sims, wr_black, False, *tmr)


DECISION_WP = predict([CgsLabel.W_PLUS] * 30, 4)


class TestSummarize:
    def test_top3_descending(self):
        features = [f(1, 10), f(2, 99), f(3, 30), f(4, 99), f(5, 20), f(6, 99)]
        s = summarize(features, DECISION_WP)
        assert s.black.top3_sims == ((3, 30), (5, 20), (1, 10))
        assert s.black.bottom3_sims == ((1, 10), (5, 20), (3, 30))

    def test_tie_lower_move_first(self):
        features = [f(1, 50), f(2, 1), f(3, 50), f(4, 1), f(5, 10)]
        s = summarize(features, DECISION_WP)
        assert s.black.top3_sims[:2] == ((1, 50), (3, 50))
        assert s.white.bottom3_sims == ((2, 1), (4, 1))

    def test_average_own_perspective(self):
        s = summarize([f(1, 5, 0.4), f(2, 5, 0.3), f(3, 5, 0.6)], DECISION_WP)
        assert s.black.avg_wr == pytest.approx(0.5)
        assert s.white.avg_wr == pytest.approx(0.7)
        assert s.black.max_wr == (3, 0.6) and s.black.min_wr == (1, 0.4)

    def test_tmr_is_final_value(self):
        s = summarize([f(1, 5, tmr=(1.0, 0.0)), f(2, 5, tmr=(1.0, 0.0)), f(3, 5, tmr=(0.5, 0.0))], DECISION_WP)
        assert s.black.tmr == 0.5

    def test_empty(self):
        with pytest.raises(ValidationError):
            summarize([], DECISION_WP)


class TestRender:
    def test_overall_line(self):
        text = render(summarize([f(i, 10 * i) for i in range(1, 9)], DECISION_WP))
        overall = [line for line in text.splitlines() if line.startswith("Overall:")]
        assert overall == ["Overall: White is possible advantage"]

    def test_deterministic(self):
        features = [f(i, (7 * i) % 11, 0.5 + i / 100) for i in range(1, 20)]
        assert render(summarize(features, DECISION_WP)) == render(summarize(features, DECISION_WP))

    def test_two_move_game(self):
        text = render(summarize([f(1, 10), f(2, 20)], DECISION_WP))
        assert "Highest simulations: move 1 (10)\n" in text
        assert "Highest simulations: move 2 (20)\n" in text

    def test_next_moves(self):
        rec = record(3, B, (4, 4), ((4, 4), 900, 0.61), ((16, 16), 50, 0.55), ((3, 3), 20, 0.5), ((1, 1), 1, 0.1))
        text = render(summarize([f(1, 1), f(2, 2)], DECISION_WP, rec))
        assert "Suggested next moves: dd (61.00%, 900 sims), pp (55.00%, 50 sims), cc (50.00%, 20 sims)" in text


class TestTop3Next:
    def test_first_three_of_five(self):
        rec = record(1, B, (1, 1), *[((i, 1), 100 - i, 0.5) for i in range(1, 6)])
        assert [p for p, _, _ in top3_next(rec)] == [(1, 1), (2, 1), (3, 1)]

    def test_two_candidates(self):
        rec = record(1, B, (1, 1), ((1, 1), 5, 0.5), ((2, 2), 4, 0.4))
        assert top3_next(rec) == [((1, 1), 0.5, 5), ((2, 2), 0.4, 4)]
