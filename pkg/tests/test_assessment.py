import itertools

import pytest
from hypothesis import given, settings, strategies as st

from fmlgo.assessment import (CgsLabel, CgsSequence, MoveFeatures, assess, assess_fml, assess_sim_diff,
                              assess_wr_diff, band, check_fml_system, default_system, extract_features, sim_shares)
from fmlgo.errors import ValidationError
from fmlgo.fml import FuzzySystem, FuzzyTerm, FuzzyVariable, MembershipFunction
from fmlgo.ingest import Color, PredictionLog

from helpers import make_game, scripted_game

B, W = Color.BLACK, Color.WHITE
L = CgsLabel


def feats(wrs, sims=None, tmr=None):
    """Alternating Black/White features with given Black-perspective winrates."""
    sims = sims or [100] * len(wrs)
    out = []
    for i, (wr, s) in enumerate(zip(wrs, sims), start=1):
        tb, tw = tmr[i - 1] if tmr else (0.5, 0.5)
        out.append(MoveFeatures(i, B if i % 2 else W, s, wr, False, tb, tw))
    return out


def swapped(features):
    """Exchange the players: colours, winrate perspective and TMRs."""
    return [MoveFeatures(f.move_no, f.color.opponent, f.sims, 1 - f.wr_black, f.top_match, f.tmr_white,
                         f.tmr_black) for f in features]


class TestLabels:
    def test_codes(self):
        assert [lab.code for lab in L] == [-2, -1, 0, 1, 2]

    def test_names(self):
        assert L.W_PLUS.short == "W+"
        assert L.W_PLUS.long_name == "White is possible advantage"
        assert L.B_PLUS_PLUS.camel == "BlackObviousAdvantage"

    @pytest.mark.parametrize("text", ["B++", "B_PLUS_PLUS", "BlackObviousAdvantage", "B2"])
    def test_parse(self, text):
        assert L.parse(text) is L.B_PLUS_PLUS

    def test_parse_unknown(self):
        with pytest.raises(ValueError):
            L.parse("X")

    def test_mirror_involution(self):
        for lab in L:
            assert lab.mirror().mirror() is lab
            assert lab.mirror().code == -lab.code

    def test_sequence_dense_fills_gaps(self):
        seq = CgsSequence((), "x", 3)
        assert seq.dense() == [L.UNCERTAIN] * 3


class TestExtractFeatures:
    def test_tmr_five_of_eight(self):
        # Black plays moves 1,3,...,15; ranks per Black move: five top hits out of eight
        black_ranks = [0, 0, 1, 0, 2, 0, 0, 3]
        rows = []
        for r in black_ranks:
            rows.append((r, 100, 0.5))
            rows.append((0, 100, 0.5))
        f = extract_features(scripted_game(rows))
        assert f[-1].tmr_black == 0.625
        assert f[-1].tmr_white == 1.0

    def test_perspective_flip(self):
        f = extract_features(scripted_game([(0, 10, 0.5), (0, 10, 0.40)]))
        assert f[1].wr_black == pytest.approx(0.60)

    def test_gap_rule(self):
        rows = [(0, 50, 0.5)] * 5 + [(1, 50, 0.45), (None, 0, 0.0)]
        f = extract_features(scripted_game(rows))
        assert f[5].wr_black == pytest.approx(0.55)  # White move with mover winrate 0.45
        assert f[6].wr_black == f[5].wr_black and f[6].sims == 0 and not f[6].top_match

    def test_gap_at_start(self):
        f = extract_features(scripted_game([(None, 0, 0.0), (0, 10, 0.3)]))
        assert f[0].wr_black == 0.5 and f[0].sims == 0

    def test_empty_join(self):
        from fmlgo.ingest import join
        with pytest.raises(ValidationError):
            extract_features(join(make_game(3), PredictionLog((), 100)))

    @given(st.lists(st.one_of(st.none(), st.integers(0, 3)), min_size=1, max_size=40))
    @settings(max_examples=50, deadline=None)
    def test_tmr_monotone_steps(self, ranks):
        f = extract_features(scripted_game([(r, 10, 0.5) for r in ranks]))
        for prev, cur in zip(f, f[1:]):
            assert 0 <= cur.tmr_black <= 1 and 0 <= cur.tmr_white <= 1
            other = W if cur.color is B else B
            attr = "tmr_black" if other is B else "tmr_white"
            assert getattr(cur, attr) == getattr(prev, attr)


class TestWrDiff:
    @pytest.mark.parametrize("wr,label", [(0.5, L.UNCERTAIN), (0.80, L.B_PLUS_PLUS), (0.40, L.W_PLUS),
                                          (0.25, L.W_PLUS_PLUS), (0.56, L.B_PLUS), (0.53, L.UNCERTAIN)])
    def test_examples(self, wr, label):
        assert assess_wr_diff(feats([wr])).labels == (label,)

    @given(st.lists(st.integers(0, 64), min_size=1, max_size=30))
    def test_antisymmetric(self, ks):
        wrs = [k / 64 for k in ks]  # dyadic so 1 - wr is exact
        a = assess_wr_diff(feats(wrs)).labels
        b = assess_wr_diff(feats([1 - w for w in wrs])).labels
        assert b == tuple(lab.mirror() for lab in a)

    def test_bad_thresholds(self):
        with pytest.raises(ValidationError):
            assess_wr_diff(feats([0.5]), t_small=0.3, t_big=0.2)

    def test_band_odd(self):
        for v in (0.0, 0.05, 0.1, 0.25, 0.4):
            assert band(-v, 0.05, 0.25) is band(v, 0.05, 0.25).mirror()


class TestSimDiff:
    def test_all_equal(self):
        assert set(assess_sim_diff(feats([0.5] * 20)).labels) == {L.UNCERTAIN}

    def test_three_to_one(self):
        f = feats([0.5] * 10, sims=[300, 100] * 5)
        assert sim_shares(f)[-1] == 0.5
        assert assess_sim_diff(f).labels[-1] is L.B_PLUS_PLUS

    def test_short_history_uses_all_moves(self):
        f = feats([0.5] * 3, sims=[300, 100, 500])
        # window of 10 but only 3 moves: Black average (300+500)/2, White 100
        assert sim_shares(f)[-1] == pytest.approx((400 - 100) / 500)

    def test_trailing_window(self):
        f = feats([0.5] * 12, sims=[1000, 10] + [100] * 10)
        assert sim_shares(f, window=10)[-1] == 0.0

    def test_first_move_has_no_opponent(self):
        assert sim_shares(feats([0.5], sims=[50]))[0] == 0.0

    @given(st.lists(st.integers(0, 5000), min_size=1, max_size=40), st.integers(2, 12))
    def test_antisymmetric_under_player_swap(self, sims, window):
        f = feats([0.5] * len(sims), sims=sims)
        a = assess_sim_diff(f, window).labels
        b = assess_sim_diff(swapped(f), window).labels
        assert b == tuple(lab.mirror() for lab in a)


class TestFml:
    def test_balanced_point(self):
        for variant in (1, 2):
            system = default_system(variant)
            f = [MoveFeatures(1, B, 10, 0.5, False, 0.5, 0.5)]
            assert assess_fml(f, system, variant).labels == (L.UNCERTAIN,)

    @pytest.mark.parametrize("variant", [1, 2])
    def test_mirror_grid(self, variant):
        system = default_system(variant)
        wrs = [i / 16 for i in range(17)]
        tmrs = [(i / 8, 0.5) for i in range(9)] if variant == 2 else [(0.5, 0.5)]
        for wr, (tb, tw) in itertools.product(wrs, tmrs):
            f = [MoveFeatures(1, B, 300, wr, False, tb, tw), MoveFeatures(2, W, 100, wr, False, tb, tw)]
            a = assess_fml(f, system, variant).labels
            b = assess_fml(swapped(f), system, variant).labels
            assert b == tuple(lab.mirror() for lab in a), (wr, tb)

    @given(st.floats(0, 1), st.lists(st.integers(0, 3000), min_size=1, max_size=12),
           st.floats(0, 1), st.floats(0, 1))
    @settings(max_examples=50, deadline=None)
    def test_total(self, wr, sims, tb, tw):
        f = [MoveFeatures(i, B if i % 2 else W, s, wr, False, tb, tw) for i, s in enumerate(sims, start=1)]
        for variant in (1, 2):
            labels = assess_fml(f, default_system(variant), variant).labels
            assert len(labels) == len(f) and all(isinstance(lab, L) for lab in labels)

    def test_wrong_term_count(self):
        mf = MembershipFunction.triangular(0, 0.5, 1)
        x = FuzzyVariable("wr_black", 0.0, 1.0, "input", (FuzzyTerm("A", mf),))
        y = FuzzyVariable("cgs", -2.0, 2.0, "output", (FuzzyTerm("U", mf),))
        with pytest.raises(ValidationError, match="5 terms"):
            check_fml_system(FuzzySystem("s", (x, y), ()), 1)

    def test_variant_one_rejects_tmr_input(self):
        with pytest.raises(ValidationError, match="tmr_diff"):
            check_fml_system(default_system(2), 1)


class TestDispatch:
    @pytest.mark.parametrize("method", ["wr_diff", "sim_diff", "fml1", "fml2"])
    def test_one_label_per_move_and_deterministic(self, method):
        f = feats([0.3, 0.6, 0.7, 0.45, 0.5], sims=[10, 200, 30, 40, 50])
        a = assess(f, method)
        assert len(a.labels) == 5 and a.method == method
        assert assess(f, method) == a

    def test_unknown(self):
        with pytest.raises(ValidationError):
            assess(feats([0.5]), "magic")
