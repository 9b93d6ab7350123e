"""Regenerate the shipped assessment1.fml / assessment2.fml rule bases.

Both rule bases are colour-symmetric: every input term has a mirror term
(x -> 1 - x for wr_black, x -> -x otherwise) and the consequent of the
mirrored antecedent is the mirrored label.
"""

import itertools
import math
from pathlib import Path

from fmlgo.fml import FuzzyRule, FuzzySystem, FuzzyTerm, FuzzyVariable, MembershipFunction, serialize_fml

MF = MembershipFunction
LEVELS = {-2: "white_far_ahead", -1: "white_ahead", 0: "even", 1: "black_ahead", 2: "black_far_ahead"}
OUTPUT_FOR_LEVEL = {2: "B2", 1: "B1", 0: "U", -1: "W1", -2: "W2"}

WR_BLACK = FuzzyVariable("wr_black", 0.0, 1.0, "input", (
    FuzzyTerm(LEVELS[-2], MF.trapezoid(0.0, 0.0, 0.125, 0.25)),
    FuzzyTerm(LEVELS[-1], MF.triangular(0.125, 0.25, 0.5)),
    FuzzyTerm(LEVELS[0], MF.triangular(0.25, 0.5, 0.75)),
    FuzzyTerm(LEVELS[1], MF.triangular(0.5, 0.75, 0.875)),
    FuzzyTerm(LEVELS[2], MF.trapezoid(0.75, 0.875, 1.0, 1.0)),
))
SIM_SHARE = FuzzyVariable("sim_share", -1.0, 1.0, "input", (
    FuzzyTerm(LEVELS[-2], MF.trapezoid(-1.0, -1.0, -0.5, -0.25)),
    FuzzyTerm(LEVELS[-1], MF.triangular(-0.5, -0.25, 0.0)),
    FuzzyTerm(LEVELS[0], MF.triangular(-0.25, 0.0, 0.25)),
    FuzzyTerm(LEVELS[1], MF.triangular(0.0, 0.25, 0.5)),
    FuzzyTerm(LEVELS[2], MF.trapezoid(0.25, 0.5, 1.0, 1.0)),
))
TMR_DIFF = FuzzyVariable("tmr_diff", -1.0, 1.0, "input", (
    FuzzyTerm(LEVELS[-1], MF.trapezoid(-1.0, -1.0, -0.25, 0.0)),
    FuzzyTerm(LEVELS[0], MF.triangular(-0.25, 0.0, 0.25)),
    FuzzyTerm(LEVELS[1], MF.trapezoid(0.0, 0.25, 1.0, 1.0)),
))
CGS = FuzzyVariable("cgs", -2.0, 2.0, "output", (
    FuzzyTerm("B2", MF.triangular(-2.0, -2.0, -1.0)),
    FuzzyTerm("B1", MF.triangular(-2.0, -1.0, 0.0)),
    FuzzyTerm("U", MF.triangular(-1.0, 0.0, 1.0)),
    FuzzyTerm("W1", MF.triangular(0.0, 1.0, 2.0)),
    FuzzyTerm("W2", MF.triangular(1.0, 2.0, 2.0)),
))


def level(wr, sim, tmr=0):
    # trunc is odd, so mirrored antecedents get mirrored consequents
    return max(-2, min(2, math.trunc((2 * wr + sim + tmr) / 2)))


def build(variant):
    rules = []
    tmr_levels = (-1, 0, 1) if variant == 2 else (None,)
    for wr, sim, tmr in itertools.product(range(-2, 3), range(-2, 3), tmr_levels):
        ante = [("wr_black", LEVELS[wr]), ("sim_share", LEVELS[sim])]
        if tmr is not None:
            ante.append(("tmr_diff", LEVELS[tmr]))
        rules.append(FuzzyRule(f"r{len(rules) + 1}", tuple(ante),
                               ("cgs", OUTPUT_FOR_LEVEL[level(wr, sim, tmr or 0)])))
    variables = (WR_BLACK, SIM_SHARE) + ((TMR_DIFF,) if variant == 2 else ()) + (CGS,)
    return FuzzySystem(f"assessment{variant}", variables, tuple(rules))


if __name__ == "__main__":
    out = Path(__file__).resolve().parent.parent / "src" / "fmlgo" / "data"
    for variant in (1, 2):
        (out / f"assessment{variant}.fml").write_text(serialize_fml(build(variant)), encoding="utf-8")
