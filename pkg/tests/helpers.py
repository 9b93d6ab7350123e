import numpy as np

from fmlgo.ingest import Candidate, Color, GameRecord, Move, PredictionLog, PredictionRecord, join


def point_for(i):
    return (i % 19 + 1, i // 19 + 1)


def make_game(n, handicap=0, board_size=19):
    color = Color.WHITE if handicap else Color.BLACK
    moves = []
    for i in range(1, n + 1):
        moves.append(Move(i, color, point_for(i)))
        color = color.opponent
    return GameRecord(tuple(moves), komi=6.5, handicap=handicap, board_size=board_size)


def record(move_no, color, played, *cands):
    """``cands`` are (point, sims, winrate) triples, rank order."""
    return PredictionRecord(move_no, color, played, tuple(Candidate(*c) for c in cands))


def analyzed(game, records, budget=1000):
    return join(game, PredictionLog(tuple(records), budget, "test"))


def scripted_game(rows):
    """Build a joined game from rows of (rank_of_played or None, sims, mover_winrate).

    rank None means the played move is missing from the candidate list.
    """
    game = make_game(len(rows))
    records = []
    for move, (rank, sims, wr) in zip(game.moves, rows):
        decoys = [(r + 1, 19) for r in range(5)]  # row 19 is never used by make_game below 342 moves
        cands = [(p, 10, 0.5) for p in decoys[:4]]
        if rank is not None:
            cands.insert(rank, (move.point, sims, wr))
        else:
            cands.append((decoys[4], 10, 0.5))
        records.append(record(move.move_no, move.color, move.point, *cands))
    return analyzed(game, records)


def random_system(rng):
    """A random valid single-output Mamdani system drawn from a numpy Generator."""
    from fmlgo.fml import FuzzyRule, FuzzySystem, FuzzyTerm, FuzzyVariable, MembershipFunction

    def term(name, lo, hi):
        shape = rng.choice(["triangular", "trapezoid", "singleton"])
        n = {"triangular": 3, "trapezoid": 4, "singleton": 1}[shape]
        params = np.sort(rng.uniform(lo, hi, size=n))
        if rng.random() < 0.3:
            params = np.round(params, 2)
        return FuzzyTerm(name, MembershipFunction(str(shape), tuple(float(p) for p in params)))

    def variable(name, role):
        lo = float(rng.uniform(-10, 0))
        hi = lo + float(rng.uniform(0.5, 20))
        terms = tuple(term(f"t{j}", lo, hi) for j in range(int(rng.integers(1, 6))))
        return FuzzyVariable(name, lo, hi, role, terms)

    inputs = [variable(f"in{i}", "input") for i in range(int(rng.integers(1, 4)))]
    output = variable("out", "output")
    rules = []
    for r in range(int(rng.integers(0, 8))):
        chosen = rng.choice(len(inputs), size=int(rng.integers(1, len(inputs) + 1)), replace=False)
        ante = tuple((inputs[i].name, str(rng.choice(inputs[i].term_names))) for i in chosen)
        rules.append(FuzzyRule(f"rule{r}", ante, ("out", str(rng.choice(output.term_names))),
                               str(rng.choice(["and", "or"])), float(np.round(rng.uniform(0, 1), 3))))
    variables = inputs + [output]
    order = rng.permutation(len(variables))
    return FuzzySystem(f"random{int(rng.integers(1000))}", tuple(variables[i] for i in order), tuple(rules),
                       str(rng.choice(["COG", "MOM"])))
