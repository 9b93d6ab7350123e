"""Command-line front end: ``fmlgo {assess,predict,evaluate,synth,report}``.

Exit codes: 0 success, 2 bad input or configuration, 3 a valid game the
engine cannot handle (fewer than 11 moves, K too large).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from . import dse
from .assessment import (DEFAULT_T_BIG, DEFAULT_T_SMALL, DEFAULT_WINDOW, METHODS, CgsEntry, CgsLabel,
                         CgsSequence, assess, check_fml_system, check_thresholds, default_system,
                         extract_features)
from .errors import DomainError, FmlGoError
from .fml import load_fml
from .ingest import (SynthProfile, Winner, join, parse_prediction_log, parse_sgf, serialize_prediction_log,
                     serialize_sgf, synth_log)
from .report import render, summarize

EXIT_INPUT = 2
EXIT_DOMAIN = 3


class CliError(Exception):
    def __init__(self, message, code=EXIT_INPUT):
        super().__init__(message)
        self.code = code


@dataclass
class Config:
    k: list | None = None
    weights: object = "uniform"
    method: str = "fml2"
    t_small: float = DEFAULT_T_SMALL
    t_big: float = DEFAULT_T_BIG
    window: int = DEFAULT_WINDOW
    fml: str | None = None
    fml1: str | None = None
    fml2: str | None = None
    out: str | None = None
    seed: int = 0

    def validate(self, single_k=False, default_k=(4,)):
        if self.k is None:
            self.k = list(default_k)
        if not self.k or any(k < 1 for k in self.k):
            raise CliError("k must be a positive integer")
        if single_k and len(self.k) != 1:
            raise CliError("this command takes a single --k value")
        if self.method not in METHODS:
            raise CliError(f"unknown method {self.method!r}; choose from {', '.join(METHODS)}")
        check_thresholds(self.t_small, self.t_big)
        if self.window < 2:
            raise CliError("window must be at least 2")
        if self.weights != "uniform":
            if len(self.k) != 1:
                raise CliError("explicit weights require a single --k value")
            dse.check_weights(self.weights, self.k[0])
        return self

    def system(self):
        if self.method not in ("fml1", "fml2"):
            return None
        variant = int(self.method[-1])
        path = self.fml or (self.fml1 if variant == 1 else self.fml2)
        try:
            system = load_fml(path) if path else default_system(variant)
        except OSError as exc:
            raise CliError(f"cannot read FML document {path}: {exc.strerror}") from None
        check_fml_system(system, variant)
        return system


def _int_list(text):
    return [int(v) for v in str(text).replace(" ", "").split(",") if v]


def _weights(text):
    text = str(text).strip()
    if text == "uniform":
        return "uniform"
    return [float(v) for v in text.replace(" ", "").split(",") if v]


_CONFIG_KEYS = {
    "k": _int_list, "weights": _weights, "method": str, "t_small": float, "t_big": float,
    "window": int, "fml": str, "fml1": str, "fml2": str, "out": str, "seed": int,
}


def read_config(path) -> dict:
    """Parse a flat ``key = value`` file; ``#`` starts a comment."""
    values = {}
    for lineno, raw in enumerate(_read_text(path, "config file").splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise CliError(f"{path}:{lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in _CONFIG_KEYS:
            raise CliError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            values[key] = _CONFIG_KEYS[key](value)
        except ValueError:
            raise CliError(f"{path}:{lineno}: bad value for {key}: {value!r}") from None
    return values


def build_config(args) -> Config:
    values = read_config(args.config) if getattr(args, "config", None) else {}
    for key in _CONFIG_KEYS:
        flag = getattr(args, key, None)
        if flag is not None:
            values[key] = flag
    return Config(**values)


def _read_text(path, what):
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot read {what} {path}: {exc.strerror}") from None
    except UnicodeDecodeError:
        raise CliError(f"{what} {path} is not UTF-8 text") from None


def _load_game(sgf_path, log_path):
    text = _read_text(sgf_path, "game record")
    try:
        game = parse_sgf(text)
    except FmlGoError as exc:
        raise CliError(f"{sgf_path}: {exc}") from None
    try:
        data = Path(log_path).read_bytes()
    except OSError as exc:
        raise CliError(f"cannot read prediction log {log_path}: {exc.strerror}") from None
    try:
        plog = parse_prediction_log(data)
    except FmlGoError as exc:
        raise CliError(f"{log_path}: {exc}") from None
    try:
        return join(game, plog)
    except FmlGoError as exc:
        raise CliError(f"{sgf_path} + {log_path}: {exc}") from None


def _analyse(sgf_path, log_path, cfg):
    analyzed = _load_game(sgf_path, log_path)
    features = extract_features(analyzed)
    cgs = assess(features, cfg.method, t_small=cfg.t_small, t_big=cfg.t_big, window=cfg.window,
                 system=cfg.system(), n_moves=analyzed.game.n_moves)
    return analyzed, features, cgs


def _emit(text, out):
    if out:
        try:
            Path(out).write_text(text, encoding="utf-8", newline="\n")
        except OSError as exc:
            raise CliError(f"cannot write {out}: {exc.strerror}") from None
    else:
        sys.stdout.write(text)


CGS_COLUMNS = ("move_no", "color", "wr_black", "sims", "tmr_black", "tmr_white", "label")


def cgs_csv(analyzed, features, cgs) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CGS_COLUMNS)
    by_move = {f.move_no: f for f in features}
    labels = {e.move_no: e.label for e in cgs.entries}
    for move in analyzed.game.moves:
        f = by_move.get(move.move_no)
        if f is None:
            writer.writerow([move.move_no, move.color.value, "", "", "", "", ""])
        else:
            writer.writerow([f.move_no, f.color.value, f"{f.wr_black:.6f}", f.sims,
                             f"{f.tmr_black:.6f}", f"{f.tmr_white:.6f}", labels[f.move_no].short])
    return buf.getvalue()


def read_cgs_csv(path) -> CgsSequence:
    text = _read_text(path, "CGS file")
    rows = list(csv.DictReader(io.StringIO(text)))
    if not rows or "move_no" not in rows[0] or "label" not in rows[0]:
        raise CliError(f"{path}: expected a CSV with move_no and label columns")
    entries = []
    try:
        for row in rows:
            if row["label"]:
                entries.append(CgsEntry(int(row["move_no"]), CgsLabel.parse(row["label"]), "file"))
        n_moves = max(int(r["move_no"]) for r in rows)
        return CgsSequence(tuple(entries), "file", n_moves)
    except (ValueError, FmlGoError) as exc:
        raise CliError(f"{path}: {exc}") from None


# ------------------------------------------------------------------ commands


def cmd_assess(args):
    cfg = build_config(args).validate()
    analyzed, features, cgs = _analyse(args.sgf, args.log, cfg)
    _emit(cgs_csv(analyzed, features, cgs), cfg.out)


def _predict_one(cgs, cfg):
    try:
        return dse.predict(cgs, cfg.k[0], cfg.weights)
    except DomainError as exc:
        raise CliError(str(exc), EXIT_DOMAIN) from None


def cmd_predict(args):
    cfg = build_config(args).validate(single_k=True)
    if args.cgs:
        if args.inputs:
            raise CliError("give either --cgs or an SGF and log pair, not both")
        cgs = read_cgs_csv(args.cgs)
    elif len(args.inputs) == 2:
        cgs = _analyse(args.inputs[0], args.inputs[1], cfg)[2]
    else:
        raise CliError("predict needs an SGF file and a prediction log, or --cgs FILE")
    result = _predict_one(cgs, cfg)
    print(result.verdict.short)
    print(f"y_cgs={result.y_cgs:+.6f}")
    if cfg.out:
        _emit(json.dumps(result.to_dict(), indent=2) + "\n", cfg.out)


def read_labels(path) -> dict:
    text = _read_text(path, "labels file")
    labels = {}
    for row in csv.DictReader(io.StringIO(text)):
        try:
            game_id, winner = row["game_id"].strip(), row["winner"].strip()
        except (KeyError, AttributeError):
            raise CliError(f"{path}: expected columns game_id,winner") from None
        winner = {"B": "Black", "W": "White"}.get(winner.upper(), winner.capitalize())
        if winner not in ("Black", "White"):
            raise CliError(f"{path}: game {game_id}: winner must be Black or White")
        labels[game_id] = Winner(winner)
    return labels


def cmd_evaluate(args):
    cfg = build_config(args).validate(default_k=(3, 4))
    corpus = Path(args.corpus)
    if not corpus.is_dir():
        raise CliError(f"corpus directory {corpus} does not exist")
    sgfs = sorted(corpus.glob("*.sgf"))
    if not sgfs:
        raise CliError(f"corpus directory {corpus} holds no .sgf files")
    labels = read_labels(args.labels or corpus / "labels.csv")
    items = []
    for sgf in sgfs:
        game_id = sgf.stem
        if game_id not in labels:
            raise CliError(f"game {game_id} has no entry in the labels file")
        logfile = sgf.with_suffix(".log")
        analyzed, _, cgs = _analyse(sgf, logfile, cfg)
        tag = f"{analyzed.log.engine_tag} / {analyzed.log.mcts_budget}".strip()
        items.append((game_id, cgs, labels[game_id], tag))
    try:
        report = dse.evaluate(items, tuple(cfg.k), cfg.weights)
    except DomainError as exc:
        raise CliError(str(exc), EXIT_DOMAIN) from None
    sys.stdout.write(report.to_text())
    if cfg.out:
        _emit(report.to_csv(), cfg.out)


def synth_corpus(out_dir, count, seed, black_wins=None, min_moves=120, max_moves=260, profile=None):
    """Write ``count`` SGF/log pairs plus ``labels.csv`` into ``out_dir``."""
    if count < 1:
        raise CliError("count must be at least 1")
    if not 11 <= min_moves <= max_moves:
        raise CliError("need 11 <= min-moves <= max-moves")
    black_wins = (count + 1) // 2 if black_wins is None else black_wins
    if not 0 <= black_wins <= count:
        raise CliError("black-wins must lie in 0..count")
    rng = np.random.default_rng(seed)
    pool = [Winner.BLACK] * black_wins + [Winner.WHITE] * (count - black_wins)
    winners = [pool[i] for i in rng.permutation(count)]
    seeds = rng.integers(0, 2**63, size=count)
    lengths = rng.integers(min_moves, max_moves + 1, size=count)
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        rows = ["game_id,winner"]
        width = max(3, len(str(count)))
        base = profile or SynthProfile()
        for i in range(count):
            game_id = f"game_{i + 1:0{width}d}"
            prof = replace(base, winner=winners[i])
            game, plog = synth_log(int(lengths[i]), prof, int(seeds[i]))
            (out / f"{game_id}.sgf").write_text(serialize_sgf(game) + "\n", encoding="utf-8", newline="\n")
            (out / f"{game_id}.log").write_text(serialize_prediction_log(plog), encoding="utf-8", newline="\n")
            rows.append(f"{game_id},{winners[i].value}")
        (out / "labels.csv").write_text("\n".join(rows) + "\n", encoding="utf-8", newline="\n")
    except OSError as exc:
        raise CliError(f"cannot write corpus to {out}: {exc.strerror}") from None


def cmd_synth(args):
    cfg = build_config(args)
    if not cfg.out:
        raise CliError("synth needs --out DIR")
    synth_corpus(cfg.out, args.count, cfg.seed, args.black_wins, args.min_moves, args.max_moves)


def cmd_report(args):
    cfg = build_config(args).validate(single_k=True)
    analyzed, features, cgs = _analyse(args.sgf, args.log, cfg)
    decision = _predict_one(cgs, cfg)
    last = next((r for r in reversed(analyzed.joined) if r is not None and r.candidates), None)
    _emit(render(summarize(features, decision, last)), cfg.out)


# -------------------------------------------------------------------- parser


def _common(p, k_help="number of sub-games (windows)"):
    p.add_argument("--config", help="flat key = value configuration file")
    p.add_argument("--k", type=_int_list, help=k_help)
    p.add_argument("--weights", type=_weights, help="'uniform' or comma-separated weights summing to 1")
    p.add_argument("--method", choices=METHODS, help="assessment method (default fml2)")
    p.add_argument("--fml", help="FML document overriding the bundled rule base")
    p.add_argument("--t-small", dest="t_small", type=float)
    p.add_argument("--t-big", dest="t_big", type=float)
    p.add_argument("--window", type=int, help="trailing window for the simulation share")
    p.add_argument("--out", help="output file (default: standard output)")
    p.add_argument("--seed", type=int)


def build_parser():
    parser = argparse.ArgumentParser(prog="fmlgo", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("assess", help="label every move of a game")
    p.add_argument("sgf")
    p.add_argument("log")
    _common(p)
    p.set_defaults(func=cmd_assess)

    p = sub.add_parser("predict", help="predict the winner of one game")
    p.add_argument("inputs", nargs="*", metavar="SGF LOG")
    p.add_argument("--cgs", help="CSV written by 'assess' instead of SGF + log")
    _common(p)
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("evaluate", help="score predictions over a labelled corpus")
    p.add_argument("corpus", help="directory of <id>.sgf / <id>.log pairs")
    p.add_argument("--labels", help="CSV game_id,winner (default: <corpus>/labels.csv)")
    _common(p, "comma-separated K values (default 3,4)")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("synth", help="generate a synthetic labelled corpus")
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--black-wins", dest="black_wins", type=int, help="games won by Black (default: half)")
    p.add_argument("--min-moves", dest="min_moves", type=int, default=120)
    p.add_argument("--max-moves", dest="max_moves", type=int, default=260)
    _common(p)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("report", help="write the commentary report for one game")
    p.add_argument("sgf")
    p.add_argument("log")
    _common(p)
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except CliError as exc:
        print(f"fmlgo {args.command}: {exc}", file=sys.stderr)
        return exc.code
    except DomainError as exc:
        print(f"fmlgo {args.command}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except FmlGoError as exc:
        print(f"fmlgo {args.command}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return 0


if __name__ == "__main__":
    sys.exit(main())
