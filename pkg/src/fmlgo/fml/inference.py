"""Mamdani inference: MIN/MAX operators, clipped consequents, COG or MOM defuzzification."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping

import numpy as np

from ..errors import InferenceError
from .model import FuzzySystem, FuzzyVariable

N_SAMPLES = 1001


@dataclass(frozen=True)
class InferenceResult:
    crisp: float
    label: str
    activations: dict
    fallback: bool = False


def defuzzify(x, mu, method: str = "COG") -> float:
    """Collapse a sampled membership curve to a crisp value.

    ``x`` must be a uniform grid.  An all-zero curve has no centroid and is an
    error; callers route that through the no-rule-fired path instead.
    """
    x = np.asarray(x, dtype=float)
    mu = np.asarray(mu, dtype=float)
    if x.shape != mu.shape or x.ndim != 1:
        raise InferenceError("grid and membership arrays must be 1-D and the same length")
    total = mu.sum()
    if not total > 0:
        raise InferenceError("cannot defuzzify an empty fuzzy set")
    if method == "COG":
        return float(np.dot(x, mu) / total)
    if method == "MOM":
        peak = mu.max()
        return float(x[mu >= peak].mean())
    raise InferenceError(f"unknown defuzzification method {method!r}")


def output_grid(var: FuzzyVariable, n: int = N_SAMPLES) -> np.ndarray:
    # exactly symmetric about the midpoint so mirrored aggregates mirror their centroid
    u = np.linspace(-1.0, 1.0, n)
    u = (u - u[::-1]) / 2
    mid, half = (var.lo + var.hi) / 2, (var.hi - var.lo) / 2
    return mid + half * u


@lru_cache(maxsize=64)
def _consequent_table(system: FuzzySystem):
    out = system.output
    grid = output_grid(out)
    curves = {t.name: t.mf.sample(grid) for t in out.terms}
    table = np.array([curves[r.consequent[1]] for r in system.rules]).reshape(len(system.rules), len(grid))
    return grid, table


def best_term(var: FuzzyVariable, x: float) -> str:
    """Term with the highest membership at ``x``; the first declared wins ties."""
    degrees = [t.mf(x) for t in var.terms]
    return var.terms[int(np.argmax(degrees))].name


def firing_strengths(system: FuzzySystem, inputs: Mapping[str, float]) -> np.ndarray:
    values = {}
    for var in system.inputs:
        if var.name not in inputs:
            raise InferenceError(f"missing input variable {var.name!r}")
        values[var.name] = var.clamp(inputs[var.name])
    degrees = {}
    strengths = np.empty(len(system.rules))
    for i, rule in enumerate(system.rules):
        clause = []
        for var, term in rule.antecedent:
            key = (var, term)
            if key not in degrees:
                degrees[key] = system.variable(var).term(term).mf(values[var])
            clause.append(degrees[key])
        combined = min(clause) if rule.connector == "and" else max(clause)
        strengths[i] = rule.weight * combined
    return strengths


def infer(system: FuzzySystem, inputs: Mapping[str, float]) -> InferenceResult:
    """Run the rule base on crisp inputs (clamped to their domains)."""
    strengths = firing_strengths(system, inputs)
    activations = {r.name: float(s) for r, s in zip(system.rules, strengths)}
    out = system.output
    grid, table = _consequent_table(system)
    if len(system.rules):
        aggregate = np.max(np.minimum(strengths[:, None], table), axis=0)
    else:
        aggregate = np.zeros_like(grid)
    if not aggregate.any():
        mid = (out.lo + out.hi) / 2
        return InferenceResult(mid, best_term(out, mid), activations, fallback=True)
    crisp = defuzzify(grid, aggregate, system.defuzzifier)
    return InferenceResult(crisp, best_term(out, crisp), activations)
