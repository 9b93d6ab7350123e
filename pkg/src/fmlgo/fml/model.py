"""Data model for Mamdani fuzzy systems (the supported FML subset)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..errors import FmlError

SHAPES = {"triangular": 3, "trapezoid": 4, "singleton": 1}
DEFUZZIFIERS = ("COG", "MOM")


@dataclass(frozen=True)
class MembershipFunction:
    shape: str
    params: tuple

    def __post_init__(self):
        if self.shape not in SHAPES:
            raise FmlError(f"unsupported membership shape {self.shape!r}")
        params = tuple(float(p) for p in self.params)
        if len(params) != SHAPES[self.shape]:
            raise FmlError(f"{self.shape} shape takes {SHAPES[self.shape]} parameters, got {len(params)}")
        if any(not np.isfinite(p) for p in params):
            raise FmlError("membership parameters must be finite")
        if any(a > b for a, b in zip(params, params[1:])):
            raise FmlError(f"{self.shape} parameters must be non-decreasing: {params}")
        object.__setattr__(self, "params", params)

    @classmethod
    def triangular(cls, a, b, c):
        return cls("triangular", (a, b, c))

    @classmethod
    def trapezoid(cls, a, b, c, d):
        return cls("trapezoid", (a, b, c, d))

    @classmethod
    def singleton(cls, v):
        return cls("singleton", (v,))

    def __call__(self, x):
        """Membership degree at ``x`` (scalar or array); zero outside the support."""
        scalar = np.ndim(x) == 0
        x = np.atleast_1d(np.asarray(x, dtype=float))
        if self.shape == "singleton":
            y = (x == self.params[0]).astype(float)
        else:
            if self.shape == "triangular":
                a, b, c = self.params
                b, c, d = b, b, c
            else:
                a, b, c, d = self.params
            y = np.zeros_like(x)
            if b > a:
                m = (x > a) & (x < b)
                y[m] = (x[m] - a) / (b - a)
            if d > c:
                m = (x > c) & (x < d)
                y[m] = (d - x[m]) / (d - c)
            y[(x >= b) & (x <= c)] = 1.0
        return float(y[0]) if scalar else y

    def sample(self, grid: np.ndarray) -> np.ndarray:
        """Evaluate on a uniform grid; a singleton lands on its nearest grid point."""
        if self.shape == "singleton":
            y = np.zeros_like(grid)
            v = self.params[0]
            if grid[0] <= v <= grid[-1]:
                y[int(np.argmin(np.abs(grid - v)))] = 1.0
            return y
        return self(grid)


def membership(mf: MembershipFunction, x: float) -> float:
    return mf(float(x))


@dataclass(frozen=True)
class FuzzyTerm:
    name: str
    mf: MembershipFunction


@dataclass(frozen=True)
class FuzzyVariable:
    name: str
    lo: float
    hi: float
    role: str
    terms: tuple

    def __post_init__(self):
        object.__setattr__(self, "lo", float(self.lo))
        object.__setattr__(self, "hi", float(self.hi))
        object.__setattr__(self, "terms", tuple(self.terms))
        if self.role not in ("input", "output"):
            raise FmlError(f"variable {self.name!r}: role must be input or output")
        if not self.lo < self.hi:
            raise FmlError(f"variable {self.name!r}: empty domain [{self.lo}, {self.hi}]")
        names = [t.name for t in self.terms]
        if len(set(names)) != len(names):
            raise FmlError(f"variable {self.name!r}: duplicate term names")
        for t in self.terms:
            if t.mf.params[0] < self.lo or t.mf.params[-1] > self.hi:
                raise FmlError(f"term {self.name}.{t.name} reaches outside the domain")

    def term(self, name: str) -> FuzzyTerm:
        for t in self.terms:
            if t.name == name:
                return t
        raise KeyError(name)

    @property
    def term_names(self) -> tuple:
        return tuple(t.name for t in self.terms)

    def clamp(self, x: float) -> float:
        return min(max(float(x), self.lo), self.hi)


@dataclass(frozen=True)
class FuzzyRule:
    name: str
    antecedent: tuple  # ((variable, term), ...)
    consequent: tuple  # (variable, term)
    connector: str = "and"
    weight: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "antecedent", tuple(tuple(c) for c in self.antecedent))
        object.__setattr__(self, "consequent", tuple(self.consequent))
        object.__setattr__(self, "weight", float(self.weight))
        if self.connector not in ("and", "or"):
            raise FmlError(f"rule {self.name!r}: connector must be 'and' or 'or'")
        if not self.antecedent:
            raise FmlError(f"rule {self.name!r}: empty antecedent")
        if not 0.0 <= self.weight <= 1.0:
            raise FmlError(f"rule {self.name!r}: weight {self.weight} outside [0, 1]")


@dataclass(frozen=True)
class FuzzySystem:
    """A validated single-output Mamdani system.

    Operators are fixed to and=MIN, or=MAX, activation=MIN, accumulation=MAX;
    they are stored so documents round-trip verbatim.
    """

    name: str
    variables: tuple
    rules: tuple = ()
    defuzzifier: str = "COG"
    and_method: str = "MIN"
    or_method: str = "MAX"
    activation: str = "MIN"
    accumulation: str = "MAX"

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "rules", tuple(self.rules))
        for attr, expected in (("and_method", "MIN"), ("or_method", "MAX"),
                               ("activation", "MIN"), ("accumulation", "MAX")):
            if getattr(self, attr) != expected:
                raise FmlError(f"unsupported {attr} {getattr(self, attr)!r} (only {expected})")
        if self.defuzzifier not in DEFUZZIFIERS:
            raise FmlError(f"unsupported defuzzifier {self.defuzzifier!r}")
        names = [v.name for v in self.variables]
        if len(set(names)) != len(names):
            raise FmlError("duplicate variable names")
        outputs = [v for v in self.variables if v.role == "output"]
        if len(outputs) != 1:
            raise FmlError(f"exactly one output variable required, found {len(outputs)}")
        by_name = {v.name: v for v in self.variables}
        rule_names = [r.name for r in self.rules]
        if len(set(rule_names)) != len(rule_names):
            raise FmlError("duplicate rule names")
        for rule in self.rules:
            for var, term in rule.antecedent:
                v = by_name.get(var)
                if v is None or v.role != "input":
                    raise FmlError(f"rule {rule.name!r}: unknown input variable {var!r}")
                if term not in v.term_names:
                    raise FmlError(f"rule {rule.name!r}: undeclared term {var}.{term}")
            var, term = rule.consequent
            if var != outputs[0].name:
                raise FmlError(f"rule {rule.name!r}: consequent must target {outputs[0].name!r}, not {var!r}")
            if term not in outputs[0].term_names:
                raise FmlError(f"rule {rule.name!r}: undeclared term {var}.{term}")

    @property
    def output(self) -> FuzzyVariable:
        return next(v for v in self.variables if v.role == "output")

    @property
    def inputs(self) -> tuple:
        return tuple(v for v in self.variables if v.role == "input")

    def variable(self, name: str) -> Optional[FuzzyVariable]:
        for v in self.variables:
            if v.name == name:
                return v
        return None
