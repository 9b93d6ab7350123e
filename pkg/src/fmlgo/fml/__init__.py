from .document import load_fml, parse_fml, serialize_fml
from .inference import InferenceResult, defuzzify, infer
from .model import FuzzyRule, FuzzySystem, FuzzyTerm, FuzzyVariable, MembershipFunction, membership

__all__ = [
    "FuzzyRule", "FuzzySystem", "FuzzyTerm", "FuzzyVariable", "InferenceResult",
    "MembershipFunction", "defuzzify", "infer", "load_fml", "membership",
    "parse_fml", "serialize_fml",
]
