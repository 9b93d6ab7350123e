"""Read and write fuzzy systems as IEEE 1855 Fuzzy Markup Language documents.

Only the Mamdani subset modelled in :mod:`fmlgo.fml.model` is accepted;
anything else (other shapes, operators, modifiers, complements) is rejected
rather than silently defaulted.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET

from ..errors import FmlError
from .model import FuzzyRule, FuzzySystem, FuzzyTerm, FuzzyVariable, MembershipFunction

NAMESPACE = "http://www.ieee1855.org"

_SHAPE_TAGS = {
    "triangularShape": "triangular",
    "trapezoidShape": "trapezoid",
    "singletonShape": "singleton",
}
_TAG_FOR_SHAPE = {v: k for k, v in _SHAPE_TAGS.items()}
_KB_TAGS = ("knowledgeBase", "fuzzyKnowledgeBase")
_RB_TAGS = ("mamdaniRuleBase", "ruleBase")


def _local(tag: str) -> str:
    return tag.rsplit("}", 1)[-1]


def _children(elem, name):
    return [c for c in elem if _local(c.tag) == name]


def _one(elem, name, where):
    found = _children(elem, name)
    if len(found) != 1:
        raise FmlError(f"{where}: expected exactly one <{name}>, found {len(found)}")
    return found[0]


def _float_attr(elem, name, where, default=None):
    raw = elem.get(name)
    if raw is None:
        if default is None:
            raise FmlError(f"{where}: missing attribute {name!r}")
        return default
    try:
        return float(raw)
    except ValueError:
        raise FmlError(f"{where}: attribute {name}={raw!r} is not a number") from None


def _method(elem, name, default):
    return (elem.get(name) or default).upper()


def _parse_term(elem, var_name):
    name = elem.get("name")
    where = f"term {var_name}.{name}"
    if not name:
        raise FmlError(f"variable {var_name!r}: term without a name")
    if (elem.get("complement") or "false").lower() != "false":
        raise FmlError(f"{where}: complemented terms are not supported")
    shapes = list(elem)
    if len(shapes) != 1:
        raise FmlError(f"{where}: expected exactly one shape element")
    tag = _local(shapes[0].tag)
    if tag not in _SHAPE_TAGS:
        raise FmlError(f"{where}: unsupported shape {tag!r}")
    kind = _SHAPE_TAGS[tag]
    n = {"triangular": 3, "trapezoid": 4, "singleton": 1}[kind]
    params = [_float_attr(shapes[0], f"param{i}", where) for i in range(1, n + 1)]
    return FuzzyTerm(name, MembershipFunction(kind, tuple(params)))


def _parse_clause(elem, where):
    if elem.get("modifier"):
        raise FmlError(f"{where}: linguistic modifiers are not supported")
    var = _one(elem, "variable", where).text
    term = _one(elem, "term", where).text
    if not var or not term:
        raise FmlError(f"{where}: clause needs a variable and a term")
    return var.strip(), term.strip()


def parse_fml(text: str) -> FuzzySystem:
    try:
        root = ET.fromstring(text)
    except ET.ParseError as exc:
        raise FmlError(f"malformed XML: {exc}") from None
    if _local(root.tag) != "fuzzySystem":
        raise FmlError(f"root element must be <fuzzySystem>, not <{_local(root.tag)}>")

    kbs = [c for c in root if _local(c.tag) in _KB_TAGS]
    if len(kbs) != 1:
        raise FmlError("expected exactly one knowledge base")
    variables = []
    defuzzifier, accumulation = "COG", "MAX"
    for var in kbs[0]:
        tag = _local(var.tag)
        if tag != "fuzzyVariable":
            raise FmlError(f"unsupported knowledge-base element <{tag}>")
        name = var.get("name")
        if not name:
            raise FmlError("fuzzyVariable without a name")
        role = (var.get("type") or "input").lower()
        lo = _float_attr(var, "domainleft", f"variable {name!r}")
        hi = _float_attr(var, "domainright", f"variable {name!r}")
        terms = tuple(_parse_term(t, name) for t in _children(var, "fuzzyTerm"))
        if len(terms) != len(list(var)):
            raise FmlError(f"variable {name!r}: only <fuzzyTerm> children are supported")
        if role == "output":
            defuzzifier = (var.get("defuzzifier") or "COG").upper()
            accumulation = _method(var, "accumulation", "MAX")
        variables.append(FuzzyVariable(name, lo, hi, role, terms))

    rbs = [c for c in root if _local(c.tag) in _RB_TAGS]
    others = [c for c in root if _local(c.tag) not in _KB_TAGS + _RB_TAGS]
    if others:
        raise FmlError(f"unsupported element <{_local(others[0].tag)}>")
    if len(rbs) > 1:
        raise FmlError("only one rule base is supported")
    rules = []
    and_method, or_method, activation = "MIN", "MAX", "MIN"
    if rbs:
        rb = rbs[0]
        if (rb.get("type") or "mamdani").lower() != "mamdani":
            raise FmlError(f"unsupported rule base type {rb.get('type')!r}")
        and_method = _method(rb, "andMethod", "MIN")
        or_method = _method(rb, "orMethod", "MAX")
        activation = _method(rb, "activationMethod", "MIN")
        for i, r in enumerate(rb, start=1):
            if _local(r.tag) != "rule":
                raise FmlError(f"unsupported rule-base element <{_local(r.tag)}>")
            name = r.get("name") or f"rule{i}"
            where = f"rule {name!r}"
            if _method(r, "andMethod", and_method) != and_method or _method(r, "orMethod", or_method) != or_method:
                raise FmlError(f"{where}: per-rule operators differing from the rule base are not supported")
            antecedent = [_parse_clause(c, where) for c in _children(_one(r, "antecedent", where), "clause")]
            then = _one(_one(r, "consequent", where), "then", where)
            clauses = _children(then, "clause")
            if len(clauses) != 1:
                raise FmlError(f"{where}: exactly one consequent clause is supported")
            rules.append(FuzzyRule(
                name=name,
                antecedent=tuple(antecedent),
                consequent=_parse_clause(clauses[0], where),
                connector=(r.get("connector") or "and").lower(),
                weight=_float_attr(r, "weight", where, 1.0),
            ))
    return FuzzySystem(
        name=root.get("name") or "",
        variables=tuple(variables),
        rules=tuple(rules),
        defuzzifier=defuzzifier,
        and_method=and_method,
        or_method=or_method,
        activation=activation,
        accumulation=accumulation,
    )


def _num(x: float) -> str:
    return repr(float(x))


def _clause(parent, var, term):
    clause = ET.SubElement(parent, "clause")
    ET.SubElement(clause, "variable").text = var
    ET.SubElement(clause, "term").text = term


def serialize_fml(system: FuzzySystem) -> str:
    root = ET.Element("fuzzySystem", {"xmlns": NAMESPACE, "name": system.name})
    kb = ET.SubElement(root, "knowledgeBase")
    for var in system.variables:
        attrs = {"name": var.name, "domainleft": _num(var.lo), "domainright": _num(var.hi),
                 "scale": "", "type": var.role}
        if var.role == "output":
            attrs.update(accumulation=system.accumulation, defuzzifier=system.defuzzifier,
                         defaultValue=_num((var.lo + var.hi) / 2))
        v = ET.SubElement(kb, "fuzzyVariable", attrs)
        for term in var.terms:
            t = ET.SubElement(v, "fuzzyTerm", {"name": term.name, "complement": "false"})
            ET.SubElement(t, _TAG_FOR_SHAPE[term.mf.shape],
                          {f"param{i}": _num(p) for i, p in enumerate(term.mf.params, start=1)})
    rb = ET.SubElement(root, "mamdaniRuleBase", {
        "name": "rulebase", "activationMethod": system.activation,
        "andMethod": system.and_method, "orMethod": system.or_method})
    for rule in system.rules:
        r = ET.SubElement(rb, "rule", {"name": rule.name, "connector": rule.connector,
                                       "weight": _num(rule.weight)})
        ante = ET.SubElement(r, "antecedent")
        for var, term in rule.antecedent:
            _clause(ante, var, term)
        _clause(ET.SubElement(ET.SubElement(r, "consequent"), "then"), *rule.consequent)
    ET.indent(root, space="  ")
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(root, encoding="unicode") + "\n"


def load_fml(path) -> FuzzySystem:
    with open(path, encoding="utf-8") as fh:
        return parse_fml(fh.read())
