"""JSON file formats for instances, sequences and reduction sources.

Instance files hold ``n``, ``edges``, ``start`` and ``target`` (``start[t]``
is the start vertex of token ``t``) and optionally ``weights`` as integers
or ``"p/q"`` strings.  Canonical output sorts edges and uses a fixed key
order, so equal instances serialise to equal bytes.
"""

from __future__ import annotations

import hashlib
import json
import re
from fractions import Fraction
from pathlib import Path

from .core import Configuration, Graph, Instance, SwapSequence, TokenSwapError, WeightedInstance
from .reductions.labelcover import LabelCoverInstance, Labelling
from .reductions.setcover import SetCoverInstance


class ParseError(TokenSwapError, ValueError):
    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        where = f"{source or '<input>'}" + (f":{line}" if line is not None else "")
        super().__init__(f"{where}: {message}")
        self.line = line
        self.source = source


def dumps(obj) -> str:
    """Canonical text: sorted keys, compact separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def pretty(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def fingerprint(obj) -> str:
    return hashlib.sha256(dumps(obj).encode()).hexdigest()


def _line_of(text: str, key: str) -> int | None:
    m = re.search(r'"%s"\s*:' % re.escape(key), text)
    return text.count("\n", 0, m.start()) + 1 if m else None


def load_document(text: str, source: str | None) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, source) from None
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object", 1, source)
    return doc


def _field(doc: dict, key: str, text: str, source: str | None, kind=None):
    if key not in doc:
        raise ParseError(f"missing field {key!r}", None, source)
    value = doc[key]
    if kind is not None and not isinstance(value, kind):
        raise ParseError(f"field {key!r} has the wrong type", _line_of(text, key), source)
    return value


def _int_list(value, key, text, source) -> list[int]:
    if not isinstance(value, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in value):
        raise ParseError(f"field {key!r} must be a list of integers", _line_of(text, key), source)
    return value


def parse_weight(raw) -> Fraction:
    if isinstance(raw, bool) or not isinstance(raw, (int, str)):
        raise ValueError(f"weight {raw!r} is not an integer or 'p/q' string")
    w = Fraction(raw)
    if w < 0:
        raise ValueError(f"weight {raw!r} is negative")
    return w


def format_weight(w: Fraction) -> int | str:
    w = Fraction(w)
    return w.numerator if w.denominator == 1 else f"{w.numerator}/{w.denominator}"


# Instances -----------------------------------------------------------------


def instance_to_dict(inst: Instance | WeightedInstance) -> dict:
    weights = None
    if isinstance(inst, WeightedInstance):
        weights = [format_weight(w) for w in inst.weights]
        inst = inst.instance
    doc = {
        "n": inst.n,
        "edges": [list(e) for e in inst.graph.sorted_edges],
        "start": list(inst.start.placement),
        "target": list(inst.target.placement),
    }
    if weights is not None:
        doc["weights"] = weights
    return doc


def instance_from_dict(doc: dict, text: str = "", source: str | None = None) -> Instance | WeightedInstance:
    n = _field(doc, "n", text, source, int)
    edges = _field(doc, "edges", text, source, list)
    if not all(isinstance(e, list) and len(e) == 2 for e in edges):
        raise ParseError("edges must be [u, v] pairs", _line_of(text, "edges"), source)
    start = _int_list(_field(doc, "start", text, source), "start", text, source)
    target = _int_list(_field(doc, "target", text, source), "target", text, source)
    try:
        inst = Instance(Graph(n, edges), Configuration(tuple(start)), Configuration(tuple(target)))
    except TokenSwapError as exc:
        raise ParseError(str(exc), None, source) from exc
    if "weights" not in doc:
        return inst
    raw = _field(doc, "weights", text, source, list)
    try:
        return WeightedInstance(inst, [parse_weight(w) for w in raw])
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(str(exc), _line_of(text, "weights"), source) from None


def parse_instance(text: str, source: str | None = None) -> Instance | WeightedInstance:
    return instance_from_dict(load_document(text, source), text, source)


def read_instance(path) -> Instance | WeightedInstance:
    return parse_instance(Path(path).read_text(), str(path))


def write_instance(path, inst) -> None:
    Path(path).write_text(pretty(instance_to_dict(inst)))


# Sequences -----------------------------------------------------------------


def sequence_to_dict(seq) -> dict:
    return {"swaps": [list(s) for s in seq]}


def parse_sequence(text: str, source: str | None = None) -> SwapSequence:
    doc = load_document(text, source)
    swaps = _field(doc, "swaps", text, source, list)
    for s in swaps:
        if not (isinstance(s, list) and len(s) == 2 and all(isinstance(x, int) for x in s)):
            raise ParseError("swaps must be [u, v] pairs", _line_of(text, "swaps"), source)
    return SwapSequence(swaps)


def read_sequence(path) -> SwapSequence:
    return parse_sequence(Path(path).read_text(), str(path))


def write_sequence(path, seq) -> None:
    Path(path).write_text(pretty(sequence_to_dict(seq)))


# Reduction sources ---------------------------------------------------------


def set_cover_to_dict(phi: SetCoverInstance) -> dict:
    return {"universe_size": phi.universe_size, "sets": [sorted(s) for s in phi.sets]}


def parse_set_cover(text: str, source: str | None = None) -> SetCoverInstance:
    doc = load_document(text, source)
    m = _field(doc, "universe_size", text, source, int)
    sets = _field(doc, "sets", text, source, list)
    for s in sets:
        _int_list(s, "sets", text, source)
    try:
        return SetCoverInstance(m, tuple(sets))
    except TokenSwapError as exc:
        raise ParseError(str(exc), _line_of(text, "sets"), source) from exc


def label_cover_to_dict(phi: LabelCoverInstance, labelling: Labelling | None = None) -> dict:
    doc = {
        "left_count": phi.left_count,
        "right_count": phi.right_count,
        "alphabet_size": phi.alphabet_size,
        "edges": [{"x": x, "y": y, "constraint": list(c)} for (x, y), c in zip(phi.edges, phi.constraints)],
    }
    if labelling is not None:
        doc["labelling"] = {"left": list(labelling.left), "right": list(labelling.right)}
    return doc


def parse_label_cover(text: str, source: str | None = None) -> tuple[LabelCoverInstance, Labelling | None]:
    """Label-cover file; each edge is ``{"x", "y", "constraint"}`` with
    ``constraint[s]`` the right label forced by left label ``s``.  An optional
    ``labelling`` object gives a full labelling."""
    doc = load_document(text, source)
    left = _field(doc, "left_count", text, source, int)
    right = _field(doc, "right_count", text, source, int)
    sigma = _field(doc, "alphabet_size", text, source, int)
    raw = _field(doc, "edges", text, source, list)
    edges, tables = [], []
    for e in raw:
        if not (isinstance(e, dict) and {"x", "y", "constraint"} <= e.keys()):
            raise ParseError("each edge needs x, y and constraint", _line_of(text, "edges"), source)
        edges.append((e["x"], e["y"]))
        tables.append(_int_list(e["constraint"], "constraint", text, source))
    try:
        phi = LabelCoverInstance(left, right, sigma, tuple(edges), tuple(tables))
    except TokenSwapError as exc:
        raise ParseError(str(exc), _line_of(text, "edges"), source) from exc
    lab = doc.get("labelling")
    if lab is None:
        return phi, None
    if not (isinstance(lab, dict) and "left" in lab and "right" in lab):
        raise ParseError("labelling needs left and right", _line_of(text, "labelling"), source)
    return phi, Labelling(
        _int_list(lab["left"], "labelling", text, source),
        _int_list(lab["right"], "labelling", text, source),
    )


def roles_to_list(roles) -> list:
    return [list(r) for r in roles]
