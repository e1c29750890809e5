"""Scenario files: JSON documents describing a space, a target, an action,
a distribution, a relative subspace, a quantum state and an extension.

Probabilities are strings ``"p/q"`` so that they survive JSON exactly.
"""

from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Hashable

import jsonschema

from .algebra import SEMIRINGS, Dist, parse_rational
from .gaction import SimplicialGAction, torus_swap_action
from .pgext import CentralExtension, ExtensionAction, abelian_extension, nerve_subcomplex, pauli_extension
from .sdist import SimplicialDistribution, Target
from .simplicial import (
    DEFAULT_TRUNCATION, MAX_TRUNCATION, Simplex, SimplicialSet, nd, nerve_abelian, torus, word_to_surj,
)


class ScenarioError(ValueError):
    """Invalid scenario input; ``line`` points into the source when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


def env_truncation() -> int:
    raw = os.environ.get("CTXLAB_TRUNCATION", str(DEFAULT_TRUNCATION))
    try:
        n = int(raw)
    except ValueError:
        raise ScenarioError(f"CTXLAB_TRUNCATION must be an integer, got {raw!r}")
    if not 1 <= n <= MAX_TRUNCATION:
        raise ScenarioError(f"CTXLAB_TRUNCATION must lie in 1..{MAX_TRUNCATION}")
    return n


_ID = {"type": "string", "minLength": 1}
_RATIONAL = {"oneOf": [{"type": "string", "pattern": r"^\s*-?\d+(/\d+)?\s*$"}, {"type": "integer"}]}
_PAULI = {"type": "string", "pattern": r"^[+-]?[IXYZ]+$"}

SCHEMA: dict = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["name", "space"],
    "additionalProperties": False,
    "properties": {
        "name": {"type": "string"},
        "description": {"type": "string"},
        "space": {
            "type": "object",
            "required": ["kind"],
            "properties": {"kind": {"enum": ["explicit", "torus", "nerve", "pauli"]}},
            "allOf": [
                {"if": {"properties": {"kind": {"const": "explicit"}}},
                 "then": {"required": ["simplices", "faces"],
                          "properties": {
                              "kind": True,
                              "truncation": {"type": "integer", "minimum": 1, "maximum": MAX_TRUNCATION},
                              "simplices": {"type": "object",
                                            "patternProperties": {"^[0-9]$": {"type": "array", "items": _ID}},
                                            "additionalProperties": False},
                              "faces": {"type": "object",
                                        "additionalProperties": {"type": "array", "items": _ID}}},
                          "additionalProperties": False}},
                {"if": {"properties": {"kind": {"const": "nerve"}}},
                 "then": {"required": ["moduli"],
                          "properties": {"kind": True,
                                         "moduli": {"type": "array", "minItems": 1,
                                                    "items": {"type": "integer", "minimum": 2}}},
                          "additionalProperties": False}},
                {"if": {"properties": {"kind": {"const": "torus"}}},
                 "then": {"properties": {"kind": True}, "additionalProperties": False}},
                {"if": {"properties": {"kind": {"const": "pauli"}}},
                 "then": {"required": ["triangles"],
                          "properties": {"kind": True,
                                         "triangles": {"type": "object", "additionalProperties": {
                                             "type": "array", "items": _PAULI, "minItems": 2, "maxItems": 2}}},
                          "additionalProperties": False}},
            ],
        },
        "target": {
            "type": "object",
            "properties": {"d": {"type": "integer", "minimum": 2},
                           "circle_at": {"type": ["integer", "null"]}},
            "additionalProperties": False,
        },
        "semiring": {"enum": sorted(SEMIRINGS)},
        "action": {
            "type": "object",
            "properties": {
                "generators": {"type": "object",
                               "additionalProperties": {"type": "object", "additionalProperties": _ID}},
                "swap": {"type": "boolean"},
                "clifford": {"type": "object", "additionalProperties": {"type": "string",
                                                                        "pattern": "^[IXYZAH]+$"}},
            },
            "additionalProperties": False,
        },
        "distribution": {
            "type": "object",
            "additionalProperties": {"type": "object", "additionalProperties": _RATIONAL},
        },
        "relative": {"type": "object", "additionalProperties": {"type": "integer", "minimum": 0}},
        "witness": {"type": "object", "additionalProperties": {"type": "integer"}},
        "quantum": {
            "type": "object",
            "required": ["state"],
            "properties": {"state": {"type": "object", "additionalProperties": _RATIONAL}},
            "additionalProperties": False,
        },
        "extension": {
            "type": "object",
            "required": ["kind"],
            "properties": {"kind": {"enum": ["abelian", "pauli"]}},
            "allOf": [
                {"if": {"properties": {"kind": {"const": "abelian"}}},
                 "then": {"required": ["d", "moduli", "j", "projection", "eta"],
                          "properties": {
                              "kind": True,
                              "d": {"type": "integer", "minimum": 2},
                              "moduli": {"type": "array", "items": {"type": "integer", "minimum": 1}},
                              "j": {"type": "array", "items": {"type": "integer"}},
                              "projection": {"type": "object", "required": ["rows", "moduli"],
                                             "properties": {"rows": {"type": "array"},
                                                            "moduli": {"type": "array"}},
                                             "additionalProperties": False},
                              "eta": {"type": "object",
                                      "additionalProperties": {"type": "array", "items": {"type": "integer"}}},
                              "automorphisms": {"type": "object", "additionalProperties": {"type": "array"}},
                              "base": {"type": "array", "items": {"type": "array", "items": _ID}}},
                          "additionalProperties": False}},
                {"if": {"properties": {"kind": {"const": "pauli"}}},
                 "then": {"required": ["n", "base"],
                          "properties": {
                              "kind": True,
                              "n": {"type": "integer", "minimum": 1, "maximum": 6},
                              "base": {"type": "array", "items": {"type": "array", "items": _PAULI}},
                              "eta": {"type": "object", "additionalProperties": _PAULI},
                              "symmetry": {"type": "object", "additionalProperties": {
                                  "type": "string", "pattern": "^[IXYZAH]+$"}}},
                          "additionalProperties": False}},
            ],
        },
    },
}


@dataclass
class Scenario:
    name: str
    space: SimplicialSet
    target: Target
    action: SimplicialGAction | None = None
    distribution: SimplicialDistribution | None = None
    relative: dict | None = None
    witness: dict | None = None
    extension: CentralExtension | None = None
    extension_action: ExtensionAction | None = None
    quantum: Any = None
    pauli_ids: dict = field(default_factory=dict)   # display name -> Pauli tuple id
    raw: dict = field(default_factory=dict, repr=False)


def locate(text: str, path) -> int | None:
    """Approximate line of a JSON path: successive keys are searched in order."""
    pos, line = 0, None
    for key in path:
        if isinstance(key, int):
            continue
        m = re.compile(r'"' + re.escape(str(key)) + r'"\s*:').search(text, pos)
        if not m:
            break
        pos = m.end()
        line = text.count("\n", 0, m.start()) + 1
    return line


def load(path: str | Path) -> Scenario:
    text = Path(path).read_text()
    return loads(text)


def loads(text: str) -> Scenario:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"malformed JSON: {exc.msg}", exc.lineno) from None
    errors = sorted(jsonschema.Draft202012Validator(SCHEMA).iter_errors(raw), key=lambda e: list(e.path))
    if errors:
        e = errors[0]
        where = "/".join(map(str, e.path)) or "<root>"
        raise ScenarioError(f"schema violation at {where}: {e.message}", locate(text, e.path))
    try:
        return build(raw)
    except ScenarioError as exc:
        if exc.line is None and getattr(exc, "path", None):
            raise ScenarioError(str(exc), locate(text, exc.path)) from None
        raise


def _fail(message: str, *path) -> ScenarioError:
    err = ScenarioError(message)
    err.path = list(path)
    return err


def build(raw: dict) -> Scenario:
    trunc = env_truncation()
    space_raw = raw["space"]
    kind = space_raw["kind"]
    pauli_ids: dict = {}
    if kind == "explicit":
        space = _explicit_space(space_raw)
    elif kind == "torus":
        space = torus(max(trunc, 2))
    elif kind == "nerve":
        space = nerve_abelian(space_raw["moduli"], trunc)
    else:
        space, pauli_ids = _pauli_space(space_raw)
    tr = raw.get("target", {})
    try:
        target = Target(tr.get("d", 2), tr.get("circle_at"))
    except ValueError as exc:
        raise _fail(str(exc), "target")
    sc = Scenario(raw["name"], space, target, pauli_ids=pauli_ids, raw=raw)
    if "action" in raw:
        sc.action = _action(raw["action"], space, pauli_ids)
    if "relative" in raw:
        for e, lab in raw["relative"].items():
            if space.dim_of.get(e) != 1:
                raise _fail(f"relative id {e!r} is not an edge", "relative", e)
            if lab not in target.labels():
                raise _fail(f"label {lab} is not an edge of {target.describe()}", "relative", e)
        sc.relative = dict(raw["relative"])
    if "witness" in raw:
        sc.witness = {e: v % target.d for e, v in raw["witness"].items()}
    if "quantum" in raw:
        from .pauli import PauliState, born_distribution
        if kind != "pauli":
            raise _fail("a quantum state needs a space of kind 'pauli'", "quantum")
        try:
            state = PauliState.from_labels(raw["quantum"]["state"])
        except ValueError as exc:
            raise _fail(str(exc), "quantum", "state")
        sc.quantum = state
        try:
            born = born_distribution(state, _id_space(space, pauli_ids))
        except ValueError as exc:
            raise _fail(f"Born rule: {exc}", "quantum")
        names = {v: k for k, v in pauli_ids.items()}
        sc.distribution = SimplicialDistribution(space, Target(2), {names[b]: d for b, d in born.values.items()})
    if "distribution" in raw:
        if sc.distribution is not None:
            raise _fail("give either a distribution or a quantum state", "distribution")
        sc.distribution = _distribution(raw, space, target)
    if "extension" in raw:
        sc.extension, sc.extension_action = _extension(raw["extension"], trunc)
    return sc


def _parse_face(entry: str, dims: dict, owner: str, i: int) -> Simplex:
    """``"v"``, ``"s0 v"`` or ``"s1s0 v"``: degeneracies, then the id."""
    tokens = entry.split()
    base = tokens[-1]
    if base not in dims:
        raise _fail(f"face {i} of {owner!r} refers to unknown id {base!r}", "space", "faces", owner)
    prefix = "".join(tokens[:-1])
    if not re.fullmatch(r"(s\d)*", prefix):
        raise _fail(f"bad degeneracy word {prefix!r} in face {i} of {owner!r}", "space", "faces", owner)
    word = [int(c) for c in prefix[1::2]]
    if any(a <= b for a, b in zip(word, word[1:])):
        raise _fail(f"degeneracy word in face {i} of {owner!r} must be strictly decreasing",
                    "space", "faces", owner)
    try:
        return Simplex(base, word_to_surj(word, dims[base]))
    except ValueError as exc:
        raise _fail(str(exc), "space", "faces", owner)


def _explicit_space(raw: dict) -> SimplicialSet:
    simp = {int(k): list(v) for k, v in raw["simplices"].items()}
    top = max(simp) if simp else 0
    trunc = raw.get("truncation", max(top, 1))
    if top > trunc:
        raise _fail("simplices above the truncation", "space", "truncation")
    nondeg = {n: simp.get(n, []) for n in range(trunc + 1)}
    dims = {}
    for n, ids in nondeg.items():
        for b in ids:
            if b in dims:
                raise _fail(f"id {b!r} listed twice", "space", "simplices")
            dims[b] = n
    faces: dict = {}
    for b, n in dims.items():
        entry = raw["faces"].get(b, [] if n == 0 else None)
        if entry is None:
            raise _fail(f"faces of {b!r} missing", "space", "faces")
        if len(entry) != (n + 1 if n else 0):
            raise _fail(f"{b!r} needs {n + 1} faces", "space", "faces", b)
        fs = tuple(_parse_face(s, dims, b, i) for i, s in enumerate(entry))
        for i, f in enumerate(fs):
            if f.dim != n - 1:
                raise _fail(f"face {i} of {b!r} has dimension {f.dim}, expected {n - 1}", "space", "faces", b)
        faces[b] = fs
    for b in raw["faces"]:
        if b not in dims:
            raise _fail(f"faces given for unknown id {b!r}", "space", "faces", b)
    try:
        return SimplicialSet(nondeg, faces, trunc, "X")
    except ValueError as exc:
        raise _fail(str(exc), "space")


def _pauli_space(raw: dict):
    from .pauli import from_label, identity, multiply, to_label
    tris = {}
    n = None
    for name, labels in raw["triangles"].items():
        try:
            t = tuple(from_label(l) for l in labels)
        except ValueError as exc:
            raise _fail(str(exc), "space", "triangles", name)
        n = n or t[0].n
        if any(p.n != n for p in t):
            raise _fail("qubit counts differ", "space", "triangles", name)
        tris[name] = t
    if not tris:
        raise _fail("no triangles", "space", "triangles")
    try:
        X = nerve_subcomplex(tris.values(), multiply, identity(n), truncation=2, name="X")
    except ValueError as exc:
        raise _fail(str(exc), "space", "triangles")
    names = {(): "*"}
    for b in X.nondeg[1]:
        names[b] = to_label(b[0])
    for name, t in tris.items():
        if t in names:
            raise _fail(f"triangle {name!r} repeats another", "space", "triangles", name)
        names[t] = name
    for b in X.nondeg[2]:
        names.setdefault(b, "(" + ", ".join(map(to_label, b)) + ")")
    return X.rename(names, name="X"), {v: k for k, v in names.items()}


def _id_space(space: SimplicialSet, pauli_ids: dict) -> SimplicialSet:
    return space.rename(pauli_ids, name=space.name)


def _action(raw: dict, space: SimplicialSet, pauli_ids: dict) -> SimplicialGAction:
    given = [k for k in ("generators", "swap", "clifford") if k in raw]
    if len(given) != 1:
        raise _fail("give exactly one of generators, swap, clifford", "action")
    if "swap" in raw:
        if not raw["swap"]:
            raise _fail("swap must be true", "action", "swap")
        try:
            return torus_swap_action(space)
        except (KeyError, ValueError):
            raise _fail("the swap action needs the torus", "action")
    if "clifford" in raw:
        from .pauli import CliffordAction, conjugation_action, generated_group
        if not pauli_ids:
            raise _fail("Clifford symmetries need a space of kind 'pauli'", "action")
        try:
            gens = {k: CliffordAction.local(v, name=k) for k, v in raw["clifford"].items()}
            group, units = generated_group(gens)
            act = conjugation_action(_id_space(space, pauli_ids), group, units)
        except (ValueError, KeyError) as exc:
            raise _fail(f"Clifford action does not preserve the space: {exc}", "action", "clifford")
        names = {v: k for k, v in pauli_ids.items()}
        images = {g: {names[b]: Simplex(names[y.base], y.surj) for b, y in imgs.images.items()}
                  for g, imgs in act.maps.items()}
        return SimplicialGAction(group, space, images)
    gens = {}
    for gname, perm in raw["generators"].items():
        for a, b in perm.items():
            if a not in space.dim_of or b not in space.dim_of:
                raise _fail(f"generator {gname!r} moves an unknown id", "action", "generators", gname)
            if space.dim_of[a] != space.dim_of[b]:
                raise _fail(f"generator {gname!r} changes dimension", "action", "generators", gname)
        gens[gname] = {b: nd(perm.get(b, b), n) for b, n in space.dim_of.items()}
    try:
        return SimplicialGAction.from_generators(space, gens)
    except ValueError as exc:
        raise _fail(str(exc), "action", "generators")


def _outcome(key: str, n: int, owner: str) -> tuple:
    try:
        t = tuple(int(v) for v in key.split(","))
    except ValueError:
        raise _fail(f"bad outcome {key!r}", "distribution", owner)
    if len(t) != n:
        raise _fail(f"outcome {key!r} of {owner!r} needs {n} entries", "distribution", owner)
    return t


def _coerce(semiring, v, owner: str):
    if semiring.name == "rational":
        return v
    if semiring.name == "natural":
        return int(v) if v.denominator == 1 else v
    if v not in (0, 1):
        raise _fail(f"boolean weights are 0 or 1, got {v}", "distribution", owner)
    return bool(v)


def _distribution(raw: dict, space: SimplicialSet, target: Target) -> SimplicialDistribution:
    semiring = SEMIRINGS[raw.get("semiring", "rational")]
    vals = {}
    for b, table in raw["distribution"].items():
        if b not in space.dim_of or space.dim_of[b] == 0:
            raise _fail(f"distribution on unknown or 0-dimensional id {b!r}", "distribution", b)
        n = space.dim_of[b]
        entries: dict[Hashable, Any] = {}
        for key, w in table.items():
            try:
                v = parse_rational(w)
            except (ValueError, ZeroDivisionError) as exc:
                raise _fail(str(exc), "distribution", b)
            v = _coerce(semiring, v, b)
            if v:
                entries[_outcome(key, n, b)] = v
        vals[b] = Dist(entries, semiring, check=False)
    missing = [b for m in range(1, space.truncation + 1) for b in space.nondeg[m] if b not in vals]
    if missing:
        raise _fail(f"distribution missing on {missing[:5]}", "distribution")
    return SimplicialDistribution(space, target, vals, semiring)


def _extension(raw: dict, trunc: int):
    try:
        if raw["kind"] == "pauli":
            return pauli_extension(raw["n"], raw["base"], raw.get("eta"), raw.get("symmetry"),
                                   truncation=2)
        return abelian_extension(raw["d"], raw["moduli"], raw["j"], raw["projection"]["rows"],
                                 raw["projection"]["moduli"], raw["eta"], raw.get("automorphisms"),
                                 raw.get("base"), trunc)
    except (ValueError, KeyError) as exc:
        raise _fail(f"extension: {exc}", "extension")
