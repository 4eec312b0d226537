"""
The self-describing JSON document format.

A document names one instance and any number of index posets,
pro-objects, pro-maps (level or general), base objects/maps, diagrams,
and witness bundles.  Matrices serialize row-major as 0/1 arrays, sets
as arrays of strings, posets as cover-pair lists (or the literal
"omega"); ω-regime values are given as eventually-constant lists.
"""

from __future__ import annotations

import json

from .base import CHAIN_F2, SET_BIJ, BaseMap, chain_obj, set_map, set_obj
from .errors import MalformedError
from .indexing import DEFAULT_DEPTH, OMEGA, from_covers, omega
from .prohom import HFamily
from .proobj import ProObject, general_map, level_map, omega_pro_object

DOC_SCHEMA = "promc.doc/1"
CERT_SCHEMA = "promc.cert/1"


# ------------------------------------------------------------- payloads


def obj_to_doc(obj):
    if obj.instance == SET_BIJ:
        return list(obj.elements)
    return {"lo": obj.lo, "hi": obj.hi,
            "dims": [obj.dim(n) for n in obj.degrees],
            "d": {str(n): obj.d(n).tolist()
                  for n in range(obj.lo, obj.hi) if obj.d(n).size}}


def obj_from_doc(instance, doc):
    if instance == SET_BIJ:
        if not isinstance(doc, list):
            raise MalformedError("SetBij object payload must be a list")
        return set_obj(doc)
    try:
        dims = doc["dims"]
        lo, hi = int(doc["lo"]), int(doc["hi"])
    except (KeyError, TypeError) as e:
        raise MalformedError(f"bad ChainF2 object payload: {e}")
    diff = {int(k): v for k, v in doc.get("d", {}).items()}
    return chain_obj(lo, hi, dims, diff)


def map_to_doc(m):
    if m.instance == SET_BIJ:
        return dict(m.mapping)
    return {str(n): m.mat(n).tolist()
            for n in set(m.source.degrees) | set(m.target.degrees)
            if m.mat(n).size}


def map_from_doc(instance, doc, source, target):
    if instance == SET_BIJ:
        return set_map(source, target, doc)
    mats = {int(k): v for k, v in doc.items()}
    return BaseMap(source, target, mats=mats)


def poset_to_doc(p):
    if p.regime == OMEGA:
        return "omega"
    return {"elements": list(p.elements), "covers": [list(c) for c in p.covers()]}


def poset_from_doc(doc, depth=DEFAULT_DEPTH):
    if doc == "omega":
        return omega(depth)
    try:
        return from_covers(doc["elements"], [tuple(c) for c in doc["covers"]],
                           depth=depth)
    except (KeyError, TypeError) as e:
        raise MalformedError(f"bad poset payload: {e}")


def proobj_to_doc(X):
    if X.index.regime == OMEGA:
        d = X.index.depth
        return {"index": "omega",
                "values": [obj_to_doc(X.value(n)) for n in range(d)],
                "steps": [map_to_doc(X.step(n)) for n in range(d - 1)]}
    return {"values": {s: obj_to_doc(X.value(s)) for s in X.index.elements},
            "structure": {f"{t}>{s}": map_to_doc(X.struct(t, s))
                          for (s, t) in X.index.covers()}}


def proobj_from_doc(instance, doc, index):
    if index.regime == OMEGA:
        vals = [obj_from_doc(instance, v) for v in doc["values"]]
        if not vals:
            raise MalformedError("ω object needs at least one value")
        steps_doc = doc.get("steps", [])

        def value(n):
            return vals[min(n, len(vals) - 1)]

        steps = [map_from_doc(instance, s, value(k + 1), value(k))
                 for k, s in enumerate(steps_doc)]

        def step(n):
            if n < len(steps):
                return steps[n]
            from .base import identity
            if value(n + 1) != value(n):
                raise MalformedError("ω tail is not constant; give more steps")
            return identity(value(n))

        return omega_pro_object(value, step, depth=index.depth)
    values = {s: obj_from_doc(instance, v) for s, v in doc["values"].items()}
    if set(values) != set(index.elements):
        raise MalformedError("object values do not match the poset carrier")
    structs = {}
    for key, payload in doc.get("structure", {}).items():
        t, _, s = key.partition(">")
        if not index.leq(s, t):
            raise MalformedError(f"structure key {key} not a related pair")
        structs[(t, s)] = map_from_doc(instance, payload, values[t], values[s])
    return ProObject(index, values=values, structs=structs)


def promap_to_doc(f, source_name, target_name):
    out = {"source": source_name, "target": target_name}
    if f.source.index.regime == OMEGA:
        d = f.source.index.depth
        if f.kind == "level":
            out["level"] = [map_to_doc(f.level_component(n)) for n in range(d)]
        else:
            out["general"] = [[int(f.component(n)[0]),
                               map_to_doc(f.component(n)[1])] for n in range(d)]
        return out
    if f.kind == "level":
        out["level"] = {s: map_to_doc(f.level_component(s))
                        for s in f.source.index.elements}
    else:
        out["general"] = {s: [f.component(s)[0], map_to_doc(f.component(s)[1])]
                          for s in f.target.index.elements}
    return out


def promap_from_doc(instance, doc, source, target):
    if source.index.regime == OMEGA:
        if "level" in doc:
            comps = [map_from_doc(instance, c, source.value(n), target.value(n))
                     for n, c in enumerate(doc["level"])]

            def comp(n):
                k = min(n, len(comps) - 1)
                if n < len(comps):
                    return comps[n]
                if source.value(n) != comps[-1].source:
                    raise MalformedError("ω level tail is not constant")
                return comps[-1]

            return level_map(source, target, comp,
                             depth=min(len(comps), source.index.depth))
        pairs = [(int(t), p) for t, p in doc["general"]]
        comps = [(t, map_from_doc(instance, p, source.value(t), target.value(n)))
                 for n, (t, p) in enumerate(pairs)]

        def gcomp(n):
            if n < len(comps):
                return comps[n]
            raise MalformedError("ω general map queried past its presentation")

        return general_map(source, target, gcomp,
                           depth=min(len(comps), source.index.depth))
    if "level" in doc:
        comps = {s: map_from_doc(instance, c, source.value(s), target.value(s))
                 for s, c in doc["level"].items()}
        return level_map(source, target, comps)
    if "general" in doc:
        comps = {}
        for s, (t, payload) in doc["general"].items():
            comps[s] = (t, map_from_doc(instance, payload,
                                        source.value(t), target.value(s)))
        return general_map(source, target, comps)
    raise MalformedError("pro-map payload needs 'level' or 'general'")


def hfamily_to_doc(fam):
    return {f"{t}>{s}": map_to_doc(m) for (t, s), m in sorted(fam.pairs.items())}


def hfamily_from_doc(instance, doc, f):
    """Witness pairs for the pro-map f (maps Y_t -> X_s)."""
    X, Y = f.source, f.target
    pairs = {}
    for key, payload in doc.items():
        t, _, s = key.partition(">")
        pairs[(t, s)] = map_from_doc(instance, payload, Y.value(t), X.value(s))
    return HFamily(pairs)


# ------------------------------------------------------------- documents


class Document:
    """A parsed document: named posets, pro-objects, pro-maps, base
    objects/maps, and witness bundles, all validated on load."""

    def __init__(self, raw, depth=DEFAULT_DEPTH):
        if not isinstance(raw, dict):
            raise MalformedError("document must be a JSON object")
        if raw.get("schema") != DOC_SCHEMA:
            raise MalformedError(f"unknown document schema {raw.get('schema')!r}")
        self.instance = raw.get("instance")
        if self.instance not in (SET_BIJ, CHAIN_F2):
            raise MalformedError(f"unknown instance {self.instance!r}")
        self.depth = int(raw.get("depth", depth))
        self.posets = {}
        for name, doc in raw.get("posets", {}).items():
            self.posets[name] = poset_from_doc(doc, depth=self.depth)
        self.base_objects = {}
        for name, doc in raw.get("base_objects", {}).items():
            self.base_objects[name] = obj_from_doc(self.instance, doc)
        self.base_maps = {}
        for name, doc in raw.get("base_maps", {}).items():
            src = self._base_obj(doc.get("source"))
            tgt = self._base_obj(doc.get("target"))
            self.base_maps[name] = map_from_doc(self.instance, doc["payload"],
                                                src, tgt)
        self.objects = {}
        for name, doc in raw.get("objects", {}).items():
            index = self.posets.get(doc.get("index"))
            if index is None:
                raise MalformedError(f"object {name} references unknown poset "
                                     f"{doc.get('index')!r}")
            self.objects[name] = proobj_from_doc(self.instance, doc, index)
        self.maps = {}
        for name, doc in raw.get("maps", {}).items():
            src = self.objects.get(doc.get("source"))
            tgt = self.objects.get(doc.get("target"))
            if src is None or tgt is None:
                raise MalformedError(f"map {name} references unknown objects")
            self.maps[name] = promap_from_doc(self.instance, doc, src, tgt)
        self.witnesses = {}
        for name, doc in raw.get("witnesses", {}).items():
            f = self.maps.get(doc.get("map"))
            if f is None:
                raise MalformedError(f"witness bundle {name} references "
                                     f"unknown map {doc.get('map')!r}")
            self.witnesses[name] = hfamily_from_doc(self.instance,
                                                    doc.get("pairs", {}), f)

    def _base_obj(self, name):
        if name not in self.base_objects:
            raise MalformedError(f"unknown base object {name!r}")
        return self.base_objects[name]

    def map_named(self, name):
        if name not in self.maps:
            raise MalformedError(f"document has no map named {name!r}")
        return self.maps[name]

    def object_named(self, name):
        if name not in self.objects:
            raise MalformedError(f"document has no object named {name!r}")
        return self.objects[name]


def load_document(path, depth=DEFAULT_DEPTH):
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except OSError as e:
        raise MalformedError(f"cannot read {path}: {e}")
    except json.JSONDecodeError as e:
        raise MalformedError(f"{path} is not valid JSON: {e}")
    return Document(raw, depth=depth)


def dump_json(doc, path=None):
    text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if path is not None:
        with open(path, "w") as fh:
            fh.write(text)
    return text
