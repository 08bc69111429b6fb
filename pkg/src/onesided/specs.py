"""JSON category specs: algebra, named representations and morphisms, conflation class, percolation data.

Schema::

    {
      "vertices": ["1", "2", "3"],
      "arrows": [{"id": "a", "src": "2", "tgt": "1"}, ...],
      "relations": [[["1", ["a", "b"]], ["-1/2", ["c", "d"]]], ...],
      "reps": {"P2": {"dims": {"1": 1, "2": 1, "3": 0}, "maps": {"a": [["1"]]}}, ...},
      "indecomposables": ["S1", ...],             # optional, defaults to all reps
      "morphisms": {"iota": {"src": "S2", "dst": "I2", "blocks": {"2": [["1"]]}}, ...},
      "conflations": {"kind": "AllShortExactMinus", "removed": [["iota", "pi"]]},
      "percolating": {"serre_generators": ["1"]}  # or {"objects": ["P2"]}
      "probes": {"max_dim_vector": [2, 2, 2], "coefficient_grid": [-1, 1, 2], "max_objects": 12}
    }

Rationals are written as integers or "p/q" strings.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path
from typing import Any

from .conflations import (
    AllShortExact,
    AllShortExactMinus,
    ConflationClass,
    DegreewiseInduced,
    ExplicitList,
    KCPair,
    ProbeSet,
    SplitOnly,
)
from .linalg import Matrix, fraction_to_str, to_fraction
from .percolation import ExplicitObjects, PercolatingSpec, SerreGenerators
from .quiver import Arrow, QuiverAlgebra, Relation, RepMorphism, Representation, RepresentationError


class SpecError(ValueError):
    """Input that does not parse or violates the schema."""


FIXTURES = resources.files("onesided") / "fixtures"


@dataclass
class CategorySpec:
    algebra: QuiverAlgebra
    reps: dict[str, Representation]
    morphisms: dict[str, RepMorphism]
    conflations: ConflationClass
    percolating: PercolatingSpec | None = None
    indecomposables: tuple[str, ...] = ()
    probe_options: dict[str, Any] = field(default_factory=dict)
    extra: dict[str, Any] = field(default_factory=dict)
    path: Path | None = None

    def probes(self, budget: int | None = None, seed: int = 0) -> ProbeSet:
        opts = dict(self.probe_options)
        if budget is not None:
            opts["max_objects"] = budget
        return ProbeSet(tuple(self.reps[n] for n in self.indecomposables), seed=seed, **opts)

    def name_of(self, x: Representation) -> str | None:
        from .quiver import is_isomorphic
        for name, rep in self.reps.items():
            if rep.dims == x.dims and is_isomorphic(rep, x):
                return name
        return None


def resolve_path(path: str | Path, base: Path | None = None, subdir: str = "") -> Path:
    """Look next to ``base`` first, then in the shipped fixtures."""
    p = Path(path)
    candidates = [p] if p.is_absolute() else [Path.cwd() / p]
    if base is not None and not p.is_absolute():
        candidates.insert(0, base / p)
    if not p.is_absolute():
        shipped = Path(str(FIXTURES))
        candidates += [shipped / p, shipped / subdir / p] if subdir else [shipped / p]
    for c in candidates:
        if c.exists():
            return c
    raise SpecError(f"missing file: {path}")


def read_json(path: Path) -> Any:
    text = path.read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as err:
        raise SpecError(f"{path}:{err.lineno}:{err.colno}: {err.msg}") from None


def _matrix(raw, rows: int, cols: int, where: str) -> Matrix:
    if rows == 0 or cols == 0:
        return Matrix.zeros(rows, cols)
    try:
        data = [[to_fraction(v) for v in row] for row in raw]
    except (TypeError, ValueError) as err:
        raise SpecError(f"{where}: {err}") from None
    if len(data) != rows or any(len(r) != cols for r in data):
        raise SpecError(f"{where}: expected a {rows}x{cols} matrix")
    return Matrix.of(data)


def _require(obj: dict, key: str, where: str):
    if key not in obj:
        raise SpecError(f"{where}: missing key '{key}'")
    return obj[key]


def parse_algebra(data: dict) -> QuiverAlgebra:
    vertices = [str(v) for v in _require(data, "vertices", "category")]
    arrows = [Arrow(str(a["id"]), str(a["src"]), str(a["tgt"])) for a in data.get("arrows", [])]
    relations = []
    for k, rel in enumerate(data.get("relations", [])):
        try:
            relations.append(Relation.of([(to_fraction(c), [str(x) for x in path]) for c, path in rel]))
        except (TypeError, ValueError) as err:
            raise SpecError(f"relation {k}: {err}") from None
    try:
        return QuiverAlgebra(vertices, arrows, relations)
    except ValueError as err:
        raise SpecError(f"algebra: {err}") from None


def parse_representation(alg: QuiverAlgebra, name: str, raw: dict) -> Representation:
    dims = {v: int(raw.get("dims", {}).get(v, 0)) for v in alg.vertices}
    maps = {}
    for a in alg.arrows:
        where = f"representation '{name}', arrow '{a.id}'"
        maps[a.id] = _matrix(raw.get("maps", {}).get(a.id, []), dims[a.tgt], dims[a.src], where)
    try:
        return Representation(alg, dims, maps)
    except (RepresentationError, ValueError) as err:
        raise SpecError(f"representation '{name}': {err}") from None


def parse_morphism(reps: dict[str, Representation], name: str, raw: dict) -> RepMorphism:
    where = f"morphism '{name}'"
    try:
        src, dst = reps[_require(raw, "src", where)], reps[_require(raw, "dst", where)]
    except KeyError as err:
        raise SpecError(f"{where}: unknown representation {err}") from None
    blocks = {v: _matrix(raw.get("blocks", {}).get(v, []), dst.dim(v), src.dim(v), f"{where}, vertex '{v}'")
              for v in src.algebra.vertices}
    try:
        return RepMorphism(src, dst, blocks)
    except (RepresentationError, ValueError) as err:
        raise SpecError(f"{where}: {err}") from None


def _pair(morphisms: dict[str, RepMorphism], raw, where: str) -> KCPair:
    names = (raw["inflation"], raw["deflation"]) if isinstance(raw, dict) else tuple(raw)
    try:
        return KCPair(morphisms[names[0]], morphisms[names[1]])
    except KeyError as err:
        raise SpecError(f"{where}: unknown morphism {err}") from None


def parse_conflations(morphisms: dict[str, RepMorphism], raw: dict | None) -> ConflationClass:
    raw = raw or {"kind": "AllShortExact"}
    kind = raw.get("kind")
    if kind == "AllShortExact":
        return AllShortExact()
    if kind == "SplitOnly":
        return SplitOnly()
    if kind == "ExplicitList":
        return ExplicitList(tuple(_pair(morphisms, p, "conflations") for p in raw.get("pairs", [])))
    if kind == "AllShortExactMinus":
        removed = tuple(_pair(morphisms, p, "conflations") for p in raw.get("removed", []))
        return AllShortExactMinus(removed, closure=raw.get("closure", "pullback"))
    if kind == "DegreewiseInduced":
        return DegreewiseInduced(parse_conflations(morphisms, raw.get("inner")))
    raise SpecError(f"conflations: unknown kind {kind!r}")


def parse_percolating(c: ConflationClass, reps: dict[str, Representation], raw: dict | None
                      ) -> PercolatingSpec | None:
    if not raw:
        return None
    if "serre_generators" in raw:
        return PercolatingSpec(c, SerreGenerators(tuple(str(v) for v in raw["serre_generators"])))
    if "objects" in raw:
        try:
            return PercolatingSpec(c, ExplicitObjects(tuple(reps[n] for n in raw["objects"])))
        except KeyError as err:
            raise SpecError(f"percolating: unknown representation {err}") from None
    raise SpecError("percolating: expected 'serre_generators' or 'objects'")


def parse_category(data: dict, path: Path | None = None) -> CategorySpec:
    if not isinstance(data, dict):
        raise SpecError("category spec must be a JSON object")
    alg = parse_algebra(data)
    reps = {name: parse_representation(alg, name, raw) for name, raw in data.get("reps", {}).items()}
    morphisms = {name: parse_morphism(reps, name, raw) for name, raw in data.get("morphisms", {}).items()}
    c = parse_conflations(morphisms, data.get("conflations"))
    perc = parse_percolating(c, reps, data.get("percolating"))
    indec = tuple(data.get("indecomposables", list(reps)))
    unknown = [n for n in indec if n not in reps]
    if unknown:
        raise SpecError(f"indecomposables: unknown representations {unknown}")
    probe_opts = {}
    for key, raw in (data.get("probes") or {}).items():
        if key in ("max_dim_vector", "coefficient_grid"):
            probe_opts[key] = tuple(int(v) for v in raw)
        elif key in ("max_objects", "morphisms_per_pair"):
            probe_opts[key] = int(raw)
        else:
            raise SpecError(f"probes: unknown option '{key}'")
    known = {"vertices", "arrows", "relations", "reps", "morphisms", "conflations", "percolating",
             "indecomposables", "probes"}
    extra = {k: v for k, v in data.items() if k not in known}
    return CategorySpec(alg, reps, morphisms, c, perc, indec, probe_opts, extra, path)


def load_category_spec(path: str | Path, base: Path | None = None) -> CategorySpec:
    resolved = resolve_path(path, base)
    return parse_category(read_json(resolved), resolved)


def with_conflations(spec: CategorySpec, c: ConflationClass) -> CategorySpec:
    perc = spec.percolating and replace(spec.percolating, conflations=c)
    return replace(spec, conflations=c, percolating=perc)


# -- serialization ------------------------------------------------------------------

def matrix_to_json(m: Matrix) -> list[list[str]]:
    return [[fraction_to_str(v) for v in row] for row in m.tolist()]


def representation_to_json(x: Representation) -> dict:
    return {"dims": {v: x.dim(v) for v in x.algebra.vertices},
            "maps": {a: matrix_to_json(m) for a, m in x.maps.items() if m.rows and m.cols}}


def morphism_to_json(f: RepMorphism) -> dict:
    return {"src_dims": list(f.src.dims), "dst_dims": list(f.dst.dims),
            "blocks": {v: matrix_to_json(m) for v, m in f.blocks.items() if m.rows and m.cols}}
