"""Scenario runner and report emitter.

A scenario is a JSON file naming a category spec (optionally overriding
its conflation class or percolating data), a seed, a probe budget and a
list of assertions. Each assertion names an operation and its expected
outcome; the runner evaluates them in order and collects verdicts and
hom tables into a :class:`Report`.
"""

from __future__ import annotations

import io
import json
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable

from .complexes import ChainMap, stalk
from .conflations import (
    COUNTEREXAMPLE,
    HOLDS,
    KCPair,
    check_axiom,
    is_conflation,
    is_deflation,
    is_inflation,
)
from .completions import wic_build
from .derived import derived_hom, ext_dim, is_projective
from .hull import hull_conflation_check, hull_embed
from .percolation import check_c2op, check_percolating, quotient_hom_dim, verdier_probe
from .quiver import is_isomorphic
from .specs import (
    CategorySpec,
    SpecError,
    load_category_spec,
    parse_conflations,
    parse_percolating,
    read_json,
    resolve_path,
    with_conflations,
)

FORMATS = ("text", "json", "tsv")


@dataclass
class Table:
    name: str
    header: tuple[str, ...]
    rows: list[tuple]


def hom_table(name: str, entries: dict[tuple[str, str, int], int]) -> Table:
    """Rows sorted by source name, target name, then shift."""
    rows = [(s, t, k, d) for (s, t, k), d in entries.items()]
    rows.sort(key=lambda r: (r[0], r[1], r[2]))
    return Table(name, ("source", "target", "shift", "dim"), rows)


def table_to_tsv(t: Table) -> str:
    out = ["\t".join(t.header)]
    out += ["\t".join(str(v) for v in row) for row in t.rows]
    return "\n".join(out) + "\n"


def read_tsv_table(path: Path, name: str = "") -> Table:
    lines = [ln for ln in path.read_text().splitlines() if ln and not ln.startswith("#")]
    if not lines:
        raise SpecError(f"{path}: empty table")
    header = tuple(lines[0].split("\t"))
    rows = []
    for k, ln in enumerate(lines[1:], start=2):
        cells = ln.split("\t")
        if len(cells) != len(header):
            raise SpecError(f"{path}:{k}:1: expected {len(header)} columns")
        rows.append(tuple(int(c) if c.lstrip("-").isdigit() else c for c in cells))
    return Table(name or path.stem, header, rows)


@dataclass
class AssertionResult:
    index: int
    op: str
    passed: bool
    expected: Any
    observed: Any
    tag: str | None = None
    anchor: str | None = None
    hard: bool = True
    witness: dict | None = None


@dataclass
class Report:
    scenario: str
    seed: int
    probe_budget: str
    results: list[AssertionResult] = field(default_factory=list)
    tables: list[Table] = field(default_factory=list)
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results if r.hard)


@dataclass
class Context:
    spec: CategorySpec
    seed: int
    budget: int | None
    base: Path | None

    def probes(self):
        return self.spec.probes(self.budget, self.seed)

    def rep(self, name: str):
        try:
            return self.spec.reps[name]
        except KeyError:
            raise SpecError(f"unknown representation '{name}'") from None

    def morphism(self, name: str):
        try:
            return self.spec.morphisms[name]
        except KeyError:
            raise SpecError(f"unknown morphism '{name}'") from None

    def pair(self, a: dict) -> KCPair:
        return KCPair(self.morphism(a["inflation"]), self.morphism(a["deflation"]))

    def percolating(self):
        if self.spec.percolating is None:
            raise SpecError("this assertion needs percolating data in the category spec")
        return self.spec.percolating


Outcome = tuple[bool, Any, Any, dict | None, list[Table]]


def describe_witness(ctx: Context, witness: dict | None) -> dict | None:
    if not witness:
        return None
    out = {}
    for key, value in witness.items():
        if hasattr(value, "src") and hasattr(value, "dst"):
            out[key] = {"src": ctx.spec.name_of(value.src) or list(value.src.dims),
                        "dst": ctx.spec.name_of(value.dst) or list(value.dst.dims)}
        else:
            out[key] = str(value)
    return out


def _op_check_axiom(ctx: Context, a: dict) -> Outcome:
    report = check_axiom(ctx.spec.conflations, a["axiom"], ctx.probes())
    expected = a["expect"]
    ok = report.verdict == expected
    if ok and "witness_composite" in a:
        names = a["witness_composite"]
        w = report.witness or {}
        first, second = w.get("i"), w.get("p")
        ok = (first is not None and second is not None
              and all(is_isomorphic(obj, ctx.rep(n)) for obj, n in
                      zip((first.src, first.dst, second.dst), names)))
    return ok, expected, report.verdict, describe_witness(ctx, report.witness), []


def _op_is_conflation(ctx: Context, a: dict) -> Outcome:
    got = is_conflation(ctx.spec.conflations, ctx.pair(a))
    return got == a["expect"], a["expect"], got, None, []


def _op_is_deflation(ctx: Context, a: dict) -> Outcome:
    got = is_deflation(ctx.spec.conflations, ctx.morphism(a["morphism"]))
    return got == a["expect"], a["expect"], got, None, []


def _op_is_inflation(ctx: Context, a: dict) -> Outcome:
    got = is_inflation(ctx.spec.conflations, ctx.morphism(a["morphism"]))
    return got == a["expect"], a["expect"], got, None, []


def _objects(ctx: Context, a: dict) -> list[str]:
    return list(a.get("objects", ctx.spec.indecomposables))


def _op_projectives(ctx: Context, a: dict) -> Outcome:
    probes = ctx.probes()
    got = sorted(n for n in _objects(ctx, a) if is_projective(ctx.spec.conflations, ctx.rep(n), probes))
    return got == sorted(a["expect"]), sorted(a["expect"]), got, None, []


def _compare_golden(ctx: Context, table: Table, a: dict) -> tuple[bool, Any]:
    if "golden" not in a:
        return True, None
    golden = read_tsv_table(resolve_path(a["golden"], ctx.base, "golden"), table.name)
    mismatches = [(g, t) for g, t in zip(golden.rows, table.rows) if g != t]
    ok = golden.header == table.header and len(golden.rows) == len(table.rows) and not mismatches
    return ok, f"{len(mismatches)} mismatching rows" if not ok else "matches golden"


def _op_dhom_table(ctx: Context, a: dict) -> Outcome:
    lo, hi = a.get("shifts", [-2, 2])
    names = _objects(ctx, a)
    entries = {}
    for s in names:
        for t in names:
            for k in range(lo, hi + 1):
                entries[(s, t, k)] = derived_hom(ctx.spec.conflations, stalk(ctx.rep(s)), stalk(ctx.rep(t)), k).dimension
    table = hom_table(a.get("table", "dhom"), entries)
    ok, observed = _compare_golden(ctx, table, a)
    return ok, a.get("golden"), observed, None, [table]


def _op_qhom_table(ctx: Context, a: dict) -> Outcome:
    spec = ctx.percolating()
    names = a.get("objects") or [n for n in ctx.spec.indecomposables if not spec.contains(ctx.rep(n))]
    entries = {(s, t, 0): quotient_hom_dim(spec, ctx.rep(s), ctx.rep(t)) for s in names for t in names}
    table = hom_table(a.get("table", "qhom"), entries)
    ok, observed = _compare_golden(ctx, table, a)
    return ok, a.get("golden"), observed, None, [table]


def _op_ext_dim(ctx: Context, a: dict) -> Outcome:
    got = ext_dim(ctx.spec.conflations, ctx.rep(a["x"]), ctx.rep(a["y"]), int(a["n"]))
    return got == a["expect"], a["expect"], got, None, []


def _op_check_percolating(ctx: Context, a: dict) -> Outcome:
    reports = check_percolating(ctx.percolating(), ctx.probes())
    got = {r.axiom: r.verdict for r in reports}
    expected = a.get("expect", {k: HOLDS for k in got})
    witness = next((describe_witness(ctx, r.witness) for r in reports if r.verdict == COUNTEREXAMPLE), None)
    return got == expected, expected, got, witness, []


def _op_verdier_probe(ctx: Context, a: dict) -> Outcome:
    suites = verdier_probe(ctx.percolating(), ctx.probes())
    got = {s.name: s.passed for s in suites}
    expected = a.get("expect", {s.name: True for s in suites})
    return got == expected, expected, got, None, []


def _op_check_c2op(ctx: Context, a: dict) -> Outcome:
    rep = check_c2op(ctx.percolating(), ctx.probes())
    return rep.passed == a.get("expect", True), a.get("expect", True), rep.passed, None, []


def _op_hull_conflation(ctx: Context, a: dict) -> Outcome:
    f, g = ctx.morphism(a["inflation"]), ctx.morphism(a["deflation"])
    c = ctx.spec.conflations
    x, y, z = hull_embed(c, f.src), hull_embed(c, f.dst), hull_embed(c, g.dst)
    if g.src != f.dst:
        got = False
    else:
        maps = (ChainMap(x.complex, y.complex, {0: f}), ChainMap(y.complex, z.complex, {0: g}))
        got = hull_conflation_check(c, x, y, z, maps, ctx.probes())
    got = "Inconclusive" if got is None else got
    return got == a["expect"], a["expect"], got, None, []


def _op_wic(ctx: Context, a: dict) -> Outcome:
    gens = [ctx.rep(n) for n in a.get("generators", ctx.spec.extra.get("generators", []))]
    tower = wic_build(gens, int(a.get("max_level", 8)), seed=ctx.seed)
    levels = [sorted(ctx.spec.name_of(o.realize()[0]) or str(o.realize()[0].dims) for o in lvl.new_objects)
              for lvl in tower]
    got = {"levels": levels, "stable_level": tower.stable_level}
    expected = {"levels": [sorted(lv) for lv in a["expect_levels"]], "stable_level": a.get("stable_level")}
    return got == expected, expected, got, None, []


OPS: dict[str, Callable[[Context, dict], Outcome]] = {
    "check_axiom": _op_check_axiom,
    "is_conflation": _op_is_conflation,
    "is_deflation": _op_is_deflation,
    "is_inflation": _op_is_inflation,
    "projectives": _op_projectives,
    "dhom_table": _op_dhom_table,
    "qhom_table": _op_qhom_table,
    "ext_dim": _op_ext_dim,
    "check_percolating": _op_check_percolating,
    "verdier_probe": _op_verdier_probe,
    "check_c2op": _op_check_c2op,
    "hull_conflation": _op_hull_conflation,
    "wic": _op_wic,
}


def load_scenario(path: str | Path) -> tuple[dict, Context]:
    resolved = resolve_path(path, subdir="scenarios")
    data = read_json(resolved)
    if not isinstance(data, dict) or "name" not in data:
        raise SpecError(f"{resolved}: a scenario needs a 'name'")
    base = resolved.parent
    spec = load_category_spec(data.get("category", "a3.json"), base)
    if "conflations" in data:
        spec = with_conflations(spec, parse_conflations(spec.morphisms, data["conflations"]))
    if "percolating" in data:
        spec.percolating = parse_percolating(spec.conflations, spec.reps, data["percolating"])
    for k, a in enumerate(data.get("assertions", [])):
        if a.get("op") not in OPS:
            raise SpecError(f"{resolved}: assertion {k} has unknown op {a.get('op')!r}")
    ctx = Context(spec, int(data.get("seed", 0)), data.get("probe_budget"), base)
    return data, ctx


def run_scenario(path: str | Path, seed: int | None = None, probe_budget: int | None = None) -> Report:
    data, ctx = load_scenario(path)
    if seed is not None:
        ctx.seed = seed
    if probe_budget is not None:
        ctx.budget = probe_budget
    report = Report(data["name"], ctx.seed, ctx.probes().describe())
    for k, a in enumerate(data.get("assertions", [])):
        start = time.perf_counter()
        ok, expected, observed, witness, tables = OPS[a["op"]](ctx, a)
        report.timings[f"{k}:{a['op']}"] = time.perf_counter() - start
        report.results.append(AssertionResult(k, a["op"], bool(ok), expected, observed, a.get("tag"),
                                              a.get("anchor"), bool(a.get("hard", True)), witness))
        report.tables.extend(tables)
    return report


# -- emitters ------------------------------------------------------------------------

def _label(r: AssertionResult) -> str:
    if r.expected is None and not r.hard:
        return "INFO"
    return "PASS" if r.passed else ("FAIL" if r.hard else "WARN")


def _report_text(r: Report, include_timings: bool) -> str:
    out = io.StringIO()
    out.write(f"scenario: {r.scenario}\nseed: {r.seed}\nprobes: {r.probe_budget}\n")
    for res in r.results:
        if _label(res) == "INFO":
            out.write(f"[INFO] #{res.index} {res.op}: {_fmt(res.observed)}\n")
        else:
            out.write(f"[{_label(res)}] #{res.index} {res.op}: expected {_fmt(res.expected)}, "
                      f"observed {_fmt(res.observed)}\n")
        if res.tag:
            out.write(f"    tag: {res.tag}" + (f" ({res.anchor})" if res.anchor else "") + "\n")
        if res.witness:
            out.write(f"    witness: {json.dumps(res.witness, sort_keys=True)}\n")
    for t in r.tables:
        out.write(f"table {t.name}: {len(t.rows)} rows\n")
    if include_timings:
        for key, value in r.timings.items():
            out.write(f"time {key}: {value:.3f}s\n")
    checks = [res for res in r.results if _label(res) != "INFO"]
    if checks or not r.results:
        passed = sum(res.passed for res in checks)
        out.write(f"result: {'PASS' if r.passed else 'FAIL'} ({passed}/{len(checks)})\n")
    return out.getvalue()


def _fmt(value) -> str:
    return json.dumps(value, sort_keys=True) if not isinstance(value, str) else value


def _report_json(r: Report, include_timings: bool) -> str:
    doc = {
        "scenario": r.scenario,
        "seed": r.seed,
        "probe_budget": r.probe_budget,
        "passed": r.passed,
        "assertions": [
            {"index": x.index, "op": x.op, "passed": x.passed, "hard": x.hard, "expected": x.expected,
             "observed": x.observed, "tag": x.tag, "anchor": x.anchor, "witness": x.witness}
            for x in r.results
        ],
        "tables": {t.name: {"header": list(t.header), "rows": [list(row) for row in t.rows]} for t in r.tables},
    }
    if include_timings:
        doc["timings"] = r.timings
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _report_tsv(r: Report, include_timings: bool) -> str:
    return "".join(f"# {t.name}\n{table_to_tsv(t)}" for t in r.tables)


def emit_report(r: Report, fmt: str = "text", include_timings: bool = False) -> bytes:
    emitters = {"text": _report_text, "json": _report_json, "tsv": _report_tsv}
    if fmt not in emitters:
        raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")
    return emitters[fmt](r, include_timings).encode()
