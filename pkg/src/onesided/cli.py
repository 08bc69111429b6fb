"""Command line entry point: ``python -m onesided <verb> ...``."""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .complexes import ChainMap, stalk
from .conflations import AXIOMS, check_axiom
from .derived import derived_hom
from .completions import wic_build
from .harness import AssertionResult, Context, Report, describe_witness, emit_report, hom_table, run_scenario
from .hull import hull_conflation_check, hull_embed
from .percolation import (
    a_reject,
    a_trace,
    check_c2op,
    check_percolating,
    quotient_hom_dim,
    verdier_probe,
)
from .specs import CategorySpec, SpecError, load_category_spec, read_json, resolve_path

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _info(report: Report, op: str, observed, witness=None) -> None:
    report.results.append(AssertionResult(len(report.results), op, True, None, observed, hard=False,
                                          witness=witness))


def _load(args) -> CategorySpec:
    return load_category_spec(args.category)


def _new_report(name: str, spec: CategorySpec, args) -> Report:
    return Report(name, args.seed, spec.probes(args.probe_budget, args.seed).describe())


def cmd_check_axioms(args) -> Report:
    spec = _load(args)
    report = _new_report("check-axioms", spec, args)
    probes = spec.probes(args.probe_budget, args.seed)
    ctx = Context(spec, args.seed, args.probe_budget, None)
    for axiom in args.axiom or AXIOMS:
        r = check_axiom(spec.conflations, axiom, probes)
        _info(report, f"check_axiom {axiom}", r.verdict, describe_witness(ctx, r.witness))
    return report


def _require_percolating(spec: CategorySpec):
    if spec.percolating is None:
        raise SpecError("the category spec has no 'percolating' entry")
    return spec.percolating


def cmd_percolate(args) -> Report:
    spec = _load(args)
    perc = _require_percolating(spec)
    report = _new_report("percolate", spec, args)
    for r in check_percolating(perc, spec.probes(args.probe_budget, args.seed)):
        _info(report, f"check_percolating {r.axiom}", r.verdict)
    return report


def cmd_localize(args) -> Report:
    spec = _load(args)
    perc = _require_percolating(spec)
    report = _new_report("localize", spec, args)
    for name in spec.indecomposables:
        x = spec.reps[name]
        reject, _ = a_reject(perc, x)
        trace, _ = a_trace(perc, x)
        _info(report, f"localize {name}", {"in_subcategory": perc.contains(x), "reject": list(reject.dims),
                                           "trace": list(trace.dims)})
    return report


def cmd_qhom(args) -> Report:
    spec = _load(args)
    perc = _require_percolating(spec)
    report = _new_report("qhom", spec, args)
    names = args.objects or [n for n in spec.indecomposables if not perc.contains(spec.reps[n])]
    entries = {(s, t, 0): quotient_hom_dim(perc, spec.reps[s], spec.reps[t]) for s in names for t in names}
    report.tables.append(hom_table("qhom", entries))
    return report


def cmd_dhom(args) -> Report:
    spec = _load(args)
    report = _new_report("dhom", spec, args)
    names = args.objects or list(spec.indecomposables)
    lo, hi = args.shifts
    entries = {}
    for s in names:
        for t in names:
            for k in range(lo, hi + 1):
                entries[(s, t, k)] = derived_hom(spec.conflations, stalk(spec.reps[s]), stalk(spec.reps[t]),
                                                 k).dimension
    report.tables.append(hom_table("dhom", entries))
    return report


def cmd_verdier_probe(args) -> Report:
    spec = _load(args)
    perc = _require_percolating(spec)
    report = _new_report("verdier-probe", spec, args)
    probes = spec.probes(args.probe_budget, args.seed)
    for suite in verdier_probe(perc, probes):
        _info(report, f"suite {suite.name}", {"passed": suite.passed, "checked": suite.checked})
    c2 = check_c2op(perc, probes)
    _info(report, "C2op", {"passed": c2.passed, "checked": c2.checked})
    return report


def cmd_wic(args) -> Report:
    spec = load_category_spec(args.generators)
    report = _new_report("wic", spec, args)
    names = spec.extra.get("generators", list(spec.reps))
    tower = wic_build([spec.reps[n] for n in names], args.max_level, seed=args.seed)
    for lvl in tower:
        objs = sorted(spec.name_of(o.realize()[0]) or str(list(o.realize()[0].dims)) for o in lvl.new_objects)
        _info(report, f"level {lvl.level}", objs)
    _info(report, "stable_level", tower.stable_level)
    return report


def cmd_hull_check(args) -> Report:
    spec = load_category_spec(args.klass)
    report = _new_report("hull-check", spec, args)
    if args.seq:
        seq = read_json(resolve_path(args.seq))
        infl, defl = seq["inflation"], seq["deflation"]
    else:
        infl, defl = args.inflation, args.deflation
    try:
        f, g = spec.morphisms[infl], spec.morphisms[defl]
    except KeyError as err:
        raise SpecError(f"unknown morphism {err}") from None
    c = spec.conflations
    if f.dst != g.src:
        verdict = False
    else:
        x, y, z = hull_embed(c, f.src), hull_embed(c, f.dst), hull_embed(c, g.dst)
        maps = (ChainMap(x.complex, y.complex, {0: f}), ChainMap(y.complex, z.complex, {0: g}))
        verdict = hull_conflation_check(c, x, y, z, maps, spec.probes(args.probe_budget, args.seed))
    _info(report, f"hull_conflation {infl} {defl}", "Inconclusive" if verdict is None else verdict)
    return report


def build_parser() -> argparse.ArgumentParser:
    def flags(suppress: bool) -> argparse.ArgumentParser:
        # Subcommand copies must not overwrite values given before the verb.
        default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
        p = argparse.ArgumentParser(add_help=False)
        p.add_argument("--seed", type=int, default=default(None), help="seed for probe morphisms and sampling")
        p.add_argument("--probe-budget", type=int, default=default(None), metavar="N",
                       help="maximum number of probe objects")
        p.add_argument("--format", choices=("text", "json", "tsv"), default=default("text"))
        p.add_argument("--timings", action="store_true", default=default(False),
                       help="include timings in the report")
        return p

    common = flags(suppress=True)
    parser = argparse.ArgumentParser(prog="onesided", description=__doc__, parents=[flags(suppress=False)])
    sub = parser.add_subparsers(dest="verb", required=True)

    def verb(name, func, help_text, category=True):
        p = sub.add_parser(name, parents=[common], help=help_text)
        if category:
            p.add_argument("--category", required=True, help="category spec (JSON)")
        p.set_defaults(func=func)
        return p

    p = verb("check-axioms", cmd_check_axioms, "check the conflation axioms on probes")
    p.add_argument("--axiom", action="append", choices=AXIOMS)
    verb("percolate", cmd_percolate, "check P1-P4 for the percolating subcategory")
    verb("localize", cmd_localize, "reject and trace of each indecomposable")
    p = verb("qhom", cmd_qhom, "hom table of the quotient category")
    p.add_argument("--objects", nargs="+")
    p = verb("dhom", cmd_dhom, "derived hom table")
    p.add_argument("--objects", nargs="+")
    p.add_argument("--shifts", nargs=2, type=int, default=[-2, 2], metavar=("LO", "HI"))
    verb("verdier-probe", cmd_verdier_probe, "run the localization-sequence probe suites")
    p = verb("wic", cmd_wic, "weak idempotent completion levels", category=False)
    p.add_argument("--generators", required=True, help="category spec whose 'generators' list is used")
    p.add_argument("--max-level", type=int, default=8)
    p = verb("hull-check", cmd_hull_check, "does a sequence become a triangle in the exact hull", category=False)
    p.add_argument("--class", dest="klass", required=True, help="category spec with the conflation class")
    p.add_argument("--seq", help="JSON file {\"inflation\": name, \"deflation\": name}")
    p.add_argument("--inflation")
    p.add_argument("--deflation")
    p = sub.add_parser("run-scenario", parents=[common], help="run a scenario file")
    p.add_argument("path")
    p.set_defaults(func=None)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.verb == "run-scenario":
            report = run_scenario(args.path, seed=args.seed, probe_budget=args.probe_budget)
        else:
            args.seed = args.seed or 0
            if args.verb == "hull-check" and not args.seq and not (args.inflation and args.deflation):
                raise SpecError("hull-check needs --seq or both --inflation and --deflation")
            report = args.func(args)
    except (SpecError, KeyError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(emit_report(report, args.format, args.timings).decode())
    return EXIT_OK if report.passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
