"""Batch command line.

Exit codes: 0 ok, 1 unsatisfied / not entailed / postulate failure,
2 parse error, 3 semantic error, 4 guard violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import algebra as alg_mod
from .algebra import Scale, format_degree
from .argumentation import fixpoints, to_interpretation, to_temporal_interpretation, trajectory
from .entailment import PrefEnum, SearchSpace, entails, klm_suite
from .errors import GuardError, ParseError, SemanticError
from .files import (
    dump_interpretation,
    dump_preferential,
    load_interpretation,
    load_timeline,
    parse_kb,
)
from .formulas import print_graded
from .parser import parse_formula, parse_graded
from .preferences import PrefMode
from .temporal import TemporalEvaluator, check_coherence_at, static_interpretation
from .weighted import check_weighted_satisfaction, derive_preferences

SEMANTICS_NOTE = "gradual semantics: clamped weighted sum rounded to C_n (one admissible choice)"


class _Out:
    """Collects text lines and a JSON document; prints one of them at the end."""

    def __init__(self, as_json: bool):
        self.as_json = as_json
        self.lines: list[str] = []
        self.doc: dict = {}

    def line(self, text: str = ""):
        self.lines.append(text)

    def flush(self):
        if self.as_json:
            print(json.dumps(self.doc, indent=2, sort_keys=True))
        else:
            for text in self.lines:
                print(text)


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc


def _load_model(path: str, kb_path=None, scale=None):
    I = load_interpretation(_read(path))
    if scale is not None:
        members = Scale(scale)
        for (t, w, p), d in sorted(I.valuation.items()):
            if d not in members:
                raise SemanticError(f"v({t}, {w}, {p}) = {format_degree(d)} is not in C_{scale}")
    kb = parse_kb(_read(kb_path)) if kb_path else None
    if kb is not None and I.pref_mode is PrefMode.WEIGHTED:
        I = I.with_conditionals(kb.weighted)
    return I, kb


def cmd_eval(args, out: _Out) -> int:
    I, _ = _load_model(args.model, args.kb, args.scale)
    f = parse_formula(args.formula)
    world = args.world or I.worlds[0]
    if args.world is None and len(I.worlds) > 1:
        raise SemanticError("the model has several worlds; pass --world")
    d = TemporalEvaluator(I, args.alg).value(f, args.time, world)
    out.line(format_degree(d))
    out.doc = {"formula": str(f), "world": world, "time": args.time, "degree": format_degree(d)}
    return 0


def cmd_check(args, out: _Out) -> int:
    I, kb = _load_model(args.model, args.kb, args.scale)
    ev = TemporalEvaluator(I, args.alg)
    report = check_weighted_satisfaction(I, kb, args.alg, ev)
    results = []
    for alpha, ok in report.strict_results:
        out.line(f"{'SAT' if ok else 'UNSAT'} {print_graded(alpha)}")
        results.append({"formula": print_graded(alpha), "sat": ok, "kind": "strict"})
    for key in kb.distinguished:
        bad = [m for m in report.mismatches if m.key == key]
        out.line(f'{"UNSAT" if bad else "SAT"} weighted "{key}"')
        for m in bad:
            out.line(m.line())
        results.append(
            {
                "key": key,
                "sat": not bad,
                "kind": "weighted",
                "mismatches": [{"time": m.time, "pair": list(m.pair), "kind": m.kind} for m in bad],
            }
        )
    ok = all(r["sat"] for r in results)
    out.doc = {"results": results, "sat": ok}
    return 0 if ok else 1


def cmd_coherence(args, out: _Out) -> int:
    I, _ = _load_model(args.model, args.kb, args.scale)
    subjects = [parse_formula(k) for k in args.key] if args.key else None
    times = [args.time] if args.time is not None else range(I.positions)
    ev = TemporalEvaluator(I, args.alg)
    doc = []
    for t in times:
        rep = check_coherence_at(I, t, subjects, args.alg, ev)
        for text in rep.lines():
            out.line(text if text.startswith(" ") else f"t={t} {text}")
        doc += [
            {
                "time": t,
                "key": e.key,
                "classification": e.classification(),
                "modular": e.modular,
                "faithfulness_violations": [list(p) for p in e.faithfulness_violations],
                "coherence_violations": [list(p) for p in e.coherence_violations],
            }
            for e in rep.entries
        ]
    out.doc = {"entries": doc}
    return 0


def cmd_prefs(args, out: _Out) -> int:
    I, kb = _load_model(args.model, args.kb, args.scale)
    derived = derive_preferences(I, kb, args.alg)
    if args.install:
        prefs = dict(I.prefs)
        prefs.update(derived)
        text = dump_interpretation(I.with_prefs(prefs))
        out.lines += text.splitlines()
    else:
        from .files import _pairs_text

        for (t, key), rel in sorted(derived.items()):
            out.line(f'pref t={t} "{key}" : {_pairs_text(rel, I.worlds)}')
    out.doc = {
        "prefs": [{"time": t, "key": k, "pairs": sorted(map(list, rel))} for (t, k), rel in sorted(derived.items())]
    }
    return 0


def _space(args, props=None) -> SearchSpace:
    return SearchSpace(
        num_worlds=args.worlds,
        scale=Scale(args.scale),
        props=props,
        prefix=args.prefix,
        loop=args.loop,
        pref_enum=PrefEnum(args.prefs),
        algebra=args.alg,
        max_models=args.max_models,
    )


def cmd_entail(args, out: _Out) -> int:
    kb = parse_kb(_read(args.kb)) if args.kb else None
    if kb is not None and kb.weighted:
        raise SemanticError("entailment is defined for strict temporal graded formulas; remove weighted(...) lines")
    query = parse_graded(args.query)
    verdict = entails(kb.strict if kb else (), query, _space(args))
    out.line(verdict.headline())
    out.doc = {
        "entailed": verdict.entailed,
        "space": verdict.space.describe(),
        "models_checked": verdict.models_checked,
    }
    if not verdict.entailed:
        text = dump_interpretation(verdict.countermodel)
        out.lines += text.splitlines()
        out.doc["countermodel"] = text
        return 1
    return 0


def cmd_klm(args, out: _Out) -> int:
    props = [p.strip() for p in args.props.split(",") if p.strip()]
    pool = [parse_formula(t) for t in args.pool.split(";")] if args.pool else None
    report = klm_suite(_space(args, props), pool)
    out.lines += report.lines()
    out.doc = {
        "space": report.space.describe(),
        "postulates": {
            name: {
                "passed": r.passed,
                "instances": r.instances,
                "checks": r.checks,
                "premises_held": r.premises_held,
                "counterexamples": len(r.counterexamples),
                "skipped": r.skipped,
            }
            for name, r in report.results.items()
        },
    }
    return 0 if report.passed else 1


def _timeline(args):
    timeline = load_timeline(_read(args.graph))
    return timeline, Scale(args.scale)


def cmd_arg_run(args, out: _Out) -> int:
    timeline, scale = _timeline(args)
    if not timeline.seeds:
        raise SemanticError("the graph file has no seed lines")
    out.line(f"# {SEMANTICS_NOTE}")
    doc = []
    for i, seed in enumerate(timeline.seeds, 1):
        tr = trajectory(timeline, seed, scale, args.max_steps)
        out.line(f"SEED s{i} prefix={tr.prefix} loop={tr.loop}")
        states = []
        for t, sigma in enumerate(tr.states):
            vals = " ".join(f"{a}={format_degree(sigma[a])}" for a in timeline.arguments)
            out.line(f"  t={t} {vals}")
            states.append({a: format_degree(sigma[a]) for a in timeline.arguments})
        doc.append({"seed": f"s{i}", "prefix": tr.prefix, "loop": tr.loop, "states": states})
    if args.emit_model:
        out.lines += dump_interpretation(to_temporal_interpretation(timeline, scale, args.max_steps)).splitlines()
    out.doc = {"semantics": SEMANTICS_NOTE, "trajectories": doc}
    return 0


def cmd_arg_fixpoints(args, out: _Out) -> int:
    timeline, scale = _timeline(args)
    G = timeline.graph_at(args.step)
    found = fixpoints(G, scale)
    out.line(f"# {SEMANTICS_NOTE}")
    for sigma in found:
        out.line("FIXPOINT " + " ".join(f"{a}={format_degree(sigma[a])}" for a in G.arguments))
    if args.emit_model and found:
        out.lines += dump_preferential(to_interpretation(found)).splitlines()
    out.doc = {
        "semantics": SEMANTICS_NOTE,
        "fixpoints": [{a: format_degree(s[a]) for a in G.arguments} for s in found],
    }
    return 0


def cmd_arg_check(args, out: _Out) -> int:
    timeline, scale = _timeline(args)
    alpha = parse_graded(args.formula)
    if args.fixpoints:
        found = fixpoints(timeline.graph_at(args.step), scale)
        if not found:
            raise SemanticError("the graph has no fixed-point labellings")
        I = static_interpretation(to_interpretation(found))
    else:
        if not timeline.seeds:
            raise SemanticError("the graph file has no seed lines")
        I = to_temporal_interpretation(timeline, scale, args.max_steps)
    ok = TemporalEvaluator(I, args.alg).sat(alpha, 0)
    out.line(f"# {SEMANTICS_NOTE}")
    out.line(f"{'SAT' if ok else 'UNSAT'} {print_graded(alpha)}")
    out.doc = {"semantics": SEMANTICS_NOTE, "formula": print_graded(alpha), "sat": ok}
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--algebra", default="goedel", choices=sorted(alg_mod.ALGEBRAS))
    common.add_argument("--json", action="store_true", help="emit a JSON document instead of text")

    parser = argparse.ArgumentParser(prog="typtemporal", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="degree of a formula at a world and time")
    p.add_argument("model")
    p.add_argument("formula")
    p.add_argument("--world")
    p.add_argument("--time", type=int, default=0)
    p.add_argument("--kb", help="weighted conditionals for a weighted-mode model")
    p.add_argument("--scale", type=int, help="require every model degree to lie in C_N")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("check", parents=[common], help="check a model against a knowledge base")
    p.add_argument("model")
    p.add_argument("kb")
    p.add_argument("--scale", type=int, help="require every model degree to lie in C_N")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("coherence", parents=[common], help="classify preference relations")
    p.add_argument("model")
    p.add_argument("--time", type=int)
    p.add_argument("--key", action="append", help="formula whose relation to classify (repeatable)")
    p.add_argument("--kb")
    p.add_argument("--scale", type=int, help="require every model degree to lie in C_N")
    p.set_defaults(func=cmd_coherence)

    p = sub.add_parser("prefs", parents=[common], help="derive preferences from weighted conditionals")
    p.add_argument("model")
    p.add_argument("kb")
    p.add_argument("--install", action="store_true", help="print the whole model with derived relations")
    p.add_argument("--scale", type=int, help="require every model degree to lie in C_N")
    p.set_defaults(func=cmd_prefs)

    space = argparse.ArgumentParser(add_help=False)
    space.add_argument("--worlds", type=int, default=2)
    space.add_argument("--scale", type=int, default=2)
    space.add_argument("--prefix", type=int, default=0)
    space.add_argument("--loop", type=int, default=1)
    space.add_argument("--prefs", choices=[e.value for e in PrefEnum], default="coherent")
    space.add_argument("--max-models", type=int, default=500_000)

    p = sub.add_parser("entail", parents=[common, space], help="entailment within a finite search space")
    p.add_argument("kb", nargs="?")
    p.add_argument("query")
    p.set_defaults(func=cmd_entail)

    p = sub.add_parser("klm", parents=[common, space], help="check the KLM postulates over a search space")
    p.add_argument("--props", default="a,b")
    p.add_argument("--pool", help="';'-separated formulas instantiating A, B, C")
    p.set_defaults(func=cmd_klm)

    arg = argparse.ArgumentParser(add_help=False)
    arg.add_argument("graph")
    arg.add_argument("--scale", type=int, default=2)
    arg.add_argument("--max-steps", type=int, default=10_000)

    p = sub.add_parser("arg-run", parents=[common, arg], help="iterate the gradual semantics from each seed")
    p.add_argument("--emit-model", action="store_true")
    p.set_defaults(func=cmd_arg_run)

    p = sub.add_parser("arg-fixpoints", parents=[common, arg], help="enumerate fixed-point labellings")
    p.add_argument("--step", type=int, default=0, help="timeline step whose graph is scanned")
    p.add_argument("--emit-model", action="store_true")
    p.set_defaults(func=cmd_arg_fixpoints)

    p = sub.add_parser("arg-check", parents=[common, arg], help="check a graded formula on a graph")
    p.add_argument("formula")
    p.add_argument("--fixpoints", action="store_true", help="use the fixed-point interpretation")
    p.add_argument("--step", type=int, default=0)
    p.set_defaults(func=cmd_arg_check)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    args.alg = alg_mod.get_algebra(args.algebra)
    out = _Out(args.json)
    try:
        code = args.func(args, out)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except SemanticError as exc:
        print(f"semantic error: {exc}", file=sys.stderr)
        return 3
    except GuardError as exc:
        card = getattr(exc, "cardinality", None)
        extra = f" (cardinality {card})" if card is not None else ""
        print(f"guard violation: {exc}{extra}", file=sys.stderr)
        return 4
    out.flush()
    return code


def main_entry():
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
