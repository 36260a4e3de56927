"""Line-oriented text formats for knowledge bases, interpretations and graphs.

Knowledge base::

    # comment
    strict: G((T(professor) -> (teaches U retired)) >= 0.7)
    weighted(student): has_Classes : +50

Interpretation (``lasso`` omitted means a single state, prefix 0 and loop 1)::

    worlds w1 w2
    lasso prefix=1 loop=2
    prefmode explicit
    val t=0 w=w1 a=1/2 b=1
    pref t=0 "a" : w1 < w2
    pref t=1 "a" : none

Argumentation graph or timeline::

    arg a base=1
    edge a b weight=-1
    seed a=1 b=0
    @t=3
    arg a base=1/2
    ...
"""

from __future__ import annotations

import re
import shlex
from typing import Iterable

from .algebra import format_degree, parse_degree, parse_rational
from .argumentation import ArgGraph, GraphTimeline
from .core import PreferentialInterpretation
from .errors import ParseError
from .formulas import WeightedConditional, formula_key, print_graded
from .parser import parse_formula, parse_graded
from .preferences import PrefMode
from .temporal import TemporalInterpretation
from .weighted import WeightedKB

_PREF_RE = re.compile(r'^pref(?:\s+t=(\d+))?\s+"([^"]*)"\s*:\s*(.*)$')
_PAIR_RE = re.compile(r"^\s*([A-Za-z0-9_]+)\s*<\s*([A-Za-z0-9_]+)\s*$")


def _lines(text: str) -> Iterable[tuple[int, str]]:
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _err(lineno: int, message: str) -> ParseError:
    return ParseError(f"line {lineno}: {message}")


def _reraise(lineno, exc):
    """Re-raise with the line number, keeping the ParseError subclass."""
    cls = type(exc) if isinstance(exc, ParseError) else ParseError
    cause = exc if isinstance(exc, BaseException) else None
    raise cls(f"line {lineno}: {exc}") from cause


# -------------------------------------------------------------- knowledge bases


def parse_kb(text: str) -> WeightedKB:
    strict, weighted = [], []
    for lineno, line in _lines(text):
        try:
            if line.startswith("strict:"):
                strict.append(parse_graded(line[len("strict:"):]))
            elif line.startswith("weighted("):
                weighted.append(_parse_weighted(line, lineno))
            else:
                raise _err(lineno, "expected 'strict:' or 'weighted(...)'")
        except ParseError as exc:
            if str(exc).startswith(f"line {lineno}:"):
                raise
            _reraise(lineno, exc)
    return WeightedKB(tuple(strict), tuple(weighted))


def _parse_weighted(line: str, lineno: int) -> WeightedConditional:
    depth = 0
    for i in range(len("weighted"), len(line)):
        if line[i] == "(":
            depth += 1
        elif line[i] == ")":
            depth -= 1
            if depth == 0:
                break
    else:
        raise _err(lineno, "unbalanced parentheses in weighted(...)")
    subject = parse_formula(line[len("weighted(") : i])
    rest = line[i + 1 :].strip()
    if not rest.startswith(":"):
        raise _err(lineno, "expected ':' after weighted(...)")
    body, sep, weight = rest[1:].rpartition(":")
    if not sep:
        raise _err(lineno, "expected '<formula> : <weight>'")
    return WeightedConditional(subject, parse_formula(body), parse_rational(weight))


def dump_kb(kb: WeightedKB) -> str:
    lines = [f"strict: {print_graded(a)}" for a in kb.strict]
    for c in kb.weighted:
        w = c.weight
        sign = "+" if w >= 0 else ""
        lines.append(f"weighted({c.subject}): {c.consequent} : {sign}{w}")
    return "\n".join(lines) + "\n"


# -------------------------------------------------------------- interpretations


def load_interpretation(text: str) -> TemporalInterpretation:
    worlds = None
    prefix, loop = 0, 1
    mode = PrefMode.EXPLICIT
    valuation = {}
    prefs: dict[tuple[int, str], set] = {}
    for lineno, line in _lines(text):
        head = line.split(None, 1)[0]
        try:
            if head == "worlds":
                worlds = tuple(line.split()[1:])
            elif head == "lasso":
                fields = dict(tok.split("=", 1) for tok in line.split()[1:])
                prefix, loop = int(fields["prefix"]), int(fields["loop"])
            elif head == "prefmode":
                mode = PrefMode(line.split()[1].lower())
            elif head == "val":
                toks = line.split()[1:]
                t = 0
                if toks and toks[0].startswith("t="):
                    t = int(toks.pop(0)[2:])
                if not toks or not toks[0].startswith("w="):
                    raise _err(lineno, "expected w=<world>")
                w = toks.pop(0)[2:]
                for tok in toks:
                    prop, _, value = tok.partition("=")
                    valuation[(t, w, prop)] = parse_degree(value)
            elif head == "pref":
                m = _PREF_RE.match(line)
                if not m:
                    raise _err(lineno, 'expected pref [t=<n>] "<formula>" : <w> < <w\'>')
                t = int(m.group(1) or 0)
                key = formula_key(parse_formula(m.group(2)))
                rel = prefs.setdefault((t, key), set())
                body = m.group(3).strip()
                if body != "none":
                    for part in body.split(","):
                        pm = _PAIR_RE.match(part)
                        if not pm:
                            raise _err(lineno, f"malformed pair {part.strip()!r}")
                        rel.add((pm.group(1), pm.group(2)))
            else:
                raise _err(lineno, f"unknown directive {head!r}")
        except ParseError as exc:
            if str(exc).startswith(f"line {lineno}:"):
                raise
            _reraise(lineno, exc)
        except (ValueError, KeyError) as exc:
            _reraise(lineno, exc)
    if worlds is None:
        raise ParseError("missing 'worlds' line")
    try:
        return TemporalInterpretation(
            worlds, prefix, loop, valuation, {k: frozenset(v) for k, v in prefs.items()}, mode
        )
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def load_preferential(text: str) -> PreferentialInterpretation:
    I = load_interpretation(text)
    if I.positions != 1:
        raise ParseError("expected a non-temporal interpretation (no lasso beyond one position)")
    return PreferentialInterpretation(
        I.worlds,
        {(w, p): d for (_, w, p), d in I.valuation.items()},
        {k: rel for (_, k), rel in I.prefs.items()},
        I.pref_mode,
    )


def _pairs_text(rel: frozenset, worlds) -> str:
    order = {w: i for i, w in enumerate(worlds)}
    pairs = sorted(rel, key=lambda p: (order[p[0]], order[p[1]]))
    return ", ".join(f"{a} < {b}" for a, b in pairs) if pairs else "none"


def dump_interpretation(I: TemporalInterpretation) -> str:
    out = ["worlds " + " ".join(I.worlds), f"lasso prefix={I.prefix} loop={I.loop}", f"prefmode {I.pref_mode.value}"]
    props = sorted(I.props())
    for t in range(I.positions):
        for w in I.worlds:
            vals = [f"{p}={format_degree(I.valuation[(t, w, p)])}" for p in props if (t, w, p) in I.valuation]
            out.append(f"val t={t} w={w} " + " ".join(vals))
    for (t, key), rel in sorted(I.prefs.items()):
        out.append(f'pref t={t} "{key}" : {_pairs_text(rel, I.worlds)}')
    return "\n".join(out) + "\n"


def dump_preferential(M: PreferentialInterpretation) -> str:
    out = ["worlds " + " ".join(M.worlds), f"prefmode {M.pref_mode.value}"]
    props = sorted(M.props())
    for w in M.worlds:
        vals = [f"{p}={format_degree(M.valuation[(w, p)])}" for p in props if (w, p) in M.valuation]
        out.append(f"val w={w} " + " ".join(vals))
    for key, rel in sorted(M.prefs.items()):
        out.append(f'pref "{key}" : {_pairs_text(rel, M.worlds)}')
    return "\n".join(out) + "\n"


# ------------------------------------------------------------- argumentation


def load_timeline(text: str) -> GraphTimeline:
    """Read a graph file; ``@t=<step>`` headers start a new graph from that step on."""
    blocks: list[tuple[int, list]] = []
    seeds = []
    for lineno, line in _lines(text):
        try:
            if line.startswith("@"):
                m = re.match(r"^@t=(\d+)$", line)
                if not m:
                    raise _err(lineno, "expected @t=<step>")
                step = int(m.group(1))
                if blocks and step <= blocks[-1][0]:
                    raise _err(lineno, "timeline steps must increase")
                blocks.append((step, []))
                continue
            toks = shlex.split(line)
            if toks[0] == "seed":
                seeds.append({a: parse_degree(v) for a, v in (tok.split("=", 1) for tok in toks[1:])})
            elif toks[0] in ("arg", "edge"):
                if not blocks:
                    blocks.append((0, []))
                blocks[-1][1].append((lineno, toks))
            else:
                raise _err(lineno, f"unknown directive {toks[0]!r}")
        except ParseError as exc:
            if str(exc).startswith(f"line {lineno}:"):
                raise
            _reraise(lineno, exc)
        except ValueError as exc:
            _reraise(lineno, exc)
    if not blocks:
        raise ParseError("no arguments declared")
    if blocks[0][0] != 0:
        raise ParseError("the first graph block must start at step 0")
    graphs = []
    for i, (start, entries) in enumerate(blocks):
        g = _build_graph(entries)
        end = blocks[i + 1][0] if i + 1 < len(blocks) else start + 1
        graphs.extend([g] * (end - start))
    try:
        return GraphTimeline(tuple(graphs), tuple(seeds))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def _build_graph(entries) -> ArgGraph:
    args, base, weights = [], {}, {}
    for lineno, toks in entries:
        try:
            if toks[0] == "arg":
                name = toks[1]
                fields = dict(t.split("=", 1) for t in toks[2:])
                args.append(name)
                base[name] = parse_degree(fields.get("base", "1"))
            else:
                src, dst = toks[1], toks[2]
                fields = dict(t.split("=", 1) for t in toks[3:])
                weights[(src, dst)] = parse_rational(fields["weight"])
        except (IndexError, KeyError, ValueError) as exc:
            _reraise(lineno, f"malformed {toks[0]} line ({exc})")
    try:
        return ArgGraph(tuple(args), base, weights)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def load_graph(text: str) -> ArgGraph:
    timeline = load_timeline(text)
    if len(timeline.graphs) != 1:
        raise ParseError("expected a single graph, found a timeline")
    return timeline.graphs[0]


def dump_graph(G: ArgGraph, seeds=()) -> str:
    out = [f"arg {a} base={format_degree(G.base[a])}" for a in G.arguments]
    out += [f"edge {s} {d} weight={G.weights[(s, d)]}" for s, d in G.edges]
    for seed in seeds:
        out.append("seed " + " ".join(f"{a}={format_degree(seed[a])}" for a in G.arguments))
    return "\n".join(out) + "\n"
