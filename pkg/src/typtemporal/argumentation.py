"""Weighted argumentation graphs read as preferential interpretations.

The gradual semantics shipped here is one concrete rule among many: the new
strength of an argument is its base score plus the weighted sum of its
attackers' and supporters' strengths, clamped to [0, 1] and rounded to the
scale.  Any callable with the signature of :func:`step` can be passed as
``rule`` instead.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Optional, Sequence, Union

from .algebra import Scale, degree
from .core import PreferentialInterpretation
from .errors import HorizonExceededError, SpaceTooLargeError
from .preferences import PrefMode
from .temporal import TemporalInterpretation

FIXPOINT_GUARD = 10**6

Labelling = tuple[tuple[str, Fraction], ...]


@dataclass(frozen=True)
class ArgGraph:
    arguments: tuple[str, ...]
    base: Mapping[str, Fraction]
    weights: Mapping[tuple[str, str], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        args = tuple(self.arguments)
        if len(set(args)) != len(args):
            raise ValueError("duplicate argument names")
        object.__setattr__(self, "arguments", args)
        known = set(args)
        if set(self.base) != known:
            raise ValueError("every argument needs exactly one base score")
        object.__setattr__(self, "base", {a: degree(self.base[a]) for a in args})
        weights = {}
        for (src, dst), w in self.weights.items():
            if src not in known or dst not in known:
                raise ValueError(f"edge ({src}, {dst}) has an undeclared endpoint")
            weights[(src, dst)] = Fraction(w)
        object.__setattr__(self, "weights", weights)

    @property
    def edges(self) -> list[tuple[str, str]]:
        return sorted(self.weights)

    def incoming(self, arg: str) -> list[tuple[str, Fraction]]:
        return [(src, w) for (src, dst), w in sorted(self.weights.items()) if dst == arg]


def labelling(values: Mapping[str, object]) -> dict[str, Fraction]:
    return {a: degree(v) for a, v in values.items()}


def step(G: ArgGraph, sigma: Mapping[str, Fraction], scale: Scale) -> dict[str, Fraction]:
    """One synchronous update of every argument's strength."""
    out = {}
    for a in G.arguments:
        total = G.base[a] + sum((w * sigma[src] for src, w in G.incoming(a)), Fraction(0))
        out[a] = scale.round(total)
    return out


Rule = Callable[[ArgGraph, Mapping[str, Fraction], Scale], dict]


@dataclass(frozen=True)
class GraphTimeline:
    """Graphs in force at successive steps; the last one stays in force."""

    graphs: tuple[ArgGraph, ...]
    seeds: tuple[dict, ...] = ()

    def __post_init__(self):
        graphs = tuple(self.graphs)
        if not graphs:
            raise ValueError("a timeline needs at least one graph")
        args = set(graphs[0].arguments)
        for g in graphs[1:]:
            if set(g.arguments) != args:
                raise ValueError("all graphs of a timeline must share the argument set")
        object.__setattr__(self, "graphs", graphs)
        object.__setattr__(self, "seeds", tuple(labelling(s) for s in self.seeds))

    @property
    def arguments(self) -> tuple[str, ...]:
        return self.graphs[0].arguments

    def graph_at(self, t: int) -> ArgGraph:
        return self.graphs[min(t, len(self.graphs) - 1)]


@dataclass(frozen=True)
class Trajectory:
    """Labellings ``states[0..prefix+loop)`` with ``states[t] == states[t+loop]`` for ``t >= prefix``."""

    states: tuple[dict, ...]
    prefix: int
    loop: int

    def at(self, t: int) -> dict:
        if t >= len(self.states):
            t = self.prefix + (t - self.prefix) % self.loop
        return self.states[t]


def _freeze(sigma: Mapping[str, Fraction], args: Sequence[str]) -> tuple:
    return tuple(sigma[a] for a in args)


def trajectory(
    G: Union[ArgGraph, GraphTimeline],
    seed: Mapping[str, object],
    scale: Scale,
    max_steps: int = 10_000,
    rule: Rule = step,
) -> Trajectory:
    """Iterate the update rule from ``seed`` until the state sequence repeats."""
    if max_steps < 1:
        raise ValueError("max_steps must be at least 1")
    timeline = G if isinstance(G, GraphTimeline) else GraphTimeline((G,))
    args = timeline.arguments
    sigma = labelling(seed)
    if set(sigma) != set(args):
        raise ValueError("a seed must label every argument")
    for a, v in sigma.items():
        if v not in scale:
            raise ValueError(f"seed value {v} for {a} is not in C_{scale.n}")
    # once the last graph is in force the dynamics is autonomous
    settle = len(timeline.graphs) - 1
    states = [sigma]
    seen: dict[tuple, int] = {}
    for t in range(max_steps + 1):
        if t >= settle:
            frozen = _freeze(states[t], args)
            if frozen in seen:
                first = seen[frozen]
                loop = t - first
                prefix = first
                while prefix > 0 and _freeze(states[prefix - 1], args) == _freeze(states[prefix - 1 + loop], args):
                    prefix -= 1
                return Trajectory(tuple(states[: prefix + loop]), prefix, loop)
            seen[frozen] = t
        if t == max_steps:
            break
        states.append(rule(timeline.graph_at(t), states[t], scale))
    raise HorizonExceededError(f"no repeated labelling within {max_steps} steps")


def fixpoints(G: ArgGraph, scale: Scale, rule: Rule = step, guard: int = FIXPOINT_GUARD) -> list[dict]:
    """Every labelling over C_n left unchanged by one update, in enumeration order."""
    size = len(scale) ** len(G.arguments)
    if size > guard:
        raise SpaceTooLargeError(f"{size} labellings exceed the guard of {guard}", size)
    found = []
    for values in itertools.product(scale.members(), repeat=len(G.arguments)):
        sigma = dict(zip(G.arguments, values))
        if rule(G, sigma, scale) == sigma:
            found.append(sigma)
    return found


def to_interpretation(labellings: Sequence[Mapping[str, Fraction]], world_prefix: str = "w") -> PreferentialInterpretation:
    """One world per labelling; ``w_s <_A w_s'`` iff ``s(A) > s'(A)`` (coherent mode)."""
    if not labellings:
        raise ValueError("need at least one labelling")
    worlds = tuple(f"{world_prefix}{i + 1}" for i in range(len(labellings)))
    valuation = {(w, a): v for w, sigma in zip(worlds, labellings) for a, v in sigma.items()}
    return PreferentialInterpretation(worlds, valuation, {}, PrefMode.COHERENT)


def to_temporal_interpretation(
    timeline: Union[GraphTimeline, ArgGraph],
    scale: Scale,
    max_steps: int = 10_000,
    seeds: Optional[Sequence[Mapping[str, object]]] = None,
    rule: Rule = step,
) -> TemporalInterpretation:
    """One world per seed, time = update step, joined into a single lasso."""
    if isinstance(timeline, ArgGraph):
        timeline = GraphTimeline((timeline,), tuple(seeds or ()))
    seeds = list(seeds) if seeds is not None else list(timeline.seeds)
    if not seeds:
        raise ValueError("need at least one seed")
    trajs = [trajectory(timeline, s, scale, max_steps, rule) for s in seeds]
    prefix = max(tr.prefix for tr in trajs)
    loop = math.lcm(*(tr.loop for tr in trajs))
    worlds = tuple(f"s{i + 1}" for i in range(len(trajs)))
    valuation = {}
    for w, tr in zip(worlds, trajs):
        for t in range(prefix + loop):
            for a, v in tr.at(t).items():
                valuation[(t, w, a)] = v
    return TemporalInterpretation(worlds, prefix, loop, valuation, {}, PrefMode.COHERENT)
