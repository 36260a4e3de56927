"""Strict orders on finite world sets."""

from __future__ import annotations

import enum
import itertools
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .errors import InvalidPreferenceError, UnknownWorldError

Pair = tuple[str, str]
Relation = frozenset  # frozenset[Pair]


class PrefMode(enum.Enum):
    EXPLICIT = "explicit"
    COHERENT = "coherent"
    WEIGHTED = "weighted"


def transitive_closure(pairs: Iterable[Pair]) -> frozenset:
    closure = set(pairs)
    while True:
        new = {(a, d) for (a, b) in closure for (c, d) in closure if b == c}
        if new <= closure:
            return frozenset(closure)
        closure |= new


def validate_strict_order(pairs: Iterable[Pair], worlds: Sequence[str], label: str = "") -> frozenset:
    """Return ``pairs`` as a frozenset after checking it is a strict partial order.

    The relation is not repaired: a missing transitive pair is an error.
    """
    rel = frozenset(pairs)
    known = set(worlds)
    where = f" in preference {label}" if label else ""
    for a, b in rel:
        if a not in known or b not in known:
            raise UnknownWorldError(f"unknown world in pair ({a}, {b}){where}")
        if a == b:
            raise InvalidPreferenceError(f"reflexive pair ({a}, {a}){where}")
    missing = transitive_closure(rel) - rel
    if missing:
        a, b = sorted(missing)[0]
        raise InvalidPreferenceError(f"not transitive: ({a}, {b}) is implied but absent{where}")
    return rel


def minimal_worlds(rel: Iterable[Pair], worlds: Sequence[str]) -> set[str]:
    dominated = {b for (_, b) in rel}
    return {w for w in worlds if w not in dominated}


def order_by_score(scores: Mapping[str, object]) -> frozenset:
    """``w < w'`` iff ``scores[w] > scores[w']``: the ranked order a score induces."""
    return frozenset((a, b) for a in scores for b in scores if scores[a] > scores[b])


def faithful_lift(base: Iterable[Pair], scores: Mapping[str, object]) -> frozenset:
    """Lexicographic refinement: higher score first, ties broken by ``base``.

    The result is faithful to ``scores`` and agrees with ``base`` inside each
    score class.
    """
    base = frozenset(base)
    higher = order_by_score(scores)
    return higher | frozenset((a, b) for (a, b) in base if scores[a] == scores[b])


def is_modular(rel: frozenset, worlds: Sequence[str]) -> bool:
    """``x < y`` implies ``x < z`` or ``z < y`` for every ``z``."""
    return all((x, z) in rel or (z, y) in rel for (x, y) in rel for z in worlds)


@lru_cache(maxsize=None)
def _strict_orders_on(n: int) -> tuple[frozenset, ...]:
    idx = range(n)
    candidates = [(a, b) for a in idx for b in idx if a != b]
    found = []
    for bits in itertools.product((False, True), repeat=len(candidates)):
        rel = frozenset(p for p, keep in zip(candidates, bits) if keep)
        if any((b, a) in rel for (a, b) in rel):
            continue
        if transitive_closure(rel) == rel:
            found.append(rel)
    return tuple(sorted(found, key=lambda r: (len(r), sorted(r))))


def all_strict_orders(worlds: Sequence[str]) -> list[frozenset]:
    """Every strict partial order on ``worlds`` (19 for three worlds)."""
    ws = list(worlds)
    return [frozenset((ws[a], ws[b]) for (a, b) in rel) for rel in _strict_orders_on(len(ws))]
