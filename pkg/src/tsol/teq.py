"""Tournament equilibrium set: exact recursion and the minimal-dominator heuristic.

The TEQ relation on a carrier X holds b => a exactly when b is in the TEQ
of a's dominator set within X; the TEQ of X is the top cycle of that
relation.  The exact solver memoizes subsets by bit pattern within one
call.  The heuristic explores outward from the alternatives with the
smallest dominator sets and, on every input seen so far, matches the exact
set; equality is checked by sweeps, never assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from tsol import _backend
from tsol.core import Relation, Tournament, set_of, subset_mask


@dataclass(frozen=True)
class TeqStats:
    """calls: solver entries on nonempty sets (cache hits included);
    subsets: sets actually evaluated; iterations: outer loops (heuristic only)."""

    calls: int
    subsets: int
    iterations: int = 0


@dataclass(frozen=True)
class TeqResult:
    teq_set: frozenset[int]
    teq_relation: Relation
    stats: TeqStats


def _relation_from_in_edges(carrier_mask: int, in_edges: list[int]) -> Relation:
    carrier = set_of(carrier_mask)
    pairs = set()
    for a in carrier:
        e = in_edges[a]
        while e:
            b = (e & -e).bit_length() - 1
            e &= e - 1
            pairs.add((b, a))
    return Relation(carrier, frozenset(pairs))


def teq_exact(
    t: Tournament, x: Iterable[int] | None = None, use_cache: bool = True
) -> TeqResult:
    """Exact TEQ of the restriction of ``t`` to ``x``."""
    mask = t.full_mask if x is None else subset_mask(t, x)
    if mask == 0:
        raise ValueError("empty subset")
    kernel = _backend.kernel_for(t.n)
    teq_mask, in_edges, calls, subsets = kernel.teq_exact_masks(t.rows, mask, use_cache)
    return TeqResult(
        teq_set=set_of(teq_mask),
        teq_relation=_relation_from_in_edges(mask, in_edges),
        stats=TeqStats(calls=calls, subsets=subsets),
    )


def teq_member(t: Tournament, x: Iterable[int] | None, a: int) -> bool:
    mask = t.full_mask if x is None else subset_mask(t, x)
    if not mask >> a & 1:
        raise ValueError(f"alternative {a} not in the queried subset")
    kernel = _backend.kernel_for(t.n)
    teq_mask, _, _, _ = kernel.teq_exact_masks(t.rows, mask, True)
    return bool(teq_mask >> a & 1)


def teq_heuristic(
    t: Tournament, x: Iterable[int] | None = None, inner_exact: bool = False
) -> TeqResult:
    """Minimal-dominator-set heuristic for TEQ.

    The returned relation's carrier is the explored base set, which can be
    a proper subset of ``x``; its top cycle is the reported TEQ set.  With
    ``inner_exact`` the nested TEQ evaluations use the exact solver while
    the outer loop stays heuristic.
    """
    mask = t.full_mask if x is None else subset_mask(t, x)
    if mask == 0:
        raise ValueError("empty subset")
    kernel = _backend.kernel_for(t.n)
    teq_mask, base_mask, in_edges, calls, subsets, iterations = (
        kernel.teq_heuristic_masks(t.rows, mask, inner_exact)
    )
    return TeqResult(
        teq_set=set_of(teq_mask),
        teq_relation=_relation_from_in_edges(base_mask, in_edges),
        stats=TeqStats(calls=calls, subsets=subsets, iterations=iterations),
    )


def teq_trace(
    t: Tournament, x: Iterable[int] | None = None, depth_limit: int = 1
) -> str:
    """Deterministic indented trace of the TEQ recursion down to a depth.

    Each line reports one dominator set and its TEQ; sets print as names
    sorted alphabetically.  Dominator-set lines are omitted for
    alternatives nobody dominates.
    """
    if depth_limit < 0:
        raise ValueError("depth limit must be nonnegative")
    mask = t.full_mask if x is None else subset_mask(t, x)
    if mask == 0:
        raise ValueError("empty subset")
    kernel = _backend.kernel_for(t.n)

    cache: dict[int, int] = {}

    def teq_of(m: int) -> int:
        if m not in cache:
            cache[m] = kernel.teq_exact_masks(t.rows, m, True)[0]
        return cache[m]

    def fmt(m: int) -> str:
        return "{" + " ".join(sorted(t.names[i] for i in set_of(m))) + "}"

    lines = [f"TEQ{fmt(mask)} = {fmt(teq_of(mask))}"]

    def descend(m: int, depth: int) -> None:
        if depth > depth_limit:
            return
        for name, a in sorted((t.names[a], a) for a in set_of(m)):
            sub = t.cols[a] & m
            if not sub:
                continue
            indent = "  " * depth
            lines.append(f"{indent}D({name}) = {fmt(sub)}: TEQ = {fmt(teq_of(sub))}")
            descend(sub, depth + 1)

    descend(mask, 1)
    return "\n".join(lines) + "\n"
