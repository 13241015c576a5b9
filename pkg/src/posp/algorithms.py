"""Solvers and the enumeration oracle.

Two solvers share the label/frontier model from `core`:

- `bellman_solve` — label-correcting fixed point: every round extends all
  frontiers along all arcs and merges, stopping when nothing changes.
- `mda_solve` — label-setting: a priority queue keyed by the weight space's
  linear extension holds at most one candidate per vertex; extracted labels
  are permanent.  Candidates that lose the per-vertex slot wait in a parked
  pool and are reconsidered when the slot frees up.

`brute_force_frontier` is the oracle both are tested against: plain DFS path
enumeration up to a length cap followed by a pairwise dominance filter.  Its
node count is capped by the POSP_BUDGET environment variable.
"""

from __future__ import annotations

import heapq
import itertools
import os
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, Callable, Iterable

from .core import (
    EQUAL,
    GREATER,
    INCOMPARABLE,
    LESS,
    Arc,
    BudgetExceededError,
    Frontier,
    Instance,
    Label,
    LeoMonotonicityError,
    MU_BOUNDED,
    NoLeoError,
    WeightSpace,
    reconstruct_path,
)

CONVERGED = "converged"
GUARD_HIT = "iteration-guard-hit"

DEFAULT_BUDGET = 500_000


def enumeration_budget() -> int:
    """Node cap for exhaustive enumeration, from POSP_BUDGET when set."""
    raw = os.environ.get("POSP_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        return DEFAULT_BUDGET
    return value if value > 0 else DEFAULT_BUDGET


class SolveMode(Enum):
    MIN = "min"
    MAX = "max"


@dataclass
class SolveStats:
    iterations: int = 0
    extractions: int = 0
    insertions: int = 0
    comparisons: int = 0
    merge_operations: int = 0

    def to_dict(self) -> dict[str, int]:
        return {
            "iterations": self.iterations,
            "extractions": self.extractions,
            "insertions": self.insertions,
            "comparisons": self.comparisons,
            "merge_operations": self.merge_operations,
        }


@dataclass
class SolveResult:
    frontiers: list[Frontier]
    stats: SolveStats
    status: str
    mode: SolveMode
    algorithm: str
    iteration_sizes: list[int] = field(default_factory=list)

    @property
    def converged(self) -> bool:
        return self.status == CONVERGED

    def frontier(self, v: int) -> Frontier:
        return self.frontiers[v]


def _counting_space(space: WeightSpace, stats: SolveStats) -> WeightSpace:
    base = space.comparator

    def counted(a, b):
        stats.comparisons += 1
        return base(a, b)

    return replace(space, comparator=counted)


def min_merge(space: WeightSpace, frontier: list[Label], candidates: list[Label]) -> list[Label]:
    """Keep one label per nondominated weight.

    Incumbents win ties against candidates, and earlier candidates win ties
    against later ones; a candidate strictly below an incumbent evicts it.
    """
    cmp = space.comparator
    result = list(frontier)
    for cand in candidates:
        keep = True
        for r in result:
            c = cmp(r.weight, cand.weight)
            if c is LESS or c is EQUAL:
                keep = False
                break
        if not keep:
            cand.dead = True
            continue
        survivors = []
        for r in result:
            if cmp(cand.weight, r.weight) is LESS:
                r.dead = True
            else:
                survivors.append(r)
        survivors.append(cand)
        result = survivors
    return result


def max_merge(space: WeightSpace, frontier: list[Label], candidates: list[Label]) -> list[Label]:
    """Keep every path whose weight is not strictly dominated.

    Equal weights on different paths coexist; re-deriving a path already in
    the frontier is a no-op (paths are identified by their predecessor
    chain), which is what makes the fixed point detectable.
    """
    cmp = space.comparator
    result = list(frontier)
    ids = {lab.path_id() for lab in result}
    for cand in candidates:
        if cand.path_id() in ids:
            cand.dead = True
            continue
        if any(cmp(r.weight, cand.weight) is LESS for r in result):
            cand.dead = True
            continue
        survivors = []
        for r in result:
            if cmp(cand.weight, r.weight) is LESS:
                r.dead = True
                ids.discard(r.path_id())
            else:
                survivors.append(r)
        survivors.append(cand)
        ids.add(cand.path_id())
        result = survivors
    return result


def _default_guard(instance: Instance) -> int:
    guard = 4 * instance.vertex_count
    if MU_BOUNDED in instance.declared and instance.mu is not None:
        guard = max(guard, instance.mu + 2)
    return guard


def bellman_solve(
    instance: Instance,
    mode: SolveMode = SolveMode.MIN,
    max_iterations: int | None = None,
    drop_infeasible: bool = False,
) -> SolveResult:
    """Label-correcting solve to a fixed point.

    Each round rebuilds every frontier from the previous round's frontiers
    (extensions along all in-arcs, then a merge against the incumbents) and
    stops once no frontier changed.  The iteration guard defaults to
    max(4 * vertex count, mu + 2 when a length bound is declared); hitting it
    yields a result with status "iteration-guard-hit" whose frontiers are not
    final.
    """
    stats = SolveStats()
    space = _counting_space(instance.space, stats)
    merge = min_merge if mode is SolveMode.MIN else max_merge
    guard = max_iterations
    if guard is None:
        guard = instance.max_iterations
    if guard is None:
        guard = _default_guard(instance)
    if guard < 1:
        guard = 1

    serials = itertools.count()
    root = Label(
        vertex=instance.source,
        pred=None,
        arc=None,
        weight=space.initial,
        length=0,
        serial=next(serials),
    )
    n = instance.vertex_count
    frontiers: list[list[Label]] = [[] for _ in range(n)]
    frontiers[instance.source] = [root]
    stats.insertions += 1

    iteration_sizes: list[int] = []
    status = CONVERGED
    k = 0
    while True:
        k += 1
        new_frontiers: list[list[Label]] = []
        changed = False
        for v in range(n):
            candidates: list[Label] = []
            for arc in instance.in_arcs(v):
                for lab in frontiers[arc.tail]:
                    w = space.update(lab.weight, arc)
                    if drop_infeasible and space.is_infeasible(w):
                        continue
                    candidates.append(
                        Label(
                            vertex=v,
                            pred=lab,
                            arc=arc,
                            weight=w,
                            length=lab.length + 1,
                            serial=next(serials),
                        )
                    )
            merged = merge(space, frontiers[v], candidates)
            stats.merge_operations += 1
            if [l.serial for l in merged] != [l.serial for l in frontiers[v]]:
                changed = True
                old = {l.serial for l in frontiers[v]}
                stats.insertions += sum(1 for l in merged if l.serial not in old)
            new_frontiers.append(merged)
        frontiers = new_frontiers
        iteration_sizes.append(sum(len(f) for f in frontiers))
        if not changed:
            break
        if k >= guard:
            status = GUARD_HIT
            break
    stats.iterations = k

    return SolveResult(
        frontiers=[Frontier(v, frontiers[v]) for v in range(n)],
        stats=stats,
        status=status,
        mode=mode,
        algorithm="bellman",
        iteration_sizes=iteration_sizes,
    )


def mda_solve(
    instance: Instance,
    mode: SolveMode = SolveMode.MIN,
    drop_infeasible: bool = False,
) -> SolveResult:
    """Label-setting solve ordered by the space's linear extension.

    The queue holds at most one candidate label per vertex; everything else
    discovered for that vertex waits in a per-vertex parked pool, keyed the
    same way.  The queue entry for a vertex is always no later in the linear
    extension than anything parked for it, so extracting the queue minimum
    and making it permanent is safe whenever the linear extension is monotone
    along arcs.  Violations of that premise surface as
    `LeoMonotonicityError` with a concrete witness: either the global
    extraction order runs backwards, or an extracted label and a permanent
    one are strictly ordered.

    In min mode a candidate is pruned by any permanent weight at or below it
    (one path per weight); in max mode only strict domination prunes, so
    equal-weight paths accumulate.
    """
    space_raw = instance.space
    if space_raw.leo_key is None:
        raise NoLeoError(
            f"weight space {space_raw.name!r} defines no linear extension; the label-setting solver needs one"
        )
    stats = SolveStats()
    space = _counting_space(space_raw, stats)
    key_of = space.leo_key
    strict_only = mode is SolveMode.MAX

    def dominated(permanents: list[Label], w: Any) -> bool:
        for lab in permanents:
            c = space.comparator(lab.weight, w)
            if c is LESS or (not strict_only and c is EQUAL):
                return True
        return False

    n = instance.vertex_count
    permanents: list[list[Label]] = [[] for _ in range(n)]
    permanent_ids: list[set[tuple[int, int]]] = [set() for _ in range(n)]
    parked: list[list[tuple]] = [[] for _ in range(n)]
    heap: list[list] = []
    entry_for: dict[int, list] = {}
    serials = itertools.count()
    pushes = itertools.count()  # unique heap tie-break; a label can be pushed twice

    def set_entry(v: int, label: Label) -> None:
        entry = [key_of(label.weight), v, next(pushes), label]
        entry_for[v] = entry
        heapq.heappush(heap, entry)
        stats.insertions += 1

    def park(label: Label) -> None:
        heapq.heappush(parked[label.vertex], (key_of(label.weight), label.serial, label))

    def promote(v: int) -> None:
        # Fill the empty queue slot for v with the best viable parked label.
        while parked[v]:
            _key, _serial, lab = heapq.heappop(parked[v])
            if lab.path_id() in permanent_ids[v]:
                continue
            if dominated(permanents[v], lab.weight):
                lab.dead = True
                continue
            set_entry(v, lab)
            return

    root = Label(
        vertex=instance.source,
        pred=None,
        arc=None,
        weight=space.initial,
        length=0,
        serial=next(serials),
    )
    set_entry(instance.source, root)

    last_key = None
    while heap:
        entry = heapq.heappop(heap)
        key, v, _serial, label = entry
        if label is None:
            continue
        del entry_for[v]

        if last_key is not None and key < last_key:
            raise LeoMonotonicityError(
                "extraction order ran backwards under the linear extension",
                witness={
                    "path": list(reconstruct_path(label)),
                    "weight": space_raw.render_weight(label.weight),
                    "previous_key": repr(last_key),
                    "key": repr(key),
                },
            )
        last_key = key

        for perm in permanents[v]:
            c = space.comparator(perm.weight, label.weight)
            if c is LESS or c is GREATER:
                raise LeoMonotonicityError(
                    "a permanent label and a later extraction are strictly ordered; "
                    "the linear extension is not monotone along arcs on this instance",
                    witness={
                        "permanent_path": list(reconstruct_path(perm)),
                        "permanent_weight": space_raw.render_weight(perm.weight),
                        "extracted_path": list(reconstruct_path(label)),
                        "extracted_weight": space_raw.render_weight(label.weight),
                        "relation": c.value,
                    },
                )
            assert not (c is EQUAL and not strict_only), "duplicate weight slipped past the candidate filter"

        permanents[v].append(label)
        permanent_ids[v].add(label.path_id())
        stats.extractions += 1

        promote(v)

        for arc in instance.out_arcs(v):
            u = arc.head
            w = space.update(label.weight, arc)
            if drop_infeasible and space.is_infeasible(w):
                continue
            if dominated(permanents[u], w):
                continue
            cand = Label(
                vertex=u,
                pred=label,
                arc=arc,
                weight=w,
                length=label.length + 1,
                serial=next(serials),
            )
            current = entry_for.get(u)
            if current is None:
                park(cand)
                promote(u)
            elif key_of(w) < current[0]:
                displaced = current[3]
                current[3] = None
                park(displaced)
                set_entry(u, cand)
            else:
                park(cand)

    return SolveResult(
        frontiers=[Frontier(v, permanents[v]) for v in range(n)],
        stats=stats,
        status=CONVERGED,
        mode=mode,
        algorithm="mda",
    )


@dataclass(frozen=True)
class OracleEntry:
    weight: Any
    path: tuple[int, ...]


@dataclass
class OracleResult:
    entries: list[list[OracleEntry]]
    node_count: int
    max_len: int
    mode: SolveMode

    def weights(self, v: int) -> list[Any]:
        return [e.weight for e in self.entries[v]]

    def paths(self, v: int) -> list[tuple[int, ...]]:
        return [e.path for e in self.entries[v]]


def enumerate_source_paths(
    instance: Instance, max_len: int, budget: int | None = None
) -> tuple[list[list[tuple[tuple[int, ...], Any]]], int]:
    """All source paths of at most max_len arcs, grouped per end vertex.

    Depth-first, following arcs in index order; each discovered path counts
    one node against the budget.  Returns (per-vertex lists of (path, weight)
    in discovery order, node count).
    """
    cap = budget if budget is not None else enumeration_budget()
    space = instance.space
    by_vertex: list[list[tuple[tuple[int, ...], Any]]] = [
        [] for _ in range(instance.vertex_count)
    ]
    nodes = 0
    stack: list[tuple[tuple[int, ...], Any]] = [((instance.source,), space.initial)]
    while stack:
        path, w = stack.pop()
        nodes += 1
        if nodes > cap:
            raise BudgetExceededError(
                f"path enumeration exceeded the budget of {cap} nodes "
                f"(set POSP_BUDGET to raise it)"
            )
        by_vertex[path[-1]].append((path, w))
        if len(path) - 1 >= max_len:
            continue
        for arc in reversed(instance.out_arcs(path[-1])):
            stack.append((path + (arc.head,), space.update(w, arc)))
    return by_vertex, nodes


def nondominated_weights(space: WeightSpace, weights: Iterable[Any]) -> list[Any]:
    """Distinct weights not strictly dominated by any other, input order kept."""
    distinct = list(dict.fromkeys(weights))
    out = []
    for w in distinct:
        if not any(
            space.comparator(other, w) is LESS for other in distinct if other != w
        ):
            out.append(w)
    return out


def brute_force_frontier(
    instance: Instance,
    max_len: int,
    mode: SolveMode = SolveMode.MIN,
    budget: int | None = None,
) -> OracleResult:
    """Exhaustive reference frontiers for paths of at most max_len arcs.

    Min mode keeps one witness path (the first discovered) per nondominated
    weight; max mode keeps every path whose weight is nondominated.  When the
    instance declares a length bound mu, max-mode enumeration stops there —
    longer paths cannot be efficient under the bound.
    """
    effective = max_len
    if mode is SolveMode.MAX and instance.mu is not None:
        effective = min(effective, instance.mu)
    by_vertex, nodes = enumerate_source_paths(instance, effective, budget)
    space = instance.space
    entries: list[list[OracleEntry]] = []
    for v in range(instance.vertex_count):
        found = by_vertex[v]
        good = nondominated_weights(space, (w for (_p, w) in found))
        good_set = set(good)
        if mode is SolveMode.MIN:
            first_path: dict[Any, tuple[int, ...]] = {}
            for path, w in found:
                if w in good_set and w not in first_path:
                    first_path[w] = path
            entries.append([OracleEntry(w, first_path[w]) for w in good])
        else:
            entries.append(
                [OracleEntry(w, path) for (path, w) in found if w in good_set]
            )
    return OracleResult(entries=entries, node_count=nodes, max_len=effective, mode=mode)
