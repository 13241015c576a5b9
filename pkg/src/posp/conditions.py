"""Property checkers and algorithm selection.

The checkers are semi-decision procedures: they enumerate paths up to a depth
and either produce a concrete violation witness or report that the condition
held to that depth.  A violation is always real; a holds-to-depth verdict is
evidence, not proof.

Since every weight structure here derives a path's weight by folding an
update function, two paths with equal weight extend equally; the checkers
therefore examine one representative path per distinct weight at each vertex,
which covers all pairs for such structures.

`recommend_algorithm` evaluates declared properties against the selection
table: each row lists the properties that must be declared (closed under the
implications) for an algorithm/problem combination to be safe, the further
properties those imply, and whether the label-setting solver additionally
needs a monotone linear extension.  The linear-extension requirement does not
gate row listing — it is a solve-time prerequisite checked against the weight
space — so recommendations stay meaningful for spaces whose linear extension
is supplied separately.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable, Sequence

from .algorithms import (
    enumerate_source_paths,
    enumeration_budget,
    nondominated_weights,
)
from .core import (
    ARC_INCREASING,
    CYCLE_INCREASING,
    CYCLE_NON_DECREASING,
    EQUAL,
    FIRST,
    GREATER,
    HISTORY_FREE,
    INDEPENDENT,
    LEO_MONOTONE,
    LESS,
    MU_BOUNDED,
    NoLeoError,
    SECOND,
    SUBPATH_OPTIMAL,
    WELL_POSED,
    WEAKLY_INDEPENDENT,
    WEAKLY_SUBPATH_OPTIMAL,
    BudgetExceededError,
    Instance,
    ValidationError,
    leo_pick,
)

DEFAULT_DEPTH = 6

HOLDS = "holds-to-depth"
VIOLATED = "violated"


@dataclass(frozen=True)
class ConditionReport:
    name: str
    verdict: str
    depth: int
    witness: dict | None = None

    @property
    def holds(self) -> bool:
        return self.verdict == HOLDS

    def to_dict(self) -> dict:
        return {
            "condition": self.name,
            "verdict": self.verdict,
            "depth": self.depth,
            "witness": self.witness,
        }


def _render(instance: Instance, w: Any) -> Any:
    return instance.space.render_weight(w)


def _representatives(
    instance: Instance, depth: int, budget: int | None
) -> list[list[tuple[tuple[int, ...], Any]]]:
    """One (path, weight) per distinct weight per vertex, discovery order."""
    by_vertex, _ = enumerate_source_paths(instance, depth, budget)
    reps: list[list[tuple[tuple[int, ...], Any]]] = []
    for found in by_vertex:
        seen: dict[Any, tuple[int, ...]] = {}
        for path, w in found:
            if w not in seen:
                seen[w] = path
        reps.append([(p, w) for w, p in seen.items()])
    return reps


def check_history_free(
    instance: Instance, depth: int = DEFAULT_DEPTH, budget: int | None = None
) -> ConditionReport:
    """Equal-weight paths to the same vertex must extend to equal weights."""
    by_vertex, _ = enumerate_source_paths(instance, depth, budget)
    space = instance.space
    for v in range(instance.vertex_count):
        groups: dict[Any, list[tuple[int, ...]]] = {}
        for path, w in by_vertex[v]:
            groups.setdefault(w, []).append(path)
        for w, paths in groups.items():
            if len(paths) < 2:
                continue
            base = paths[0]
            for arc in instance.out_arcs(v):
                w_base = space.update(w, arc)
                for other in paths[1:]:
                    w_other = space.update(w, arc)
                    if w_base != w_other:
                        return ConditionReport(
                            name="history-free",
                            verdict=VIOLATED,
                            depth=depth,
                            witness={
                                "paths": [list(base), list(other)],
                                "arc": list(arc.key),
                                "weight": _render(instance, w),
                                "extended_weights": [
                                    _render(instance, w_base),
                                    _render(instance, w_other),
                                ],
                            },
                        )
    return ConditionReport("history-free", HOLDS, depth)


def check_independence(
    instance: Instance,
    depth: int = DEFAULT_DEPTH,
    mode: str = "strict",
    budget: int | None = None,
) -> ConditionReport:
    """Strictly ordered weights must stay ordered after a common extension.

    Strict mode demands the strict order be preserved; weak mode allows the
    extension to equalize them.
    """
    if mode not in ("strict", "weak"):
        raise ValidationError(f"unknown independence mode {mode!r}")
    name = INDEPENDENT if mode == "strict" else WEAKLY_INDEPENDENT
    reps = _representatives(instance, depth, budget)
    space = instance.space
    for v in range(instance.vertex_count):
        found = reps[v]
        for i in range(len(found)):
            for j in range(len(found)):
                if i == j:
                    continue
                p_lo, w_lo = found[i]
                p_hi, w_hi = found[j]
                if space.comparator(w_lo, w_hi) is not LESS:
                    continue
                for arc in instance.out_arcs(v):
                    e_lo = space.update(w_lo, arc)
                    e_hi = space.update(w_hi, arc)
                    rel = space.comparator(e_lo, e_hi)
                    ok = rel is LESS if mode == "strict" else rel in (LESS, EQUAL)
                    if not ok:
                        return ConditionReport(
                            name=name,
                            verdict=VIOLATED,
                            depth=depth,
                            witness={
                                "paths": [list(p_lo), list(p_hi)],
                                "arc": list(arc.key),
                                "weights": [
                                    _render(instance, w_lo),
                                    _render(instance, w_hi),
                                ],
                                "extended_weights": [
                                    _render(instance, e_lo),
                                    _render(instance, e_hi),
                                ],
                                "extended_relation": rel.value,
                            },
                        )
    return ConditionReport(name, HOLDS, depth)


_ARC_KINDS = {
    "arc-non-decreasing": lambda rel: rel is not GREATER,
    "arc-increasing": lambda rel: rel in (LESS, EQUAL),
    "strict-arc": lambda rel: rel is LESS,
}
_CYCLE_KINDS = {
    "cycle-non-decreasing": lambda rel: rel is not GREATER,
    "cycle-increasing": lambda rel: rel in (LESS, EQUAL),
    "strict-cycle": lambda rel: rel is LESS,
}

MONOTONICITY_KINDS = tuple(_ARC_KINDS) + tuple(_CYCLE_KINDS)


def check_monotonicity(
    instance: Instance,
    depth: int = DEFAULT_DEPTH,
    kind: str = "cycle-non-decreasing",
    budget: int | None = None,
) -> ConditionReport:
    """Compare a path's weight with its extensions along arcs or cycles.

    `rel` below is compare(W(p), W(p extended)); the arc kinds check a single
    arc, the cycle kinds a closed walk at the path's head, total length
    bounded by the depth.
    """
    if kind in _ARC_KINDS:
        accept = _ARC_KINDS[kind]
        reps = _representatives(instance, depth - 1, budget)
        space = instance.space
        for v in range(instance.vertex_count):
            for path, w in reps[v]:
                for arc in instance.out_arcs(v):
                    w2 = space.update(w, arc)
                    rel = space.comparator(w, w2)
                    if not accept(rel):
                        return ConditionReport(
                            name=kind,
                            verdict=VIOLATED,
                            depth=depth,
                            witness={
                                "path": list(path),
                                "arc": list(arc.key),
                                "weights": [_render(instance, w), _render(instance, w2)],
                                "relation": rel.value,
                            },
                        )
        return ConditionReport(kind, HOLDS, depth)

    if kind not in _CYCLE_KINDS:
        raise ValidationError(f"unknown monotonicity kind {kind!r}")
    accept = _CYCLE_KINDS[kind]
    space = instance.space
    cap = budget if budget is not None else enumeration_budget()
    nodes = 0
    reps = _representatives(instance, depth - 1, budget)
    for v in range(instance.vertex_count):
        for path, w in reps[v]:
            remaining = depth - (len(path) - 1)
            if remaining < 1:
                continue
            # Closed walks at v of 1..remaining arcs, depth first.
            stack: list[tuple[tuple[int, ...], Any]] = [((v,), w)]
            while stack:
                walk, cur = stack.pop()
                nodes += 1
                if nodes > cap:
                    raise BudgetExceededError(
                        f"cycle enumeration exceeded the budget of {cap} nodes"
                    )
                if len(walk) > 1 and walk[-1] == v:
                    rel = space.comparator(w, cur)
                    if not accept(rel):
                        return ConditionReport(
                            name=kind,
                            verdict=VIOLATED,
                            depth=depth,
                            witness={
                                "path": list(path),
                                "cycle": list(walk),
                                "weights": [_render(instance, w), _render(instance, cur)],
                                "relation": rel.value,
                            },
                        )
                if len(walk) - 1 >= remaining:
                    continue
                for arc in reversed(instance.out_arcs(walk[-1])):
                    stack.append((walk + (arc.head,), space.update(cur, arc)))
    return ConditionReport(kind, HOLDS, depth)


def check_subpath_optimality(
    instance: Instance,
    depth: int = DEFAULT_DEPTH,
    mode: str = "strong",
    budget: int | None = None,
) -> ConditionReport:
    """Do efficient paths have efficient prefixes?

    Strong mode requires it of every efficient path; weak mode requires, per
    nondominated weight, at least one witness path all of whose prefixes are
    efficient.  Efficiency is always judged against everything enumerated to
    the given depth.
    """
    if mode not in ("strong", "weak"):
        raise ValidationError(f"unknown subpath-optimality mode {mode!r}")
    name = SUBPATH_OPTIMAL if mode == "strong" else WEAKLY_SUBPATH_OPTIMAL
    by_vertex, _ = enumerate_source_paths(instance, depth, budget)
    space = instance.space
    weight_of: dict[tuple[int, ...], Any] = {}
    for found in by_vertex:
        for path, w in found:
            weight_of[path] = w
    nd: list[set] = []
    nd_order: list[list[Any]] = []
    for v in range(instance.vertex_count):
        good = nondominated_weights(space, (w for _p, w in by_vertex[v]))
        nd_order.append(good)
        nd.append(set(good))

    def first_dominated_prefix(path: tuple[int, ...]):
        for i in range(1, len(path)):
            prefix = path[:i]
            if weight_of[prefix] not in nd[prefix[-1]]:
                return prefix
        return None

    def dominator(prefix: tuple[int, ...]):
        pw = weight_of[prefix]
        for cand, w in by_vertex[prefix[-1]]:
            if space.comparator(w, pw) is LESS:
                return cand, w
        return None, None

    if mode == "strong":
        for v in range(instance.vertex_count):
            for path, w in by_vertex[v]:
                if w not in nd[v]:
                    continue
                prefix = first_dominated_prefix(path)
                if prefix is not None:
                    dom_path, dom_w = dominator(prefix)
                    return ConditionReport(
                        name=name,
                        verdict=VIOLATED,
                        depth=depth,
                        witness={
                            "path": list(path),
                            "weight": _render(instance, w),
                            "prefix": list(prefix),
                            "prefix_weight": _render(instance, weight_of[prefix]),
                            "dominating_path": list(dom_path) if dom_path else None,
                            "dominating_weight": (
                                _render(instance, dom_w) if dom_path else None
                            ),
                        },
                    )
        return ConditionReport(name, HOLDS, depth)

    for v in range(instance.vertex_count):
        for w in nd_order[v]:
            witnesses = [p for p, pw in by_vertex[v] if pw == w]
            if any(first_dominated_prefix(p) is None for p in witnesses):
                continue
            path = witnesses[0]
            prefix = first_dominated_prefix(path)
            dom_path, dom_w = dominator(prefix)
            return ConditionReport(
                name=name,
                verdict=VIOLATED,
                depth=depth,
                witness={
                    "weight": _render(instance, w),
                    "path": list(path),
                    "prefix": list(prefix),
                    "prefix_weight": _render(instance, weight_of[prefix]),
                    "dominating_path": list(dom_path) if dom_path else None,
                    "dominating_weight": _render(instance, dom_w) if dom_path else None,
                },
            )
    return ConditionReport(name, HOLDS, depth)


def check_linear_extension(
    instance: Instance,
    depth: int = DEFAULT_DEPTH,
    sample: Sequence[Any] | None = None,
    sample_limit: int = 32,
    budget: int | None = None,
) -> ConditionReport:
    """Audit the space's linear extension.

    Checks, on a weight sample (by default the distinct weights reachable
    within the depth, truncated to `sample_limit`): totality, antisymmetry,
    and transitivity of the pick order, and that strict dominance implies
    being picked first.  Then checks monotonicity along arcs — every
    enumerated path must be picked over each of its one-arc extensions.
    """
    space = instance.space
    if space.leo_key is None:
        raise NoLeoError(f"weight space {space.name!r} has no linear extension to check")
    reps = _representatives(instance, depth - 1, budget)
    if sample is None:
        collected: list[Any] = []
        seen: set[Any] = set()
        for v in range(instance.vertex_count):
            for _p, w in reps[v]:
                if w not in seen:
                    seen.add(w)
                    collected.append(w)
        sample = collected[:sample_limit]
    else:
        sample = list(sample)[:sample_limit]

    def witness_pair(kind, a, b, extra=None):
        data = {
            "kind": kind,
            "weights": [_render(instance, a), _render(instance, b)],
        }
        if extra:
            data.update(extra)
        return data

    for a in sample:
        if leo_pick(space, a, a) != FIRST:
            return ConditionReport(
                "linear-extension", VIOLATED, depth, witness_pair("reflexivity", a, a)
            )
    for a in sample:
        for b in sample:
            pick_ab = leo_pick(space, a, b)
            pick_ba = leo_pick(space, b, a)
            if pick_ab == SECOND and pick_ba == SECOND:
                return ConditionReport(
                    "linear-extension", VIOLATED, depth, witness_pair("totality", a, b)
                )
            if pick_ab == FIRST and pick_ba == FIRST and a != b:
                return ConditionReport(
                    "linear-extension", VIOLATED, depth, witness_pair("antisymmetry", a, b)
                )
            if space.comparator(a, b) is LESS and pick_ab == SECOND:
                return ConditionReport(
                    "linear-extension",
                    VIOLATED,
                    depth,
                    witness_pair("dominance-agreement", a, b),
                )
    for a in sample:
        for b in sample:
            for c in sample:
                if (
                    leo_pick(space, a, b) == FIRST
                    and leo_pick(space, b, c) == FIRST
                    and leo_pick(space, a, c) == SECOND
                ):
                    return ConditionReport(
                        "linear-extension",
                        VIOLATED,
                        depth,
                        witness_pair(
                            "transitivity", a, c, {"via": _render(instance, b)}
                        ),
                    )

    for v in range(instance.vertex_count):
        for path, w in reps[v]:
            for arc in instance.out_arcs(v):
                w2 = space.update(w, arc)
                if leo_pick(space, w, w2) == SECOND:
                    return ConditionReport(
                        "linear-extension",
                        VIOLATED,
                        depth,
                        witness_pair(
                            "arc-monotonicity",
                            w,
                            w2,
                            {"path": list(path), "arc": list(arc.key)},
                        ),
                    )
    return ConditionReport("linear-extension", HOLDS, depth)


# ---------------------------------------------------------------------------
# Declared property sets and algorithm selection.

IMPLICATIONS: tuple[tuple[str, str], ...] = (
    (INDEPENDENT, WEAKLY_INDEPENDENT),
    (ARC_INCREASING, CYCLE_INCREASING),
    (CYCLE_INCREASING, CYCLE_NON_DECREASING),
    (SUBPATH_OPTIMAL, WEAKLY_SUBPATH_OPTIMAL),
)


@dataclass(frozen=True)
class PropertySet:
    properties: frozenset[str]

    def __init__(self, properties: Iterable[str]):
        object.__setattr__(self, "properties", frozenset(properties))

    def closed(self) -> frozenset[str]:
        """Closure under the property implications."""
        closed = set(self.properties)
        changed = True
        while changed:
            changed = False
            for pre, post in IMPLICATIONS:
                if pre in closed and post not in closed:
                    closed.add(post)
                    changed = True
        return frozenset(closed)


LEO_NONE = "none"
LEO_REQUIRED = "required"
LEO_IMPLIED = "implied"


@dataclass(frozen=True)
class TableRow:
    """One safe algorithm/problem combination.

    `required` are the properties that must be declared; `implied` follow
    from them.  `leo` records whether the combination additionally needs a
    monotone linear extension outright, or gets one from any
    dominance-respecting linear extension because the weights are
    arc-increasing.
    """

    index: int
    algorithm: str
    problem: str
    required: frozenset[str]
    implied: frozenset[str]
    leo: str
    guarantee: str
    basis: tuple[str, ...]


def _row(index, algorithm, problem, required, implied, leo, guarantee, basis):
    return TableRow(
        index=index,
        algorithm=algorithm,
        problem=problem,
        required=frozenset(required),
        implied=frozenset(implied),
        leo=leo,
        guarantee=guarantee,
        basis=tuple(basis),
    )


_WP = WELL_POSED
_H = HISTORY_FREE
_CWND = CYCLE_NON_DECREASING
_CWI = CYCLE_INCREASING
_A = ARC_INCREASING
_WI = WEAKLY_INDEPENDENT
_I = INDEPENDENT
_WSO = WEAKLY_SUBPATH_OPTIMAL
_SO = SUBPATH_OPTIMAL
_MU = MU_BOUNDED

_B_MIN = "min-complete-under-weak-independence"
_B_WSO = "min-complete-under-subpath-witnesses"
_B_MAX = "max-complete-under-length-bound"
_B_ISO = "independence-implies-prefix-efficiency"
_B_CG = "cycle-growth-implies-subpath-witnesses"
_B_LB = "length-bound-implies-subpath-witnesses"
_B_CS = "cycle-stability-implies-subpath-witnesses"
_B_MDA_MIN = "label-setting-min-correctness"
_B_MDA_MAX = "label-setting-max-correctness"

TABLE_ROWS: tuple[TableRow, ...] = (
    _row(1, "bellman", "min", {_WP, _H, _WI}, set(), LEO_NONE, "minimal", (_B_MIN,)),
    _row(2, "bellman", "min", {_WP, _H, _WSO}, set(), LEO_NONE, "minimal", (_B_WSO,)),
    _row(3, "bellman", "min", {_H, _WSO, _MU}, {_WP}, LEO_NONE, "minimal", (_B_WSO,)),
    _row(4, "bellman", "min", {_H, _CWI, _WI}, {_WP, _CWND, _WSO}, LEO_NONE, "minimal", (_B_CG, _B_WSO)),
    _row(5, "bellman", "min", {_H, _A, _WI}, {_WP, _CWND, _CWI, _WSO}, LEO_NONE, "minimal", (_B_CG, _B_WSO)),
    _row(6, "bellman", "min", {_H, _WI, _MU}, {_WP, _WSO}, LEO_NONE, "minimal", (_B_LB, _B_WSO)),
    _row(7, "bellman", "complete", {_WSO, _MU}, {_WP}, LEO_NONE, "complete", (_B_MAX,)),
    _row(8, "bellman", "max", {_SO, _MU}, {_WP, _WSO}, LEO_NONE, "maximal", (_B_MAX,)),
    _row(9, "bellman", "max", {_I, _MU}, {_WP, _WSO, _SO}, LEO_NONE, "maximal", (_B_ISO, _B_MAX)),
    _row(10, "mda", "min", {_WP, _H, _WSO}, set(), LEO_REQUIRED, "minimal", (_B_MDA_MIN,)),
    _row(11, "mda", "min", {_WP, _H, _A, _WSO}, {_CWND, _CWI}, LEO_IMPLIED, "minimal", (_B_MDA_MIN,)),
    _row(12, "mda", "min", {_H, _WSO, _MU}, {_WP}, LEO_REQUIRED, "minimal", (_B_MDA_MIN,)),
    _row(13, "mda", "min", {_H, _A, _WSO, _MU}, {_WP, _CWND, _CWI}, LEO_IMPLIED, "minimal", (_B_MDA_MIN,)),
    _row(14, "mda", "min", {_H, _CWI, _WI}, {_WP, _CWND, _WSO}, LEO_REQUIRED, "minimal", (_B_CG, _B_MDA_MIN)),
    _row(15, "mda", "min", {_H, _A, _WI}, {_WP, _CWND, _CWI, _WSO}, LEO_IMPLIED, "minimal", (_B_CG, _B_MDA_MIN)),
    _row(16, "mda", "min", {_H, _WI, _MU}, {_WP, _WSO}, LEO_REQUIRED, "minimal", (_B_LB, _B_MDA_MIN)),
    _row(17, "mda", "min", {_WP, _H, _CWND, _WI}, {_WSO}, LEO_REQUIRED, "minimal", (_B_CS, _B_MDA_MIN)),
    _row(18, "mda", "complete", {_WSO, _MU}, {_WP}, LEO_REQUIRED, "complete", (_B_MDA_MAX,)),
    _row(19, "mda", "complete", {_A, _WSO, _MU}, {_WP, _CWND, _CWI}, LEO_IMPLIED, "complete", (_B_MDA_MAX,)),
    _row(20, "mda", "complete", {_H, _WI, _MU}, {_WP, _WSO}, LEO_IMPLIED, "complete", (_B_LB, _B_MDA_MAX)),
    _row(21, "mda", "max", {_SO, _MU}, {_WP, _WSO}, LEO_REQUIRED, "maximal", (_B_MDA_MAX,)),
    _row(22, "mda", "max", {_I, _MU}, {_WP, _WSO, _SO}, LEO_REQUIRED, "maximal", (_B_ISO, _B_MDA_MAX)),
    _row(23, "mda", "max", {_A, _SO, _MU}, {_WP, _CWND, _CWI, _WSO}, LEO_IMPLIED, "maximal", (_B_MDA_MAX,)),
    _row(24, "mda", "max", {_A, _I, _MU}, {_WP, _CWND, _CWI, _WSO, _SO}, LEO_IMPLIED, "maximal", (_B_ISO, _B_MDA_MAX)),
)


@dataclass(frozen=True)
class RowEvaluation:
    row: TableRow
    satisfied: bool
    missing: tuple[str, ...]


def _variant_matches(row: TableRow, variant: str) -> bool:
    if variant == "min":
        return row.problem == "min"
    if variant == "max":
        return row.problem in ("max", "complete")
    raise ValidationError(f"unknown variant {variant!r}")


def evaluate_table(
    properties: Iterable[str] | PropertySet, variant: str | None = None
) -> list[RowEvaluation]:
    """Evaluate every selection-table row against a closed property set."""
    props = properties if isinstance(properties, PropertySet) else PropertySet(properties)
    closed = props.closed()
    out = []
    for row in TABLE_ROWS:
        if variant is not None and not _variant_matches(row, variant):
            continue
        missing = tuple(sorted(row.required - closed))
        out.append(RowEvaluation(row=row, satisfied=not missing, missing=missing))
    return out


def recommend_algorithm(
    properties: Iterable[str] | PropertySet, variant: str = "min"
) -> list[TableRow]:
    """Rows of the selection table satisfied by the declared properties.

    The linear-extension column never gates a row here; running the
    label-setting solver additionally requires the weight space to supply a
    linear extension justified by `mda_leo_justified`.
    """
    return [ev.row for ev in evaluate_table(properties, variant) if ev.satisfied]


def mda_leo_justified(closed: frozenset[str]) -> bool:
    """Is a monotone linear extension available by declaration or implication?

    Either the instance declares monotonicity outright, or its weights are
    arc-increasing, in which case any dominance-respecting linear extension
    is monotone along arcs.
    """
    return LEO_MONOTONE in closed or ARC_INCREASING in closed


def permitted_algorithms(
    properties: Iterable[str] | PropertySet, variant: str, has_leo: bool
) -> dict[str, bool]:
    """Which solver families are safe for the declared properties."""
    props = properties if isinstance(properties, PropertySet) else PropertySet(properties)
    rows = recommend_algorithm(props, variant)
    closed = props.closed()
    return {
        "bellman": any(r.algorithm == "bellman" for r in rows),
        "mda": (
            any(r.algorithm == "mda" for r in rows)
            and has_leo
            and mda_leo_justified(closed)
        ),
    }
