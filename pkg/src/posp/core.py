"""Graph model, weight-space abstraction, and path labels.

A weight space bundles a value domain, a partial order on it (given as a
four-way comparator), an arc update function, an initial weight, and an
optional total-order key used by the label-setting solver.  An instance binds
a digraph and a source vertex to a weight space together with the properties
the caller declares to hold for it.

Labels are immutable records linked through predecessor references; a label
*is* a path, and two labels represent the same path exactly when their
(predecessor serial, arc) pairs coincide.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Hashable, Iterable, Mapping, Sequence


class PospError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(PospError):
    """Malformed input: schema, parameter range, or graph shape."""

    def __init__(self, message: str, path: str = ""):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


class DomainMismatchError(PospError):
    """A weight value does not belong to the space it was used with."""


class MissingUpdateEntryError(PospError):
    """A table space has no update entry and no default for a (weight, arc) pair."""


class NoLeoError(PospError):
    """The weight space does not define a linear-extension order."""


class BudgetExceededError(PospError):
    """Path enumeration exceeded the configured node budget."""


class LeoMonotonicityError(PospError):
    """The label-setting solver observed an extraction order contradiction.

    Carries a human-readable counterexample: a permanent label strictly
    dominated a later extraction (or vice versa), which cannot happen when the
    declared linear extension is monotone along arcs.
    """

    def __init__(self, message: str, witness: dict | None = None):
        self.witness = witness or {}
        super().__init__(message)


class ComparisonResult(Enum):
    """Four-way outcome of comparing two weights under a partial order."""

    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"
    INCOMPARABLE = "incomparable"

    def flipped(self) -> "ComparisonResult":
        if self is ComparisonResult.LESS:
            return ComparisonResult.GREATER
        if self is ComparisonResult.GREATER:
            return ComparisonResult.LESS
        return self


LESS = ComparisonResult.LESS
EQUAL = ComparisonResult.EQUAL
GREATER = ComparisonResult.GREATER
INCOMPARABLE = ComparisonResult.INCOMPARABLE

#: Relation kinds a comparator may declare.
PARTIAL_ORDER = "partial-order"
QUASI_TRANSITIVE = "antisymmetric-quasi-transitive"

#: leo_pick outcomes.
FIRST = "first"
SECOND = "second"

# Property names an instance may declare.
WELL_POSED = "well-posed"
HISTORY_FREE = "history-free"
WEAKLY_INDEPENDENT = "weakly-independent"
INDEPENDENT = "independent"
ARC_INCREASING = "arc-increasing"
CYCLE_INCREASING = "cycle-increasing"
CYCLE_NON_DECREASING = "cycle-non-decreasing"
WEAKLY_SUBPATH_OPTIMAL = "weakly-subpath-optimal"
SUBPATH_OPTIMAL = "subpath-optimal"
MU_BOUNDED = "mu-bounded"
LEO_MONOTONE = "leo-monotone"

ALL_PROPERTIES = frozenset(
    {
        WELL_POSED,
        HISTORY_FREE,
        WEAKLY_INDEPENDENT,
        INDEPENDENT,
        ARC_INCREASING,
        CYCLE_INCREASING,
        CYCLE_NON_DECREASING,
        WEAKLY_SUBPATH_OPTIMAL,
        SUBPATH_OPTIMAL,
        MU_BOUNDED,
        LEO_MONOTONE,
    }
)


@dataclass(frozen=True)
class Arc:
    """Directed arc.  Loops are allowed; parallel arcs are not."""

    index: int
    tail: int
    head: int
    payload: Any = None

    @property
    def key(self) -> tuple[int, int]:
        return (self.tail, self.head)


@dataclass(frozen=True)
class WeightSpace:
    """A partially ordered value domain with an arc update function.

    comparator(a, b) must be antisymmetric up to structural equality; its
    transitivity requirement is relaxed when relation_kind is
    ``antisymmetric-quasi-transitive``.  leo_key, when present, maps a weight
    to a tuple whose natural ordering is a linear extension of the order
    (equal keys only for structurally equal weights).
    """

    name: str
    comparator: Callable[[Any, Any], ComparisonResult]
    update: Callable[[Any, Arc], Any]
    initial: Any
    leo_key: Callable[[Any], tuple] | None = None
    relation_kind: str = PARTIAL_ORDER
    render: Callable[[Any], Any] | None = None
    infeasible: Callable[[Any], bool] | None = None

    def is_infeasible(self, weight: Any) -> bool:
        return self.infeasible is not None and self.infeasible(weight)

    def render_weight(self, weight: Any) -> Any:
        if self.render is None:
            return repr(weight)
        return self.render(weight)


def compare(space: WeightSpace, a: Any, b: Any) -> ComparisonResult:
    """Four-way comparison of two weights in `space`."""
    return space.comparator(a, b)


def extend(space: WeightSpace, weight: Any, arc: Arc) -> Any:
    """Weight of a path extended along `arc`, given the path's weight."""
    return space.update(weight, arc)


def leo_pick(space: WeightSpace, a: Any, b: Any) -> str:
    """Which of two weights comes first in the space's linear extension.

    Returns ``"first"`` when a precedes b (or the two are equal) and
    ``"second"`` otherwise.  Raises NoLeoError when the space defines no
    linear extension.
    """
    if space.leo_key is None:
        raise NoLeoError(f"weight space {space.name!r} has no linear extension")
    return FIRST if space.leo_key(a) <= space.leo_key(b) else SECOND


class TableWeightSpace:
    """Finite weight set with explicit strict-dominance pairs and update tables.

    The strict pairs are closed under transitivity at construction time and
    checked for antisymmetry (a cycle of strict dominance is rejected).
    Updates are looked up per (weight, arc) with an optional per-arc default.
    An optional explicit total order of all weights serves as the linear
    extension.
    """

    def __init__(
        self,
        weights: Sequence[Hashable],
        strict_pairs: Iterable[tuple[Hashable, Hashable]],
        updates: Mapping[tuple[Hashable, tuple[int, int]], Hashable],
        initial: Hashable,
        defaults: Mapping[tuple[int, int], Hashable] | None = None,
        leo_order: Sequence[Hashable] | None = None,
        name: str = "table",
        relation_kind: str = PARTIAL_ORDER,
    ):
        self.name = name
        self.weights = tuple(weights)
        self._members = set(self.weights)
        if len(self._members) != len(self.weights):
            raise ValidationError("duplicate weight names", "weights")
        for lo, hi in strict_pairs:
            if lo not in self._members or hi not in self._members:
                raise ValidationError(f"unknown weight in pair ({lo!r}, {hi!r})", "strict_pairs")
        closure = {(lo, hi) for lo, hi in strict_pairs}
        # Transitive closure by fixpoint; fine at table-space scale.
        changed = True
        while changed:
            changed = False
            for a, b in list(closure):
                for c, d in list(closure):
                    if b == c and (a, d) not in closure:
                        closure.add((a, d))
                        changed = True
        for a, b in closure:
            if a == b or (b, a) in closure:
                raise ValidationError(
                    f"strict dominance is not antisymmetric around {a!r}", "strict_pairs"
                )
        self._less = closure

        if initial not in self._members:
            raise ValidationError(f"initial weight {initial!r} not in weight set", "initial")
        self.initial = initial
        self._updates = dict(updates)
        self._defaults = dict(defaults or {})
        for (w, _arc), result in self._updates.items():
            if w not in self._members or result not in self._members:
                raise ValidationError(f"update entry {w!r} -> {result!r} uses unknown weight", "updates")
        for _arc, result in self._defaults.items():
            if result not in self._members:
                raise ValidationError(f"default result {result!r} unknown", "updates")

        self._leo_index: dict[Hashable, int] | None = None
        if leo_order is not None:
            if sorted(map(repr, leo_order)) != sorted(map(repr, self.weights)):
                raise ValidationError("leo order must list every weight exactly once", "leo")
            self._leo_index = {w: i for i, w in enumerate(leo_order)}

        self.relation_kind = relation_kind

    def _check_member(self, w: Hashable) -> None:
        if w not in self._members:
            raise DomainMismatchError(f"{w!r} is not a weight of table space {self.name!r}")

    def compare(self, a: Hashable, b: Hashable) -> ComparisonResult:
        self._check_member(a)
        self._check_member(b)
        if a == b:
            return EQUAL
        if (a, b) in self._less:
            return LESS
        if (b, a) in self._less:
            return GREATER
        return INCOMPARABLE

    def update(self, w: Hashable, arc: Arc) -> Hashable:
        self._check_member(w)
        entry = self._updates.get((w, arc.key))
        if entry is not None:
            return entry
        default = self._defaults.get(arc.key)
        if default is not None:
            return default
        raise MissingUpdateEntryError(
            f"no update entry for weight {w!r} on arc {arc.key} in table space {self.name!r}"
        )

    def as_space(self) -> WeightSpace:
        leo_key = None
        if self._leo_index is not None:
            index = self._leo_index
            leo_key = lambda w: (index[w],)  # noqa: E731
        return WeightSpace(
            name=self.name,
            comparator=self.compare,
            update=self.update,
            initial=self.initial,
            leo_key=leo_key,
            relation_kind=self.relation_kind,
            render=lambda w: w,
        )


@dataclass(frozen=True)
class Instance:
    """A digraph with a source vertex bound to a weight space.

    `declared` is the set of property names the caller asserts; nothing here
    verifies them (the conditions module audits declarations on request).
    """

    vertex_count: int
    arcs: tuple[Arc, ...]
    source: int
    space: WeightSpace
    declared: frozenset[str] = frozenset()
    mu: int | None = None
    max_iterations: int | None = None
    name: str = "instance"

    def __post_init__(self):
        n = self.vertex_count
        if n <= 0:
            raise ValidationError("vertex count must be positive", "graph.vertex_count")
        if not (0 <= self.source < n):
            raise ValidationError(f"source {self.source} out of range", "source")
        seen: dict[tuple[int, int], int] = {}
        for pos, arc in enumerate(self.arcs):
            if arc.index != pos:
                raise ValidationError("arc indices must match their positions", "graph.arcs")
            if not (0 <= arc.tail < n and 0 <= arc.head < n):
                raise ValidationError(
                    f"arc {arc.key} has an endpoint out of range", f"graph.arcs[{pos}]"
                )
            if arc.key in seen:
                raise ValidationError(
                    f"parallel arc {arc.key} (first at index {seen[arc.key]})",
                    f"graph.arcs[{pos}]",
                )
            seen[arc.key] = pos
        unknown = set(self.declared) - ALL_PROPERTIES
        if unknown:
            raise ValidationError(
                f"unknown declared properties: {sorted(unknown)}", "declared_properties"
            )
        if MU_BOUNDED in self.declared and self.mu is None:
            raise ValidationError("mu-bounded declared but no mu given", "mu")
        if self.mu is not None and self.mu < 0:
            raise ValidationError("mu must be nonnegative", "mu")
        out_arcs: list[list[Arc]] = [[] for _ in range(n)]
        in_arcs: list[list[Arc]] = [[] for _ in range(n)]
        for arc in self.arcs:
            out_arcs[arc.tail].append(arc)
            in_arcs[arc.head].append(arc)
        object.__setattr__(self, "_out", tuple(tuple(a) for a in out_arcs))
        object.__setattr__(self, "_in", tuple(tuple(a) for a in in_arcs))
        object.__setattr__(self, "_by_key", seen)

    def out_arcs(self, v: int) -> tuple[Arc, ...]:
        return self._out[v]

    def in_arcs(self, v: int) -> tuple[Arc, ...]:
        return self._in[v]

    def arc_between(self, tail: int, head: int) -> Arc | None:
        pos = self._by_key.get((tail, head))
        return None if pos is None else self.arcs[pos]


def build_instance(
    vertex_count: int,
    arcs: Sequence[tuple],
    source: int,
    space: WeightSpace,
    declared: Iterable[str] = (),
    mu: int | None = None,
    max_iterations: int | None = None,
    name: str = "instance",
) -> Instance:
    """Convenience constructor taking arcs as (tail, head) or (tail, head, payload)."""
    arc_objs = []
    for i, arc_tuple in enumerate(arcs):
        if len(arc_tuple) == 2:
            t, h = arc_tuple
            payload = None
        else:
            t, h, payload = arc_tuple
        arc_objs.append(Arc(i, t, h, payload))
    return Instance(
        vertex_count=vertex_count,
        arcs=tuple(arc_objs),
        source=source,
        space=space,
        declared=frozenset(declared),
        mu=mu,
        max_iterations=max_iterations,
        name=name,
    )


@dataclass(eq=False)
class Label:
    """One discovered path: a vertex plus a predecessor chain.

    Identity (eq/hash) is by object, so labels can be collected in sets; the
    (pred serial, arc index) pair identifies the underlying path.  `dead`
    marks labels dropped from a frontier — they stay reachable through
    predecessor chains and are never mutated otherwise.
    """

    vertex: int
    pred: "Label | None"
    arc: Arc | None
    weight: Any
    length: int
    serial: int = 0
    dead: bool = False

    def path_id(self) -> tuple[int, int]:
        return (
            self.pred.serial if self.pred is not None else -1,
            self.arc.index if self.arc is not None else -1,
        )


def reconstruct_path(label: Label) -> tuple[int, ...]:
    """Vertex sequence of the path a label represents, source first."""
    seq = []
    cur: Label | None = label
    while cur is not None:
        seq.append(cur.vertex)
        cur = cur.pred
    seq.reverse()
    return tuple(seq)


@dataclass
class Frontier:
    """Ordered per-vertex collection of labels."""

    vertex: int
    labels: list[Label] = field(default_factory=list)

    def weights(self) -> list[Any]:
        return [lab.weight for lab in self.labels]

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)


def fold_weight(instance: Instance, path: Sequence[int]) -> Any:
    """Recompute a path's weight by folding the update function along it.

    The path must start at the instance source and follow existing arcs.
    """
    if not path or path[0] != instance.source:
        raise ValidationError(f"path {tuple(path)} does not start at the source")
    w = instance.space.initial
    for tail, head in zip(path, path[1:]):
        arc = instance.arc_between(tail, head)
        if arc is None:
            raise ValidationError(f"no arc {(tail, head)} in instance {instance.name!r}")
        w = instance.space.update(w, arc)
    return w
