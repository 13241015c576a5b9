"""Command-line interface.

Commands read a JSON instance document and write JSON to stdout — a single
document on one line (one record per line for bench); diagnostics and wall
times go to stderr, so stdout is byte-deterministic for a given input and
option set.

Exit codes: 0 success; 2 validation/input error (including enumeration
budget); 3 no valid algorithm for the declared properties (or a requested
solver the weight space cannot support); 4 the iteration guard stopped a
solve; 5 a checker refuted a declared property (or a solve-time monotonicity
assertion failed).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Any

from .algorithms import (
    GUARD_HIT,
    SolveMode,
    SolveResult,
    bellman_solve,
    brute_force_frontier,
    mda_solve,
)
from .conditions import (
    DEFAULT_DEPTH,
    PropertySet,
    check_history_free,
    check_independence,
    check_linear_extension,
    check_monotonicity,
    check_subpath_optimality,
    evaluate_table,
    permitted_algorithms,
)
from .core import (
    ARC_INCREASING,
    BudgetExceededError,
    CYCLE_INCREASING,
    CYCLE_NON_DECREASING,
    DomainMismatchError,
    HISTORY_FREE,
    INDEPENDENT,
    Instance,
    LEO_MONOTONE,
    LeoMonotonicityError,
    MissingUpdateEntryError,
    NoLeoError,
    SUBPATH_OPTIMAL,
    TableWeightSpace,
    ValidationError,
    WEAKLY_INDEPENDENT,
    WEAKLY_SUBPATH_OPTIMAL,
    WeightSpace,
    build_instance,
    reconstruct_path,
)
from .generators import MIN_STRUCTURES, kn_instance, random_instance
from . import weights

FORMAT_VERSION = 1

WEIGHT_SPACE_KINDS = (
    "mosp",
    "bottleneck",
    "subset",
    "interval",
    "fifo_time",
    "wcspr",
    "evsp",
    "tourist",
    "table",
    "product",
)


def _err(message: str) -> None:
    print(message, file=sys.stderr)


def _json_default(obj: Any):
    if isinstance(obj, Fraction):
        return weights.render_rational(obj)
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    raise TypeError(f"not JSON serializable: {type(obj).__name__}")


def _emit(doc: dict) -> None:
    print(json.dumps(doc, separators=(",", ":"), default=_json_default))


def _req(mapping: Any, key: str, path: str) -> Any:
    if not isinstance(mapping, dict):
        raise ValidationError("expected an object", path or "document")
    if key not in mapping:
        raise ValidationError("missing required field", f"{path}.{key}" if path else key)
    return mapping[key]


def _as_int(value: Any, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValidationError(f"expected an integer, got {value!r}", path)
    return value


# ---------------------------------------------------------------------------
# Weight-space construction from document params + arc payloads.

ArcItem = tuple[tuple[int, int], Any]


def _payload_required(key: tuple[int, int], payload: Any):
    if payload is None:
        raise ValidationError(f"arc {key} needs a payload for this weight space", "graph.arcs")
    return payload


def _pair_payload(payload: Any, key: tuple[int, int], first: str, second: str):
    if isinstance(payload, dict):
        return payload[first] if first in payload else None, payload.get(second)
    if isinstance(payload, (list, tuple)) and len(payload) == 2:
        return payload[0], payload[1]
    raise ValidationError(f"arc {key} payload must be a pair or an object", "graph.arcs")


def build_space(kind: str, params: dict, arc_items: list[ArcItem], source: int) -> WeightSpace:
    if kind not in WEIGHT_SPACE_KINDS:
        raise ValidationError(
            f"unknown weight space kind {kind!r} (expected one of {', '.join(WEIGHT_SPACE_KINDS)})",
            "weight_space.kind",
        )
    p = params or {}

    if kind == "mosp":
        d = _as_int(_req(p, "dimension", "weight_space.params"), "weight_space.params.dimension")
        costs = {key: _payload_required(key, payload) for key, payload in arc_items}
        return weights.mosp_space(d, costs)

    if kind == "bottleneck":
        m = _as_int(
            _req(p, "additive_dimension", "weight_space.params"),
            "weight_space.params.additive_dimension",
        )
        n = _as_int(
            _req(p, "bottleneck_dimension", "weight_space.params"),
            "weight_space.params.bottleneck_dimension",
        )
        costs = {key: _payload_required(key, payload) for key, payload in arc_items}
        return weights.bottleneck_space(m, n, costs, p.get("initial_bottleneck"))

    if kind == "subset":
        n = _as_int(
            _req(p, "ground_set_size", "weight_space.params"),
            "weight_space.params.ground_set_size",
        )
        sets = {}
        for key, payload in arc_items:
            payload = _payload_required(key, payload)
            if not isinstance(payload, list):
                raise ValidationError(f"arc {key} payload must be an element list", "graph.arcs")
            sets[key] = [_as_int(e, f"arc {key} element") for e in payload]
        return weights.subset_space(n, sets)

    if kind == "interval":
        alpha = _req(p, "alpha", "weight_space.params")
        beta = _req(p, "beta", "weight_space.params")
        ivs = {}
        for key, payload in arc_items:
            payload = _payload_required(key, payload)
            c, w = _pair_payload(payload, key, "c", "w")
            ivs[key] = (c, w)
        return weights.interval_space(alpha, beta, ivs)

    if kind == "fifo_time":
        start = p.get("start_time", 0)
        tables = {}
        for key, payload in arc_items:
            payload = _payload_required(key, payload)
            if isinstance(payload, dict):
                payload = _req(payload, "breakpoints", f"arc {key} payload")
            if not isinstance(payload, list) or not all(
                isinstance(bp, (list, tuple)) and len(bp) == 2 for bp in payload
            ):
                raise ValidationError(
                    f"arc {key} payload must be a list of [departure, travel] pairs",
                    "graph.arcs",
                )
            tables[key] = [(bp[0], bp[1]) for bp in payload]
        return weights.fifo_time_space(start, tables)

    if kind == "wcspr":
        limit = _req(p, "limit", "weight_space.params")
        data = {}
        for key, payload in arc_items:
            payload = _payload_required(key, payload)
            if isinstance(payload, dict):
                data[key] = payload
            elif isinstance(payload, (list, tuple)) and len(payload) in (2, 3):
                w, r = payload[0], payload[1]
                repl = bool(payload[2]) if len(payload) == 3 else False
                data[key] = (w, r, repl)
            else:
                raise ValidationError(f"arc {key} payload must give cost and resource", "graph.arcs")
        return weights.wcspr_space(limit, data)

    if kind == "evsp":
        beta = _req(p, "initial_soc", "weight_space.params")
        eps = _req(p, "epsilon", "weight_space.params")
        stations_raw = p.get("stations", {})
        if not isinstance(stations_raw, dict):
            raise ValidationError("stations must map vertex to curve", "weight_space.params.stations")
        curves = {}
        for v_str, curve in stations_raw.items():
            try:
                v = int(v_str)
            except (TypeError, ValueError):
                raise ValidationError(
                    f"station key {v_str!r} is not a vertex", "weight_space.params.stations"
                ) from None
            if not isinstance(curve, list):
                raise ValidationError(f"station {v} curve must be a list", "weight_space.params.stations")
            curves[v] = [(pt[0], pt[1]) for pt in curve]
        roads = {}
        for key, payload in arc_items:
            if key[0] == key[1] and key[0] in curves:
                continue  # station loop; the curve defines it
            payload = _payload_required(key, payload)
            t, d = _pair_payload(payload, key, "time", "delta")
            roads[key] = (t, d)
        return weights.evsp_space(beta, roads, curves, eps)

    if kind == "tourist":
        budget = _req(p, "budget", "weight_space.params")
        values = _req(p, "values", "weight_space.params")
        cats = _req(p, "categories", "weight_space.params")
        q = _as_int(
            _req(p, "category_count", "weight_space.params"),
            "weight_space.params.category_count",
        )
        lengths = {}
        for key, payload in arc_items:
            payload = _payload_required(key, payload)
            if isinstance(payload, dict):
                payload = _req(payload, "length", f"arc {key} payload")
            lengths[key] = payload
        cats_int = [_as_int(c, "weight_space.params.categories") for c in cats]
        return weights.tourist_space(budget, values, cats_int, q, lengths, source)

    if kind == "table":
        names = _req(p, "weights", "weight_space.params")
        if not isinstance(names, list) or not all(isinstance(w, str) for w in names):
            raise ValidationError("table weights must be a list of names", "weight_space.params.weights")
        pairs_raw = p.get("strict_pairs", [])
        pairs = []
        for i, pair in enumerate(pairs_raw):
            if not isinstance(pair, (list, tuple)) or len(pair) != 2:
                raise ValidationError(
                    "each strict pair must be [lesser, greater]",
                    f"weight_space.params.strict_pairs[{i}]",
                )
            pairs.append((pair[0], pair[1]))
        initial = _req(p, "initial", "weight_space.params")
        updates = {}
        defaults = {}
        for i, entry in enumerate(p.get("updates", [])):
            path = f"weight_space.params.updates[{i}]"
            tail = _as_int(_req(entry, "tail", path), f"{path}.tail")
            head = _as_int(_req(entry, "head", path), f"{path}.head")
            for w_name, result in (entry.get("entries") or {}).items():
                updates[(w_name, (tail, head))] = result
            if "default" in entry:
                defaults[(tail, head)] = entry["default"]
        table = TableWeightSpace(
            weights=names,
            strict_pairs=pairs,
            updates=updates,
            initial=initial,
            defaults=defaults,
            leo_order=p.get("leo"),
            relation_kind=p.get("relation_kind", "partial-order"),
        )
        return table.as_space()

    if kind == "product":
        first_doc = _req(p, "first", "weight_space.params")
        second_doc = _req(p, "second", "weight_space.params")
        first_items = []
        second_items = []
        for key, payload in arc_items:
            if payload is None:
                first_items.append((key, None))
                second_items.append((key, None))
                continue
            a, b = _pair_payload(payload, key, "first", "second")
            first_items.append((key, a))
            second_items.append((key, b))
        first = build_space(
            _req(first_doc, "kind", "weight_space.params.first"),
            first_doc.get("params", {}),
            first_items,
            source,
        )
        second = build_space(
            _req(second_doc, "kind", "weight_space.params.second"),
            second_doc.get("params", {}),
            second_items,
            source,
        )
        return weights.product_space(first, second)

    raise AssertionError("unreachable")


def parse_instance(doc: Any) -> Instance:
    """Validate an instance document and build the instance it describes."""
    if not isinstance(doc, dict):
        raise ValidationError("instance document must be a JSON object")
    fv = _req(doc, "format_version", "")
    if fv != FORMAT_VERSION:
        raise ValidationError(f"unsupported format version {fv!r}", "format_version")
    graph = _req(doc, "graph", "")
    n = _as_int(_req(graph, "vertex_count", "graph"), "graph.vertex_count")
    arcs_raw = _req(graph, "arcs", "graph")
    if not isinstance(arcs_raw, list):
        raise ValidationError("arcs must be a list", "graph.arcs")
    arc_items: list[ArcItem] = []
    for i, arc in enumerate(arcs_raw):
        path = f"graph.arcs[{i}]"
        tail = _as_int(_req(arc, "tail", path), f"{path}.tail")
        head = _as_int(_req(arc, "head", path), f"{path}.head")
        arc_items.append(((tail, head), arc.get("payload")))
    source = _as_int(_req(doc, "source", ""), "source")
    ws = _req(doc, "weight_space", "")
    kind = _req(ws, "kind", "weight_space")
    space = build_space(kind, ws.get("params", {}), arc_items, source)
    declared = doc.get("declared_properties", [])
    if not isinstance(declared, list) or not all(isinstance(d, str) for d in declared):
        raise ValidationError("declared_properties must be a list of names", "declared_properties")
    mu = doc.get("mu")
    if mu is not None:
        mu = _as_int(mu, "mu")
    max_iterations = doc.get("max_iterations")
    if max_iterations is not None:
        max_iterations = _as_int(max_iterations, "max_iterations")
    name = doc.get("name", "instance")
    if not isinstance(name, str):
        raise ValidationError("name must be a string", "name")
    return build_instance(
        vertex_count=n,
        arcs=[(key[0], key[1], payload) for key, payload in arc_items],
        source=source,
        space=space,
        declared=declared,
        mu=mu,
        max_iterations=max_iterations,
        name=name,
    )


def _load_document(path: str) -> Any:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc}")
    try:
        # parse_float sees the literal text, so decimals stay exact.
        return json.loads(text, parse_float=Fraction)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path} is not valid JSON: {exc}")


# ---------------------------------------------------------------------------
# Result rendering.


def _entry_docs(space: WeightSpace, triples: list[tuple[Any, tuple[int, ...], int]]) -> list[dict]:
    """Render (weight, path, length) triples, sorted deterministically."""
    if space.leo_key is not None:
        key = lambda t: (space.leo_key(t[0]), t[2], t[1])  # noqa: E731
    else:
        key = lambda t: (  # noqa: E731
            json.dumps(space.render_weight(t[0]), sort_keys=True, default=_json_default),
            t[2],
            t[1],
        )
    out = []
    for w, path, length in sorted(triples, key=key):
        out.append(
            {
                "weight": space.render_weight(w),
                "path": list(path),
                "length": length,
                "feasible": not space.is_infeasible(w),
            }
        )
    return out


def _frontier_docs(instance: Instance, result: SolveResult) -> list[dict]:
    docs = []
    for v in range(instance.vertex_count):
        triples = [
            (lab.weight, reconstruct_path(lab), lab.length)
            for lab in result.frontiers[v]
        ]
        docs.append({"vertex": v, "entries": _entry_docs(instance.space, triples)})
    return docs


# ---------------------------------------------------------------------------
# Commands.


def cmd_solve(args: argparse.Namespace) -> int:
    instance = parse_instance(_load_document(args.file))
    variant = args.variant
    mode = SolveMode.MIN if variant == "min" else SolveMode.MAX
    permitted = permitted_algorithms(
        instance.declared, variant, instance.space.leo_key is not None
    )
    if args.algorithm == "auto":
        if permitted["mda"]:
            algorithm = "mda"
        elif permitted["bellman"]:
            algorithm = "bellman"
        elif args.force:
            algorithm = "bellman"
        else:
            _err(
                "no selection-table row permits any solver for the declared properties "
                f"(variant {variant}); use --force to run the label-correcting solver anyway"
            )
            return 3
    else:
        algorithm = args.algorithm
        if not permitted[algorithm] and not args.force:
            _err(
                f"declared properties do not permit the {algorithm} solver for variant "
                f"{variant}; use --force to run it anyway"
            )
            return 3

    if algorithm == "bellman":
        result = bellman_solve(
            instance,
            mode,
            max_iterations=args.max_iterations,
            drop_infeasible=args.drop_infeasible,
        )
    else:
        result = mda_solve(instance, mode, drop_infeasible=args.drop_infeasible)

    doc = {
        "format_version": FORMAT_VERSION,
        "command": "solve",
        "instance": instance.name,
        "algorithm": algorithm,
        "variant": variant,
        "status": result.status,
        "final": result.status != GUARD_HIT,
        "frontiers": _frontier_docs(instance, result),
        "statistics": result.stats.to_dict(),
        "iteration_sizes": result.iteration_sizes,
    }
    _emit(doc)
    if result.status == GUARD_HIT:
        _err(
            f"iteration guard hit after {result.stats.iterations} rounds; "
            "frontiers are not final"
        )
        return 4
    return 0


_CONDITION_RUNNERS = {
    "history-free": lambda inst, d: check_history_free(inst, d),
    "independent": lambda inst, d: check_independence(inst, d, mode="strict"),
    "weakly-independent": lambda inst, d: check_independence(inst, d, mode="weak"),
    "arc-non-decreasing": lambda inst, d: check_monotonicity(inst, d, kind="arc-non-decreasing"),
    "arc-increasing": lambda inst, d: check_monotonicity(inst, d, kind="arc-increasing"),
    "strict-arc": lambda inst, d: check_monotonicity(inst, d, kind="strict-arc"),
    "cycle-non-decreasing": lambda inst, d: check_monotonicity(inst, d, kind="cycle-non-decreasing"),
    "cycle-increasing": lambda inst, d: check_monotonicity(inst, d, kind="cycle-increasing"),
    "strict-cycle": lambda inst, d: check_monotonicity(inst, d, kind="strict-cycle"),
    "subpath-optimal": lambda inst, d: check_subpath_optimality(inst, d, mode="strong"),
    "weakly-subpath-optimal": lambda inst, d: check_subpath_optimality(inst, d, mode="weak"),
    "linear-extension": lambda inst, d: check_linear_extension(inst, d),
}

_DEFAULT_CONDITIONS = (
    "history-free",
    "independent",
    "weakly-independent",
    "arc-non-decreasing",
    "arc-increasing",
    "cycle-non-decreasing",
    "cycle-increasing",
    "subpath-optimal",
    "weakly-subpath-optimal",
)

# Report name -> declared property it refutes when violated.
_CONDITION_TO_PROPERTY = {
    "history-free": HISTORY_FREE,
    "independent": INDEPENDENT,
    "weakly-independent": WEAKLY_INDEPENDENT,
    "arc-increasing": ARC_INCREASING,
    "cycle-increasing": CYCLE_INCREASING,
    "cycle-non-decreasing": CYCLE_NON_DECREASING,
    "subpath-optimal": SUBPATH_OPTIMAL,
    "weakly-subpath-optimal": WEAKLY_SUBPATH_OPTIMAL,
    "linear-extension": LEO_MONOTONE,
}


def cmd_check(args: argparse.Namespace) -> int:
    instance = parse_instance(_load_document(args.file))
    depth = args.depth
    if args.conditions:
        names = [c.strip() for c in args.conditions.split(",") if c.strip()]
        unknown = [c for c in names if c not in _CONDITION_RUNNERS]
        if unknown:
            raise ValidationError(
                f"unknown conditions: {', '.join(unknown)} "
                f"(available: {', '.join(sorted(_CONDITION_RUNNERS))})"
            )
    else:
        names = list(_DEFAULT_CONDITIONS)
        if instance.space.leo_key is not None:
            names.append("linear-extension")

    reports = [_CONDITION_RUNNERS[name](instance, depth) for name in names]
    closed = PropertySet(instance.declared).closed()
    violated_declared = sorted(
        {
            _CONDITION_TO_PROPERTY[r.name]
            for r in reports
            if not r.holds and _CONDITION_TO_PROPERTY.get(r.name) in closed
        }
    )
    doc = {
        "format_version": FORMAT_VERSION,
        "command": "check",
        "instance": instance.name,
        "depth": depth,
        "declared": sorted(instance.declared),
        "reports": [r.to_dict() for r in reports],
        "violated_declared": violated_declared,
    }
    _emit(doc)
    if violated_declared:
        _err(f"declared properties refuted: {', '.join(violated_declared)}")
        return 5
    return 0


def cmd_oracle(args: argparse.Namespace) -> int:
    instance = parse_instance(_load_document(args.file))
    mode = SolveMode.MIN if args.variant == "min" else SolveMode.MAX
    result = brute_force_frontier(instance, args.max_len, mode)
    docs = []
    for v in range(instance.vertex_count):
        triples = [(e.weight, e.path, len(e.path) - 1) for e in result.entries[v]]
        docs.append({"vertex": v, "entries": _entry_docs(instance.space, triples)})
    _emit(
        {
            "format_version": FORMAT_VERSION,
            "command": "oracle",
            "instance": instance.name,
            "variant": args.variant,
            "max_len": result.max_len,
            "frontiers": docs,
            "node_count": result.node_count,
        }
    )
    return 0


def cmd_recommend(args: argparse.Namespace) -> int:
    instance = parse_instance(_load_document(args.file))
    variant = args.variant
    evaluations = evaluate_table(instance.declared, variant)
    closed = PropertySet(instance.declared).closed()
    permitted = permitted_algorithms(
        instance.declared, variant, instance.space.leo_key is not None
    )
    rows = []
    for ev in evaluations:
        row = ev.row
        rows.append(
            {
                "row": row.index,
                "algorithm": row.algorithm,
                "problem": row.problem,
                "guarantee": row.guarantee,
                "requires": sorted(row.required),
                "implies": sorted(row.implied),
                "leo": row.leo,
                "basis": list(row.basis),
                "satisfied": ev.satisfied,
                "missing": list(ev.missing),
            }
        )
    selected = "mda" if permitted["mda"] else "bellman" if permitted["bellman"] else None
    _emit(
        {
            "format_version": FORMAT_VERSION,
            "command": "recommend",
            "instance": instance.name,
            "variant": variant,
            "declared": sorted(instance.declared),
            "closed": sorted(closed),
            "rows": rows,
            "permitted": permitted,
            "selected": selected,
        }
    )
    return 0


def cmd_bench(args: argparse.Namespace) -> int:
    start = time.perf_counter()
    if args.suite == "kn-worst-case":
        n, m = args.n, args.m
        instance = kn_instance(n, m)
        result = bellman_solve(instance, SolveMode.MIN)
        for idx, total in enumerate(result.iteration_sizes):
            k = idx + 1
            prediction = sum(n**i for i in range(1, k + 1)) if k <= m - 1 else None
            nontrivial = total - 1
            _emit(
                {
                    "format_version": FORMAT_VERSION,
                    "command": "bench",
                    "suite": "kn-worst-case",
                    "n": n,
                    "m": m,
                    "record": "iteration",
                    "iteration": k,
                    "frontier_total": total,
                    "nontrivial": nontrivial,
                    "prediction": prediction,
                    "matches_prediction": (
                        nontrivial == prediction if prediction is not None else None
                    ),
                }
            )
        _emit(
            {
                "format_version": FORMAT_VERSION,
                "command": "bench",
                "suite": "kn-worst-case",
                "n": n,
                "m": m,
                "record": "final",
                "status": result.status,
                "sizes": [len(f) for f in result.frontiers],
                "statistics": result.stats.to_dict(),
            }
        )
    else:
        structures = (
            [s.strip() for s in args.structures.split(",") if s.strip()]
            if args.structures
            else list(MIN_STRUCTURES)
        )
        for structure in structures:
            for i in range(args.count):
                seed = args.seed_base + i
                instance = random_instance(structure, seed)
                bell = bellman_solve(instance, SolveMode.MIN)
                permitted = permitted_algorithms(
                    instance.declared, "min", instance.space.leo_key is not None
                )
                record = {
                    "format_version": FORMAT_VERSION,
                    "command": "bench",
                    "suite": "random",
                    "structure": structure,
                    "seed": seed,
                    "vertices": instance.vertex_count,
                    "arcs": len(instance.arcs),
                    "bellman": {
                        "status": bell.status,
                        "iteration_sizes": bell.iteration_sizes,
                        "statistics": bell.stats.to_dict(),
                    },
                    "mda": None,
                    "agree": None,
                }
                if permitted["mda"]:
                    mda = mda_solve(instance, SolveMode.MIN)
                    agree = all(
                        {lab.weight for lab in bell.frontiers[v]}
                        == {lab.weight for lab in mda.frontiers[v]}
                        for v in range(instance.vertex_count)
                    )
                    record["mda"] = {
                        "status": mda.status,
                        "statistics": mda.stats.to_dict(),
                    }
                    record["agree"] = agree
                _emit(record)
    _err(f"[bench] wall_time_s={time.perf_counter() - start:.3f}")
    return 0


# ---------------------------------------------------------------------------
# Entry point.


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="posp",
        description="Solvers and property checkers for partially ordered path weights.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    ps = sub.add_parser("solve", help="solve an instance and print its frontiers")
    ps.add_argument("file", help="instance document (JSON)")
    ps.add_argument("--algorithm", choices=("bellman", "mda", "auto"), default="auto")
    ps.add_argument("--variant", choices=("min", "max"), default="min")
    ps.add_argument("--force", action="store_true", help="run even when no table row permits it")
    ps.add_argument("--max-iterations", type=int, default=None)
    ps.add_argument("--drop-infeasible", action="store_true")
    ps.set_defaults(func=cmd_solve)

    pc = sub.add_parser("check", help="audit conditions against an instance")
    pc.add_argument("file")
    pc.add_argument("--depth", type=int, default=DEFAULT_DEPTH)
    pc.add_argument(
        "--conditions",
        default=None,
        help="comma-separated condition names (default: all applicable)",
    )
    pc.set_defaults(func=cmd_check)

    po = sub.add_parser("oracle", help="exhaustive reference frontiers")
    po.add_argument("file")
    po.add_argument("--max-len", type=int, default=8)
    po.add_argument("--variant", choices=("min", "max"), default="min")
    po.set_defaults(func=cmd_oracle)

    pr = sub.add_parser("recommend", help="evaluate the algorithm selection table")
    pr.add_argument("file")
    pr.add_argument("--variant", choices=("min", "max"), default="min")
    pr.set_defaults(func=cmd_recommend)

    pb = sub.add_parser("bench", help="built-in benchmark suites")
    pb.add_argument("--suite", choices=("kn-worst-case", "random"), required=True)
    pb.add_argument("--n", type=int, default=3, help="vertices for kn-worst-case")
    pb.add_argument("--m", type=int, default=3, help="collapse length for kn-worst-case")
    pb.add_argument("--structures", default=None, help="structures for the random suite")
    pb.add_argument("--count", type=int, default=5)
    pb.add_argument("--seed-base", type=int, default=0)
    pb.set_defaults(func=cmd_bench)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        _err(f"validation error: {exc}")
        return 2
    except (DomainMismatchError, MissingUpdateEntryError) as exc:
        _err(f"weight-space error: {exc}")
        return 2
    except BudgetExceededError as exc:
        _err(f"budget exceeded: {exc}")
        return 2
    except NoLeoError as exc:
        _err(f"no linear extension: {exc}")
        return 3
    except LeoMonotonicityError as exc:
        _err(f"monotonicity violation: {exc}")
        if exc.witness:
            _err(json.dumps(exc.witness, default=_json_default))
        return 5


if __name__ == "__main__":
    sys.exit(main())
