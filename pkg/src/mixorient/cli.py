"""Command-line interface: ``mixorient {solve,verify,generate,preprocess,bench}``.

Exit status: 0 success, 2 input error, 3 validation failure, 4 exact-solver
cap refusal, 5 solver precondition failure (cyclic input with
``--no-preprocess``).
"""

from __future__ import annotations

import argparse
import csv
import io as _io
import sys
import time
from pathlib import Path
from typing import Dict, List, Optional

from . import io
from .decomposition import map_decomposition
from .errors import CapExceeded, ContractViolation, InputError, PreconditionError, ValidationError
from .graph import count_satisfied, validate_orientation
from .preprocess import contract_cycles, lift_orientation
from .reductions import (gen_from_dicut, gen_from_independent_set, gen_grid_full_orientation,
                         gen_random_instance)
from .solvers import (ALGORITHMS, FixedPathInstance, solve_exact, solve_fixed_paths, solve_fvs,
                      solve_greedy_cuberoot, solve_greedy_delta, solve_tree_centroid, solve_treewidth)

EXIT_OK, EXIT_INPUT, EXIT_VALIDATION, EXIT_CAP, EXIT_PRECONDITION = 0, 2, 3, 4, 5

BENCH_COLUMNS = ["instance", "algorithm", "status", "requests", "routable", "unroutable",
                 "satisfied", "optimum", "ratio"]


def _flatten(value) -> str:
    if isinstance(value, (list, tuple)):
        return " ".join(str(v) for v in value)
    return "" if value is None else str(value)


def solve_instance(inst: io.Instance, algorithm: str, preprocess: bool = True) -> Dict[str, object]:
    """Full pipeline on a parsed instance.

    Returns a dict with the lifted ``orientation`` and an ordered ``report``.
    """
    if algorithm not in ALGORITHMS:
        raise InputError(f"unknown algorithm {algorithm!r}; choose from {', '.join(ALGORITHMS)}")
    started = time.perf_counter()
    graph, requests = inst.graph, inst.requests
    fixed = algorithm.startswith("fixed_paths")
    record = None
    auto: List[int] = []
    if preprocess and not fixed:
        work_graph, work_requests, record = contract_cycles(graph, requests)
        auto = record.auto_satisfied
    else:
        work_graph, work_requests = graph, requests
    fvs_hint = inst.fvs
    decomposition = inst.decomposition
    if record is not None:
        if fvs_hint is not None:
            fvs_hint = list(dict.fromkeys(record.vertex_map[v] for v in fvs_hint))
        if decomposition is not None:
            decomposition = map_decomposition(decomposition, record.vertex_map)

    if algorithm == "greedy_cuberoot":
        result = solve_greedy_cuberoot(work_graph, work_requests)
    elif algorithm == "greedy_delta":
        result = solve_greedy_delta(work_graph, work_requests)
    elif algorithm == "treewidth":
        result = solve_treewidth(work_graph, work_requests, decomposition)
    elif algorithm == "fvs":
        result = solve_fvs(work_graph, work_requests, fvs_hint)
    elif algorithm == "tree_centroid":
        result = solve_tree_centroid(work_graph, work_requests)
    elif algorithm == "exact":
        result = solve_exact(work_graph, work_requests)
    else:
        result = solve_fixed_paths(FixedPathInstance(graph, requests, inst.mandated_paths()),
                                   algorithm.rsplit("_", 1)[1])

    orientation = lift_orientation(record, result.orientation) if record is not None else result.orientation
    count, _ = count_satisfied(graph, orientation, requests)
    if count < result.count:
        raise AssertionError("lifted orientation lost satisfied requests")
    report = {
        "instance": io.instance_digest(inst),
        "algorithm": algorithm,
        "requests": len(requests),
        "satisfied": count,
        "solver_satisfied": result.count,
        "routable": result.routable,
        "unroutable": len(result.unroutable),
        "auto_satisfied": len(auto),
        "preprocessed": int(record is not None),
        "contracted_vertices": work_graph.n,
    }
    if fixed:
        report["fixed_path_satisfied"] = result.count
    for key, value in result.certificate.items():
        report[f"cert.{key}"] = _flatten(value)
    report["wall_time"] = f"{time.perf_counter() - started:.6f}"
    return {"orientation": orientation, "report": report, "result": result}


def _report_text(report: Dict[str, object]) -> str:
    return "".join(f"{k}={_flatten(v)}\n" for k, v in report.items())


def cmd_solve(args) -> int:
    inst = io.parse_instance(args.instance)
    out = solve_instance(inst, args.algorithm, preprocess=not args.no_preprocess)
    if args.output:
        Path(args.output).write_text(io.emit_orientation_text(inst.graph, out["orientation"]))
    text = _report_text(out["report"])
    if args.report:
        Path(args.report).write_text(text)
    else:
        sys.stdout.write(text)
    if args.csv:
        report = out["report"]
        new = not Path(args.csv).exists()
        with open(args.csv, "a", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            if new:
                writer.writerow(list(report))
            writer.writerow([_flatten(v) for v in report.values()])
    return EXIT_OK


def cmd_verify(args) -> int:
    inst = io.parse_instance(args.instance)
    orientation = io.parse_orientation_text(Path(args.orientation).read_text())
    bad = validate_orientation(inst.graph, orientation)
    if bad is not None:
        sys.stdout.write(f"valid=0\nedge={bad.edge}\nreason={bad.reason}\n")
        return EXIT_VALIDATION
    count, flags = count_satisfied(inst.graph, orientation, inst.requests)
    lines = [f"instance={io.instance_digest(inst)}", "valid=1", f"requests={len(inst.requests)}",
             f"satisfied={count}"]
    if args.verbose:
        lines += [f"request.{i}={s} {t} {int(ok)}" for i, ((s, t), ok) in enumerate(zip(inst.requests, flags))]
    sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


def _write_generated(gen, out: Path, orientation=None) -> None:
    inst = io.Instance(gen.graph, list(gen.requests),
                       paths={i: list(p) for i, p in enumerate(gen.paths)} if gen.paths else None)
    io.emit_instance(inst, out)
    Path(str(out) + ".meta").write_text(io.emit_metadata_text(gen.metadata))
    if orientation is not None:
        Path(str(out) + ".orient").write_text(io.emit_orientation_text(gen.graph, orientation))


def cmd_generate(args) -> int:
    out = Path(args.out)
    if args.kind in ("independent-set-reduction", "dicut-reduction"):
        if not args.input:
            raise InputError(f"{args.kind} needs --input with a 'V E' edge list")
        n, edges = io.parse_edge_list_text(Path(args.input).read_text())
        gen = (gen_from_independent_set if args.kind.startswith("independent") else gen_from_dicut)(n, edges)
        _write_generated(gen, out)
    elif args.kind == "grid-full":
        gen, orientation = gen_grid_full_orientation(args.rows, args.cols)
        _write_generated(gen, out, orientation)
    elif args.kind == "random":
        gen = gen_random_instance(args.n, args.p_directed, args.p_undirected, args.requests, args.seed)
        _write_generated(gen, out)
    else:
        raise InputError(f"unknown kind {args.kind!r}")
    return EXIT_OK


def cmd_preprocess(args) -> int:
    inst = io.parse_instance(args.instance)
    graph, requests, record = contract_cycles(inst.graph, inst.requests)
    io.emit_instance(io.Instance(graph, requests), args.out)
    meta = {
        "vertex_map": " ".join(map(str, record.vertex_map)),
        "directed_origin": " ".join(map(str, record.directed_origin)),
        "undirected_origin": " ".join(map(str, record.undirected_origin)),
        "internal_orientation": " ".join(f"{e}:{a}>{b}" for e, (a, b) in sorted(record.internal_orientation.items())),
        "auto_satisfied": " ".join(map(str, record.auto_satisfied)),
        "contraction_steps": len(record.contraction_steps),
    }
    for k, cycle in enumerate(record.contraction_steps):
        meta[f"step.{k}"] = " ".join(f"{ref.kind}{ref.id}:{a}>{b}" for ref, a, b in cycle.steps)
    Path(str(args.out) + ".record").write_text(io.emit_metadata_text(meta))
    return EXIT_OK


def bench_rows(suite: Path, algorithms: List[str]) -> List[List[str]]:
    rows = []
    ratios: Dict[str, List[float]] = {a: [] for a in algorithms}
    for path in sorted(suite.glob("*.mgo")):
        try:
            inst = io.parse_instance(path)
        except InputError as exc:
            rows += [[path.name, a, f"error: {exc}", "", "", "", "", "", ""] for a in algorithms]
            continue
        try:
            g, r, record = contract_cycles(inst.graph, inst.requests)
            optimum: Optional[int] = solve_exact(g, r).count
        except CapExceeded:
            optimum = None
        for alg in algorithms:
            try:
                rep = solve_instance(inst, alg)["report"]
            except (InputError, ValidationError, CapExceeded, ContractViolation) as exc:
                rows.append([path.name, alg, f"error: {exc}", str(len(inst.requests)), "", "", "", _flatten(optimum), ""])
                continue
            ratio = ""
            if optimum is not None:
                value = 1.0 if optimum == 0 else rep["satisfied"] / optimum
                ratios[alg].append(value)
                ratio = f"{value:.6f}"
            rows.append([path.name, alg, "ok", str(rep["requests"]), str(rep["routable"]), str(rep["unroutable"]),
                         str(rep["satisfied"]), _flatten(optimum), ratio])
    for alg in algorithms:
        vals = ratios[alg]
        mean = f"{sum(vals) / len(vals):.6f}" if vals else ""
        rows.append(["__mean__", alg, "summary", "", "", "", "", "", mean])
    return rows


def cmd_bench(args) -> int:
    algorithms = [a.strip() for a in args.algorithms.split(",") if a.strip()]
    for a in algorithms:
        if a not in ALGORITHMS:
            raise InputError(f"unknown algorithm {a!r}")
    suite = Path(args.suite)
    if not suite.is_dir():
        raise InputError(f"suite directory {suite} does not exist")
    rows = bench_rows(suite, algorithms) if any(suite.glob("*.mgo")) else []
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(BENCH_COLUMNS)
    writer.writerows(rows)
    if args.out:
        Path(args.out).write_text(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mixorient", description="Maximum mixed graph orientation solvers.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="orient an instance")
    p.add_argument("instance")
    p.add_argument("-a", "--algorithm", required=True, choices=ALGORITHMS)
    p.add_argument("-o", "--output", help="orientation file to write")
    p.add_argument("--report", help="write the key=value report here instead of stdout")
    p.add_argument("--csv", help="append the report as a CSV row")
    p.add_argument("--no-preprocess", action="store_true", help="skip cycle contraction")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="count requests satisfied by an orientation file")
    p.add_argument("instance")
    p.add_argument("orientation")
    p.add_argument("-v", "--verbose", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("generate", help="write a generated instance")
    p.add_argument("kind", choices=["independent-set-reduction", "dicut-reduction", "grid-full", "random"])
    p.add_argument("--out", required=True)
    p.add_argument("--input", help="'V E' edge list for the reductions")
    p.add_argument("--rows", type=int, default=3)
    p.add_argument("--cols", type=int, default=3)
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--p-directed", type=float, default=0.1)
    p.add_argument("--p-undirected", type=float, default=0.2)
    p.add_argument("--requests", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("preprocess", help="contract mixed cycles")
    p.add_argument("instance")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_preprocess)

    p = sub.add_parser("bench", help="run algorithms over a directory of .mgo instances")
    p.add_argument("suite")
    p.add_argument("-a", "--algorithms", default="greedy_cuberoot,greedy_delta,treewidth,fvs")
    p.add_argument("--out")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (InputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
