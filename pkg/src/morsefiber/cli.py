"""Command-line interface tying the engine together for batch use and serving.

Exit codes: 0 success, 1 data/validation failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys

from . import gf2
from .dgvf import (
    build_consistent_dgvf,
    check_acyclic,
    check_consistent,
    check_matching,
    parse_dgvf,
)
from .errors import MorsefiberError, NonPositiveSlopeError
from .filtration import parse_filtration
from .homology import line_persistence_reduction
from .jsonio import canonical_json, fiber_payload
from .line_fiber import fiber_diagram, pushed_criticals, signature
from .lines import Line, parse_line_literal
from .query_cache import FiberCache
from .rank_invariant import RankEngine
from .rationals import format_vector, parse_vector


def _load_filtration(path: str):
    with open(path, encoding="utf-8") as fh:
        return parse_filtration(fh.read())


def _load_engine(args) -> RankEngine:
    filtration = _load_filtration(args.input)
    field = None
    if args.dgvf:
        with open(args.dgvf, encoding="utf-8") as fh:
            field = parse_dgvf(fh.read())
    return RankEngine(filtration, field)


def _parse_line(parser: argparse.ArgumentParser, args, n: int) -> Line:
    try:
        base = parse_vector(args.base, n)
        direction = parse_vector(args.dir, n)
        return Line(base=base, direction=direction)
    except NonPositiveSlopeError:
        parser.error("direction must be strictly positive")
    except ValueError as exc:
        parser.error(str(exc))


def _parse_dims(parser, args, max_dim: int) -> list[int]:
    if not args.dim:
        return list(range(max(max_dim, 0) + 1))
    dims = []
    for chunk in args.dim:
        for tok in chunk.split(","):
            try:
                dims.append(int(tok))
            except ValueError:
                parser.error(f"--dim expects integers, got {tok!r}")
    return sorted(set(dims))


def _emit(args, payload, text_renderer) -> None:
    if args.format == "json":
        print(canonical_json(payload))
    else:
        print(text_renderer(payload))


def cmd_validate(parser, args) -> int:
    filtration = _load_filtration(args.input)
    report = {
        "ok": True,
        "n": filtration.n,
        "simplexCount": len(filtration),
        "maxDim": filtration.max_dim,
    }
    if args.dgvf:
        with open(args.dgvf, encoding="utf-8") as fh:
            field = parse_dgvf(fh.read())
        violations = check_matching(filtration.simplices, field)
        acyclic = check_acyclic(filtration.simplices, field)
        consistent = check_consistent(filtration, field)
        report.update(
            {
                "matchingViolations": violations,
                "acyclic": acyclic,
                "consistent": consistent,
            }
        )
        report["ok"] = not violations and acyclic and consistent
    _emit(
        args,
        report,
        lambda r: "\n".join(f"{k}: {v}" for k, v in sorted(r.items())),
    )
    return 0 if report["ok"] else 1


def cmd_dgvf(parser, args) -> int:
    filtration = _load_filtration(args.input)
    field = build_consistent_dgvf(filtration)
    text = field.to_dgvf()
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_critical(parser, args) -> int:
    engine = _load_engine(args)
    payload = {
        "C": [format_vector(g) for g in sorted(engine.cbar.base)],
        "Cbar": [format_vector(g) for g in engine.cbar],
    }
    _emit(
        args,
        payload,
        lambda p: "C:    "
        + " ".join("(" + ",".join(g) + ")" for g in p["C"])
        + "\nCbar: "
        + " ".join("(" + ",".join(g) + ")" for g in p["Cbar"]),
    )
    return 0


def cmd_rank(parser, args) -> int:
    engine = _load_engine(args)
    n = engine.filtration.n
    try:
        u = parse_vector(args.u, n)
        v = parse_vector(args.v, n)
    except ValueError as exc:
        parser.error(str(exc))
    value = engine.rank(args.dim, u, v)
    _emit(args, {"rank": value}, lambda p: str(p["rank"]))
    return 0


def cmd_fiber(parser, args) -> int:
    engine = _load_engine(args)
    line = _parse_line(parser, args, engine.filtration.n)
    dims = _parse_dims(parser, args, engine.filtration.max_dim)
    diagram = fiber_diagram(engine, line, dims)
    if args.oracle:
        oracle = line_persistence_reduction(engine.filtration, line, dims)
        if diagram.multiset() != oracle.multiset():
            sys.stderr.write("fiber diagram disagrees with the reduction oracle\n")
            sys.stderr.write(f"fast path: {diagram.multiset()}\n")
            sys.stderr.write(f"oracle:    {oracle.multiset()}\n")
            return 1
    class_id = signature(engine.cbar, line).class_id()
    payload = fiber_payload(class_id, diagram, pushed_criticals(engine.cbar, line))
    _emit(args, payload, _fiber_text)
    return 0


def _fiber_text(payload) -> str:
    lines = [f"class {payload['classId']}"]
    for p in payload["points"]:
        death = p["deathT"]
        lines.append(
            f"dim {p['dim']}: [{p['birthT']}, {death}) x{p['multiplicity']}"
        )
    if not payload["points"]:
        lines.append("(empty diagram)")
    return "\n".join(lines)


def cmd_classify(parser, args) -> int:
    engine = _load_engine(args)
    line = _parse_line(parser, args, engine.filtration.n)
    sig = signature(engine.cbar, line)
    payload = {"classId": sig.class_id(), "signature": sig.canonical_encoding()}
    _emit(args, payload, lambda p: p["classId"])
    return 0


def cmd_serve(parser, args) -> int:
    import uvicorn

    from .service import build_app

    engine = _load_engine(args)
    cache = FiberCache(engine)
    if args.snapshot:
        import os

        if os.path.exists(args.snapshot):
            loaded = cache.load_snapshot(args.snapshot)
            print(f"loaded {loaded} cached classes from {args.snapshot}", file=sys.stderr)
    if args.seeds:
        with open(args.seeds, encoding="utf-8") as fh:
            seed_lines = []
            for raw in fh:
                stripped = raw.split("#", 1)[0].strip()
                if stripped:
                    seed_lines.append(parse_line_literal(stripped, engine.filtration.n))
        stats = cache.precompute(seed_lines)
        print(
            f"precompute: {stats.classes_discovered} classes, "
            f"{stats.duplicates} duplicates, {len(stats.errors)} errors",
            file=sys.stderr,
        )
        for err in stats.errors:
            print(f"  {err}", file=sys.stderr)
        if args.snapshot:
            cache.save_snapshot(args.snapshot)
    app = build_app(cache, snapshot_path=args.snapshot)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="morsefiber",
        description=(
            "Rank invariant and line-fibered persistence diagrams of "
            "multi-parameter filtrations via discrete Morse critical values "
            f"(gf2 backend: {gf2.backend_name()})"
        ),
        epilog=(
            "environment: MF_CBAR_CAP overrides the closure-size cap "
            "(default 50000); MF_PURE_PYTHON=1 forces the pure-Python kernels"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("input", help="path to an .ocf filtration file")
        p.add_argument("--dgvf", help="path to a .dgvf matching file", default=None)
        p.add_argument(
            "--format", choices=["json", "text"], default="json", help="output format"
        )

    p = sub.add_parser("validate", help="validate a filtration and optional matching")
    common(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("dgvf", help="build a consistent gradient field and emit .dgvf")
    common(p)
    p.add_argument("--output", "-o", default=None, help="write to file instead of stdout")
    p.set_defaults(func=cmd_dgvf)

    p = sub.add_parser("critical", help="emit critical values and their lub-closure")
    common(p)
    p.set_defaults(func=cmd_critical)

    p = sub.add_parser("rank", help="rank of the map between two grades")
    common(p)
    p.add_argument("--u", required=True, help="lower grade, e.g. 1/2,1/2")
    p.add_argument("--v", required=True, help="upper grade, e.g. 2,2")
    p.add_argument("--dim", type=int, required=True, help="homology degree")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("fiber", help="persistence diagram along a line")
    common(p)
    p.add_argument("--base", required=True, help="line base point, e.g. 1,0")
    p.add_argument("--dir", required=True, help="line direction, e.g. 1,1")
    p.add_argument("--dim", action="append", default=None, help="degree(s), repeatable or comma-separated")
    p.add_argument(
        "--oracle",
        action="store_true",
        help="also run the matrix-reduction oracle and fail on mismatch",
    )
    p.set_defaults(func=cmd_fiber)

    p = sub.add_parser("classify", help="signature hash of a line's equivalence class")
    common(p)
    p.add_argument("--base", required=True)
    p.add_argument("--dir", required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("serve", help="serve the HTTP JSON API")
    common(p)
    p.add_argument("--port", type=int, default=8742)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--seeds", default=None, help="file of line literals to precompute")
    p.add_argument("--snapshot", default=None, help="JSON cache snapshot to load/save")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(parser, args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except MorsefiberError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
