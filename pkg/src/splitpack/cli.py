"""Command-line front end: splitpack decide|pack|approx|verify|gen.

Exit codes: 0 success (or verification pass), 1 verification failure,
2 invalid input, 3 unsupported container.
"""

import argparse
import json
import random
import sys

from .documents import (
    InstanceDocument,
    PackingDocument,
    container_to_dict,
    decide,
    parse_container_spec,
)
from .errors import (
    DocumentError,
    InvalidParameterError,
    MalformedTreeError,
    OverCapacityError,
    SplitPackError,
    UnsupportedContainerError,
)
from .packer import PackRequest, min_container, pack, packable_area
from .splitting import CircleSet
from .svg import render_packing_svg
from .verifier import verify

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_INVALID = 2
EXIT_UNSUPPORTED = 3


def _read_source(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write_output(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _load_json(path: str):
    try:
        return json.loads(_read_source(path))
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON in {path!r}: {exc}") from exc
    except OSError as exc:
        raise DocumentError(f"cannot read {path!r}: {exc}") from exc


def _load_instance(args) -> InstanceDocument:
    container = parse_container_spec(args.container) if args.container else None
    if args.circles:
        data = _load_json(args.circles)
        if isinstance(data, list):
            data = {"circles": data}
            if container is None:
                raise DocumentError("a bare circle list needs --container")
        instance = InstanceDocument.from_dict(data, container=container)
    else:
        if container is None:
            raise DocumentError("either --circles or --container is required")
        instance = InstanceDocument(container=container, areas=[])
    if args.min_size is not None:
        instance.min_size = args.min_size
    return instance


def _emit_packing(doc: PackingDocument, args) -> None:
    if args.format == "svg":
        _write_output(render_packing_svg(doc), args.out)
    else:
        _write_output(doc.to_json(), args.out)


def _cmd_decide(args) -> int:
    instance = _load_instance(args)
    packable_area(instance.container)  # raises on unsupported containers
    result = decide(instance)
    _write_output(json.dumps(result, indent=2), args.out)
    return EXIT_OK


def _cmd_pack(args) -> int:
    instance = _load_instance(args)
    root = pack(instance.to_request())
    doc = PackingDocument.from_tree(root, instance.container)
    _emit_packing(doc, args)
    return EXIT_OK


def _cmd_approx(args) -> int:
    instance = _load_instance(args)
    circles = CircleSet.from_areas(instance.areas)
    container = min_container(circles, instance.container)
    root = pack(PackRequest(container=container, circles=circles, min_size=instance.min_size))
    doc = PackingDocument.from_tree(root, container)
    if args.format == "svg":
        _write_output(render_packing_svg(doc), args.out)
        return EXIT_OK
    result = {
        "container": container_to_dict(container),
        "container_area": container.area,
        "lower_bound_area": circles.combined,
        "ratio": container.area / circles.combined,
        "packing": doc.to_dict(),
    }
    _write_output(json.dumps(result, indent=2), args.out)
    return EXIT_OK


def _cmd_verify(args) -> int:
    data = _load_json(args.packing)
    doc = PackingDocument.from_dict(data)
    root = doc.to_tree()
    report = verify(root, tolerance=args.tolerance)
    _write_output(report.summary(), args.out)
    return EXIT_OK if report.passed else EXIT_VERIFY_FAIL


def _generate_areas(n: int, total: float, distribution: str, seed: int) -> list[float]:
    if distribution == "equal":
        return [total / n] * n
    if distribution == "geometric":
        # fixed three-decade spread between largest and smallest
        q = (1e-3) ** (1.0 / max(n - 1, 1))
        weights = [q**i for i in range(n)]
    elif distribution == "uniform":
        rng = random.Random(seed)
        weights = [rng.random() + 1e-9 for _ in range(n)]
    else:
        raise DocumentError(f"unknown distribution {distribution!r}")
    scale = total / sum(weights)
    return [w * scale for w in weights]


def _cmd_gen(args) -> int:
    if args.count < 1:
        raise InvalidParameterError("--count must be at least 1")
    if not (0.0 < args.ratio <= 1.0):
        raise InvalidParameterError("--ratio must lie in (0, 1]")
    container = parse_container_spec(args.container)
    capacity = packable_area(container)
    areas = _generate_areas(args.count, args.ratio * capacity, args.distribution, args.seed)
    instance = InstanceDocument(container=container, areas=areas)
    _write_output(instance.to_json(), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="splitpack",
        description="Pack circle sets into squares and non-acute triangles "
        "at the provably optimal worst-case density.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_instance_flags(p):
        p.add_argument("--container", help="container spec: square:SIDE or triangle:X,Y,Z")
        p.add_argument("--circles", help="instance JSON file, or - for stdin")
        p.add_argument("--min-size", dest="min_size", type=float, default=None,
                       help="declared minimum circle area")
        p.add_argument("--out", help="output file (default stdout)")

    p = sub.add_parser("decide", help="sufficient-condition feasibility check")
    add_instance_flags(p)
    p.set_defaults(func=_cmd_decide)

    p = sub.add_parser("pack", help="compute a packing")
    add_instance_flags(p)
    p.add_argument("--format", choices=("json", "svg"), default="json")
    p.set_defaults(func=_cmd_pack)

    p = sub.add_parser("approx", help="smallest guaranteed container for a circle set")
    add_instance_flags(p)
    p.add_argument("--format", choices=("json", "svg"), default="json")
    p.set_defaults(func=_cmd_approx)

    p = sub.add_parser("verify", help="independently validate a packing document")
    p.add_argument("packing", nargs="?", default="-", help="packing JSON file, or - for stdin")
    p.add_argument("--tolerance", type=float, default=None,
                   help="slack tolerance (default 1e-9 x container diameter)")
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("gen", help="generate a deterministic test instance")
    p.add_argument("--container", default="square:1", help="container spec (default square:1)")
    p.add_argument("--count", "-n", type=int, required=True, help="number of circles")
    p.add_argument("--ratio", type=float, default=1.0,
                   help="combined area as a fraction of the packable area (default 1.0)")
    p.add_argument("--distribution", choices=("equal", "geometric", "uniform"), default="equal")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(func=_cmd_gen)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UnsupportedContainerError as exc:
        print(f"error: unsupported container: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except OverCapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (InvalidParameterError, DocumentError, MalformedTreeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except SplitPackError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


def entrypoint() -> None:
    raise SystemExit(main())
