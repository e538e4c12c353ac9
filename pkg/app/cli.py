"""Command-line entry point: ``sl3-webs <command> ...``.

Results go to stdout, logs to stderr. Exit status is 0 on success, 1 for bad
input and 2 for internal consistency failures.
"""

import argparse
import json
import sys
from collections.abc import Sequence
from pathlib import Path

import structlog
from pydantic import BaseModel

from app.core.config import settings
from app.core.exceptions import AppException, WebFormatError
from app.core.logging import configure_logging
from app.models.web import Web
from app.schemas.web_schema import parse_web, serialize_web
from app.services.analysis_service import AnalysisService
from app.services.corpus import EXAMPLE_NAMES, example

logger = structlog.get_logger()


def _read_web(path: str) -> Web:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise WebFormatError(f"cannot read {path}: {exc.strerror}") from exc
    except UnicodeDecodeError as exc:
        raise WebFormatError(f"{path} is not UTF-8 text: {exc.reason}") from exc
    return parse_web(text)


def _dump(model: BaseModel | Sequence[BaseModel]) -> str:
    data = (
        model.model_dump(mode="json", exclude_none=True)
        if isinstance(model, BaseModel)
        else [m.model_dump(mode="json") for m in model]
    )
    return json.dumps(data, indent=2, sort_keys=True)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sl3-webs", description="Exact sl3 spider evaluation and SU(3) web checks."
    )
    parser.add_argument(
        "--seed",
        type=int,
        default=settings.resolve.default_seed,
        help="seed for every random choice (default %(default)s)",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    validate = commands.add_parser("validate", help="list structural violations")
    validate.add_argument("web")

    faces = commands.add_parser("faces", help="face sizes and anchors")
    faces.add_argument("web")
    faces.add_argument("--euler", action="store_true", help="print the Euler audit")

    color = commands.add_parser("color", help="natural Z/3 edge coloring")
    color.add_argument("web")
    color.add_argument("--base-face", default=None, help="anchor of the face labelled 0")
    color.add_argument("--count", action="store_true", help="count all proper colorings")

    spider = commands.add_parser("spider", help="spider polynomial")
    spider.add_argument("web")
    spider.add_argument("--policy", default="default", help="default, random or random:<seed>")
    spider.add_argument("--tree", type=Path, default=None, help="write the tree as DOT")
    spider.add_argument(
        "--geodesics", type=Path, default=None, help="write geodesics and traces as JSON"
    )

    numeric = commands.add_parser("numeric", help="SU(3) representation checks")
    numeric.add_argument("web")
    numeric.add_argument("--seeds", type=int, default=1, help="number of sampled points")
    numeric.add_argument(
        "--pin", action="append", default=[], metavar="EDGE=A,B,C", help="fix an edge line"
    )
    numeric.add_argument("--dim", action="store_true", help="estimate the local dimension")
    numeric.add_argument(
        "--census",
        type=int,
        nargs="?",
        const=32,
        default=0,
        metavar="SAMPLES",
        help="classify squares over random points (default 32 samples)",
    )

    examples = commands.add_parser("examples", help="write the built-in webs")
    examples.add_argument("out", type=Path, nargs="?", default=Path("."))
    return parser


def _run(args: argparse.Namespace, service: AnalysisService) -> int:
    match args.command:
        case "validate":
            validation = service.validate(_read_web(args.web))
            print(_dump(validation))
            return 0 if validation.valid else 1
        case "faces":
            faces = service.faces(_read_web(args.web), euler=args.euler)
            for face in faces.faces:
                print(f"{face.size} {face.anchor}")
            if args.euler:
                print(f"euler_characteristic {faces.euler_characteristic}")
                print(f"euler_audit {faces.euler_audit}")
        case "color":
            print(_dump(service.color(_read_web(args.web), args.base_face, args.count)))
        case "spider":
            evaluation = service.spider(
                _read_web(args.web),
                policy=args.policy,
                seed=args.seed,
                with_geodesics=args.geodesics is not None,
                with_tree=args.tree is not None,
            )
            if args.tree is not None and evaluation.tree is not None:
                args.tree.write_text(evaluation.tree.dot, encoding="utf-8")
            if args.geodesics is not None and evaluation.geodesics is not None:
                args.geodesics.write_text(
                    _dump(evaluation.geodesics) + "\n", encoding="utf-8"
                )
            print(evaluation.polynomial)
        case "numeric":
            sampled = service.numeric(
                _read_web(args.web),
                seeds=range(args.seed, args.seed + max(args.seeds, 1)),
                pins=args.pin,
                dimension=args.dim,
                census=args.census,
            )
            print(_dump(sampled))
        case "examples":
            args.out.mkdir(parents=True, exist_ok=True)
            for name in EXAMPLE_NAMES:
                target = args.out / f"{name}.json"
                target.write_text(serialize_web(example(name)), encoding="utf-8")
                print(target)
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    configure_logging(settings.app)
    args = _build_parser().parse_args(argv)
    service = AnalysisService(numeric=settings.numeric, resolve=settings.resolve)
    try:
        return _run(args, service)
    except AppException as exc:
        logger.error("Command failed", command=args.command, code=exc.code)
        print(f"{exc.code}: {exc.message}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
