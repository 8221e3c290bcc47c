"""
Command-line entry point: `python -m app.cli <command> ...`

Exit codes: 0 success, 1 failed verification, 2 usage error.
Record-shaped results (relation reports, audits, image descriptors, the
Lickorish comparison) are always printed as JSON; everything else prints its
text grammar unless --json is given.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional

from pydantic import BaseModel

from app.core.config import load_env_file, settings
from app.core.exceptions import BmwSquareError, InvalidInput
from app.models import (
    SCHEMA_MODELS, BijectionResponse, CountResponse, DiagramResponse, DimAuditResponse, EnumerationResponse,
    GroupDescriptorModel, ImageClassifyResponse, InvariantResponse, LickorishResponse, RelationKind,
    RelationReport, Scalar, SpanResponse,
)
from app.services.bijection import compare, forward, inverse
from app.services.diagrams import in_gamma, in_lambda, predecessors, star
from app.services.images import classify_image, enumerate_projective_group
from app.services.invariants import (
    InvariantValue, bracket_oracle, closure_components, jones, kauffman_special, lickorish_check,
)
from app.services.pathmodel import markov_trace, represent_word, verify_tl_relations
from app.services.squares import dim_audit, generated_dimension, verify_bmw_relations
from app.services.tableaux import count_osc, count_tableaux, enum_osc, enum_tableaux
from app.services.verification import verify_all
from app.utils.text_formats import (
    parse_diagram, parse_level, parse_osc, parse_steps, parse_word, render_diagrams, render_level,
    render_osc, render_word,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse that raises instead of exiting, so run() owns the exit code"""

    def error(self, message):
        raise UsageError(message)


def _print(text: str) -> None:
    sys.stdout.write(text + "\n")


def _emit(args, model: BaseModel, text: Optional[str] = None) -> None:
    if args.json or text is None:
        _print(model.model_dump_json(indent=2))
    else:
        _print(text)


# -- handlers ------------------------------------------------------------------


def cmd_yd(args) -> int:
    d, ell = parse_diagram(args.shape), parse_level(args.ell)
    response = DiagramResponse(op=args.op, shape=str(d), ell=render_level(ell), m=args.m)
    if args.op in ("in-lambda", "predecessors") and args.m is None:
        raise UsageError(f"yd {args.op} needs --m")
    if args.op == "in-lambda":
        response.member = in_lambda(d, args.m, ell)
        text = str(response.member).lower()
    elif args.op == "in-gamma":
        response.member = in_gamma(d, ell)
        text = str(response.member).lower()
    elif args.op == "star":
        response.result = str(star(d, ell))
        text = response.result
    else:
        response.results = render_diagrams(predecessors(args.m, d, ell))
        text = " ".join(response.results)
    _emit(args, response, text)
    return EXIT_OK


def cmd_tab(args) -> int:
    d, ell = parse_diagram(args.shape), parse_level(args.ell)
    items = [str(t) for t in enum_tableaux(d, ell)] if args.op == "enum" else None
    response = CountResponse(
        kind="tab", shape=str(d), ell=render_level(ell), length=d.size, count=count_tableaux(d, ell), items=items
    )
    _emit(args, response, "\n".join(items) if items is not None else str(response.count))
    return EXIT_OK


def cmd_osc(args) -> int:
    d, ell = parse_diagram(args.shape), parse_level(args.ell)
    if args.length < 0:
        raise UsageError("--length must be non-negative")
    items = [render_osc(o) for o in enum_osc(args.length, d, ell)] if args.op == "enum" else None
    response = CountResponse(
        kind="osc", shape=str(d), ell=render_level(ell), length=args.length,
        count=count_osc(args.length, d, ell), items=items,
    )
    _emit(args, response, "\n".join(items) if items is not None else str(response.count))
    return EXIT_OK


def cmd_bij(args) -> int:
    if args.op == "inverse":
        if args.osc is None:
            raise UsageError("bij inverse needs --osc")
        o, ell = parse_osc(args.osc), parse_level(args.ell)
        t_lambda, t_mu = inverse(o, ell)
        response = BijectionResponse(op="inverse", ell=render_level(ell), t1=str(t_lambda), t2=str(t_mu), osc=render_osc(o))
        _emit(args, response, f"{t_lambda} {t_mu}")
        return EXIT_OK

    if args.t1 is None or args.t2 is None:
        raise UsageError(f"bij {args.op} needs --t1 and --t2")
    t_lambda, t_mu = parse_steps(args.t1), parse_steps(args.t2)
    if args.op == "compare":
        comparison = compare(t_lambda, t_mu)
        response = BijectionResponse(op="compare", t1=str(t_lambda), t2=str(t_mu), comparison=comparison)
        _emit(args, response, comparison.value)
        return EXIT_OK
    ell = parse_level(args.ell)
    o = forward(t_lambda, t_mu, ell)
    response = BijectionResponse(op="forward", ell=render_level(ell), t1=str(t_lambda), t2=str(t_mu), osc=render_osc(o))
    _emit(args, response, render_osc(o))
    return EXIT_OK


def _report(args, kind: RelationKind, m: int, ell, checks: Dict[str, bool]) -> int:
    report = RelationReport.from_checks(kind, m, ell, checks)
    _emit(args, report)
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_tl(args) -> int:
    ell = parse_level(args.ell)
    if args.op == "trace":
        word = parse_word(args.strands, args.word)
        value = markov_trace(represent_word(word, ell), word.strands, ell)
        _emit(args, Scalar.from_value(value), value.to_text())
        return EXIT_OK
    return _report(args, RelationKind.tl, args.m, ell, verify_tl_relations(args.m, ell, args.samples, settings.seed))


def cmd_square(args) -> int:
    ell = parse_level(args.ell)
    if args.op == "audit":
        response = DimAuditResponse.from_audit(dim_audit(args.m, ell))
        _emit(args, response)
        return EXIT_OK if response.agrees else EXIT_FAILED
    if args.op == "span":
        response = SpanResponse.from_result(args.m, ell, generated_dimension(args.m, ell, settings.span_prime_floor))
        _emit(args, response)
        return EXIT_OK if response.certified else EXIT_FAILED
    return _report(args, RelationKind.bmw, args.m, ell, verify_bmw_relations(args.m, ell, args.samples, settings.seed))


def _invariant(args, compute: Callable) -> int:
    word = parse_word(args.strands, args.word)
    value = compute(word)
    _emit(args, InvariantResponse.from_invariant(value, render_word(word)), value.text())
    return EXIT_OK


def cmd_jones(args) -> int:
    ell = parse_level(args.ell)
    return _invariant(args, lambda word: jones(word, ell))


def cmd_kauffman(args) -> int:
    ell = parse_level(args.ell)
    return _invariant(args, lambda word: kauffman_special(word, ell))


def cmd_oracle(args) -> int:
    def compute(word):
        value = bracket_oracle(word, args.cap)
        return InvariantValue("oracle", value, word.strands, word.exponent_sum, closure_components(word))
    return _invariant(args, compute)


def cmd_lickorish(args) -> int:
    word = parse_word(args.strands, args.word)
    response = LickorishResponse.from_result(lickorish_check(word), render_word(word))
    _emit(args, response)
    return EXIT_OK if response.equal else EXIT_FAILED


def cmd_image(args) -> int:
    nu, ell = parse_diagram(args.shape), parse_level(args.ell)
    if args.op == "classify":
        descriptor = classify_image(args.m, nu, ell)
        _emit(args, ImageClassifyResponse(
            m=args.m, shape=str(nu), ell=render_level(ell), descriptor=GroupDescriptorModel.from_descriptor(descriptor)
        ))
        return EXIT_OK
    result = enumerate_projective_group(args.m, nu, ell, budget=args.budget)
    _emit(args, EnumerationResponse.from_result(args.m, str(nu), ell, result))
    return EXIT_FAILED if result.status in ("mismatch", "inconclusive") else EXIT_OK


def cmd_verify_all(args) -> int:
    only = None
    if args.only:
        try:
            only = [int(part) for part in args.only.split(",")]
        except ValueError:
            raise UsageError(f"--only takes comma-separated suite numbers, got {args.only!r}")
    report = verify_all(quick=args.quick, only=only)
    if args.json:
        _print(report.model_dump_json(indent=2))
    else:
        for suite in report.suites:
            status = "PASS" if suite.passed else "FAIL"
            _print(f"{suite.index:2d} {status} {suite.name} ({suite.elapsed_seconds:.1f}s): {suite.detail}")
        _print(f"{'all suites passed' if report.passed else 'verification failed'} in {report.elapsed_seconds:.1f}s")
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_serve(args) -> int:
    import uvicorn

    load_env_file()
    uvicorn.run("main:app", host=args.host or settings.host, port=args.port or settings.port,
                log_level=settings.log_level.lower())
    return EXIT_OK


def write_schemas(out: Path) -> List[Path]:
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for name, model in SCHEMA_MODELS.items():
        path = out / f"{name}.json"
        path.write_text(json.dumps(model.model_json_schema(), indent=2, sort_keys=True) + "\n")
        written.append(path)
    return written


def cmd_schemas(args) -> int:
    for path in write_schemas(Path(args.out)):
        _print(str(path))
    return EXIT_OK


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the JSON model instead of text")

    parser = _Parser(prog="bmwsq", description="Exact BMW / symmetric-square computations")
    parser.add_argument("--seed", type=int, help="seed for randomized checks (default BMWSQ_SEED)")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def command(name: str, handler, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(handler=handler)
        return p

    def add_word(p):
        p.add_argument("--strands", type=int, required=True)
        p.add_argument("--word", default="", help='whitespace-separated letters, e.g. "1 -2 1"')

    p = command("yd", cmd_yd, "diagram membership, star and predecessors")
    p.add_argument("op", choices=["in-lambda", "in-gamma", "star", "predecessors"])
    p.add_argument("--shape", required=True)
    p.add_argument("--ell", default="inf")
    p.add_argument("--m", type=int)

    p = command("tab", cmd_tab, "restricted two-row tableaux")
    p.add_argument("op", choices=["count", "enum"])
    p.add_argument("--shape", required=True)
    p.add_argument("--ell", default="inf")

    p = command("osc", cmd_osc, "restricted oscillating tableaux")
    p.add_argument("op", choices=["count", "enum"])
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--shape", required=True)
    p.add_argument("--ell", default="inf")

    p = command("bij", cmd_bij, "the tableau-pair bijection")
    p.add_argument("op", choices=["forward", "inverse", "compare"])
    p.add_argument("--t1")
    p.add_argument("--t2")
    p.add_argument("--osc")
    p.add_argument("--ell", default="inf")

    p = command("tl", cmd_tl, "Temperley-Lieb path model")
    p.add_argument("op", choices=["trace", "verify"])
    p.add_argument("--ell", default="inf")
    p.add_argument("--strands", type=int)
    p.add_argument("--word", default="")
    p.add_argument("--m", type=int)
    p.add_argument("--samples", type=int, default=5)

    p = command("square", cmd_square, "symmetric square realization")
    p.add_argument("op", choices=["audit", "verify", "span"])
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--ell", default="inf")
    p.add_argument("--samples", type=int, default=3)

    p = command("jones", cmd_jones, "Jones polynomial of a braid closure")
    add_word(p)
    p.add_argument("--ell", default="inf")

    p = command("kauffman", cmd_kauffman, "Kauffman specialization K(q^3, q)")
    add_word(p)
    p.add_argument("--ell", default="inf")

    p = command("lickorish", cmd_lickorish, "K(q^3, q) = J(q)^2 check")
    add_word(p)

    p = command("oracle", cmd_oracle, "Kauffman bracket state sum")
    add_word(p)
    p.add_argument("--cap", type=int)

    p = command("image", cmd_image, "projective images of the braid group")
    p.add_argument("op", choices=["classify", "verify"])
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--shape", required=True)
    p.add_argument("--ell", required=True)
    p.add_argument("--budget", type=int)

    p = command("verify-all", cmd_verify_all, "run the acceptance suites")
    p.add_argument("--quick", action="store_true")
    p.add_argument("--only", help="comma-separated suite numbers")

    p = command("serve", cmd_serve, "start the HTTP API")
    p.add_argument("--host")
    p.add_argument("--port", type=int)

    p = command("schemas", cmd_schemas, "write the JSON schemas of every output model")
    p.add_argument("--out", default="docs/schemas")
    return parser


def _require_flags(args) -> None:
    if args.command == "tl":
        if args.op == "trace" and args.strands is None:
            raise UsageError("tl trace needs --strands")
        if args.op == "verify" and args.m is None:
            raise UsageError("tl verify needs --m")


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _require_flags(args)
        if args.seed is not None:
            settings.seed = args.seed
        return args.handler(args)
    except UsageError as e:
        sys.stderr.write(f"usage error: {e}\n")
        return EXIT_USAGE
    except InvalidInput as e:
        sys.stderr.write(f"invalid input: {e}\n")
        return EXIT_USAGE
    except BmwSquareError as e:
        sys.stderr.write(f"{type(e).__name__}: {e}\n")
        return EXIT_FAILED


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
