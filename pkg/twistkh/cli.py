# ruff: noqa: TRY003, EM102
"""Command line module.

Reads tangle diagram files, builds and verifies structures, pairs them,
reduces them, moves weights and writes the fixture diagrams. Exit codes are
0 on success, 1 when a verification fails, 2 on bad input and 3 when a
structure is larger than ``--max-states``.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path
from typing import IO, TYPE_CHECKING, Any

from pydantic import ValidationError

from twistkh import __version__, api, exceptions, fixtures, sqlite_cache, type_a, type_d
from twistkh.diagram import TangleDiagram, parse
from twistkh.field import Polynomial
from twistkh.pairing import compare, global_identification
from twistkh.reduce import closed_form, compare_structures, verify_cancellation
from twistkh.schemas.job import Job
from twistkh.schemas.report import VerificationReport

if TYPE_CHECKING:
    from twistkh.schemas import BaseModel
    from twistkh.session import Session

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3


def _read(path: str) -> TangleDiagram:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as error:
        raise exceptions.InputError(f"cannot read {path}: {error.strerror}") from error
    return parse(text)


def _guard(job: Job, count: int, what: str) -> None:
    if count > job.max_states:
        raise exceptions.StateBudgetExceeded(f"{what} has {count} states, more than --max-states {job.max_states}")


def _emit(stream: IO[str], job: Job, document: BaseModel | dict[str, Any], text: str) -> None:
    if job.json_output:
        if isinstance(document, dict):
            stream.write(json.dumps(document, indent=2, sort_keys=True))
        else:
            stream.write(document.model_dump_json(by_alias=True, indent=2))
        stream.write("\n")
    else:
        stream.write(text.rstrip("\n") + "\n")


def _describe_report(report: VerificationReport) -> str:
    status = "PASS" if report.passed else "FAIL"
    lines = [f"{status} {report.name} ({report.checked} checked)"]
    lines.extend(f"  {f.source} -> {f.target}: {f.detail}" for f in report.failures)
    return "\n".join(lines)


def _describe_structure(structure: type_d.TypeDStructure) -> str:
    document = structure.to_document()
    lines = [f"{len(document.states)} states, {len(document.terms)} terms"]
    lines.extend(f"  [{s.id}] {s.label}  zeta={s.zeta}" for s in document.states)
    lines.extend(f"  {t.source} -> {t.target}: ({t.coeff}) {t.generator}" for t in document.terms)
    return "\n".join(lines)


def _describe_ranks(ranks: dict[str, int]) -> str:
    if not ranks:
        return "homology: 0"
    return "\n".join(f"zeta {z}: {r}" for z, r in ranks.items())


def _build_d(session: Session, job: Job, stream: IO[str]) -> int:
    diagram = _read(job.inputs[0])
    _guard(job, len(type_d.build_states(diagram)), "type D structure")
    structure = session.type_d(diagram)
    _emit(stream, job, structure.to_document(), _describe_structure(structure))
    return EXIT_OK


def _build_a(session: Session, job: Job, stream: IO[str]) -> int:
    diagram = _read(job.inputs[0])
    _guard(job, len(type_a.build_states(diagram)), "type A structure")
    structure = session.type_a(diagram)
    document = structure.to_document()
    lines = [f"{len(document.states)} states, {len(document.actions)} actions"]
    lines.extend(f"  [{s.id}] {s.label}  zeta={s.zeta}" for s in document.states)
    for action in document.actions:
        outputs = " + ".join(f"({coeff}) [{target}]" for target, coeff in action.outputs) or "0"
        lines.append(f"  m2([{action.state}], {action.generator}) = {outputs}")
    _emit(stream, job, document, "\n".join(lines))
    return EXIT_OK


def _verify(session: Session, job: Job, stream: IO[str]) -> int:
    diagram = _read(job.inputs[0])
    if job.structure == "d":
        _guard(job, len(type_d.build_states(diagram)), "type D structure")
        structure = session.type_d(diagram)
        report = type_d.verify_structure(structure).merge(type_d.verify_grading(structure))
    else:
        _guard(job, len(type_a.build_states(diagram)), "type A structure")
        report = type_a.verify_Ainf(session.type_a(diagram))
    _emit(stream, job, report, _describe_report(report))
    return EXIT_OK if report.passed else EXIT_FAILED


def _pair(session: Session, job: Job, stream: IO[str]) -> int:
    left, right = (_read(path) for path in job.inputs)
    _guard(job, len(type_a.build_states(left)), "type A structure")
    _guard(job, len(type_d.build_states(right)), "type D structure")
    box = session.pair(left, right)
    report = box.check_square_zero()
    document: dict[str, Any] = {"complex": box.to_report().model_dump(by_alias=True), "report": report.model_dump()}
    lines = [f"{len(box)} generators", _describe_report(report)]
    passed = report.passed
    if job.compare_oracle:
        oracle = session.oracle(left, right)
        isomorphic = compare(box, oracle, global_identification(box, oracle))
        document["isomorphic"] = isomorphic
        lines.append(f"isomorphic: {str(isomorphic).lower()}")
        passed = passed and isomorphic
    _emit(stream, job, document, "\n".join(lines))
    return EXIT_OK if passed else EXIT_FAILED


def _homology(session: Session, job: Job, stream: IO[str]) -> int:
    left, right = (_read(path) for path in job.inputs)
    if not job.oracle:
        _guard(job, len(type_a.build_states(left)), "type A structure")
        _guard(job, len(type_d.build_states(right)), "type D structure")
    ranks = {str(z): r for z, r in sorted(session.homology(left, right, oracle=job.oracle).items())}
    _emit(stream, job, ranks, _describe_ranks(ranks))
    return EXIT_OK


def _reduce(session: Session, job: Job, stream: IO[str]) -> int:
    diagram = _read(job.inputs[0])
    _guard(job, len(type_d.build_states(diagram)), "type D structure")
    data = session.reduce(diagram, reverse=job.reverse)
    report = verify_cancellation(data)
    if job.closed_form:
        direct = closed_form(diagram, session.algebra(diagram.n))
        report = report.merge(compare_structures(data.reduced, direct))
    document = {
        "steps": data.steps,
        "reduced": data.reduced.to_document().model_dump(),
        "report": report.model_dump(),
    }
    text = "\n".join(
        [f"cancelled {data.steps} pairs", _describe_structure(data.reduced), _describe_report(report)]
    )
    _emit(stream, job, document, text)
    return EXIT_OK if report.passed else EXIT_FAILED


def _weightmove(session: Session, job: Job, stream: IO[str]) -> int:
    diagram = _read(job.inputs[0])
    _guard(job, len(type_d.build_states(diagram)), "type D structure")
    try:
        weight = Polynomial.sum_of(Polynomial.variable(diagram.registry.id_of(name)) for name in job.weight)
    except KeyError as error:
        raise exceptions.InputError(f"unknown arc variable {error}") from error
    move, report = session.weight_move(diagram, job.crossing, weight)
    document = {"move": move.label(), "ports": list(move.ports), "report": report.model_dump()}
    _emit(stream, job, document, f"{move.label()}\n{_describe_report(report)}")
    return EXIT_OK if report.passed else EXIT_FAILED


def _fixtures(_session: Session, job: Job, stream: IO[str]) -> int:
    names = job.names or list(fixtures.FIXTURES)
    out = Path(job.out)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for name in names:
        diagram = fixtures.fixture(name)
        path = out / f"{name}.json"
        path.write_text(json.dumps(diagram.to_document(), indent=2) + "\n", encoding="utf-8")
        written.append(str(path))
    _emit(stream, job, {"written": written}, "\n".join(written))
    return EXIT_OK


COMMANDS = {
    "build-d": _build_d,
    "build-a": _build_a,
    "verify": _verify,
    "pair": _pair,
    "homology": _homology,
    "reduce": _reduce,
    "weightmove": _weightmove,
    "fixtures": _fixtures,
}


def run(job: Job, stream: IO[str] | None = None) -> int:
    """Run a job and write its report.

    Args:
        job: The validated job.
        stream: Where the report goes, standard output by default.

    Returns:
        The exit code.
    """
    stream = stream or sys.stdout
    cache = sqlite_cache.SqliteCache(job.cache) if job.cache else None
    session = api(cache=cache, mode=job.mode, seed=job.seed)
    try:
        return COMMANDS[job.command](session, job, stream)
    except (exceptions.InputError, exceptions.BoundaryMismatch) as error:
        logger.error("%s", error)  # noqa: TRY400
        return EXIT_INPUT
    except exceptions.StateBudgetExceeded as error:
        logger.error("%s", error)  # noqa: TRY400
        return EXIT_BUDGET
    except (exceptions.NonInvertiblePivot, exceptions.NeedsWordReduction) as error:
        logger.error("%s", error)  # noqa: TRY400
        return EXIT_FAILED


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", dest="json_output", action="store_true", help="emit JSON")
    common.add_argument("--mode", choices=["exact", "randomized"], default="exact", help="rank mode")
    common.add_argument("--seed", type=int, default=0, help="seed of the random evaluation points")
    common.add_argument("--max-states", type=int, default=20000, help="largest allowed state count")
    common.add_argument("-v", "--verbose", action="store_true", help="log at debug level")

    parser = argparse.ArgumentParser(prog="twistkh", description="Twisted bordered Khovanov structures.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_text in (
        ("build-d", "build the type D structure of a right tangle"),
        ("build-a", "build the type A structure of a left tangle"),
        ("reduce", "cancel the free circles of a type D structure"),
    ):
        command = sub.add_parser(name, parents=[common], help=help_text)
        command.add_argument("inputs", nargs=1, metavar="DIAGRAM")
        if name == "reduce":
            command.add_argument("--closed-form", action="store_true", help="compare with the closed form")
            command.add_argument("--reverse", action="store_true", help="cancel in reverse state order")

    verify = sub.add_parser("verify", parents=[common], help="check the structure equations")
    verify.add_argument("--type", dest="structure", choices=["d", "a"], default="d")
    verify.add_argument("inputs", nargs=1, metavar="DIAGRAM")

    pair = sub.add_parser("pair", parents=[common], help="pair a left and a right tangle")
    pair.add_argument("--compare-oracle", action="store_true", help="compare with the glued diagram")
    pair.add_argument("inputs", nargs=2, metavar=("LEFT", "RIGHT"))

    homology = sub.add_parser("homology", parents=[common], help="homology ranks of a glued diagram")
    homology.add_argument("--pair", dest="inputs", nargs=2, metavar=("LEFT", "RIGHT"), required=True)
    homology.add_argument("--oracle", action="store_true", help="use the glued diagram directly")
    homology.add_argument("--cache", help="sqlite file caching homology reports")

    weightmove = sub.add_parser("weightmove", parents=[common], help="move a weight across a crossing")
    weightmove.add_argument("inputs", nargs=1, metavar="DIAGRAM")
    weightmove.add_argument("--crossing", required=True, help="crossing id")
    weightmove.add_argument(
        "--weight", action="append", required=True, metavar="ARC", help="arc variable to add to the weight, repeatable"
    )

    fixture = sub.add_parser("fixtures", parents=[common], help="write the fixture diagrams")
    fixture.add_argument("--out", default=".", help="output directory")
    fixture.add_argument("names", nargs="*", metavar="NAME")
    return parser


def main(argv: list[str] | None = None) -> int:
    """Parse the command line and run the job.

    Returns:
        The exit code.
    """
    args = vars(_parser().parse_args(argv))
    verbose = args.pop("verbose")
    level = "DEBUG" if verbose else os.getenv("LOGLEVEL", "WARNING").upper()
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    try:
        job = Job(**{k: v for k, v in args.items() if v is not None})
    except ValidationError as error:
        logger.error("%s", error)  # noqa: TRY400
        return EXIT_INPUT
    logger.debug("Running %s on %s", job.command, job.inputs)
    return run(job)


if __name__ == "__main__":
    sys.exit(main())
