"""Command line front end.

Exit codes follow one contract everywhere: 0 on success, 1 when the
domain rejects the input (validation violations, grading errors, not
enough facts to generate from), 2 when the environment fails (unreadable
or malformed files, missing directories, occupied ports).
"""

from __future__ import annotations

import argparse
import socket
import sys
from pathlib import Path

from .errors import EngineError, ParseError, ValidationError
from .gift import export_gift
from .grading import grade, load_answers, policy_from_document, records_for, report_to_json
from .model import shared_chunks, validate
from .questions import bank_to_document, generate_bank, generation_spec_from_document, parse_bank
from .storage import dump_json_document, load_json_document, load_ontology, parse_ontology

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_ENVIRONMENT = 2


def _fail(message: str, code: int) -> int:
    print(message, file=sys.stderr)
    return code


def cmd_validate(args) -> int:
    try:
        doc = load_json_document(args.ontology)
        meta = parse_ontology(doc, source=str(args.ontology))
    except ParseError as exc:
        return _fail(str(exc), EXIT_ENVIRONMENT)
    report = validate(meta)
    for line in report.lines():
        print(line)
    if report.ok:
        print(f"{args.ontology}: ok")
        return EXIT_OK
    return EXIT_DOMAIN


def cmd_generate(args) -> int:
    try:
        meta = load_ontology(args.ontology)
        spec = generation_spec_from_document(load_json_document(args.genspec), source=str(args.genspec))
    except ParseError as exc:
        return _fail(str(exc), EXIT_ENVIRONMENT)
    except ValidationError as exc:
        return _fail(str(exc), EXIT_DOMAIN)
    try:
        bank = generate_bank(meta, spec)
    except EngineError as exc:
        return _fail(str(exc), EXIT_DOMAIN)
    try:
        if args.gift:
            export_gift(bank, args.out)
        else:
            dump_json_document(bank_to_document(bank, meta.discipline_id), args.out)
    except (OSError, ValueError) as exc:
        return _fail(f"cannot write {args.out}: {exc}", EXIT_ENVIRONMENT)
    print(f"wrote {len(bank)} questions to {args.out}")
    return EXIT_OK


def cmd_crosslinks(args) -> int:
    try:
        first = load_ontology(args.ontology_a)
        second = load_ontology(args.ontology_b)
    except ParseError as exc:
        return _fail(str(exc), EXIT_ENVIRONMENT)
    except ValidationError as exc:
        return _fail(str(exc), EXIT_DOMAIN)
    try:
        pairs = shared_chunks(first, second)
    except EngineError as exc:
        return _fail(str(exc), EXIT_DOMAIN)
    for chunk_a, chunk_b in pairs:
        print(f"{chunk_a.label}\t{first.discipline_id}:{chunk_a.id}\t{second.discipline_id}:{chunk_b.id}")
    return EXIT_OK


def cmd_grade(args) -> int:
    try:
        _, questions = parse_bank(load_json_document(args.bank), source=str(args.bank))
        responses = load_answers(args.answers)
        policy = None
        if args.policy:
            policy = policy_from_document(load_json_document(args.policy), source=str(args.policy))
    except ParseError as exc:
        return _fail(str(exc), EXIT_ENVIRONMENT)
    try:
        report = grade(questions, records_for(questions, responses), policy)
    except EngineError as exc:
        return _fail(str(exc), EXIT_DOMAIN)
    print(report_to_json(report))
    return EXIT_OK


def cmd_serve(args) -> int:
    data_dir = Path(args.data_dir)
    if not data_dir.is_dir():
        return _fail(f"data directory {data_dir} does not exist", EXIT_ENVIRONMENT)
    try:
        probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
        probe.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        probe.bind((args.host, args.port))
        probe.close()
    except OSError as exc:
        return _fail(f"cannot bind {args.host}:{args.port}: {exc}", EXIT_ENVIRONMENT)
    try:
        from .service import create_app

        app = create_app(data_dir)
    except (EngineError, OSError) as exc:
        return _fail(f"cannot load data directory {data_dir}: {exc}", EXIT_ENVIRONMENT)

    import uvicorn

    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ontoquiz",
        description="Ontology-driven question banks, concept-indexed grading, and study recommendations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_validate = sub.add_parser("validate", help="check one discipline ontology file")
    p_validate.add_argument("ontology")
    p_validate.set_defaults(func=cmd_validate)

    p_generate = sub.add_parser("generate", help="generate a question bank from an ontology")
    p_generate.add_argument("ontology")
    p_generate.add_argument("genspec", help="generation spec JSON (seed, counts, scope)")
    p_generate.add_argument("-o", "--out", required=True)
    p_generate.add_argument("--gift", action="store_true", help="write GIFT text instead of JSON")
    p_generate.set_defaults(func=cmd_generate)

    p_cross = sub.add_parser("crosslinks", help="list chunks shared between two disciplines")
    p_cross.add_argument("ontology_a")
    p_cross.add_argument("ontology_b")
    p_cross.set_defaults(func=cmd_crosslinks)

    p_grade = sub.add_parser("grade", help="grade an answer file against a bank")
    p_grade.add_argument("bank")
    p_grade.add_argument("answers")
    p_grade.add_argument("--policy", help="grading policy JSON")
    p_grade.set_defaults(func=cmd_grade)

    p_serve = sub.add_parser("serve", help="run the HTTP session service")
    p_serve.add_argument("--data-dir", required=True)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8500)
    p_serve.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
