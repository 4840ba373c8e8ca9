"""Command-line surface: run, simulate, diagnose, distractors, taxonomy, batch.

Exit codes: 0 success, 1 usage error, 2 parse error, 3 unexplained
diagnosis, 4 internal error.  Output on identical inputs is
byte-identical; ``--json`` switches to machine-readable reports.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

from . import authoring as au
from . import diagnosis as dx
from . import exec_core as ec
from . import minilang as ml
from . import taxonomy as tax
from . import variants as va

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_UNEXPLAINED = 3
EXIT_INTERNAL = 4


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mistrace", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, limits=True, registry=True):
        if registry:
            p.add_argument("--registry", help="registry JSON file (default: bundled catalog)")
        if limits:
            p.add_argument(
                "--limits",
                metavar="events=N,outputs=M",
                help="execution caps (defaults events=10000, outputs=1000)",
            )

    p_run = sub.add_parser("run", help="execute a program under reference semantics")
    p_run.add_argument("file")
    p_run.add_argument("--trace", metavar="OUT", help="write the event trace as JSON lines")
    common(p_run, registry=False)

    p_sim = sub.add_parser("simulate", help="execute under a misconception profile")
    p_sim.add_argument("file")
    p_sim.add_argument("--profile", required=True, help='e.g. "ITER.3.b.ii.A,ITER.5.a.i(k=2)"')
    p_sim.add_argument("--trace", metavar="OUT")
    common(p_sim)

    p_diag = sub.add_parser("diagnose", help="explain an observed answer")
    p_diag.add_argument("file")
    group = p_diag.add_mutually_exclusive_group(required=True)
    group.add_argument("--answer", help="file containing the answer, one output per line")
    group.add_argument("--answer-text", help="the answer itself")
    p_diag.add_argument("--max-k", type=int, default=2, help="profile cardinality bound")
    p_diag.add_argument("--match", choices=dx.MATCH_MODES, default="exact")
    p_diag.add_argument("--json", action="store_true")
    common(p_diag)

    p_dis = sub.add_parser("distractors", help="generate wrong-answer options")
    p_dis.add_argument("file")
    p_dis.add_argument("--max-k", type=int, default=1)
    p_dis.add_argument("--json", action="store_true")
    common(p_dis)

    p_tax = sub.add_parser("taxonomy", help="inspect the catalog")
    tax_sub = p_tax.add_subparsers(dest="taxonomy_command", required=True)
    p_list = tax_sub.add_parser("list", help="list entries, optionally under a prefix")
    p_list.add_argument("prefix", nargs="?")
    p_list.add_argument("--json", action="store_true")
    p_list.add_argument("--registry")
    p_show = tax_sub.add_parser("show", help="show one entry")
    p_show.add_argument("code")
    p_show.add_argument("--json", action="store_true")
    p_show.add_argument("--registry")

    p_batch = sub.add_parser("batch", help="diagnose a corpus of responses")
    p_batch.add_argument("corpus")
    p_batch.add_argument("--max-k", type=int, default=2)
    p_batch.add_argument("--match", choices=dx.MATCH_MODES, default="exact")
    p_batch.add_argument("--json", action="store_true")
    common(p_batch)

    return parser


def _parse_limits(text: Optional[str]) -> ec.Limits:
    if not text:
        return ec.Limits()
    events, outputs = 10_000, 1_000
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        if "=" not in item:
            raise _UsageError(f"bad --limits item {item!r}")
        key, value = item.split("=", 1)
        try:
            number = int(value)
        except ValueError as exc:
            raise _UsageError(f"bad --limits value {value!r}") from exc
        if key == "events":
            events = number
        elif key == "outputs":
            outputs = number
        else:
            raise _UsageError(f"unknown --limits key {key!r}")
    return ec.Limits(max_events=events, max_outputs=outputs)


def _load_registry(path: Optional[str]) -> tax.Registry:
    if path is None:
        return tax.default_registry()
    return tax.load_registry(Path(path).read_text(encoding="utf-8"))


def _load_program(path: str) -> ml.Program:
    return ml.parse(Path(path).read_text(encoding="utf-8"))


def _write_trace(result: ec.ExecResult, path: str) -> None:
    lines = [
        json.dumps(
            {"seq": e.seq, "nodeId": e.node_id, "kind": e.kind, "payload": e.payload},
            sort_keys=True,
            ensure_ascii=False,
        )
        for e in result.trace
    ]
    Path(path).write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")


def _print_result(result: ec.ExecResult, out, err) -> None:
    for line in result.transcript:
        print(line, file=out)
    if result.status != ec.STATUS_COMPLETED:
        note = result.status
        if result.error:
            note += f" ({result.error})"
        print(f"status: {note}", file=err)


def _entry_lines(entry: tax.CatalogEntry) -> list[str]:
    lines = [f"{entry.code}  {entry.title}"]
    lines.append(f"  status: {entry.status}")
    if entry.slots:
        lines.append(f"  slot: {'+'.join(entry.slots)} ({entry.kind})")
    if entry.params:
        rendered = []
        for name, spec in sorted(entry.params.items()):
            if spec.type == "int":
                rendered.append(f"{name}={spec.default} [{spec.min}..{spec.max}]")
            else:
                rendered.append(f"{name}={spec.default} {{{','.join(spec.choices or ())}}}")
        lines.append(f"  params: {'; '.join(rendered)}")
    if entry.applicability:
        lines.append(f"  applies-when: {', '.join(entry.applicability)}")
    if entry.rationale:
        lines.append(f"  not-simulated: {entry.rationale}")
    lines.append(f'  quote: "{entry.quote}"')
    return lines


def _dump_json(payload, out) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False), file=out)


def _cmd_run(args, out, err) -> int:
    result = ec.run_reference(_load_program(args.file), _parse_limits(args.limits))
    _print_result(result, out, err)
    if args.trace:
        _write_trace(result, args.trace)
    return EXIT_OK


def _cmd_simulate(args, out, err) -> int:
    registry = _load_registry(args.registry)
    profile = va.compile_profile(registry, va.parse_profile_literal(args.profile))
    result = va.run_variant(
        _load_program(args.file), profile, limits=_parse_limits(args.limits)
    )
    _print_result(result, out, err)
    if args.trace:
        _write_trace(result, args.trace)
    return EXIT_OK


def _cmd_diagnose(args, out, err) -> int:
    registry = _load_registry(args.registry)
    program = _load_program(args.file)
    text = args.answer_text if args.answer_text is not None else Path(args.answer).read_text(
        encoding="utf-8"
    )
    obs = dx.Observation.from_text(text, args.match)
    cfg = dx.SearchConfig(max_cardinality=args.max_k, limits=_parse_limits(args.limits))
    report = dx.diagnose(program, obs, cfg, registry)
    if args.json:
        _dump_json(report.to_json_dict(), out)
    else:
        print(f"verdict: {report.verdict}", file=out)
        for e in report.explanations:
            marker = "*" if e.minimal else " "
            print(f"  {marker} {e.profile} [{e.status}]", file=out)
        if report.masked_candidates:
            print("masked candidates (also produce the correct output):", file=out)
            for e in report.masked_candidates:
                print(f"    {e.profile}", file=out)
        print(f"searched {report.searched} profiles", file=out)
    return EXIT_UNEXPLAINED if report.verdict == "unexplained" else EXIT_OK


def _cmd_distractors(args, out, err) -> int:
    registry = _load_registry(args.registry)
    distractors = au.gen_distractors(
        _load_program(args.file),
        registry,
        max_cardinality=args.max_k,
        limits=_parse_limits(args.limits),
    )
    if args.json:
        _dump_json([d.to_json_dict() for d in distractors], out)
    else:
        for d in distractors:
            smallest = d.generating_profiles[0]
            print(f"[k={d.plausibility_rank}] {' / '.join(d.transcript)}", file=out)
            print(f"    e.g. {smallest}", file=out)
    return EXIT_OK


def _cmd_taxonomy(args, out, err) -> int:
    registry = _load_registry(args.registry)
    if args.taxonomy_command == "show":
        entry = registry.lookup(args.code)
        if args.json:
            _dump_json(tax._entry_to_json(entry), out)
        else:
            for line in _entry_lines(entry):
                print(line, file=out)
        return EXIT_OK
    entries = registry.children(args.prefix) if args.prefix else registry.entries
    if args.json:
        _dump_json([tax._entry_to_json(e) for e in entries], out)
    else:
        for entry in entries:
            print(f"{str(entry.code):20} {entry.status:13} {entry.title}", file=out)
    return EXIT_OK


def _cmd_batch(args, out, err) -> int:
    registry = _load_registry(args.registry)
    corpus = au.load_corpus(args.corpus, _parse_limits(args.limits))
    cfg = dx.SearchConfig(max_cardinality=args.max_k, limits=_parse_limits(args.limits))
    stats = au.batch_diagnose(corpus, cfg, registry, match_mode=args.match)
    if args.json:
        _dump_json(stats.to_json_dict(), out)
    else:
        print(
            f"responses: {stats.responses}  correct: {stats.correct}  "
            f"explained: {stats.explained}  unexplained: {stats.unexplained}  "
            f"ambiguous: {stats.ambiguous}",
            file=out,
        )
        for code in sorted(stats.weights):
            print(f"  {code:20} {stats.weights[code]:.3f}", file=out)
        for skip in stats.skipped_tasks:
            print(f"skipped: {skip}", file=err)
    return EXIT_OK


_COMMANDS = {
    "run": _cmd_run,
    "simulate": _cmd_simulate,
    "diagnose": _cmd_diagnose,
    "distractors": _cmd_distractors,
    "taxonomy": _cmd_taxonomy,
    "batch": _cmd_batch,
}


def main(argv: Optional[list[str]] = None, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args, out, err)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=err)
        return EXIT_USAGE
    except va.ProfileError as exc:
        print(f"profile error: {exc}", file=err)
        return EXIT_USAGE
    except ml.ParseError as exc:
        print(f"parse error: {exc}", file=err)
        return EXIT_PARSE
    except (tax.TaxonomyError, au.CorpusError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_PARSE
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {exc!r}", file=err)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
