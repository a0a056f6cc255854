"""Command line entry point: search, evaluate, or serve.

    errorsearch --trace trace.txt --code Foo.java --top 10
    errorsearch --mode interactive --query "npe map get" --trace - < trace.txt
    errorsearch --eval --dataset cases.json --ablation --out reports/
    errorsearch --serve --port 8080

Exit status: 0 when results were produced, 1 when none were, 2 on usage or
input errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import replace
from pathlib import Path

from .config import CONFIG_ENV, load_settings, load_weights
from .errors import AllProvidersFailed, EmptyCorpus, ErrorSearchError, QueryValidationError
from .evalkit import MASKS, render_ablation_tsv
from .pipeline import SearchPipeline, bundled_fixtures, load_dataset, run_evaluation
from .queryform import INTERACTIVE, PROACTIVE, ExceptionQuery

logger = logging.getLogger("errorsearch")

EXIT_OK, EXIT_EMPTY, EXIT_USAGE = 0, 1, 2


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="errorsearch",
        description="Rank web results for a Java exception using its message, stack trace and code context.",
        epilog=f"The config file may also be given through ${CONFIG_ENV}.",
    )
    p.add_argument("--mode", choices=(PROACTIVE, INTERACTIVE), default=PROACTIVE,
                   help="proactive builds the provider query itself; interactive uses --query")
    p.add_argument("--query", help="search query typed by the user (interactive mode)")
    p.add_argument("--message", help="exception message; defaults to the trace headline")
    p.add_argument("--trace", help="stack trace file, or - for stdin")
    p.add_argument("--code", help="source file with the code around the failure")
    p.add_argument("--top", type=int, default=None, help="number of results to show (1-50)")
    p.add_argument("--weights", help="JSON file of ranking weight overrides")
    p.add_argument("--fixtures", help="offline fixture directory (defaults to the bundled set)")
    p.add_argument("--config", help="JSON settings file")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--serve", action="store_true", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8080)
    p.add_argument("--eval", action="store_true", help="evaluate a dataset instead of searching")
    p.add_argument("--dataset", help="evaluation cases (JSON); defaults to the bundled fixture cases")
    p.add_argument("--ablation", action="store_true", help="evaluate every score-aspect combination")
    p.add_argument("--no-code", action="store_true", help="ignore context code during evaluation")
    p.add_argument("--k", type=int, nargs="+", default=[10, 20, 30], help="evaluation cutoffs")
    p.add_argument("--out", help="directory for report files (report.tsv, report.json)")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8", errors="replace")


def _pipeline(args) -> SearchPipeline:
    settings = load_settings(args.config)
    if args.weights:
        settings = replace(settings, weights=load_weights(args.weights, settings.weights))
    return SearchPipeline.from_fixtures(args.fixtures, settings)


def _render_table(results) -> str:
    lines = [f"{'rank':>4}  {'score':>6}  title / url"]
    for r in results:
        lines.append(f"{r.rank:>4}  {r.s_final:6.3f}  {r.title}")
        lines.append(f"{'':>4}  {'':>6}  {r.url}")
    return "\n".join(lines)


def cmd_search(args) -> int:
    if not args.trace:
        print("errorsearch: --trace is required for a search", file=sys.stderr)
        return EXIT_USAGE
    if args.top is not None and not 1 <= args.top <= 50:
        print("errorsearch: --top must be between 1 and 50", file=sys.stderr)
        return EXIT_USAGE
    try:
        trace = _read(args.trace)
        code = _read(args.code) if args.code else None
    except OSError as exc:
        print(f"errorsearch: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        query = ExceptionQuery.create(trace, args.message, code, args.mode,
                                      args.query if args.mode == INTERACTIVE else None)
    except QueryValidationError as exc:
        print(f"errorsearch: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.mode == PROACTIVE and args.query:
        print("errorsearch: --query only applies to interactive mode", file=sys.stderr)
        return EXIT_USAGE
    pipeline = _pipeline(args)
    try:
        outcome = pipeline.search(query, top_k=args.top)
        results, provider_query, warnings = outcome.results, outcome.provider_query, outcome.warnings
    except AllProvidersFailed as exc:
        print(f"errorsearch: {exc}", file=sys.stderr)
        for w in exc.warnings:
            print(f"  {w}", file=sys.stderr)
        return EXIT_EMPTY
    except EmptyCorpus as exc:
        results, provider_query, warnings = [], query.provider_query(), list(exc.warnings)
    if args.json:
        print(json.dumps({
            "provider_query": provider_query,
            "results": [{"rank": r.rank, "url": r.url, "title": r.title, "s_final": r.s_final,
                         **r.components()} for r in results],
            "warnings": warnings,
        }, indent=2))
    else:
        print(f"query: {provider_query}")
        print(_render_table(results) if results else "no results")
        for w in warnings:
            print(f"warning: {w}", file=sys.stderr)
    return EXIT_OK if results else EXIT_EMPTY


def cmd_eval(args) -> int:
    dataset = Path(args.dataset) if args.dataset else bundled_fixtures() / "dataset.json"
    if not dataset.is_file():
        print(f"errorsearch: dataset not found: {dataset}", file=sys.stderr)
        return EXIT_USAGE
    if args.fixtures and not Path(args.fixtures).is_dir():
        print(f"errorsearch: fixture directory not found: {args.fixtures}", file=sys.stderr)
        return EXIT_USAGE
    if min(args.k) < 1:
        print("errorsearch: cutoffs must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        cases = load_dataset(dataset)
    except (ValueError, KeyError) as exc:
        print(f"errorsearch: bad dataset {dataset}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    pipeline = _pipeline(args)
    table = run_evaluation(pipeline, cases, args.mode, tuple(args.k), masks=MASKS if args.ablation else None,
                           with_code=not args.no_code)
    tsv = render_ablation_tsv(table)
    as_json = json.dumps({name: {str(k): rep.summary() for k, rep in reps.items()}
                          for name, reps in table.items()}, indent=2)
    print(as_json if args.json else tsv, end="" if not args.json else "\n")
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "report.tsv").write_text(tsv, encoding="utf-8")
        full = {name: {str(k): json.loads(rep.to_json()) for k, rep in reps.items()}
                for name, reps in table.items()}
        (out / "report.json").write_text(json.dumps(full, indent=2), encoding="utf-8")
    solved = any(rep.cases for reps in table.values() for rep in reps.values())
    return EXIT_OK if solved else EXIT_EMPTY


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(_pipeline(args)), host=args.host, port=args.port)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.serve and args.eval:
        parser.error("--serve and --eval are mutually exclusive")
    try:
        if args.serve:
            return cmd_serve(args)
        if args.eval:
            return cmd_eval(args)
        return cmd_search(args)
    except (OSError, json.JSONDecodeError, ErrorSearchError) as exc:
        print(f"errorsearch: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
