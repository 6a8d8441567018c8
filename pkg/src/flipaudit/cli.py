"""Command-line front end.

Subcommands:
  synth     generate a CSV from a scenario spec
  audit     ingest a CSV and print the proportionality report
  plot      turn a structured report into an SVG chart
  debias    apply the SP-equalizing post-processor to a CSV
  pipeline  full run: gate, debias, re-gate, audit

Exit codes: 0 proportionate/fair, 2 review required, 3 disproportionate or
still unfair, 1 usage or data error.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .chart import emit_chart
from .debias import DebiasError, sp_equalizing_debiaser, make_sp_debiaser
from .fairness import ValidationError
from .pipeline import Decision, PipelineError, run_audit_pipeline
from .report import build_report, parse_structured, render_structured, render_text
from .scenario import BUILTIN_SCENARIOS, generate_scenario, load_spec
from .tabular import ColumnMapping, frame_to_csv, ingest
from .thresholds import ConfigError, ThresholdConfig

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_REVIEW = 2
EXIT_DISPROPORTIONATE = 3

_VERDICT_CODES = {
    "Proportionate": EXIT_OK,
    "ReviewRequired": EXIT_REVIEW,
    "Disproportionate": EXIT_DISPROPORTIONATE,
}


def _verdict_code(verdict: str) -> int:
    return _VERDICT_CODES[verdict]


def _decision_code(decision: Decision, verdict: str) -> int:
    if decision in (Decision.NO_DEBIAS_NEEDED, Decision.FAIR_AND_PROPORTIONATE):
        return EXIT_OK
    if decision is Decision.STILL_UNFAIR:
        return EXIT_DISPROPORTIONATE
    # Fair but disproportionate: severity comes from the report verdict.
    return _verdict_code(verdict)


def _add_mapping_args(p: argparse.ArgumentParser):
    p.add_argument("--pred-col", default="pred", help="predicted-label column name")
    p.add_argument("--corr-col", default="corr", help="corrected-label column name")
    p.add_argument("--group-col", default="group", help="group membership column name")
    p.add_argument("--true-col", default=None, help="true-label column name (optional)")
    p.add_argument("--favorable", type=int, default=1, choices=(0, 1),
                   help="raw value meaning the favorable outcome")
    p.add_argument("--privileged", type=int, default=1, choices=(0, 1),
                   help="raw value meaning the privileged group")


def _mapping(args, need_true=False) -> ColumnMapping:
    true_col = args.true_col
    if need_true and true_col is None:
        true_col = "true"
    return ColumnMapping(
        pred_col=args.pred_col,
        corr_col=args.corr_col,
        group_col=args.group_col,
        true_col=true_col,
        favorable=args.favorable,
        privileged=args.privileged,
    )


def _load_config(args) -> ThresholdConfig:
    if args.thresholds:
        return ThresholdConfig.load(args.thresholds)
    return ThresholdConfig.default()


def _write_output(text: str, path: str | None):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _read_input(path: str):
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flipaudit",
        description="Audit how a post-processing debiaser distributed label "
                    "flips across protected groups.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="generate a CSV from a scenario spec")
    p.add_argument("--scenario", required=True,
                   help=f"builtin name ({', '.join(BUILTIN_SCENARIOS)}) or spec file path")
    p.add_argument("--output", "-o", default=None)

    p = sub.add_parser("audit", help="audit a CSV and print the report")
    p.add_argument("--input", "-i", required=True)
    p.add_argument("--output", "-o", default=None)
    p.add_argument("--format", choices=("text", "structured"), default="text")
    p.add_argument("--thresholds", default=None, help="threshold config file")
    _add_mapping_args(p)

    p = sub.add_parser("plot", help="render a structured report as SVG")
    p.add_argument("--input", "-i", required=True, help="structured report ('-' for stdin)")
    p.add_argument("--output", "-o", required=True)

    p = sub.add_parser("debias", help="SP-equalize predicted labels in a CSV")
    p.add_argument("--input", "-i", required=True)
    p.add_argument("--output", "-o", default=None)
    p.add_argument("--epsilon", type=float, default=0.1)
    p.add_argument("--seed", type=int, default=0)
    _add_mapping_args(p)

    p = sub.add_parser("pipeline", help="gate, debias, re-gate and audit")
    p.add_argument("--input", "-i", required=True)
    p.add_argument("--output", "-o", default=None)
    p.add_argument("--format", choices=("text", "structured"), default="text")
    p.add_argument("--thresholds", default=None)
    p.add_argument("--epsilon", type=float, default=0.1)
    p.add_argument("--seed", type=int, default=0)
    _add_mapping_args(p)

    return parser


def _cmd_synth(args) -> int:
    if args.scenario in BUILTIN_SCENARIOS:
        spec = BUILTIN_SCENARIOS[args.scenario]
    else:
        spec = load_spec(args.scenario)
    frame = generate_scenario(spec)
    _write_output(frame_to_csv(frame), args.output)
    return EXIT_OK


def _cmd_audit(args) -> int:
    frame = ingest(args.input, _mapping(args))
    report = build_report(frame, _load_config(args))
    text = render_text(report) if args.format == "text" else render_structured(report)
    _write_output(text, args.output)
    return _verdict_code(report.verdict)


def _cmd_plot(args) -> int:
    report = parse_structured(_read_input(args.input))
    _write_output(emit_chart(report), args.output)
    return EXIT_OK


def _cmd_debias(args) -> int:
    frame = ingest(args.input, _mapping(args))
    corrected = sp_equalizing_debiaser(
        frame.y_predicted, frame.group, args.epsilon, args.seed
    )
    _write_output(frame_to_csv(frame.with_corrected(corrected)), args.output)
    return EXIT_OK


def _cmd_pipeline(args) -> int:
    frame = ingest(args.input, _mapping(args, need_true=False))
    outcome = run_audit_pipeline(
        frame.y_predicted,
        frame.group,
        make_sp_debiaser(args.epsilon, args.seed),
        y_true=frame.y_true,
        config=_load_config(args),
    )
    if args.format == "structured":
        text = render_structured(outcome.report)
    else:
        text = render_text(outcome.report) + f"Decision: {outcome.decision.value}\n"
    _write_output(text, args.output)
    return _decision_code(outcome.decision, outcome.report.verdict)


_COMMANDS = {
    "synth": _cmd_synth,
    "audit": _cmd_audit,
    "plot": _cmd_plot,
    "debias": _cmd_debias,
    "pipeline": _cmd_pipeline,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; normalize to 1 (0 for --help).
        return 0 if exc.code == 0 else EXIT_ERROR
    try:
        return _COMMANDS[args.command](args)
    except (ValidationError, ConfigError, DebiasError, PipelineError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
