"""Command line: ingest, screen, code quality, encode, fit, report and transfer.

Exit codes: 0 success, 2 input error, 3 numerical error (rank or degrees
of freedom), 4 I/O error. Failures print one module-qualified line to
stderr. Without ``--out`` the main artifact goes to stdout.
"""

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from .design import default_schema, encode, load_schema
from .errors import InputError, NumericalError, WetMetaError
from .ols import fit_ols
from .persist import load_model, model_document
from .quality import code_records
from .records import NOMINAL_FIELDS, bundled_path, load_tables, parse_dataset
from .report import (
    crosstab, render_crosstab, render_loocv, render_predictions, render_regression,
    render_screening,
)
from .screening import screen
from .transfer import BackTransform, loocv, parse_sites, predict_value

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC, EXIT_IO = 0, 2, 3, 4

MODES = {"corrected": BackTransform.HALF_VARIANCE_CORRECTED, "naive": BackTransform.NAIVE_EXP}


@dataclass
class RunConfig:
    dataset_path: Path = field(default_factory=lambda: bundled_path("teeb_inland_wetlands.csv"))
    normalization_path: Path = field(default_factory=lambda: bundled_path("normalization_tables.csv"))
    schema_path: Optional[Path] = None
    output_dir: Optional[Path] = None
    fmt: str = "text"

    def __post_init__(self):
        self.dataset_path = Path(self.dataset_path).resolve()
        self.normalization_path = Path(self.normalization_path).resolve()
        if self.schema_path is not None:
            self.schema_path = Path(self.schema_path).resolve()
        if self.output_dir is not None:
            self.output_dir = Path(self.output_dir).resolve()

    @property
    def ext(self) -> str:
        return "csv" if self.fmt == "csv" else "txt"

    def schema(self):
        return default_schema() if self.schema_path is None else load_schema(self.schema_path)


def _emit(config: RunConfig, name: str, text: str) -> None:
    if config.output_dir is None:
        sys.stdout.write(text)
        return
    config.output_dir.mkdir(parents=True, exist_ok=True)
    with open(config.output_dir / name, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _analysis_set(config: RunConfig):
    records = parse_dataset(config.dataset_path)
    return code_records(screen(records).retained)


def _run(fn) -> int:
    try:
        fn()
    except InputError as exc:
        print(f"wetmeta: {exc.qualified()}", file=sys.stderr)
        return EXIT_INPUT
    except NumericalError as exc:
        print(f"wetmeta: {exc.qualified()}", file=sys.stderr)
        return EXIT_NUMERIC
    except WetMetaError as exc:
        print(f"wetmeta: {exc.qualified()}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"wetmeta: io: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def cmd_screen(config: RunConfig) -> int:
    def go():
        report = screen(parse_dataset(config.dataset_path))
        _emit(config, f"screening.{config.ext}", render_screening(report, config.fmt))
    return _run(go)


def cmd_crosstab(config: RunConfig, row: str = "service", col: str = "wetland_type",
                 suppress_empty: bool = False) -> int:
    def go():
        records = screen(parse_dataset(config.dataset_path)).retained
        tab = crosstab(records, row, col)
        _emit(config, f"crosstab_{row}_{col}.{config.ext}",
              render_crosstab(tab, config.fmt, suppress_empty))
    return _run(go)


def cmd_fit(config: RunConfig) -> int:
    def go():
        schema = config.schema()
        tables = load_tables(config.normalization_path)
        fit = fit_ols(encode(_analysis_set(config), schema, tables))
        table = render_regression(fit, config.fmt)
        if config.output_dir is None:
            sys.stdout.write(table)
            return
        _emit(config, "model.json", model_document(fit, schema))
        _emit(config, f"regression.{config.ext}", table)
    return _run(go)


def cmd_predict(config: RunConfig, model_path, sites_path, mode: str = "corrected") -> int:
    def go():
        fit, schema = load_model(model_path)
        sites = parse_sites(sites_path)
        preds = [predict_value(fit, schema, s, MODES[mode]) for s in sites]
        _emit(config, f"predictions.{config.ext}", render_predictions(preds, config.fmt))
    return _run(go)


def cmd_loocv(config: RunConfig, mode: str = "corrected", workers: Optional[int] = None) -> int:
    def go():
        tables = load_tables(config.normalization_path)
        result = loocv(_analysis_set(config), config.schema(), tables, MODES[mode], workers)
        _emit(config, f"loocv.{config.ext}", render_loocv(result, config.fmt))
    return _run(go)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--data", type=Path, help="valuation records CSV (default: bundled)")
    common.add_argument("--rates", type=Path, help="normalization tables CSV (default: bundled)")
    common.add_argument("--schema", type=Path, help="encoding schema INI (default: built-in)")
    common.add_argument("--out", type=Path, help="output directory (default: stdout)")
    common.add_argument("--format", choices=("text", "csv"), default="text")

    parser = argparse.ArgumentParser(prog="wetmeta", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("screen", parents=[common], help="screening audit")
    p = sub.add_parser("crosstab", parents=[common], help="cross table of two nominal fields")
    p.add_argument("--row", default="service", choices=sorted(NOMINAL_FIELDS))
    p.add_argument("--col", default="wetland_type", choices=sorted(NOMINAL_FIELDS))
    p.add_argument("--suppress-empty", action="store_true")
    sub.add_parser("fit", parents=[common], help="fit the meta-regression")
    p = sub.add_parser("predict", parents=[common], help="function transfer to policy sites")
    p.add_argument("--model", type=Path, required=True)
    p.add_argument("--sites", type=Path, required=True)
    p.add_argument("--mode", choices=sorted(MODES), default="corrected")
    p = sub.add_parser("loocv", parents=[common], help="leave-one-out transfer errors")
    p.add_argument("--mode", choices=sorted(MODES), default="corrected")
    p.add_argument("--workers", type=int, default=None)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    kwargs = {"schema_path": args.schema, "output_dir": args.out, "fmt": args.format}
    if args.data is not None:
        kwargs["dataset_path"] = args.data
    if args.rates is not None:
        kwargs["normalization_path"] = args.rates
    config = RunConfig(**kwargs)
    if args.command == "screen":
        return cmd_screen(config)
    if args.command == "crosstab":
        return cmd_crosstab(config, args.row, args.col, args.suppress_empty)
    if args.command == "fit":
        return cmd_fit(config)
    if args.command == "predict":
        return cmd_predict(config, args.model, args.sites, args.mode)
    return cmd_loocv(config, args.mode, args.workers)


if __name__ == "__main__":
    sys.exit(main())
