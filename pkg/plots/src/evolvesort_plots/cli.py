"""Command line: ``plots <figure-kind> --in <csv...> --out <file>``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .figures import FigureKind, FigureSpec, render
from .schema import MissingSeriesError, SchemaError


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plots",
        description="Render figures from evolvesort experiment CSVs.",
    )
    parser.add_argument(
        "kind",
        choices=[k.value for k in FigureKind],
        help="figure kind to render",
    )
    parser.add_argument(
        "--in",
        dest="inputs",
        nargs="+",
        required=True,
        type=Path,
        metavar="CSV",
        help="input CSV files (samples for algs/hot/start-config, "
        "summary for r-vs-size/swap-ratio)",
    )
    parser.add_argument(
        "--out", required=True, type=Path, help="output image path"
    )
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    spec = FigureSpec(
        kind=FigureKind(args.kind), inputs=tuple(args.inputs), output=args.out
    )
    try:
        report = render(spec)
    except (SchemaError, MissingSeriesError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {report.output} ({len(report.series)} series)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
