"""``tgd-plot <kind> --in results.csv --out fig.png [--facet p]``"""

from __future__ import annotations

import argparse
import sys

from .figures import KINDS, FigureSpec, render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tgd-plot", description="render sweep-CSV figures")
    sub = parser.add_subparsers(dest="kind", required=True)
    for kind in KINDS:
        p = sub.add_parser(kind)
        p.add_argument("--in", dest="infile", required=True, help="sweep results CSV")
        p.add_argument("--out", required=True, help="output image path")
        p.add_argument("--facet", default=None, help="facet column (rounds_vs_edges only)")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    spec = FigureSpec(input_csv=args.infile, kind=args.kind, output=args.out, facet=args.facet)
    out = render(spec)
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
