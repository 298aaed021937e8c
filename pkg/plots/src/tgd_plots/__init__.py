"""Figure rendering for temporal-graph-discovery sweep CSVs."""

from .figures import KINDS, FigureSpec, build_figure, read_rows, render

__all__ = ["KINDS", "FigureSpec", "build_figure", "read_rows", "render"]
