"""Figure rendering for evolvesort experiment CSVs."""

from .figures import FigureKind, FigureSpec, RenderReport, render
from .schema import MissingSeriesError, SchemaError

__version__ = "0.1.0"

__all__ = [
    "FigureKind",
    "FigureSpec",
    "MissingSeriesError",
    "RenderReport",
    "SchemaError",
    "render",
]
