"""Figure renderer for smoothmean experiment CSVs."""

from .csvio import SchemaError
from .render import KINDS, FigureSpec, manifest_path, render
from .theme import METHOD_COLORS

__version__ = "0.1.0"
