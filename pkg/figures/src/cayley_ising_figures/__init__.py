"""Plot rendering for cayley-ising CSV output; no physics lives here."""

from .render import FIG1_COLUMNS, FIG2_COLUMNS, FigureSpec, SchemaError, load_columns, render

__version__ = "0.1.0"
