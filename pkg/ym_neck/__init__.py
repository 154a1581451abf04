"""ym-neck: numerical toolkit for Yang-Mills bubble-neck analysis."""

__version__ = "0.1.0"
