"""Perfect colorings of the halved 24-cube built from Golay-code cosets and cosets of a linear code."""

__version__ = "0.1.0"
