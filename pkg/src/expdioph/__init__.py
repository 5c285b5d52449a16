"""Search tools for a^x + b^y = c^z with two solutions."""

__version__ = "0.1.0"
