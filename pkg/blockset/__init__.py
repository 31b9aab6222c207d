"""Block languages as bitmaps and their minimal automata."""

__all__ = ["__version__"]
__version__ = "0.1.0"
