from __future__ import annotations

__version__ = "1.0.0"

from .cli import main

__all__ = ["main", "__version__"]
