"""Execution engine selection.

The compiled kernel is used when its extension module imported cleanly;
otherwise the pure-Python engine takes over.  Set ``ROLEPSO_ENGINE`` to
``compiled`` or ``python`` before import to force one (``compiled`` then
fails loudly when the extension is missing).
"""

from __future__ import annotations

import os


def load_engine(name: str):
    """Import a concrete engine module by name."""
    if name == "python":
        from rolepso.engine import pyfallback

        return pyfallback
    if name == "compiled":
        from rolepso.engine import compiled

        return compiled
    raise ValueError(f"unknown engine {name!r}; expected 'compiled' or 'python'")


def _select():
    requested = os.environ.get("ROLEPSO_ENGINE", "auto").strip().lower() or "auto"
    if requested == "auto":
        try:
            return load_engine("compiled")
        except ImportError:
            return load_engine("python")
    return load_engine(requested)


active = _select()


def active_engine() -> str:
    """Name of the engine runs use by default: 'compiled' or 'python'."""
    return active.NAME
