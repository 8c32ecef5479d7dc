"""Coherence of leader-follower consensus networks."""

from ._core import *  # noqa: F401,F403
from ._core import CoherenceError, __version__

__all__ = [name for name in dir() if not name.startswith("_")]
