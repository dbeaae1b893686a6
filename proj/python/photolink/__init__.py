"""Link-budget, noise, and frequency-planning toolkit for optically driven
cryogenic microwave and mm-wave sources."""

from ._core import *  # noqa: F401,F403
from . import _core

__all__ = [name for name in dir(_core) if not name.startswith("_")]
__version__ = "0.1.0"
