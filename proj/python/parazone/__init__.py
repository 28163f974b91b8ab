"""Python bindings for parazone."""

from ._core import *  # noqa: F401,F403
from ._core import Error, InvalidInput, BudgetExceeded, Seq, Config  # noqa: F401

__version__ = "0.1.0"
