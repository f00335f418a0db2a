"""Sum-over-path quantum computation toolkit (pybind11 bindings)."""

from ._pathsum import *  # noqa: F401,F403
from ._pathsum import __doc__  # noqa: F401
