"""Numerical laboratory for homogeneity-one coagulation dynamics.

Thin package wrapper around the compiled module; everything public lives
in ``coag._core`` and is re-exported here.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
