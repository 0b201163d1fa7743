"""Coded distributed convolution: planning, execution, straggler simulation
and failure-exponent analytics."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401
