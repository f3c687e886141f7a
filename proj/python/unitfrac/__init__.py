"""Exact counts and Chernoff bounds for subsets of {1..n} with reciprocal sum <= 1."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401
