"""U-statistics of dependent time series and their block bootstrap."""

from ._core import *  # noqa: F401,F403
from ._core import Error, __doc__  # noqa: F401
