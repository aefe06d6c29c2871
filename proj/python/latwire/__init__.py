"""Lattice wirings of ordered trees of maximum degree 3."""

from ._latwire import *  # noqa: F401,F403
from ._latwire import (
    BudgetError,
    DegreeError,
    FormatError,
    NoLegalPlanError,
    OrderingError,
    ParseError,
)

__version__ = "0.1.0"
