"""Lambda-terms and their resource approximants via the Taylor expansion.

The submodules are layered: ``syntax`` (plain lambda terms), ``rigid`` and
``resource`` (the two approximant calculi), ``expansion`` (bounded expansion
and the links between the layers), ``analysis`` (three-valued normalization
verdicts) and ``laws`` (randomized law checking).  ``cli`` wraps them all.
"""

from taylorlam.analysis import (
    Outcome, Property, Verdict, analyze, check_conservation, in_S, oracle,
)
from taylorlam.expansion import Budget, rigid_expand, taylor_support_expand
from taylorlam.laws import LawReport, check_law
from taylorlam.resource import Sum, parse_resource, parse_sum, render_resource, render_sum
from taylorlam.rigid import ZERO, parse_rigid, render_rigid
from taylorlam.syntax import ParseError, StrategyKind, parse, render

__all__ = [
    "Budget", "LawReport", "Outcome", "ParseError", "Property", "StrategyKind", "Sum",
    "Verdict", "ZERO", "analyze", "check_conservation", "check_law", "in_S", "oracle",
    "parse", "parse_resource", "parse_rigid", "parse_sum", "render", "render_resource",
    "render_rigid", "render_sum", "rigid_expand", "taylor_support_expand",
]
__version__ = "0.1.0"
