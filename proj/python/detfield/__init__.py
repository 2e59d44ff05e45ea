"""Determinant fields of finite-rank state-space systems."""

from ._detfield import *  # noqa: F401,F403
from ._detfield import Error, HypothesisViolation, InvalidArgument
