"""Tableau-based proof laboratory for normal logic programs."""

from .program import (
    BOT,
    Body,
    ExtensionSet,
    ExtensionStep,
    Lit,
    Program,
    Rule,
    combine,
    extend,
    rule,
)
from .semantics import (
    classical_model_check,
    enumerate_stable,
    external_bodies,
    gl_reduct,
    greatest_unfounded,
    is_stable,
    is_tight,
    least_model,
    loops,
    partial_eval,
    split,
)

__version__ = "0.1.0"
