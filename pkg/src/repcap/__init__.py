"""Capacity of string-replication systems: rules, closures, constructions, bounds."""

from .closure import Budget, BudgetExceeded, LevelProfile, enumerate_closure, membership, tandem_bins_count
from .rules import Mode, Rule, RuleFamily, StringSystem, Variant, apply, make_system, successors, trace_replay
from .words import Alphabet, Word, word

__all__ = [
    "Alphabet",
    "Budget",
    "BudgetExceeded",
    "LevelProfile",
    "Mode",
    "Rule",
    "RuleFamily",
    "StringSystem",
    "Variant",
    "Word",
    "apply",
    "enumerate_closure",
    "make_system",
    "membership",
    "successors",
    "tandem_bins_count",
    "trace_replay",
    "word",
]
