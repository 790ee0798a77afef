"""Rank-one transformations from cutting and spacer parameters.

Exact stage words, the canonical generating chain, tower measures and
decision procedures for the centralizer, total ergodicity, weak mixing and
minimal self-joinings of bounded, eventually periodic parameter sequences.
"""

from .params import ParamSpec, StageSpec, validate_spec
from .verdict import Status, Verdict

__all__ = ["ParamSpec", "StageSpec", "Status", "Verdict", "validate_spec"]
__version__ = "0.1.0"
