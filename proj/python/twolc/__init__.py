"""Continued fractions under multiplication by 2: exact transducers, the
exclusion search and the self-similar class tools."""

from ._twolc import (
    ContinuedFraction,
    ParseError,
    QuadraticSurd,
    WitnessSearchExhausted,
    chain,
    class_key,
    double,
    equivalent,
    expand,
    falsify,
    halve,
    halve_plus1,
    scan,
    search,
    self_similar,
    stats,
    surd,
    verify_b2,
    witness,
)

__all__ = [
    "ContinuedFraction",
    "ParseError",
    "QuadraticSurd",
    "WitnessSearchExhausted",
    "chain",
    "class_key",
    "double",
    "equivalent",
    "expand",
    "falsify",
    "halve",
    "halve_plus1",
    "scan",
    "search",
    "self_similar",
    "stats",
    "surd",
    "verify_b2",
    "witness",
]
