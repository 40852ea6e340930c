"""Planar semimodular lattices: slimming, rectangular extensions and
decomposition into patch lattices glued over chains."""

from ._latpatch import (
    Diagram,
    LatticeError,
    check,
    decompose,
    export_dot,
    generate,
    is_isomorphic,
    oracle,
    parse_document,
    rectangularize,
    sequence,
    serialize,
    slim,
    verify,
)

__all__ = [
    "Diagram",
    "LatticeError",
    "check",
    "decompose",
    "export_dot",
    "generate",
    "is_isomorphic",
    "oracle",
    "parse_document",
    "rectangularize",
    "sequence",
    "serialize",
    "slim",
    "verify",
]
