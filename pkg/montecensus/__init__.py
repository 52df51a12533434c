"""
montecensus

Counting volume-preserving mutants of Montesinos knots, with certified
volume bounds and growth estimates.

The most used entry points are re-exported here:

    from montecensus import parse_link, canonical_key
    canonical_key(parse_link("(1/7,1/9,1/11,1/13,1/15)"))

"""

from montecensus.montesinos import MontesinosLink, build_family, parse_link
from montecensus.mutation import CanonicalKey, canonical_key


def parse_fraction(input: str):
    from montecensus import tangle

    return tangle.TangleFraction.decode(input)


def parse_key(input: str) -> CanonicalKey:
    return CanonicalKey.decode(input)


__all__ = [
    "CanonicalKey",
    "MontesinosLink",
    "build_family",
    "canonical_key",
    "parse_fraction",
    "parse_key",
    "parse_link",
]
