"""
montecensus.tangle.base

This module provides the exact arithmetic of rational tangles: fractions,
twist words describing tangle diagrams, and the endpoint pairings of the
resulting arcs.

It is recommended to import this module qualified

from montecensus import tangle

"""

import math
import re
from collections import namedtuple
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import NoReturn, Optional, Self


@dataclass(frozen=True, order=True)
class TangleFraction:
    """The fraction p/q of a rational tangle, with the infinity tangle as 1/0.

    Always reduced, the sign is carried by the numerator. Construct through
    `TangleFraction.of` unless the pair is already canonical.
    """

    p: int
    q: int

    def __post_init__(self):
        assert self.q >= 0, f"denominator must be non-negative, got {self.q}"
        assert math.gcd(self.p, self.q) == 1, f"{self.p}/{self.q} is not reduced"

    @classmethod
    def of(cls, p: int, q: int = 1) -> Self:
        if p == 0 and q == 0:
            raise ValueError("0/0 is not a tangle fraction")
        if q == 0:
            return cls(1, 0)
        if q < 0:
            p, q = -p, -q
        g = math.gcd(p, q)
        return cls(p // g, q // g)

    @classmethod
    def from_rational(cls, value: Fraction | int) -> Self:
        value = Fraction(value)
        return cls(value.numerator, value.denominator)

    def as_rational(self) -> Fraction:
        if self.is_infinite:
            raise ValueError("the infinity tangle has no rational value")
        return Fraction(self.p, self.q)

    @property
    def is_infinite(self) -> bool:
        return self.q == 0

    @property
    def is_integral(self) -> bool:
        return self.q == 1

    @property
    def is_vertical(self) -> bool:
        """A vertical tangle 1/[t] with at least two crossings"""
        return abs(self.p) == 1 and self.q >= 2

    def residue(self) -> Fraction:
        """The fraction modulo one, in [0, 1)"""
        if self.is_infinite:
            raise ValueError("the infinity tangle has no residue")
        return Fraction(self.p % self.q, self.q)

    def reciprocal(self) -> "TangleFraction":
        if self.p == 0:
            return INFINITY
        return TangleFraction.of(self.q, self.p)

    def shift(self, k: int) -> "TangleFraction":
        """Add k horizontal half twists; the infinity tangle absorbs them."""
        if self.is_infinite:
            return self
        return TangleFraction(self.p + k * self.q, self.q)

    def encode(self) -> str:
        return f"{self.p}/{self.q}"

    def __str__(self) -> str:
        return self.encode()

    @staticmethod
    def decode(input: str) -> "TangleFraction":
        parser = TangleParser(input)
        fraction = parser.parse_fraction()
        parser.eof()
        return fraction


INFINITY = TangleFraction(1, 0)
ZERO = TangleFraction(0, 1)


class Axis(Enum):
    HORIZONTAL = "h"
    VERTICAL = "v"


Move = namedtuple("Move", "axis count")

MOVE_RE = re.compile(r"(?P<axis>[hv])(?P<count>[+-]?\d+)")


@dataclass(frozen=True)
class TwistWord:
    """A rational tangle diagram as a sequence of twists.

    Horizontal twists act on the right endpoints (NE, SE), vertical twists
    on the bottom endpoints (SW, SE). The empty word is the 0-tangle.
    """

    moves: tuple[Move, ...] = ()

    @classmethod
    def of(cls, *moves: tuple[Axis | str, int]) -> Self:
        return cls(tuple(Move(Axis(axis), int(count)) for axis, count in moves))

    def __len__(self) -> int:
        return len(self.moves)

    def __iter__(self) -> Iterator[Move]:
        return iter(self.moves)

    def __add__(self, other: "TwistWord") -> "TwistWord":
        return TwistWord(self.moves + other.moves)

    def crossings(self) -> int:
        return sum(abs(m.count) for m in self.moves)

    def encode(self) -> str:
        return " ".join(f"{m.axis.value}{m.count}" for m in self.moves)

    def __str__(self) -> str:
        return self.encode() or "ϵ"

    @staticmethod
    def decode(input: str) -> "TwistWord":
        moves = []
        for token in input.split():
            if (match := MOVE_RE.fullmatch(token)) is None:
                raise ValueError(f"invalid twist {token!r} in {input!r}")
            moves.append(Move(Axis(match["axis"]), int(match["count"])))
        return TwistWord(tuple(moves))


class Corner(Enum):
    NW = "NW"
    NE = "NE"
    SW = "SW"
    SE = "SE"


class EndpointPairing(Enum):
    """How the two arcs of a rational tangle connect its four corners."""

    ZERO = ((Corner.NW, Corner.NE), (Corner.SW, Corner.SE))
    INFINITY = ((Corner.NW, Corner.SW), (Corner.NE, Corner.SE))
    ONE = ((Corner.NW, Corner.SE), (Corner.NE, Corner.SW))

    def pairs(self) -> tuple[tuple[Corner, Corner], tuple[Corner, Corner]]:
        return self.value

    def partner(self, corner: Corner) -> Corner:
        for a, b in self.value:
            if corner == a:
                return b
            if corner == b:
                return a
        raise AssertionError(f"{corner} is not paired by {self.name}")

    @classmethod
    def from_pairs(cls, pairs: Iterable[Iterable[Corner]]) -> "EndpointPairing":
        wanted = {frozenset(p) for p in pairs}
        for kind in cls:
            if {frozenset(p) for p in kind.value} == wanted:
                return kind
        raise ValueError(f"not a pairing of the four corners: {wanted}")


def fraction_of(word: TwistWord) -> TangleFraction:
    """The fraction of the rational tangle described by `word`.

    A word starting with a vertical move starts from the infinity tangle, so
    that a leading (v, n) is the elementary vertical tangle 1/[n]; every other
    word starts from the 0-tangle.

    A leading zero-count move still selects the starting tangle: (v, 0) alone
    is the infinity tangle and (h, 0), (v, 7) is 0, not 1/7.
    """
    if word.moves and word.moves[0].axis is Axis.VERTICAL:
        f = INFINITY
    else:
        f = ZERO

    for move in word:
        match move.axis:
            case Axis.HORIZONTAL:
                f = f.shift(move.count)
            case Axis.VERTICAL:
                f = f.reciprocal().shift(move.count).reciprocal()
    return f


def are_equivalent(w1: TwistWord, w2: TwistWord) -> bool:
    """Two rational tangles are equivalent exactly when their fractions agree"""
    return fraction_of(w1) == fraction_of(w2)


def add_tangles(
    f1: TangleFraction, f2: TangleFraction
) -> tuple[TangleFraction | None, bool]:
    """Add two rational tangles.

    The sum is rational only when one summand is integral; otherwise no
    fraction is returned.
    """
    if f1.is_infinite or f2.is_infinite:
        raise ValueError("infinity tangle addition undefined here")
    if not (f1.is_integral or f2.is_integral):
        return None, False
    return TangleFraction.from_rational(f1.as_rational() + f2.as_rational()), True


def endpoint_pairing(f: TangleFraction) -> EndpointPairing:
    if f.p % 2 == 0:
        return EndpointPairing.ZERO
    if f.q % 2 == 0:
        return EndpointPairing.INFINITY
    return EndpointPairing.ONE


def continued_fraction(f: TangleFraction) -> list[int]:
    """The regular continued fraction [a0; a1, ..., ak] of a finite fraction"""
    p, q = f.p, f.q
    if q == 0:
        raise ValueError("the infinity tangle has no continued fraction")
    terms = []
    while q:
        a = p // q
        terms.append(a)
        p, q = q, p - a * q
    return terms


def continued_fraction_word(f: TangleFraction) -> TwistWord:
    """A twist word for `f`, alternating axes along its continued fraction.

    The last term a0 is horizontal, a1 vertical, and so on inwards, so the
    innermost term opens the word.
    """
    if f.is_infinite:
        return TwistWord.of((Axis.VERTICAL, 0))
    terms = continued_fraction(f)
    moves = [
        (Axis.HORIZONTAL if i % 2 == 0 else Axis.VERTICAL, a)
        for i, a in enumerate(terms)
    ]
    return TwistWord.of(*reversed(moves))


@dataclass
class TangleParser:
    """Parses fractions and parenthesised fraction lists such as "(1/7, -3/1, 2)"."""

    Token = namedtuple("Token", "kind value")

    input: str
    head: Optional["TangleParser.Token"]
    _tokens: Iterator["TangleParser.Token"]

    def __init__(self, input: str) -> None:
        self.input = input
        self._tokens = TangleParser.tokenize(input)
        self.next()

    @staticmethod
    def tokenize(string: str) -> Iterator["TangleParser.Token"]:
        token_specification = [
            ("OPEN", r"\("),
            ("CLOSE", r"\)"),
            ("INT", r"[+-]?\d+"),
            ("SLASH", r"/"),
            ("COMMA", r","),
            ("SKIP", r"[ \t\r\n]+"),
            ("MISMATCH", r"."),
        ]
        tok_regex = "|".join(f"(?P<{n}>{m})" for n, m in token_specification)

        for m in re.finditer(tok_regex, string):
            kind, value = m.lastgroup, m.group()
            if kind == "SKIP":
                continue
            if kind == "MISMATCH":
                raise ValueError(f"unexpected character {value!r} in {string!r}")
            yield TangleParser.Token(kind, value)

    def next(self):
        try:
            self.head = next(self._tokens)
        except StopIteration:
            self.head = None

    def expected(self, expected) -> NoReturn:
        got = self.head.value if self.head else "end of input"
        raise ValueError(f"expected {expected} but got {got!r} in {self.input!r}")

    def expect(self, expect) -> Token:
        head = self.head
        if head is None or head.kind != expect:
            self.expected(expect)
        self.next()
        return head

    def eof(self):
        if self.head is not None:
            self.expected("end of input")

    def parse_fraction(self) -> TangleFraction:
        p = int(self.expect("INT").value)
        q = 1
        if self.head and self.head.kind == "SLASH":
            self.next()
            q = int(self.expect("INT").value)
        if q < 0:
            self.expected("a non-negative denominator")
        return TangleFraction.of(p, q)

    def parse_fraction_list(self) -> list[TangleFraction]:
        self.expect("OPEN")
        fractions = [self.parse_fraction()]
        while self.head and self.head.kind == "COMMA":
            self.next()
            fractions.append(self.parse_fraction())
        self.expect("CLOSE")
        return fractions

    @staticmethod
    def parse(string: str) -> list[TangleFraction]:
        parser = TangleParser(string)
        fractions = parser.parse_fraction_list()
        parser.eof()
        return fractions


def encode_fractions(fractions: Sequence[TangleFraction]) -> str:
    return "(" + ",".join(f.encode() for f in fractions) + ")"
