"""
montecensus.mutation

Mutations along the Conway spheres S_a of a Montesinos link, the conditions
under which they preserve volume, and classification of the resulting
mutants up to Montesinos equivalence.

A mutation along S_a (the sphere enclosing tangles a and a+1) by the
rotation exchanging NW with NE and SW with SE swaps the a-th and (a+1)-th
fractions. Two links are equivalent exactly when their residues mod 1 agree
up to rotation and reversal and their fraction sums agree, provided the
link has at least 3 tangles and Σ 1/q_j ≤ m − 2.
"""

import math
from collections.abc import Iterable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from itertools import permutations
from typing import Self

from montecensus import config, tangle
from montecensus.logger import log, timed, worker
from montecensus.montesinos import MontesinosLink
from montecensus.tangle import EndpointPairing

type MutationWord = tuple[int, ...]


@dataclass(frozen=True, order=True)
class MutationIndex:
    """The sphere S_a enclosing tangles a and a+1 (1-based)"""

    a: int

    def check(self, m: MontesinosLink) -> Self:
        if not 1 <= self.a <= len(m) - 1:
            raise ValueError(
                f"mutation index {self.a} out of range 1..{len(m) - 1} for {m}"
            )
        return self

    @classmethod
    def all(cls, m: MontesinosLink) -> list[Self]:
        return [cls(a) for a in range(1, len(m))]


def _index(m: MontesinosLink, idx: MutationIndex | int) -> MutationIndex:
    if isinstance(idx, int):
        idx = MutationIndex(idx)
    return idx.check(m)


def mutate(m: MontesinosLink, idx: MutationIndex | int) -> MontesinosLink:
    a = _index(m, idx).a
    entries = list(m.entries)
    entries[a - 1], entries[a] = entries[a], entries[a - 1]
    return MontesinosLink(tuple(entries))


def apply_mutations(m: MontesinosLink, word: Iterable[int]) -> MontesinosLink:
    for a in word:
        m = mutate(m, a)
    return m


def word_for_permutation(perm: Sequence[int]) -> MutationWord:
    """A word of adjacent swaps that rearranges entries into `perm`.

    `perm[k]` is the original position of the entry that should end up at
    position k, so `apply_mutations(m, word)` has entries `m[perm[k]]`.
    """
    if sorted(perm) != list(range(len(perm))):
        raise ValueError(f"not a permutation of 0..{len(perm) - 1}: {perm}")

    current = list(range(len(perm)))
    word = []
    for target, wanted in enumerate(perm):
        j = current.index(wanted)
        while j > target:
            current[j - 1], current[j] = current[j], current[j - 1]
            word.append(j)
            j -= 1
    return tuple(word)


def sphere_is_essential(m: MontesinosLink, idx: MutationIndex | int) -> bool:
    """S_a is incompressible and ∂-incompressible: it bounds at least two
    rational, non-integral tangles on each side."""
    a = _index(m, idx).a
    inside = m.entries[a - 1 : a + 1]
    outside = m.entries[: a - 1] + m.entries[a + 1 :]
    return (
        sum(not e.is_integral for e in inside) >= 2
        and sum(not e.is_integral for e in outside) >= 2
    )


def mutation_is_unlinked(m: MontesinosLink, idx: MutationIndex | int) -> bool:
    """Both enclosed tangles join SE to NW and NE to SW, so the point pairs
    preserved by the rotation are unlinked on the knot."""
    a = _index(m, idx).a
    return all(
        tangle.endpoint_pairing(e) is EndpointPairing.ONE
        for e in m.entries[a - 1 : a + 1]
    )


@dataclass(frozen=True, order=True)
class CanonicalKey:
    """The least dihedral image of the residues mod 1, and the fraction sum"""

    residues: tuple[Fraction, ...]
    total: Fraction

    def encode(self) -> str:
        residues = ",".join(_encode_rational(r) for r in self.residues)
        return f"({residues})|{_encode_rational(self.total)}"

    def __str__(self) -> str:
        return self.encode()

    @staticmethod
    def decode(input: str) -> "CanonicalKey":
        if input.count("|") != 1:
            raise ValueError(f"expected 'residues|total', got {input!r}")
        residues, total = input.split("|")
        return CanonicalKey(
            tuple(f.as_rational() for f in tangle.TangleParser.parse(residues)),
            tangle.TangleFraction.decode(total).as_rational(),
        )


def _encode_rational(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def dihedral_images[T](seq: Sequence[T]) -> list[tuple[T, ...]]:
    """All 2m rotations and reflections of a cyclic sequence"""
    seq = tuple(seq)
    images = []
    for r in range(len(seq)):
        rotated = seq[r:] + seq[:r]
        images.append(rotated)
        images.append(rotated[::-1])
    return images


def dihedral_min[T](seq: Sequence[T]) -> tuple[T, ...]:
    """The least of the 2m dihedral images.

    The least image starts with a least element, so only the two readings
    from each position of the minimum are compared.
    """
    seq = tuple(seq)
    low = min(seq)
    best = None
    for i, x in enumerate(seq):
        if x != low:
            continue
        forward = seq[i:] + seq[:i]
        backward = (x,) + forward[:0:-1]
        candidate = min(forward, backward)
        if best is None or candidate < best:
            best = candidate
    return best


def check_classifiable(m: MontesinosLink):
    if not m.is_normalized():
        raise ValueError(f"{m} is not normalized")
    bound = sum((Fraction(1, e.q) for e in m), Fraction(0))
    if len(m) < 3 or bound > len(m) - 2:
        raise ValueError(
            f"classification hypothesis not met for {m}: "
            f"needs at least 3 tangles and Σ 1/q_j = {bound} ≤ {len(m) - 2}"
        )


def canonical_key(m: MontesinosLink) -> CanonicalKey:
    check_classifiable(m)
    return CanonicalKey(
        dihedral_min([e.residue() for e in m]),
        m.fraction_sum(),
    )


def distinct_count_formula(n: int) -> int:
    """(2n+1)!/(4n+2) = (2n)!/2 pairwise different mutants of K_{2n+1}"""
    if n < 2:
        raise ValueError(f"the mutant count needs n ≥ 2, got {n}")
    return math.factorial(2 * n) // 2


def _ranked(m: MontesinosLink) -> tuple[tuple[int, ...], list[Fraction]]:
    """Replace residues by their rank; comparisons of ranks agree with
    comparisons of residues."""
    residues = [e.residue() for e in m]
    values = sorted(set(residues))
    rank = {v: i for i, v in enumerate(values)}
    return tuple(rank[r] for r in residues), values


def _chunk_classes(seq: tuple[int, ...], first: int) -> set[tuple[int, ...]]:
    """Classes of all orderings of `seq` opening with the entry at `first`"""
    logger = worker(f"enum-{first}")
    head = (seq[first],)
    rest = seq[:first] + seq[first + 1 :]
    classes = set()
    with timed(f"orderings opening with rank {seq[first]}", logger):
        for perm in permutations(rest):
            classes.add(dihedral_min(head + perm))
    logger.trace(f"{len(classes)} classes")
    return classes


def _check_cap(m: MontesinosLink, cap: int):
    if len(m) > cap:
        raise ValueError(
            f"{len(m)} tangles exceed the enumeration cap of {cap}; "
            "use distinct_count_formula instead"
        )


def enumerate_mutant_classes(
    m: MontesinosLink,
    cap: int = config.DEFAULT_ENUMERATE_CAP,
    workers: int | None = None,
) -> frozenset[CanonicalKey]:
    """The canonical keys of every reordering of the tangles of `m`.

    Adjacent swaps generate every permutation, so this is the set of
    mutants of `m` up to equivalence. Orderings are streamed in
    lexicographic order and split by their first entry; equal entries
    open identical chunks, which are visited once.
    """
    total = canonical_key(m).total
    _check_cap(m, cap)
    workers = workers or config.workers()

    seq, values = _ranked(m)
    firsts = sorted({seq[i]: i for i in reversed(range(len(seq)))}.values())

    with timed(f"enumerating {math.factorial(len(seq))} orderings of {m}"):
        if workers > 1 and len(firsts) > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                chunks = list(pool.map(partial(_chunk_classes, seq), firsts))
        else:
            chunks = [_chunk_classes(seq, first) for first in firsts]

    classes = set().union(*chunks)
    log.debug(f"{len(classes)} mutant classes of {m}")
    return frozenset(
        CanonicalKey(tuple(values[i] for i in cls), total) for cls in classes
    )


def mutant_representatives(
    m: MontesinosLink, cap: int = config.DEFAULT_ENUMERATE_CAP
) -> dict[CanonicalKey, MontesinosLink]:
    """The first reordering of `m`, in lexicographic order, reaching each class"""
    check_classifiable(m)
    _check_cap(m, cap)
    found: dict[CanonicalKey, MontesinosLink] = {}
    for perm in permutations(range(len(m))):
        link = MontesinosLink(tuple(m.entries[i] for i in perm))
        key = canonical_key(link)
        if key not in found:
            found[key] = link
    return found
