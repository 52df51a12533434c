import random
from collections import Counter
from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st

import montecensus
from montecensus import montesinos, mutation
from montecensus.montesinos import MontesinosLink
from montecensus.mutation import CanonicalKey, MutationIndex


def naive_equivalent(a: MontesinosLink, b: MontesinosLink) -> bool:
    """Residues agree up to rotation and reversal, and the sums agree"""
    ra = tuple(e.residue() for e in a)
    rb = tuple(e.residue() for e in b)
    return a.fraction_sum() == b.fraction_sum() and any(
        rb == image for image in mutation.dihedral_images(ra)
    )


def reorderings(m: MontesinosLink):
    for perm in permutations(m.entries):
        yield MontesinosLink(perm)


def test_mutate():
    m = montesinos.build_family(2)
    assert mutation.mutate(m, 1).encode() == "(1/9,1/7,1/11,1/13,1/15)"
    assert mutation.mutate(m, MutationIndex(4)).encode() == "(1/7,1/9,1/11,1/15,1/13)"
    for bad in [0, 5]:
        with pytest.raises(ValueError, match="out of range"):
            mutation.mutate(m, bad)


def test_mutate_equal_neighbours():
    m = MontesinosLink.of("1/7", "1/7", "1/9")
    assert mutation.mutate(m, 1) == m
    assert mutation.mutate(mutation.mutate(m, 2), 2) == m


def test_mutation_indices():
    m = montesinos.build_family(1)
    assert MutationIndex.all(m) == [MutationIndex(1), MutationIndex(2)]


@given(st.permutations(range(7)))
def test_word_for_permutation(perm):
    m = montesinos.build_family(3)
    word = mutation.word_for_permutation(perm)
    assert all(1 <= a <= len(m) - 1 for a in word)
    moved = mutation.apply_mutations(m, word)
    assert moved.entries == tuple(m[i] for i in perm)


def test_word_for_permutation_rejects():
    with pytest.raises(ValueError, match="not a permutation"):
        mutation.word_for_permutation([0, 0, 1])


@pytest.mark.parametrize("n", range(2, 7))
def test_family_spheres_are_essential_and_unlinked(n):
    m = montesinos.build_family(n)
    for idx in MutationIndex.all(m):
        assert mutation.sphere_is_essential(m, idx)
        assert mutation.mutation_is_unlinked(m, idx)


def test_spheres_of_three_tangles_are_inessential():
    m = montesinos.build_family(1)
    assert not any(mutation.sphere_is_essential(m, i) for i in MutationIndex.all(m))


def test_linked_mutation():
    m = MontesinosLink.of("1/2", "1/7", "1/9", "1/11")
    assert not mutation.mutation_is_unlinked(m, 1)
    assert mutation.mutation_is_unlinked(m, 2)
    assert not mutation.mutation_is_unlinked(
        MontesinosLink.of("1/2", "1/7", "1/9", "1/7"), 1
    )
    assert mutation.mutation_is_unlinked(MontesinosLink.of(*["1/7"] * 5), 2)


def test_canonical_key():
    key = mutation.canonical_key(montesinos.build_family(1))
    assert key.encode() == "(1/11,1/9,1/7)|239/693"
    assert CanonicalKey.decode(key.encode()) == key
    assert montecensus.parse_key(key.encode()) == key
    assert str(key) == key.encode()
    with pytest.raises(ValueError):
        CanonicalKey.decode("(1/7,1/9)")

    same = mutation.canonical_key(MontesinosLink.of("1/7", "1/7", "1/7"))
    assert same.residues == (Fraction(1, 7),) * 3
    assert same.total == Fraction(3, 7)


def test_canonical_key_of_non_unit_fractions():
    m = montesinos.parse_link("(-1/7,9/4,2/3)")
    key = mutation.canonical_key(m)
    assert key.residues == (Fraction(1, 4), Fraction(2, 3), Fraction(6, 7))
    assert key.total == Fraction(-1, 7) + Fraction(9, 4) + Fraction(2, 3)


@pytest.mark.parametrize(
    "text, reason",
    [
        ("(1/7,1/9)", "classification hypothesis not met"),
        ("(1/2,1/2,1/2)", "classification hypothesis not met"),
    ],
)
def test_canonical_key_rejects(text, reason):
    with pytest.raises(ValueError, match=reason):
        mutation.canonical_key(montesinos.parse_link(text))


def test_canonical_key_needs_normalized_links():
    with pytest.raises(ValueError, match="not normalized"):
        mutation.canonical_key(MontesinosLink.of("2", "1/7", "1/9"))


@given(st.lists(st.integers(0, 3), min_size=1, max_size=8))
def test_dihedral_min(seq):
    images = mutation.dihedral_images(seq)
    assert len(images) == 2 * len(seq)
    assert mutation.dihedral_min(seq) == min(images)
    for image in images:
        assert mutation.dihedral_min(image) == min(images)


def test_keys_classify_reorderings_of_five():
    links = list(reorderings(montesinos.build_family(2)))
    keys = [mutation.canonical_key(m) for m in links]
    for a, ka in zip(links, keys):
        for b, kb in zip(links, keys):
            assert (ka == kb) == naive_equivalent(a, b)


def test_keys_classify_reorderings_of_seven():
    m = montesinos.build_family(3)
    groups = Counter()
    for link in reorderings(m):
        key = mutation.canonical_key(link)
        groups[key] += 1
        for image in mutation.dihedral_images(link.entries):
            assert mutation.canonical_key(MontesinosLink(image)) == key
    # each key holds exactly one dihedral orbit of 14 reorderings
    assert len(groups) == 360
    assert set(groups.values()) == {2 * len(m)}


@pytest.mark.parametrize("n, count", [(2, 12), (3, 360)])
def test_enumerate_mutant_classes(n, count):
    m = montesinos.build_family(n)
    classes = mutation.enumerate_mutant_classes(m)
    assert len(classes) == count == mutation.distinct_count_formula(n)
    assert mutation.canonical_key(m) in classes


@pytest.mark.slow
def test_enumerate_mutant_classes_of_nine():
    m = montesinos.build_family(4)
    assert len(mutation.enumerate_mutant_classes(m)) == 20160


def test_enumeration_does_not_depend_on_workers():
    m = montesinos.build_family(3)
    assert mutation.enumerate_mutant_classes(
        m, workers=2
    ) == mutation.enumerate_mutant_classes(m, workers=1)


def test_enumeration_cap():
    with pytest.raises(ValueError, match="distinct_count_formula"):
        mutation.enumerate_mutant_classes(montesinos.build_family(6))
    with pytest.raises(ValueError, match="cap of 4"):
        mutation.enumerate_mutant_classes(montesinos.build_family(2), cap=4)


def test_repeated_tangles():
    m = MontesinosLink.of("1/7", "1/7", "1/9", "1/9", "1/11")
    naive = set()
    for link in reorderings(m):
        residues = tuple(e.residue() for e in link)
        naive.add(min(mutation.dihedral_images(residues)))
    classes = mutation.enumerate_mutant_classes(m)
    assert len(classes) == len(naive) == 4
    assert {k.residues for k in classes} == naive


def test_mutant_representatives():
    m = montesinos.build_family(2)
    reps = mutation.mutant_representatives(m)
    assert set(reps) == mutation.enumerate_mutant_classes(m)
    assert reps[mutation.canonical_key(m)] == m
    for key, link in reps.items():
        assert mutation.canonical_key(link) == key


def test_distinct_count_formula():
    assert [mutation.distinct_count_formula(n) for n in (2, 3, 4)] == [12, 360, 20160]
    with pytest.raises(ValueError):
        mutation.distinct_count_formula(1)


def test_keys_are_sortable():
    keys = sorted(mutation.enumerate_mutant_classes(montesinos.build_family(2)))
    assert keys == sorted(keys, key=lambda k: (k.residues, k.total))


@pytest.mark.slow
def test_random_mutation_words():
    m = montesinos.build_family(3)
    classes = mutation.enumerate_mutant_classes(m)
    rng = random.Random(2025)
    for _ in range(1000):
        word = [rng.randint(1, len(m) - 1) for _ in range(rng.randint(1, 30))]
        mutant = mutation.apply_mutations(m, word)
        assert montesinos.component_count(mutant) == 1
        assert montesinos.is_alternating_vertical(mutant)
        assert montesinos.is_hyperbolic_witness(mutant)
        assert mutant.fraction_sum() == m.fraction_sum()
        assert mutation.canonical_key(mutant) in classes
