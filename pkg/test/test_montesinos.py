import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from montecensus import montesinos, tangle
from montecensus.montesinos import FamilyParams, MontesinosLink
from montecensus.tangle import TangleFraction


def fractions() -> st.SearchStrategy[TangleFraction]:
    return st.builds(TangleFraction.of, st.integers(-50, 50), st.integers(1, 12))


def vertical_links() -> st.SearchStrategy[MontesinosLink]:
    entries = st.lists(st.integers(2, 15).map(lambda t: TangleFraction(1, t)), min_size=2, max_size=7)
    return entries.map(lambda es: MontesinosLink(tuple(es)))


@pytest.mark.parametrize(
    "text, expected",
    [
        ("(1/7,1/9,1/11)", "(1/7,1/9,1/11)"),
        ("(2,1/9,1/11)", "(19/9,1/11)"),
        ("(1/7,3,1/11)", "(1/7,34/11)"),
        ("(1/7,1/9,2)", "(15/7,1/9)"),
        ("( 1/7 , 1/9 )", "(1/7,1/9)"),
    ],
)
def test_normalize(text, expected):
    assert montesinos.parse_link(text).encode() == expected


@pytest.mark.parametrize(
    "text, reason",
    [
        ("(1/0,1/7)", "infinity"),
        ("(1,2)", "degenerate Montesinos description"),
        ("(0,3)", "degenerate Montesinos description"),
    ],
)
def test_normalize_rejects(text, reason):
    with pytest.raises(ValueError, match=reason):
        montesinos.parse_link(text)


def test_normalize_empty():
    with pytest.raises(ValueError):
        montesinos.normalize([])


@given(st.lists(fractions(), min_size=1, max_size=8))
def test_normalize_keeps_sum(entries):
    assume(not all(e.is_integral for e in entries))
    m = montesinos.normalize(entries)
    assert m.is_normalized()
    assert m.fraction_sum() == sum(e.as_rational() for e in entries)
    assert montesinos.normalize(m.entries) == m


def test_decode_does_not_normalize():
    m = MontesinosLink.decode("(2,1/9,1/11)")
    assert len(m) == 3
    assert not m.is_normalized()
    assert str(m) == "K(2/1,1/9,1/11)"


def test_build_family():
    assert montesinos.build_family(1).encode() == "(1/7,1/9,1/11)"
    assert montesinos.build_family(2).encode() == "(1/7,1/9,1/11,1/13,1/15)"
    assert montesinos.build_family(3)[-1] == TangleFraction(1, 19)
    assert montesinos.build_family(FamilyParams(4)) == montesinos.build_family(4)
    with pytest.raises(ValueError, match="at least 1"):
        montesinos.build_family(0)


@pytest.mark.parametrize(
    "t_list, reason",
    [
        ((7, 9), "odd number of at least 3 tangles"),
        ((7,), "odd number of at least 3 tangles"),
        ((7, 8, 9), "t_2 even"),
        ((7, 5, 9), "t_2 ≤ 6"),
    ],
)
def test_build_generalized_rejects(t_list, reason):
    with pytest.raises(ValueError, match=reason):
        montesinos.build_generalized(t_list)


def test_build_generalized():
    m = montesinos.build_generalized([7, 7, 9, 9, 11])
    assert m == MontesinosLink.of("1/7", "1/7", "1/9", "1/9", "1/11")


@pytest.mark.parametrize("n", range(1, 11))
def test_family_is_a_knot(n):
    m = montesinos.build_family(n)
    assert montesinos.component_count(m) == 1
    assert tangle.trace_components(montesinos.diagram_words(m)) == 1


def test_component_count():
    assert montesinos.component_count(MontesinosLink.of("1/2", "1/2")) == 2
    assert montesinos.component_count(MontesinosLink.of("1/7", "1/7", "1/7")) == 1
    assert montesinos.component_count(MontesinosLink.of("1/3", "1/3")) == 2
    with pytest.raises(ValueError):
        montesinos.component_count(MontesinosLink(()))


@pytest.mark.parametrize("length", [3, 5, 7, 9])
def test_odd_sums_of_one_tangles_are_knots(length):
    m = MontesinosLink(tuple(TangleFraction(1, 2 * i + 3) for i in range(length)))
    assert montesinos.component_count(m) == 1


@given(vertical_links(), st.integers(0, 6), st.booleans())
def test_component_count_is_dihedral(m, shift, flip):
    r = shift % len(m)
    entries = m.entries[r:] + m.entries[:r]
    if flip:
        entries = entries[::-1]
    moved = MontesinosLink(entries)
    assert montesinos.component_count(moved) == montesinos.component_count(m)
    assert montesinos.component_count(m) == tangle.trace_components(
        montesinos.diagram_words(m)
    )


@pytest.mark.parametrize("n", range(1, 51))
def test_family_diagram_predicates(n):
    m = montesinos.build_family(n)
    assert montesinos.is_hyperbolic_witness(m)
    assert montesinos.is_alternating_vertical(m)


def test_witness():
    assert not montesinos.is_hyperbolic_witness(MontesinosLink.of("1/5", "1/7", "1/9"))
    assert not montesinos.is_hyperbolic_witness(MontesinosLink.of("1/7"))
    with pytest.raises(ValueError, match="vertical-tangle diagrams only"):
        montesinos.is_hyperbolic_witness(MontesinosLink.of("2/7", "1/9", "1/11"))
    with pytest.raises(ValueError, match="vertical-tangle diagrams only"):
        montesinos.is_hyperbolic_witness(MontesinosLink.of("1", "1/9", "1/11"))


def test_alternating():
    assert not montesinos.is_alternating_vertical(MontesinosLink.of("-1/7", "1/9", "1/11"))


def test_pairing_graph():
    g = montesinos.pairing_graph(montesinos.build_family(1))
    assert g.number_of_nodes() == 12
    assert g.number_of_edges() == 12
    assert all(d == 2 for _, d in g.degree())
