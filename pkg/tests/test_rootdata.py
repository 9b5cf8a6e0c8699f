from fractions import Fraction as Q

import pytest

from weylfan.errors import NonRootSystem
from weylfan.rootdata import (
    DiagramSubset,
    build_root_datum,
    components,
    orthogonal_complement,
    weyl_enumerate,
)


CLASSICAL = [
    ("A1", 2, 2),
    ("A2", 6, 6),
    ("A3", 12, 24),
    ("B2", 8, 8),
    ("B3", 18, 48),
    ("C3", 18, 48),
    ("D4", 24, 192),
    ("G2", 12, 12),
    ("BC1", 4, 2),
    ("BC2", 12, 8),
    ("A1xA1", 4, 4),
    ("A1xA2", 8, 12),
]


@pytest.mark.parametrize("name,roots,weyl_order", CLASSICAL)
def test_catalogue_counts(name, roots, weyl_order):
    datum = build_root_datum(name)
    datum.validate()
    assert len(datum.roots) == roots
    assert len(weyl_enumerate(datum)) == weyl_order


def test_a2_basis_and_bc1_shape():
    a2 = build_root_datum("A2")
    assert len(a2.simples) == 2
    bc1 = build_root_datum("BC1")
    a = bc1.simples[0]
    assert set(bc1.roots) == {(1,), (-1,), (2,), (-2,)}
    assert set(bc1.nondivisible_roots) == {(1,), (-1,)}
    assert a in bc1.multipliable


@pytest.mark.parametrize("name", ["A2", "B2", "BC2", "G2", "A1xA2"])
def test_weyl_elements_permute_roots(name):
    datum = build_root_datum(name)
    weyl = weyl_enumerate(datum)
    root_set = datum.root_set
    for w in weyl:
        assert {w.apply_root(a) for a in datum.roots} == root_set


@pytest.mark.parametrize("name", ["A2", "B2", "BC2", "G2"])
def test_reflection_identity(name):
    datum = build_root_datum(name)
    for a in datum.roots:
        for b in datum.roots:
            c = datum.coroot_pairing(a, b)
            assert c.denominator == 1
            image = tuple(x - int(c) * y for x, y in zip(a, b))
            assert image in datum.root_set


@pytest.mark.parametrize("name", ["A2", "B3", "C3", "G2", "BC2", "A1xA2"])
def test_cartan_matches_inner_product(name):
    datum = build_root_datum(name)
    for i, a in enumerate(datum.simples):
        for j, b in enumerate(datum.simples):
            assert datum.coroot_pairing(a, b) == datum.cartan[i][j]


@pytest.mark.parametrize("name", ["A2", "B2", "G2", "BC2"])
def test_short_simple_root_normalisation(name):
    datum = build_root_datum(name)
    assert min(datum.length_sq(s) for s in datum.simples) == 2


def test_bc_divisibility_partition():
    for name in ["BC1", "BC2"]:
        datum = build_root_datum(name)
        for a in datum.roots:
            doubled = tuple(2 * c for c in a)
            assert (a in datum.multipliable) == (doubled in datum.root_set)
        doubles = {tuple(2 * c for c in a) for a in datum.multipliable}
        assert set(datum.nondivisible_roots) | doubles == set(datum.roots)


def test_weyl_action_compatible_with_pairing():
    datum = build_root_datum("B2")
    weyl = weyl_enumerate(datum)
    x = (Q(1, 3), Q(-2, 5))
    for w in weyl:
        for a in datum.roots:
            assert datum.pairing(w.apply_root(a), w.apply_point(x)) == datum.pairing(a, x)


def test_word_lengths_start_at_identity():
    weyl = weyl_enumerate(build_root_datum("A2"))
    lengths = sorted(w.length for w in weyl)
    assert lengths == [0, 1, 1, 2, 2, 3]


def test_components_examples():
    a3 = build_root_datum("A3")
    assert components(a3, {0, 2}) == [frozenset({0}), frozenset({2})]
    a2 = build_root_datum("A2")
    assert components(a2, {0, 1}) == [frozenset({0, 1})]
    aa = build_root_datum("A1xA1")
    assert components(aa, {0, 1}) == [frozenset({0}), frozenset({1})]


def test_orthogonal_complement_examples():
    a2 = build_root_datum("A2")
    assert orthogonal_complement(a2, {0}) == frozenset()
    a3 = build_root_datum("A3")
    assert orthogonal_complement(a3, {0}) == frozenset({2})
    assert orthogonal_complement(a3, set()) == frozenset({0, 1, 2})


def test_diagram_subset_type():
    a3 = build_root_datum("A3")
    ds = DiagramSubset(a3, frozenset({0, 2}))
    assert ds.components == (frozenset({0}), frozenset({2}))
    assert ds.perp == frozenset()
    assert not ds.perp & ds.indices


def test_explicit_list_roundtrip():
    datum = build_root_datum([[1, 0], [-1, 0], [0, 1], [0, -1]], basis=[0, 2])
    datum.validate()
    assert datum.rank == 2
    assert len(datum.roots) == 4
    assert datum.essential
    assert len(datum.diagram_components) == 2


def test_explicit_list_rejections():
    with pytest.raises(NonRootSystem):
        build_root_datum([[1, 0], [0, 1]], basis=[0, 1])  # not closed under negation
    with pytest.raises(NonRootSystem):
        build_root_datum([[1, 0], [-1, 0], [Q(1, 2), 0], [Q(-1, 2), 0]], basis=[0])
    with pytest.raises(NonRootSystem):
        build_root_datum("Z9")


def test_explicit_inessential_flag():
    datum = build_root_datum([[1, 0], [-1, 0]], basis=[0])
    assert not datum.essential
    assert datum.input_rank == 2
