from fractions import Fraction as Q

import pytest

from helpers import sample_points, sign_vector_cone_count
from weylfan import linalg as la
from weylfan.cones import Cone, is_face_closure, is_face_supporting
from weylfan.errors import DegenerateJ, NotEssential, TypeMismatch
from weylfan.fans import (
    cone_of_parabolic,
    fan_FJ,
    parabolic_fan,
    weyl_fan,
    weyl_facet_points,
)
from weylfan.rootdata import build_root_datum, weyl_enumerate


@pytest.mark.parametrize(
    "name,count",
    [("A1", 3), ("A2", 13), ("B2", 17), ("BC1", 3), ("BC2", 17), ("A1xA1", 9), ("G2", 25)],
)
def test_weyl_fan_counts_match_sign_vector_oracle(name, count):
    datum = build_root_datum(name)
    fan = weyl_fan(datum)
    assert len(fan) == count
    assert sign_vector_cone_count(datum) == count


def test_weyl_fan_a2_structure():
    fan = weyl_fan(build_root_datum("A2"))
    dims = sorted(c.dim for c in fan.cones)
    assert dims == [0] + [1] * 6 + [2] * 6


def test_fan_fj_a2_structure():
    datum = build_root_datum("A2")
    fan, cores = fan_FJ(datum, [0])
    assert len(fan) == 7
    dims = sorted(c.dim for c in fan.cones)
    assert dims == [0, 1, 1, 1, 2, 2, 2]
    # each merged 2-cone swallows two chambers and one wall of the Weyl fan
    wfan = weyl_fan(datum)
    for i, cone in enumerate(fan.cones):
        if cone.dim != 2:
            continue
        inside = [
            j
            for j, wc in enumerate(wfan.cones)
            if cone.contains(wc.relint_point()) and not wc.is_origin
        ]
        got = sorted(wfan.cones[j].dim for j in inside)
        assert got == [1, 2, 2]
    # the three rays have core type {a2}
    for i, cone in enumerate(fan.cones):
        if cone.dim == 1:
            assert cores[i].type_indices == frozenset({1})


def test_fan_fj_empty_equals_weyl_fan():
    datum = build_root_datum("B2")
    lhs = parabolic_fan(datum, ())
    rhs = weyl_fan(datum)
    assert {c.key for c in lhs.cones} == {c.key for c in rhs.cones}


def test_fan_fj_core_example():
    datum = build_root_datum("A2")
    fan, cores = fan_FJ(datum, [0])
    # the fundamental merged cone: identity translate of the open standard cone
    idx = [
        i
        for i in range(len(fan))
        if fan.cones[i].dim == 2 and cores[i].weyl.word == ()
    ]
    assert len(idx) == 1
    info = cores[idx[0]]
    assert info.type_indices == frozenset({0})
    # its core is the face of the fundamental chamber of type {a1}
    face = Cone.from_system(
        2, [datum.covector(datum.simples[0])], [datum.covector(datum.simples[1])]
    )
    assert info.cone.key == face.key


def test_degenerate_j_rejected():
    with pytest.raises(DegenerateJ):
        parabolic_fan(build_root_datum("A2"), [0, 1])
    with pytest.raises(DegenerateJ):
        parabolic_fan(build_root_datum("A1xA1"), [0])
    with pytest.raises(DegenerateJ):
        parabolic_fan(build_root_datum("A2"), [5])


def test_not_essential_rejected():
    datum = build_root_datum([[1, 0], [-1, 0]], basis=[0])
    with pytest.raises(NotEssential):
        weyl_fan(datum)


@pytest.mark.parametrize("name,J", [("A2", ()), ("A2", (0,)), ("B2", (1,)), ("BC2", (0,)), ("A1xA2", (1,))])
def test_fan_axioms_validate(name, J):
    fan = parabolic_fan(build_root_datum(name), J)
    stats = fan.validate()
    assert stats["cones"] == len(fan)


def test_partition_on_samples_a2():
    fan = parabolic_fan(build_root_datum("A2"), [0])
    for p in sample_points(fan, 200):
        fan.cone_containing(p)


def test_origin_is_face_of_everything():
    fan = weyl_fan(build_root_datum("B2"))
    o = fan.origin_index
    for g in range(len(fan)):
        assert fan.is_face(o, g)
        assert fan.is_face(g, g)


def test_ray_is_face_of_exactly_two_chambers():
    fan = weyl_fan(build_root_datum("A2"))
    for f, cf in enumerate(fan.cones):
        if cf.dim != 1:
            continue
        cofaces = [
            g
            for g, cg in enumerate(fan.cones)
            if cg.dim == 2 and fan.is_face(f, g)
        ]
        assert len(cofaces) == 2


def test_face_criteria_agree_on_all_pairs_a2_fj():
    fan = parabolic_fan(build_root_datum("A2"), [0])
    for f in range(len(fan)):
        for g in range(len(fan)):
            cf, cg = fan.cones[f], fan.cones[g]
            assert is_face_closure(cf, cg) == is_face_supporting(cf, cg)


def test_cone_containing_examples():
    datum = build_root_datum("A2")
    fan = parabolic_fan(datum, [0])
    assert fan.cones[fan.cone_containing(la.zero_vec(2))].is_origin
    # wall direction of a1 with positive a2 pairing lands in the merged cone
    wall = (Q(1), Q(2))
    assert datum.pairing(datum.simples[0], wall) == 0
    wall_idx = fan.cone_containing(wall)
    assert fan.cones[wall_idx].dim == 2
    assert fan.cores[wall_idx].weyl.word == ()  # the fundamental merged cone
    wfan = weyl_fan(datum)
    dominant = (Q(2), Q(3))
    assert all(datum.pairing(s, dominant) > 0 for s in datum.simples)
    idx = wfan.cone_containing(dominant)
    assert wfan.cones[idx].dim == 2
    assert wfan.cores[idx].weyl.word == ()


def test_cone_of_parabolic():
    datum = build_root_datum("A2")
    weyl = weyl_enumerate(datum)
    fan = parabolic_fan(datum, [0])
    ident = weyl.identity
    s1, s2 = weyl.generators
    base = cone_of_parabolic(fan, [0], ident)
    assert fan.cores[base].weyl.word == () and fan.cones[base].dim == 2
    assert cone_of_parabolic(fan, [0], s1) == base
    assert cone_of_parabolic(fan, [0], s2) != base
    with pytest.raises(TypeMismatch):
        cone_of_parabolic(fan, [1], ident)
    wfan = parabolic_fan(datum, ())
    chamber = cone_of_parabolic(wfan, [], ident)
    assert wfan.cones[chamber].dim == 2
    assert wfan.cones[chamber].contains((Q(2), Q(3)))


def test_weyl_invariance_orbit_closure():
    datum = build_root_datum("BC2")
    fan = parabolic_fan(datum, [1])
    weyl = weyl_enumerate(datum)
    for w in weyl:
        for i in range(len(fan)):
            fan.transform_index(w, i)


def test_strict_convexity():
    for name in ["A2", "B2", "G2", "BC2"]:
        fan = weyl_fan(build_root_datum(name))
        for c in fan.cones:
            assert c.pointed
            for r in c.rays:
                assert not c.closure_contains(la.neg(r))


def test_weyl_facet_points_count():
    datum = build_root_datum("A2")
    assert len(weyl_facet_points(datum)) == 13


@pytest.mark.parametrize(
    "name", ["A1", "A2", "A3", "B2", "B3", "C3", "G2", "BC1", "BC2", "A1xA1", "A1xA2"]
)
def test_weyl_fan_count_orbit_stabiliser_oracle(name):
    """Independent count: facets of type I form one orbit of size |W|/|W_I|."""
    datum = build_root_datum(name)
    weyl = weyl_enumerate(datum)
    total = 0
    for bits in range(1 << datum.rank):
        I = [i for i in range(datum.rank) if bits >> i & 1]
        total += len(weyl) // len(weyl.subgroup_elements(I))
    assert len(weyl_fan(datum)) == total
