from fractions import Fraction as Q

import pytest

from weylfan import linalg as la
from weylfan.cones import (
    Cone,
    closure_subset,
    dual_description,
    is_face_closure,
    is_face_supporting,
    open_system_feasible,
)
from weylfan.errors import EmptyCone
from weylfan.rootdata import build_root_datum


def V(*xs):
    return tuple(Q(x) for x in xs)


def test_rref_solve_kernel():
    rows = [V(1, 2, 3), V(2, 4, 6), V(0, 1, 1)]
    assert la.rank(rows) == 2
    assert la.kernel_basis(rows, 3)
    sol = la.solve(la.mat([[2, 1], [1, 1]]), V(3, 2))
    assert sol == V(1, 1)
    assert la.det(la.mat([[2, -1], [-1, 2]])) == 3
    inv = la.inverse(la.mat([[2, -1], [-1, 2]]))
    assert la.mat_mul(la.mat([[2, -1], [-1, 2]]), inv) == la.identity(2)


def test_dual_description_quadrant():
    lin, rays = dual_description(2, [], [V(1, 0), V(0, 1)])
    assert lin == []
    assert sorted(rays) == [V(0, 1), V(1, 0)]


def test_dual_description_halfspace_and_line():
    lin, rays = dual_description(2, [], [V(1, 0)])
    assert len(lin) == 1 and len(rays) == 1
    lin, rays = dual_description(2, [V(1, 0)], [])
    assert len(lin) == 1 and rays == []


def test_dual_description_simplicial_3d():
    forms = [V(1, 0, 0), V(0, 1, 0), V(0, 0, 1), V(1, 1, 1)]
    lin, rays = dual_description(3, [], forms)
    assert lin == []
    assert sorted(rays) == [V(0, 0, 1), V(0, 1, 0), V(1, 0, 0)]


def test_fundamental_chamber_rays_are_coweights():
    for name in ["A2", "B2", "B3", "G2", "BC2"]:
        datum = build_root_datum(name)
        n = datum.rank
        ins = [datum.covector(s) for s in datum.simples]
        cone = Cone.from_system(n, [], ins)
        coweights = sorted(la.primitive(w) for w in datum.fundamental_coweights())
        assert sorted(cone.rays) == coweights


def test_empty_cone_raises():
    with pytest.raises(EmptyCone):
        Cone.from_system(2, [V(1, 0), V(0, 1)], [V(1, 1)])


def test_face_criteria_on_quadrant():
    quadrant = Cone.from_system(2, [], [V(1, 0), V(0, 1)])
    xaxis = Cone.from_system(2, [V(0, 1)], [V(1, 0)])
    origin = Cone.from_system(2, [V(1, 0), V(0, 1)], [])
    opposite = Cone.from_system(2, [V(0, 1)], [V(-1, 0)])
    for f, g, want in [
        (origin, quadrant, True),
        (xaxis, quadrant, True),
        (quadrant, quadrant, True),
        (quadrant, xaxis, False),
        (opposite, quadrant, False),
    ]:
        assert is_face_closure(f, g) is want
        assert is_face_supporting(f, g) is want


def test_interior_ray_rejected_by_supporting_criterion():
    g = Cone.from_system(2, [], [V(0, 1), V(1, -1)])
    interior = Cone.from_system(2, [V(1, -2)], [V(1, 0)])
    assert closure_subset(interior, g)
    assert not is_face_supporting(interior, g)


def test_membership_and_relint():
    cone = Cone.from_system(3, [V(0, 0, 1)], [V(1, 0, 0), V(0, 1, 0)])
    assert cone.dim == 2
    p = cone.relint_point()
    assert cone.contains(p)
    assert not cone.contains(V(1, 0, 1))
    assert cone.closure_contains(V(1, 0, 0))
    assert not cone.contains(V(1, 0, 0))


def test_transform_matches_fresh_construction():
    datum = build_root_datum("B2")
    n = datum.rank
    from weylfan.rootdata import weyl_enumerate

    weyl = weyl_enumerate(datum)
    ins = [datum.covector(s) for s in datum.simples]
    chamber = Cone.from_system(n, [], ins)
    for w in weyl:
        inv = la.inverse(w.mat_points)
        moved = chamber.transform(w.mat_points, inv)
        fresh = Cone.from_system(
            n, [], [datum.covector(w.apply_root(s)) for s in datum.simples]
        )
        assert moved.key == fresh.key


def test_open_system_feasible():
    assert open_system_feasible(2, [], [V(1, 0), V(-1, 0)]) is None
    p = open_system_feasible(2, [], [V(1, 0), V(0, 1)], [V(1, 1)])
    assert p is not None and p[0] > 0 and p[1] > 0


def test_sign_of():
    cone = Cone.from_system(2, [], [V(0, 1), V(1, 1)])
    assert cone.sign_of(V(0, 1)) == 1
    assert cone.sign_of(V(0, -1)) == -1
    assert cone.sign_of(V(1, 0)) == 2  # mixed on the merged cone
    ray = Cone.from_system(2, [V(1, 0)], [V(0, 1)])
    assert ray.sign_of(V(1, 0)) == 0


def test_double_dual_involution_random_systems():
    """dual(dual(C)) = C for the closed cone of random rational systems."""
    import random

    from weylfan.errors import EmptyCone

    rng = random.Random(99)

    def dd_of_generators(n, lin, rays):
        eqs = list(lin)
        ins = list(rays)
        return dual_description(n, eqs, ins)

    checked = 0
    for n in (2, 3, 4):
        for _ in range(40):
            forms = [
                tuple(Q(rng.randint(-3, 3)) for _ in range(n))
                for _ in range(rng.randint(1, n + 2))
            ]
            forms = [f for f in forms if any(f)]
            if not forms:
                continue
            lin, rays = dual_description(n, [], forms)
            # dual cone: forms nonnegative on all generators, zero on lineality
            dlin, drays = dd_of_generators(n, lin, rays)
            # and back: the double dual must reproduce the closed cone
            ddlin, ddrays = dd_of_generators(n, dlin, drays)
            assert sorted(la.primitive(v) for v in ddlin) == sorted(
                la.primitive(v) for v in lin
            )
            assert sorted(ddrays) == sorted(rays)
            checked += 1
    assert checked > 100
