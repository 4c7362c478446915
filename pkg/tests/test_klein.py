"""Klein correspondence, Gauss map, and pair realizability."""

import pytest

from planes.klein import (
    CMQuadruple,
    KleinPair,
    cm_points,
    gauss_map,
    genus_context,
    klein_map,
    mu_image,
    orthogonal_lattice_z3,
    pair_count,
    pair_primitive,
    pairs_for_norm,
    realizable_pair,
)
from planes.lattice import Plane, enumerate_planes
from planes.qform import FormClass, QuadForm, class_group
from planes.quaternion import Quaternion, TracelessQuaternion

I_HAT = TracelessQuaternion(1, 0, 0)


def _class(a, b, c):
    return FormClass.of(QuadForm(a, b, c))


def test_klein_map_coordinate_plane():
    p = Plane.from_basis((1, 0, 0, 0), (0, 1, 0, 0))
    pair = klein_map(p)
    assert pair.a1 == I_HAT and pair.a2 == I_HAT
    assert pair.norm == 1


def test_klein_pair_sign_normalization():
    pair = KleinPair.of(TracelessQuaternion(-1, 0, 2),
                        TracelessQuaternion(0, 1, 0))
    assert pair.a1 == TracelessQuaternion(1, 0, -2)
    assert pair.a2 == TracelessQuaternion(0, -1, 0)
    with pytest.raises(ValueError):
        KleinPair.of(TracelessQuaternion(0, 0, 0), I_HAT)


@pytest.mark.parametrize("n", [1, 2, 3, 5, 9, 11, 17, 45])
def test_klein_images_match_pair_scan(n):
    planes = enumerate_planes(n)
    assert pair_count(n) == len(planes)
    images = set()
    for p in planes:
        pair = klein_map(p)
        assert pair.a1.nr() == pair.a2.nr() == n
        images.add((pair.a1.vec3(), pair.a2.vec3()))
    assert len(images) == len(planes)
    assert images == set(pairs_for_norm(n))


def test_pair_count_rejects_nonpositive():
    with pytest.raises(ValueError):
        pair_count(0)
    with pytest.raises(ValueError):
        pairs_for_norm(-3)


def test_pair_primitive_cases():
    assert pair_primitive((1, 0, 0), (1, 0, 0))
    # both congruence shifts land in 4Z^3: the pair comes from a doubled plane
    assert not pair_primitive((2, 2, 0), (2, -2, 0))
    assert not pair_primitive((2, 2, 0), (-2, 2, 0))
    # shared odd content
    assert not pair_primitive((3, 0, 0), (0, 3, 0))
    with pytest.raises(ValueError):
        pair_primitive((0, 0, 0), (1, 0, 0))


def test_orthogonal_lattice_examples():
    assert orthogonal_lattice_z3((1, 0, 0)) == ((0, 1, 0), (0, 0, 1))
    assert orthogonal_lattice_z3((0, 1, 2)) == ((1, 0, 0), (0, 2, -1))
    with pytest.raises(ValueError):
        orthogonal_lattice_z3((0, 0, 0))


def test_gauss_map_values():
    assert gauss_map((0, 1, 2)) == frozenset({_class(1, 0, 5)})
    assert gauss_map((1, 0, 0)) == frozenset({_class(1, 0, 1)})
    # imprimitive vector direction: the form picks up the square content
    assert gauss_map((1, 1, 1)) == frozenset({_class(2, 2, 2)})
    for c in gauss_map((0, 1, 2)):
        assert c.disc == -20


def test_cm_points_coordinate_plane():
    quad = cm_points(Plane.from_basis((1, 0, 0, 0), (0, 1, 0, 0)))
    assert isinstance(quad, CMQuadruple)
    principal = frozenset({_class(1, 0, 1)})
    assert quad.as_tuple() == (principal,) * 4


def test_cm_points_share_discriminant():
    for p in enumerate_planes(5):
        quad = cm_points(p)
        for z in quad.as_tuple():
            assert {c.disc for c in z} == {-20}


def test_mu_image_coordinate_plane():
    p = Plane.from_basis((1, 0, 0, 0), (0, 1, 0, 0))
    assert mu_image(p, 1) == ((0, 1, 0), (0, 0, 1))
    assert mu_image(p, 2) == ((0, 1, 0), (0, 0, 1))
    with pytest.raises(ValueError):
        mu_image(p, 3)


def test_mu_image_requires_theorem_norm():
    p2 = enumerate_planes(2)[0]
    with pytest.raises(ValueError, match="squarefree norm 1 mod 4"):
        mu_image(p2, 1)


@pytest.mark.parametrize("n", [5, 13, 17])
def test_mu_image_is_orthogonal_to_klein_component(n):
    for p in enumerate_planes(n):
        pair = klein_map(p)
        assert mu_image(p, 1) == orthogonal_lattice_z3(pair.a1.vec3())
        assert mu_image(p, 2) == orthogonal_lattice_z3(pair.a2.vec3())


def test_norm_identity_small_grid():
    """nr of the traceless product factors through both binary forms."""
    p = enumerate_planes(5)[0]
    comp = p.orthogonal_complement()
    us = [Quaternion.from_vec4(b) for b in p.basis]
    ws = [Quaternion.from_vec4(b) for b in comp.basis]

    def q(gram, x, y):
        return (gram[0][0] * x * x + 2 * gram[0][1] * x * y
                + gram[1][1] * y * y)

    grid = range(-2, 3)
    for x in grid:
        for y in grid:
            u = x * us[0] + y * us[1]
            for s in grid:
                for t in grid:
                    w = s * ws[0] + t * ws[1]
                    prod = u * w.conj()
                    assert prod.x0 == 0
                    nr = prod.x1 ** 2 + prod.x2 ** 2 + prod.x3 ** 2
                    assert nr == q(p.gram, x, y) * q(comp.gram, s, t)


def test_genus_context_single_genus():
    group, partition, target = genus_context(5)
    assert group.disc == -20
    assert target == partition.principal_genus
    with pytest.raises(ValueError):
        genus_context(3)  # 3 mod 4 outside the theorem
    with pytest.raises(ValueError):
        genus_context(45)  # not squarefree


def test_realizable_pair_disc_minus_20():
    g = class_group(-20)
    principal = g.classes[g.identity]
    other = next(c for c in g.classes if c != principal)
    assert realizable_pair(principal, principal, 5)
    assert realizable_pair(other, other, 5)
    assert not realizable_pair(principal, other, 5)
    assert not realizable_pair(other, principal, 5)


def test_realizable_pair_validation():
    g = class_group(-20)
    principal = g.classes[g.identity]
    with pytest.raises(ValueError):
        realizable_pair(principal, principal, 6)
    with pytest.raises(ValueError):
        realizable_pair(principal, principal, 45)
    wrong = FormClass.of(QuadForm(1, 0, 1))
    with pytest.raises(ValueError):
        realizable_pair(wrong, principal, 5)


def test_realizable_pairs_are_observed():
    """Predicted pairs at n = 13 coincide with the enumerated ones."""
    n = 13
    group, _, _ = genus_context(n)
    observed = set()
    for p in enumerate_planes(n):
        c1 = FormClass.of(QuadForm(*p.binary_form()))
        c2 = FormClass.of(QuadForm(*p.orthogonal_complement().binary_form()))
        observed.add((c1, c2))
    predicted = {(c1, c2) for c1 in group.classes for c2 in group.classes
                 if realizable_pair(c1, c2, n)}
    assert observed == predicted
