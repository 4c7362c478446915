"""Klein correspondence between planes and pairs of three-square vectors.

A plane with basis u, v maps to the pair of traceless parts of u*conj(v)
and conj(v)*u, each of norm equal to the plane norm.  The pair is well
defined up to a joint sign flip, which `KleinPair.of` fixes.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

import numpy as np

from planes import repnum
from planes.lattice import Plane, integer_kernel, row_hnf
from planes.qform import (
    FormClass,
    GenusPartition,
    QuadForm,
    class_group,
    compose,
    genus_partition,
    gl2_class,
)
from planes.quaternion import Quaternion, TracelessQuaternion


def _traceless_part(q: Quaternion) -> TracelessQuaternion:
    return TracelessQuaternion(q.x1, q.x2, q.x3)


@dataclass(frozen=True)
class KleinPair:
    """Sign-normalized image of a plane: first nonzero entry of a1 positive."""

    a1: TracelessQuaternion
    a2: TracelessQuaternion

    @staticmethod
    def of(a1: TracelessQuaternion, a2: TracelessQuaternion) -> "KleinPair":
        lead = next((c for c in a1.vec3() if c != 0), 0)
        if lead == 0:
            raise ValueError("first component must be nonzero")
        if lead < 0:
            a1, a2 = -a1, -a2
        return KleinPair(a1, a2)

    @property
    def norm(self) -> int:
        return self.a1.nr()


def _raw_pair(u: Quaternion, v: Quaternion) -> tuple[TracelessQuaternion, TracelessQuaternion]:
    return _traceless_part(u * v.conj()), _traceless_part(v.conj() * u)


def klein_map(plane: Plane) -> KleinPair:
    """Image of a plane, independent of the choice of basis."""
    u = Quaternion.from_vec4(plane.basis[0])
    v = Quaternion.from_vec4(plane.basis[1])
    a1, a2 = _raw_pair(u, v)
    # basis independence, spot-checked on two unimodular rebasings
    assert _raw_pair(u + v, v) == (a1, a2)
    assert _raw_pair(v, -u) == (a1, a2)
    assert a1.nr() == a2.nr() == plane.norm
    return KleinPair.of(a1, a2)


def _odd_part(n: int) -> int:
    while n % 2 == 0:
        n //= 2
    return n


def pair_primitive(w1, w2) -> bool:
    """Primitivity condition cutting the pair count down to plane count."""
    w1 = tuple(int(c) for c in w1)
    w2 = tuple(int(c) for c in w2)
    g1 = gcd(gcd(abs(w1[0]), abs(w1[1])), abs(w1[2]))
    g2 = gcd(gcd(abs(w2[0]), abs(w2[1])), abs(w2[2]))
    if g1 == 0 or g2 == 0:
        raise ValueError("zero vector")
    if gcd(_odd_part(g1), _odd_part(g2)) != 1:
        return False
    s = all((a + b) % 4 == 0 for a, b in zip(w1, w2))
    d = all((a - b) % 4 == 0 for a, b in zip(w1, w2))
    return not (s and d)


def _pair_scan(n: int, collect: bool):
    """Pairs (w1, w2) of norm n, congruent mod 2, pair-primitive,
    with w1 sign-normalized.  Returns (count, pairs-or-empty)."""
    pts = repnum.sphere_points(n)
    if not len(pts):
        return 0, []
    g = np.gcd.reduce(np.abs(pts), axis=1)
    odd = g // (g & -g)
    x, y, z = pts[:, 0], pts[:, 1], pts[:, 2]
    normalized = (x > 0) | ((x == 0) & (y > 0)) | ((x == 0) & (y == 0) & (z > 0))
    parity = (x % 2) * 4 + (y % 2) * 2 + z % 2
    total = 0
    found = []
    for key in np.unique(parity):
        idx = np.flatnonzero(parity == key)
        sub, sub_odd = pts[idx], odd[idx]
        for i in np.flatnonzero(normalized[idx]):
            w1 = sub[i]
            sm = sub + w1
            df = sub - w1
            quarter = ((sm % 4 == 0).all(axis=1)) & ((df % 4 == 0).all(axis=1))
            mask = (np.gcd(sub_odd[i], sub_odd) == 1) & ~quarter
            total += int(mask.sum())
            if collect:
                t1 = tuple(int(c) for c in w1)
                for j in np.flatnonzero(mask):
                    found.append((t1, tuple(int(c) for c in sub[j])))
    if collect:
        found.sort()
    return total, found


def pair_count(n: int) -> int:
    if n < 1:
        raise ValueError("norm must be positive")
    return _pair_scan(n, False)[0]


def pairs_for_norm(n: int) -> list[tuple[tuple, tuple]]:
    if n < 1:
        raise ValueError("norm must be positive")
    return _pair_scan(n, True)[1]


# ---------------------------------------------------------------------------
# binary forms attached to vectors and planes


def orthogonal_lattice_z3(v) -> tuple[tuple[int, ...], ...]:
    """Basis, in row Hermite form, of the rank 2 lattice orthogonal to v."""
    v = tuple(int(c) for c in v)
    if v == (0, 0, 0):
        raise ValueError("zero vector")
    rows = row_hnf(integer_kernel([list(v)]))
    rows = [r for r in rows if any(r)]
    if len(rows) != 2:
        raise ValueError("unexpected kernel rank")
    return tuple(tuple(r) for r in rows)


def _class_of_gram(g00: int, g01: int, g11: int) -> FormClass:
    return FormClass.of(QuadForm(g00, 2 * g01, g11))


def gauss_map(v) -> frozenset:
    """GL2 class of the quadratic form on the lattice orthogonal to v."""
    b1, b2 = orthogonal_lattice_z3(v)
    g00 = sum(c * c for c in b1)
    g01 = sum(a * b for a, b in zip(b1, b2))
    g11 = sum(c * c for c in b2)
    return gl2_class(_class_of_gram(g00, g01, g11))


def _plane_class(plane: Plane) -> FormClass:
    a, b, c = plane.binary_form()
    return FormClass.of(QuadForm(a, b, c))


@dataclass(frozen=True)
class CMQuadruple:
    """GL2 classes of the four forms attached to a plane."""

    z1: frozenset
    z2: frozenset
    z3: frozenset
    z4: frozenset

    def as_tuple(self):
        return (self.z1, self.z2, self.z3, self.z4)


def cm_points(plane: Plane) -> CMQuadruple:
    """Forms of the plane, its complement, and the two Klein components."""
    pair = klein_map(plane)
    return CMQuadruple(
        z1=gl2_class(_plane_class(plane)),
        z2=gl2_class(_plane_class(plane.orthogonal_complement())),
        z3=gauss_map(pair.a1.vec3()),
        z4=gauss_map(pair.a2.vec3()),
    )


# ---------------------------------------------------------------------------
# the multiplication map on a plane and its complement


def _require_theorem_norm(n: int) -> None:
    if n % 4 != 1 or not repnum.is_squarefree(n):
        raise ValueError("theorem hypotheses not met: need squarefree norm 1 mod 4")


def mu_image(plane: Plane, which: int) -> tuple[tuple[int, ...], ...]:
    """Hermite basis of the lattice spanned by the quaternion products
    u*conj(w) (which=1) or conj(u)*w (which=2), u in the plane and w in
    its complement.  Both lattices are orthogonal complements in Z^3 of
    the matching Klein component."""
    if which not in (1, 2):
        raise ValueError("which must be 1 or 2")
    _require_theorem_norm(plane.norm)
    us = [Quaternion.from_vec4(b) for b in plane.basis]
    ws = [Quaternion.from_vec4(b) for b in plane.orthogonal_complement().basis]
    gens = []
    for u in us:
        for w in ws:
            prod = u * w.conj() if which == 1 else u.conj() * w
            assert prod.x0 == 0, "product is not traceless"
            gens.append([prod.x1, prod.x2, prod.x3])
    rows = row_hnf(gens)
    rows = [r for r in rows if any(r)]
    if len(rows) != 2:
        raise ValueError("unexpected image rank")
    return tuple(tuple(r) for r in rows)


# ---------------------------------------------------------------------------
# realizability of form pairs


@lru_cache(maxsize=None)
def genus_context(n: int):
    """Class group of discriminant -4n, its genus partition, and the genus
    carrying every form orthogonal to a norm-n vector.  That single genus
    exists for squarefree n = 1, 2 mod 4; anything else is rejected."""
    if n % 4 not in (1, 2) or not repnum.is_squarefree(n):
        raise ValueError("theorem hypotheses not met: need squarefree n = 1, 2 mod 4")
    group = class_group(-4 * n)
    partition = genus_partition(group)
    target = None
    for v in repnum.sphere_points(n):
        cls = next(iter(gauss_map(tuple(int(c) for c in v))))
        g = partition.genus_of_class(cls)
        if target is None:
            target = g
        elif g != target:
            raise ArithmeticError(f"image genus is not constant at n={n}")
    if target is None:
        raise ValueError(f"{n} is not a sum of three squares")
    return group, partition, target


def realizable_pair(c1: FormClass, c2: FormClass, n: int) -> bool:
    """Whether some plane of norm n has form c1 with complement form c2,
    decided by the genus of the composed pair."""
    if n % 4 != 1 or not repnum.is_squarefree(n):
        raise ValueError("theorem hypotheses not met: need squarefree n = 1 mod 4")
    group, partition, target = genus_context(n)
    if c1.disc != -4 * n or c2.disc != -4 * n:
        raise ValueError("classes must have discriminant -4n")
    return partition.genus_of_class(compose(c1, c2)) == target
