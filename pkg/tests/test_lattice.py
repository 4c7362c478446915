"""Plucker embedding, plane enumeration, and the minor-form counts.

The slow 6-fold loop below is the ground-truth oracle for small norms;
the production enumerator must reproduce it exactly.
"""

import random
from fractions import Fraction
from math import gcd, isqrt

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from planes.lattice import (
    Plane,
    PluckerVector,
    SymMatrix4,
    disc_of_plane,
    enumerate_planes,
    integer_kernel,
    orth_complement,
    plucker_of_basis,
    row_hnf,
    rp_count,
    rp_counts,
    saturation_index,
    zp_partial,
)
from planes.repnum import r24_formula

E1, E2, E3, E4 = (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)


def brute_plane_count(n: int) -> int:
    """Sign classes of primitive decomposable vectors of norm n, by raw loop."""
    m = isqrt(n)
    count = 0
    rng = range(-m, m + 1)
    for a in range(0, m + 1):  # leading coordinate fixed nonnegative
        for b in rng:
            for c in rng:
                for d in rng:
                    for e in rng:
                        for f in rng:
                            v = (a, b, c, d, e, f)
                            if sum(x * x for x in v) != n:
                                continue
                            if a * f - b * e + c * d != 0:
                                continue
                            g = 0
                            for x in v:
                                g = gcd(g, x)
                            if g != 1:
                                continue
                            first = next(x for x in v if x)
                            if first > 0:
                                count += 1
    return count


@pytest.mark.parametrize("n,expected", [(1, 6), (2, 24), (3, 32), (4, 12),
                                        (5, 96), (6, 96), (7, 0), (8, 48)])
def test_counts_against_brute_force(n, expected):
    assert brute_plane_count(n) == expected
    assert len(enumerate_planes(n)) == expected


def test_plucker_of_basis_examples():
    assert plucker_of_basis(E1, E2).coords == (1, 0, 0, 0, 0, 0)
    assert plucker_of_basis(E3, E4).coords == (0, 0, 0, 0, 0, 1)
    p = plucker_of_basis((1, 0, 1, 0), (0, 1, 0, 1))
    assert p.coords == (1, 0, 1, -1, 0, 1)
    assert p.relation() == 0


def test_plucker_of_basis_keeps_content():
    p = plucker_of_basis((2, 0, 0, 0), (0, 2, 0, 0))
    assert p.coords == (4, 0, 0, 0, 0, 0)
    assert not p.is_primitive


def test_degenerate_basis_rejected():
    with pytest.raises(ValueError, match="degenerate basis"):
        plucker_of_basis((1, 2, 3, 4), (2, 4, 6, 8))


def test_orth_complement_examples():
    e12 = PluckerVector(1, 0, 0, 0, 0, 0)
    assert orth_complement(e12).coords == (0, 0, 0, 0, 0, 1)
    p = PluckerVector(1, 0, 1, -1, 0, 1)
    assert orth_complement(p).coords == (1, 0, -1, 1, 0, 1)
    assert orth_complement(orth_complement(p)) == p


def test_disc_of_plane_examples():
    assert disc_of_plane(Plane.from_basis(E1, E2)) == -4
    assert disc_of_plane(Plane.from_basis((1, 1, 0, 0), (0, 0, 1, 1))) == -16
    assert disc_of_plane(Plane.from_plucker(PluckerVector(1, 0, 1, -1, 0, 1))) == -16


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 8, 9, 12, 45])
def test_enumerated_planes_are_coherent(n):
    planes = enumerate_planes(n)
    assert len(planes) == r24_formula(n)
    seen = set()
    for plane in planes:
        assert plane.disc == -4 * n
        assert plane.plucker.is_sign_normalized
        assert plane.plucker.is_primitive
        assert saturation_index(plane.basis) == 1
        # the stored basis must reproduce the stored coordinates
        rt = plucker_of_basis(*plane.basis).sign_normalized()
        assert rt == plane.plucker
        seen.add(plane.plucker.coords)
    assert len(seen) == len(planes)
    # the complement permutes the solution set
    flipped = {orth_complement(p.plucker).coords for p in planes}
    assert flipped == seen


def _random_unimodular(rng: random.Random):
    m = [[1 if i == j else 0 for j in range(4)] for i in range(4)]
    for _ in range(12):
        i, j = rng.sample(range(4), 2)
        c = rng.randint(-2, 2)
        for k in range(4):
            m[i][k] += c * m[j][k]
    return m


@pytest.mark.parametrize("diag", [(1, 1, 1, 1), (1, 1, 1, 2), (1, 1, 2, 3)])
def test_second_determinantal_divisor_lemma(diag):
    """det of the lower-right 2x2 block of d x d^T equals the minor form
    at the wedge of the last two rows of d."""
    x = SymMatrix4.diag(*diag)
    W = x.minor_form()
    rng = random.Random(20240811)
    for _ in range(50):
        delta = _random_unimodular(rng)
        u, v = delta[2], delta[3]
        g = [[sum(u2[i] * diag[i] * v2[i] for i in range(4))
              for v2 in (u, v)] for u2 in (u, v)]
        d2 = g[0][0] * g[1][1] - g[0][1] * g[1][0]
        w = plucker_of_basis(u, v).coords
        q = sum(w[i] * W[i][j] * w[j] for i in range(6) for j in range(6))
        assert d2 == q


def test_rp_count_identity_matrix():
    assert rp_count(SymMatrix4.identity(), 1) == 6
    counts = rp_counts(SymMatrix4.identity(), 50)
    for k in range(1, 51):
        assert counts[k] == r24_formula(k)


def test_rp_count_weighted_axis():
    # only the three coordinate planes that avoid the weighted axis
    assert rp_count(SymMatrix4.diag(1, 1, 1, 2), 1) == 3


def test_zp_partial_values():
    x = SymMatrix4.identity()
    assert zp_partial(x, 0, 3) == 62
    assert zp_partial(x, 1, 1) == Fraction(6)
    assert zp_partial(x, 2, 0) == 0


def test_symmatrix_validation():
    with pytest.raises(ValueError):
        SymMatrix4.from_rows([[1, 2, 0, 0], [0, 1, 0, 0],
                              [0, 0, 1, 0], [0, 0, 0, 1]])
    with pytest.raises(ValueError):
        SymMatrix4.diag(1, 1, 1, -1)


vec4 = st.tuples(*(st.integers(min_value=-6, max_value=6) for _ in range(4)))


@given(st.lists(vec4, min_size=2, max_size=3))
@settings(max_examples=60)
def test_row_hnf_preserves_lattice_shape(rows):
    h = row_hnf([list(r) for r in rows])
    # pivots strictly move right and are positive
    pivots = []
    for r in h:
        nz = [j for j, x in enumerate(r) if x]
        if not nz:
            continue
        assert r[nz[0]] > 0
        pivots.append(nz[0])
    assert pivots == sorted(set(pivots))


@given(vec4, vec4)
@settings(max_examples=60)
def test_integer_kernel_is_orthogonal_and_saturated(u, v):
    rows = [list(u), list(v)]
    ker = integer_kernel(rows)
    for krow in ker:
        assert sum(a * b for a, b in zip(krow, u)) == 0
        assert sum(a * b for a, b in zip(krow, v)) == 0
    if len(ker) == 2:
        assert saturation_index(ker) == 1


def test_saturation_index_example():
    assert saturation_index([[2, 0, 0, 0], [0, 1, 0, 0]]) == 2
