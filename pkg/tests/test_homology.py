import random

import pytest
import sympy
from sympy.matrices.normalforms import invariant_factors

from racglie.homology import (HomologyGroup, IntegerMatrix, SubsetCapExceeded, betti_numbers,
                              boundary_matrix, h1_rank_rk, reduced_homology, rk_homology,
                              smith_normal_form)
from racglie.scomplex import SimplicialComplex, discrete, random_complex, simplex

RP2 = SimplicialComplex(6, [[1, 2, 3], [1, 3, 4], [1, 4, 5], [1, 5, 6], [1, 6, 2],
                            [2, 3, 5], [2, 4, 5], [2, 4, 6], [3, 4, 6], [3, 5, 6]])


def test_snf_matches_sympy():
    rng = random.Random(11)
    for _ in range(150):
        r, c = rng.randint(1, 6), rng.randint(1, 6)
        rows = [[rng.choice([0, 0, 1, -1, 2, 3, -4, 6]) for _ in range(c)] for _ in range(r)]
        factors, rank = smith_normal_form(IntegerMatrix.from_rows(rows))
        M = sympy.Matrix(rows)
        expected = [abs(int(x)) for x in invariant_factors(M, domain=sympy.ZZ) if x != 0]
        assert factors == expected
        assert rank == M.rank()


def test_boundary_squares_to_zero():
    for K in (simplex(4), RP2, SimplicialComplex(5, [[1, 2, 3], [3, 4], [4, 5]])):
        for k in range(0, K.dimension + 1):
            assert (boundary_matrix(K, k) @ boundary_matrix(K, k + 1)).is_zero()


def test_reduced_homology_of_known_spaces():
    assert reduced_homology(discrete(3), 0) == HomologyGroup(2)
    boundary = SimplicialComplex(3, [[1, 2], [1, 3], [2, 3]])
    assert reduced_homology(boundary, 1) == HomologyGroup(1)
    assert reduced_homology(boundary, 0).is_zero()
    sphere2 = SimplicialComplex(4, [[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]])
    assert reduced_homology(sphere2, 2) == HomologyGroup(1)
    assert reduced_homology(RP2, 1) == HomologyGroup(0, (2,))
    assert reduced_homology(RP2, 2).is_zero()
    assert not any(betti_numbers(simplex(4)))
    assert betti_numbers(discrete(3))[1] == 2  # list starts at degree -1


def test_empty_complex_homology():
    # the empty full subcomplex has reduced homology Z in degree -1
    assert reduced_homology(SimplicialComplex(2, [], vertices=()), -1) == HomologyGroup(1)


def test_homology_group_sum_is_invariant_factor_form():
    g = HomologyGroup(1, (2,)) + HomologyGroup(0, (3,)) + HomologyGroup(0, (2,))
    assert g == HomologyGroup(1, (2, 6))
    with pytest.raises(ValueError):
        HomologyGroup(0, (4, 6))
    assert str(HomologyGroup(2, (2,))) == "Z^2 + Z/2"


def test_rk_homology_examples():
    assert rk_homology(discrete(2), 1).total == HomologyGroup(1)
    boundary = SimplicialComplex(3, [[1, 2], [1, 3], [2, 3]])
    assert rk_homology(boundary, 1).total.is_zero()
    rep = rk_homology(boundary, 2)
    assert rep.total == HomologyGroup(1)
    assert list(rep.contributions) == [(1, 2, 3)]
    assert rk_homology(boundary, 0).total == HomologyGroup(1)


def test_rk_homology_json_schema():
    rep = rk_homology(discrete(3), 1).to_json()
    assert set(rep) == {"k", "total", "contributions"}
    assert rep["total"] == {"rank": 5, "torsion": []}
    assert all(set(c) == {"J", "rank", "torsion"} and c["rank"] > 0 for c in rep["contributions"])


def test_rk_homology_sees_torsion():
    assert rk_homology(RP2, 2).total == HomologyGroup(31, (2,))


def test_euler_characteristic_of_rk():
    # R_K is a cube complex with 2^m vertices and 2^(m-|I|) cubes per face I
    rng = random.Random(5)
    for _ in range(10):
        K = random_complex(5, rng, max_faces=4, max_size=3)
        chi = sum((-1) ** (k + 1) * len(K.faces(k)) * 2 ** (K.m - k - 1)
                  for k in range(-1, K.dimension + 1))
        ranks = [rk_homology(K, k).total.free_rank for k in range(0, K.dimension + 2)]
        assert sum((-1) ** k * r for k, r in enumerate(ranks)) == chi


def test_h1_matches_rk_homology_and_workers():
    rng = random.Random(2)
    for _ in range(20):
        K = random_complex(5, rng, max_faces=5, max_size=3)
        rep = rk_homology(K, 1)
        assert rep.total == HomologyGroup(h1_rank_rk(K))
    K = random_complex(6, rng)
    assert rk_homology(K, 2, workers=2).contributions == rk_homology(K, 2).contributions


def test_subset_cap():
    with pytest.raises(SubsetCapExceeded):
        h1_rank_rk(discrete(6), cap=5)
    with pytest.raises(ValueError):
        rk_homology(discrete(2), -1)
