"""Combinatorial descriptions of the commutator subgroup and of L^1, L^2, L^3.

All commutator descriptors are index tuples of left-nested simple
commutators, e.g. ``(1, 3, 2)`` stands for ((g1, g3), g2).
"""

from __future__ import annotations

from itertools import combinations
from math import comb
from typing import NamedTuple

from .scomplex import SimplicialComplex, connected_components, missing_edges

Descriptor = tuple[int, ...]


class GradedRanks(NamedTuple):
    r1: int
    r2: int
    r3: int


def smallest_in_component_without(K: SimplicialComplex, i: int, j: int,
                                  others: tuple[int, ...] = ()) -> bool:
    """Is i the least vertex of a component of K_{i, j, others} that misses j?"""
    for block in connected_components(K, (i, j) + tuple(others)):
        if i in block:
            return j not in block and block[0] == i
    return False


def gscox_generators(K: SimplicialComplex) -> list[Descriptor]:
    """Index tuples (i, j, k1, ..., k_{l-2}) of the minimal generating set of RC_K'.

    Conditions: i < j > k1 > k2 > ..., every k_s != i, and i is the least
    vertex of a connected component of K_{k1, ..., j, i} not containing j.
    Sorted by length, then lexicographically.
    """
    vs = K.vertices
    out = []
    for j in vs:
        lower = [v for v in vs if v < j]
        for i in lower:
            rest = [v for v in lower if v != i]
            for size in range(len(rest) + 1):
                for ks in combinations(rest, size):
                    ks = tuple(sorted(ks, reverse=True))
                    if smallest_in_component_without(K, i, j, ks):
                        out.append((i, j) + ks)
    out.sort(key=lambda t: (len(t), t))
    return out


def lrck_basis(K: SimplicialComplex, k: int) -> list[Descriptor]:
    """Basis descriptors of L^k(RC_K) for k = 1, 2, 3.

    k = 1: ``(i,)`` for each vertex.  k = 2: ``(i, j)`` for each non-edge.
    k = 3: square-type ``(i, j, j)`` for each non-edge {i, j}, listed by j
    ascending then i descending, followed by triple-type ``(i, j, k)`` with
    i < j > k, i != k and i the least vertex of a component of K_{i,j,k}
    avoiding j, in lexicographic order.
    """
    if k == 1:
        return [(v,) for v in K.vertices]
    if k == 2:
        return list(missing_edges(K))
    if k == 3:
        squares = sorted(missing_edges(K), key=lambda e: (e[1], -e[0]))
        basis = [(i, j, j) for i, j in squares]
        vs = K.vertices
        for i in vs:
            for j in vs:
                if j <= i:
                    continue
                for kk in vs:
                    if kk < j and kk != i and smallest_in_component_without(K, i, j, (kk,)):
                        basis.append((i, j, kk))
        return basis
    raise ValueError(f"basis known only in degrees 1, 2, 3; got {k}")


def l3_kind(t: Descriptor) -> str:
    return "square" if t[1] == t[2] else "triple"


def lcs_ranks(K: SimplicialComplex) -> GradedRanks:
    return GradedRanks(len(K.vertices), len(lrck_basis(K, 2)), len(lrck_basis(K, 3)))


def free_case_ranks(m: int) -> GradedRanks:
    """Ranks of L^1..L^3 for the free product of m copies of Z/2."""
    if m < 1:
        raise ValueError("m must be positive")
    return GradedRanks(m, comb(m, 2), comb(m, 2) + 2 * comb(m, 3))


def format_commutator(t: Descriptor) -> str:
    if len(t) == 1:
        return f"g{t[0]}"
    return "c(" + ",".join(map(str, t)) + ")"
