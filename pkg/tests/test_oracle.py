import random

import numpy as np
import pytest
from sympy.combinatorics.fp_groups import FpGroup
from sympy.combinatorics.free_groups import free_group

from racglie.lcs import lcs_ranks
from racglie.oracle import (CommutatorAbelianization, CosetLimitExceeded, Presentation,
                            check_proof_identities, class_presentation, effective_relators,
                            evaluate, is_identity, l3_independence, oracle_ranks,
                            proof_identity_instances, quotient_table, todd_coxeter)
from racglie.homology import h1_rank_rk
from racglie.scomplex import SimplicialComplex, discrete, enumerate_complexes, simplex
from racglie.words import expand_commutator, inverse


def sympy_order(P):
    F, *gens = free_group(",".join(f"x{i}" for i in range(1, P.m + 1)))
    rels = []
    for w in P.relators:
        r = F.identity
        for x in w:
            r = r * gens[x - 1]
        rels.append(r)
    return FpGroup(F, rels).order()


@pytest.mark.parametrize("K,c", [
    (discrete(2), 1), (discrete(2), 2), (discrete(2), 3),
    (SimplicialComplex(3, [[1, 2]]), 2), (SimplicialComplex(3, [[1, 2], [2, 3]]), 2),
    (discrete(3), 1),
])
def test_orders_agree_with_sympy(K, c):
    P = class_presentation(K, c)
    assert todd_coxeter(P).n == sympy_order(P)


def test_known_orders():
    assert todd_coxeter(class_presentation(simplex(4), 3)).n == 16
    # the infinite dihedral group modulo gamma_{c+1} is dihedral of order 2^(c+1)
    assert oracle_ranks(discrete(2), 3).orders == [4, 8, 16]
    assert oracle_ranks(discrete(2), 4, allow_class4=True).orders == [4, 8, 16, 32]
    res = oracle_ranks(discrete(3), 3)
    assert res.orders == [8, 64, 2048] and res.ranks == [3, 3, 5]


def test_table_is_a_regular_action():
    t = quotient_table(SimplicialComplex(3, [[1, 2]]), 2)
    for i in range(1, 4):
        p = t.generator_permutation(i)
        assert np.array_equal(p[p], np.arange(t.n))
    # transitive on n points, and n is the group order, so the action is regular
    seen, frontier = {0}, [0]
    while frontier:
        a = frontier.pop()
        for i in range(3):
            b = int(t.action[a, i])
            if b not in seen:
                seen.add(b)
                frontier.append(b)
    assert len(seen) == t.n == 32
    assert np.array_equal(evaluate(t, ()), np.arange(t.n))
    assert is_identity(t, expand_commutator((1, 2)))
    assert not is_identity(t, expand_commutator((1, 3)))


def test_prune_gives_the_same_orders():
    for m in (2, 3):
        for K in enumerate_complexes(m):
            assert oracle_ranks(K, 3, prune=True).orders == oracle_ranks(K, 3).orders


def test_effective_relators_keep_normal_closure():
    P = class_presentation(SimplicialComplex(3, [[1, 2]]), 2)
    eff = effective_relators(P)
    assert (1, 2, 1, 2) in eff
    Q = Presentation(3, tuple([(i, i) for i in (1, 2, 3)] + eff))
    assert todd_coxeter(Q).n == todd_coxeter(P).n
    with pytest.raises(ValueError):
        effective_relators(Presentation(2, ((1, 1),)))


def test_guards():
    with pytest.raises(CosetLimitExceeded):
        oracle_ranks(discrete(3), 3, coset_limit=100)
    with pytest.raises(ValueError):
        class_presentation(discrete(3), 4, allow_class4=True)
    with pytest.raises(ValueError):
        class_presentation(discrete(2), 4)


def test_ranks_match_theorem_on_small_complexes():
    for m in (1, 2, 3):
        for K in enumerate_complexes(m):
            assert oracle_ranks(K, 3).ranks == list(lcs_ranks(K))


def test_commutator_abelianization_rank_and_controls():
    for m in (2, 3):
        for K in enumerate_complexes(m):
            assert CommutatorAbelianization(K).rank == h1_rank_rk(K)
    ab = CommutatorAbelianization(discrete(3))
    # negative controls: these are not congruences
    assert not ab.is_trivial(expand_commutator((1, 2)))
    assert not ab.congruent(expand_commutator((1, 2, 1)), expand_commutator((1, 2)))
    assert not ab.is_trivial(expand_commutator((1, 2)) * 2)
    # a commutator of commutators lies in the second derived subgroup
    c12, c13 = expand_commutator((1, 2)), expand_commutator((1, 3))
    assert ab.is_trivial(inverse(c12) + inverse(c13) + c12 + c13)
    with pytest.raises(ValueError):
        ab.image((1,))


def test_proof_identities_and_negative_control():
    K = discrete(3)
    t = quotient_table(K, 3)
    rep = check_proof_identities(K, t, seed=1, samples=20)
    assert rep.ok and rep.checked == rep.checked_mod_gamma2_prime > 0
    names = {name for name, *_ in proof_identity_instances(3, random.Random(0), 5)}
    assert {n.split(":")[0] for n in names} == {"A", "B", "sq", "comm", "WHMod", "pswap", "expand"}
    # a false identity is caught by both checks
    ab = CommutatorAbelianization(K)
    bogus = expand_commutator((1, 2, 3))
    assert not is_identity(t, bogus) and not ab.is_trivial(bogus)


def test_independence_and_negative_control():
    K = discrete(3)
    assert l3_independence(K, quotient_table(K, 3)) == (True, 5)
    # modulo gamma_3 every basis commutator is trivial
    assert l3_independence(K, quotient_table(K, 2)) == (False, 0)
