"""Brute-force verification through the finite quotients RC_K / gamma_{c+1}.

The quotient of class c is presented by the involution relators, the edge
commutators and every simple commutator of length c + 1; coset enumeration
over the trivial subgroup then yields its regular permutation representation.
Lower-central-series ranks come from successive quotient orders, and the
commutator identities used for L^3 are checked as exact equalities in the
class-3 quotient, where gamma_4 (and so gamma_2') is trivial.
"""

from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import _enumerate
from .lcs import lrck_basis
from .scomplex import SimplicialComplex
from .words import (Word, commutator, expand_commutator, inverse, nested_commutator,
                    normal_form)

log = logging.getLogger(__name__)

DEFAULT_COSET_LIMIT = 5_000_000
_INITIAL_CAPACITY = 1 << 12
_STACK_SIZE = 1 << 16


class CosetLimitExceeded(RuntimeError):
    pass


class Discrepancy(AssertionError):
    """A computed invariant contradicts a theorem that should hold."""


@dataclass(frozen=True)
class Presentation:
    m: int
    relators: tuple[Word, ...]
    complex: SimplicialComplex | None = None
    nilpotency_class: int | None = None


@dataclass(frozen=True)
class CosetTable:
    """Complete coset table of the trivial subgroup; coset 0 is the base point.

    ``action[a, i - 1]`` is the coset a.g_i.
    """
    action: np.ndarray

    @property
    def n(self) -> int:
        return self.action.shape[0]

    @property
    def m(self) -> int:
        return self.action.shape[1]

    def generator_permutation(self, i: int) -> np.ndarray:
        return self.action[:, i - 1]


@dataclass
class OracleRanks:
    orders: list[int]
    ranks: list[int]


# -- presentations ------------------------------------------------------------

def class_presentation(K: SimplicialComplex, c: int, allow_class4: bool = False,
                       prune: bool = False) -> Presentation:
    """Presentation of RC_K / gamma_{c+1}.

    Relators: g_i^2, (g_i, g_j) for edges {i, j}, and the simple commutator of
    every index tuple in [m]^(c+1).  ``prune`` drops the tuples whose last two
    indices coincide.
    """
    if not 1 <= c <= 3 and not (c == 4 and allow_class4 and K.m == 2):
        raise ValueError(f"class must be 1..3 (4 only for m = 2 with the class-4 flag); got {c}")
    m = K.m
    rels: list[Word] = [(i, i) for i in range(1, m + 1)]
    rels += [expand_commutator((i, j)) for i, j in K.edges]
    for t in itertools.product(range(1, m + 1), repeat=c + 1):
        if prune and t[-1] == t[-2]:
            continue
        rels.append(expand_commutator(t))
    return Presentation(m, tuple(rels), K, c)


def _cyclic_forms(w: Word) -> list[Word]:
    n = len(w)
    return [w[i:] + w[:i] for i in range(n)] or [()]


def effective_relators(P: Presentation) -> list[Word]:
    """Relators actually scanned during enumeration.

    Involution relators are built into the table and commutation relators
    (a, b, a, b) are kept.  The others are rewritten modulo those (cyclic
    RC_K-normal forms, least over rotations and inversion); trivial ones and
    duplicates are dropped.  The normal closure is unchanged.
    """
    inv = {w[0] for w in P.relators if len(w) == 2 and w[0] == w[1]}
    if inv != set(range(1, P.m + 1)):
        raise ValueError("enumerator requires g_i^2 among the relators for every generator")
    edges = set()
    for w in P.relators:
        if len(w) == 4 and w[0] == w[2] and w[1] == w[3] and w[0] != w[1]:
            edges.add(tuple(sorted(w[:2])))
    K = SimplicialComplex(P.m, edges)
    # the commutation relators drive the rewriting, so they are always scanned
    out = [(a, b, a, b) for a, b in sorted(edges)]
    seen: set[Word] = set(out)
    for w in P.relators:
        best = normal_form(K, w)
        changed = True
        while changed and best:
            changed = False
            for cand in _cyclic_forms(best) + _cyclic_forms(inverse(best)):
                nf = normal_form(K, cand)
                if (len(nf), nf) < (len(best), best):
                    best, changed = nf, True
        if not best or len(best) == 2 and best[0] == best[1]:
            continue
        if best not in seen:
            seen.add(best)
            out.append(best)
    out.sort(key=lambda w: (len(w), w))
    return out


def _flatten(relators: Sequence[Word]):
    words = np.array([x - 1 for w in relators for x in w], dtype=np.int32)
    lengths = np.array([len(w) for w in relators], dtype=np.int64)
    starts = np.concatenate([[0], np.cumsum(lengths)[:-1]]).astype(np.int64) if relators else \
        np.zeros(0, np.int64)
    return words, starts, lengths


def todd_coxeter(P: Presentation, coset_limit: int = DEFAULT_COSET_LIMIT) -> CosetTable:
    """Coset enumeration over the trivial subgroup (Felsch strategy).

    Cosets are defined at the first undefined entry in (coset, generator)
    order and every deduction is scanned against all cyclic conjugates of the
    relators.  The finished table is checked against every relator of P.
    """
    if coset_limit < 1:
        raise ValueError("coset limit must be positive")
    m = P.m
    rels = effective_relators(P)
    conj: list[Word] = []
    for w in rels:
        for c in dict.fromkeys(_cyclic_forms(w) + _cyclic_forms(inverse(w))):
            conj.append(c)
    conj.sort(key=lambda w: (w[0], len(w), w))
    pool = conj + rels
    words, starts, lengths = _flatten(pool)
    nconj = len(conj)
    cstart, clen = starts[:nconj], lengths[:nconj]
    rstart, rlen = starts[nconj:], lengths[nconj:]
    firsts = np.array([w[0] - 1 for w in conj], dtype=np.int64)
    gstart = np.searchsorted(firsts, np.arange(m), side="left").astype(np.int64)
    gend = np.searchsorted(firsts, np.arange(m), side="right").astype(np.int64)

    cap = min(_INITIAL_CAPACITY, coset_limit)
    while True:
        status, table, p, nfree = _enumerate.felsch(
            m, words, cstart, clen, gstart, gend, rstart, rlen, cap, _STACK_SIZE)
        if status == _enumerate.OK:
            break
        if cap >= coset_limit:
            raise CosetLimitExceeded(f"coset enumeration needs more than {coset_limit} cosets")
        cap = min(2 * cap, coset_limit)
        log.debug("coset capacity raised to %d", cap)

    live = np.flatnonzero(p[:nfree] == np.arange(nfree))
    renumber = np.full(nfree, -1, np.int64)
    renumber[live] = np.arange(live.size)
    rows = table[live]
    if (rows < 0).any():
        raise AssertionError("coset enumeration finished with undefined entries")
    action = renumber[rows].astype(np.int32)
    if (action < 0).any():
        raise AssertionError("live coset points at a dead coset")

    all_words, all_starts, all_lengths = _flatten(list(P.relators))
    bad = _enumerate.closed_under(action, all_words, all_starts, all_lengths)
    if bad >= 0:
        raise AssertionError(f"relator {P.relators[bad]} does not act trivially")
    return CosetTable(action)


# -- evaluation and ranks ---------------------------------------------------------

def evaluate(table: CosetTable, w: Iterable[int]) -> np.ndarray:
    """Permutation a -> a.w of the cosets (identity iff w = 1 in the quotient)."""
    cur = np.arange(table.n, dtype=np.int32)
    for x in w:
        if not 1 <= x <= table.m:
            raise ValueError(f"generator index {x} out of range")
        cur = table.action[cur, x - 1]
    return cur


def is_identity(table: CosetTable, w: Iterable[int]) -> bool:
    # the action is regular, so fixing the base point forces the identity
    c = 0
    for x in w:
        c = table.action[c, x - 1]
    return c == 0


def quotient_table(K: SimplicialComplex, c: int, coset_limit: int = DEFAULT_COSET_LIMIT,
                   prune: bool = False, allow_class4: bool = False) -> CosetTable:
    return todd_coxeter(class_presentation(K, c, allow_class4=allow_class4, prune=prune),
                        coset_limit)


def oracle_ranks(K: SimplicialComplex, c: int = 3, coset_limit: int = DEFAULT_COSET_LIMIT,
                 prune: bool = False, allow_class4: bool = False,
                 tables: dict | None = None) -> OracleRanks:
    """Ranks of gamma_k / gamma_{k+1}, k = 1..c, from the orders of RC_K / gamma_{k+1}.

    Raises :class:`Discrepancy` if some order is not a power of two or does
    not divide the next one.  Pass a dict as ``tables`` to collect the tables.
    """
    orders, ranks = [], []
    for k in range(1, c + 1):
        t = quotient_table(K, k, coset_limit, prune=prune, allow_class4=allow_class4)
        if tables is not None:
            tables[k] = t
        n = t.n
        if n & (n - 1):
            raise Discrepancy(f"|RC_K / gamma_{k + 1}| = {n} is not a power of 2")
        if orders and n % orders[-1]:
            raise Discrepancy(f"order {orders[-1]} at class {k - 1} does not divide {n}")
        orders.append(n)
        ranks.append(n.bit_length() - 1 - sum(ranks))
    return OracleRanks(orders, ranks)


# -- identities from the L^3 computation ---------------------------------------------

def _square(w: Word) -> Word:
    return w + w


def _inv_square(w: Word) -> Word:
    return inverse(w) + inverse(w)


def proof_identity_instances(m: int, rng: random.Random | None = None,
                             samples: int = 50) -> Iterable[tuple[str, tuple, Word, Word]]:
    """Pairs of words that the L^3 computation asserts to be equal modulo gamma_2'.

    Yields (name, indices, lhs, rhs).  The generator-level identities run over
    every admissible index choice; the word-level ones (commuting of
    commutators, reduced Hall-Witt, the p/q swap, and the expansion of
    (g_q, (g_p, x))) are checked on all generator instances plus ``samples``
    random words.
    """
    E = expand_commutator
    V = range(1, m + 1)
    for i, j in itertools.permutations(V, 2):
        yield "A:(i,j,j,j)=(j,i,j)^2", (i, j), E((i, j, j, j)), _square(E((j, i, j)))
        yield "A:(j,i,i,j)=(i,j,j)^2", (i, j), E((j, i, i, j)), _square(E((i, j, j)))
        yield "sq:(j,i,i)=(i,j)^2", (i, j), E((j, i, i)), _square(E((i, j)))
    for i, j, k in itertools.permutations(V, 3):
        yield "A:(i,j,i,k)=(j,i,k)^2", (i, j, k), E((i, j, i, k)), _square(E((j, i, k)))
        yield "B:(i,j,k,i)=(i,j,k)^-2", (i, j, k), E((i, j, k, i)), _inv_square(E((i, j, k)))
        yield "B:(i,j,k,j)=(i,j,k)^-2", (i, j, k), E((i, j, k, j)), _inv_square(E((i, j, k)))
        yield "B:(i,j,k,k)=(i,j,k)^-2", (i, j, k), E((i, j, k, k)), _inv_square(E((i, j, k)))

    def word_instances(arity):
        for gens in itertools.product(V, repeat=arity):
            yield tuple((g,) for g in gens)
        if rng is not None:
            for _ in range(samples):
                yield tuple(tuple(rng.choice(V) for _ in range(rng.randint(0, 5)))
                            for _ in range(arity))

    C, N = commutator, nested_commutator
    for a, b, c, d in word_instances(4):
        yield "comm:(a,b)(c,d)=(c,d)(a,b)", (a, b, c, d), C(a, b) + C(c, d), C(c, d) + C(a, b)
    for a, b, c in word_instances(3):
        yield "WHMod:(a,b,c)(b,c,a)(c,a,b)=1", (a, b, c), N(a, b, c) + N(b, c, a) + N(c, a, b), ()
    for p, q, r, s in itertools.product(V, repeat=4):
        x = C((r,), (s,))
        P, Q = (p,), (q,)
        yield "pswap:(q,(p,x))=(p,(q,x))", (p, q, r, s), C(Q, C(P, x)), C(P, C(Q, x))
    for (P, Q), x in _pq_x_instances(V, rng, samples):
        rhs = (C(Q, x) + C(x, C(P, Q)) + C(Q, P) + C(x, P) + C(P, C(Q, x))
               + C(x, Q) + C(P, Q) + C(P, x))
        yield "expand:(q,(p,x))", (P, Q, x), C(Q, C(P, x)), rhs


def _pq_x_instances(V, rng, samples):
    for p, q in itertools.product(V, repeat=2):
        for r in V:
            yield ((p,), (q,)), (r,)
    if rng is not None:
        for _ in range(samples):
            p, q = rng.choice(V), rng.choice(V)
            x = tuple(rng.choice(V) for _ in range(rng.randint(0, 6)))
            yield ((p,), (q,)), x


class CommutatorAbelianization:
    """The map RC_K' -> RC_K' / RC_K'' by Reidemeister-Schreier rewriting.

    RC_K' is the kernel of RC_K -> (Z/2)^m; the transversal consists of the
    words g_i1 ... g_ik with i1 < ... < ik, indexed by bitmasks.  A word ending
    in the trivial coset is sent to its vector of Schreier-generator counts,
    and two such words agree modulo RC_K'' iff their difference lies in the
    lattice spanned by the rewritten relators.  This makes congruences
    "mod gamma_2'" decidable exactly, without passing to a nilpotent quotient.
    """

    def __init__(self, K: SimplicialComplex):
        self.m = m = K.m
        self.ngens = (1 << m) * m
        relations = []
        for T in range(1 << m):
            top = T.bit_length()
            for x in range(top + 1, m + 1):
                v = [0] * self.ngens
                v[self._gen(T, x)] = 1
                relations.append(v)
            for i in range(1, m + 1):
                relations.append(self._rewrite((i, i), T))
            for i, j in K.edges:
                relations.append(self._rewrite((i, j, i, j), T))
        self.relations = relations
        self._pivots = _rational_echelon(relations)

    @property
    def rank(self) -> int:
        """Rank of the free abelian group RC_K' / RC_K''."""
        return self.ngens - len(self._pivots)

    def _gen(self, T: int, x: int) -> int:
        return T * self.m + (x - 1)

    def _rewrite(self, w: Sequence[int], T: int = 0) -> list[int]:
        v = [0] * self.ngens
        for x in w:
            v[self._gen(T, x)] += 1
            T ^= 1 << (x - 1)
        return v

    def image(self, w: Sequence[int]) -> list[int]:
        T = 0
        for x in w:
            T ^= 1 << (x - 1)
        if T:
            raise ValueError("word is not in the commutator subgroup")
        return self._rewrite(w)

    def is_trivial(self, w: Sequence[int]) -> bool:
        return _reduces_to_zero(self._pivots, self.image(w))

    def congruent(self, u: Sequence[int], v: Sequence[int]) -> bool:
        return self.is_trivial(tuple(u) + inverse(v))


def _rational_echelon(rows: list[list[int]]) -> dict[int, list]:
    from fractions import Fraction

    pivots: dict[int, list] = {}
    for r in rows:
        vec = [Fraction(x) for x in r]
        vec = _reduce_against(pivots, vec)
        lead = next((i for i, x in enumerate(vec) if x), None)
        if lead is not None:
            c = vec[lead]
            pivots[lead] = [x / c for x in vec]
    return pivots


def _reduce_against(pivots, vec):
    for lead in sorted(pivots):
        c = vec[lead]
        if c:
            row = pivots[lead]
            vec = [a - c * b for a, b in zip(vec, row)]
    return vec


def _reduces_to_zero(pivots, v) -> bool:
    # the quotient lattice is torsion-free (free abelian RC_K'/RC_K''), so
    # rational membership decides integral membership
    from fractions import Fraction

    return not any(_reduce_against(pivots, [Fraction(x) for x in v]))


@dataclass
class IdentityReport:
    checked: int = 0
    failures: list[tuple[str, tuple]] = field(default_factory=list)
    checked_mod_gamma2_prime: int = 0
    failures_mod_gamma2_prime: list[tuple[str, tuple]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures and not self.failures_mod_gamma2_prime


def check_proof_identities(K: SimplicialComplex, table: CosetTable, seed: int = 0,
                           samples: int = 50, exact_mod_gamma2_prime: bool = True) -> IdentityReport:
    """Check every identity instance as an equality in the class-3 quotient.

    With ``exact_mod_gamma2_prime`` each instance is also checked modulo
    RC_K'' through :class:`CommutatorAbelianization`.  That test is sharper:
    in the class-3 quotient both sides of the length-4 identities already
    vanish.
    """
    if table.m != K.m:
        raise ValueError("table and complex have different generator counts")
    report = IdentityReport()
    ab = CommutatorAbelianization(K) if exact_mod_gamma2_prime else None
    for name, idx, lhs, rhs in proof_identity_instances(K.m, random.Random(seed), samples):
        report.checked += 1
        if not is_identity(table, lhs + inverse(rhs)):
            report.failures.append((name, idx))
        if ab is not None:
            report.checked_mod_gamma2_prime += 1
            if not ab.congruent(lhs, rhs):
                report.failures_mod_gamma2_prime.append((name, idx))
    return report


def l3_independence(K: SimplicialComplex, table: CosetTable) -> tuple[bool, int]:
    """Do the L^3 basis commutators generate an elementary abelian group of order 2^r3?

    The images are permutations of the class-3 quotient; in it gamma_3 is
    central of exponent 2, so independence is checked over GF(2) by growing
    the generated subgroup one element at a time.  Returns (ok, log2 order).
    """
    basis = lrck_basis(K, 3)
    perms = [evaluate(table, expand_commutator(t)) for t in basis]
    ident = np.arange(table.n, dtype=np.int32)
    for a in perms:
        if not np.array_equal(a[a], ident):
            raise Discrepancy("an L^3 basis commutator does not square to 1 modulo gamma_4")
        for b in perms:
            if not np.array_equal(a[b], b[a]):
                raise Discrepancy("L^3 basis commutators do not commute modulo gamma_4")
    elements = {ident.tobytes()}
    rank = 0
    for a in perms:
        key = a.tobytes()
        if key in elements:
            continue
        elements |= {(np.frombuffer(e, dtype=np.int32)[a]).tobytes() for e in elements}
        rank += 1
    return rank == len(basis), rank

