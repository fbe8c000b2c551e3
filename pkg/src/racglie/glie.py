"""Free and graph Lie algebras over GF(2) in the Lyndon basis.

A homogeneous Lie element is a set of Lyndon words (its GF(2) support); the
word w stands for its standard bracketing.  Brackets of basis elements are
straightened back into the Lyndon basis with the Jacobi identity; signs play
no role in characteristic 2.

Graded dimensions of quotients are computed degree by degree: the ideal
generated by homogeneous relations satisfies I_d = [I_{d-1}, L_1] + R_d,
because every algebra here is generated in degree 1.
"""

from __future__ import annotations

import json
from functools import lru_cache
from math import comb
from typing import Iterable, Iterator, Sequence

from .gf2 import EchelonBasis, unpack
from .scomplex import SimplicialComplex

LyndonWord = tuple[int, ...]

DEFAULT_MAX_DEGREE = 10
DEFAULT_BASIS_LIMIT = 2_000_000


class DegreeCapExceeded(RuntimeError):
    """Requested degree would exceed the configured size guard."""


# -- Lyndon words --------------------------------------------------------------

def is_lyndon(w: Sequence[int]) -> bool:
    w = tuple(w)
    return bool(w) and all(w < w[i:] + w[:i] for i in range(1, len(w)))


def lyndon_words(m: int, d: int) -> Iterator[LyndonWord]:
    """Lyndon words of length exactly d over {1..m} in lexicographic order (Duval)."""
    if m < 1 or d < 1:
        return
    w = [0]
    while w:
        if len(w) == d:
            yield tuple(x + 1 for x in w)
        # extend periodically to length d, then increment the last letter
        n = len(w)
        while len(w) < d:
            w.append(w[len(w) - n])
        while w and w[-1] == m - 1:
            w.pop()
        if w:
            w[-1] += 1


@lru_cache(maxsize=None)
def standard_factorization(w: LyndonWord) -> tuple[LyndonWord, LyndonWord]:
    """w = uv with v the longest proper Lyndon suffix."""
    if len(w) < 2:
        raise ValueError("letters have no standard factorization")
    for i in range(1, len(w)):
        if is_lyndon(w[i:]):
            return w[:i], w[i:]
    raise AssertionError("unreachable: the last letter is a Lyndon suffix")


def witt_number(m: int, d: int) -> int:
    """Dimension of the degree-d part of the free Lie algebra on m generators."""
    total = 0
    for e in range(1, d + 1):
        if d % e == 0:
            total += _mobius(e) * m ** (d // e)
    return total // d


def _mobius(n: int) -> int:
    result, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    return -result if n > 1 else result


class LyndonBasis:
    """Indexed Lyndon basis of the degree-d component over {1..m}."""

    def __init__(self, m: int, d: int):
        self.m, self.d = m, d
        self.words: list[LyndonWord] = list(lyndon_words(m, d))
        self.index = {w: i for i, w in enumerate(self.words)}

    def __len__(self):
        return len(self.words)

    def pack(self, support: Iterable[LyndonWord]) -> int:
        v = 0
        for w in support:
            v ^= 1 << self.index[w]
        return v

    def unpack(self, v: int) -> frozenset[LyndonWord]:
        return frozenset(self.words[i] for i in unpack(v))


@lru_cache(maxsize=64)
def lyndon_basis(m: int, d: int) -> LyndonBasis:
    return LyndonBasis(m, d)


# -- bracket -----------------------------------------------------------------------

@lru_cache(maxsize=None)
def bracket_words(u: LyndonWord, v: LyndonWord) -> frozenset[LyndonWord]:
    """[P_u, P_v] expanded in the Lyndon basis over GF(2)."""
    if u == v:
        return frozenset()
    if u > v:
        u, v = v, u
    if len(u) == 1 or standard_factorization(u)[1] >= v:
        return frozenset((u + v,))
    u1, u2 = standard_factorization(u)
    # [[u1, u2], v] = [[u1, v], u2] + [u1, [u2, v]]
    left = _bracket_support(bracket_words(u1, v), (u2,))
    right = _bracket_support((u1,), bracket_words(u2, v))
    return left ^ right


def _bracket_support(xs: Iterable[LyndonWord], ys: Iterable[LyndonWord]) -> frozenset[LyndonWord]:
    acc: set[LyndonWord] = set()
    ys = tuple(ys)
    for x in xs:
        for y in ys:
            acc.symmetric_difference_update(bracket_words(x, y))
    return frozenset(acc)


class LieElement:
    """Homogeneous element of the free Lie algebra over GF(2)."""

    __slots__ = ("degree", "support")

    def __init__(self, degree: int, support: Iterable[LyndonWord] = ()):
        support = frozenset(tuple(w) for w in support)
        for w in support:
            if len(w) != degree or not is_lyndon(w):
                raise ValueError(f"{w} is not a Lyndon word of degree {degree}")
        self.degree = degree
        self.support = support

    @classmethod
    def generator(cls, i: int) -> "LieElement":
        return cls(1, [(i,)])

    @classmethod
    def from_nested(cls, spec) -> "LieElement":
        """Build from nested index lists: ``[x1, x2, ..., xk]`` is the left-nested
        bracket [...[[x1, x2], x3], ..., xk] where each entry is an index or a list."""
        if isinstance(spec, int):
            return cls.generator(spec)
        if not isinstance(spec, list) or not spec:
            raise ValueError(f"malformed bracket monomial {spec!r}")
        acc = cls.from_nested(spec[0])
        for part in spec[1:]:
            acc = bracket(acc, cls.from_nested(part))
        return acc

    def is_zero(self) -> bool:
        return not self.support

    def __add__(self, other: "LieElement") -> "LieElement":
        if self.degree != other.degree:
            raise ValueError("can only add homogeneous elements of equal degree")
        return LieElement(self.degree, self.support ^ other.support)

    def __eq__(self, other):
        if not isinstance(other, LieElement):
            return NotImplemented
        return self.degree == other.degree and self.support == other.support

    def __hash__(self):
        return hash((self.degree, self.support))

    def __repr__(self):
        terms = " + ".join("".join(map(str, w)) for w in sorted(self.support)) or "0"
        return f"LieElement(deg={self.degree}: {terms})"


def bracket(x: LieElement, y: LieElement) -> LieElement:
    return LieElement(x.degree + y.degree, _bracket_support(x.support, y.support))


def simple_bracket(indices: Sequence[int]) -> LieElement:
    """[mu_i1, mu_i2, ..., mu_ik], nested to the left."""
    return LieElement.from_nested(list(indices))


# -- quotients and graded dimensions ----------------------------------------------

def _guard(m: int, D: int, max_degree: int | None, basis_limit: int):
    cap = DEFAULT_MAX_DEGREE if max_degree is None else max_degree
    if D > cap:
        raise DegreeCapExceeded(f"degree {D} exceeds the cap {cap}")
    if witt_number(m, D) > basis_limit:
        raise DegreeCapExceeded(
            f"degree-{D} Lyndon basis on {m} letters has {witt_number(m, D)} elements "
            f"(limit {basis_limit})")


def quotient_dims(K: SimplicialComplex, relations: Iterable[LieElement], D: int, *,
                  max_degree: int | None = None,
                  basis_limit: int = DEFAULT_BASIS_LIMIT) -> tuple[int, ...]:
    """Graded dims of L_K modulo the ideal generated by homogeneous relations.

    L_K is the free Lie algebra on mu_1..mu_m modulo [mu_i, mu_j] for the edges
    of K; ``relations`` are extra homogeneous elements.
    """
    if D < 1:
        raise ValueError("maximal degree must be at least 1")
    m = K.m
    _guard(m, D, max_degree, basis_limit)
    seeds: dict[int, list[LieElement]] = {}
    for i, j in K.edges:
        seeds.setdefault(2, []).append(simple_bracket((i, j)))
    for r in relations:
        if r.degree > D:
            raise ValueError(f"relation of degree {r.degree} exceeds the maximal degree {D}")
        seeds.setdefault(r.degree, []).append(r)
    letters = [(i,) for i in range(1, m + 1)]
    dims = []
    ideal_prev: list[frozenset[LyndonWord]] = []
    for d in range(1, D + 1):
        basis = lyndon_basis(m, d)
        ech = EchelonBasis()
        for row in ideal_prev:
            for x in letters:
                ech.add(basis.pack(_bracket_support(row, (x,))))
        for r in seeds.get(d, ()):
            ech.add(basis.pack(r.support))
        dims.append(len(basis) - ech.rank)
        ideal_prev = [basis.unpack(v) for v in ech.rows()]
    return tuple(dims)


def graph_lie_dims(K: SimplicialComplex, D: int, **kw) -> tuple[int, ...]:
    """Graded dims of the graph Lie algebra L_K over GF(2) in degrees 1..D."""
    return quotient_dims(K, (), D, **kw)


def rc2point_relations(D: int) -> list[LieElement]:
    """Relations presenting L(RC_K) for K two disjoint points, up to degree D.

    With a = [mu_1, mu_2]: [a, mu_1] + [a, mu_2] in degree 3, and
    [a, mu_1, ..., mu_1, a] with 2k+1 copies of mu_1 in degree 2k+5.
    """
    a = [1, 2]
    rels = []
    if D >= 3:
        rels.append(LieElement.from_nested([a, 1]) + LieElement.from_nested([a, 2]))
    k = 0
    while 2 * k + 5 <= D:
        rels.append(LieElement.from_nested([a] + [1] * (2 * k + 1) + [a]))
        k += 1
    return rels


def parse_relations(text: str) -> list[LieElement]:
    """One homogeneous element per line, a '+'-separated sum of nested index lists.

    Example line: ``[1,2,1] + [1,2,2]``.  Blank lines and ``#`` comments are ignored.
    """
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        terms = _split_terms(line)
        total = None
        for term in terms:
            try:
                spec = json.loads(term)
                elem = LieElement.from_nested(spec)
            except (json.JSONDecodeError, ValueError) as exc:
                raise ValueError(f"line {lineno}: malformed term {term!r}: {exc}") from None
            if total is not None and total.degree != elem.degree:
                raise ValueError(f"line {lineno}: relation is not homogeneous")
            total = elem if total is None else total + elem
        out.append(total)
    return out


def _split_terms(line: str) -> list[str]:
    terms, depth, cur = [], 0, []
    for ch in line:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch == "+" and depth == 0:
            terms.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    terms.append("".join(cur).strip())
    if any(not t for t in terms):
        raise ValueError(f"empty term in {line!r}")
    return terms


def phi_comparison(K: SimplicialComplex, D: int = 3) -> list[dict]:
    """Compare dim L_K^d with rank L^d(RC_K) for d <= 3.

    The natural map L_K -> L(RC_K) is onto, so dim >= rank always; it is an
    isomorphism in degrees 1 and 2.
    """
    from .lcs import lcs_ranks

    if not 1 <= D <= 3:
        raise ValueError("group-side ranks are available only through degree 3")
    dims = graph_lie_dims(K, D)
    ranks = lcs_ranks(K)
    rows = []
    for d in range(1, D + 1):
        dim, r = dims[d - 1], ranks[d - 1]
        rows.append({"degree": d, "dim_LK": dim, "rank_L_RC": r,
                     "surjective_ok": dim >= r, "equal": dim == r})
    return rows


# -- Hilbert series cross-check -------------------------------------------------

def clique_polynomial(K: SimplicialComplex) -> list[int]:
    """Coefficients of sum over cliques C of the 1-skeleton of (-t)^|C| (empty clique included)."""
    vs = K.vertices
    coeffs = [0] * (len(vs) + 1)
    coeffs[0] = 1

    def grow(clique: tuple[int, ...], cand: list[int]):
        for idx, v in enumerate(cand):
            new = clique + (v,)
            coeffs[len(new)] += (-1) ** len(new)
            grow(new, [w for w in cand[idx + 1:] if K.has_edge(v, w)])

    grow((), list(vs))
    return coeffs


def hilbert_series_from_dims(dims: Sequence[int], D: int) -> list[int]:
    """Coefficients through t^D of the product over d of (1 - t^d)^(-dims_d)."""
    series = [1] + [0] * D
    for d, n in enumerate(dims, 1):
        if n == 0:
            continue
        factor = [0] * (D + 1)
        for k in range(D // d + 1):
            factor[d * k] = comb(n + k - 1, k)
        series = [sum(series[i] * factor[t - i] for i in range(t + 1)) for t in range(D + 1)]
    return series


def invert_series(coeffs: Sequence[int], D: int) -> list[int]:
    if coeffs[0] != 1:
        raise ValueError("series must have constant term 1")
    c = list(coeffs) + [0] * (D + 1)
    out = [1] + [0] * D
    for t in range(1, D + 1):
        out[t] = -sum(c[i] * out[t - i] for i in range(1, t + 1))
    return out


def face_polynomial(K: SimplicialComplex) -> list[int]:
    """Sum over faces I of K (empty face included) of (-t)^|I|.

    Equals clique_polynomial exactly when K is flag.
    """
    coeffs = [0] * (K.dimension + 2)
    for k in range(-1, K.dimension + 1):
        coeffs[k + 1] = (-1) ** (k + 1) * len(K.faces(k))
    return coeffs


def hilbert_check(K: SimplicialComplex, D: int, polynomial: str = "clique"
                  ) -> tuple[bool, list[int], list[int]]:
    """Compare the PBW series of graph_lie_dims with 1 / polynomial through t^D.

    ``polynomial`` is "clique" (cliques of the 1-skeleton) or "faces" (faces of K).
    """
    poly = {"clique": clique_polynomial, "faces": face_polynomial}[polynomial](K)
    dims = graph_lie_dims(K, D)
    lhs = hilbert_series_from_dims(dims, D)
    rhs = invert_series(poly, D)
    return lhs == rhs, lhs, rhs
