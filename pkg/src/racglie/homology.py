"""Integral simplicial homology and the homology of the real moment-angle complex.

Reduced homology uses the augmented chain complex: the empty face is the
unique (-1)-simplex, so the empty complex has H~_{-1} = Z and every nonempty
complex has H~_{-1} = 0.  H_k(R_K) is assembled from H~_{k-1}(K_J) over all
vertex subsets J.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator

from .scomplex import SimplicialComplex, connected_components, full_subcomplex

DEFAULT_SUBSET_CAP = 20


class SubsetCapExceeded(RuntimeError):
    """The 2^m subset sweep was refused because m exceeds the cap."""


@dataclass(frozen=True)
class IntegerMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entry storage does not match dimensions")

    @classmethod
    def from_rows(cls, rows: list[list[int]], cols: int | None = None) -> "IntegerMatrix":
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, tuple(tuple(int(x) for x in r) for r in rows))

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out = [[sum(self.entries[i][t] * other.entries[t][j] for t in range(self.cols))
                for j in range(other.cols)] for i in range(self.rows)]
        return IntegerMatrix.from_rows(out, other.cols)

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.entries for x in r)


@dataclass(frozen=True, order=True)
class HomologyGroup:
    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError(f"torsion {self.torsion} is not in invariant-factor form")

    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __add__(self, other: "HomologyGroup") -> "HomologyGroup":
        return HomologyGroup(self.free_rank + other.free_rank,
                             invariant_factor_form(self.torsion + other.torsion))

    def __str__(self):
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) or "0"


def invariant_factor_form(orders) -> tuple[int, ...]:
    """Convert a multiset of cyclic orders to invariant factors d1 | d2 | ...

    The direct sum of Z/a_i is rebuilt from its prime-power parts.
    """
    powers: dict[int, list[int]] = {}
    for n in orders:
        for p, e in _factor(n).items():
            powers.setdefault(p, []).append(p ** e)
    if not powers:
        return ()
    length = max(len(v) for v in powers.values())
    factors = [1] * length
    for p, vals in powers.items():
        vals.sort()
        for idx, q in enumerate(vals):
            factors[length - len(vals) + idx] *= q
    return tuple(f for f in factors if f > 1)


def _factor(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


# -- boundary operators ------------------------------------------------------

def boundary_matrix(K: SimplicialComplex, k: int) -> IntegerMatrix:
    """Matrix of the augmented boundary map from k-faces to (k-1)-faces.

    Columns are indexed by ``K.faces(k)`` and rows by ``K.faces(k - 1)`` in
    sorted order; deleting the t-th vertex of a face carries sign (-1)^t.
    For k = 0 the single row is the augmentation (all ones).
    """
    if k < 0:
        raise ValueError("degree must be non-negative")
    cols = K.faces(k)
    rows = K.faces(k - 1)
    index = {f: r for r, f in enumerate(rows)}
    data = [[0] * len(cols) for _ in rows]
    for c, face in enumerate(cols):
        for t in range(len(face)):
            sub = face[:t] + face[t + 1:]
            data[index[sub]][c] += -1 if t % 2 else 1
    return IntegerMatrix.from_rows(data, len(cols))


def smith_normal_form(M: IntegerMatrix) -> tuple[list[int], int]:
    """Invariant factors (nonzero diagonal of the Smith form) and the rank.

    Exact integer arithmetic; the pivot is always an entry of least absolute
    value, which keeps entry growth in check.
    """
    A = [list(r) for r in M.entries]
    nr, nc = M.rows, M.cols
    factors: list[int] = []
    t = 0
    while t < min(nr, nc):
        pivot = None
        for i in range(t, nr):
            for j in range(t, nc):
                if A[i][j] and (pivot is None or abs(A[i][j]) < abs(A[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        i, j = pivot
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        done = False
        while not done:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, nr):
                if A[i][t]:
                    q = A[i][t] // p
                    if q:
                        rt, ri = A[t], A[i]
                        for j in range(t, nc):
                            ri[j] -= q * rt[j]
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, nc):
                if A[t][j]:
                    q = A[t][j] // p
                    if q:
                        for i in range(t, nr):
                            A[i][j] -= q * A[i][t]
                    if A[t][j]:
                        dirty = True
            if dirty:
                _move_smallest_to(A, t, nr, nc)
                continue
            # row/col t now clear; enforce divisibility on the remainder
            bad = next(((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc)
                        if A[i][j] % p), None)
            if bad is None:
                done = True
            else:
                i = bad[0]
                for j in range(t, nc):
                    A[t][j] += A[i][j]
                _move_smallest_to(A, t, nr, nc)
        factors.append(abs(A[t][t]))
        t += 1
    return factors, len(factors)


def _move_smallest_to(A, t, nr, nc):
    best = None
    for i in range(t, nr):
        if A[i][t] and (best is None or abs(A[i][t]) < abs(A[best[0]][best[1]])):
            best = (i, t)
    for j in range(t, nc):
        if A[t][j] and (best is None or abs(A[t][j]) < abs(A[best[0]][best[1]])):
            best = (t, j)
    i, j = best
    A[t], A[i] = A[i], A[t]
    for row in A:
        row[t], row[j] = row[j], row[t]


# -- homology ----------------------------------------------------------------

def reduced_homology(K: SimplicialComplex, k: int) -> HomologyGroup:
    """H~_k(K; Z) for k >= -1."""
    if k < -1:
        raise ValueError("degree must be >= -1")
    n_k = len(K.faces(k))
    if n_k == 0:
        return HomologyGroup()
    rank_out = 0 if k == -1 else smith_normal_form(boundary_matrix(K, k))[1]
    factors, rank_in = smith_normal_form(boundary_matrix(K, k + 1))
    return HomologyGroup(n_k - rank_out - rank_in, tuple(sorted(d for d in factors if d > 1)))


def betti_numbers(K: SimplicialComplex) -> list[int]:
    """Reduced Betti numbers b~_{-1}, ..., b~_{dim K}."""
    return [reduced_homology(K, k).free_rank for k in range(-1, K.dimension + 1)]


def subsets(vertices) -> Iterator[tuple[int, ...]]:
    for size in range(len(vertices) + 1):
        yield from combinations(vertices, size)


def _check_cap(K: SimplicialComplex, cap: int | None):
    limit = DEFAULT_SUBSET_CAP if cap is None else cap
    if len(K.vertices) > limit:
        raise SubsetCapExceeded(
            f"m = {len(K.vertices)} exceeds the subset-sweep cap {limit}; raise the cap to proceed")


def h1_rank_rk(K: SimplicialComplex, cap: int | None = None) -> int:
    """Rank of H_1(R_K): sum over nonempty J of (#components of K_J - 1)."""
    _check_cap(K, cap)
    return sum(len(connected_components(K, J)) - 1 for J in subsets(K.vertices) if J)


@dataclass
class RkHomologyReport:
    k: int
    contributions: dict[tuple[int, ...], HomologyGroup] = field(default_factory=dict)

    @property
    def total(self) -> HomologyGroup:
        total = HomologyGroup()
        for g in self.contributions.values():
            total = total + g
        return total

    def to_json(self) -> dict:
        total = self.total
        return {
            "k": self.k,
            "total": {"rank": total.free_rank, "torsion": list(total.torsion)},
            "contributions": [
                {"J": list(J), "rank": g.free_rank, "torsion": list(g.torsion)}
                for J, g in self.contributions.items()
            ],
        }


def _contribution(args):
    K, J, k = args
    return J, reduced_homology(full_subcomplex(K, J), k - 1)


def rk_homology(K: SimplicialComplex, k: int, cap: int | None = None,
                workers: int = 1) -> RkHomologyReport:
    """H_k(R_K; Z) as the direct sum of H~_{k-1}(K_J) over all J subset of [m].

    Only nonzero contributions are kept; subsets are listed by size, then
    lexicographically.
    """
    if k < 0:
        raise ValueError("degree must be non-negative")
    _check_cap(K, cap)
    jobs = [(K, J, k) for J in subsets(K.vertices)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_contribution, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        results = [_contribution(job) for job in jobs]
    report = RkHomologyReport(k)
    for J, g in results:
        if not g.is_zero():
            report.contributions[J] = g
    return report
