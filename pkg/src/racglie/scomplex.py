"""Abstract simplicial complexes on the vertex set [m] = {1, ..., m}.

A complex is stored by its maximal faces together with the edge adjacency of
its 1-skeleton.  Faces of a fixed dimension are materialised on demand.
Vertex labels are 1-based; full subcomplexes keep the ambient labels and
remember their ground set.
"""

from __future__ import annotations

import json
from functools import cached_property
from itertools import combinations, permutations
from pathlib import Path
from typing import Iterable, Iterator, Sequence

Face = tuple[int, ...]


class ComplexFormatError(ValueError):
    """Raised for malformed complex input."""


class SimplicialComplex:
    """Immutable simplicial complex with ambient vertex range 1..m.

    ``vertices`` is the ground set (all of 1..m unless this is a full
    subcomplex); every vertex of the ground set is a face.
    """

    __slots__ = ("m", "vertices", "maximal_faces", "__dict__")

    def __init__(self, m: int, faces: Iterable[Iterable[int]] = (),
                 vertices: Iterable[int] | None = None):
        if m < 0:
            raise ComplexFormatError(f"vertex count must be non-negative, got {m}")
        ground = tuple(range(1, m + 1)) if vertices is None else tuple(sorted(set(vertices)))
        for v in ground:
            if not 1 <= v <= m:
                raise ComplexFormatError(f"vertex {v} out of range 1..{m}")
        ground_set = set(ground)
        cleaned: set[Face] = set()
        for f in faces:
            face = tuple(sorted(f))
            if len(set(face)) != len(face):
                raise ComplexFormatError(f"duplicate vertex in face {list(f)}")
            for v in face:
                if v not in ground_set:
                    raise ComplexFormatError(f"vertex {v} out of range for ground set")
            if face:
                cleaned.add(face)
        cleaned.update((v,) for v in ground)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "vertices", ground)
        object.__setattr__(self, "maximal_faces", _maximal(cleaned))

    def __setattr__(self, name, value):
        raise AttributeError("SimplicialComplex is immutable")

    def __reduce__(self):
        return SimplicialComplex, (self.m, self.maximal_faces, self.vertices)

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return (self.m, self.vertices, self.maximal_faces) == (
            other.m, other.vertices, other.maximal_faces)

    def __hash__(self):
        return hash((self.m, self.vertices, self.maximal_faces))

    def __repr__(self):
        faces = [list(f) for f in self.maximal_faces]
        if self.vertices == tuple(range(1, self.m + 1)):
            return f"SimplicialComplex({self.m}, {faces})"
        return f"SimplicialComplex({self.m}, {faces}, vertices={list(self.vertices)})"

    @cached_property
    def adjacency(self) -> dict[int, frozenset[int]]:
        nbrs: dict[int, set[int]] = {v: set() for v in self.vertices}
        for face in self.maximal_faces:
            for a, b in combinations(face, 2):
                nbrs[a].add(b)
                nbrs[b].add(a)
        return {v: frozenset(s) for v, s in nbrs.items()}

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted((a, b) for a in self.adjacency for b in self.adjacency[a] if a < b))

    @property
    def dimension(self) -> int:
        return max((len(f) for f in self.maximal_faces), default=0) - 1

    def has_edge(self, i: int, j: int) -> bool:
        return j in self.adjacency.get(i, ())

    def is_face(self, face: Iterable[int]) -> bool:
        s = set(face)
        if not s:
            return True
        return any(s.issubset(f) for f in self.maximal_faces)

    def faces(self, k: int) -> list[Face]:
        """Sorted list of the k-dimensional faces; k = -1 gives the empty face."""
        if k < -1:
            return []
        if k == -1:
            return [()]
        out: set[Face] = set()
        for f in self.maximal_faces:
            if len(f) >= k + 1:
                out.update(combinations(f, k + 1))
        return sorted(out)

    def to_json(self) -> dict:
        return {"m": self.m, "maximal_faces": [list(f) for f in self.maximal_faces]}


def _maximal(faces: set[Face]) -> tuple[Face, ...]:
    by_size = sorted(faces, key=len, reverse=True)
    kept: list[frozenset[int]] = []
    result = []
    for f in by_size:
        fs = frozenset(f)
        if not any(fs <= g for g in kept):
            kept.append(fs)
            result.append(f)
    return tuple(sorted(result))


# -- constructors ----------------------------------------------------------

def discrete(m: int) -> SimplicialComplex:
    return SimplicialComplex(m)


def simplex(m: int) -> SimplicialComplex:
    return SimplicialComplex(m, [range(1, m + 1)])


def from_edges(m: int, edges: Iterable[Sequence[int]]) -> SimplicialComplex:
    """Complex whose maximal faces are the given edges (plus singletons)."""
    return SimplicialComplex(m, edges)


def flag_complex(m: int, edges: Iterable[Sequence[int]]) -> SimplicialComplex:
    """The clique complex of a graph on [m]."""
    adj = {v: set() for v in range(1, m + 1)}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    cliques = []

    def extend(clique: list[int], cand: set[int]):
        grown = False
        for v in sorted(cand):
            if not clique or v > clique[-1]:
                extend(clique + [v], cand & adj[v])
                grown = True
        if not grown and clique:
            cliques.append(clique)

    extend([], set(adj))
    return SimplicialComplex(m, cliques)


def enumerate_complexes(m: int) -> Iterator[SimplicialComplex]:
    """Every simplicial complex on the labelled vertex set [m]."""
    candidates = [c for size in range(2, m + 1) for c in combinations(range(1, m + 1), size)]

    def rec(idx: int, chosen: set[Face]):
        if idx == len(candidates):
            yield SimplicialComplex(m, chosen)
            return
        face = candidates[idx]
        yield from rec(idx + 1, chosen)
        if len(face) == 2 or all(sub in chosen for sub in combinations(face, len(face) - 1)):
            chosen.add(face)
            yield from rec(idx + 1, chosen)
            chosen.discard(face)

    yield from rec(0, set())


def random_complex(m: int, rng, max_faces: int | None = None, max_size: int | None = None
                   ) -> SimplicialComplex:
    """Complex on [m] generated by a random number of random faces."""
    max_faces = max_faces if max_faces is not None else m
    max_size = max_size if max_size is not None else m
    faces = []
    for _ in range(rng.randint(0, max_faces)):
        size = rng.randint(2, max(2, min(m, max_size)))
        faces.append(rng.sample(range(1, m + 1), size))
    return SimplicialComplex(m, faces if m > 1 else [])


def isomorphism_representatives(m: int) -> list[SimplicialComplex]:
    """One complex per isomorphism class on [m] (brute force over relabelings)."""
    seen, reps = set(), []
    for K in enumerate_complexes(m):
        key = min(tuple(sorted(tuple(sorted(perm[v - 1] for v in f)) for f in K.maximal_faces))
                  for perm in permutations(range(1, m + 1)))
        if key not in seen:
            seen.add(key)
            reps.append(K)
    return reps


# -- parsing ---------------------------------------------------------------

def parse_complex(text: str) -> SimplicialComplex:
    """Parse the line format: ``m`` on the first line, then one maximal face per line.

    Blank lines are skipped and ``#`` starts a comment line.  A JSON object
    ``{"m": int, "maximal_faces": [[int]]}`` is accepted as well.
    """
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return _from_json(text)
    lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        lines.append((lineno, line))
    if not lines:
        raise ComplexFormatError("empty input: expected vertex count on first line")
    lineno, head = lines[0]
    try:
        m = int(head)
    except ValueError:
        raise ComplexFormatError(f"line {lineno}: expected vertex count, got {head!r}") from None
    if m < 1:
        raise ComplexFormatError(f"line {lineno}: vertex count must be positive")
    faces = []
    for lineno, line in lines[1:]:
        try:
            face = [int(tok) for tok in line.replace(",", " ").split()]
        except ValueError:
            raise ComplexFormatError(f"line {lineno}: malformed face {line!r}") from None
        for v in face:
            if not 1 <= v <= m:
                raise ComplexFormatError(f"line {lineno}: vertex {v} out of range 1..{m}")
        if len(set(face)) != len(face):
            raise ComplexFormatError(f"line {lineno}: duplicate vertex in face {line!r}")
        faces.append(face)
    return SimplicialComplex(m, faces)


def _from_json(text: str) -> SimplicialComplex:
    try:
        data = json.loads(text)
        m = data["m"]
        faces = data.get("maximal_faces", [])
    except (json.JSONDecodeError, KeyError, TypeError, AttributeError) as exc:
        raise ComplexFormatError(f"malformed JSON complex: {exc}") from None
    if not isinstance(m, int) or m < 1:
        raise ComplexFormatError("JSON complex: 'm' must be a positive integer")
    if not isinstance(faces, list) or not all(
            isinstance(f, list) and all(isinstance(v, int) for v in f) for f in faces):
        raise ComplexFormatError("JSON complex: 'maximal_faces' must be a list of integer lists")
    return SimplicialComplex(m, faces)


def load_complex(path: str | Path) -> SimplicialComplex:
    return parse_complex(Path(path).read_text())


# -- queries ---------------------------------------------------------------

def _check_subset(K: SimplicialComplex, J: Iterable[int]) -> tuple[int, ...]:
    members = tuple(sorted(set(J)))
    for v in members:
        if not 1 <= v <= K.m:
            raise ValueError(f"vertex {v} out of range 1..{K.m}")
    return members


def full_subcomplex(K: SimplicialComplex, J: Iterable[int]) -> SimplicialComplex:
    """K_J = {I in K : I subset of J}, on the ambient labels with ground set J."""
    members = _check_subset(K, J)
    js = set(members)
    faces = {tuple(v for v in f if v in js) for f in K.maximal_faces}
    return SimplicialComplex(K.m, faces, vertices=members)


def connected_components(K: SimplicialComplex, J: Iterable[int] | None = None) -> list[tuple[int, ...]]:
    """Components of the 1-skeleton of K_J, each sorted, ordered by smallest member."""
    members = K.vertices if J is None else _check_subset(K, J)
    js = set(members)
    adj = K.adjacency
    seen: set[int] = set()
    blocks = []
    for v in members:
        if v in seen:
            continue
        stack = [v]
        seen.add(v)
        block = []
        while stack:
            u = stack.pop()
            block.append(u)
            for w in adj.get(u, ()):
                if w in js and w not in seen:
                    seen.add(w)
                    stack.append(w)
        blocks.append(tuple(sorted(block)))
    return blocks


def is_flag(K: SimplicialComplex) -> bool:
    """True iff every set of pairwise adjacent vertices is a face."""
    clique = flag_complex(K.m, K.edges)
    return all(K.is_face(c) for c in clique.maximal_faces if set(c) <= set(K.vertices))


def missing_edges(K: SimplicialComplex) -> list[tuple[int, int]]:
    vs = K.vertices
    return [(i, j) for i, j in combinations(vs, 2) if not K.has_edge(i, j)]
