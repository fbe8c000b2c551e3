"""Word calculus in the right-angled Coxeter group RC_K.

A word is a tuple of generator indices.  Every generator is an involution, so
the inverse of a word is its reverse.  Equality in RC_K is decided by
:func:`normal_form`, which returns the ShortLex-least reduced word of an
element.
"""

from __future__ import annotations

import re
from typing import Iterable, Sequence

from .scomplex import SimplicialComplex

Word = tuple[int, ...]


def inverse(w: Sequence[int]) -> Word:
    return tuple(reversed(w))


def commutator(a: Sequence[int], b: Sequence[int]) -> Word:
    """(a, b) = a^-1 b^-1 a b, as an unreduced word."""
    return inverse(a) + inverse(b) + tuple(a) + tuple(b)


def conjugate(a: Sequence[int], b: Sequence[int]) -> Word:
    """a^b = b^-1 a b."""
    return inverse(b) + tuple(a) + tuple(b)


def nested_commutator(*parts: Sequence[int]) -> Word:
    """Left-nested (...((p1, p2), p3), ..., pk) of arbitrary words."""
    if len(parts) < 2:
        raise ValueError("a commutator needs at least two entries")
    w = tuple(parts[0])
    for p in parts[1:]:
        w = commutator(w, p)
    return w


def expand_commutator(indices: Sequence[int]) -> Word:
    """Literal word of the simple left-nested commutator (g_i1, g_i2, ..., g_ik).

    The result is not reduced: ``expand_commutator((1, 2))`` is ``(1, 2, 1, 2)``.
    """
    if len(indices) < 2:
        raise ValueError("a commutator tuple needs at least two indices")
    return nested_commutator(*[(i,) for i in indices])


def _check_letters(K: SimplicialComplex, w: Iterable[int]) -> Word:
    w = tuple(w)
    for x in w:
        if not 1 <= x <= K.m:
            raise ValueError(f"generator index {x} out of range 1..{K.m}")
    return w


def free_reduce(K: SimplicialComplex, w: Iterable[int]) -> Word:
    """Delete letter pairs g ... g whose intermediate letters all commute with g.

    Works online: each new letter either cancels against the nearest equal
    letter reachable through commuting letters, or is appended.  The result
    is a geodesic word for the same element.
    """
    adj = K.adjacency
    out: list[int] = []
    for x in w:
        nbrs = adj.get(x, frozenset())
        pos = len(out) - 1
        while pos >= 0:
            y = out[pos]
            if y == x:
                del out[pos]
                break
            if y not in nbrs:
                out.append(x)
                break
            pos -= 1
        else:
            out.append(x)
    return tuple(out)


def lex_least(K: SimplicialComplex, w: Sequence[int]) -> Word:
    """Lexicographically least word obtainable from w by commuting swaps."""
    adj = K.adjacency
    remaining = list(w)
    result = []
    while remaining:
        seen: set[int] = set()
        best = None
        for idx, x in enumerate(remaining):
            if x not in seen and seen <= adj.get(x, frozenset()):
                if best is None or x < remaining[best]:
                    best = idx
            seen.add(x)
            if best is not None and remaining[best] == 1:
                break
        result.append(remaining.pop(best))
    return tuple(result)


def normal_form(K: SimplicialComplex, w: Iterable[int]) -> Word:
    """Canonical ShortLex-least reduced representative of w in RC_K."""
    return lex_least(K, free_reduce(K, _check_letters(K, w)))


def multiply(K: SimplicialComplex, *words: Sequence[int]) -> Word:
    out: Word = ()
    for w in words:
        out += tuple(w)
    return normal_form(K, out)


def equal(K: SimplicialComplex, u: Sequence[int], v: Sequence[int]) -> bool:
    return normal_form(K, u) == normal_form(K, v)


def is_identity(K: SimplicialComplex, w: Sequence[int]) -> bool:
    return not free_reduce(K, _check_letters(K, w))


def hall_witt_sides(a: Sequence[int], b: Sequence[int], c: Sequence[int]) -> list[tuple[Word, Word]]:
    """Left and right sides of the three Hall-Witt identities, as raw words.

    (a, bc)               = (a, c) (a, b) (a, b, c)
    (ab, c)               = (a, c) (a, c, b) (b, c)
    (a,b,c)(b,c,a)(c,a,b) = (b,a)(c,a)(c,b)^a (a,b)(a,c)^b (b,c)^a (a,c)(c,a)^b
    """
    a, b, c = tuple(a), tuple(b), tuple(c)
    C, N, J = commutator, nested_commutator, conjugate
    first = (C(a, b + c), C(a, c) + C(a, b) + N(a, b, c))
    second = (C(a + b, c), C(a, c) + N(a, c, b) + C(b, c))
    third = (
        N(a, b, c) + N(b, c, a) + N(c, a, b),
        C(b, a) + C(c, a) + J(C(c, b), a) + C(a, b) + J(C(a, c), b)
        + J(C(b, c), a) + C(a, c) + J(C(c, a), b),
    )
    return [first, second, third]


def verify_hall_witt(K: SimplicialComplex, a: Sequence[int], b: Sequence[int],
                     c: Sequence[int]) -> bool:
    """True iff all three Hall-Witt identities hold for a, b, c in RC_K.

    They are group identities, so a False return means the word calculus is
    broken.
    """
    return all(equal(K, lhs, rhs) for lhs, rhs in hall_witt_sides(a, b, c))


def dihedral_profile(w: Iterable[int]) -> tuple[bool, int]:
    """Locate w in the infinite dihedral group <g1, g2 | g1^2, g2^2>.

    Uses the faithful affine action g1: x -> -x, g2: x -> -x - 1, under which
    g1 g2 is translation by +1.  Returns ``(True, n)`` for the rotation
    (g1 g2)^n and ``(False, n)`` for the reflection (g1 g2)^n g1.
    """
    gens = {1: (-1, 0), 2: (-1, -1)}
    s, t = 1, 0
    for x in w:
        if x not in gens:
            raise ValueError(f"letter {x} is not a generator of the two-point group")
        s2, t2 = gens[x]
        s, t = s * s2, s * t2 + t
    return s == 1, t


_COMM_RE = re.compile(r"^\s*c\s*\(([^()]*)\)\s*$")


def parse_word(text: str) -> Word:
    """Parse ``"1 2 1 2"``, ``"1,2,1,2"`` or a commutator literal ``"c(1,2,3)"``.

    Several commutator literals and plain letters may be juxtaposed with
    spaces, e.g. ``"c(1,2) 3"``.
    """
    out: list[int] = []
    for token in re.findall(r"c\s*\([^()]*\)|[^\s,]+", text):
        m = _COMM_RE.match(token)
        if m:
            idx = [int(x) for x in re.split(r"[\s,]+", m.group(1).strip()) if x]
            out.extend(expand_commutator(idx))
        else:
            try:
                out.append(int(token))
            except ValueError:
                raise ValueError(f"malformed word token {token!r}") from None
    if any(x < 1 for x in out):
        raise ValueError("generator indices start at 1")
    return tuple(out)
