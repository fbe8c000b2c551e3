import json
import random

import pytest

from racglie.scomplex import (ComplexFormatError, SimplicialComplex, connected_components,
                              discrete, enumerate_complexes, flag_complex, full_subcomplex,
                              is_flag, isomorphism_representatives, missing_edges,
                              parse_complex, random_complex, simplex)


def test_maximal_faces_are_normalized():
    K = SimplicialComplex(4, [[2, 1], [1, 2, 3], [3, 1], [4]])
    assert K.maximal_faces == ((1, 2, 3), (4,))
    assert K.vertices == (1, 2, 3, 4)
    assert K.edges == ((1, 2), (1, 3), (2, 3))


def test_faces_by_dimension():
    K = simplex(3)
    assert K.faces(-1) == [()]
    assert len(K.faces(0)) == 3 and len(K.faces(1)) == 3 and len(K.faces(2)) == 1
    assert K.dimension == 2
    assert discrete(4).dimension == 0


def test_parse_line_format_and_json_agree():
    text = "# a path\n3\n1 2\n\n2,3\n"
    K = parse_complex(text)
    J = parse_complex(json.dumps(K.to_json()))
    assert K == J
    assert K.edges == ((1, 2), (2, 3))


@pytest.mark.parametrize("text", ["", "x\n", "0\n", "3\n1 4\n", "3\n1 1\n", "3\n1 a\n",
                                  '{"m": -1}', '{"maximal_faces": []}', "{bad json"])
def test_parse_rejects_malformed(text):
    with pytest.raises(ComplexFormatError):
        parse_complex(text)


def test_full_subcomplex_keeps_labels():
    K = SimplicialComplex(4, [[1, 2, 3], [3, 4]])
    KJ = full_subcomplex(K, [1, 3, 4])
    assert KJ.vertices == (1, 3, 4)
    assert set(KJ.maximal_faces) == {(1, 3), (3, 4)}


def test_connected_components_brute_force():
    rng = random.Random(3)
    for _ in range(200):
        K = random_complex(7, rng, max_faces=4, max_size=3)
        comps = connected_components(K)
        # oracle: transitive closure of the edge relation
        reach = {v: {v} for v in K.vertices}
        changed = True
        while changed:
            changed = False
            for a, b in K.edges:
                u = reach[a] | reach[b]
                for v in u:
                    if reach[v] != u:
                        reach[v] = set(u)
                        changed = True
        expected = sorted({tuple(sorted(s)) for s in reach.values()})
        assert comps == expected


def test_labeled_complex_counts():
    # complexes on a labelled m-set containing every vertex: 1, 2, 9, 114 (known sequence)
    assert [sum(1 for _ in enumerate_complexes(m)) for m in (1, 2, 3, 4)] == [1, 2, 9, 114]
    assert [len(isomorphism_representatives(m)) for m in (1, 2, 3, 4)] == [1, 2, 5, 20]


def test_flagness():
    boundary = SimplicialComplex(3, [[1, 2], [1, 3], [2, 3]])
    assert not is_flag(boundary)
    assert is_flag(simplex(3)) and is_flag(discrete(3))
    # the triangle's edges sit in two different larger faces
    K = SimplicialComplex(5, [[1, 2, 4], [2, 3, 5], [1, 3]])
    assert not is_flag(K)
    assert is_flag(flag_complex(5, K.edges))
    assert missing_edges(SimplicialComplex(3, [[1, 2]])) == [(1, 3), (2, 3)]


def test_flag_complex_is_clique_complex():
    rng = random.Random(0)
    for _ in range(50):
        K = random_complex(6, rng, max_faces=6, max_size=2)
        F = flag_complex(6, K.edges)
        assert F.edges == K.edges and is_flag(F)
