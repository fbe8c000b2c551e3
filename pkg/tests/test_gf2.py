import random
from itertools import product

from racglie.gf2 import EchelonBasis, pack, rank, unpack


def span_size(rows):
    return len({0} | {
        __import__("functools").reduce(lambda a, b: a ^ b, [r for r, c in zip(rows, cs) if c], 0)
        for cs in product((0, 1), repeat=len(rows))})


def test_rank_against_span_enumeration():
    rng = random.Random(0)
    for _ in range(200):
        rows = [rng.getrandbits(6) for _ in range(rng.randint(0, 7))]
        assert 2 ** rank(rows) == span_size(rows)


def test_membership_and_add():
    e = EchelonBasis([0b101, 0b011])
    assert 0b110 in e
    assert 0b100 not in e
    assert not e.add(0b110)
    assert e.add(0b100) and e.rank == 3 and len(e) == 3
    assert e.reduce(0b111) == 0
    assert all(r.bit_length() - 1 in e.pivots for r in e.rows())


def test_pack_unpack():
    assert pack([0, 3, 3, 5]) == 0b100001
    assert unpack(0b100001) == [0, 5]
    assert unpack(pack([2, 7, 9])) == [2, 7, 9]
