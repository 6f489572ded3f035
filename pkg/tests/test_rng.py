import numpy as np
from scipy.stats import chisquare

from codegs.rng import Rng


def test_deterministic_streams():
    assert Rng(5).bytes(40) == Rng(5).bytes(40)
    assert Rng(5).bytes(40) != Rng(6).bytes(40)
    assert Rng(5, "a").bytes(16) != Rng(5, "b").bytes(16)
    assert Rng(b"k").child("x").bytes(8) == Rng(b"k").child("x").bytes(8)
    assert Rng().bytes(16) != Rng().bytes(16)


def test_call_sequence_matters():
    a, b = Rng(1), Rng(1)
    assert a.bytes(8) + a.bytes(8) != b.bytes(16)


def test_below_is_uniform():
    rng = Rng(2)
    draws = [rng.below(7) for _ in range(14_000)]
    assert min(draws) == 0 and max(draws) == 6
    assert chisquare(np.bincount(draws)).pvalue > 0.01


def test_permutations_and_positions():
    rng = Rng(3)
    for n in (1, 2, 50, 2048):
        p = rng.permutation(n)
        assert sorted(p.tolist()) == list(range(n))
    pos = rng.sample_positions(100, 30)
    assert len(set(pos)) == 30 and max(pos) < 100
    first = np.zeros(4)
    for _ in range(4000):
        first[rng.permutation(4)[0]] += 1
    assert chisquare(first).pvalue > 0.01
