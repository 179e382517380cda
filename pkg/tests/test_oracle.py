import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from braidquant.mosaic import BraidMosaic, enumerate_mosaics, inject_mosaic, parse_mosaic
from braidquant.motif import ContractError
from braidquant.oracle import (
    ArtinAutomorphism,
    BraidClassKey,
    all_keys,
    artin_generator,
    braid_key,
    braids_equal,
    invert_word,
    reduce_word,
    underlying_permutation,
    writhe,
)

from .conftest import m


def burau(beta, t=0.7310585786300049 + 0.2j):
    """Unreduced Burau matrix, an independent homomorphic image of B_n."""
    mat = np.eye(beta.n, dtype=complex)
    for x in beta.tiles:
        if not x:
            continue
        k = abs(x) - 1
        g = np.eye(beta.n, dtype=complex)
        block = [[1 - t, t], [1, 0]] if x > 0 else [[0, 1], [1 / t, 1 - 1 / t]]
        g[k : k + 2, k : k + 2] = block
        mat = mat @ g
    return mat


def test_artin_generator_definition():
    a = artin_generator(1, 2)
    assert a.images == ((1, 2, -1), (1,))
    assert artin_generator(2, 3).images[0] == (1,)


def test_artin_generator_range():
    for i, n in [(0, 3), (3, 3), (-3, 3), (1, 1)]:
        with pytest.raises(ContractError):
            artin_generator(i, n)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_generator_inverse_pairs(n):
    for i in range(1, n):
        assert artin_generator(i, n).compose(artin_generator(-i, n)).is_identity()
        assert artin_generator(-i, n).compose(artin_generator(i, n)).is_identity()


def test_braid_relation_through_composition():
    s1, s2 = artin_generator(1, 3), artin_generator(2, 3)
    assert s1.compose(s2).compose(s1) == s2.compose(s1).compose(s2)
    assert s1.compose(s2) != s2.compose(s1)


def test_incremental_key_matches_composition():
    for beta in enumerate_mosaics(3, 3):
        auto = ArtinAutomorphism.identity(3)
        for t in beta.tiles:
            if t:
                auto = auto.compose(artin_generator(t, 3))
        assert braid_key(beta).images == auto.images


def test_key_examples():
    assert braid_key(m("0,0,0")).is_identity()
    assert braid_key(m("1,2,1")) == braid_key(m("2,1,2"))
    assert braid_key(m("1,2")) != braid_key(m("2,1"))


def test_braids_equal_examples():
    assert braids_equal(m("1,-1", 2), m("0,0", 2))
    assert not braids_equal(m("1,1", 2), m("0,0", 2))
    for beta in enumerate_mosaics(3, 2):
        assert braids_equal(beta, inject_mosaic(beta))
    with pytest.raises(ContractError):
        braids_equal(m("1", 2), m("1", 3))


def test_keys_agree_with_burau_on_three_strands():
    # Burau is faithful on B_3, so both partitions of (3,4) must coincide
    mosaics = list(enumerate_mosaics(3, 4))
    keys = all_keys(3, 4)
    by_key, by_burau = {}, {}
    for beta, key in zip(mosaics, keys):
        by_key.setdefault(key, []).append(beta.tiles)
        mat = tuple(np.round(burau(beta), 9).ravel().tolist())
        by_burau.setdefault(mat, []).append(beta.tiles)
    assert sorted(by_key.values()) == sorted(by_burau.values())


def test_all_keys_matches_braid_key():
    for beta, key in zip(enumerate_mosaics(4, 2), all_keys(4, 2)):
        assert braid_key(beta) == key


def test_key_line_roundtrip():
    for beta in enumerate_mosaics(3, 3):
        key = braid_key(beta)
        assert BraidClassKey.from_line(key.to_line()) == key
    assert BraidClassKey.from_line(braid_key(m("1", 2)).to_line()).images == ((1, 2, -1), (1,))


def test_writhe_examples(paper_mosaic):
    assert writhe(paper_mosaic) == 1
    assert writhe(m("0,0,0")) == 0
    assert writhe(m("-1,-2")) == -2


def test_underlying_permutation_examples():
    assert underlying_permutation(m("1")) == (2, 1, 3)
    assert underlying_permutation(m("0,0")) == (1, 2, 3)
    # b1 then b2 composed as maps in word order: 1 -> 2 -> 3 -> 1
    assert underlying_permutation(m("1,2")) == (2, 3, 1)


def test_permutation_matches_key_conjugacy_class():
    # the image of x_k is a conjugate of x_{pi(k)}
    def core(word):
        word = list(word)
        while len(word) > 1 and word[0] == -word[-1]:
            word = word[1:-1]
        return word

    for beta in enumerate_mosaics(3, 3):
        pi = underlying_permutation(beta)
        for k, img in enumerate(braid_key(beta).images):
            assert core(img) == [pi[k]]


def test_invariants_factor_through_key():
    seen = {}
    for beta, key in zip(enumerate_mosaics(3, 4), all_keys(3, 4)):
        val = (writhe(beta), underlying_permutation(beta))
        assert seen.setdefault(key, val) == val


letters = st.lists(st.sampled_from([1, 2, 3, -1, -2, -3]), max_size=30)


@settings(max_examples=200)
@given(letters, st.randoms(use_true_random=False))
def test_free_reduction_is_confluent(word, rnd):
    expected = reduce_word(word)
    current = list(word)
    while True:
        spots = [i for i in range(len(current) - 1) if current[i] == -current[i + 1]]
        if not spots:
            break
        i = rnd.choice(spots)
        del current[i : i + 2]
    assert tuple(current) == expected


@given(letters)
def test_reduced_words_have_no_cancelling_pairs(word):
    r = reduce_word(word)
    assert all(a != -b for a, b in zip(r, r[1:]))
    assert reduce_word(r + invert_word(r)) == ()


@settings(max_examples=100, deadline=None)
@given(st.lists(st.sampled_from([-2, -1, 0, 1, 2]), min_size=1, max_size=8))
def test_key_is_homomorphic(tiles):
    beta = parse_mosaic(",".join(map(str, tiles)), 3)
    inverse = parse_mosaic(",".join(str(-t) for t in reversed(tiles)), 3)
    both = parse_mosaic(",".join(map(str, list(tiles) + [-t for t in reversed(tiles)])), 3)
    assert braid_key(both).is_identity()
    assert writhe(inverse) == -writhe(beta)
    assert braids_equal(beta, inverse) == braid_key(BraidMosaic(tuple(tiles) * 2, 3)).is_identity()
