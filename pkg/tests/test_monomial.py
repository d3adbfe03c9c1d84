import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st
from oracles import bubble_swaps, sign_to_reference

from grassbanach import CANONICAL, EmptySet, LabelMismatch, OrderingFunction, epsilon, monomial, permutation_parity
from grassbanach.monomial import (
    above_parity,
    count_inversions,
    from_mask,
    mask_sign,
    merge_sign,
    order,
    to_mask,
)

SWAP12 = OrderingFunction({(1, 2): (2, 1)})


def test_monomial_is_sorted_and_validated():
    assert monomial([5, 1, 2]) == (1, 2, 5)
    assert monomial([]) == ()
    with pytest.raises(ValueError):
        monomial([1, 1])
    with pytest.raises(ValueError):
        monomial([-1])
    with pytest.raises(ValueError):
        monomial([2**64])
    assert monomial([2**64 - 1]) == (2**64 - 1,)


def test_order():
    assert order((1, 2, 3)) == (1, 2, 3)
    assert order(monomial({3, 1, 2})) == (1, 2, 3)
    assert order((5,), SWAP12) == (5,)
    out = order((1, 2), SWAP12)
    assert out == (2, 1) and sorted(out) == [1, 2]
    assert order((1, 2, 3), SWAP12) == (1, 2, 3)
    with pytest.raises(EmptySet):
        order(())


def test_table_must_hold_permutations():
    with pytest.raises(LabelMismatch):
        OrderingFunction({(1, 2): (1, 3)})
    # identity entries collapse to canonical
    assert OrderingFunction({(1, 2): (1, 2)}) == CANONICAL
    assert OrderingFunction({(1, 2): (1, 2)}).is_canonical


@pytest.mark.parametrize(
    "perm, ref, expected",
    [((1, 2, 3), (1, 2, 3), 1), ((2, 1), (1, 2), -1), ((3, 1, 2), (1, 2, 3), 1)],
)
def test_permutation_parity(perm, ref, expected):
    assert permutation_parity(perm, ref) == expected
    assert sign_to_reference(perm, ref) == expected


def test_permutation_parity_rejects_mismatch():
    with pytest.raises(LabelMismatch):
        permutation_parity((1, 2), (1, 3))


def test_epsilon_examples():
    assert epsilon((1,), (1,)) == 0
    assert epsilon((), (2, 5)) == 1
    assert epsilon((2, 5), ()) == 1
    assert epsilon((2,), (1,)) == -1
    assert bubble_swaps([2, 1]) == 1
    assert epsilon((1, 3), (2,)) == -1
    assert bubble_swaps([1, 3, 2]) == 1


def test_epsilon_with_table():
    # (1)(2) -> ordered (1,2), target <{1,2}> = (2,1): one swap
    assert epsilon((1,), (2,), SWAP12) == -1
    assert epsilon((2,), (1,), SWAP12) == 1


@pytest.mark.parametrize("alpha", [0, 1, 7, 63, 64, 2**40])
def test_epsilon_square_zero(alpha):
    assert epsilon((alpha,), (alpha,)) == 0
    assert epsilon((alpha,), (alpha,), SWAP12) == 0


def test_count_inversions_matches_bubble():
    rng = random.Random(1)
    for _ in range(300):
        seq = rng.sample(range(50), rng.randint(0, 20))
        assert count_inversions(seq) == bubble_swaps(seq)


def test_masks():
    assert to_mask((0, 3)) == 0b1001
    assert from_mask(0b1001) == (0, 3)
    assert from_mask(0) == ()
    # bit j of above_parity(m) = parity of bits of m above j
    m = 0b1101
    ap = above_parity(m)
    for j in range(8):
        assert (ap >> j) & 1 == bin(m >> (j + 1)).count("1") % 2


def _disjoint_pairs(rng, n, labels=range(64), size=8):
    for _ in range(n):
        pool = rng.sample(list(labels), rng.randint(0, 2 * size))
        cut = rng.randint(0, len(pool))
        yield monomial(pool[:cut]), monomial(pool[cut:])


def test_merge_agrees_with_parity_on_1000_pairs():
    rng = random.Random(7)
    for i1, i2 in _disjoint_pairs(rng, 1000):
        if i1 and i2:
            ref = permutation_parity(i1 + i2, monomial(i1 + i2))
        else:
            ref = 1
        assert merge_sign(i1, i2) == ref
        assert mask_sign(to_mask(i1), to_mask(i2)) == ref
        assert sign_to_reference(i1 + i2, sorted(i1 + i2)) == ref


def test_merge_sign_overlap_is_zero():
    assert merge_sign((1, 2), (2, 3)) == 0


labels_st = st.sets(st.integers(0, 30), max_size=12)


@given(labels_st, st.randoms(use_true_random=False))
def test_cocycle(labels, rnd):
    pool = list(labels)
    rnd.shuffle(pool)
    a, b = sorted(rnd.sample(range(len(pool) + 1), 2)) if len(pool) else (0, 0)
    i1, i2, i3 = monomial(pool[:a]), monomial(pool[a:b]), monomial(pool[b:])
    for ordering in (CANONICAL, SWAP12, OrderingFunction({(1, 2, 3): (3, 1, 2), (4, 5): (5, 4)})):
        eps = ordering.epsilon
        lhs = eps(i1, i2) * eps(monomial(i1 + i2), i3)
        rhs = eps(i2, i3) * eps(i1, monomial(i2 + i3))
        assert lhs == rhs


@given(labels_st, st.randoms(use_true_random=False))
def test_canonical_supercommutativity(labels, rnd):
    pool = list(labels)
    rnd.shuffle(pool)
    cut = rnd.randint(0, len(pool))
    i1, i2 = monomial(pool[:cut]), monomial(pool[cut:])
    assert epsilon(i1, i2) == (-1) ** (len(i1) * len(i2)) * epsilon(i2, i1)


@given(st.lists(st.integers(0, 10), max_size=8))
def test_word_sign(word):
    sign, m = CANONICAL.word_sign(word)
    if len(set(word)) != len(word):
        assert sign == 0
    else:
        assert m == tuple(sorted(word))
        assert sign == sign_to_reference(word, sorted(word))


def test_ordering_json_roundtrip(tmp_path):
    ordering = OrderingFunction({(1, 2): (2, 1), (3, 4, 5): (5, 3, 4)})
    obj = ordering.to_json()
    assert obj == {"orderings": [[2, 1], [5, 3, 4]]}
    path = tmp_path / "ord.json"
    path.write_text(json.dumps(obj))
    assert OrderingFunction.load(path) == ordering
    assert hash(OrderingFunction.from_json(obj)) == hash(ordering)
    assert CANONICAL.to_json() == {"orderings": []}
