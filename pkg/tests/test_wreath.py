import random
import subprocess
import sys
from itertools import product

import pytest

from iswreath import counting, wreath
from iswreath.errors import DegreeMismatchError, EnumerationLimitError
from iswreath.partial_perm import PartialPerm
from iswreath.wreath import (canonical_key, enumerate_wreath, is_idempotent,
                             is_idempotent_structural, make, w_compose, w_inverse)

from conftest import universe

SWAP = PartialPerm.from_dict(2, {1: 2, 2: 1})
GRID = [(1, 1), (1, 2), (2, 1), (2, 2), (3, 1)]


def el(top: dict, children: dict, d=2, k=2):
    """1-based convenience constructor."""
    return make(PartialPerm.from_dict(d, top), {c - 1: v for c, v in children.items()}, k)


def test_identity_component_is_idempotent():
    x = el({1: 1}, {1: PartialPerm.identity(2)})
    assert w_compose(x, x) == x


def test_compose_follows_definition():
    p = SWAP
    q = PartialPerm.from_dict(2, {1: 1})
    x = el({1: 2}, {1: p})
    y = el({2: 1}, {2: q})
    z = w_compose(x, y)
    assert z.top == PartialPerm.from_dict(2, {1: 1})
    assert z.child(0) == PartialPerm.from_dict(2, {2: 1})  # p then q


def test_zero_absorbs(wr22):
    zero = wreath.zero(2, 2)
    for x in wr22:
        assert w_compose(x, zero) == zero == w_compose(zero, x)


def test_mismatch():
    with pytest.raises(DegreeMismatchError):
        w_compose(wreath.identity(2, 2), wreath.identity(2, 3))
    with pytest.raises(DegreeMismatchError):
        w_compose(wreath.identity(2, 2), wreath.identity(3, 2))


def test_children_must_match_domain():
    with pytest.raises(ValueError):
        make(PartialPerm.from_dict(2, {1: 1}), {}, 2)
    with pytest.raises(ValueError):
        make(PartialPerm.from_dict(2, {1: 1}), {0: SWAP, 1: SWAP}, 2)
    with pytest.raises(DegreeMismatchError):
        make(PartialPerm.from_dict(2, {1: 1}), {0: wreath.identity(2, 2)}, 2)


def test_inverse_examples(wr22):
    x = el({1: 2}, {1: SWAP})
    assert w_inverse(x) == el({2: 1}, {2: SWAP})
    assert w_inverse(PartialPerm.from_dict(3, {1: 2})) == PartialPerm.from_dict(3, {2: 1})
    for e in wr22:
        if is_idempotent_structural(e):
            assert w_inverse(e) == e


@pytest.mark.parametrize("d, k", GRID)
def test_structural_idempotent_matches_definition(d, k):
    for x in universe(d, k):
        assert is_idempotent_structural(x) == is_idempotent(x)


def test_structural_idempotent_examples():
    assert is_idempotent_structural(wreath.zero(2, 2))
    assert is_idempotent_structural(wreath.identity(2, 2))
    assert not is_idempotent_structural(el({1: 1}, {1: SWAP}))


@pytest.mark.parametrize("d, k, expected", [(1, 1, 2), (1, 2, 3), (2, 1, 7), (2, 2, 127),
                                            (3, 1, 34), (2, 3, 32767)])
def test_enumeration_counts(d, k, expected):
    els = universe(d, k)
    assert len(els) == expected == counting.order_formula(d, k)
    assert len(set(els)) == expected


def test_enumeration_cap_names_prediction():
    with pytest.raises(EnumerationLimitError, match="2147483647"):
        next(enumerate_wreath(2, 4))


def test_idempotent_filter_count(wr22):
    assert sum(map(is_idempotent_structural, wr22)) == 25


def test_associativity_exhaustive_small():
    for d, k in [(1, 1), (1, 2), (1, 3), (2, 1), (3, 1)]:
        els = universe(d, k)
        assert len(els) ** 3 <= 40 ** 3
        for x, y, z in product(els, repeat=3):
            assert w_compose(w_compose(x, y), z) == w_compose(x, w_compose(y, z))


def test_associativity_random_wr22(wr22):
    rng = random.Random(1)
    for _ in range(100_000):
        x, y, z = rng.choice(wr22), rng.choice(wr22), rng.choice(wr22)
        assert w_compose(w_compose(x, y), z) == w_compose(x, w_compose(y, z))


def test_inverse_axioms(wr22):
    for x in wr22:
        xi = w_inverse(x)
        assert w_compose(w_compose(x, xi), x) == x
        assert w_compose(w_compose(xi, x), xi) == xi


def test_idempotents_commute(wr22):
    idem = [x for x in wr22 if is_idempotent_structural(x)]
    for e, f in product(idem, repeat=2):
        assert w_compose(e, f) == w_compose(f, e)


def test_canonical_key_injective(wr22):
    keys = {canonical_key(x) for x in wr22}
    assert len(keys) == len(wr22)
    assert canonical_key(wreath.zero(2, 1)) != canonical_key(wreath.zero(2, 2))


def test_canonical_key_zero():
    assert canonical_key(wreath.zero(2, 2)) == b'2:2:{"children":{},"top":"[-,-]"}'


def test_canonical_key_stable_across_processes():
    x = el({1: 2, 2: 1}, {1: SWAP, 2: PartialPerm.from_dict(2, {2: 2})})
    code = ("from iswreath import wreath; from iswreath.partial_perm import PartialPerm as P;"
            "s=P.from_dict(2,{1:2,2:1});"
            "x=wreath.make(P.from_dict(2,{1:2,2:1}),{0:s,1:P.from_dict(2,{2:2})},2);"
            "print(wreath.canonical_key(x).decode())")
    out = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, check=True)
    assert out.stdout.strip().encode() == canonical_key(x)


def test_json_roundtrip(wr22):
    for x in wr22:
        assert wreath.from_json(wreath.to_json(x), 2, 2) == x
    x = el({1: 2}, {1: SWAP})
    assert wreath.to_json(x) == {"top": "[2,-]", "children": {"1": "[2,1]"}}
