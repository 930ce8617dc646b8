from collections import defaultdict
from functools import cmp_to_key

import pytest
from hypothesis import given, strategies as st

from iswreath import counting
from iswreath.errors import EnumerationLimitError
from iswreath.subtree_types import (LEAF, SubtreeType, canonical_type, enumerate_types,
                                    parse_type, type_count, type_decomposition, type_index,
                                    type_order)
from iswreath.tree_paut import (RootedSubtree, TreeShape, are_isomorphic,
                                enumerate_subtrees, isomorphisms, parse_vertex)

P_GRID = [(1, 1), (1, 2), (1, 3), (1, 4), (2, 1), (2, 2), (2, 3), (3, 1), (3, 2)]


def subtree(shape, *words):
    return RootedSubtree(shape, frozenset(parse_vertex(w) for w in ("ε",) + words))


def P_iterated(d, k):
    """Independent of the module: count non-decreasing child sequences level by level."""
    n = 1
    for _ in range(k):
        # sequences of length l over n values, by stars and bars computed as a DP
        total = 0
        for l in range(d + 1):
            ways = [1] * n  # ways[v]: sequences of current length ending at value <= v
            for _ in range(l):
                acc, new = 0, []
                for w in ways:
                    acc += w
                    new.append(acc)
                ways = new
            total += ways[-1] if l else 1
        n = total
    return n


def test_basic_types():
    t22 = TreeShape(2, 2)
    assert canonical_type(subtree(t22)).encoding == "[]"
    assert canonical_type(subtree(TreeShape(2, 1), "1", "2")).encoding == "[[][]]"
    a = subtree(t22, "1", "2", "1.1")
    b = subtree(t22, "1", "2", "2.1")
    assert canonical_type(a) == canonical_type(b)
    iso = next(isomorphisms(a, b))
    assert iso[(0,)] == (1,) and iso[(0, 0)] == (1, 0)


@pytest.mark.parametrize("d, k", P_GRID)
def test_enumerate_types_count(d, k):
    types = enumerate_types(d, k)
    assert len(types) == len(set(types)) == type_count(d, k) == P_iterated(d, k)


@pytest.mark.parametrize("d, k", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (1, 4)])
def test_types_are_exactly_subtree_classes(d, k):
    seen = {canonical_type(s) for s in enumerate_subtrees(TreeShape(d, k))}
    assert seen == set(enumerate_types(d, k))


def test_named_counts():
    assert [t.encoding for t in enumerate_types(2, 1)] == ["[[][]]", "[[]]", "[]"]
    assert len(enumerate_types(2, 2)) == 10
    assert len(enumerate_types(2, 3)) == 66
    assert len(enumerate_types(1, 3)) == 4


def test_cap():
    with pytest.raises(EnumerationLimitError):
        enumerate_types(3, 3, cap=1000)


@pytest.mark.parametrize("d, k", [(2, 2), (3, 1), (2, 3)])
def test_canonical_type_is_isomorphism_complete(d, k):
    classes = defaultdict(list)
    for s in enumerate_subtrees(TreeShape(d, k)):
        classes[canonical_type(s)].append(s)
    reps = [members[0] for members in classes.values()]
    for members in classes.values():
        for s in members[1:]:
            assert are_isomorphic(members[0], s)
    for i, a in enumerate(reps):
        for b in reps[i + 1:]:
            assert not are_isomorphic(a, b)


def test_decomposition():
    assert type_decomposition(LEAF) == []
    assert type_decomposition(parse_type("[[][]]")) == [(LEAF, 2)]
    a, b = parse_type("[[][]]"), parse_type("[[]]")
    t = SubtreeType((a, b, a))
    assert type_decomposition(t) == [(a, 2), (b, 1)]
    assert sum(m for _, m in type_decomposition(t)) == t.root_degree


def test_order_examples():
    d3 = enumerate_types(3, 1)
    assert [t.encoding for t in d3] == ["[[][][]]", "[[][]]", "[[]]", "[]"]
    assert type_order(d3[0], d3[3]) == 1
    grep1 = enumerate_types(3, 1)
    g1 = SubtreeType((grep1[0], grep1[0], grep1[0]))  # (0,0,0)
    g2 = SubtreeType((grep1[0], grep1[0], grep1[1]))  # (0,0,1)
    assert type_order(g1, g2) == 1 and type_order(g2, g1) == -1
    assert type_order(g1, g1) == 0


@pytest.mark.parametrize("d, k", [(2, 2), (2, 3), (3, 2)])
def test_enumeration_is_sorted_biggest_first(d, k):
    types = enumerate_types(d, k)
    resorted = sorted(types, key=cmp_to_key(type_order), reverse=True)
    assert resorted == types
    for i, t in enumerate(types):
        assert type_index(t, d, k) == i


UNIVERSE = enumerate_types(2, 3) + enumerate_types(3, 2)


@given(st.sampled_from(UNIVERSE), st.sampled_from(UNIVERSE), st.sampled_from(UNIVERSE))
def test_order_is_strict_total(a, b, c):
    assert type_order(a, b) == -type_order(b, a)
    assert (type_order(a, b) == 0) == (a == b)
    if type_order(a, b) > 0 and type_order(b, c) > 0:
        assert type_order(a, c) > 0


@given(st.sampled_from(UNIVERSE))
def test_recanonicalising_is_idempotent(t):
    by_order = sorted(t.children, key=cmp_to_key(type_order))
    assert SubtreeType(tuple(by_order)) == t
    assert SubtreeType(t.children).encoding == t.encoding
    assert parse_type(t.encoding) == t


def test_parse_rejects_garbage():
    for bad in ["", "[", "[]]", "[][]", "[x]"]:
        with pytest.raises(ValueError):
            parse_type(bad)


def test_dclass_count_agrees():
    for d, k in P_GRID:
        assert counting.dclass_count(d, k) == len(enumerate_types(d, k))
