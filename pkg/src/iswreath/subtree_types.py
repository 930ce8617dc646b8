"""Isomorphism types of rooted subtrees.

A type is the multiset of the types of its root's children, stored sorted by
bracket encoding.  Encoding: ``"[" + child encodings in ascending byte order + "]"``,
so the bare root is ``[]`` and the full binary one-level tree is ``[[][]]``.

Ordering follows the graph-representative numbering: a larger root degree is
"bigger"; on equal degree the children, listed biggest first, are compared
lexicographically.  Index 0 is the biggest type (the full tree).
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations_with_replacement
from math import comb
from typing import Iterator

from .errors import EnumerationLimitError
from .tree_paut import ROOT, RootedSubtree


@dataclass(frozen=True)
class SubtreeType:
    children: tuple = ()
    encoding: str = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        kids = tuple(sorted(self.children, key=lambda t: t.encoding))
        object.__setattr__(self, "children", kids)
        object.__setattr__(self, "encoding", "[" + "".join(c.encoding for c in kids) + "]")

    def __eq__(self, other):
        if not isinstance(other, SubtreeType):
            return NotImplemented
        return self.encoding == other.encoding

    def __hash__(self):
        return hash(self.encoding)

    def __str__(self) -> str:
        return self.encoding

    def __repr__(self) -> str:
        return f"SubtreeType({self.encoding})"

    @property
    def root_degree(self) -> int:
        return len(self.children)

    @cached_property
    def depth(self) -> int:
        return 1 + max((c.depth for c in self.children), default=-1)

    @cached_property
    def size(self) -> int:
        return 1 + sum(c.size for c in self.children)

    @cached_property
    def order_key(self) -> tuple:
        """Larger key means bigger type."""
        return (len(self.children),
                tuple(sorted((c.order_key for c in self.children), reverse=True)))


LEAF = SubtreeType()


def parse_type(text: str) -> SubtreeType:
    stack: list = [[]]
    for ch in text.strip():
        if ch == "[":
            stack.append([])
        elif ch == "]":
            if len(stack) < 2:
                raise ValueError(f"unbalanced type encoding: {text!r}")
            kids = stack.pop()
            stack[-1].append(SubtreeType(tuple(kids)))
        elif not ch.isspace():
            raise ValueError(f"unexpected character {ch!r} in {text!r}")
    if len(stack) != 1 or len(stack[0]) != 1:
        raise ValueError(f"not a single bracket tree: {text!r}")
    return stack[0][0]


def canonical_type(sub: RootedSubtree) -> SubtreeType:
    if ROOT not in sub.vertices:
        raise ValueError("empty subtree has no type")
    return _type_at(sub.vertices, sub.shape.degree, ROOT)


def _type_at(vs: frozenset, d: int, w: tuple) -> SubtreeType:
    return SubtreeType(tuple(_type_at(vs, d, w + (i,)) for i in range(d) if w + (i,) in vs))


def type_decomposition(t: SubtreeType) -> list:
    """``[(child type, multiplicity), ...]`` biggest child type first."""
    counts = Counter(t.children)
    return sorted(counts.items(), key=lambda kv: kv[0].order_key, reverse=True)


def type_order(a: SubtreeType, b: SubtreeType) -> int:
    """1 if ``a`` is bigger, -1 if smaller, 0 if equal."""
    ka, kb = a.order_key, b.order_key
    return (ka > kb) - (ka < kb)


def type_count(d: int, k: int) -> int:
    """P^k(1) with P(x) = C(x + d, d)."""
    n = 1
    for _ in range(k):
        n = comb(n + d, d)
    return n


def enumerate_types(d: int, k: int, cap: int | None = 1_000_000) -> list:
    """Representatives of all subtree types of the k-level d-regular tree, biggest first.

    Built level by level: a type of depth <= k is a non-decreasing sequence of
    at most d indices into the list for k-1, longer sequences first.
    """
    if d < 1 or k < 0:
        raise ValueError(f"need d >= 1 and k >= 0, got d={d}, k={k}")
    predicted = type_count(d, k)
    if cap is not None and predicted > cap:
        raise EnumerationLimitError(f"subtree types (d={d}, k={k})", predicted, cap)
    reps = [LEAF]
    for _ in range(k):
        prev = reps
        reps = [SubtreeType(tuple(prev[i] for i in seq))
                for l in range(d, -1, -1)
                for seq in combinations_with_replacement(range(len(prev)), l)]
    return reps


def iter_types(d: int, k: int, cap: int | None = 1_000_000) -> Iterator[tuple]:
    """``(index, type)`` pairs in biggest-first order."""
    return enumerate(enumerate_types(d, k, cap))


def type_index(t: SubtreeType, d: int, k: int) -> int:
    """Position of ``t`` in the biggest-first list, computed without building it."""
    if t.root_degree > d or t.depth > k:
        raise ValueError(f"type {t} does not fit in the (d={d}, k={k}) tree")
    if k == 0:
        return 0
    n = type_count(d, k - 1)
    l = t.root_degree
    # skip all types with more children
    idx = sum(comb(n + j - 1, j) for j in range(l + 1, d + 1))
    seq = sorted(type_index(c, d, k - 1) for c in t.children)
    return idx + _rank_multiset(seq, n)


def _rank_multiset(seq: list, n: int) -> int:
    """Lexicographic rank of a non-decreasing sequence among those of its length over range(n)."""
    rank, lo, l = 0, 0, len(seq)
    for pos, v in enumerate(seq):
        rest = l - pos - 1
        for smaller in range(lo, v):
            rank += comb(n - smaller + rest - 1, rest)
        lo = v
    return rank
