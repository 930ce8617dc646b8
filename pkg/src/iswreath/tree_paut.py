"""Rooted k-level d-regular trees and their level-preserving partial automorphisms.

Vertices are words over ``0..d-1`` (tuples) of length at most ``k``; the root
is ``()``.  Only maps defined on a connected root-containing subtree are
represented; the map defined on the root alone is the semigroup zero.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from typing import Iterator, Mapping

from . import wreath
from .errors import DegreeMismatchError
from .partial_perm import PartialPerm

ROOT = ()


@dataclass(frozen=True)
class TreeShape:
    degree: int
    levels: int

    def __post_init__(self):
        if self.degree < 1 or self.levels < 1:
            raise ValueError(f"need d >= 1 and k >= 1, got d={self.degree}, k={self.levels}")

    @property
    def vertex_count(self) -> int:
        d, k = self.degree, self.levels
        return k + 1 if d == 1 else (d ** (k + 1) - 1) // (d - 1)

    def vertices(self) -> Iterator[tuple]:
        for n in range(self.levels + 1):
            yield from product(range(self.degree), repeat=n)

    def contains(self, w: tuple) -> bool:
        return len(w) <= self.levels and all(0 <= i < self.degree for i in w)

    def below(self) -> TreeShape:
        """Shape of the subtree hanging from a level-1 vertex."""
        return TreeShape(self.degree, self.levels - 1)


def format_vertex(w: tuple) -> str:
    return ".".join(str(i + 1) for i in w) if w else "ε"


def parse_vertex(text: str) -> tuple:
    text = text.strip()
    if text in ("ε", ""):
        return ROOT
    return tuple(int(s) - 1 for s in text.split("."))


def _vertex_sort_key(w: tuple):
    return (len(w), w)


@dataclass(frozen=True)
class RootedSubtree:
    shape: TreeShape
    vertices: frozenset

    def __post_init__(self):
        vs = self.vertices
        if ROOT not in vs:
            raise ValueError("subtree must contain the root")
        for w in vs:
            if not self.shape.contains(w):
                raise ValueError(f"{format_vertex(w)} is not a vertex of the tree")
            if w and w[:-1] not in vs:
                raise ValueError(f"{format_vertex(w)} present but its parent is not")

    def children_of(self, w: tuple) -> list:
        return [w + (i,) for i in range(self.shape.degree) if w + (i,) in self.vertices]

    def branch(self, i: int) -> RootedSubtree | None:
        """Subtree at level-1 vertex ``i``, re-rooted; ``None`` if ``i`` is absent."""
        if (i,) not in self.vertices:
            return None
        return RootedSubtree(self.shape.below(),
                             frozenset(w[1:] for w in self.vertices if w and w[0] == i))

    def __len__(self) -> int:
        return len(self.vertices)

    def __str__(self) -> str:
        return "{" + ",".join(format_vertex(w) for w in sorted(self.vertices, key=_vertex_sort_key)) + "}"


class PartialTreeAut:
    """Level- and adjacency-preserving injection between two rooted subtrees.

    Composition is left-to-right, ``pa_compose(s, t)(w) == t(s(w))``.
    """

    __slots__ = ("shape", "_map", "_hash")

    def __init__(self, shape: TreeShape, mapping: Mapping[tuple, tuple], *, check: bool = True):
        self.shape = shape
        self._map = dict(mapping)
        self._hash = None
        if check:
            self._validate()

    def _validate(self) -> None:
        m = self._map
        if ROOT not in m:
            raise ValueError("partial automorphism must be defined on the root")
        if len(set(m.values())) != len(m):
            raise ValueError("map is not injective")
        for w, v in m.items():
            if not self.shape.contains(w) or not self.shape.contains(v):
                raise ValueError(f"{format_vertex(w)} -> {format_vertex(v)} leaves the tree")
            if len(w) != len(v):
                raise ValueError(f"{format_vertex(w)} -> {format_vertex(v)} changes level")
            if w:
                if w[:-1] not in m:
                    raise ValueError(f"domain not connected at {format_vertex(w)}")
                if m[w[:-1]] != v[:-1]:
                    raise ValueError(f"adjacency broken at {format_vertex(w)}")

    @classmethod
    def identity(cls, shape: TreeShape, sub: RootedSubtree | None = None) -> PartialTreeAut:
        vs = shape.vertices() if sub is None else sub.vertices
        return cls(shape, {w: w for w in vs}, check=False)

    @classmethod
    def zero(cls, shape: TreeShape) -> PartialTreeAut:
        return cls(shape, {ROOT: ROOT}, check=False)

    def __call__(self, w: tuple) -> tuple:
        return self._map[w]

    def get(self, w: tuple):
        return self._map.get(w)

    def items(self):
        return self._map.items()

    def __contains__(self, w) -> bool:
        return w in self._map

    def __len__(self) -> int:
        return len(self._map)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PartialTreeAut):
            return NotImplemented
        return self.shape == other.shape and self._map == other._map

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.shape, frozenset(self._map.items())))
        return self._hash

    def to_text(self) -> str:
        return "\n".join(f"{format_vertex(w)} -> {format_vertex(self._map[w])}"
                         for w in sorted(self._map, key=_vertex_sort_key))

    def to_json(self) -> dict:
        return {format_vertex(w): format_vertex(self._map[w])
                for w in sorted(self._map, key=_vertex_sort_key)}

    @classmethod
    def from_json(cls, shape: TreeShape, obj: Mapping[str, str]) -> PartialTreeAut:
        return cls(shape, {parse_vertex(w): parse_vertex(v) for w, v in obj.items()})

    def __repr__(self) -> str:
        return f"PartialTreeAut(d={self.shape.degree}, k={self.shape.levels}, {self.to_json()})"


def pa_compose(s: PartialTreeAut, t: PartialTreeAut) -> PartialTreeAut:
    if s.shape != t.shape:
        raise DegreeMismatchError(f"{s.shape} vs {t.shape}")
    tm = t._map
    return PartialTreeAut(s.shape, {w: tm[v] for w, v in s._map.items() if v in tm})


def pa_inverse(s: PartialTreeAut) -> PartialTreeAut:
    return PartialTreeAut(s.shape, {v: w for w, v in s._map.items()}, check=False)


def domain_subtree(s: PartialTreeAut) -> RootedSubtree:
    return RootedSubtree(s.shape, frozenset(s._map))


def range_subtree(s: PartialTreeAut) -> RootedSubtree:
    return RootedSubtree(s.shape, frozenset(s._map.values()))


def to_wreath(s: PartialTreeAut) -> wreath.Element:
    """Split ``s`` into its level-1 action and the maps between the branches below."""
    return _to_wreath(s._map, s.shape.degree, s.shape.levels)


def _to_wreath(m: Mapping[tuple, tuple], d: int, k: int):
    images = [None] * d
    branches: list = [None] * d
    for w, v in m.items():
        if len(w) == 1:
            images[w[0]] = v[0]
        elif len(w) > 1:
            if branches[w[0]] is None:
                branches[w[0]] = {}
            branches[w[0]][w[1:]] = v[1:]
    top = PartialPerm(d, tuple(images))
    if k == 1:
        return top
    children = tuple(
        None if y is None else _to_wreath({ROOT: ROOT, **(branches[c] or {})}, d, k - 1)
        for c, y in enumerate(images)
    )
    return wreath.WreathElement(k, top, children)


def from_wreath(x: wreath.Element, shape: TreeShape) -> PartialTreeAut:
    if wreath.degree(x) != shape.degree or wreath.level(x) != shape.levels:
        raise DegreeMismatchError(
            f"element (d={wreath.degree(x)}, k={wreath.level(x)}) vs tree {shape}")
    return PartialTreeAut(shape, _from_wreath(x), check=False)


def _from_wreath(x) -> dict:
    m = {ROOT: ROOT}
    if isinstance(x, PartialPerm):
        for c, y in enumerate(x.images):
            if y is not None:
                m[(c,)] = (y,)
        return m
    for c, y in enumerate(x.top.images):
        if y is None:
            continue
        for w, v in _from_wreath(x.children[c]).items():
            m[(c,) + w] = (y,) + v
    return m


def enumerate_subtrees(shape: TreeShape) -> Iterator[RootedSubtree]:
    """Every connected root-containing subtree of the full tree."""
    for vs in _subtree_sets(shape.degree, shape.levels):
        yield RootedSubtree(shape, vs)


def _subtree_sets(d: int, k: int) -> list:
    if k == 0:
        return [frozenset([ROOT])]
    below = _subtree_sets(d, k - 1)
    out = []
    # each level-1 vertex is either absent or carries one of the smaller subtrees
    for choice in product([None] + below, repeat=d):
        vs = {ROOT}
        for i, sub in enumerate(choice):
            if sub is not None:
                vs.update((i,) + w for w in sub)
        out.append(frozenset(vs))
    return out


def isomorphisms(a: RootedSubtree, b: RootedSubtree) -> Iterator[dict]:
    """All root-, level- and adjacency-preserving bijections from ``a`` onto ``b``.

    Plain backtracking over child matchings; meant as a brute-force oracle.
    """
    yield from _isos(a, b, ROOT, ROOT)


def _isos(a: RootedSubtree, b: RootedSubtree, u: tuple, v: tuple) -> Iterator[dict]:
    cu, cv = a.children_of(u), b.children_of(v)
    if len(cu) != len(cv):
        return
    for perm in permutations(cv):
        parts = [list(_isos(a, b, x, y)) for x, y in zip(cu, perm)]
        if any(not p for p in parts):
            continue
        for combo in product(*parts):
            m = {u: v}
            for part in combo:
                m.update(part)
            yield m


def are_isomorphic(a: RootedSubtree, b: RootedSubtree) -> bool:
    return next(isomorphisms(a, b), None) is not None


def enumerate_paut(shape: TreeShape) -> Iterator[PartialTreeAut]:
    """Brute force: every isomorphism between every pair of rooted subtrees."""
    subs = list(enumerate_subtrees(shape))
    for a in subs:
        for b in subs:
            for m in isomorphisms(a, b):
                yield PartialTreeAut(shape, m)
