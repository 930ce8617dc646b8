"""Green's relations on the partial wreath powers.

Two independent routes: recursive structural predicates on wreath elements,
and a brute-force oracle that computes principal one-sided and two-sided
ideals from a Cayley table.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from itertools import permutations
from math import factorial
from typing import Callable, Sequence

import numpy as np

from . import wreath
from .counting import DClassStats
from .errors import EnumerationLimitError
from .partial_perm import PartialPerm
from .subtree_types import SubtreeType, canonical_type, type_index
from .tree_paut import TreeShape, domain_subtree, from_wreath, range_subtree

RELATIONS = ("L", "R", "H", "D", "J")


# -- structural predicates ---------------------------------------------------

def l_related(x: wreath.Element, y: wreath.Element) -> bool:
    wreath._check(x, y)
    return _l(x, y)


def _l(x, y) -> bool:
    if isinstance(x, PartialPerm):
        return x.range == y.range
    if x.top.range != y.top.range:
        return False
    # compare the children that land on each z in ran(a)
    xi, yi = x.top.images, y.top.images
    pre_x = {z: c for c, z in enumerate(xi) if z is not None}
    pre_y = {z: c for c, z in enumerate(yi) if z is not None}
    return all(_l(x.children[pre_x[z]], y.children[pre_y[z]]) for z in pre_x)


def r_related(x: wreath.Element, y: wreath.Element) -> bool:
    wreath._check(x, y)
    return _r(x, y)


def _r(x, y) -> bool:
    if isinstance(x, PartialPerm):
        return x.domain == y.domain
    if x.top.domain != y.top.domain:
        return False
    return all(cx is None or _r(cx, cy) for cx, cy in zip(x.children, y.children))


def h_related(x: wreath.Element, y: wreath.Element) -> bool:
    return l_related(x, y) and r_related(x, y)


def shape_of(x: wreath.Element) -> TreeShape:
    return TreeShape(wreath.degree(x), wreath.level(x))


def domain_type(x: wreath.Element) -> SubtreeType:
    return canonical_type(domain_subtree(from_wreath(x, shape_of(x))))


def d_related_by_type(x: wreath.Element, y: wreath.Element) -> bool:
    wreath._check(x, y)
    return domain_type(x) == domain_type(y)


def d_related_by_bijection(x: wreath.Element, y: wreath.Element,
                           cap: int = 40320) -> bool:
    """Search for a bijection dom(b) -> dom(a) matching D-related children."""
    wreath._check(x, y)
    return _d_bij(x, y, cap)


def _d_bij(x, y, cap) -> bool:
    if isinstance(x, PartialPerm):
        return x.rank == y.rank
    da, db = sorted(x.top.domain), sorted(y.top.domain)
    if len(da) != len(db):
        return False
    if factorial(len(da)) > cap:
        raise EnumerationLimitError("bijection search", factorial(len(da)), cap)
    memo: dict = {}

    def rel(za, zb):
        if (za, zb) not in memo:
            memo[za, zb] = _d_bij(x.children[za], y.children[zb], cap)
        return memo[za, zb]

    return any(all(rel(za, zb) for za, zb in zip(img, db)) for img in permutations(da))


# -- brute-force oracle ------------------------------------------------------

class GreenOracle:
    """Green's relations of a finite semigroup given as an element list.

    Translations use the monoid with an adjoined identity, so every element
    lies in its own principal ideals.
    """

    def __init__(self, universe: Sequence, multiply: Callable = wreath.w_compose,
                 cap: int = 2000):
        n = len(universe)
        if n > cap:
            raise EnumerationLimitError("Green oracle universe", n, cap)
        self.universe = list(universe)
        index = {x: i for i, x in enumerate(self.universe)}
        if len(index) != n:
            raise ValueError("universe contains duplicates")
        table = np.empty((n, n), dtype=np.int64)
        for i, x in enumerate(self.universe):
            for j, y in enumerate(self.universe):
                p = multiply(x, y)
                try:
                    table[i, j] = index[p]
                except KeyError:
                    raise ValueError(f"universe not closed: {x} * {y} = {p}") from None
        self.table = table
        self._labels: dict = {}

    def __len__(self) -> int:
        return len(self.universe)

    def left_ideal(self, i: int) -> frozenset:
        return frozenset(self.table[:, i].tolist()) | {i}

    def right_ideal(self, i: int) -> frozenset:
        return frozenset(self.table[i, :].tolist()) | {i}

    def two_sided_ideal(self, i: int) -> frozenset:
        left = np.fromiter(self.left_ideal(i), dtype=np.int64)
        return frozenset(np.unique(self.table[left, :]).tolist()) | self.left_ideal(i)

    def labels(self, relation: str) -> list:
        """Class id per element, ids numbered by first occurrence."""
        if relation not in RELATIONS:
            raise ValueError(f"unknown relation {relation!r}")
        if relation not in self._labels:
            self._labels[relation] = self._compute(relation)
        return self._labels[relation]

    def _compute(self, relation: str) -> list:
        n = len(self)
        if relation == "L":
            keys = [self.left_ideal(i) for i in range(n)]
        elif relation == "R":
            keys = [self.right_ideal(i) for i in range(n)]
        elif relation == "J":
            keys = [self.two_sided_ideal(i) for i in range(n)]
        elif relation == "H":
            lab_l, lab_r = self.labels("L"), self.labels("R")
            keys = list(zip(lab_l, lab_r))
        else:
            # D = L o R taken literally: y is D-related to x when some z has x L z R y
            lab_l, lab_r = self.labels("L"), self.labels("R")
            r_classes = defaultdict(set)
            for i, r in enumerate(lab_r):
                r_classes[r].add(i)
            l_members = defaultdict(list)
            for i, l in enumerate(lab_l):
                l_members[l].append(i)
            keys = [frozenset().union(*(r_classes[lab_r[z]] for z in l_members[lab_l[i]]))
                    for i in range(n)]
        ids: dict = {}
        return [ids.setdefault(key, len(ids)) for key in keys]

    def pairs(self, relation: str) -> set:
        lab = self.labels(relation)
        groups = defaultdict(list)
        for i, c in enumerate(lab):
            groups[c].append(i)
        return {(i, j) for members in groups.values() for i in members for j in members}

    def classes(self, relation: str) -> list:
        groups = defaultdict(list)
        for i, c in enumerate(self.labels(relation)):
            groups[c].append(i)
        return [groups[c] for c in sorted(groups)]

    def is_idempotent(self, i: int) -> bool:
        return self.table[i, i] == i


def green_oracle(universe: Sequence, relation: str, multiply: Callable = wreath.w_compose,
                 cap: int = 2000) -> set:
    """Index pairs ``(i, j)`` with ``universe[i]`` related to ``universe[j]``."""
    return GreenOracle(universe, multiply, cap).pairs(relation)


@dataclass(frozen=True)
class EggBox:
    """Shape of one D-class as seen by the oracle."""
    members: tuple
    n_r_classes: int
    n_l_classes: int
    h_class_sizes: frozenset
    full_grid: bool  # every R-class meets every L-class
    idempotents_per_r: frozenset
    idempotents_per_l: frozenset


def egg_boxes(oracle: GreenOracle) -> list:
    lab_r, lab_l = oracle.labels("R"), oracle.labels("L")
    out = []
    for members in oracle.classes("D"):
        rs = sorted({lab_r[i] for i in members})
        ls = sorted({lab_l[i] for i in members})
        cells = defaultdict(int)
        idem_r, idem_l = defaultdict(int), defaultdict(int)
        for i in members:
            cells[lab_r[i], lab_l[i]] += 1
            if oracle.is_idempotent(i):
                idem_r[lab_r[i]] += 1
                idem_l[lab_l[i]] += 1
        out.append(EggBox(
            members=tuple(members),
            n_r_classes=len(rs),
            n_l_classes=len(ls),
            h_class_sizes=frozenset(cells.values()),
            full_grid=len(cells) == len(rs) * len(ls),
            idempotents_per_r=frozenset(idem_r[r] for r in rs),
            idempotents_per_l=frozenset(idem_l[l] for l in ls),
        ))
    return out


# -- classification ----------------------------------------------------------

@dataclass(frozen=True)
class ObservedDClass:
    subtree_type: SubtreeType
    index: int
    size: int
    num_idempotents: int
    num_r_classes: int
    num_l_classes: int
    h_class_sizes: frozenset

    def stats(self) -> DClassStats:
        """Observed numbers in the same record as the formulas produce.

        ``h_class_size`` is the largest observed H-class; it is only meaningful
        when ``h_class_sizes`` has a single member.
        """
        return DClassStats(self.subtree_type, self.num_idempotents, self.num_r_classes,
                           self.num_l_classes, max(self.h_class_sizes), self.size)


def classify(d: int, k: int, cap: int = 100_000) -> list:
    """Partition every element by the isomorphism type of its domain.

    R-classes are told apart by domain subtree and L-classes by range
    subtree, H-classes by the pair.  Result is ordered biggest type first.
    """
    shape = TreeShape(d, k)
    groups: dict = defaultdict(list)
    for x in wreath.enumerate_wreath(d, k, cap):
        s = from_wreath(x, shape)
        dom, ran = domain_subtree(s), range_subtree(s)
        groups[canonical_type(dom)].append((x, dom.vertices, ran.vertices))
    out = []
    for t, items in groups.items():
        cells = defaultdict(int)
        for _, dv, rv in items:
            cells[dv, rv] += 1
        out.append(ObservedDClass(
            subtree_type=t,
            index=type_index(t, d, k),
            size=len(items),
            num_idempotents=sum(wreath.is_idempotent_structural(x) for x, _, _ in items),
            num_r_classes=len({dv for _, dv, _ in items}),
            num_l_classes=len({rv for _, _, rv in items}),
            h_class_sizes=frozenset(cells.values()),
        ))
    out.sort(key=lambda c: c.index)
    return out
