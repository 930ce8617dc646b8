"""The symmetric inverse semigroup IS_d of partial injections of {1..d}.

Maps act on the right, so ``compose(p, q)`` sends ``x`` to ``q(p(x))``.
Points are 0-based internally; the text form and ``from_dict`` are 1-based.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations, permutations
from math import comb, factorial
from typing import Iterator, Mapping

from .errors import DegreeMismatchError, EnumerationLimitError

_TEXT_RE = re.compile(r"^\[\s*([0-9\-\s,]*)\]$")


@dataclass(frozen=True)
class PartialPerm:
    degree: int
    images: tuple  # images[x] is the 0-based image of x, or None

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError(f"degree must be positive, got {self.degree}")
        if len(self.images) != self.degree:
            raise ValueError(f"expected {self.degree} images, got {len(self.images)}")
        seen = set()
        for y in self.images:
            if y is None:
                continue
            if not 0 <= y < self.degree:
                raise ValueError(f"image {y + 1} outside 1..{self.degree}")
            if y in seen:
                raise ValueError(f"image {y + 1} repeated; map is not injective")
            seen.add(y)

    @classmethod
    def from_dict(cls, degree: int, mapping: Mapping[int, int]) -> PartialPerm:
        """Build from a 1-based ``{x: image}`` mapping."""
        images = [None] * degree
        for x, y in mapping.items():
            if not 1 <= x <= degree:
                raise ValueError(f"point {x} outside 1..{degree}")
            images[x - 1] = y - 1
        return cls(degree, tuple(images))

    @classmethod
    def identity(cls, degree: int, points=None) -> PartialPerm:
        """Partial identity on the 0-based ``points`` (all points by default)."""
        keep = range(degree) if points is None else set(points)
        return cls(degree, tuple(x if x in keep else None for x in range(degree)))

    @classmethod
    def zero(cls, degree: int) -> PartialPerm:
        return cls(degree, (None,) * degree)

    @classmethod
    def parse(cls, text: str) -> PartialPerm:
        m = _TEXT_RE.match(text.strip())
        if not m:
            raise ValueError(f"not a partial permutation: {text!r}")
        parts = [s.strip() for s in m.group(1).split(",")]
        images = tuple(None if s == "-" else int(s) - 1 for s in parts)
        return cls(len(images), images)

    def __call__(self, x: int):
        return self.images[x]

    @property
    def domain(self) -> frozenset:
        return frozenset(x for x, y in enumerate(self.images) if y is not None)

    @property
    def range(self) -> frozenset:
        return frozenset(y for y in self.images if y is not None)

    @property
    def rank(self) -> int:
        return sum(y is not None for y in self.images)

    def to_dict(self) -> dict:
        """1-based ``{x: image}``."""
        return {x + 1: y + 1 for x, y in enumerate(self.images) if y is not None}

    def __str__(self) -> str:
        return "[" + ",".join("-" if y is None else str(y + 1) for y in self.images) + "]"

    def __repr__(self) -> str:
        return f"PartialPerm({self})"


def _check_degree(p: PartialPerm, q: PartialPerm) -> None:
    if p.degree != q.degree:
        raise DegreeMismatchError(f"degree {p.degree} vs degree {q.degree}")


def compose(p: PartialPerm, q: PartialPerm) -> PartialPerm:
    """Left-to-right product: ``x -> q(p(x))``."""
    _check_degree(p, q)
    qi = q.images
    return PartialPerm(p.degree, tuple(None if y is None else qi[y] for y in p.images))


def inverse(p: PartialPerm) -> PartialPerm:
    images = [None] * p.degree
    for x, y in enumerate(p.images):
        if y is not None:
            images[y] = x
    return PartialPerm(p.degree, tuple(images))


def is_idempotent(p: PartialPerm) -> bool:
    return all(y is None or y == x for x, y in enumerate(p.images))


def order(d: int) -> int:
    """|IS_d|, empty map included."""
    return sum(comb(d, i) ** 2 * factorial(i) for i in range(d + 1))


def enumerate_is(d: int, cap: int | None = None) -> Iterator[PartialPerm]:
    """Every element of IS_d exactly once.

    Ordered by rank, then lexicographically by image tuple with undefined
    points sorting before every defined image.
    """
    if d < 1:
        raise ValueError(f"degree must be positive, got {d}")
    if cap is not None and order(d) > cap:
        raise EnumerationLimitError(f"IS_{d}", order(d), cap)
    for r in range(d + 1):
        batch = []
        for dom in combinations(range(d), r):
            for img in permutations(range(d), r):
                images = [None] * d
                for x, y in zip(dom, img):
                    images[x] = y
                batch.append(tuple(images))
        batch.sort(key=lambda t: tuple(-1 if y is None else y for y in t))
        for images in batch:
            yield PartialPerm(d, images)
