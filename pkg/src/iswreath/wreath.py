"""Partial wreath powers of IS_d.

An element of level ``k >= 2`` is a pair ``(f, a)``: ``a`` is a partial
permutation (``top``) and ``f`` assigns a level ``k-1`` element to every
point of ``dom(a)`` (``children``).  Level 1 elements are plain
:class:`PartialPerm` values.

Product: ``(f, a)(g, b) = (f g^a, ab)`` with ``g^a(c) = g(c a)``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product
from math import comb, factorial
from typing import Iterator, Union

from . import partial_perm as pp
from .errors import DegreeMismatchError, EnumerationLimitError
from .partial_perm import PartialPerm


@dataclass(frozen=True)
class WreathElement:
    level: int
    top: PartialPerm
    children: tuple  # children[c] is defined exactly when top(c) is

    def __post_init__(self):
        d = self.top.degree
        if self.level < 2:
            raise ValueError("wreath elements above IS_d have level >= 2")
        if len(self.children) != d:
            raise ValueError(f"expected {d} child slots, got {len(self.children)}")
        for c, (y, child) in enumerate(zip(self.top.images, self.children)):
            if (y is None) != (child is None):
                raise ValueError(f"child at point {c + 1} must be present iff point is in dom(top)")
            if child is None:
                continue
            if child.degree != d or level(child) != self.level - 1:
                raise DegreeMismatchError(
                    f"child at point {c + 1} is (d={child.degree}, k={level(child)}), "
                    f"expected (d={d}, k={self.level - 1})")

    @property
    def degree(self) -> int:
        return self.top.degree

    def child(self, c: int) -> Element:
        ch = self.children[c]
        if ch is None:
            raise KeyError(f"point {c + 1} not in dom(top)")
        return ch

    def __str__(self) -> str:
        return json.dumps(to_json(self), separators=(",", ":"))


Element = Union[PartialPerm, WreathElement]


def degree(x: Element) -> int:
    return x.degree


def level(x: Element) -> int:
    return 1 if isinstance(x, PartialPerm) else x.level


def make(top: PartialPerm, children, k: int) -> WreathElement:
    """Build a level-``k`` element; ``children`` is a 0-based dict or a slot sequence."""
    if isinstance(children, dict):
        children = tuple(children.get(c) for c in range(top.degree))
    return WreathElement(k, top, tuple(children))


def _check(x: Element, y: Element) -> None:
    if degree(x) != degree(y) or level(x) != level(y):
        raise DegreeMismatchError(
            f"(d={degree(x)}, k={level(x)}) vs (d={degree(y)}, k={level(y)})")


def zero(d: int, k: int) -> Element:
    if k == 1:
        return PartialPerm.zero(d)
    return make(PartialPerm.zero(d), (None,) * d, k)


def identity(d: int, k: int) -> Element:
    if k == 1:
        return PartialPerm.identity(d)
    inner = identity(d, k - 1)
    return make(PartialPerm.identity(d), (inner,) * d, k)


def w_compose(x: Element, y: Element) -> Element:
    _check(x, y)
    return _mul(x, y)


def _mul(x, y):
    if isinstance(x, PartialPerm):
        return pp.compose(x, y)
    a = x.top
    top = pp.compose(a, y.top)
    ai = a.images
    xc, yc = x.children, y.children
    children = tuple(
        None if t is None else _mul(xc[c], yc[ai[c]])
        for c, t in enumerate(top.images)
    )
    return make(top, children, x.level)


def w_inverse(x: Element) -> Element:
    if isinstance(x, PartialPerm):
        return pp.inverse(x)
    top = pp.inverse(x.top)
    # child of the inverse at z is the inverse of the child at z a^{-1}
    children = tuple(
        None if c is None else w_inverse(x.children[c])
        for c in top.images
    )
    return make(top, children, x.level)


def is_idempotent_structural(x: Element) -> bool:
    """Idempotent iff the top is a partial identity and every child is idempotent."""
    if isinstance(x, PartialPerm):
        return pp.is_idempotent(x)
    return pp.is_idempotent(x.top) and all(
        c is None or is_idempotent_structural(c) for c in x.children)


def is_idempotent(x: Element) -> bool:
    return w_compose(x, x) == x


def _predicted_order(d: int, k: int) -> int:
    n = 1
    for _ in range(k):
        n = sum(comb(d, i) ** 2 * factorial(i) * n ** i for i in range(d + 1))
    return n


def enumerate_wreath(d: int, k: int, cap: int | None = 100_000) -> Iterator[Element]:
    """All elements of the level-``k`` power, each once, in a fixed order.

    Outer loop over the top in :func:`enumerate_is` order, inner mixed-radix
    loop over child assignments with the smallest domain point most significant.
    """
    if k < 1:
        raise ValueError(f"levels must be positive, got {k}")
    predicted = _predicted_order(d, k)
    if cap is not None and predicted > cap:
        raise EnumerationLimitError(f"wreath power (d={d}, k={k})", predicted, cap)
    yield from _enumerate(d, k)


def _enumerate(d: int, k: int) -> Iterator[Element]:
    if k == 1:
        yield from pp.enumerate_is(d)
        return
    inner = list(_enumerate(d, k - 1))
    for a in pp.enumerate_is(d):
        dom = sorted(a.domain)
        for combo in product(inner, repeat=len(dom)):
            slots = [None] * d
            for c, ch in zip(dom, combo):
                slots[c] = ch
            yield make(a, tuple(slots), k)


def to_json(x: Element):
    if isinstance(x, PartialPerm):
        return str(x)
    return {
        "top": str(x.top),
        "children": {str(c + 1): to_json(ch) for c, ch in enumerate(x.children) if ch is not None},
    }


def from_json(obj, d: int, k: int) -> Element:
    if k == 1:
        if not isinstance(obj, str):
            raise ValueError("level-1 element must be a partial-perm string")
        p = PartialPerm.parse(obj)
        if p.degree != d:
            raise DegreeMismatchError(f"expected degree {d}, got {p.degree}")
        return p
    top = PartialPerm.parse(obj["top"])
    if top.degree != d:
        raise DegreeMismatchError(f"expected degree {d}, got {top.degree}")
    kids = {int(c) - 1: from_json(v, d, k - 1) for c, v in obj.get("children", {}).items()}
    return make(top, kids, k)


def canonical_key(x: Element) -> bytes:
    """Deterministic byte encoding; equal keys iff equal elements.

    Format: ``b"<d>:<k>:"`` followed by the compact JSON form with sorted keys.
    The zero of (d=2, k=2) encodes as ``b'2:2:{"children":{},"top":"[-,-]"}'``.
    """
    body = json.dumps(to_json(x), sort_keys=True, separators=(",", ":"))
    return f"{degree(x)}:{level(x)}:{body}".encode()
