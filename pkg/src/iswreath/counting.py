"""Exact closed-form counts for the partial wreath powers of IS_d."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial, prod

from .errors import FormulaConsistencyError
from .subtree_types import SubtreeType, type_count, type_decomposition


@dataclass(frozen=True)
class DClassStats:
    subtree_type: SubtreeType
    num_idempotents: int
    num_r_classes: int
    num_l_classes: int
    h_class_size: int
    d_class_size: int

    @property
    def consistent(self) -> bool:
        e = self.num_idempotents
        return (self.num_r_classes == self.num_l_classes == e
                and self.d_class_size == e * e * self.h_class_size)


def _iterate(step, k: int) -> int:
    x = 1
    for _ in range(k):
        x = step(x)
    return x


def _check_dk(d: int, k: int) -> None:
    if d < 1 or k < 1:
        raise ValueError(f"need d >= 1 and k >= 1, got d={d}, k={k}")


def order_formula(d: int, k: int) -> int:
    """S^k(1), S(x) = sum_{i=0..d} C(d,i)^2 i! x^i."""
    _check_dk(d, k)
    coeffs = [comb(d, i) ** 2 * factorial(i) for i in range(d + 1)]
    return _iterate(lambda x: sum(c * x ** i for i, c in enumerate(coeffs)), k)


def idempotent_count(d: int, k: int) -> int:
    """F^k(1), F(x) = (x + 1)^d."""
    _check_dk(d, k)
    return _iterate(lambda x: (x + 1) ** d, k)


def dclass_count(d: int, k: int) -> int:
    """P^k(1), P(x) = C(x + d, d)."""
    _check_dk(d, k)
    return type_count(d, k)


@lru_cache(maxsize=None)
def full_tree_aut_order(d: int, k: int) -> int:
    """(d!)^(1 + d + ... + d^(k-1)); k = 0 is the one-vertex tree."""
    if d < 1 or k < 0:
        raise ValueError(f"need d >= 1 and k >= 0, got d={d}, k={k}")
    exponent = k if d == 1 else (d ** k - 1) // (d - 1)
    return factorial(d) ** exponent


@lru_cache(maxsize=None)
def aut_order(t: SubtreeType) -> int:
    return prod(factorial(a) * aut_order(g) ** a for g, a in type_decomposition(t))


def _check_fits(t: SubtreeType, d: int, k: int) -> None:
    if t.depth > k or t.root_degree > d:
        raise ValueError(f"type {t} does not fit in the (d={d}, k={k}) tree")


@lru_cache(maxsize=None)
def stabilizer_order(t: SubtreeType, d: int, k: int) -> int:
    """Automorphisms of the full k-level tree mapping the subtree onto itself."""
    _check_fits(t, d, k)
    if k == 0:
        return 1
    free = d - t.root_degree
    outside = factorial(free) * full_tree_aut_order(d, k - 1) ** free
    return outside * prod(factorial(a) * stabilizer_order(g, d, k - 1) ** a
                          for g, a in type_decomposition(t))


@lru_cache(maxsize=None)
def fixator_order(t: SubtreeType, d: int, k: int) -> int:
    """Automorphisms of the full k-level tree fixing the subtree pointwise."""
    _check_fits(t, d, k)
    if k == 0:
        return 1
    free = d - t.root_degree
    outside = factorial(free) * full_tree_aut_order(d, k - 1) ** free
    return outside * prod(fixator_order(g, d, k - 1) ** a for g, a in type_decomposition(t))


def dclass_stats(t: SubtreeType, d: int, k: int) -> DClassStats:
    _check_dk(d, k)
    whole = full_tree_aut_order(d, k)
    st = stabilizer_order(t, d, k)
    e, rem = divmod(whole, st)
    if rem:
        raise FormulaConsistencyError(f"|Aut T_{k}| = {whole} not divisible by |St({t})| = {st}")
    h = aut_order(t)
    return DClassStats(t, e, e, e, h, e * e * h)
