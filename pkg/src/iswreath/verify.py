"""Self-verification harness: every closed form against exhaustive enumeration."""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from itertools import product

from . import counting, green, wreath
from .errors import EnumerationLimitError
from .subtree_types import canonical_type, enumerate_types
from .tree_paut import (TreeShape, enumerate_paut, enumerate_subtrees, from_wreath,
                        pa_compose, to_wreath)

EXHAUSTIVE_TRIPLES = 40
EXHAUSTIVE_PAIRS = 20_000
SAMPLES = 10_000
MAX_REPORTED = 5


@dataclass
class CheckResult:
    name: str
    status: str  # "pass", "fail" or "skip"
    detail: str = ""
    mismatches: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.status != "fail"

    def line(self) -> str:
        text = f"{self.status.upper():4} {self.name}"
        if self.detail:
            text += f": {self.detail}"
        for m in self.mismatches[:MAX_REPORTED]:
            text += f"\n     {m}"
        return text


def _result(name: str, mismatches: list, detail: str) -> CheckResult:
    return CheckResult(name, "fail" if mismatches else "pass", detail, mismatches)


def _sample(n: int, arity: int, exhaustive_limit: int, rng: random.Random):
    if n ** arity <= exhaustive_limit:
        return "exhaustive", product(range(n), repeat=arity)
    return f"{SAMPLES} random", ([rng.randrange(n) for _ in range(arity)] for _ in range(SAMPLES))


def run_checks(d: int, k: int, max_elements: int = 100_000, oracle_cap: int = 2000,
               seed: int = 0) -> list:
    """Run the invariant suite for one (d, k).

    Raises :class:`EnumerationLimitError` when the semigroup has more than
    ``max_elements`` elements; formula-only checks are run first and
    returned on the exception as ``partial``.
    """
    rng = random.Random(seed)
    results = _formula_checks(d, k)
    order = counting.order_formula(d, k)
    if order > max_elements:
        err = EnumerationLimitError(f"verify (d={d}, k={k})", order, max_elements)
        err.partial = results
        raise err
    shape = TreeShape(d, k)
    els = list(wreath.enumerate_wreath(d, k, max_elements))
    n = len(els)
    results.append(_result("order", [] if n == order else [f"expected {order}, observed {n}"],
                           f"{n} elements enumerated, S^k(1) = {order}"))
    results.append(_result("distinct", [] if len(set(els)) == n else ["duplicates in enumeration"],
                           "enumeration yields each element once"))

    bad = [f"{x}: structural={wreath.is_idempotent_structural(x)}"
           for x in els if wreath.is_idempotent_structural(x) != wreath.is_idempotent(x)]
    results.append(_result("idempotent-structural", bad, "structural test agrees with x*x == x"))
    n_idem = sum(map(wreath.is_idempotent_structural, els))
    expected = counting.idempotent_count(d, k)
    results.append(_result("idempotent-count",
                           [] if n_idem == expected else [f"expected {expected}, observed {n_idem}"],
                           f"{n_idem} idempotents, F^k(1) = {expected}"))

    mode, triples = _sample(n, 3, EXHAUSTIVE_TRIPLES ** 3, rng)
    mul = wreath.w_compose
    bad = [f"({els[i]}, {els[j]}, {els[l]})" for i, j, l in triples
           if mul(mul(els[i], els[j]), els[l]) != mul(els[i], mul(els[j], els[l]))]
    results.append(_result("associativity", bad, f"{mode} triples"))

    bad = []
    for x in els:
        xi = wreath.w_inverse(x)
        if mul(mul(x, xi), x) != x or mul(mul(xi, x), xi) != xi:
            bad.append(str(x))
    results.append(_result("inverse", bad, "x x' x = x and x' x x' = x' for all x"))

    trees = [from_wreath(x, shape) for x in els]
    bad = [str(x) for x, s in zip(els, trees) if to_wreath(s) != x]
    results.append(_result("tree-roundtrip", bad, "to_wreath(from_wreath(x)) = x"))
    mode, pairs = _sample(n, 2, EXHAUSTIVE_PAIRS, rng)
    bad = [f"({els[i]}, {els[j]})" for i, j in pairs
           if to_wreath(pa_compose(trees[i], trees[j])) != mul(els[i], els[j])]
    results.append(_result("tree-homomorphism", bad, f"{mode} pairs"))
    if n <= oracle_cap:
        brute = set(enumerate_paut(shape))
        ok = brute == set(trees)
        results.append(_result("tree-bijection", [] if ok else
                               [f"{len(brute)} brute-force partial automorphisms vs {n}"],
                               "brute-force partial automorphisms = image of the wreath power"))
    else:
        results.append(CheckResult("tree-bijection", "skip", f"{n} > oracle cap {oracle_cap}"))

    results.extend(_type_checks(d, k, shape))
    results.extend(_classification_checks(d, k, max_elements))
    if n <= oracle_cap:
        results.extend(_oracle_checks(els, oracle_cap))
    else:
        results.append(CheckResult("green-oracle", "skip", f"{n} > oracle cap {oracle_cap}"))
    return results


def _formula_checks(d: int, k: int) -> list:
    out = []
    types = None
    try:
        types = enumerate_types(d, k, cap=100_000)
    except EnumerationLimitError as e:
        out.append(CheckResult("formula-consistency", "skip", str(e)))
        return out
    bad = []
    total_d = total_e = 0
    whole = counting.full_tree_aut_order(d, k)
    for t in types:
        s = counting.dclass_stats(t, d, k)
        total_d += s.d_class_size
        total_e += s.num_idempotents
        st = counting.stabilizer_order(t, d, k)
        if not counting.aut_order(t) <= st <= whole or whole % st:
            bad.append(f"{t}: |Aut|={counting.aut_order(t)} |St|={st} |Aut T|={whole}")
    if total_d != counting.order_formula(d, k):
        bad.append(f"sum |D| = {total_d} vs order {counting.order_formula(d, k)}")
    if total_e != counting.idempotent_count(d, k):
        bad.append(f"sum |E| = {total_e} vs idempotents {counting.idempotent_count(d, k)}")
    if len(types) != counting.dclass_count(d, k):
        bad.append(f"{len(types)} types vs P^k(1) = {counting.dclass_count(d, k)}")
    out.append(_result("formula-consistency", bad,
                       f"{len(types)} types; sums of |D| and |E| match S^k(1) and F^k(1)"))
    return out


def _type_checks(d: int, k: int, shape: TreeShape) -> list:
    out = []
    types = enumerate_types(d, k)
    observed = Counter(canonical_type(s) for s in enumerate_subtrees(shape))
    bad = []
    if set(observed) != set(types):
        bad.append(f"{len(observed)} types among subtrees vs {len(types)} enumerated")
    whole = counting.full_tree_aut_order(d, k)
    for t, placements in observed.items():
        orbit = whole // counting.stabilizer_order(t, d, k)
        if placements != orbit:
            bad.append(f"{t}: {placements} placements vs |Aut T|/|St| = {orbit}")
    out.append(_result("types-and-orbits", bad,
                       f"{sum(observed.values())} subtrees in {len(observed)} types"))
    keys = [t.order_key for t in types]
    ordered = all(a > b for a, b in zip(keys, keys[1:]))
    out.append(_result("type-order", [] if ordered else ["enumeration not strictly decreasing"],
                       "type list strictly decreasing"))
    return out


def _classification_checks(d: int, k: int, max_elements: int) -> list:
    bad = []
    for obs in green.classify(d, k, max_elements):
        formula = counting.dclass_stats(obs.subtree_type, d, k)
        if len(obs.h_class_sizes) != 1 or obs.stats() != formula:
            bad.append(f"{obs.subtree_type}: observed {obs.stats()} H-sizes "
                       f"{sorted(obs.h_class_sizes)} vs formula {formula}")
    return [_result("dclass-stats", bad, "observed D-class statistics equal the formulas")]


def _oracle_checks(els: list, cap: int) -> list:
    out = []
    oracle = green.GreenOracle(els, cap=cap)
    structural = {
        "L": green.l_related,
        "R": green.r_related,
        "H": green.h_related,
        "D": green.d_related_by_type,
    }
    n = len(els)
    for rel, pred in structural.items():
        lab = oracle.labels(rel)
        bad = []
        for i in range(n):
            for j in range(n):
                expected = lab[i] == lab[j]
                if pred(els[i], els[j]) != expected:
                    bad.append(f"{rel} ({els[i]}, {els[j]}): oracle {expected}")
        out.append(_result(f"green-{rel}", bad, f"structural {rel} = oracle on {n * n} pairs"))

    types = [green.domain_type(x) for x in els]
    bad = []
    for i in range(n):
        for j in range(n):
            if green.d_related_by_bijection(els[i], els[j]) != (types[i] == types[j]):
                bad.append(f"D ({els[i]}, {els[j]})")
    out.append(_result("green-D-bijection", bad, "bijection form of D = type form"))

    same = oracle.labels("D") == oracle.labels("J")
    out.append(_result("green-D-equals-J", [] if same else ["D and J partitions differ"], "D = J"))

    bad = []
    for box in green.egg_boxes(oracle):
        if not (box.full_grid and box.n_r_classes == box.n_l_classes
                and len(box.h_class_sizes) == 1 and box.idempotents_per_r == {1}
                and box.idempotents_per_l == {1}):
            bad.append(f"D-class of {els[box.members[0]]}: {box}")
    out.append(_result("egg-box", bad, "each D-class is a square grid of equal H-classes, "
                                       "one idempotent per R- and L-class"))
    return out
