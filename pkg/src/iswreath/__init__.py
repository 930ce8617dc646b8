"""Exact computations in the partial wreath powers of the symmetric inverse semigroup."""
from .counting import (DClassStats, aut_order, dclass_count, dclass_stats, fixator_order,
                       full_tree_aut_order, idempotent_count, order_formula, stabilizer_order)
from .errors import DegreeMismatchError, EnumerationLimitError, FormulaConsistencyError
from .partial_perm import PartialPerm, compose, enumerate_is, inverse, is_idempotent
from .subtree_types import (SubtreeType, canonical_type, enumerate_types, type_decomposition,
                            type_order)
from .tree_paut import (PartialTreeAut, RootedSubtree, TreeShape, domain_subtree, from_wreath,
                        pa_compose, range_subtree, to_wreath)
from .wreath import (WreathElement, canonical_key, enumerate_wreath, is_idempotent_structural,
                     w_compose, w_inverse)

__version__ = "0.1.0"
