"""Exact computations with left regular bands of groups.

Finite semigroups are explicit multiplication tables; all linear algebra
runs over cyclotomic rationals, so every verification in the package is an
exact identity check, never a numerical comparison.
"""

from .algebra import (
    AlgebraVector,
    CsopoiReport,
    LinearMap,
    SpanChecker,
    UnsupportedNonAbelian,
    exact_rank,
    h_multiply,
    is_idempotent,
    is_primitive,
    supp_map,
    sum_vectors,
    verify_csopoi,
)
from .characters import (
    Character,
    DualElement,
    character_group,
    dual_order,
    h_times_e,
    isotypic_projector,
)
from .csopoi import algebra_order, general_csopoi, lrbg_csopoi
from .groups import builtin_group, cyclic_group, dual_group, wreath_group
from .hsiao import HsiaoAlgebra, build_hsiao, set_composition_semigroup, star_product
from .mr import (
    MRAlgebra,
    descent_composition,
    reutenauer_idempotents,
    star_product_mr,
    vazirani_idempotents,
)
from .presheaf import (
    GroupPresheaf,
    presheaf_from_strict,
    semigroup_from_presheaf,
    strictify,
)
from .saliola import (
    HomogeneousSection,
    SupportLattice,
    SupportStructure,
    q0_basis,
    r_basis,
    saliola_idempotents,
    uniform_section,
)
from .scalars import Cyclo, OrderMismatch, root_of_unity
from .semigroup import (
    FiniteSemigroup,
    QuotientMap,
    SemigroupError,
    SubgroupView,
    check_axioms,
    free_lrb,
    idempotent_subsemigroup,
    lambda_morphism,
    leq,
    maximal_subgroup,
    support_quotient,
    verify_isomorphism,
)

__version__ = "0.1.0"
