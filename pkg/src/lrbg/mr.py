"""The Mantaci-Reutenauer algebra inside the wreath-product group algebra.

Wreath elements are pairs (sigma, colors); descent compositions record the
maximal increasing constant-color runs.  The X basis X_p sums the elements
whose descent composition coarsens to p, and the span of the X_p is closed
under the group-algebra product.  The anti-isomorphism from the invariant
subalgebra of the G-composition algebra sends the orbit basis to the X
basis and transports all idempotent systems, in particular the signed
analogues of the classical descent-algebra idempotents.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .algebra import AlgebraVector, SpanChecker
from .compositions import (
    canonical_partition,
    deg_and_degfact,
    labeled_compositions,
    labeled_partitions,
    refines,
    render_int_composition,
    render_int_partition,
)
from .groups import dual_group, group_exponent, is_abelian, wreath_group
from .hsiao import HsiaoAlgebra
from .scalars import Cyclo
from .semigroup import FiniteSemigroup, SemigroupError

WreathElement = tuple[tuple[int, ...], tuple[int, ...]]  # (sigma, colors)


def descent_composition(
    w: WreathElement, G: FiniteSemigroup
) -> tuple[tuple[int, int], ...]:
    """The coarsest labeled composition whose blocks are increasing runs of
    sigma with constant color."""
    sigma, colors = w
    n = len(sigma)
    if n == 0:
        return ()
    parts: list[tuple[int, int]] = []
    run = 1
    for i in range(1, n):
        if sigma[i] > sigma[i - 1] and colors[i] == colors[i - 1]:
            run += 1
        else:
            parts.append((run, colors[i - 1]))
            run = 1
    parts.append((run, colors[n - 1]))
    return tuple(parts)


class MRAlgebra:
    """The span of the descent-class sums inside the wreath group algebra."""

    def __init__(self, n: int, G: FiniteSemigroup, max_elements: int = 100_000):
        self.n = n
        self.group = G
        self.wreath = wreath_group(n, G, max_elements)
        self.elements: list[WreathElement] = self.wreath.wreath_elements
        self.id_of = {w: i for i, w in enumerate(self.elements)}
        self.order = group_exponent(G)
        self.abelian = is_abelian(G)
        if self.abelian:
            self.dual, self.dual_values = dual_group(G, self.order)
        else:
            self.dual, self.dual_values = None, None
        self._co = [descent_composition(w, G) for w in self.elements]

    # -- descent classes -----------------------------------------------

    def gamma(self) -> list[tuple[tuple[int, int], ...]]:
        return labeled_compositions(self.n, len(self.group))

    def lambda_dual(self) -> list[tuple[tuple[int, int], ...]]:
        return labeled_partitions(self.n, len(self.dual))

    def y_vector(self, p) -> AlgebraVector:
        p = tuple(p)
        coeffs = {
            i: Cyclo.one(self.order)
            for i, co in enumerate(self._co)
            if co == p
        }
        return AlgebraVector(self.wreath, self.order, coeffs)

    def x_vector(self, p) -> AlgebraVector:
        """X_p = sum of Y_q over the labeled compositions q below p."""
        p = tuple(p)
        acc = AlgebraVector.zero(self.wreath, self.order)
        for q in self.gamma():
            if refines(q, p):
                acc = acc + self.y_vector(q)
        return acc

    def x_vector_direct(self, p) -> AlgebraVector:
        """Independent route: filter every wreath element by coarsening of
        its descent composition."""
        p = tuple(p)
        coeffs = {
            i: Cyclo.one(self.order)
            for i, co in enumerate(self._co)
            if refines(co, p)
        }
        return AlgebraVector(self.wreath, self.order, coeffs)

    def x_basis(self) -> dict[tuple, AlgebraVector]:
        return {p: self.x_vector_direct(p) for p in self.gamma()}

    def x_span(self) -> SpanChecker:
        return SpanChecker(list(self.x_basis().values()))

    def in_x_span(self, vec: AlgebraVector) -> bool:
        return self.x_span().contains(vec)

    def x_label(self, p) -> str:
        return render_int_composition(p, self.group.labels)

    # -- the anti-isomorphism from the invariant subalgebra ---------------

    def hsiao_map(self, A: HsiaoAlgebra, vec: AlgebraVector) -> AlgebraVector:
        """The orbit basis of the invariant subalgebra to the X basis,
        extended linearly; errors when the input is not invariant."""
        if A.n != self.n or A.group.table != self.group.table:
            raise SemigroupError("algebra and MR target do not match")
        remaining = dict(vec.coeffs)
        acc = AlgebraVector.zero(self.wreath, max(self.order, vec.order))
        for p, ids in A.type_classes().items():
            present = [i for i in ids if i in remaining]
            if not present:
                continue
            if len(present) != len(ids):
                raise SemigroupError("vector is not symmetric-group invariant")
            c = remaining[present[0]]
            for i in present[1:]:
                if remaining[i] != c:
                    raise SemigroupError("vector is not symmetric-group invariant")
            for i in present:
                del remaining[i]
            acc = acc + c * self.x_vector_direct(p)
        return acc

    # -- the closed-form idempotents --------------------------------------

    def alpha_eval(self, alpha, p) -> Cyclo:
        acc = Cyclo.one(self.order)
        for (sa, chi), (sp, g) in zip(alpha, p):
            if sa != sp:
                raise SemigroupError("underlying compositions differ")
            acc = acc * self.dual_values[chi][g]
        return acc

    def mr_csopoi(self) -> dict[str, AlgebraVector]:
        """One idempotent per character-labeled partition, straight from the
        closed formula over the X basis."""
        if not self.abelian:
            raise SemigroupError("closed-form idempotents need an abelian group")
        gamma = self.gamma()
        gamma_dual = labeled_compositions(self.n, len(self.dual))
        x_cache = {p: self.x_vector_direct(p) for p in gamma}
        out: dict[str, AlgebraVector] = {}
        for lam in self.lambda_dual():
            k = len(lam)
            scale = Fraction(1, len(self.group) ** k * factorial(k))
            acc = AlgebraVector.zero(self.wreath, self.order)
            for alpha in gamma_dual:
                if canonical_partition(alpha) != lam:
                    continue
                shape = tuple(s for s, _ in alpha)
                for p in gamma:
                    if tuple(s for s, _ in p) != shape:
                        continue
                    coeff = self.alpha_eval(alpha, p).conj()
                    for q in gamma:
                        if refines(p, q):
                            deg, _ = deg_and_degfact(p, q)
                            c = coeff * Fraction((-1) ** (len(q) - len(p)), deg)
                            acc = acc + c * x_cache[q]
            out[render_int_partition(lam, self.dual.labels)] = scale * acc
        return out


# -- external (shuffle) product ---------------------------------------------


def star_product_mr(
    a: AlgebraVector, b: AlgebraVector, target: MRAlgebra
) -> AlgebraVector:
    """u * v = sum over shuffles w of w . (u x v) in the larger wreath group.

    The shuffle w relabels the values of the block element u x v while the
    colors ride along; the convention is pinned by X_p * X_q = X_pq.
    """
    elems_a: list[WreathElement] = a.semigroup.wreath_elements
    elems_b: list[WreathElement] = b.semigroup.wreath_elements
    n = len(elems_a[0][0]) if elems_a else 0
    m = len(elems_b[0][0]) if elems_b else 0
    if n + m != target.n:
        raise SemigroupError("target size must be n + m")
    from itertools import combinations

    order = max(a.order, b.order, target.order)
    out: dict[int, Cyclo] = {}
    universe = range(1, n + m + 1)
    for first in combinations(universe, n):
        rest = tuple(v for v in universe if v not in set(first))
        w_line = first + rest  # increasing on both halves
        for i, ca in a.coeffs.items():
            u = elems_a[i]
            for j, cb in b.coeffs.items():
                v = elems_b[j]
                tau = u[0] + tuple(n + t for t in v[0])
                colors = u[1] + v[1]
                shuffled = (tuple(w_line[t - 1] for t in tau), colors)
                key = target.id_of[shuffled]
                prod = ca.promote(order) * cb.promote(order)
                out[key] = out[key] + prod if key in out else prod
    return AlgebraVector(target.wreath, order, out)


# -- classical idempotents in type B ------------------------------------------


def reutenauer_idempotents(mr: MRAlgebra) -> tuple[AlgebraVector, AlgebraVector]:
    """r_n over the identity-colored compositions and its barred analogue,
    each of the form sum_p (-1)^(l(p)-1)/l(p) X_p."""
    n = mr.n
    if n == 0:
        unit = AlgebraVector.unit(mr.wreath, mr.order)
        return unit, unit
    ident = mr.group.identity
    bar = next(g for g in range(len(mr.group)) if g != ident) if len(mr.group) > 1 else ident
    plain = AlgebraVector.zero(mr.wreath, mr.order)
    barred = AlgebraVector.zero(mr.wreath, mr.order)
    from .compositions import integer_compositions

    for comp in integer_compositions(n):
        k = len(comp)
        c = Fraction((-1) ** (k - 1), k)
        plain = plain + c * mr.x_vector_direct(tuple((s, ident) for s in comp))
        barred = barred + c * mr.x_vector_direct(tuple((s, bar) for s in comp))
    return plain, barred


def colored_reutenauer(p, algebras: dict[int, MRAlgebra]) -> AlgebraVector:
    """r_p: the star product of r/r-bar factors along a labeled composition."""
    acc = None
    partial = 0
    for size, label in p:
        mr_k = algebras[size]
        r, rbar = reutenauer_idempotents(mr_k)
        factor = r if label == mr_k.group.identity else rbar
        if acc is None:
            acc = factor
            partial = size
        else:
            partial += size
            acc = star_product_mr(acc, factor, algebras[partial])
    if acc is None:
        return AlgebraVector.unit(algebras[0].wreath)
    return acc


def i_basis_element(alpha, algebras: dict[int, MRAlgebra]) -> AlgebraVector:
    """I_alpha: star product of the plus/minus halves of the r's, indexed by
    a character-labeled composition (trivial label 0, sign label 1)."""
    acc = None
    partial = 0
    half = Fraction(1, 2)
    for size, chi in alpha:
        mr_k = algebras[size]
        r, rbar = reutenauer_idempotents(mr_k)
        factor = half * (r + rbar) if chi == 0 else half * (r - rbar)
        if acc is None:
            acc, partial = factor, size
        else:
            partial += size
            acc = star_product_mr(acc, factor, algebras[partial])
    if acc is None:
        return AlgebraVector.unit(algebras[0].wreath)
    return acc


def vazirani_idempotents(mr: MRAlgebra) -> dict[str, AlgebraVector]:
    """The symmetrized star products of I-basis factors: one idempotent per
    sign-labeled partition of n (two-element color group only)."""
    if len(mr.group) != 2:
        raise SemigroupError("defined for the order-two color group")
    n = mr.n
    algebras = {k: (mr if k == n else MRAlgebra(k, mr.group)) for k in range(n + 1)}
    out: dict[str, AlgebraVector] = {}
    for lam in mr.lambda_dual():
        k = len(lam)
        acc = AlgebraVector.zero(mr.wreath, mr.order)
        for alpha in labeled_compositions(n, 2):
            if canonical_partition(alpha) == lam:
                acc = acc + i_basis_element(alpha, algebras)
        out[render_int_partition(lam, mr.dual.labels)] = Fraction(1, factorial(k)) * acc
    return out
