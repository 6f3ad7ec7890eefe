"""The semigroup of G-labeled set compositions of [n] and its algebra.

Elements are ordered set partitions of [n] with a group label per block;
the product intersects blocks left-to-right and composes labels as
(right label) * (left label).  With the trivial group this is the Tits
product on set compositions.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product
from math import factorial

from .algebra import AlgebraVector
from .characters import Character, DualElement
from .compositions import (
    canonical_partition,
    char_refines,
    deg_and_degfact,
    labeled_compositions,
    labeled_partitions,
    refines,
    render_block,
    render_int_composition,
    render_int_partition,
    render_set_composition,
    set_compositions,
)
from .csopoi import algebra_order
from .groups import dual_group, group_exponent, is_abelian, trivial_group
from .saliola import HomogeneousSection, SupportStructure, r_basis, saliola_idempotents
from .scalars import Cyclo
from .semigroup import FiniteSemigroup, SemigroupError
from .semigroup import leq as element_leq
from .semigroup import maximal_subgroup

GElement = tuple[tuple[tuple[int, ...], ...], tuple[int, ...]]  # (blocks, labels)

DEFAULT_MAX_ELEMENTS = 100_000


def gcomposition_product(s: GElement, t: GElement, G: FiniteSemigroup) -> GElement:
    """Blockwise intersection refining s, labels composed as h*g."""
    (sb, sg), (tb, tg) = s, t
    blocks: list[tuple[int, ...]] = []
    labels: list[int] = []
    for S, g in zip(sb, sg):
        sset = set(S)
        for T, h in zip(tb, tg):
            inter = tuple(v for v in T if v in sset)
            if inter:
                blocks.append(inter)
                labels.append(G.table[h][g])
    return tuple(blocks), tuple(labels)


def _count_gcompositions(n: int, order: int) -> int:
    total = 0
    for comp in set_compositions(n):
        total += order ** len(comp)
    return total


def enumerate_gcompositions(n: int, G: FiniteSemigroup) -> list[GElement]:
    out = []
    for comp in set_compositions(n):
        for labels in product(range(len(G)), repeat=len(comp)):
            out.append((comp, labels))
    return out


def hsiao_label(elem: GElement, G: FiniteSemigroup) -> str:
    return render_set_composition(elem[0], elem[1], G.labels)


def build_hsiao(
    n: int, G: FiniteSemigroup, max_elements: int = DEFAULT_MAX_ELEMENTS
) -> FiniteSemigroup:
    """Materialize the semigroup of G-compositions of [n] as a table."""
    size = _count_gcompositions(n, len(G))
    if size > max_elements:
        raise SemigroupError(
            f"semigroup of G-compositions would have {size} elements (limit {max_elements})"
        )
    elems = enumerate_gcompositions(n, G)
    pos = {e: i for i, e in enumerate(elems)}
    table = [
        [pos[gcomposition_product(a, b, G)] for b in elems] for a in elems
    ]
    if n == 0:
        unit = pos[((), ())]
    else:
        unit = pos[((tuple(range(1, n + 1)),), (G.identity,))]
    S = FiniteSemigroup(
        [hsiao_label(e, G) or "()" for e in elems],
        table,
        unit,
        name=f"Sigma{n}[{G.name}]",
        check=False,
    )
    S.gcompositions = elems  # type: ignore[attr-defined]
    S.group = G  # type: ignore[attr-defined]
    S.n = n  # type: ignore[attr-defined]
    return S


def set_composition_semigroup(n: int) -> FiniteSemigroup:
    """Plain set compositions of [n] under the Tits product."""
    S = build_hsiao(n, trivial_group())
    relabeled = FiniteSemigroup(
        [render_block_composition(blocks) for blocks, _ in S.gcompositions],
        S.table,
        S.identity,
        name=f"Sigma{n}",
        check=False,
    )
    relabeled.gcompositions = S.gcompositions  # type: ignore[attr-defined]
    relabeled.group = S.group  # type: ignore[attr-defined]
    relabeled.n = n  # type: ignore[attr-defined]
    return relabeled


def render_block_composition(blocks) -> str:
    return "|".join(render_block(b) for b in blocks)


def build_hsiao_partitions(
    n: int, G: FiniteSemigroup, max_elements: int = DEFAULT_MAX_ELEMENTS
) -> FiniteSemigroup:
    """The semigroup of G-partitions of [n] (unordered blocks)."""
    comps = enumerate_gcompositions(n, G)
    canon = {}
    elems = []
    for blocks, labels in comps:
        key = tuple(sorted(zip(blocks, labels), key=lambda p: p[0][0]))
        if key not in canon:
            canon[key] = len(elems)
            elems.append(key)
    if len(elems) > max_elements:
        raise SemigroupError("too many G-partitions")

    def as_comp(key) -> GElement:
        return tuple(b for b, _ in key), tuple(g for _, g in key)

    def prod(a, b):
        blocks, labels = gcomposition_product(as_comp(a), as_comp(b), G)
        return tuple(sorted(zip(blocks, labels), key=lambda p: p[0][0]))

    table = [[canon[prod(a, b)] for b in elems] for a in elems]
    labels_out = [
        "{" + render_set_composition(tuple(b for b, _ in key), tuple(g for _, g in key), G.labels) + "}"
        for key in elems
    ]
    unit = canon[(((tuple(range(1, n + 1))), G.identity),)]
    return FiniteSemigroup(
        labels_out, table, unit, name=f"Pi{n}[{G.name}]", check=False
    )


# -- symmetric-group action and type maps --------------------------------


def sn_act(w: tuple[int, ...], elem: GElement) -> GElement:
    """Relabel block contents through the permutation w (one-line), keeping labels."""
    blocks, labels = elem
    return tuple(tuple(sorted(w[v - 1] for v in block)) for block in blocks), labels


def type_of(elem: GElement) -> tuple[tuple[int, int], ...]:
    blocks, labels = elem
    return tuple((len(b), g) for b, g in zip(blocks, labels))


def support_of(elem: GElement) -> tuple[tuple[tuple[int, ...], int], ...]:
    """The underlying G-partition: blocks sorted by minimum."""
    blocks, labels = elem
    return tuple(sorted(zip(blocks, labels), key=lambda p: p[0][0]))


def partition_type(partition) -> tuple[tuple[int, int], ...]:
    return canonical_partition(tuple((len(b), g) for b, g in partition))


def standardize(blocks: tuple[tuple[int, ...], ...], labels: tuple[int, ...]) -> GElement:
    """Order-preserving relabeling of the ground set to [n]; labels unchanged."""
    support = sorted(v for block in blocks for v in block)
    rank = {v: i + 1 for i, v in enumerate(support)}
    return tuple(tuple(rank[v] for v in block) for block in blocks), labels


# -- the algebra of G-compositions: bases, idempotents, change of basis ------


class HsiaoAlgebra:
    """All derived data of the algebra of G-compositions of [n] under the
    uniform section: the support structure, the lattice idempotents, the
    R/E/Q bases, the symmetric-group orbit bases of the invariant
    subalgebra, and its idempotents.

    The E and Q sides require an abelian label group; the H and R sides
    work for any finite group.
    """

    def __init__(self, n: int, G: FiniteSemigroup, max_elements: int = DEFAULT_MAX_ELEMENTS):
        self.n = n
        self.group = G
        self.semigroup = build_hsiao(n, G, max_elements)
        self.elements: list[GElement] = self.semigroup.gcompositions
        self.id_of = {e: i for i, e in enumerate(self.elements)}
        self.structure = SupportStructure.of(self.semigroup)
        self.order = max(algebra_order(self.semigroup), group_exponent(G))
        self.uniform = HomogeneousSection.uniform(self.structure)
        self.lattice_idempotents = saliola_idempotents(self.uniform)
        self.abelian = is_abelian(G)
        if self.abelian:
            self.dual, self.dual_values = dual_group(G, self.order)
        else:
            self.dual, self.dual_values = None, None
        self._r: dict[int, AlgebraVector] | None = None
        self._type_classes: dict[tuple, list[int]] | None = None

    # -- element-level vectors ------------------------------------------

    def h(self, elem) -> AlgebraVector:
        return AlgebraVector.basis(self.semigroup, self._resolve(elem), self.order)

    def _resolve(self, elem) -> int:
        if isinstance(elem, int):
            return elem
        if isinstance(elem, str):
            return self.semigroup.index(elem)
        return self.id_of[elem]

    def r_vectors(self) -> dict[int, AlgebraVector]:
        if self._r is None:
            self._r = r_basis(self.semigroup, self.lattice_idempotents, self.structure)
        return self._r

    def r_closed(self, s) -> AlgebraVector:
        """R_s = sum_{t >= s} (-1)^(l(t)-l(s)) / deg(t/s) H_t."""
        sid = self._resolve(s)
        S = self.semigroup
        ls = len(self.elements[sid][0])
        acc: dict[int, Cyclo] = {}
        for tid in range(len(S)):
            if element_leq(S, sid, tid):
                lt = len(self.elements[tid][0])
                deg, _ = deg_and_degfact(
                    type_of(self.elements[sid]), type_of(self.elements[tid])
                )
                acc[tid] = Cyclo.rational(Fraction((-1) ** (lt - ls), deg), self.order)
        return AlgebraVector(S, self.order, acc)

    def h_from_r_closed(self, s) -> AlgebraVector:
        """H_s = sum_{t >= s} 1/deg!(t/s) R_t."""
        sid = self._resolve(s)
        S = self.semigroup
        r = self.r_vectors()
        acc = AlgebraVector.zero(S, self.order)
        for tid in range(len(S)):
            if element_leq(S, sid, tid):
                _, degf = deg_and_degfact(
                    type_of(self.elements[sid]), type_of(self.elements[tid])
                )
                acc = acc + Fraction(1, degf) * r[tid]
        return acc

    # -- dual (character) side -------------------------------------------

    def _require_abelian(self):
        if not self.abelian:
            raise SemigroupError("character-side bases require an abelian group")

    def dual_compositions(self) -> list[GElement]:
        """G^-compositions of [n]: blocks labeled by character ids."""
        self._require_abelian()
        return enumerate_gcompositions(self.n, self.dual)

    def dual_label(self, phi: GElement) -> str:
        return render_set_composition(phi[0], phi[1], self.dual.labels)

    def carrier_of(self, phi: GElement) -> int:
        """The idempotent of the semigroup under a dual composition."""
        blocks, _ = phi
        return self.id_of[(blocks, (self.group.identity,) * len(blocks))]

    def eval_dual(self, phi: GElement, s: GElement) -> Cyclo:
        """phi(s) = prod_i chi_i(g_i) when |s| = |phi|, else 0."""
        if phi[0] != s[0]:
            return Cyclo.zero(self.order)
        acc = Cyclo.one(self.order)
        for chi_id, g in zip(phi[1], s[1]):
            acc = acc * self.dual_values[chi_id][g]
        return acc

    def e_projector(self, phi: GElement) -> AlgebraVector:
        """E_phi = 1/|G_x| sum over the fiber group of conj(phi(s)) H_s."""
        self._require_abelian()
        blocks, _ = phi
        k = len(blocks)
        scale = Fraction(1, len(self.group) ** k)
        coeffs: dict[int, Cyclo] = {}
        from itertools import product as iproduct

        for labels in iproduct(range(len(self.group)), repeat=k):
            s = (blocks, labels)
            coeffs[self.id_of[s]] = self.eval_dual(phi, s).conj() * scale
        return AlgebraVector(self.semigroup, self.order, coeffs)

    def dual_element(self, phi: GElement) -> DualElement:
        """The (carrier, character) pair of a dual composition."""
        x = self.carrier_of(phi)
        G_x = maximal_subgroup(self.semigroup, x)
        values = {
            s: self.eval_dual(phi, self.elements[s]) for s in G_x
        }
        return DualElement(Character(G_x, values))

    def q_vector(self, phi: GElement) -> AlgebraVector:
        """Q_phi = E_phi e_supp(|phi|)."""
        x = self.carrier_of(phi)
        return self.e_projector(phi) * self.lattice_idempotents[self.structure.supp_of_idempotent(x)]

    def dual_comp_leq(self, phi: GElement, psi: GElement) -> bool:
        """phi below psi: |psi| refines |phi| in the composition order and
        the product of refining characters recovers each coarse character."""
        if not element_leq(self.semigroup, self.carrier_of(phi), self.carrier_of(psi)):
            return False
        position = {}
        for j, block in enumerate(psi[0]):
            for v in block:
                position[v] = j
        dual = self.dual
        for block, chi in zip(phi[0], phi[1]):
            acc = dual.identity
            for j in sorted({position[v] for v in block}):
                acc = dual.table[acc][psi[1][j]]
            if acc != chi:
                return False
        return True

    def q_closed_from_e(self, phi: GElement) -> AlgebraVector:
        """Q_phi = sum_{psi >= phi} (-1)^(l(psi)-l(phi)) / deg(psi/phi) E_psi."""
        lp = len(phi[0])
        acc = AlgebraVector.zero(self.semigroup, self.order)
        for psi in self.dual_compositions():
            if self.dual_comp_leq(phi, psi):
                deg, _ = deg_and_degfact(type_of(phi), type_of(psi))
                acc = acc + Fraction((-1) ** (len(psi[0]) - lp), deg) * self.e_projector(psi)
        return acc

    def e_from_q_closed(self, phi: GElement, q_vectors: dict[GElement, AlgebraVector]) -> AlgebraVector:
        """E_phi = sum_{psi >= phi} 1/deg!(psi/phi) Q_psi."""
        acc = AlgebraVector.zero(self.semigroup, self.order)
        for psi in self.dual_compositions():
            if self.dual_comp_leq(phi, psi):
                _, degf = deg_and_degfact(type_of(phi), type_of(psi))
                acc = acc + Fraction(1, degf) * q_vectors[psi]
        return acc

    def q_closed_in_h(self, phi: GElement) -> AlgebraVector:
        """The fully expanded form of Q_phi over the H basis."""
        blocks, _ = phi
        k = len(blocks)
        scale = Fraction(1, len(self.group) ** k)
        acc = AlgebraVector.zero(self.semigroup, self.order)
        from itertools import product as iproduct

        for labels in iproduct(range(len(self.group)), repeat=k):
            s = (blocks, labels)
            acc = acc + (self.eval_dual(phi, s).conj() * scale) * self.r_closed(self.id_of[s])
        return acc

    # -- symmetric-group orbits and the invariant subalgebra ---------------

    def type_classes(self) -> dict[tuple, list[int]]:
        if self._type_classes is None:
            classes: dict[tuple, list[int]] = {}
            for i, e in enumerate(self.elements):
                classes.setdefault(type_of(e), []).append(i)
            self._type_classes = classes
        return self._type_classes

    def gamma(self) -> list[tuple[tuple[int, int], ...]]:
        return labeled_compositions(self.n, len(self.group))

    def gamma_dual(self) -> list[tuple[tuple[int, int], ...]]:
        self._require_abelian()
        return labeled_compositions(self.n, len(self.dual))

    def lambda_dual(self) -> list[tuple[tuple[int, int], ...]]:
        self._require_abelian()
        return labeled_partitions(self.n, len(self.dual))

    def sym_h(self, p) -> AlgebraVector:
        ids = self.type_classes()[tuple(p)]
        return AlgebraVector(
            self.semigroup, self.order, {i: Cyclo.one(self.order) for i in ids}
        )

    def sym_r(self, p) -> AlgebraVector:
        r = self.r_vectors()
        acc = AlgebraVector.zero(self.semigroup, self.order)
        for i in self.type_classes()[tuple(p)]:
            acc = acc + r[i]
        return acc

    def sym_e(self, alpha) -> AlgebraVector:
        acc = AlgebraVector.zero(self.semigroup, self.order)
        for phi in self.dual_compositions():
            if type_of(phi) == tuple(alpha):
                acc = acc + self.e_projector(phi)
        return acc

    def sym_q(self, alpha) -> AlgebraVector:
        acc = AlgebraVector.zero(self.semigroup, self.order)
        for phi in self.dual_compositions():
            if type_of(phi) == tuple(alpha):
                acc = acc + self.q_vector(phi)
        return acc

    def sym_r_closed(self, p) -> AlgebraVector:
        """SR_p = sum_{q >= p} (-1)^(l(q)-l(p)) / deg(q/p) SH_q."""
        p = tuple(p)
        acc = AlgebraVector.zero(self.semigroup, self.order)
        for q in self.gamma():
            if refines(p, q):
                deg, _ = deg_and_degfact(p, q)
                acc = acc + Fraction((-1) ** (len(q) - len(p)), deg) * self.sym_h(q)
        return acc

    def alpha_eval(self, alpha, p) -> Cyclo:
        """Evaluation of a character-labeled integer composition on a
        group-labeled one with the same underlying composition."""
        acc = Cyclo.one(self.order)
        for (sa, chi), (sp, g) in zip(alpha, p):
            if sa != sp:
                raise SemigroupError("underlying compositions differ")
            acc = acc * self.dual_values[chi][g]
        return acc

    def sym_q_closed_from_r(self, alpha) -> AlgebraVector:
        """SQ_alpha = |G|^(-l) sum_{|p| = |alpha|} conj(alpha(p)) SR_p."""
        alpha = tuple(alpha)
        shape = tuple(s for s, _ in alpha)
        scale = Fraction(1, len(self.group) ** len(alpha))
        acc = AlgebraVector.zero(self.semigroup, self.order)
        for p in self.gamma():
            if tuple(s for s, _ in p) == shape:
                acc = acc + (self.alpha_eval(alpha, p).conj() * scale) * self.sym_r(p)
        return acc

    def sym_q_closed_from_e(self, alpha) -> AlgebraVector:
        """SQ_alpha = sum_{beta >= alpha} (-1)^(l(beta)-l(alpha)) / deg SE_beta."""
        alpha = tuple(alpha)
        acc = AlgebraVector.zero(self.semigroup, self.order)
        for beta in self.gamma_dual():
            if char_refines(alpha, beta, self.dual):
                deg, _ = deg_and_degfact(alpha, beta)
                acc = acc + Fraction((-1) ** (len(beta) - len(alpha)), deg) * self.sym_e(beta)
        return acc

    def invariant_csopoi(self) -> dict[str, AlgebraVector]:
        """e_lambda = 1/l(lambda)! sum_{supp(alpha) = lambda} SQ_alpha,
        one idempotent per character-labeled partition of n."""
        self._require_abelian()
        out: dict[str, AlgebraVector] = {}
        sym_q_cache = {alpha: self.sym_q(alpha) for alpha in self.gamma_dual()}
        for lam in self.lambda_dual():
            acc = AlgebraVector.zero(self.semigroup, self.order)
            for alpha in self.gamma_dual():
                if canonical_partition(alpha) == lam:
                    acc = acc + sym_q_cache[alpha]
            out[render_int_partition(lam, self.dual.labels)] = Fraction(
                1, factorial(len(lam))
            ) * acc
        return out

    def e_lambda_closed_from_e(self, lam) -> AlgebraVector:
        lam = canonical_partition(tuple(lam))
        acc = AlgebraVector.zero(self.semigroup, self.order)
        for alpha in self.gamma_dual():
            if canonical_partition(alpha) == lam:
                acc = acc + self.sym_q_closed_from_e(alpha)
        return Fraction(1, factorial(len(lam))) * acc

    def e_lambda_closed_from_h(self, lam) -> AlgebraVector:
        lam = canonical_partition(tuple(lam))
        scale = Fraction(1, len(self.group) ** len(lam) * factorial(len(lam)))
        acc = AlgebraVector.zero(self.semigroup, self.order)
        for alpha in self.gamma_dual():
            if canonical_partition(alpha) != lam:
                continue
            shape = tuple(s for s, _ in alpha)
            for p in self.gamma():
                if tuple(s for s, _ in p) != shape:
                    continue
                coeff = self.alpha_eval(alpha, p).conj()
                for q in self.gamma():
                    if refines(p, q):
                        deg, _ = deg_and_degfact(p, q)
                        c = coeff * Fraction((-1) ** (len(q) - len(p)), deg)
                        acc = acc + c * self.sym_h(q)
        return scale * acc

    def invariant_basis_vectors(self) -> list[AlgebraVector]:
        """The SH basis, spanning the invariant subalgebra."""
        return [self.sym_h(p) for p in self.gamma()]

    def invariant_bases(self) -> dict[str, dict[str, AlgebraVector]]:
        """All bases of the invariant subalgebra: SH, SR and, when the group
        is abelian, SE and SQ, plus the idempotents e_lambda."""
        gl = self.group.labels
        out: dict[str, dict[str, AlgebraVector]] = {
            "H": {render_int_composition(p, gl): self.sym_h(p) for p in self.gamma()},
            "R": {render_int_composition(p, gl): self.sym_r(p) for p in self.gamma()},
        }
        if self.abelian:
            dl = self.dual.labels
            out["E"] = {
                render_int_composition(a, dl): self.sym_e(a) for a in self.gamma_dual()
            }
            out["Q"] = {
                render_int_composition(a, dl): self.sym_q(a) for a in self.gamma_dual()
            }
            out["e"] = self.invariant_csopoi()
        return out

    # -- symmetric-group action on vectors ---------------------------------

    def act(self, w: tuple[int, ...], vec: AlgebraVector) -> AlgebraVector:
        out: dict[int, Cyclo] = {}
        for i, c in vec.coeffs.items():
            j = self.id_of[sn_act(w, self.elements[i])]
            out[j] = out[j] + c if j in out else c
        return AlgebraVector(self.semigroup, vec.order, out)


def star_terms(
    a_terms: dict[GElement, Cyclo], b_terms: dict[GElement, Cyclo], n: int, m: int, order: int
) -> dict[GElement, Cyclo]:
    """Element-keyed external product: place the left factor on an n-subset
    of [n+m] order-preservingly, the right factor on the complement, and
    concatenate the block lists."""
    out: dict[GElement, Cyclo] = {}
    universe = range(1, n + m + 1)
    for subset in combinations(universe, n):
        comp = tuple(v for v in universe if v not in set(subset))
        for eu, ca in a_terms.items():
            u = _place(eu, subset)
            for ev, cb in b_terms.items():
                v = _place(ev, comp)
                w = (u[0] + v[0], u[1] + v[1])
                prod = ca.promote(order) * cb.promote(order)
                out[w] = out[w] + prod if w in out else prod
    return {k: c for k, c in out.items() if not c.is_zero()}


def star_product(
    a: AlgebraVector, b: AlgebraVector, target: "HsiaoAlgebra | FiniteSemigroup"
) -> AlgebraVector:
    """The external product landing in a materialized algebra of the right size."""
    target_sg = target.semigroup if isinstance(target, HsiaoAlgebra) else target
    elems_a: list[GElement] = a.semigroup.gcompositions
    elems_b: list[GElement] = b.semigroup.gcompositions
    order = max(a.order, b.order)
    terms = star_terms(
        {elems_a[i]: c for i, c in a.coeffs.items()},
        {elems_b[j]: c for j, c in b.coeffs.items()},
        a.semigroup.n,
        b.semigroup.n,
        order,
    )
    pos = {e: i for i, e in enumerate(target_sg.gcompositions)}
    return AlgebraVector(target_sg, order, {pos[w]: c for w, c in terms.items()})


def _place(elem: GElement, positions: tuple[int, ...]) -> GElement:
    blocks, labels = elem
    return (
        tuple(tuple(positions[v - 1] for v in block) for block in blocks),
        labels,
    )
