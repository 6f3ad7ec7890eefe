"""Complete systems of primitive orthogonal idempotents for LRBG algebras.

Two constructions:

* the abelian path: one idempotent per equivalence class of dual elements,
  via  e_Class = u_X * (E_phi * e_X)  for any representative phi over X;
* the general path: caller-supplied group CSoPOIs sandwiched between the
  lattice idempotents,  e_(X,i) = e_X * E_i * e_X.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import AlgebraVector, sum_vectors
from .characters import Character, DualElement, character_group, isotypic_projector, transport
from .saliola import HomogeneousSection, SupportStructure, saliola_idempotents
from .scalars import lcm
from .semigroup import FiniteSemigroup, SemigroupError, maximal_subgroup


class NonAbelianFiber(SemigroupError):
    """The automatic construction needs abelian maximal subgroups."""


def algebra_order(S: FiniteSemigroup) -> int:
    """The cyclotomic order housing every character value of S: the lcm of
    the exponents of the maximal subgroups."""
    m = 1
    for x in S.idempotents():
        m = lcm(m, maximal_subgroup(S, x).exponent())
    return m


@dataclass
class DualClass:
    """An equivalence class of dual elements over one lattice element."""

    lattice_element: int
    members: tuple[DualElement, ...]

    def representative(self) -> DualElement:
        return self.members[0]

    def label(self) -> str:
        return "{" + self.representative().label() + "}"


def enumerate_dual_classes(
    structure: SupportStructure, order: int | None = None
) -> tuple[list[DualClass], dict[int, list[Character]]]:
    """All equivalence classes of the dual set, plus the character groups
    per idempotent (computed once and shared)."""
    S = structure.semigroup
    m = order or algebra_order(S)
    characters_at: dict[int, list[Character]] = {}
    for x in structure.idempotent_ids:
        G = maximal_subgroup(S, x)
        if not G.is_abelian():
            raise NonAbelianFiber(
                f"maximal subgroup at {S.labels[x]} is non-abelian; supply "
                "group idempotents through the general construction instead"
            )
        characters_at[x] = character_group(G, m)
    classes: list[DualClass] = []
    for X in range(len(structure.lattice)):
        fiber = structure.fiber(X)
        x0 = fiber[0]
        for chi in characters_at[x0]:
            rep = DualElement(chi)
            members = [transport(rep, xp) for xp in fiber]
            classes.append(DualClass(X, tuple(members)))
    return classes, characters_at


def q_basis_dual(
    phi: DualElement,
    idempotents: dict[int, AlgebraVector],
    structure: SupportStructure,
    order: int,
) -> AlgebraVector:
    """Q_phi = E_phi * e_supp(|phi|): a primitive idempotent of C S."""
    E = isotypic_projector(phi.character, order)
    return E * idempotents[structure.supp_of_idempotent(phi.carrier)]


def lrbg_csopoi(
    S: FiniteSemigroup,
    section: HomogeneousSection | None = None,
    order: int | None = None,
    check_representatives: bool = True,
) -> dict[str, AlgebraVector]:
    """The CSoPOI of an LRBG algebra with abelian maximal subgroups.

    One idempotent per dual class; each is independent of the chosen class
    representative (cross-checked against a second representative when the
    class is not a singleton, unless disabled)."""
    structure = (section.structure if section is not None else SupportStructure.of(S))
    u = section or HomogeneousSection.uniform(structure)
    m = order or algebra_order(S)
    classes, _ = enumerate_dual_classes(structure, m)
    e_circ = saliola_idempotents(u)
    out: dict[str, AlgebraVector] = {}
    for cls_ in classes:
        phi = cls_.representative()
        vec = u[cls_.lattice_element] * q_basis_dual(phi, e_circ, structure, m)
        if check_representatives and len(cls_.members) > 1:
            other = cls_.members[-1]
            alt = u[cls_.lattice_element] * q_basis_dual(other, e_circ, structure, m)
            if alt != vec:
                raise SemigroupError(
                    f"class idempotent depends on the representative at {cls_.label()}"
                )
        out[cls_.label()] = vec
    return out


def validate_group_system(
    S: FiniteSemigroup, x: int, system: list[AlgebraVector]
) -> None:
    """A CSoPOI of C G_x: idempotent, orthogonal, summing to H_x, and
    supported inside G_x."""
    members = set(maximal_subgroup(S, x).members)
    for i, e in enumerate(system):
        if not set(e.coeffs) <= members:
            raise SemigroupError(f"group idempotent {i} is supported outside G_x")
        if not (e * e == e):
            raise SemigroupError(f"group idempotent {i} is not idempotent")
        for j, f in enumerate(system):
            if i != j and not (e * f).is_zero():
                raise SemigroupError(f"group idempotents {i} and {j} are not orthogonal")
    total = sum_vectors(system)
    unit = AlgebraVector.basis(S, x, total.order)
    if not total == unit:
        raise SemigroupError("group idempotents do not sum to the subgroup unit")


def general_csopoi(
    S: FiniteSemigroup,
    section: HomogeneousSection | None = None,
    group_systems: dict[int, list[AlgebraVector]] | None = None,
) -> list[AlgebraVector]:
    """The sandwich construction e_(X,i) = e_X * E_i * e_X.

    ``group_systems`` maps each lattice element X to a CSoPOI of C G_x for
    one idempotent x over X (validated).  When omitted, abelian fibers get
    their isotypic projectors automatically; a non-abelian fiber without a
    supplied system is an error, never a guess.
    """
    structure = (section.structure if section is not None else SupportStructure.of(S))
    u = section or HomogeneousSection.uniform(structure)
    e_circ = saliola_idempotents(u)
    m = algebra_order(S) if group_systems is None else max(
        [algebra_order(S)]
        + [v.order for vs in group_systems.values() for v in vs]
    )
    out: list[AlgebraVector] = []
    for X in range(len(structure.lattice)):
        if group_systems is not None and X in group_systems:
            system = group_systems[X]
            carriers = {s for e in system for s in e.coeffs}
            x_candidates = [
                x for x in structure.fiber(X)
                if carriers <= set(maximal_subgroup(S, x).members)
            ]
            if not x_candidates:
                raise SemigroupError(
                    f"group system at {structure.lattice.labels[X]} is not supported "
                    "in a single maximal subgroup over that element"
                )
            validate_group_system(S, x_candidates[0], system)
        else:
            fiber = structure.fiber(X)
            G = maximal_subgroup(S, fiber[0])
            if not G.is_abelian():
                raise NonAbelianFiber(
                    f"no group system supplied for non-abelian fiber over "
                    f"{structure.lattice.labels[X]}"
                )
            system = [isotypic_projector(chi, m) for chi in character_group(G, m)]
        for E in system:
            out.append(e_circ[X] * E * e_circ[X])
    return out


def csopoi_count(structure: SupportStructure) -> int:
    """|T^| = sum over lattice elements of |G_X|: the size of any CSoPOI
    produced by the abelian construction."""
    S = structure.semigroup
    total = 0
    for X in range(len(structure.lattice)):
        x = structure.fiber(X)[0]
        total += len(maximal_subgroup(S, x))
    return total
