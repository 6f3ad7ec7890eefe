"""Characters of abelian maximal subgroups and their isotypic projectors.

A dual element is a pair (idempotent x, character of G_x); the disjoint
union of these over all idempotents carries the order and equivalence
induced by the left-multiplication morphisms between maximal subgroups.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import AlgebraVector
from .groups import abelian_characters
from .scalars import Cyclo
from .semigroup import SemigroupError, SubgroupView, maximal_subgroup


@dataclass(frozen=True)
class Character:
    """A character of a maximal subgroup, as member-id -> root of unity."""

    group: SubgroupView
    values: dict[int, Cyclo] = field(compare=False)

    def __post_init__(self):
        S = self.group.parent
        e = self.group.identity_element
        if set(self.values) != set(self.group.members):
            raise SemigroupError("character must be defined on exactly the subgroup")
        if self.values[e] != 1:
            raise SemigroupError("character must send the identity to 1")
        for a in self.group.members:
            for b in self.group.members:
                if self.values[S.table[a][b]] != self.values[a] * self.values[b]:
                    raise SemigroupError("character is not multiplicative")

    def __call__(self, s: int) -> Cyclo:
        """Evaluation extended by zero off the subgroup."""
        order = next(iter(self.values.values())).order
        return self.values.get(s, Cyclo.zero(order))

    def key(self) -> tuple:
        return (
            self.group.identity_element,
            tuple((s, self.values[s].coeffs) for s in sorted(self.values)),
        )

    def __eq__(self, other):
        return isinstance(other, Character) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())


def character_group(G: SubgroupView, order: int | None = None) -> list[Character]:
    """All |G| characters of an abelian maximal subgroup (error otherwise)."""
    table, embed = G.as_semigroup()
    raw = abelian_characters(table, order)
    out = []
    for values in raw:
        out.append(Character(G, {embed[k]: v for k, v in values.items()}))
    return out


def isotypic_projector(chi: Character, order: int | None = None) -> AlgebraVector:
    """E_chi = (1/|G|) sum_g conj(chi(g)) H_g in the parent algebra."""
    S = chi.group.parent
    m = order or next(iter(chi.values.values())).order
    n = len(chi.group)
    coeffs = {g: chi.values[g].conj().promote(m) / n for g in chi.group}
    return AlgebraVector(S, m, coeffs)


@dataclass(frozen=True)
class DualElement:
    """A pair (carrier idempotent, character of its maximal subgroup)."""

    character: Character

    @property
    def carrier(self) -> int:
        return self.character.group.identity_element

    def key(self) -> tuple:
        return self.character.key()

    def __eq__(self, other):
        return isinstance(other, DualElement) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def label(self) -> str:
        S = self.character.group.parent
        vals = ",".join(
            str(self.character.values[s]) for s in sorted(self.character.values)
        )
        return f"{S.labels[self.carrier]};{vals}"


def transport(phi: DualElement, x_prime: int) -> DualElement:
    """The character of G_x' corresponding to phi under left multiplication,
    defined whenever x' x = x' (covers both x <= x' and x ~ x')."""
    S = phi.character.group.parent
    x = phi.carrier
    if S.table[x_prime][x] != x_prime:
        raise SemigroupError("transport requires x' x = x'")
    Gxp = maximal_subgroup(S, x_prime)
    values = {s: phi.character.values[S.table[x][s]] for s in Gxp}
    return DualElement(Character(Gxp, values))


def dual_order(phi: DualElement, psi: DualElement) -> str:
    """Compare dual elements: 'leq' when phi is below psi, 'sim' when they
    are equivalent over the same support, else 'incomparable'."""
    S = phi.character.group.parent
    if S is not psi.character.group.parent and S.table != psi.character.group.parent.table:
        raise SemigroupError("dual elements of different semigroups")
    x, y = phi.carrier, psi.carrier
    from .semigroup import leq as leq_elements, related

    def pullback_matches() -> bool:
        # psi composed with left multiplication by y agrees with phi on G_x
        for s, v in phi.character.values.items():
            if psi.character.values[S.table[y][s]] != v:
                return False
        return True

    if leq_elements(S, x, y) and pullback_matches():
        return "leq"
    if related(S, x, y) and pullback_matches():
        return "sim"
    return "incomparable"


def h_times_e(
    y: int, phi: DualElement, order: int | None = None,
    characters_at: dict[int, list[Character]] | None = None,
) -> AlgebraVector:
    """H_y E_phi as the structured sum of projectors at y|phi|.

    Enumerates the characters psi of G_{y|phi|} whose pullback through left
    multiplication by y is phi, and returns sum of their projectors; the
    h-basis product gives the same vector (asserted in the test-suite).
    """
    S = phi.character.group.parent
    if not S.is_idempotent(y):
        raise SemigroupError("y must be idempotent")
    x = phi.carrier
    yx = S.table[y][x]
    if characters_at is not None and yx in characters_at:
        candidates = characters_at[yx]
    else:
        candidates = character_group(maximal_subgroup(S, yx), order)
    m = order or next(iter(candidates[0].values.values())).order
    acc = AlgebraVector.zero(S, m)
    for psi in candidates:
        if all(
            psi.values[S.table[y][s]].promote(m) == v.promote(m)
            for s, v in phi.character.values.items()
        ):
            acc = acc + isotypic_projector(psi, m)
    return acc
