"""Support lattices, Moebius functions, homogeneous sections, and the
top-down recursion producing complete systems of primitive orthogonal
idempotents for left regular band algebras.

The recursion processes lattice elements from top to bottom:

    e_X = u_X - sum_{Y > X} u_X * e_Y

where u is any homogeneous section of the support map.  The Q-basis
Q_x = H_x e_supp(x) and the R-basis R_s = H_s e_supp(s^w) are built from
its output.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from random import Random

from .algebra import AlgebraVector
from .scalars import Cyclo
from .semigroup import (
    FiniteSemigroup,
    QuotientMap,
    SemigroupError,
    idempotent_subsemigroup,
    support_quotient,
)


class SupportLattice:
    """A finite join semilattice presented as a commutative idempotent
    semigroup whose product is the join; the identity is the bottom."""

    def __init__(self, lattice: FiniteSemigroup):
        n = len(lattice)
        for a in range(n):
            if lattice.table[a][a] != a:
                raise SemigroupError(f"{lattice.labels[a]} is not idempotent")
            for b in range(n):
                if lattice.table[a][b] != lattice.table[b][a]:
                    raise SemigroupError("lattice product must be commutative")
        self.semigroup = lattice
        self._mobius: dict[tuple[int, int], int] = {}

    def __len__(self):
        return len(self.semigroup)

    @property
    def labels(self):
        return self.semigroup.labels

    def join(self, x: int, y: int) -> int:
        return self.semigroup.table[x][y]

    def leq(self, x: int, y: int) -> bool:
        return self.semigroup.table[x][y] == y

    def upper_set(self, x: int) -> list[int]:
        return [y for y in range(len(self)) if self.leq(x, y)]

    def interval(self, x: int, y: int) -> list[int]:
        return [z for z in range(len(self)) if self.leq(x, z) and self.leq(z, y)]

    def mobius(self, x: int, y: int) -> int:
        """mu(x, y) by the defining recursion mu(x,x) = 1,
        mu(x,y) = -sum_{x <= z < y} mu(x,z)."""
        if not self.leq(x, y):
            raise SemigroupError(
                f"mobius requires {self.labels[x]} <= {self.labels[y]}"
            )
        key = (x, y)
        if key in self._mobius:
            return self._mobius[key]
        if x == y:
            value = 1
        else:
            value = -sum(self.mobius(x, z) for z in self.interval(x, y) if z != y)
        self._mobius[key] = value
        return value

    def top_down_order(self) -> list[int]:
        """A linear extension from top to bottom: repeatedly remove the
        maximal elements of what is left, breaking ties by element index."""
        remaining = set(range(len(self)))
        out: list[int] = []
        while remaining:
            maximal = sorted(
                x for x in remaining
                if not any(self.leq(x, y) and x != y for y in remaining)
            )
            if not maximal:
                raise SemigroupError("order has a cycle; not a lattice")
            out.extend(maximal)
            remaining.difference_update(maximal)
        return out


@dataclass
class SupportStructure:
    """The support data of an LRBG: its idempotent sub-LRB, the support
    lattice of that LRB, and the projection of every element onto it."""

    semigroup: FiniteSemigroup
    idempotent_ids: tuple[int, ...]
    quotient: QuotientMap  # E(S) -> lattice
    lattice: SupportLattice

    def __post_init__(self):
        self._supp_of = {
            x: self.quotient(k) for k, x in enumerate(self.idempotent_ids)
        }

    @classmethod
    def of(cls, S: FiniteSemigroup) -> "SupportStructure":
        E, embed = idempotent_subsemigroup(S)
        q = support_quotient(E)
        return cls(S, embed, q, SupportLattice(q.target))

    def supp_of_idempotent(self, x: int) -> int:
        return self._supp_of[x]

    def supp(self, s: int) -> int:
        """The lattice element under s, i.e. supp(s^w)."""
        return self._supp_of[self.semigroup.omega(s)]

    def fiber(self, X: int) -> list[int]:
        """Idempotents of S lying over the lattice element X."""
        return [self.idempotent_ids[k] for k in self.quotient.fiber(X)]


class HomogeneousSection:
    """A choice, for each lattice element X, of a vector supported on the
    idempotent fiber over X with coefficient sum 1."""

    def __init__(self, structure: SupportStructure, vectors: dict[int, AlgebraVector]):
        self.structure = structure
        if set(vectors) != set(range(len(structure.lattice))):
            raise SemigroupError("section must assign a vector to every lattice element")
        for X, v in vectors.items():
            fiber = set(structure.fiber(X))
            if not v.coeffs:
                raise SemigroupError("section vectors must be nonzero")
            if not set(v.coeffs) <= fiber:
                raise SemigroupError(
                    f"section at {structure.lattice.labels[X]} is supported off its fiber"
                )
            if v.coefficient_sum() != Cyclo.one(v.order):
                raise SemigroupError(
                    f"section at {structure.lattice.labels[X]} has coefficient sum != 1"
                )
        self.vectors = dict(vectors)

    def __getitem__(self, X: int) -> AlgebraVector:
        return self.vectors[X]

    @classmethod
    def uniform(cls, structure: SupportStructure, order: int = 1) -> "HomogeneousSection":
        vectors = {}
        for X in range(len(structure.lattice)):
            fiber = structure.fiber(X)
            c = Fraction(1, len(fiber))
            vectors[X] = AlgebraVector(
                structure.semigroup, order, {x: Cyclo.rational(c, order) for x in fiber}
            )
        return cls(structure, vectors)

    @classmethod
    def random(
        cls, structure: SupportStructure, rng: Random, order: int = 1, max_denominator: int = 7
    ) -> "HomogeneousSection":
        """A random rational homogeneous section; coefficients sum to 1 and
        have denominators bounded by max_denominator before reduction."""
        vectors = {}
        for X in range(len(structure.lattice)):
            fiber = structure.fiber(X)
            coeffs = [
                Fraction(rng.randint(-2, 2), rng.randint(1, max_denominator))
                for _ in fiber[:-1]
            ]
            coeffs.append(1 - sum(coeffs, Fraction(0)))
            vectors[X] = AlgebraVector(
                structure.semigroup,
                order,
                {x: Cyclo.rational(c, order) for x, c in zip(fiber, coeffs)},
            )
        return cls(structure, vectors)


def uniform_section(S: FiniteSemigroup, order: int = 1) -> HomogeneousSection:
    return HomogeneousSection.uniform(SupportStructure.of(S), order)


def saliola_idempotents(
    S_or_section, section: HomogeneousSection | None = None
) -> dict[int, AlgebraVector]:
    """The lattice-indexed CSoPOI of the LRB algebra C E(S).

    Accepts either a semigroup (uniform section implied) or a prepared
    HomogeneousSection.  Output vectors live in the ambient algebra C S,
    supported on idempotents.
    """
    if isinstance(S_or_section, HomogeneousSection):
        u = S_or_section
    elif section is not None:
        u = section
    else:
        u = uniform_section(S_or_section)
    lattice = u.structure.lattice
    out: dict[int, AlgebraVector] = {}
    for X in u.structure.lattice.top_down_order():
        e = u[X]
        for Y in lattice.upper_set(X):
            if Y != X:
                e = e - u[X] * out[Y]
        out[X] = e
    return out


def q0_basis(
    S: FiniteSemigroup, idempotents: dict[int, AlgebraVector], structure: SupportStructure | None = None
) -> dict[int, AlgebraVector]:
    """Q_x = H_x e_supp(x) for every idempotent x: a basis of primitive
    idempotents of the LRB algebra C E(S) (all of C S when S is an LRB)."""
    st = structure or SupportStructure.of(S)
    order = max((v.order for v in idempotents.values()), default=1)
    out = {}
    for x in st.idempotent_ids:
        out[x] = AlgebraVector.basis(S, x, order) * idempotents[st.supp_of_idempotent(x)]
    return out


def r_basis(
    S: FiniteSemigroup, idempotents: dict[int, AlgebraVector], structure: SupportStructure | None = None
) -> dict[int, AlgebraVector]:
    """R_s = H_s e_supp(s^w) for every s: a basis of the LRBG algebra C S."""
    st = structure or SupportStructure.of(S)
    order = max((v.order for v in idempotents.values()), default=1)
    out = {}
    for s in range(len(S)):
        out[s] = AlgebraVector.basis(S, s, order) * idempotents[st.supp(s)]
    return out


def mobius_q_basis(lattice: SupportLattice, ambient: FiniteSemigroup | None = None,
                   id_of_lattice_element=None, order: int = 1) -> dict[int, AlgebraVector]:
    """The closed form Q_X = sum_{Y >= X} mu(X, Y) H_Y on a lattice algebra."""
    S = ambient or lattice.semigroup
    ids = id_of_lattice_element or (lambda X: X)
    out = {}
    for X in range(len(lattice)):
        out[X] = AlgebraVector(
            S,
            order,
            {ids(Y): Cyclo.rational(lattice.mobius(X, Y), order) for Y in lattice.upper_set(X)},
        )
    return out


def brute_force_mobius(lattice: SupportLattice, x: int, y: int) -> int:
    """Independent oracle: Moebius value by inverting the zeta matrix of the
    interval [x, y] through chain counting (inclusion-exclusion over chains)."""
    if not lattice.leq(x, y):
        raise SemigroupError("x must be below y")
    interval = lattice.interval(x, y)
    # mu(x,y) = sum over chains x = z0 < z1 < ... < zk = y of (-1)^k
    def chains_from(z, seen_len):
        if z == y:
            return [seen_len]
        out = []
        for w in interval:
            if w != z and lattice.leq(z, w):
                out.extend(chains_from(w, seen_len + 1))
        return out

    if x == y:
        return 1
    total = 0
    for length in chains_from(x, 0):
        total += (-1) ** length
    return total


def section_from_json(structure: SupportStructure, data: dict) -> HomogeneousSection:
    lattice = structure.lattice
    by_label = {lattice.labels[X]: X for X in range(len(lattice))}
    vectors = {}
    for label, vec_json in data.items():
        if label not in by_label:
            raise SemigroupError(f"unknown lattice element {label!r}")
        vectors[by_label[label]] = AlgebraVector.from_json(structure.semigroup, vec_json)
    return HomogeneousSection(structure, vectors)
