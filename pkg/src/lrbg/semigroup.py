"""Finite semigroups as explicit multiplication tables.

Elements are integer ids 0..n-1 with printable labels.  All structural
notions used downstream live here: the omega power (unique idempotent power),
the axiom checkers for left regular bands (of groups), the partial order
s <= t  <=>  s t^w = t, the congruence ~, its quotient, maximal subgroups,
and the left-multiplication morphisms between them.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Optional

import numpy as np


class SemigroupError(ValueError):
    pass


class NotAssociative(SemigroupError):
    def __init__(self, triple):
        self.triple = triple
        super().__init__(f"associativity fails on {triple}")


class FiniteSemigroup:
    """A finite semigroup given by its full multiplication table.

    ``table[i][j]`` is the id of the product i*j.  The table is validated
    for associativity on construction unless ``check=False`` (used by
    builders whose output is associative by construction).
    """

    def __init__(
        self,
        labels: Iterable[str],
        table: Iterable[Iterable[int]],
        identity: Optional[int] = None,
        *,
        name: str | None = None,
        check: bool = True,
    ):
        self.labels = tuple(labels)
        self.table = tuple(tuple(row) for row in table)
        self.name = name
        n = len(self.labels)
        if len(self.table) != n or any(len(row) != n for row in self.table):
            raise SemigroupError("table must be n x n")
        if any(not (0 <= v < n) for row in self.table for v in row):
            raise SemigroupError("table entries must be element ids")
        if check:
            self._check_associativity()
        if identity is None:
            identity = self._find_identity()
        elif not self._is_identity(identity):
            raise SemigroupError(f"element {identity} is not a two-sided unit")
        self.identity = identity
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        if len(self._index) != n:
            raise SemigroupError("labels must be distinct")
        self._omega: list[int | None] = [None] * n

    def _check_associativity(self) -> None:
        n = len(self.labels)
        if n <= 1:
            return
        t = np.asarray(self.table, dtype=np.int64)
        for i in range(n):
            # (i*j)*k vs i*(j*k), vectorized over j,k
            left = t[t[i, :], :]
            right = t[i, t]
            if not np.array_equal(left, right):
                j, k = np.argwhere(left != right)[0]
                raise NotAssociative((self.labels[i], self.labels[j], self.labels[k]))

    def _is_identity(self, e: int) -> bool:
        return all(self.table[e][i] == i and self.table[i][e] == i for i in range(len(self)))

    def _find_identity(self) -> Optional[int]:
        for e in range(len(self)):
            if self._is_identity(e):
                return e
        return None

    # -- basics -------------------------------------------------------

    def __len__(self) -> int:
        return len(self.labels)

    def mul(self, i: int, j: int) -> int:
        return self.table[i][j]

    def index(self, label: str) -> int:
        return self._index[label]

    def is_idempotent(self, i: int) -> bool:
        return self.table[i][i] == i

    def idempotents(self) -> list[int]:
        return [i for i in range(len(self)) if self.is_idempotent(i)]

    def omega(self, s: int) -> int:
        """The unique idempotent among the positive powers of s."""
        cached = self._omega[s]
        if cached is not None:
            return cached
        seen: dict[int, int] = {}
        p = s
        while p not in seen:
            seen[p] = len(seen)
            p = self.table[p][s]
        # p starts the cycle; walk the cycle looking for the idempotent
        q = p
        while True:
            if self.table[q][q] == q:
                self._omega[s] = q
                return q
            q = self.table[q][s]
            if q == p:
                raise SemigroupError(f"no idempotent power of {self.labels[s]}")

    def power(self, s: int, k: int) -> int:
        if k < 1:
            raise ValueError("positive powers only")
        acc = s
        for _ in range(k - 1):
            acc = self.table[acc][s]
        return acc

    def element_order(self, s: int) -> int:
        """Smallest k >= 1 with s^(k+1) = s; equals group order inside G_(s^w)."""
        e = self.omega(s)
        k, p = 1, s
        while p != e:
            p = self.table[p][s]
            k += 1
        return k

    def __repr__(self):
        tag = self.name or f"{len(self)} elements"
        return f"FiniteSemigroup({tag})"

    # -- JSON -----------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "labels": list(self.labels),
            "table": [list(row) for row in self.table],
            "identity": self.identity,
        }

    @classmethod
    def from_json(cls, data: dict, *, name: str | None = None, check: bool = True) -> "FiniteSemigroup":
        return cls(data["labels"], data["table"], data.get("identity"), name=name, check=check)


@dataclass(frozen=True)
class AxiomReport:
    kind: str
    ok: bool
    witness: tuple[str, ...] | None = None
    reason: str | None = None

    def __bool__(self):
        return self.ok


AXIOM_KINDS = ("LRB", "LRBG", "strict-LRBG", "central-idempotents")


def check_axioms(S: FiniteSemigroup, kind: str) -> AxiomReport:
    """Exhaustively verify the defining identities of the requested class.

    Returns the first violating pair (as labels) if any.
    """
    if kind not in AXIOM_KINDS:
        raise ValueError(f"unknown kind {kind!r}; expected one of {AXIOM_KINDS}")
    n = len(S)
    t = S.table
    if kind == "LRB":
        for x in range(n):
            if t[x][x] != x:
                return AxiomReport(kind, False, (S.labels[x],), "x^2 != x")
        for x in range(n):
            for y in range(n):
                xy = t[x][y]
                if t[xy][x] != xy:
                    return AxiomReport(kind, False, (S.labels[x], S.labels[y]), "xyx != xy")
        return AxiomReport(kind, True)

    for s in range(n):
        if t[S.omega(s)][s] != s:
            return AxiomReport(kind, False, (S.labels[s],), "s^w s != s")
    for s in range(n):
        w = S.omega(s)
        for u in range(n):
            st = t[s][u]
            if t[st][w] != st:
                return AxiomReport(kind, False, (S.labels[s], S.labels[u]), "s t s^w != s t")
    if kind == "LRBG":
        return AxiomReport(kind, True)

    if kind == "strict-LRBG":
        for s in range(n):
            for u in range(n):
                if S.omega(t[s][u]) != t[S.omega(s)][S.omega(u)]:
                    return AxiomReport(
                        kind, False, (S.labels[s], S.labels[u]), "(st)^w != s^w t^w"
                    )
        return AxiomReport(kind, True)

    # central-idempotents: a semilattice of groups, i.e. an LRBG in which
    # every idempotent commutes with every element
    for x in S.idempotents():
        for s in range(n):
            if t[x][s] != t[s][x]:
                return AxiomReport(
                    kind, False, (S.labels[x], S.labels[s]), "idempotent not central"
                )
    return AxiomReport(kind, True)


def idempotent_subsemigroup(S: FiniteSemigroup) -> tuple[FiniteSemigroup, tuple[int, ...]]:
    """The sub-LRB E(S) of an LRBG, with the embedding of its ids into S."""
    ids = S.idempotents()
    pos = {e: k for k, e in enumerate(ids)}
    try:
        table = [[pos[S.table[a][b]] for b in ids] for a in ids]
    except KeyError:
        a, b = next(
            (a, b) for a in ids for b in ids if S.table[a][b] not in pos
        )
        raise SemigroupError(
            f"idempotents are not closed under the product "
            f"({S.labels[a]} * {S.labels[b]} is not idempotent); not an LRBG"
        ) from None
    ident = pos.get(S.identity) if S.identity is not None else None
    E = FiniteSemigroup(
        [S.labels[e] for e in ids], table, ident,
        name=f"E({S.name})" if S.name else None, check=False,
    )
    return E, tuple(ids)


def leq(S: FiniteSemigroup, s: int, u: int) -> bool:
    """The partial order of an LRBG:  s <= u  iff  s u^w = u."""
    return S.table[s][S.omega(u)] == u


def related(S: FiniteSemigroup, s: int, u: int) -> bool:
    """The congruence ~:  s ~ u  iff  s^w u = s and u^w s = u."""
    return S.table[S.omega(s)][u] == s and S.table[S.omega(u)][s] == u


@dataclass(frozen=True)
class QuotientMap:
    """A surjective semigroup morphism presented by an assignment of ids."""

    source: FiniteSemigroup
    target: FiniteSemigroup
    assignment: tuple[int, ...]

    def __post_init__(self):
        if len(self.assignment) != len(self.source):
            raise SemigroupError("assignment must cover the source")
        if set(self.assignment) != set(range(len(self.target))):
            raise SemigroupError("assignment must be surjective")
        for a in range(len(self.source)):
            for b in range(len(self.source)):
                lhs = self.assignment[self.source.table[a][b]]
                rhs = self.target.table[self.assignment[a]][self.assignment[b]]
                if lhs != rhs:
                    raise SemigroupError(
                        f"not a morphism at ({self.source.labels[a]}, {self.source.labels[b]})"
                    )

    def __call__(self, s: int) -> int:
        return self.assignment[s]

    def fiber(self, t: int) -> list[int]:
        return [s for s, v in enumerate(self.assignment) if v == t]


def support_quotient(S: FiniteSemigroup) -> QuotientMap:
    """The quotient of an LRBG by ~, a semilattice of groups.

    Class labels wrap the label of the smallest-id representative in braces.
    """
    n = len(S)
    rep: list[int] = [-1] * n
    classes: list[int] = []
    for s in range(n):
        if rep[s] != -1:
            continue
        members = [u for u in range(n) if related(S, s, u)]
        for u in members:
            rep[u] = s
        classes.append(s)
    class_pos = {c: k for k, c in enumerate(classes)}
    assignment = tuple(class_pos[rep[s]] for s in range(n))

    table = [[-1] * len(classes) for _ in classes]
    for a, ca in enumerate(classes):
        for b, cb in enumerate(classes):
            table[a][b] = assignment[S.table[ca][cb]]
    # well-definedness: every pair of representatives must agree
    for s in range(n):
        for u in range(n):
            if table[assignment[s]][assignment[u]] != assignment[S.table[s][u]]:
                raise SemigroupError(
                    f"induced product ill-defined at ({S.labels[s]}, {S.labels[u]}); "
                    "source is not an LRBG"
                )
    labels = ["{" + S.labels[c] + "}" for c in classes]
    ident = assignment[S.identity] if S.identity is not None else None
    T = FiniteSemigroup(
        labels, table, ident, name=f"{S.name}/~" if S.name else None, check=False
    )
    return QuotientMap(S, T, assignment)


@dataclass(frozen=True)
class SubgroupView:
    """A maximal subgroup G_x = { s : s^w = x } inside its parent semigroup."""

    parent: FiniteSemigroup
    members: tuple[int, ...]
    identity_element: int

    def __post_init__(self):
        S = self.parent
        mem = set(self.members)
        x = self.identity_element
        if S.table[x][x] != x:
            raise SemigroupError(f"{S.labels[x]} is not idempotent")
        for a in self.members:
            if S.omega(a) != x:
                raise SemigroupError(f"{S.labels[a]} has omega power outside the group")
            for b in self.members:
                if S.table[a][b] not in mem:
                    raise SemigroupError("members not closed under the product")

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def mul(self, a: int, b: int) -> int:
        return self.parent.table[a][b]

    def inverse(self, a: int) -> int:
        k = self.parent.element_order(a)
        return self.identity_element if k == 1 else self.parent.power(a, k - 1)

    def is_abelian(self) -> bool:
        t = self.parent.table
        return all(t[a][b] == t[b][a] for a in self.members for b in self.members)

    def exponent(self) -> int:
        m = 1
        for a in self.members:
            k = self.parent.element_order(a)
            m = m * k // gcd(m, k)
        return m

    def as_semigroup(self) -> tuple[FiniteSemigroup, tuple[int, ...]]:
        """The group as a standalone table plus the id embedding."""
        ids = list(self.members)
        pos = {e: k for k, e in enumerate(ids)}
        table = [[pos[self.parent.table[a][b]] for b in ids] for a in ids]
        G = FiniteSemigroup(
            [self.parent.labels[e] for e in ids],
            table,
            pos[self.identity_element],
            check=False,
        )
        return G, tuple(ids)


def maximal_subgroup(S: FiniteSemigroup, x: int) -> SubgroupView:
    if not S.is_idempotent(x):
        raise SemigroupError(f"{S.labels[x]} is not idempotent")
    members = tuple(s for s in range(len(S)) if S.omega(s) == x)
    return SubgroupView(S, members, x)


def lambda_morphism(S: FiniteSemigroup, y: int, x: int) -> dict[int, int]:
    """Left multiplication by y as a group morphism G_x -> G_yx (verified)."""
    for e in (x, y):
        if not S.is_idempotent(e):
            raise SemigroupError(f"{S.labels[e]} is not idempotent")
    yx = S.table[y][x]
    images = {s: S.table[y][s] for s in maximal_subgroup(S, x)}
    target = set(maximal_subgroup(S, yx).members)
    for s, img in images.items():
        if img not in target:
            raise SemigroupError(
                f"y*s lands outside G_yx for s={S.labels[s]}; not an LRBG"
            )
    for a in images:
        for b in images:
            if images[S.table[a][b]] != S.table[images[a]][images[b]]:
                raise SemigroupError("left multiplication is not a morphism; not an LRBG")
    return images


def verify_isomorphism(
    source: FiniteSemigroup, target: FiniteSemigroup, mapping
) -> bool:
    """Whether an explicit bijection of element ids is a semigroup
    isomorphism.  ``mapping`` is a sequence or dict source-id -> target-id."""
    if isinstance(mapping, dict):
        mapping = [mapping[s] for s in range(len(source))]
    if len(mapping) != len(source) or len(source) != len(target):
        return False
    if sorted(mapping) != list(range(len(target))):
        return False
    for a in range(len(source)):
        for b in range(len(source)):
            if mapping[source.table[a][b]] != target.table[mapping[a]][mapping[b]]:
                return False
    return True


# -- small builders used across the library and the test-suite ----------


def free_lrb(n: int) -> FiniteSemigroup:
    """The free left regular band on n letters: injective words on [n],
    product = concatenate then delete repeated letters (keep first)."""
    from itertools import permutations

    words: list[tuple[int, ...]] = [()]
    for size in range(1, n + 1):
        for subset in _subsets(range(1, n + 1), size):
            words.extend(permutations(subset))
    words.sort(key=lambda w: (len(w), w))
    pos = {w: i for i, w in enumerate(words)}

    def prod(u, v):
        out = list(u)
        seen = set(u)
        for a in v:
            if a not in seen:
                out.append(a)
                seen.add(a)
        return tuple(out)

    table = [[pos[prod(u, v)] for v in words] for u in words]
    labels = ["".join(map(str, w)) if w else "e" for w in words]
    return FiniteSemigroup(labels, table, pos[()], name=f"F{n}", check=False)


def _subsets(items, size):
    from itertools import combinations

    return combinations(items, size)
