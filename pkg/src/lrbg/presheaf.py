"""Presheaves of finite groups over a left regular band.

A presheaf assigns a group to every base element and a morphism to every
pair x, y with yx = y, functorially.  Gluing the fibers with the product
(s, t) |-> Delta(s) Delta(t) produces exactly the strict LRBGs; conversely
a strict LRBG decomposes with fibers its maximal subgroups and deltas given
by left multiplication.  The same gluing product applied inside a
non-strict LRBG ("s t -> s^w t^w s t") repairs strictness in place.
"""

from __future__ import annotations

from dataclasses import dataclass

from .groups import opposite_group
from .hsiao import build_hsiao, set_composition_semigroup
from .semigroup import (
    FiniteSemigroup,
    SemigroupError,
    check_axioms,
    idempotent_subsemigroup,
    maximal_subgroup,
)


@dataclass
class GroupPresheaf:
    base: FiniteSemigroup
    fibers: dict[int, FiniteSemigroup]
    deltas: dict[tuple[int, int], tuple[int, ...]]

    def __post_init__(self):
        B = self.base
        if set(self.fibers) != set(range(len(B))):
            raise SemigroupError("every base element needs a fiber group")
        for (x, y), delta in self.deltas.items():
            if not self.below(x, y):
                raise SemigroupError(
                    f"delta given for non-related pair ({B.labels[x]}, {B.labels[y]})"
                )
            if len(delta) != len(self.fibers[x]):
                raise SemigroupError("delta must be defined on the whole fiber")
        for x in range(len(B)):
            for y in range(len(B)):
                if self.below(x, y) and (x, y) not in self.deltas:
                    raise SemigroupError(
                        f"missing delta for {B.labels[x]} below {B.labels[y]}"
                    )
        self._validate_morphisms()
        self._validate_functoriality()

    def below(self, x: int, y: int) -> bool:
        """The preorder: x below y whenever y x = y."""
        return self.base.table[y][x] == y

    def delta(self, x: int, y: int) -> tuple[int, ...]:
        return self.deltas[(x, y)]

    def _validate_morphisms(self):
        for (x, y), delta in self.deltas.items():
            Gx, Gy = self.fibers[x], self.fibers[y]
            if delta[Gx.identity] != Gy.identity:
                raise SemigroupError("delta does not preserve the identity")
            for a in range(len(Gx)):
                for b in range(len(Gx)):
                    if delta[Gx.table[a][b]] != Gy.table[delta[a]][delta[b]]:
                        raise SemigroupError(
                            f"delta {self.base.labels[x]} -> {self.base.labels[y]} "
                            "is not a group morphism"
                        )

    def _validate_functoriality(self):
        n = len(self.base)
        for x in range(n):
            ident = self.deltas[(x, x)]
            if any(ident[a] != a for a in range(len(self.fibers[x]))):
                raise SemigroupError("delta at equal elements must be the identity")
        for x in range(n):
            for y in range(n):
                if not self.below(x, y):
                    continue
                for z in range(n):
                    if not self.below(y, z):
                        continue
                    # x below z by transitivity of the preorder
                    d_xy, d_yz, d_xz = (
                        self.deltas[(x, y)],
                        self.deltas[(y, z)],
                        self.deltas[(x, z)],
                    )
                    for a in range(len(self.fibers[x])):
                        if d_yz[d_xy[a]] != d_xz[a]:
                            raise SemigroupError(
                                "functoriality fails through "
                                f"({self.base.labels[x]}, {self.base.labels[y]}, "
                                f"{self.base.labels[z]})"
                            )

    # -- JSON -----------------------------------------------------------

    def to_json(self) -> dict:
        B = self.base
        return {
            "base": B.to_json(),
            "fibers": {B.labels[x]: G.to_json() for x, G in self.fibers.items()},
            "deltas": {
                f"{B.labels[x]}<={B.labels[y]}": list(delta)
                for (x, y), delta in sorted(self.deltas.items())
            },
        }

    @classmethod
    def from_json(cls, data: dict) -> "GroupPresheaf":
        base = FiniteSemigroup.from_json(data["base"])
        fibers = {
            base.index(label): FiniteSemigroup.from_json(fib)
            for label, fib in data["fibers"].items()
        }
        deltas = {}
        for key, delta in data["deltas"].items():
            xl, yl = key.split("<=")
            deltas[(base.index(xl), base.index(yl))] = tuple(delta)
        return cls(base, fibers, deltas)


def semigroup_from_presheaf(P: GroupPresheaf) -> FiniteSemigroup:
    """The strict LRBG glued from a presheaf: pairs (x, g) multiplied by
    pushing both factors into the fiber over the base product."""
    carrier: list[tuple[int, int]] = []
    for x in range(len(P.base)):
        carrier.extend((x, g) for g in range(len(P.fibers[x])))
    pos = {p: i for i, p in enumerate(carrier)}

    def mul(a, b):
        (x, g), (y, h) = a, b
        xy = P.base.table[x][y]
        gg = P.deltas[(x, xy)][g]
        hh = P.deltas[(y, xy)][h]
        return (xy, P.fibers[xy].table[gg][hh])

    table = [[pos[mul(a, b)] for b in carrier] for a in carrier]
    labels = [f"{P.base.labels[x]}:{P.fibers[x].labels[g]}" for x, g in carrier]
    ident = None
    if P.base.identity is not None:
        ident = pos[(P.base.identity, P.fibers[P.base.identity].identity)]
    S = FiniteSemigroup(labels, table, ident, name="glued", check=False)
    S.presheaf_carrier = carrier  # type: ignore[attr-defined]
    return S


def strictify(S: FiniteSemigroup) -> FiniteSemigroup:
    """The modified product s . t = s^w t^w s t on the same carrier; the
    result is a strict LRBG and the product is unchanged when S already was
    one (in particular on any LRB)."""
    n = len(S)
    t = S.table

    def mul(a, b):
        return t[t[t[S.omega(a)][S.omega(b)]][a]][b]

    table = [[mul(a, b) for b in range(n)] for a in range(n)]
    return FiniteSemigroup(
        S.labels, table, S.identity, name=f"strictify({S.name})" if S.name else None
    )


def presheaf_from_strict(S: FiniteSemigroup) -> GroupPresheaf:
    """Decompose a strict LRBG: base E(S), fibers the maximal subgroups,
    deltas by left multiplication."""
    report = check_axioms(S, "strict-LRBG")
    if not report.ok:
        raise SemigroupError(
            f"not a strict LRBG: {report.reason} at {report.witness}"
        )
    E, embed = idempotent_subsemigroup(S)
    fibers = {}
    members_of = {}
    index_in_fiber = {}
    for k, x in enumerate(embed):
        G = maximal_subgroup(S, x)
        table, ids = G.as_semigroup()
        fibers[k] = table
        members_of[k] = ids
        index_in_fiber[k] = {s: i for i, s in enumerate(ids)}
    deltas = {}
    for i, x in enumerate(embed):
        for j, y in enumerate(embed):
            if S.table[y][x] != y:
                continue
            deltas[(i, j)] = tuple(
                index_in_fiber[j][S.table[y][s]] for s in members_of[i]
            )
    P = GroupPresheaf(E, fibers, deltas)
    P.members_of = members_of  # type: ignore[attr-defined]
    return P


def roundtrip_table_matches(S: FiniteSemigroup) -> bool:
    """Whether gluing the decomposition of a strict LRBG reproduces its
    table under the canonical bijection (x, g) -> the group element."""
    P = presheaf_from_strict(S)
    glued = semigroup_from_presheaf(P)
    carrier = glued.presheaf_carrier
    members_of = P.members_of
    to_S = [members_of[x][g] for x, g in carrier]
    n = len(S)
    if len(glued) != n:
        return False
    for a in range(n):
        for b in range(n):
            if to_S[glued.table[a][b]] != S.table[to_S[a]][to_S[b]]:
                return False
    return True


def hsiao_presheaf(n: int, G: FiniteSemigroup) -> GroupPresheaf:
    """The presheaf over set compositions with fibers powers of the opposite
    group; its glued semigroup is isomorphic to the G-composition LRBG."""
    base = set_composition_semigroup(n)
    comps = base.gcompositions
    Gop = opposite_group(G)
    fibers = {}
    for i, (blocks, _) in enumerate(comps):
        fibers[i] = _group_power(Gop, len(blocks))
    deltas = {}
    for i, (eb, _) in enumerate(comps):
        for j, (fb, _) in enumerate(comps):
            if base.table[j][i] != j:
                continue
            assignment = []
            for block in fb:
                owner = next(k for k, eblock in enumerate(eb) if set(block) <= set(eblock))
                assignment.append(owner)
            k_e, k_f = len(eb), len(fb)
            delta = []
            for g in range(len(G) ** k_e):
                digits = _digits(g, len(G), k_e)
                image = [digits[owner] for owner in assignment]
                delta.append(_undigits(image, len(G)))
            deltas[(i, j)] = tuple(delta)
    return GroupPresheaf(base, fibers, deltas)


def hsiao_presheaf_isomorphism(n: int, G: FiniteSemigroup) -> bool:
    """Check the explicit bijection (g_1..g_k over (S_1..S_k)) to the
    labeled composition against the directly built table."""
    P = hsiao_presheaf(n, G)
    glued = semigroup_from_presheaf(P)
    target = build_hsiao(n, G)
    comps = P.base.gcompositions
    to_target = []
    for x, g in glued.presheaf_carrier:
        blocks, _ = comps[x]
        labels = tuple(_digits(g, len(G), len(blocks)))
        to_target.append(target.index(
            "|".join(
                f"{''.join(map(str, b))}^{G.labels[lab]}" for b, lab in zip(blocks, labels)
            )
        ))
    if sorted(to_target) != list(range(len(target))):
        return False
    for a in range(len(glued)):
        for b in range(len(glued)):
            if to_target[glued.table[a][b]] != target.table[to_target[a]][to_target[b]]:
                return False
    return True


def _group_power(G: FiniteSemigroup, k: int) -> FiniteSemigroup:
    """G^k with elements encoded as base-|G| integers, digit i = factor i."""
    size = len(G) ** k
    table = []
    for a in range(size):
        da = _digits(a, len(G), k)
        row = []
        for b in range(size):
            db = _digits(b, len(G), k)
            row.append(_undigits([G.table[x][y] for x, y in zip(da, db)], len(G)))
        table.append(row)
    labels = [
        ".".join(G.labels[d] for d in _digits(a, len(G), k)) if k else "1"
        for a in range(size)
    ]
    ident = _undigits([G.identity] * k, len(G))
    return FiniteSemigroup(labels, table, ident, check=False)


def _digits(value: int, radix: int, width: int) -> list[int]:
    out = []
    for _ in range(width):
        out.append(value % radix)
        value //= radix
    return out


def _undigits(digits, radix: int) -> int:
    value = 0
    for d in reversed(digits):
        value = value * radix + d
    return value
