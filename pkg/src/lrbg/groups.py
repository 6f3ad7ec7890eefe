"""Group tables: built-in finite groups, duals of abelian groups, wreath products."""

from __future__ import annotations

from itertools import permutations, product
from math import gcd

from .scalars import Cyclo
from .semigroup import FiniteSemigroup, SemigroupError

MACRON = "̄"  # combining overline, used for negative signed-permutation letters


def trivial_group() -> FiniteSemigroup:
    return FiniteSemigroup(["1"], [[0]], 0, name="1", check=False)


def cyclic_group(n: int, labels: list[str] | None = None) -> FiniteSemigroup:
    if labels is None:
        labels = ["1"] + ["a" * k for k in range(1, n)]
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return FiniteSemigroup(labels, table, 0, name=f"C{n}", check=False)


def direct_product(G: FiniteSemigroup, H: FiniteSemigroup, name: str | None = None) -> FiniteSemigroup:
    pairs = [(a, b) for a in range(len(G)) for b in range(len(H))]
    pos = {p: i for i, p in enumerate(pairs)}
    table = [
        [pos[(G.table[a][c], H.table[b][d])] for (c, d) in pairs] for (a, b) in pairs
    ]
    labels = [
        f"{G.labels[a]}.{H.labels[b]}" for (a, b) in pairs
    ]
    ident = None
    if G.identity is not None and H.identity is not None:
        ident = pos[(G.identity, H.identity)]
    return FiniteSemigroup(labels, table, ident, name=name, check=False)


def symmetric_group(n: int) -> FiniteSemigroup:
    elems = sorted(permutations(range(1, n + 1)))
    pos = {p: i for i, p in enumerate(elems)}
    # (s*t)(i) = s(t(i)): s after t
    table = [
        [pos[tuple(s[t[i] - 1] for i in range(n))] for t in elems] for s in elems
    ]
    labels = ["".join(map(str, p)) for p in elems]
    ident = pos[tuple(range(1, n + 1))]
    return FiniteSemigroup(labels, table, ident, name=f"S{n}", check=False)


def opposite_group(G: FiniteSemigroup) -> FiniteSemigroup:
    n = len(G)
    table = [[G.table[j][i] for j in range(n)] for i in range(n)]
    return FiniteSemigroup(G.labels, table, G.identity, name=f"{G.name}^op" if G.name else None, check=False)


def c2() -> FiniteSemigroup:
    return FiniteSemigroup(["+", "-"], [[0, 1], [1, 0]], 0, name="C2", check=False)


BUILTIN_GROUPS = {
    "trivial": trivial_group,
    "C2": c2,
    "C3": lambda: cyclic_group(3),
    "C4": lambda: cyclic_group(4),
    "C2xC2": lambda: direct_product(c2(), c2(), name="C2xC2"),
    "S3": lambda: symmetric_group(3),
}


def builtin_group(name: str) -> FiniteSemigroup:
    try:
        return BUILTIN_GROUPS[name]()
    except KeyError:
        raise SemigroupError(
            f"unknown group {name!r}; built-ins are {sorted(BUILTIN_GROUPS)}"
        ) from None


def is_group(S: FiniteSemigroup) -> bool:
    if S.identity is None:
        return False
    return all(S.omega(s) == S.identity for s in range(len(S)))


def is_abelian(S: FiniteSemigroup) -> bool:
    n = len(S)
    return all(S.table[a][b] == S.table[b][a] for a in range(n) for b in range(n))


def group_exponent(G: FiniteSemigroup) -> int:
    m = 1
    for s in range(len(G)):
        k = G.element_order(s)
        m = m * k // gcd(m, k)
    return m


def abelian_characters(G: FiniteSemigroup, order: int | None = None) -> list[dict[int, Cyclo]]:
    """All |G| characters of an abelian group table, as id -> root-of-unity maps.

    Characters are found by greedy generator extraction: values on a greedy
    generating set are brute-forced over compatible roots of unity, extended
    multiplicatively, and validated as homomorphisms against the full table.
    """
    if not is_group(G):
        raise SemigroupError("character table requires a group")
    if not is_abelian(G):
        raise SemigroupError("non-abelian group: character basis unsupported")
    e = G.identity
    n = len(G)
    m = group_exponent(G)
    target_order = order or m
    if target_order % m:
        raise SemigroupError(f"order {target_order} cannot hold values of exponent {m}")

    def closure(gens: list[int]) -> set[int]:
        out = {e}
        frontier = [e]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = G.table[x][g]
                if y not in out:
                    out.add(y)
                    frontier.append(y)
        return out

    gens: list[int] = []
    generated = {e}
    while len(generated) < n:
        candidates = [s for s in range(n) if s not in generated]
        g = max(candidates, key=G.element_order)
        gens.append(g)
        generated = closure(gens)

    choices = []
    for g in gens:
        d = G.element_order(g)
        choices.append([Cyclo.zeta(target_order, k * (target_order // d)) for k in range(d)])

    found: dict[tuple, dict[int, Cyclo]] = {}
    for assignment in product(*choices):
        values: dict[int, Cyclo] = {e: Cyclo.one(target_order)}
        frontier = [e]
        ok = True
        while frontier and ok:
            x = frontier.pop()
            for g, val in zip(gens, assignment):
                y = G.table[x][g]
                v = values[x] * val
                if y in values:
                    if values[y] != v:
                        ok = False
                        break
                else:
                    values[y] = v
                    frontier.append(y)
        if not ok or len(values) != n:
            continue
        if any(
            values[G.table[a][b]] != values[a] * values[b]
            for a in range(n)
            for b in range(n)
        ):
            continue
        key = tuple(tuple(values[s].coeffs) for s in range(n))
        found.setdefault(key, values)
    if len(found) != n:
        raise SemigroupError(
            f"found {len(found)} characters for a group of order {n}"
        )
    return list(found.values())


def dual_group(G: FiniteSemigroup, order: int | None = None) -> tuple[FiniteSemigroup, list[dict[int, Cyclo]]]:
    """The dual of an abelian group as a group table plus value maps.

    Characters are named ``trv`` (trivial) and, for order-2 groups, ``sgn``;
    otherwise ``chi1``, ``chi2``, ... in a deterministic order.
    """
    chars = abelian_characters(G, order)
    n = len(G)

    def is_trivial(ch):
        return all(ch[s] == 1 for s in range(n))

    chars.sort(key=lambda ch: tuple(tuple(ch[s].coeffs) for s in range(n)))
    chars.sort(key=lambda ch: not is_trivial(ch))
    if n == 2:
        names = ["trv", "sgn"]
    else:
        names = ["trv"] + [f"chi{k}" for k in range(1, n)]

    key_of = {tuple(tuple(ch[s].coeffs) for s in range(n)): i for i, ch in enumerate(chars)}
    table = []
    for a in chars:
        row = []
        for b in chars:
            prod_vals = {s: a[s] * b[s] for s in range(n)}
            row.append(key_of[tuple(tuple(prod_vals[s].coeffs) for s in range(n))])
        table.append(row)
    dual = FiniteSemigroup(names, table, 0, name=f"{G.name}^" if G.name else None, check=False)
    return dual, chars


def wreath_group(n: int, G: FiniteSemigroup, max_elements: int = 100_000) -> FiniteSemigroup:
    """The wreath product of G by the symmetric group on n letters.

    Elements are pairs (sigma, colors) with sigma in one-line notation and a
    color in G per position; the product composes positions through the right
    factor's permutation:  ((sigma,g)(tau,h))_i = (sigma_{tau_i}, g_{tau_i} h_i).
    """
    if not is_group(G):
        raise SemigroupError("wreath product requires a group of colors")
    size = 1
    for k in range(2, n + 1):
        size *= k
    size *= len(G) ** n
    if size > max_elements:
        raise SemigroupError(f"wreath product would have {size} elements (limit {max_elements})")

    elems = [
        (sigma, colors)
        for sigma in sorted(permutations(range(1, n + 1)))
        for colors in product(range(len(G)), repeat=n)
    ]
    pos = {w: i for i, w in enumerate(elems)}

    def mul(a, b):
        sigma, g = a
        tau, h = b
        return (
            tuple(sigma[tau[i] - 1] for i in range(n)),
            tuple(G.table[g[tau[i] - 1]][h[i]] for i in range(n)),
        )

    table = [[pos[mul(a, b)] for b in elems] for a in elems]
    labels = [wreath_label(w, G) or "()" for w in elems]
    ident = pos[(tuple(range(1, n + 1)), (G.identity,) * n)]
    W = FiniteSemigroup(labels, table, ident, name=f"S{n}[{G.name}]", check=False)
    W.wreath_elements = elems  # type: ignore[attr-defined]
    return W


def wreath_label(w: tuple[tuple[int, ...], tuple[int, ...]], G: FiniteSemigroup) -> str:
    sigma, colors = w
    two = set(G.labels) == {"+", "-"}
    tokens = []
    for v, g in zip(sigma, colors):
        if two:
            tokens.append(f"{v}{MACRON}" if G.labels[g] == "-" else str(v))
        elif g == G.identity:
            tokens.append(str(v))
        else:
            tokens.append(f"{v}^{G.labels[g]}")
    return " ".join(tokens)


def parse_signed_permutation(text: str) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Parse signed-permutation one-line notation such as ``3 5 7̄ 8̄ 2̄ 4 1 6``.

    Accepts a trailing combining macron, a leading or trailing ``-``, for the
    negative letters.  Returns (sigma, colors) with colors 0 = plus, 1 = minus.
    """
    values: list[int] = []
    signs: list[int] = []
    for token in text.split():
        neg = False
        if token.startswith("-"):
            neg, token = True, token[1:]
        if token.endswith("-"):
            neg, token = True, token[:-1]
        if token.endswith(MACRON):
            neg, token = True, token[: -len(MACRON)]
        values.append(int(token))
        signs.append(1 if neg else 0)
    return tuple(values), tuple(signs)
