"""Set/integer compositions and partitions, plain and group-labeled.

A G-composition of [n] is an ordered list of disjoint nonempty blocks
covering [n], each labeled by a group element id; blocks are stored as
sorted tuples.  Integer versions keep only (size, label) pairs.
"""

from __future__ import annotations

from itertools import product
from math import factorial

# -- enumeration ---------------------------------------------------------


def set_compositions(n: int) -> list[tuple[tuple[int, ...], ...]]:
    """All ordered set partitions of [n] = {1..n}, blocks sorted ascending."""
    if n == 0:
        return [()]
    out = [((1,),)] if n == 1 else []
    if n == 1:
        return out
    smaller = set_compositions(n - 1)
    result = []
    for comp in smaller:
        for i, block in enumerate(comp):
            result.append(comp[:i] + (block + (n,),) + comp[i + 1 :])
        for i in range(len(comp) + 1):
            result.append(comp[:i] + ((n,),) + comp[i:])
    return result


def set_partitions(n: int) -> list[tuple[tuple[int, ...], ...]]:
    """All set partitions of [n], blocks sorted ascending, ordered by min."""
    seen = set()
    out = []
    for comp in set_compositions(n):
        canon = tuple(sorted(comp, key=lambda b: b[0]))
        if canon not in seen:
            seen.add(canon)
            out.append(canon)
    return out


def integer_compositions(n: int) -> list[tuple[int, ...]]:
    if n == 0:
        return [()]
    out = []
    for first in range(1, n + 1):
        for rest in integer_compositions(n - first):
            out.append((first,) + rest)
    return out


def integer_partitions(n: int, bound: int | None = None) -> list[tuple[int, ...]]:
    if n == 0:
        return [()]
    if bound is None:
        bound = n
    out = []
    for first in range(min(n, bound), 0, -1):
        for rest in integer_partitions(n - first, first):
            out.append((first,) + rest)
    return out


def labeled_compositions(n: int, k: int) -> list[tuple[tuple[int, int], ...]]:
    """Integer compositions of n with each part labeled by one of k ids."""
    out = []
    for comp in integer_compositions(n):
        for labels in product(range(k), repeat=len(comp)):
            out.append(tuple(zip(comp, labels)))
    return out


def labeled_partitions(n: int, k: int) -> list[tuple[tuple[int, int], ...]]:
    """Integer partitions of n with labeled parts, canonical descending order."""
    seen = set()
    out = []
    for comp in labeled_compositions(n, k):
        canon = canonical_partition(comp)
        if canon not in seen:
            seen.add(canon)
            out.append(canon)
    return out


def canonical_partition(parts: tuple[tuple[int, int], ...]) -> tuple[tuple[int, int], ...]:
    return tuple(sorted(parts, key=lambda p: (-p[0], p[1])))


# -- refinement orders and degrees ---------------------------------------


def refinement_groups(p: tuple[int, ...], q: tuple[int, ...]) -> list[list[int]] | None:
    """If q refines p, the list of index groups of q per part of p, else None.

    Group i collects the positions of the consecutive parts of q that sum
    to p[i].
    """
    groups: list[list[int]] = []
    j = 0
    for part in p:
        acc = 0
        group = []
        while acc < part:
            if j >= len(q):
                return None
            acc += q[j]
            group.append(j)
            j += 1
        if acc != part:
            return None
        groups.append(group)
    return groups if j == len(q) else None


def refines(p: tuple[tuple[int, int], ...], q: tuple[tuple[int, int], ...]) -> bool:
    """The order on labeled integer compositions:  p <= q  iff q is a
    label-preserving refinement of p (every refining part keeps p's label)."""
    groups = refinement_groups(tuple(s for s, _ in p), tuple(s for s, _ in q))
    if groups is None:
        return False
    for (_, label), group in zip(p, groups):
        if any(q[j][1] != label for j in group):
            return False
    return True


def char_refines(
    alpha: tuple[tuple[int, int], ...],
    beta: tuple[tuple[int, int], ...],
    dual_table,
) -> bool:
    """The order on character-labeled integer compositions: alpha <= beta iff
    beta refines alpha and the product of refining labels is the coarse label."""
    groups = refinement_groups(tuple(s for s, _ in alpha), tuple(s for s, _ in beta))
    if groups is None:
        return False
    ident = dual_table.identity
    for (_, label), group in zip(alpha, groups):
        acc = ident
        for j in group:
            acc = dual_table.table[acc][beta[j][1]]
        if acc != label:
            return False
    return True


def deg_and_degfact(p, q) -> tuple[int, int]:
    """deg(q/p) and deg!(q/p): per coarse block, the number of refining
    blocks (resp. its factorial), multiplied over blocks.

    Accepts labeled or unlabeled integer compositions; labels are ignored.
    """
    p_sizes = tuple(s for s, *_ in p) if p and isinstance(p[0], tuple) else tuple(p)
    q_sizes = tuple(s for s, *_ in q) if q and isinstance(q[0], tuple) else tuple(q)
    groups = refinement_groups(p_sizes, q_sizes)
    if groups is None:
        raise ValueError(f"{q_sizes} does not refine {p_sizes}")
    deg, degf = 1, 1
    for group in groups:
        deg *= len(group)
        degf *= factorial(len(group))
    return deg, degf


# -- rendering ------------------------------------------------------------


def render_block(block: tuple[int, ...]) -> str:
    if all(v <= 9 for v in block):
        return "".join(map(str, block))
    return ",".join(map(str, block))


def render_set_composition(blocks, labels, names) -> str:
    return "|".join(
        f"{render_block(b)}^{names[g]}" for b, g in zip(blocks, labels)
    )


def render_int_composition(parts, names) -> str:
    return "(" + ",".join(f"{s}^{names[g]}" for s, g in parts) + ")"


def render_int_partition(parts, names) -> str:
    return "{" + ",".join(f"{s}^{names[g]}" for s, g in canonical_partition(parts)) + "}"
