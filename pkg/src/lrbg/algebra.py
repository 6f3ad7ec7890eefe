"""Linear algebra over semigroup algebras with exact cyclotomic coefficients.

An AlgebraVector is a sparse map element-id -> Cyclo over a fixed semigroup
and cyclotomic order.  Products extend the multiplication table bilinearly.
All checks are exact.  Hot paths (pairwise orthogonality of large systems,
rank computations) run on denominator-cleared integers: arbitrary-precision
Python ints for eliminations, bounded int64 numpy matrices for bulk product
checks, with a static bound certifying the int64 arithmetic cannot overflow.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

import numpy as np

from .scalars import Cyclo, cyclotomic_polynomial, euler_phi, lcm
from .semigroup import (
    FiniteSemigroup,
    SemigroupError,
    maximal_subgroup,
    support_quotient,
)


class UnsupportedNonAbelian(SemigroupError):
    """Primitivity certification requires abelian maximal subgroups."""


class AlgebraVector:
    """A sparse element of the semigroup algebra, in the H-basis."""

    __slots__ = ("semigroup", "order", "coeffs")

    def __init__(self, semigroup: FiniteSemigroup, order: int, coeffs: dict[int, Cyclo]):
        self.semigroup = semigroup
        self.order = order
        clean = {}
        for k, v in coeffs.items():
            if not isinstance(v, Cyclo):
                v = Cyclo.rational(v, order)
            elif v.order != order:
                v = v.promote(order)
            if not v.is_zero():
                clean[k] = v
        self.coeffs = clean

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, S: FiniteSemigroup, order: int = 1) -> "AlgebraVector":
        return cls(S, order, {})

    @classmethod
    def basis(cls, S: FiniteSemigroup, s: int, order: int = 1) -> "AlgebraVector":
        return cls(S, order, {s: Cyclo.one(order)})

    @classmethod
    def unit(cls, S: FiniteSemigroup, order: int = 1) -> "AlgebraVector":
        if S.identity is None:
            raise SemigroupError("semigroup has no identity")
        return cls.basis(S, S.identity, order)

    # -- structure ------------------------------------------------------

    def support(self) -> list[int]:
        return sorted(self.coeffs)

    def __getitem__(self, s: int) -> Cyclo:
        return self.coeffs.get(s, Cyclo.zero(self.order))

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient_sum(self) -> Cyclo:
        acc = Cyclo.zero(self.order)
        for v in self.coeffs.values():
            acc = acc + v
        return acc

    def promote(self, order: int) -> "AlgebraVector":
        if order == self.order:
            return self
        return AlgebraVector(
            self.semigroup, order, {k: v.promote(order) for k, v in self.coeffs.items()}
        )

    def _pair(self, other: "AlgebraVector") -> tuple["AlgebraVector", "AlgebraVector"]:
        if self.semigroup is not other.semigroup and self.semigroup.table != other.semigroup.table:
            raise SemigroupError("vectors live over different semigroups")
        m = lcm(self.order, other.order)
        return self.promote(m), other.promote(m)

    # -- linear operations ----------------------------------------------

    def __add__(self, other: "AlgebraVector") -> "AlgebraVector":
        a, b = self._pair(other)
        out = dict(a.coeffs)
        for k, v in b.coeffs.items():
            out[k] = out[k] + v if k in out else v
        return AlgebraVector(a.semigroup, a.order, out)

    def __sub__(self, other: "AlgebraVector") -> "AlgebraVector":
        a, b = self._pair(other)
        out = dict(a.coeffs)
        for k, v in b.coeffs.items():
            out[k] = out[k] - v if k in out else -v
        return AlgebraVector(a.semigroup, a.order, out)

    def __neg__(self) -> "AlgebraVector":
        return AlgebraVector(self.semigroup, self.order, {k: -v for k, v in self.coeffs.items()})

    def scale(self, c) -> "AlgebraVector":
        if isinstance(c, Cyclo):
            m = lcm(self.order, c.order)
            cc = c.promote(m)
            return AlgebraVector(
                self.semigroup, m, {k: cc * v.promote(m) for k, v in self.coeffs.items()}
            )
        cc = Fraction(c)
        return AlgebraVector(self.semigroup, self.order, {k: v * cc for k, v in self.coeffs.items()})

    def __rmul__(self, c):
        if isinstance(c, (int, Fraction, Cyclo)):
            return self.scale(c)
        return NotImplemented

    # -- the H-basis product ----------------------------------------------

    def __mul__(self, other):
        if not isinstance(other, AlgebraVector):
            if isinstance(other, (int, Fraction, Cyclo)):
                return self.scale(other)
            return NotImplemented
        a, b = self._pair(other)
        table = a.semigroup.table
        out: dict[int, Cyclo] = {}
        for s, cs in a.coeffs.items():
            row = table[s]
            for t, ct in b.coeffs.items():
                u = row[t]
                prod = cs * ct
                out[u] = out[u] + prod if u in out else prod
        return AlgebraVector(a.semigroup, a.order, out)

    def __eq__(self, other):
        if not isinstance(other, AlgebraVector):
            return NotImplemented
        a, b = self._pair(other)
        return a.coeffs.keys() == b.coeffs.keys() and all(
            a.coeffs[k] == b.coeffs[k] for k in a.coeffs
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self):
        return f"AlgebraVector({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in sorted(self.coeffs):
            c = self.coeffs[k]
            label = self.semigroup.labels[k]
            cs = str(c)
            if cs == "1":
                parts.append(f"H[{label}]")
            elif cs == "-1":
                parts.append(f"-H[{label}]")
            elif ("+" in cs[1:]) or ("-" in cs[1:]) or " " in cs:
                parts.append(f"({cs})*H[{label}]")
            else:
                parts.append(f"{cs}*H[{label}]")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    # -- JSON ----------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "semigroup": self.semigroup.name or f"semigroup-{len(self.semigroup)}",
            "order": self.order,
            "coeffs": {
                self.semigroup.labels[k]: v.to_json() for k, v in sorted(self.coeffs.items())
            },
        }

    @classmethod
    def from_json(cls, S: FiniteSemigroup, data: dict) -> "AlgebraVector":
        order = int(data["order"])
        coeffs = {
            S.index(label): Cyclo.from_json(cj) for label, cj in data["coeffs"].items()
        }
        return cls(S, order, coeffs)


def h_multiply(a: AlgebraVector, b: AlgebraVector) -> AlgebraVector:
    return a * b


def is_idempotent(a: AlgebraVector) -> bool:
    return a * a == a


def sum_vectors(vectors, S: FiniteSemigroup | None = None, order: int = 1) -> AlgebraVector:
    vectors = list(vectors)
    if not vectors:
        if S is None:
            raise ValueError("cannot sum an empty family without a semigroup")
        return AlgebraVector.zero(S, order)
    acc = vectors[0]
    for v in vectors[1:]:
        acc = acc + v
    return acc


@dataclass
class LinearMap:
    """A linear map between semigroup algebras given on basis elements."""

    source: FiniteSemigroup
    target: FiniteSemigroup
    images: dict[int, AlgebraVector]
    multiplicative: bool = False

    def __call__(self, v: AlgebraVector) -> AlgebraVector:
        order = v.order
        for img in self.images.values():
            order = lcm(order, img.order)
        acc = AlgebraVector.zero(self.target, order)
        for s, c in v.coeffs.items():
            acc = acc + self.images[s].promote(order).scale(c.promote(order))
        return acc

    def verify_multiplicative(self) -> bool:
        n = len(self.source)
        for s in range(n):
            for t in range(n):
                lhs = self.images[self.source.table[s][t]]
                rhs = self.images[s] * self.images[t]
                if lhs != rhs:
                    return False
        return True


def supp_map(S: FiniteSemigroup) -> LinearMap:
    """The linear extension H_s -> H_supp(s) of the support quotient."""
    q = support_quotient(S)
    images = {s: AlgebraVector.basis(q.target, q(s)) for s in range(len(S))}
    lm = LinearMap(S, q.target, images, multiplicative=True)
    lm.quotient = q  # type: ignore[attr-defined]
    return lm


# -- denominator-cleared integer internals ---------------------------------
#
# A cleared vector is a dict id -> tuple of euler_phi(order) Python ints:
# the vector times the lcm of its coefficient denominators.  Rank and
# zero-ness are invariant under the scaling, which is all the hot paths need.

IntVec = dict[int, tuple[int, ...]]


def _clear_denominators(v: AlgebraVector, order: int) -> IntVec:
    w = v.promote(order)
    den = 1
    for c in w.coeffs.values():
        for q in c.coeffs:
            den = den * q.denominator // gcd(den, q.denominator)
    return {s: tuple(int(q * den) for q in c.coeffs) for s, c in w.coeffs.items()}


def _tuple_mul(a: tuple[int, ...], b: tuple[int, ...], phi: tuple[int, ...], d: int):
    if d == 1:
        return (a[0] * b[0],)
    raw = [0] * (2 * d - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                if cb:
                    raw[i + j] += ca * cb
    for k in range(2 * d - 2, d - 1, -1):
        c = raw[k]
        if c:
            for j in range(d):
                raw[k - d + j] -= c * phi[j]
    return tuple(raw[:d])


def _int_h_mul(table, a: IntVec, b: IntVec, phi, d) -> IntVec:
    out: IntVec = {}
    if d == 1:
        for s, (ca,) in a.items():
            row = table[s]
            for t, (cb,) in b.items():
                u = row[t]
                prod = ca * cb
                if u in out:
                    out[u] = (out[u][0] + prod,)
                else:
                    out[u] = (prod,)
    else:
        zero = (0,) * d
        for s, ca in a.items():
            row = table[s]
            for t, cb in b.items():
                u = row[t]
                prod = _tuple_mul(ca, cb, phi, d)
                cur = out.get(u, zero)
                out[u] = tuple(x + y for x, y in zip(cur, prod))
    return {k: v for k, v in out.items() if any(v)}


def _strip_content(row: IntVec) -> IntVec:
    g = 0
    for tup in row.values():
        for x in tup:
            g = gcd(g, x)
            if g == 1:
                return row
    if g <= 1:
        return row
    return {k: tuple(x // g for x in tup) for k, tup in row.items()}


def _int_rank(rows: list[IntVec], order: int) -> int:
    """Exact rank of integer-cleared rows over Q(zeta_order).

    Fraction-free Gaussian elimination: the eliminated row is cross-scaled
    by the pivot's leading entry, so everything stays integral; pivot rows
    are kept mutually reduced, which makes each later elimination a single
    pass.  Content gcds are stripped to keep the integers small.
    """
    d = euler_phi(order)
    phi = cyclotomic_polynomial(order)
    pivots: dict[int, IntVec] = {}
    rank = 0
    queue = [dict(r) for r in rows if r]
    queue.sort(key=len, reverse=True)
    while queue:
        row = queue.pop()
        for col in sorted(row):
            if col not in pivots:
                continue
            lead = row.get(col)
            if lead is None or not any(lead):
                continue
            prow = pivots[col]
            plead = prow[col]
            new: IntVec = {}
            for c in row.keys() | prow.keys():
                left = _tuple_mul(plead, row.get(c, (0,) * d), phi, d)
                right = _tuple_mul(lead, prow.get(c, (0,) * d), phi, d)
                val = tuple(x - y for x, y in zip(left, right))
                if any(val):
                    new[c] = val
            row = _strip_content(new)
        if not row:
            continue
        col = min(row)
        lead = row[col]
        # keep pivot rows mutually reduced so eliminations never reintroduce
        # an already-cleared pivot column
        for pcol, prow in list(pivots.items()):
            if col in prow:
                other = prow[col]
                new = {}
                for c in prow.keys() | row.keys():
                    left = _tuple_mul(lead, prow.get(c, (0,) * d), phi, d)
                    right = _tuple_mul(other, row.get(c, (0,) * d), phi, d)
                    val = tuple(x - y for x, y in zip(left, right))
                    if any(val):
                        new[c] = val
                pivots[pcol] = _strip_content(new)
        pivots[col] = row
        rank += 1
    return rank


def exact_rank(rows: list[AlgebraVector]) -> int:
    """Rank of a family of algebra vectors over Q(zeta_m), exactly."""
    if not rows:
        return 0
    order = 1
    for r in rows:
        order = lcm(order, r.order)
    cleared = [_clear_denominators(r, order) for r in rows]
    return _int_rank([c for c in cleared if c], order)


class SpanChecker:
    """Membership tests against the span of a fixed family, reusing one
    row reduction of the family instead of a fresh rank per query."""

    def __init__(self, basis: list[AlgebraVector], order: int | None = None):
        m = order or 1
        for v in basis:
            m = lcm(m, v.order)
        self.order = m
        self.d = euler_phi(m)
        self.phi = cyclotomic_polynomial(m)
        self.pivots: dict[int, IntVec] = {}
        self.rank = 0
        for v in basis:
            self._absorb(_clear_denominators(v, m))

    def _reduce(self, row: IntVec) -> IntVec:
        d, phi = self.d, self.phi
        for col in sorted(row):
            if col not in self.pivots:
                continue
            lead = row.get(col)
            if lead is None or not any(lead):
                continue
            prow = self.pivots[col]
            plead = prow[col]
            new: IntVec = {}
            for c in row.keys() | prow.keys():
                left = _tuple_mul(plead, row.get(c, (0,) * d), phi, d)
                right = _tuple_mul(lead, prow.get(c, (0,) * d), phi, d)
                val = tuple(x - y for x, y in zip(left, right))
                if any(val):
                    new[c] = val
            row = _strip_content(new)
        return row

    def _absorb(self, row: IntVec) -> bool:
        """Add a row to the span; True if it enlarged the span."""
        row = self._reduce(dict(row))
        if not row:
            return False
        col = min(row)
        lead = row[col]
        d, phi = self.d, self.phi
        for pcol, prow in list(self.pivots.items()):
            if col in prow:
                other = prow[col]
                new = {}
                for c in prow.keys() | row.keys():
                    left = _tuple_mul(lead, prow.get(c, (0,) * d), phi, d)
                    right = _tuple_mul(other, row.get(c, (0,) * d), phi, d)
                    val = tuple(x - y for x, y in zip(left, right))
                    if any(val):
                        new[c] = val
                self.pivots[pcol] = _strip_content(new)
        self.pivots[col] = row
        self.rank += 1
        return True

    def contains(self, v: AlgebraVector) -> bool:
        if self.order % v.order != 0:
            raise SemigroupError("vector order does not divide the span order")
        return not self._reduce(_clear_denominators(v, self.order))


# -- primitivity ------------------------------------------------------------


def _corner_rank_via_supp(e: AlgebraVector, supp: LinearMap) -> int:
    T = supp.target
    ebar = supp(e)
    if ebar.is_zero():
        return 0
    order = ebar.order
    d = euler_phi(order)
    phi = cyclotomic_polynomial(order)
    A = _clear_denominators(ebar, order)
    table = T.table
    rows: list[IntVec] = []
    for t in range(len(T)):
        # H_t * ebar is a collision-summed row permutation of ebar
        w: IntVec = {}
        trow = table[t]
        zero = (0,) * d
        for s, c in A.items():
            u = trow[s]
            cur = w.get(u, zero)
            w[u] = tuple(x + y for x, y in zip(cur, c))
        w = {k: v for k, v in w.items() if any(v)}
        rows.append(_int_h_mul(table, A, w, phi, d))
    return _int_rank([r for r in rows if r], order)


def _assert_abelian_quotient(T: FiniteSemigroup) -> None:
    for x in T.idempotents():
        if not maximal_subgroup(T, x).is_abelian():
            raise UnsupportedNonAbelian(
                f"maximal subgroup at {T.labels[x]} is non-abelian"
            )


def is_primitive(e: AlgebraVector, supp: LinearMap) -> bool:
    """Primitivity through the semisimple quotient of an LRBaG algebra.

    Tests dim(e~ . CT . e~) = 1 for the image e~ of e in the quotient: the
    corner-dimension criterion for split semisimple algebras.  Raises
    UnsupportedNonAbelian when the quotient has a non-abelian maximal
    subgroup (the quotient then has matrix blocks and this tool does not
    guess).
    """
    if not is_idempotent(e):
        raise SemigroupError("primitivity is only defined for idempotents")
    if e.is_zero():
        return False
    _assert_abelian_quotient(supp.target)
    return _corner_rank_via_supp(e, supp) == 1


def corner_dimension_in_span(e: AlgebraVector, spanning: list[AlgebraVector]) -> int:
    """dim(e * span * e): 1 certifies primitivity inside the spanned subalgebra."""
    order = e.order
    for v in spanning:
        order = lcm(order, v.order)
    d = euler_phi(order)
    phi = cyclotomic_polynomial(order)
    table = e.semigroup.table
    A = _clear_denominators(e, order)
    rows = []
    for v in spanning:
        B = _clear_denominators(v, order)
        rows.append(_int_h_mul(table, _int_h_mul(table, A, B, phi, d), A, phi, d))
    return _int_rank([r for r in rows if r], order)


# -- CSoPOI verification -----------------------------------------------------


@dataclass
class CsopoiReport:
    idempotent: bool
    orthogonal: bool
    complete: bool
    primitive: bool | None
    witnesses: dict[str, object] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        basics = self.idempotent and self.orthogonal and self.complete
        return basics and (self.primitive is None or self.primitive)

    def summary(self) -> str:
        def verdict(flag):
            if flag is None:
                return "skipped"
            return "pass" if flag else "FAIL"

        return (
            f"idempotent: {verdict(self.idempotent)}  "
            f"orthogonal: {verdict(self.orthogonal)}  "
            f"complete: {verdict(self.complete)}  "
            f"primitive: {verdict(self.primitive)}"
        )


def verify_csopoi(
    system: list[AlgebraVector],
    *,
    supp: LinearMap | None = None,
    subalgebra: list[AlgebraVector] | None = None,
    check_primitivity: bool = True,
) -> CsopoiReport:
    """Check that a family is a complete system of primitive orthogonal
    idempotents.

    Idempotency, orthogonality and completeness are exact computations in
    the ambient algebra.  Primitivity is certified through the semisimple
    quotient (``supp``; built from the semigroup when omitted), or as a
    corner-dimension check inside the span of ``subalgebra`` when the
    system lives in a proper subalgebra.  With ``check_primitivity=False``
    the primitive field is None.
    """
    if not system:
        raise ValueError("empty system")
    S = system[0].semigroup
    if S.identity is None:
        raise SemigroupError("completeness requires an identity element")
    witnesses: dict[str, object] = {}

    idem_ok, orth_ok = _products_check(system, witnesses)

    total = sum_vectors(system)
    complete_ok = total == AlgebraVector.unit(S, total.order)
    if not complete_ok:
        witnesses["complete"] = str(total)

    primitive_ok: bool | None = None
    if check_primitivity and idem_ok:
        if subalgebra is not None:
            primitive_ok = True
            for i, e in enumerate(system):
                if e.is_zero() or corner_dimension_in_span(e, subalgebra) != 1:
                    primitive_ok = False
                    witnesses["primitive"] = i
                    break
        else:
            the_supp = supp if supp is not None else supp_map(S)
            _assert_abelian_quotient(the_supp.target)
            primitive_ok = True
            for i, e in enumerate(system):
                if e.is_zero() or _corner_rank_via_supp(e, the_supp) != 1:
                    primitive_ok = False
                    witnesses["primitive"] = i
                    break

    return CsopoiReport(idem_ok, orth_ok, complete_ok, primitive_ok, witnesses)


def _products_check(system: list[AlgebraVector], witnesses: dict) -> tuple[bool, bool]:
    """All pairwise products e_i e_j compared against delta_ij e_i."""
    fast = _try_fast_products(system)
    if fast is not None:
        idem_bad, orth_bad = fast
    else:
        idem_bad, orth_bad = None, None
        n = len(system)
        for i in range(n):
            if not (system[i] * system[i] == system[i]):
                idem_bad = i
                break
        if idem_bad is None:
            for i in range(n):
                for j in range(n):
                    if i != j and not (system[i] * system[j]).is_zero():
                        orth_bad = (i, j)
                        break
                if orth_bad:
                    break
    if idem_bad is not None:
        witnesses["idempotent"] = idem_bad
    if orth_bad is not None:
        witnesses["orthogonal"] = orth_bad
    return idem_bad is None, orth_bad is None


# -- bounded-integer bulk product check ------------------------------------

_FAST_THRESHOLD = 2_000_000  # pairwise work estimate below which dicts win
_INT64_SAFE = 2**62


def _try_fast_products(system: list[AlgebraVector]):
    """Exact pairwise-product check on int64 matrices, or None to fall back.

    Clears denominators per vector, convolves cyclotomic coordinate planes
    with integer matrix products, reduces modulo the cyclotomic polynomial,
    and compares with delta_ij times the cross-scaled vectors.  Used only
    when a static bound certifies the int64 arithmetic cannot overflow.
    """
    S = system[0].semigroup
    n = len(S)
    N = len(system)
    order = 1
    for v in system:
        order = lcm(order, v.order)
    d = euler_phi(order)
    work = sum(len(a.coeffs) for a in system) ** 2
    if work < _FAST_THRESHOLD or d > 4:
        return None

    cleared = [_clear_denominators(v, order) for v in system]
    planes = np.zeros((d, n, N), dtype=np.int64)
    max_abs = 0
    for j, c in enumerate(cleared):
        for s, tup in c.items():
            for k, val in enumerate(tup):
                planes[k, s, j] = val
                max_abs = max(max_abs, abs(val))
    scale_list = [
        max(1, _vector_scale(c, sys_v, order)) for c, sys_v in zip(cleared, system)
    ]

    max_support = max((len(c) for c in cleared), default=0)
    conv_bound = max_support * max_abs * max_abs * d
    phi_poly = cyclotomic_polynomial(order)
    red_factor = 1 + sum(abs(c) for c in phi_poly)
    bound = conv_bound * (red_factor ** max(0, d - 1))
    # the comparison side scales the cleared vectors once more
    bound = max(bound, max_abs * max(scale_list))
    if bound >= _INT64_SAFE or max_abs == 0:
        return None

    table = np.asarray(S.table, dtype=np.int64)
    cols = np.arange(n)
    scales = np.array(scale_list, dtype=np.int64)

    for i, c in enumerate(cleared):
        left = np.zeros((d, n, n), dtype=np.int64)
        for s, tup in c.items():
            rows = table[s]
            for k, val in enumerate(tup):
                if val:
                    np.add.at(left[k], (rows, cols), val)
        raw = np.zeros((2 * d - 1, n, N), dtype=np.int64)
        for a in range(d):
            la = left[a]
            for b in range(d):
                raw[a + b] += la @ planes[b]
        for k in range(2 * d - 2, d - 1, -1):
            top = raw[k].copy()
            if top.any():
                for j2 in range(d):
                    coef = phi_poly[j2]
                    if coef:
                        raw[k - d + j2] -= coef * top
                raw[k] = 0
        prods = raw[:d]
        for j in range(N):
            got = prods[:, :, j]
            if i == j:
                # scaled_i * scaled_i = D_i^2 v_i^2 must equal D_i * scaled_i
                if not np.array_equal(got, planes[:, :, i] * scales[i]):
                    return i, None
            elif got.any():
                return None, (i, j)
    return None, None


def _vector_scale(cleared: IntVec, original: AlgebraVector, order: int) -> int:
    """The denominator D with cleared = D * original (1 for the zero vector)."""
    w = original.promote(order)
    for s, tup in cleared.items():
        frac = w.coeffs[s].coeffs
        for int_val, q in zip(tup, frac):
            if q != 0:
                scale = Fraction(int_val) / q
                return int(scale)
    return 1
