"""Exact arithmetic in cyclotomic fields Q(zeta_m).

Scalars are stored in the power basis 1, z, ..., z^(phi(m)-1) of Q(zeta_m),
always reduced modulo the m-th cyclotomic polynomial, so equality of
coefficient tuples is equality of field elements.  Rational coefficients are
``fractions.Fraction`` throughout; nothing here is ever rounded.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


class OrderMismatch(ValueError):
    """Raised when combining scalars of different cyclotomic orders.

    Callers must promote explicitly with :meth:`Cyclo.promote`.
    """


def euler_phi(m: int) -> int:
    if m < 1:
        raise ValueError("order must be a positive integer")
    phi, k, n = 1, 2, m
    while k * k <= n:
        if n % k == 0:
            n //= k
            phi *= k - 1
            while n % k == 0:
                n //= k
                phi *= k
        k += 1
    if n > 1:
        phi *= n - 1
    return phi


def _poly_divmod_int(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Exact division of integer polynomials; den must be monic."""
    num = list(num)
    dd = len(den) - 1
    if den[-1] != 1:
        raise ValueError("divisor must be monic")
    quot = [0] * max(1, len(num) - dd)
    for k in range(len(num) - 1, dd - 1, -1):
        c = num[k]
        if c:
            quot[k - dd] = c
            for j in range(dd + 1):
                num[k - dd + j] -= c * den[j]
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return quot, num


_CYCLO_CACHE: dict[int, tuple[int, ...]] = {}


def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Coefficients of Phi_m, ascending degree, monic, length phi(m)+1."""
    if m in _CYCLO_CACHE:
        return _CYCLO_CACHE[m]
    if m < 1:
        raise ValueError("order must be a positive integer")
    # Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d
    poly = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            poly, rem = _poly_divmod_int(poly, list(cyclotomic_polynomial(d)))
            if any(rem[1:]) or rem[0] != 0:
                raise AssertionError("cyclotomic division left a remainder")
    result = tuple(poly)
    _CYCLO_CACHE[m] = result
    return result


def _reduce(coeffs: list[Fraction], m: int) -> tuple[Fraction, ...]:
    """Reduce a polynomial in zeta_m modulo Phi_m; pad to length phi(m)."""
    phi = euler_phi(m)
    mod = cyclotomic_polynomial(m)
    work = list(coeffs)
    for k in range(len(work) - 1, phi - 1, -1):
        c = work[k]
        if c:
            for j in range(phi + 1):
                work[k - phi + j] -= c * mod[j]
    work = work[:phi]
    work += [Fraction(0)] * (phi - len(work))
    return tuple(work)


_ZETA_POWERS: dict[tuple[int, int], tuple[Fraction, ...]] = {}


def _zeta_power(m: int, k: int) -> tuple[Fraction, ...]:
    """Reduced coefficient tuple of zeta_m^k."""
    k %= m
    key = (m, k)
    if key not in _ZETA_POWERS:
        raw = [Fraction(0)] * (k + 1)
        raw[k] = Fraction(1)
        _ZETA_POWERS[key] = _reduce(raw, m)
    return _ZETA_POWERS[key]


class Cyclo:
    """An element of Q(zeta_m) in reduced power-basis form (immutable)."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs):
        phi = euler_phi(order)
        tup = tuple(Fraction(c) for c in coeffs)
        if len(tup) != phi:
            tup = _reduce(list(tup), order)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", tup)

    def __setattr__(self, name, value):
        raise AttributeError("Cyclo values are immutable")

    # -- constructors ------------------------------------------------

    @classmethod
    def rational(cls, value, order: int = 1) -> "Cyclo":
        coeffs = [Fraction(value)] + [Fraction(0)] * (euler_phi(order) - 1)
        return cls(order, coeffs)

    @classmethod
    def zero(cls, order: int = 1) -> "Cyclo":
        return cls.rational(0, order)

    @classmethod
    def one(cls, order: int = 1) -> "Cyclo":
        return cls.rational(1, order)

    @classmethod
    def zeta(cls, order: int, k: int = 1) -> "Cyclo":
        """zeta_order^k, reduced mod Phi_order."""
        return cls(order, _zeta_power(order, k))

    # -- coercion ----------------------------------------------------

    def _coerce(self, other) -> "Cyclo":
        if isinstance(other, Cyclo):
            if other.order != self.order:
                raise OrderMismatch(
                    f"cannot combine orders {self.order} and {other.order}; "
                    "promote with change_order first"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclo.rational(other, self.order)
        return NotImplemented  # type: ignore[return-value]

    def promote(self, order: int) -> "Cyclo":
        """Re-express in Q(zeta_order); requires self.order | order."""
        if order == self.order:
            return self
        if order % self.order != 0:
            raise OrderMismatch(f"{self.order} does not divide {order}")
        step = order // self.order
        raw = [Fraction(0)] * ((len(self.coeffs) - 1) * step + 1)
        for j, c in enumerate(self.coeffs):
            raw[j * step] += c
        return Cyclo(order, _reduce(raw, order))

    # -- arithmetic --------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Cyclo(self.order, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclo(self.order, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Cyclo(self.order, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) == 1:
            return Cyclo(self.order, (a[0] * b[0],))
        raw = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    if cb:
                        raw[i + j] += ca * cb
        return Cyclo(self.order, _reduce(raw, self.order))

    __rmul__ = __mul__

    def inv(self) -> "Cyclo":
        """Field inverse via the extended Euclidean algorithm with Phi_m."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if len(self.coeffs) == 1:
            return Cyclo(self.order, (1 / self.coeffs[0],))
        mod = [Fraction(c) for c in cyclotomic_polynomial(self.order)]
        r0, r1 = mod, list(self.coeffs)
        s0, s1 = [Fraction(0)], [Fraction(1)]

        def trim(p):
            while len(p) > 1 and p[-1] == 0:
                p.pop()
            return p

        r1 = trim(r1)
        while len(r1) > 1 or r1[0] != 0:
            # divide r0 by r1
            q = [Fraction(0)] * max(1, len(r0) - len(r1) + 1)
            rem = list(r0)
            for k in range(len(rem) - 1, len(r1) - 2, -1):
                if rem[k]:
                    f = rem[k] / r1[-1]
                    q[k - len(r1) + 1] = f
                    for j in range(len(r1)):
                        rem[k - len(r1) + 1 + j] -= f * r1[j]
            rem = trim(rem)
            # s2 = s0 - q*s1
            s2 = list(s0) + [Fraction(0)] * max(0, len(q) + len(s1) - 1 - len(s0))
            for i, cq in enumerate(q):
                if cq:
                    for j, cs in enumerate(s1):
                        s2[i + j] -= cq * cs
            r0, r1 = trim(list(r1)), rem
            s0, s1 = s1, trim(s2)
        # r0 is now a nonzero constant: gcd = r0[0]; s0 * self = r0[0] (mod Phi)
        c = r0[0]
        return Cyclo(self.order, _reduce([x / c for x in s0], self.order))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        return self.inv() * other

    def conj(self) -> "Cyclo":
        """Complex conjugation: zeta |-> zeta^(-1), extended Q-linearly."""
        m = self.order
        acc = [Fraction(0)] * euler_phi(m)
        for j, c in enumerate(self.coeffs):
            if c:
                for k, base in enumerate(_zeta_power(m, (-j) % m)):
                    acc[k] += c * base
        return Cyclo(m, tuple(acc))

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        result = Cyclo.one(self.order)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- predicates and views ----------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Cyclo.rational(other, self.order)
        if not isinstance(other, Cyclo):
            return NotImplemented
        if self.order == other.order:
            return self.coeffs == other.coeffs
        m = self.order * other.order // gcd(self.order, other.order)
        return self.promote(m).coeffs == other.promote(m).coeffs

    __hash__ = None  # type: ignore[assignment]

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"Cyclo({self.order}, {self})"

    def __str__(self):
        if self.is_zero():
            return "0"
        sym = f"z{self.order}"
        parts = []
        for j, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if j == 0:
                parts.append(str(c))
            else:
                mono = sym if j == 1 else f"{sym}^{j}"
                if c == 1:
                    parts.append(mono)
                elif c == -1:
                    parts.append(f"-{mono}")
                else:
                    parts.append(f"{c}*{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    # -- JSON --------------------------------------------------------

    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "Cyclo":
        m = int(data["order"])
        coeffs = [Fraction(s) for s in data["coeffs"]]
        if len(coeffs) != euler_phi(m):
            raise ValueError("coefficient list has wrong length for the order")
        return cls(m, coeffs)


def root_of_unity(m: int, k: int) -> Cyclo:
    """zeta_m^k as a reduced element of Q(zeta_m)."""
    return Cyclo.zeta(m, k)


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)
