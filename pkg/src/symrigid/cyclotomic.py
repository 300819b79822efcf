"""Exact arithmetic in cyclotomic fields Q(zeta_M).

Elements are stored as rational coefficient vectors in the power basis
1, z, ..., z^(d-1) with d = deg(Phi_M), reduced modulo the M-th cyclotomic
polynomial.  That representation is canonical, so field equality is
coefficient equality once both operands live in the same field.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Sequence

from .errors import InputError

MAX_ORDER = 24


def _check_order(M: int, limit: int | None = None) -> None:
    limit = MAX_ORDER if limit is None else limit
    if not isinstance(M, int) or M < 1:
        raise InputError(f"cyclotomic order must be a positive integer, got {M!r}")
    if M > limit:
        raise InputError(f"cyclotomic order {M} exceeds the configured limit {limit}")


def _poly_divmod(num: list, den: list) -> tuple[list, list]:
    # coefficient lists, lowest degree first; den has nonzero leading term
    num = list(num)
    dd = len(den) - 1
    lead = den[-1]
    if len(num) - 1 < dd:
        return [0], num
    quot = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c == 0:
            continue
        if isinstance(c, int) and isinstance(lead, int) and c % lead == 0:
            q = c // lead
        else:
            q = Fraction(c) / lead
        quot[i - dd] = q
        for j in range(dd + 1):
            num[i - dd + j] -= q * den[j]
    rem = num[:dd] or [0]
    return quot, rem


def _trim(p: list) -> list:
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


@lru_cache(maxsize=None)
def cyclotomic_polynomial(M: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_M, lowest degree first.

    Phi_M = (x^M - 1) / prod_{d | M, d < M} Phi_d.
    """
    if not isinstance(M, int) or M < 1:
        raise InputError(f"cyclotomic order must be a positive integer, got {M!r}")
    num = [-1] + [0] * (M - 1) + [1]
    for d in range(1, M):
        if M % d == 0:
            num, rem = _poly_divmod(num, list(cyclotomic_polynomial(d)))
            assert all(r == 0 for r in rem)
    return tuple(int(c) for c in _trim(num))


def degree(M: int) -> int:
    return len(cyclotomic_polynomial(M)) - 1


def _mobius(n: int) -> int:
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    if n > 1:
        result = -result
    return result


@lru_cache(maxsize=None)
def _power_traces(M: int) -> tuple[Fraction, ...]:
    # Tr(z^j)/deg for the basis powers; Ramanujan sums c_M(j) over phi(M)
    d = degree(M)
    out = []
    for j in range(d):
        g = math.gcd(j, M)
        q = M // g
        out.append(Fraction(_mobius(q) * d, degree(q)) / d)
    return tuple(out)


def _reduce(coeffs: Sequence, M: int) -> tuple[Fraction, ...]:
    phi = cyclotomic_polynomial(M)
    d = len(phi) - 1
    c = [Fraction(x) for x in coeffs]
    # x^k for k >= d rewritten via the monic Phi_M
    for i in range(len(c) - 1, d - 1, -1):
        v = c[i]
        if v:
            for j in range(d):
                c[i - d + j] -= v * phi[j]
        c[i] = Fraction(0)
    c = c[:d] + [Fraction(0)] * max(0, d - len(c))
    return tuple(c)


class CycloRat:
    """An element of Q(zeta_M) with exact rational coefficients.

    Values are immutable.  Arithmetic between different orders lifts both
    operands into Q(zeta_lcm).
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Iterable = ()):
        _check_order(order)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", _reduce(tuple(coeffs), order))

    def __setattr__(self, name, value):
        raise AttributeError("CycloRat is immutable")

    @classmethod
    def _raw(cls, order: int, coeffs: tuple) -> CycloRat:
        obj = cls.__new__(cls)
        object.__setattr__(obj, "order", order)
        object.__setattr__(obj, "coeffs", coeffs)
        return obj

    # constructors

    @classmethod
    def rational(cls, q, order: int = 1) -> CycloRat:
        return cls(order, [Fraction(q)])

    @classmethod
    def zeta(cls, order: int, k: int = 1) -> CycloRat:
        """zeta_order ** k."""
        _check_order(order)
        k %= order
        return cls(order, [0] * k + [1])

    @classmethod
    def zero(cls, order: int = 1) -> CycloRat:
        return cls(order, [0])

    @classmethod
    def one(cls, order: int = 1) -> CycloRat:
        return cls(order, [1])

    # field embedding

    def lift(self, order: int) -> CycloRat:
        """Embed into Q(zeta_order); ``self.order`` must divide ``order``."""
        if order == self.order:
            return self
        if order % self.order:
            raise ValueError(f"cannot lift order {self.order} into order {order}")
        _check_order(order)
        step = order // self.order
        poly = [Fraction(0)] * (step * (len(self.coeffs) - 1) + 1)
        for j, c in enumerate(self.coeffs):
            poly[j * step] = c
        return CycloRat(order, poly)

    def _coerce(self, other) -> tuple[CycloRat, CycloRat]:
        if isinstance(other, CycloRat):
            if other.order == self.order:
                return self, other
            L = math.lcm(self.order, other.order)
            return self.lift(L), other.lift(L)
        if isinstance(other, (int, Rational)):
            return self, CycloRat(self.order, [Fraction(other)])
        return NotImplemented, NotImplemented

    # arithmetic

    def __add__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return CycloRat._raw(a.order, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycloRat._raw(self.order, tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return CycloRat._raw(a.order, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        d = len(a.coeffs)
        prod = [Fraction(0)] * (2 * d - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        prod[i + j] += x * y
        return CycloRat._raw(a.order, _reduce(prod, a.order))

    __rmul__ = __mul__

    def inverse(self) -> CycloRat:
        if self.is_zero():
            raise ZeroDivisionError("division by zero in cyclotomic field")
        # extended Euclid in Q[x]: s*a + t*Phi = 1
        phi = [Fraction(c) for c in cyclotomic_polynomial(self.order)]
        r0, r1 = phi, _trim(list(self.coeffs))
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while not (len(r1) == 1 and r1[0] == 0):
            q, r = _poly_divmod(r0, r1)
            r = _trim([Fraction(x) for x in r])
            s_new = _poly_sub(s0, _poly_mul(q, s1))
            r0, r1, s0, s1 = r1, r, s1, s_new
        # r0 is a nonzero constant since Phi_M is irreducible
        c = Fraction(r0[0])
        return CycloRat(self.order, [x / c for x in s0])

    def __truediv__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return a * b.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = CycloRat.one(self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> CycloRat:
        """Complex conjugation, zeta -> zeta^(M-1)."""
        M = self.order
        poly = [Fraction(0)] * M
        for j, c in enumerate(self.coeffs):
            poly[(-j) % M] += c
        return CycloRat(M, poly)

    # predicates and comparison

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return a.coeffs == b.coeffs

    def __hash__(self):
        # normalized trace is invariant under lifting, so equal values hash equal
        return hash(sum((c * t for c, t in zip(self.coeffs, _power_traces(self.order))), Fraction(0)))

    def __complex__(self):
        return self.to_complex()

    def to_complex(self) -> complex:
        M = self.order
        return sum(
            (float(c) * cmath.exp(2j * math.pi * k / M) for k, c in enumerate(self.coeffs) if c),
            0j,
        )

    def as_rational(self) -> Fraction | None:
        """The rational value if the element lies in Q, else None."""
        if all(c == 0 for c in self.coeffs[1:]):
            return self.coeffs[0]
        return None

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if k == 0 else f"({c})*z{self.order}^{k}")
        return f"CycloRat[{self.order}](" + (" + ".join(terms) or "0") + ")"


def _poly_mul(a: list, b: list) -> list:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def _poly_sub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([Fraction(x) - Fraction(y) for x, y in zip(a, b)])


def to_complex_float(a: CycloRat) -> complex:
    return a.to_complex()


def conjugate(a: CycloRat) -> CycloRat:
    return a.conjugate()


def embed_point(x, y, M: int) -> CycloRat:
    """c(x, y) = x + i*y as an element of Q(zeta_M).

    ``M`` must be divisible by 4 so that i = zeta_M^(M/4) is in the field.
    """
    if M % 4:
        raise InputError(f"order {M} has no square root of -1; lift the order to a multiple of 4")
    i = CycloRat.zeta(M, M // 4)
    return CycloRat.rational(Fraction(x), M) + i * Fraction(y)


def point_of(a: CycloRat) -> tuple[Fraction, Fraction] | None:
    """Inverse of :func:`embed_point` when the value is a Gaussian rational."""
    M = math.lcm(a.order, 4)
    i = CycloRat.zeta(M, M // 4)
    x = (a + a.conjugate()) / 2
    y = (a - a.conjugate()) / (2 * i)
    xr, yr = x.as_rational(), y.as_rational()
    if xr is None or yr is None:
        return None
    return xr, yr


def exact_rank(rows: Sequence[Sequence]) -> int:
    """Rank of a matrix over an exact field by Gaussian elimination.

    Entries may be CycloRat, Fraction or int; any type with field operations
    and exact zero testing works.
    """
    mat = [list(r) for r in rows]
    if not mat:
        return 0
    ncols = len(mat[0])
    rank = 0
    for col in range(ncols):
        pivot = None
        for r in range(rank, len(mat)):
            if mat[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        inv = 1 / mat[rank][col] if not isinstance(mat[rank][col], int) else Fraction(1, mat[rank][col])
        for r in range(rank + 1, len(mat)):
            if mat[r][col] != 0:
                factor = mat[r][col] * inv
                row = mat[rank]
                mat[r] = [a - factor * b if b != 0 else a for a, b in zip(mat[r], row)]
        rank += 1
        if rank == len(mat):
            break
    return rank
