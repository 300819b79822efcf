"""Direct isometries of the plane, R^2 x| SO(2), in the complex model.

An isometry (x, A) acts by z -> t(A) z + c(x), with t(A) = exp(i theta) and
c(x) = x1 + i x2.  Composition follows (x1, A1)(x2, A2) = (x1 + A1 x2, A1 A2).

Exact isometries carry a rotation exponent k for the angle 2*pi*k/m (m the
declared rotation order) and a translation in Q(zeta_lcm(4, m)).  Numeric
isometries carry a float angle and a complex translation; their identity and
commutation tests use an absolute tolerance.
"""

from __future__ import annotations

import cmath
import math
from enum import Enum
from fractions import Fraction

from .cyclotomic import CycloRat, embed_point, point_of
from .errors import InputError

NUMERIC_TOL = 1e-9


class Kind(str, Enum):
    IDENTITY = "identity"
    TRANSLATION = "translation"
    ROTATION = "rotation-part-nontrivial"


def field_order(m: int) -> int:
    return math.lcm(4, m)


class Isometry:
    __slots__ = ("exact", "order", "rot", "trans")

    def __init__(self, rot, trans, order: int | None = None):
        """Build an isometry.

        With ``order`` given the isometry is exact: ``rot`` is an integer
        exponent and ``trans`` a CycloRat (or a pair of rationals).  Without
        it, ``rot`` is an angle in radians and ``trans`` a complex number or a
        pair of floats.
        """
        if order is not None:
            if not isinstance(order, int) or order < 1:
                raise InputError(f"rotation order must be a positive integer, got {order!r}")
            if isinstance(rot, bool) or not isinstance(rot, int):
                raise InputError(f"exact rotation exponent must be an integer, got {rot!r}")
            L = field_order(order)
            if isinstance(trans, CycloRat):
                if L % trans.order:
                    raise InputError(f"translation field order {trans.order} does not divide {L}")
                c = trans.lift(L)
            else:
                x, y = trans
                c = embed_point(Fraction(x), Fraction(y), L)
            object.__setattr__(self, "exact", True)
            object.__setattr__(self, "order", order)
            object.__setattr__(self, "rot", rot % order)
            object.__setattr__(self, "trans", c)
        else:
            if isinstance(trans, (tuple, list)):
                trans = complex(float(trans[0]), float(trans[1]))
            theta = math.remainder(float(rot), 2 * math.pi)
            object.__setattr__(self, "exact", False)
            object.__setattr__(self, "order", None)
            object.__setattr__(self, "rot", theta)
            object.__setattr__(self, "trans", complex(trans))

    def __setattr__(self, name, value):
        raise AttributeError("Isometry is immutable")

    @classmethod
    def identity(cls, order: int | None = 1) -> Isometry:
        if order is None:
            return cls(0.0, 0j)
        return cls(0, (0, 0), order)

    @classmethod
    def translation(cls, x, y, order: int | None = 1) -> Isometry:
        return cls(0 if order is not None else 0.0, (x, y), order)

    @classmethod
    def rotation(cls, k, order: int | None = None) -> Isometry:
        """Rotation about the origin; ``k`` is an exponent (exact) or an angle."""
        if order is None:
            return cls(float(k), 0j)
        return cls(k, (0, 0), order)

    # complex model

    @property
    def angle(self) -> float:
        if self.exact:
            return 2 * math.pi * self.rot / self.order
        return self.rot

    def rotation_unit(self):
        """t(A) = exp(i theta), exactly (as CycloRat) or as a complex float."""
        if self.exact:
            L = field_order(self.order)
            return CycloRat.zeta(L, self.rot * (L // self.order))
        return cmath.exp(1j * self.rot)

    def translation_point(self):
        """pi_1 as a point (x, y); rationals in exact mode."""
        if self.exact:
            return point_of(self.trans)
        return (self.trans.real, self.trans.imag)

    def rotation_part(self) -> Isometry:
        """pi_2: the rotation with the translation dropped."""
        if self.exact:
            return Isometry(self.rot, (0, 0), self.order)
        return Isometry(self.rot, 0j)

    def matrix(self):
        """(2x2 rotation as nested floats, translation as a float pair)."""
        th = self.angle
        c, s = math.cos(th), math.sin(th)
        t = complex(self.trans)
        return ((c, -s), (s, c)), (t.real, t.imag)

    def apply(self, z: complex) -> complex:
        return complex(self.rotation_unit()) * z + complex(self.trans)

    # group operations

    def _check(self, other: Isometry) -> None:
        if self.exact != other.exact:
            raise InputError("cannot combine exact and numeric isometries")
        if self.exact and self.order != other.order:
            raise InputError(
                f"isometries declared with different rotation orders ({self.order}, {other.order})"
            )

    def compose(self, other: Isometry) -> Isometry:
        self._check(other)
        if self.exact:
            c = self.trans + self.rotation_unit() * other.trans
            return Isometry(self.rot + other.rot, c, self.order)
        c = self.trans + cmath.exp(1j * self.rot) * other.trans
        return Isometry(self.rot + other.rot, c)

    __mul__ = compose

    def inverse(self) -> Isometry:
        if self.exact:
            L = field_order(self.order)
            t_inv = CycloRat.zeta(L, -self.rot * (L // self.order))
            return Isometry(-self.rot, -(t_inv * self.trans), self.order)
        return Isometry(-self.rot, -cmath.exp(-1j * self.rot) * self.trans)

    # classification

    def rotation_is_identity(self) -> bool:
        if self.exact:
            return self.rot == 0
        return abs(self.rot) <= NUMERIC_TOL

    def is_identity(self) -> bool:
        if self.exact:
            return self.rot == 0 and self.trans.is_zero()
        return self.rotation_is_identity() and abs(self.trans) <= NUMERIC_TOL

    def is_translation(self) -> bool:
        """True for translations, including the identity."""
        return self.rotation_is_identity()

    def classify(self) -> Kind:
        if self.is_identity():
            return Kind.IDENTITY
        if self.rotation_is_identity():
            return Kind.TRANSLATION
        return Kind.ROTATION

    def commutes(self, other: Isometry) -> bool:
        return self.compose(other) == other.compose(self)

    def __eq__(self, other):
        if not isinstance(other, Isometry):
            return NotImplemented
        if self.exact != other.exact:
            return False
        if self.exact:
            return self.order == other.order and self.rot == other.rot and self.trans == other.trans
        dtheta = math.remainder(self.rot - other.rot, 2 * math.pi)
        return abs(dtheta) <= NUMERIC_TOL and abs(self.trans - other.trans) <= NUMERIC_TOL

    def __hash__(self):
        if self.exact:
            return hash((self.order, self.rot, self.trans))
        raise TypeError("numeric isometries are compared with a tolerance and are unhashable; use key()")

    def key(self, digits: int = 7):
        """A hashable key; exact for exact isometries, rounded otherwise."""
        if self.exact:
            return (self.order, self.rot, self.trans.coeffs)
        th = round(math.remainder(self.rot, 2 * math.pi), digits) + 0.0
        if abs(abs(th) - round(math.pi, digits)) < 10**-digits:
            th = round(math.pi, digits)
        return (round(self.trans.real, digits) + 0.0, round(self.trans.imag, digits) + 0.0, th)

    def __repr__(self):
        if self.exact:
            pt = self.translation_point()
            tr = f"({pt[0]}, {pt[1]})" if pt is not None else repr(self.trans)
            return f"Isometry(rot={self.rot}/{self.order}, trans={tr})"
        return f"Isometry(angle={self.rot:.6g}, trans={self.trans:.6g})"


def compose(a: Isometry, b: Isometry) -> Isometry:
    return a.compose(b)


def inverse(a: Isometry) -> Isometry:
    return a.inverse()


def classify(a: Isometry) -> Kind:
    return a.classify()


def commutes(a: Isometry, b: Isometry) -> bool:
    return a.commutes(b)
