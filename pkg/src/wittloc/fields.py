"""Supported coefficient fields and exact element arithmetic.

A field is one of Q, R (with exact rational representatives), F_p for an odd
prime p, or a single quadratic step k(sqrt(a)) over one of those.  Elements
are plain Python values: ``Fraction`` for Q and R, ``int`` residues for F_p,
and ``(u, v)`` pairs meaning u + v*sqrt(a) for quadratic extensions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Optional

from sympy import isprime

from .errors import FieldMismatch, UnsupportedField, ZeroInput

RATIONALS = "Q"
REALS = "R"
FINITE_PRIME = "Fp"
QUAD_EXT = "QuadExt"


@dataclass(frozen=True)
class FieldDescriptor:
    kind: str
    p: Optional[int] = None
    base: Optional["FieldDescriptor"] = None
    a: object = None

    def __str__(self) -> str:
        if self.kind == RATIONALS:
            return "Q"
        if self.kind == REALS:
            return "R"
        if self.kind == FINITE_PRIME:
            return f"Fp:{self.p}"
        return f"{self.base}(sqrt:{scalar_repr(self.base, self.a)})"


def rationals() -> FieldDescriptor:
    return FieldDescriptor(RATIONALS)


def reals() -> FieldDescriptor:
    return FieldDescriptor(REALS)


def finite_prime(p: int) -> FieldDescriptor:
    if not isinstance(p, int) or p == 2 or not isprime(p):
        raise UnsupportedField(f"need an odd prime, got {p!r}")
    return FieldDescriptor(FINITE_PRIME, p=p)


def quad_ext(base: FieldDescriptor, a) -> FieldDescriptor:
    """k(sqrt(a)) for a a nonzero non-square of the base field."""
    if base.kind == QUAD_EXT:
        raise UnsupportedField("quadratic extensions may not be nested")
    a = coerce(base, a)
    if is_zero(base, a):
        raise UnsupportedField("sqrt(0) does not generate an extension")
    if is_square(base, a):
        raise UnsupportedField(f"{scalar_repr(base, a)} is already a square in {base}")
    return FieldDescriptor(QUAD_EXT, base=base, a=a)


# ---------------------------------------------------------------------------
# element arithmetic


def coerce(field: FieldDescriptor, x):
    """Turn ints/Fractions/pairs into the canonical element representation."""
    if field.kind in (RATIONALS, REALS):
        if isinstance(x, bool) or not isinstance(x, (int, Fraction)):
            raise UnsupportedField(f"cannot coerce {x!r} into {field}")
        return Fraction(x)
    if field.kind == FINITE_PRIME:
        if isinstance(x, Fraction):
            if x.denominator % field.p == 0:
                raise ZeroDivisionError(f"denominator divisible by {field.p}")
            return x.numerator * pow(x.denominator, -1, field.p) % field.p
        if not isinstance(x, int):
            raise UnsupportedField(f"cannot coerce {x!r} into {field}")
        return x % field.p
    if field.kind == QUAD_EXT:
        if isinstance(x, tuple) and len(x) == 2:
            return (coerce(field.base, x[0]), coerce(field.base, x[1]))
        return (coerce(field.base, x), coerce(field.base, 0))
    raise UnsupportedField(field.kind)


def zero(field: FieldDescriptor):
    return coerce(field, 0)


def one(field: FieldDescriptor):
    return coerce(field, 1)


def is_zero(field: FieldDescriptor, x) -> bool:
    if field.kind == QUAD_EXT:
        return is_zero(field.base, x[0]) and is_zero(field.base, x[1])
    return x == zero(field)


def add(field: FieldDescriptor, x, y):
    if field.kind == QUAD_EXT:
        b = field.base
        return (add(b, x[0], y[0]), add(b, x[1], y[1]))
    if field.kind == FINITE_PRIME:
        return (x + y) % field.p
    return x + y


def neg(field: FieldDescriptor, x):
    if field.kind == QUAD_EXT:
        b = field.base
        return (neg(b, x[0]), neg(b, x[1]))
    if field.kind == FINITE_PRIME:
        return (-x) % field.p
    return -x


def sub(field: FieldDescriptor, x, y):
    return add(field, x, neg(field, y))


def mul(field: FieldDescriptor, x, y):
    if field.kind == QUAD_EXT:
        b = field.base
        u = add(b, mul(b, x[0], y[0]), mul(b, field.a, mul(b, x[1], y[1])))
        v = add(b, mul(b, x[0], y[1]), mul(b, x[1], y[0]))
        return (u, v)
    if field.kind == FINITE_PRIME:
        return (x * y) % field.p
    return x * y


def inv(field: FieldDescriptor, x):
    if is_zero(field, x):
        raise ZeroDivisionError("inverse of zero")
    if field.kind == QUAD_EXT:
        b = field.base
        n = ext_norm(field, x)
        ninv = inv(b, n)
        return (mul(b, x[0], ninv), mul(b, neg(b, x[1]), ninv))
    if field.kind == FINITE_PRIME:
        return pow(x, -1, field.p)
    return 1 / x


def div(field: FieldDescriptor, x, y):
    return mul(field, x, inv(field, y))


def ext_norm(field: FieldDescriptor, x):
    """Norm u^2 - a*v^2 of u + v*sqrt(a), an element of the base field."""
    b = field.base
    return sub(b, mul(b, x[0], x[0]), mul(b, field.a, mul(b, x[1], x[1])))


def conj(field: FieldDescriptor, x):
    """Galois conjugate u - v*sqrt(a)."""
    return (x[0], neg(field.base, x[1]))


# ---------------------------------------------------------------------------
# squares and signs


def _fraction_square_root(q: Fraction) -> Optional[Fraction]:
    if q < 0:
        return None
    rn = math.isqrt(q.numerator)
    rd = math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def _is_square_fraction(q: Fraction) -> bool:
    return _fraction_square_root(q) is not None


@lru_cache(maxsize=None)
def _legendre(u: int, p: int) -> int:
    u %= p
    if u == 0:
        return 0
    return 1 if pow(u, (p - 1) // 2, p) == 1 else -1


def is_square(field: FieldDescriptor, x) -> bool:
    """Exact square test; zero counts as a square."""
    if field.kind == RATIONALS:
        return x == 0 or _is_square_fraction(x)
    if field.kind == REALS:
        return x >= 0
    if field.kind == FINITE_PRIME:
        return x == 0 or _legendre(x, field.p) == 1
    base = field.base
    if base.kind == FINITE_PRIME:
        # F_{p^2}: Euler criterion with q = p^2.
        if is_zero(field, x):
            return True
        q = base.p * base.p
        return _pow_elem(field, x, (q - 1) // 2) == one(field)
    if base.kind == REALS:
        # a < 0, so this is C: every element is a square.
        return True
    # Q(sqrt(a)): u + v*sqrt(a) = (s + t*sqrt(a))^2 needs s^2 + a t^2 = u and
    # 2st = v; s^2 solves z^2 - u z + a v^2/4 = 0, so the norm u^2 - a v^2
    # must be a rational square w^2 and (u +- w)/2 a nonzero rational square.
    u, v = x
    a = field.a
    if v == 0:
        return u == 0 or _is_square_fraction(u) or _is_square_fraction(u / a)
    w = _fraction_square_root(u * u - a * v * v)
    if w is None:
        return False
    for s2 in ((u + w) / 2, (u - w) / 2):
        if s2 != 0 and _is_square_fraction(s2):
            return True
    return False


def _pow_elem(field: FieldDescriptor, x, n: int):
    r = one(field)
    while n:
        if n & 1:
            r = mul(field, r, x)
        x = mul(field, x, x)
        n >>= 1
    return r


def real_sign(field: FieldDescriptor, x, positive_root: bool = True) -> int:
    """Sign of x under a real embedding.

    For Q/R this is the usual sign.  For Q(sqrt(a)) with a > 0 the two real
    embeddings send sqrt(a) to +-sqrt(a); `positive_root` picks which one.
    """
    if field.kind in (RATIONALS, REALS):
        return (x > 0) - (x < 0)
    if field.kind != QUAD_EXT or field.base.kind != RATIONALS or field.a <= 0:
        raise UnsupportedField("real embeddings need Q(sqrt:a) with a > 0")
    u, v = x
    if not positive_root:
        v = -v
    if v == 0:
        return (u > 0) - (u < 0)
    if u == 0:
        return (v > 0) - (v < 0)
    # compare u against -v*sqrt(a) exactly
    if v > 0:
        if u >= 0:
            return 1
        return 1 if u * u < field.a * v * v else -1
    if u <= 0:
        return -1
    return -1 if u * u < field.a * v * v else 1


def elements(field: FieldDescriptor) -> Iterator:
    """All elements of a finite field (F_p or F_{p^2})."""
    if field.kind == FINITE_PRIME:
        yield from range(field.p)
        return
    if field.kind == QUAD_EXT and field.base.kind == FINITE_PRIME:
        for u in range(field.base.p):
            for v in range(field.base.p):
                yield (u, v)
        return
    raise UnsupportedField(f"{field} is not finite")


@lru_cache(maxsize=None)
def least_nonresidue(p: int) -> int:
    for s in range(2, p):
        if _legendre(s, p) == -1:
            return s
    raise UnsupportedField(f"{p} has no quadratic non-residue")


def first_nonsquare(field: FieldDescriptor):
    """Deterministic non-square representative of a finite field."""
    if field.kind == FINITE_PRIME:
        return least_nonresidue(field.p)
    for x in elements(field):
        if not is_zero(field, x) and not is_square(field, x):
            return x
    raise UnsupportedField(f"no non-square found in {field}")


def require_same_field(f1: FieldDescriptor, f2: FieldDescriptor) -> None:
    if f1 != f2:
        raise FieldMismatch(f"{f1} vs {f2}")


def scalar_repr(field: FieldDescriptor, x) -> str:
    """Deterministic printable form of an element (parseable back)."""
    if field.kind in (RATIONALS, REALS):
        return str(x)
    if field.kind == FINITE_PRIME:
        return str(x)
    u, v = x
    us = scalar_repr(field.base, u)
    if is_zero(field.base, v):
        return us
    if v == one(field.base):
        vs = "r"
    elif field.base.kind != FINITE_PRIME and v == -1:
        vs = "-r"
    else:
        vs = f"{scalar_repr(field.base, v)}*r"
    if is_zero(field.base, u):
        return vs
    if vs.startswith("-"):
        return f"{us}{vs}"
    return f"{us}+{vs}"
