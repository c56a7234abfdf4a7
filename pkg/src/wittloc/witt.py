"""Exact arithmetic in Witt rings W(k) with canonical-form equality.

Supported k: Q, R, F_p (p odd), and one quadratic step k0(sqrt(a)).  A
class stores both a diagonal representative (needed by the transfer maps)
and a field-specific invariant bundle used for equality and hashing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from . import fields as F
from . import places
from .errors import (
    DegenerateForm,
    FieldMismatch,
    NonSymmetric,
    Undecided,
    UnsupportedField,
    ZeroInput,
)
from .fields import FINITE_PRIME, QUAD_EXT, RATIONALS, REALS, FieldDescriptor


@dataclass(frozen=True)
class QuadraticForm:
    field: FieldDescriptor
    entries: Tuple

    @property
    def rank(self) -> int:
        return len(self.entries)


def form(field: FieldDescriptor, entries: Sequence) -> QuadraticForm:
    coerced = []
    for c in entries:
        e = F.coerce(field, c)
        if F.is_zero(field, e):
            raise ZeroInput("diagonal entries must be nonzero")
        coerced.append(e)
    return QuadraticForm(field, tuple(coerced))


# ---------------------------------------------------------------------------
# Gram-matrix diagonalization (char != 2 symmetric elimination)


def diagonalize(gram: Sequence[Sequence], field: FieldDescriptor) -> QuadraticForm:
    n = len(gram)
    M = [[F.coerce(field, gram[i][j]) for j in range(n)] for i in range(n)]
    if any(len(row) != n for row in gram):
        raise NonSymmetric("matrix is not square")
    for i in range(n):
        for j in range(i + 1, n):
            if not F.is_zero(field, F.sub(field, M[i][j], M[j][i])):
                raise NonSymmetric(f"entry ({i},{j}) differs from ({j},{i})")
    entries = []
    for k in range(n):
        if F.is_zero(field, M[k][k]):
            swap = next(
                (j for j in range(k + 1, n) if not F.is_zero(field, M[j][j])), None
            )
            if swap is not None:
                M[k], M[swap] = M[swap], M[k]
                for row in M:
                    row[k], row[swap] = row[swap], row[k]
            else:
                off = next(
                    (j for j in range(k + 1, n) if not F.is_zero(field, M[k][j])), None
                )
                if off is None:
                    raise DegenerateForm("matrix has determinant zero")
                # add row/column `off` to k: new diagonal entry is 2*M[k][off]
                for j in range(n):
                    M[k][j] = F.add(field, M[k][j], M[off][j])
                for i in range(n):
                    M[i][k] = F.add(field, M[i][k], M[i][off])
        d = M[k][k]
        entries.append(d)
        factors = [F.div(field, M[i][k], d) for i in range(k + 1, n)]
        for i, f in zip(range(k + 1, n), factors):
            if F.is_zero(field, f):
                continue
            for j in range(n):
                M[i][j] = F.sub(field, M[i][j], F.mul(field, f, M[k][j]))
        for i, f in zip(range(k + 1, n), factors):
            if F.is_zero(field, f):
                continue
            for j in range(n):
                M[j][i] = F.sub(field, M[j][i], F.mul(field, f, M[j][k]))
    return QuadraticForm(field, tuple(entries))


def trace_form_entries(c, base: FieldDescriptor, a) -> Tuple:
    """Diagonal entries over the base of (u,v) -> Tr_{k(sqrt a)/k}(c*u*v).

    The Gram matrix on the basis {1, sqrt(a)} is
    [[2*c0, 2*c1*a], [2*c1*a, 2*c0*a]] for c = c0 + c1*sqrt(a).
    """
    c0, c1 = c
    two = F.coerce(base, 2)
    g00 = F.mul(base, two, c0)
    g01 = F.mul(base, two, F.mul(base, c1, a))
    g11 = F.mul(base, two, F.mul(base, c0, a))
    return diagonalize([[g00, g01], [g01, g11]], base).entries


# ---------------------------------------------------------------------------
# canonicalization per field


def _canon_reals(entries) -> Tuple[Tuple, Tuple]:
    sig = sum(1 if c > 0 else -1 for c in entries)
    rep = tuple([Fraction(1 if sig > 0 else -1)] * abs(sig))
    return rep, ("R", sig)


def _canon_fp(entries, p: int) -> Tuple[Tuple, Tuple]:
    cls = places.fp_class_of_units(entries, p)
    return _fp_entries_from_class(cls, p), ("Fp", p, cls)


def _fp_entries_from_class(cls, p: int) -> Tuple[int, ...]:
    s = F.least_nonresidue(p)
    r2, d = cls
    if cls == places.FP_ZERO:
        return ()
    if r2 == 1:
        return (d,)
    # rank-0 class with non-square signed discriminant: <1, c> with -c a
    # non-square; c = s when -1 is a square (p = 1 mod 4), else c = 1.
    return (1, s) if p % 4 == 1 else (1, 1)


def _canon_fq(entries, field: FieldDescriptor) -> Tuple[Tuple, Tuple]:
    # F_{p^2}: -1 is always a square, so the signed disc class is the plain
    # product class; (rank mod 2, disc-is-square) classifies.
    r2 = len(entries) % 2
    d = F.one(field)
    for c in entries:
        d = F.mul(field, d, c)
    dsq = F.is_square(field, d)
    key = ("Fq", field.base.p, r2, dsq)
    onee = F.one(field)
    s2 = F.first_nonsquare(field)
    if r2 == 0 and dsq:
        rep: Tuple = ()
    elif r2 == 1:
        rep = (onee,) if dsq else (s2,)
    else:
        rep = (onee, s2)
    return rep, key


def _reconstruct_rationals(key) -> Tuple[Fraction, ...]:
    """Deterministic diagonal representative realizing a W(Q) invariant key."""
    sig, items, dy = key
    targets = dict(items)
    work = set(targets)
    out: List[Fraction] = []

    def residue_at(p: int):
        cls = places.FP_ZERO
        for c in out:
            if places.vp(c, p) % 2:
                u = places.unit_part_mod_p(c, p)
                cls = places.fp_add(cls, (1, places.fp_normalize_disc(u, p)), p)
        return cls

    def note_new_entry(c: Fraction, below: int):
        for q, _ in places._factor(abs(places.squarefree_part(c))):
            if q != 2 and q < below and residue_at(q) != targets.get(q, places.FP_ZERO):
                work.add(q)

    while work:
        p = max(work)
        work.remove(p)
        need = places.fp_add(
            targets.get(p, places.FP_ZERO), places.fp_neg(residue_at(p), p), p
        )
        if need == places.FP_ZERO:
            continue
        s = F.least_nonresidue(p)
        r2, d = need
        if r2 == 1:
            new = [Fraction(d * p)]
        else:
            c = s if p % 4 == 1 else 1
            new = [Fraction(p), Fraction(c * p)]
        for e in new:
            out.append(e)
            note_new_entry(e, p)
    if places.wq_key(tuple(out))[2] != dy:
        out.append(Fraction(2))
    t = sig - sum(1 if c > 0 else -1 for c in out)
    out.extend([Fraction(1 if t > 0 else -1)] * abs(t))
    return tuple(out)


def _canon_rationals(entries) -> Tuple[Tuple, Tuple]:
    key = places.wq_key(entries)
    return _reconstruct_rationals(key), ("Q", key)


# --- Q(sqrt a): reduced representative, equality by decision procedure -----

_POOL_CACHE = {}


def _square_class_pool(field: FieldDescriptor):
    if field not in _POOL_CACHE:
        pool = []
        for d in range(1, 51):
            if places.squarefree_int(d) != d:
                continue
            fd = Fraction(d)
            pool.append((fd, Fraction(0)))
            pool.append((-fd, Fraction(0)))
            pool.append((Fraction(0), fd))
            pool.append((Fraction(0), -fd))
        _POOL_CACHE[field] = pool
    return _POOL_CACHE[field]


def _normalize_qext_entry(field: FieldDescriptor, c):
    for r in _square_class_pool(field):
        if F.is_square(field, F.div(field, c, r)):
            return r
    u, v = c
    L = math.lcm(u.denominator, v.denominator)
    # scaling by the square L^2 keeps the square class and clears denominators
    ui = int(u * L * L)
    vi = int(v * L * L)
    g = math.gcd(abs(ui), abs(vi))
    k = 2
    while k * k <= g:
        while ui % (k * k) == 0 and vi % (k * k) == 0:
            ui //= k * k
            vi //= k * k
            g //= k * k
        k += 1
    return (Fraction(ui), Fraction(vi))


def _reduce_qext(field: FieldDescriptor, entries) -> Tuple:
    work = [_normalize_qext_entry(field, c) for c in entries]
    changed = True
    while changed:
        changed = False
        n = len(work)
        for i in range(n):
            for j in range(i + 1, n):
                ratio = F.div(field, F.neg(field, work[i]), work[j])
                if F.is_square(field, ratio):
                    del work[j]
                    del work[i]
                    changed = True
                    break
            if changed:
                break
    work.sort(key=lambda c: (c[1] != 0, c[0], c[1]))
    return tuple(work)


def _canon_qext_q(entries, field: FieldDescriptor) -> Tuple[Tuple, None]:
    return _reduce_qext(field, entries), None


def _qext_q_is_zero(field: FieldDescriptor, entries) -> bool:
    reduced = _reduce_qext(field, entries)
    if not reduced:
        return True
    if all(v == 0 for _, v in reduced):
        # base change of a rational form: the local-global kernel test decides
        return places.ker_iota_rational(tuple(u for u, _ in reduced), field.a)
    if len(reduced) % 2:
        return False
    if field.a > 0:
        for root in (True, False):
            if sum(F.real_sign(field, c, root) for c in reduced) != 0:
                return False
    # transfer invariants: Tr(x) and Tr(<sqrt a> x) vanish on the zero class
    base = field.base
    tr: List = []
    trs: List = []
    sqrt_a = F.coerce(field, (0, 1))
    for c in reduced:
        tr.extend(trace_form_entries(c, base, field.a))
        trs.extend(trace_form_entries(F.mul(field, sqrt_a, c), base, field.a))
    if not witt_class(QuadraticForm(base, tuple(tr))).is_zero():
        return False
    if not witt_class(QuadraticForm(base, tuple(trs))).is_zero():
        return False
    raise Undecided(
        "cannot certify equality in W(Q(sqrt:%s)) for representative %r"
        % (field.a, reduced)
    )


def _canonicalize(field: FieldDescriptor, entries) -> Tuple[Tuple, Optional[Tuple]]:
    if field.kind == REALS:
        return _canon_reals(entries)
    if field.kind == RATIONALS:
        return _canon_rationals(entries)
    if field.kind == FINITE_PRIME:
        return _canon_fp(entries, field.p)
    if field.kind == QUAD_EXT:
        if field.base.kind == FINITE_PRIME:
            return _canon_fq(entries, field)
        if field.base.kind == REALS:
            rep = ((F.one(field),) if len(entries) % 2 else ())
            return rep, ("C", len(entries) % 2)
        if field.base.kind == RATIONALS:
            return _canon_qext_q(entries, field)
    raise UnsupportedField(str(field))


# ---------------------------------------------------------------------------


class WittClass:
    """Canonical element of W(k); immutable, compares by Witt equivalence."""

    __slots__ = ("field", "entries", "key")

    def __init__(self, field: FieldDescriptor, entries, key):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "key", key)

    def __setattr__(self, *_):
        raise AttributeError("WittClass is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_entries(field: FieldDescriptor, entries) -> "WittClass":
        rep, key = _canonicalize(field, tuple(entries))
        return WittClass(field, rep, key)

    # -- ring structure ----------------------------------------------------

    def _check(self, other: "WittClass") -> None:
        if not isinstance(other, WittClass):
            raise FieldMismatch(f"expected WittClass, got {other!r}")
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def __add__(self, other: "WittClass") -> "WittClass":
        self._check(other)
        return WittClass.from_entries(self.field, self.entries + other.entries)

    def __neg__(self) -> "WittClass":
        negd = tuple(F.neg(self.field, c) for c in self.entries)
        return WittClass.from_entries(self.field, negd)

    def __sub__(self, other: "WittClass") -> "WittClass":
        return self + (-other)

    def _as_int(self):
        """n when the diagonal is visibly n*<1> or n*<-1>, else None."""
        one = F.one(self.field)
        neg_one = F.neg(self.field, one)
        if all(c == one for c in self.entries):
            return len(self.entries)
        if all(c == neg_one for c in self.entries):
            return -len(self.entries)
        return None

    def _int_scale(self, t: int) -> "WittClass":
        """t-fold sum computed by doubling, keeping entries canonical."""
        if t == 0:
            return WittClass.from_entries(self.field, ())
        neg = t < 0
        t = abs(t)
        acc = None
        base = self
        while t:
            if t & 1:
                acc = base if acc is None else acc + base
            t >>= 1
            if t:
                base = base + base
        return -acc if neg else acc

    def __mul__(self, other):
        if isinstance(other, int):
            return self._int_scale(other)
        self._check(other)
        t = other._as_int()
        if t is not None:
            return self._int_scale(t)
        t = self._as_int()
        if t is not None:
            return other._int_scale(t)
        prod = tuple(
            F.mul(self.field, c, d) for c in self.entries for d in other.entries
        )
        return WittClass.from_entries(self.field, prod)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.__mul__(other)
        return NotImplemented

    def is_zero(self) -> bool:
        if self.key is not None:
            # every keyed field has empty canonical entries exactly on zero
            return len(self.entries) == 0
        return _qext_q_is_zero(self.field, self.entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, WittClass) or other.field != self.field:
            return False
        if self.key is not None:
            return self.key == other.key
        if self.entries == other.entries:
            return True
        diff = self.entries + tuple(F.neg(self.field, c) for c in other.entries)
        return _qext_q_is_zero(self.field, diff)

    def __hash__(self):
        if self.key is not None:
            return hash((self.field, self.key))
        return hash((self.field, len(self.entries) % 2))

    # -- inspection --------------------------------------------------------

    @property
    def rank_parity(self) -> int:
        return len(self.entries) % 2

    def signature(self, positive_root: bool = True) -> int:
        if self.field.kind in (RATIONALS, REALS):
            return sum(1 if c > 0 else -1 for c in self.entries)
        if self.field.kind == QUAD_EXT and self.field.base.kind == RATIONALS:
            if self.field.a > 0:
                return sum(F.real_sign(self.field, c, positive_root) for c in self.entries)
        raise UnsupportedField(f"no real embedding data for {self.field}")

    def __repr__(self):
        if not self.entries:
            return "WittClass(0)"
        body = " + ".join(
            f"<{F.scalar_repr(self.field, c)}>" for c in self.entries
        )
        return f"WittClass({body} over {self.field})"


def witt_class(f: QuadraticForm) -> WittClass:
    return WittClass.from_entries(f.field, f.entries)


def witt(field: FieldDescriptor, *entries) -> WittClass:
    """Convenience constructor: witt(Q, 1, -2) = <1> + <-2>."""
    return witt_class(form(field, entries))


def zero_class(field: FieldDescriptor) -> WittClass:
    return WittClass.from_entries(field, ())


def square_class(field: FieldDescriptor, c) -> WittClass:
    return witt(field, c)


def integer_class(n: int, field: FieldDescriptor) -> WittClass:
    entries = (1 if n > 0 else -1,) * abs(n)
    return witt_class(form(field, entries))


def is_zero_divisor_int(n: int, field: FieldDescriptor) -> bool:
    """Whether multiplication by n has nontrivial kernel on W(field).

    All Z-torsion in these Witt rings is 2-primary, and W(R) = Z is the
    only torsion-free ring in the supported list.
    """
    if n == 0:
        raise ZeroInput("n must be nonzero")
    if n % 2:
        return False
    return field.kind != REALS
