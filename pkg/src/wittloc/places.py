"""Square-class bookkeeping for W(Q): residue invariants and local tests.

W(Q) equality is decided through the split residue decomposition
(signature, second residues at odd primes valued in W(F_p), and a dyadic
parity slot).  This module also carries the local machinery (Hilbert
symbols, Witt-triviality over Q_v) used to decide whether a rational Witt
class dies after a quadratic base change.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Dict, Iterable, Tuple

from sympy import factorint

from .fields import least_nonresidue, _legendre

INF = "inf"


@lru_cache(maxsize=None)
def _factor(n: int) -> Tuple[Tuple[int, int], ...]:
    return tuple(sorted(factorint(n).items()))


@lru_cache(maxsize=None)
def squarefree_int(n: int) -> int:
    """Squarefree part of a nonzero integer (sign preserved)."""
    s = -1 if n < 0 else 1
    for p, e in _factor(abs(n)):
        if e % 2:
            s *= p
    return s


def squarefree_part(q: Fraction) -> int:
    """Squarefree integer in the square class of a nonzero rational."""
    return squarefree_int(q.numerator * q.denominator)


def vp(q: Fraction, p: int) -> int:
    v = 0
    n = q.numerator
    while n % p == 0:
        n //= p
        v += 1
    d = q.denominator
    while d % p == 0:
        d //= p
        v -= 1
    return v


def unit_part_mod_p(q: Fraction, p: int) -> int:
    """(q / p^{v_p(q)}) mod p as a residue in 1..p-1."""
    v = vp(q, p)
    num, den = q.numerator, q.denominator
    if v > 0:
        num //= p ** v
    elif v < 0:
        den //= p ** (-v)
    return num * pow(den, -1, p) % p


# ---------------------------------------------------------------------------
# W(F_p) class arithmetic on (rank mod 2, signed discriminant) pairs.
# The signed discriminant (-1)^{n(n-1)/2} * det is a Witt invariant; it is
# stored as a normalized residue in {1, s} with s the least non-residue.


def fp_normalize_disc(d: int, p: int):
    if d % p == 0:
        raise ZeroDivisionError("discriminant must be a unit")
    return 1 if _legendre(d, p) == 1 else least_nonresidue(p)


def fp_class_of_units(units: Iterable[int], p: int) -> Tuple[int, int]:
    """Witt class in W(F_p) of a diagonal form with the given unit entries."""
    n = 0
    det = 1
    for u in units:
        n += 1
        det = det * u % p
    sdet = det * pow(-1, (n * (n - 1) // 2), p) % p
    return (n % 2, fp_normalize_disc(sdet, p))


def fp_add(c1: Tuple[int, int], c2: Tuple[int, int], p: int) -> Tuple[int, int]:
    r1, d1 = c1
    r2, d2 = c2
    d = d1 * d2 * (-1) ** (r1 * r2) % p
    return ((r1 + r2) % 2, fp_normalize_disc(d, p))


def fp_neg(c: Tuple[int, int], p: int) -> Tuple[int, int]:
    r, d = c
    return (r, fp_normalize_disc(d * (-1) ** r % p, p))


FP_ZERO = (0, 1)


def fp_all_classes(p: int):
    s = least_nonresidue(p)
    return [(0, 1), (1, 1), (1, s), (0, s)]


# ---------------------------------------------------------------------------
# W(Q) invariant bundle


def wq_key(entries: Tuple[Fraction, ...]):
    """(signature, sorted odd residue classes, dyadic parity) of a form."""
    sig = 0
    dy = 0
    residues: Dict[int, Tuple[int, int]] = {}
    for c in entries:
        sig += 1 if c > 0 else -1
        sf = squarefree_part(c)
        for q, _ in _factor(abs(sf)):
            if q == 2:
                dy ^= 1
                continue
            u = unit_part_mod_p(c, q)
            cls = fp_add(residues.get(q, FP_ZERO), (1, fp_normalize_disc(u, q)), q)
            residues[q] = cls
    items = tuple(sorted((q, c) for q, c in residues.items() if c != FP_ZERO))
    return (sig, items, dy)


def wq_key_add(k1, k2):
    sig = k1[0] + k2[0]
    dy = k1[2] ^ k2[2]
    residues = dict(k1[1])
    for q, c in k2[1]:
        residues[q] = fp_add(residues.get(q, FP_ZERO), c, q)
    items = tuple(sorted((q, c) for q, c in residues.items() if c != FP_ZERO))
    return (sig, items, dy)


def wq_key_neg(k):
    return (-k[0], tuple(sorted((q, fp_neg(c, q)) for q, c in k[1])), k[2])


WQ_ZERO = (0, (), 0)


# ---------------------------------------------------------------------------
# Hilbert symbols and local Witt-class tests over Q_v


def _two_adic_unit(q: Fraction) -> int:
    v = vp(q, 2)
    num, den = q.numerator, q.denominator
    if v > 0:
        num //= 2 ** v
    elif v < 0:
        den //= 2 ** (-v)
    return num * pow(den, -1, 8) % 8


def hilbert(a: Fraction, b: Fraction, v) -> int:
    """Hilbert symbol (a,b)_v in {1,-1}; v is an odd prime, 2, or 'inf'."""
    if a == 0 or b == 0:
        raise ZeroDivisionError("Hilbert symbol needs nonzero arguments")
    if v == INF:
        return -1 if (a < 0 and b < 0) else 1
    if v == 2:
        alpha, beta = vp(a, 2) % 2, vp(b, 2) % 2
        u, w = _two_adic_unit(a), _two_adic_unit(b)
        eps_u, eps_w = (u - 1) // 2 % 2, (w - 1) // 2 % 2
        om_u, om_w = (u * u - 1) // 8 % 2, (w * w - 1) // 8 % 2
        e = eps_u * eps_w + alpha * om_w + beta * om_u
        return -1 if e % 2 else 1
    p = v
    alpha, beta = vp(a, p) % 2, vp(b, p) % 2
    u, w = unit_part_mod_p(a, p), unit_part_mod_p(b, p)
    r = 1
    if alpha and beta:
        r *= _legendre(-1, p)
    if beta:
        r *= _legendre(u, p)
    if alpha:
        r *= _legendre(w, p)
    return r


def is_square_qv(q: Fraction, v) -> bool:
    if v == INF:
        return q > 0
    if v == 2:
        return vp(q, 2) % 2 == 0 and _two_adic_unit(q) == 1
    return vp(q, v) % 2 == 0 and _legendre(unit_part_mod_p(q, v), v) == 1


def hasse_invariant(entries: Tuple[Fraction, ...], v) -> int:
    h = 1
    for i in range(len(entries)):
        for j in range(i + 1, len(entries)):
            h *= hilbert(entries[i], entries[j], v)
    return h


def signed_disc(entries: Tuple[Fraction, ...]) -> Fraction:
    n = len(entries)
    d = Fraction((-1) ** (n * (n - 1) // 2))
    for c in entries:
        d *= c
    return d


def local_witt_zero(entries: Tuple[Fraction, ...], v) -> bool:
    """Whether the diagonal form is Witt-trivial over Q_v."""
    n = len(entries)
    if n % 2:
        return False
    if v == INF:
        return sum(1 if c > 0 else -1 for c in entries) == 0
    if not is_square_qv(signed_disc(entries), v):
        return False
    hyp = tuple([Fraction(1), Fraction(-1)] * (n // 2))
    return hasse_invariant(entries, v) == hasse_invariant(hyp, v)


def _local_square_class_reps(v):
    if v == 2:
        return [Fraction(c) for c in (1, 3, 5, 7, 2, 6, 10, 14)]
    s = least_nonresidue(v)
    return [Fraction(c) for c in (1, s, v, s * v)]


def local_in_ideal(entries: Tuple[Fraction, ...], a: Fraction, v) -> bool:
    """Whether the class lies in <1,-a>*W(Q_v), by enumerating multipliers.

    Every Witt class of W(Q_v) has a diagonal representative of rank <= 4
    with entries among fixed square-class representatives, so the
    enumeration is exhaustive.
    """
    reps = _local_square_class_reps(v)
    negated = tuple(-c for c in entries)
    for r in range(0, 5):
        for y in combinations_with_replacement(reps, r):
            prod = []
            for c in y:
                prod.append(c)
                prod.append(-a * c)
            if local_witt_zero(tuple(prod) + negated, v):
                return True
    return False


def ker_iota_rational(entries: Tuple[Fraction, ...], a: Fraction) -> bool:
    """Decide whether a W(Q) class dies in W(Q(sqrt(a))).

    Local-global: the base-changed class is hyperbolic iff it is so at every
    completion.  At places where a is a local square the condition is local
    Witt-triviality; elsewhere it is membership in <1,-a>*W(Q_v) (the local
    base-change kernel).  Only finitely many places are non-trivial: the
    global rank-parity and signed-discriminant conditions below take care of
    all odd primes where a and every entry are units.
    """
    n = len(entries)
    if n % 2:
        return False
    if n == 0:
        return True
    sfd = squarefree_part(signed_disc(entries))
    sfa = squarefree_part(a)
    if sfd != 1 and sfd != sfa:
        return False
    bad = {2}
    for q, _ in _factor(abs(sfa)):
        if q != 2:
            bad.add(q)
    for c in entries:
        for q, _ in _factor(abs(squarefree_part(c))):
            if q != 2:
                bad.add(q)
    if a > 0:
        if sum(1 if c > 0 else -1 for c in entries) != 0:
            return False
    for v in sorted(bad):
        if is_square_qv(a, v):
            if not local_witt_zero(entries, v):
                return False
        else:
            if not local_in_ideal(entries, a, v):
                return False
    return True
