from fractions import Fraction
from itertools import product

import pytest

from wittloc import fields as F
from wittloc.places import (
    FP_ZERO,
    INF,
    fp_add,
    fp_all_classes,
    fp_class_of_units,
    fp_neg,
    hasse_invariant,
    hilbert,
    is_square_qv,
    ker_iota_rational,
    local_witt_zero,
    signed_disc,
    squarefree_part,
    vp,
    wq_key,
    wq_key_add,
    wq_key_neg,
    WQ_ZERO,
)


def test_squarefree_part():
    assert squarefree_part(Fraction(8)) == 2
    assert squarefree_part(Fraction(-18)) == -2
    assert squarefree_part(Fraction(9, 4)) == 1
    assert squarefree_part(Fraction(5, 27)) == 15


def test_vp():
    assert vp(Fraction(8), 2) == 3
    assert vp(Fraction(9, 4), 2) == -2
    assert vp(Fraction(5), 3) == 0


def test_hilbert_symbol_symmetry_and_bilinearity():
    vals = [Fraction(c) for c in (1, -1, 2, 3, 5, -6)]
    for v in (2, 3, 5, INF):
        for a, b in product(vals, repeat=2):
            assert hilbert(a, b, v) == hilbert(b, a, v)
        for a, b, c in product(vals, repeat=3):
            assert hilbert(a, b * c, v) == hilbert(a, b, v) * hilbert(a, c, v)


def test_hilbert_reciprocity():
    """The product of (a,b)_v over all places is 1."""
    vals = [Fraction(c) for c in (-1, 2, 3, 5, 7, -10, 15)]
    for a, b in product(vals, repeat=2):
        places = {2, INF}
        for x in (a, b):
            n = abs(x.numerator * x.denominator)
            while n % 2 == 0:
                n //= 2
            d = 3
            while d * d <= n:
                if n % d == 0:
                    places.add(d)
                    while n % d == 0:
                        n //= d
                d += 2
            if n > 1:
                places.add(n)
        prod_sym = 1
        for v in places:
            prod_sym *= hilbert(a, b, v)
        assert prod_sym == 1, (a, b)


def test_local_witt_zero_hyperbolic():
    for v in (2, 3, 5, INF):
        assert local_witt_zero((Fraction(1), Fraction(-1)), v)
        assert local_witt_zero((Fraction(3), Fraction(-3), Fraction(7), Fraction(-7)), v)


def test_local_witt_zero_anisotropic():
    # <1,1> is anisotropic over R and over Q_3
    assert not local_witt_zero((Fraction(1), Fraction(1)), INF)
    assert not local_witt_zero((Fraction(1), Fraction(1)), 3)
    # but splits over Q_5 since -1 is a square there
    assert local_witt_zero((Fraction(1), Fraction(1)), 5)


def test_fp_group_structure():
    for p in (3, 5, 7, 11):
        classes = fp_all_classes(p)
        assert len(classes) == 4
        for c in classes:
            total = FP_ZERO
            for _ in range(4):
                total = fp_add(total, c, p)
            assert total == FP_ZERO
            assert fp_add(c, fp_neg(c, p), p) == FP_ZERO


def test_wq_key_group_laws():
    xs = [
        wq_key((Fraction(1), Fraction(2))),
        wq_key((Fraction(-3), Fraction(5))),
        wq_key((Fraction(7), Fraction(-1), Fraction(6))),
    ]
    for x in xs:
        assert wq_key_add(x, wq_key_neg(x)) == WQ_ZERO
        for y in xs:
            assert wq_key_add(x, y) == wq_key_add(y, x)


def test_ker_iota_rational_examples():
    # x in ker(W(Q) -> W(Q(sqrt 2))) iff x is a multiple of <1> + <-2>
    a = Fraction(2)
    assert ker_iota_rational((Fraction(1), Fraction(-2)), a)
    assert ker_iota_rational((), a)
    assert not ker_iota_rational((Fraction(1),), a)
    assert not ker_iota_rational((Fraction(1), Fraction(-3)), a)
    # (1 - <2>)*<5> dies as well
    assert ker_iota_rational((Fraction(5), Fraction(-10)), a)


def test_signed_disc_and_hasse():
    e = (Fraction(1), Fraction(-1))
    assert signed_disc(e) == 1
    assert hasse_invariant(e, 2) == hilbert(Fraction(1), Fraction(-1), 2)
