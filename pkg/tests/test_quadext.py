from fractions import Fraction

import pytest

from wittloc import fields as F
from wittloc.errors import FieldMismatch
from wittloc.quadext import (
    all_witt_classes,
    base_change,
    in_Ia,
    lam_exactness_check,
    make_context,
    one_minus_a,
    principal_ideal_certificate,
    scaled_transfer,
    sqrt_a_class,
    transfer,
)
from wittloc.witt import WittClass, integer_class, witt

Q = F.rationals()


def ctx_q2():
    return make_context(Q, Fraction(2))


def test_transfer_of_one():
    """Tr(<1>) is the trace form <2> + <2a> of the extension."""
    ctx = ctx_q2()
    one_ext = WittClass.from_entries(ctx.ext, (F.one(ctx.ext),))
    assert transfer(one_ext, ctx) == witt(Q, 2, 4)  # <2> + <2*2>


def test_transfer_of_sqrt_a_vanishes():
    ctx = ctx_q2()
    assert transfer(sqrt_a_class(ctx), ctx).is_zero()


def test_scaled_transfer_kills_base_change():
    ctx = ctx_q2()
    for x in (witt(Q, 1), witt(Q, 3, -5), witt(Q, 2, 2, 7)):
        assert scaled_transfer(base_change(x, ctx), ctx).is_zero()


def test_transfer_lands_in_Ia():
    ctx = ctx_q2()
    r = F.coerce(ctx.ext, (0, 1))
    samples = [
        WittClass.from_entries(ctx.ext, (F.one(ctx.ext),)),
        WittClass.from_entries(ctx.ext, (r, F.coerce(ctx.ext, 3))),
    ]
    for s in samples:
        assert in_Ia(transfer(s, ctx), ctx)


def test_certificate_over_finite_field_exhaustive():
    f5 = F.finite_prime(5)
    ctx = make_context(f5, 2)
    gen = one_minus_a(ctx)
    for x in all_witt_classes(f5):
        y = principal_ideal_certificate(x, ctx)
        in_ideal = any(gen * z == x for z in all_witt_classes(f5))
        if in_ideal:
            assert y is not None and gen * y == x
        else:
            assert y is None


def test_certificate_over_q():
    ctx = ctx_q2()
    gen = one_minus_a(ctx)
    x = gen * witt(Q, 3)
    y = principal_ideal_certificate(x, ctx)
    assert y is not None and gen * y == x
    # <1> does not die under base change so it has no certificate
    assert principal_ideal_certificate(witt(Q, 1), ctx) is None


def test_certificate_field_mismatch():
    ctx = ctx_q2()
    with pytest.raises(FieldMismatch):
        principal_ideal_certificate(witt(F.reals(), 1), ctx)


@pytest.mark.parametrize("p,a", [(3, -1), (5, 2), (7, 3)])
def test_lam_exactness_exhaustive_finite(p, a):
    field = F.finite_prime(p)
    ctx = make_context(field, a)
    samples = all_witt_classes(field) + all_witt_classes(ctx.ext)
    rep = lam_exactness_check(ctx, samples)
    assert rep.passed, rep.lines()


def test_lam_exactness_sampled_rational():
    ctx = ctx_q2()
    samples = [
        witt(Q, 1),
        witt(Q, 2),
        witt(Q, 1, -2),
        witt(Q, 3, -6),
        witt(Q, 5, -10, 7, -14),
    ]
    rep = lam_exactness_check(ctx, samples)
    assert rep.passed, rep.lines()


def test_negative_a_base_change():
    ctx = make_context(Q, Fraction(-1))
    # -1 is a square in Q(i), so <1> + <1> becomes hyperbolic there
    assert base_change(witt(Q, 1, 1), ctx).is_zero()
    # but <1> + <3> survives: x^2 + 3y^2 = 0 needs sqrt(-3) = i*sqrt(3)
    assert not base_change(witt(Q, 1, 3), ctx).is_zero()
