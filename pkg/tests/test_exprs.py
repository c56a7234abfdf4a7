from fractions import Fraction

import pytest

from wittloc import fields as F
from wittloc.errors import ExprSyntaxError
from wittloc.exprs import (
    parse_field,
    parse_rep,
    parse_ring_expr,
    parse_scalar,
    parse_witt_expr,
    rep_str,
    ring_str,
    witt_str,
)
from wittloc.quadext import make_context
from wittloc.rings import bnn, bsl2n, twisted_point
from wittloc.witt import integer_class, square_class, witt

Q = F.rationals()


def test_parse_field_tags():
    assert parse_field("Q") == Q
    assert parse_field("R") == F.reals()
    assert parse_field("Fp:11") == F.finite_prime(11)
    assert parse_field("F5") == F.finite_prime(5)
    qe = parse_field("Q(sqrt:-1)")
    assert qe.kind == "QuadExt" and qe.a == -1


def test_field_tag_round_trip():
    for tag in ("Q", "R", "Fp:7", "Q(sqrt:2)", "Q(sqrt:-1)"):
        assert str(parse_field(tag)) == tag


def test_witt_expr_basics():
    assert parse_witt_expr("<1> + <-1>", Q).is_zero()
    assert parse_witt_expr("3*<2> - 2", Q) == 3 * square_class(Q, Fraction(2)) - integer_class(2, Q)
    # juxtaposed integer multiple
    assert parse_witt_expr("3<2>", Q) == parse_witt_expr("3*<2>", Q)


def test_witt_expr_fraction_scalars():
    assert parse_witt_expr("<1/2>", Q) == square_class(Q, Fraction(1, 2))
    assert parse_witt_expr("<-3/4>", Q) == square_class(Q, Fraction(-3))


def test_witt_round_trip():
    samples = [
        witt(Q, 1, 2, -3),
        witt(Q, 5, 5, 5),
        integer_class(0, Q),
        witt(F.finite_prime(7), 3, 3),
    ]
    for x in samples:
        assert parse_witt_expr(witt_str(x), x.field) == x


def test_syntax_errors_have_offsets():
    with pytest.raises(ExprSyntaxError) as e:
        parse_witt_expr("<2> + ", Q)
    assert e.value.pos == 6
    with pytest.raises(ExprSyntaxError):
        parse_witt_expr("<2", Q)
    with pytest.raises(ExprSyntaxError):
        parse_witt_expr("", Q)


def test_ring_expr_and_round_trip():
    pres = bsl2n(2, Q)
    x = parse_ring_expr("<2>*e1^2*e2 - 3*e2 + (e1 + e2)^2", pres)
    assert parse_ring_expr(ring_str(x), pres) == x


def test_ring_expr_respects_relations():
    bn = bnn(1, Q)
    assert parse_ring_expr("(1 + x)*e", bn).is_zero()
    assert parse_ring_expr("x^2", bn) == parse_ring_expr("1", bn)


def test_ring_expr_twisted():
    ctx = make_context(Q, Fraction(2))
    tp = twisted_point(ctx)
    x = parse_ring_expr("y*e + <2>*e^2", tp)
    assert parse_ring_expr(ring_str(x), tp) == x


def test_unknown_generator_is_syntax_error():
    bn = bnn(1, Q)
    with pytest.raises(ExprSyntaxError):
        parse_ring_expr("x*e + e2", bn)


def test_rep_literals():
    r = parse_rep("Sym(3)@1 + F@2", "SL2n", 2)
    assert r.summands[0][0].exponents == (3, 0)
    assert r.summands[1][0].exponents == (0, 1)
    t = parse_rep("F@1*F@2", "SL2n", 2)
    assert t.summands[0][0].exponents == (1, 1)
    n = parse_rep("rho(3) + rho0 + rho0- + 2*rho(1)", "N")
    assert [s[1] for s in n.summands] == [1, 1, 1, 2]


def test_rep_round_trip():
    for text in ("Sym(5)@1 + 2*F@2", "F@1*F@2 + Sym(2)@2"):
        r = parse_rep(text, "SL2n", 2)
        assert parse_rep(rep_str(r), "SL2n", 2) == r
    for text in ("rho(1)", "rho0- + rho(4)"):
        r = parse_rep(text, "N")
        assert parse_rep(rep_str(r), "N") == r


def test_quadext_scalars():
    qe = parse_field("Q(sqrt:2)")
    assert parse_scalar("1+2*r", qe) == (Fraction(1), Fraction(2))
    assert parse_scalar("-r", qe) == (Fraction(0), Fraction(-1))
    assert parse_scalar("3", qe) == (Fraction(3), Fraction(0))
