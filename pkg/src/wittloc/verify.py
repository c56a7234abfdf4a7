"""Self-check suites runnable from the command line.

Each suite returns (passed, lines).  `witt-fp` cross-checks Witt-class
equality over prime fields against the rank/discriminant classification,
`lam` exercises the quadratic-extension exact cycle, `ring-laws` samples
the ring axioms and defining relations, and `paper-table` recomputes the
closed-form localization degrees for projective spaces and Grassmannians.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import product
from math import comb
from typing import List, Optional, Tuple

from . import fields as F
from .engine import bott_residue, build_grassmannian_problem, build_projective_problem
from .fields import FINITE_PRIME, FieldDescriptor, finite_prime, rationals
from .places import fp_class_of_units
from .quadext import lam_exactness_check, make_context
from .rings import GradedElement, bnn, bsl2n, from_witt, gen, one_elem, twisted_point
from .witt import WittClass, integer_class, witt

SUITES = ("witt-fp", "lam", "ring-laws", "paper-table")


def run_suite(
    name: str,
    field: Optional[FieldDescriptor] = None,
    a=None,
    p_max: int = 11,
    rank_max: int = 4,
    n_max: int = 4,
    samples: int = 200,
    seed: int = 0,
) -> Tuple[bool, List[str]]:
    if name == "witt-fp":
        return suite_witt_fp(p_max, rank_max)
    if name == "lam":
        return suite_lam(field, a, samples, seed)
    if name == "ring-laws":
        return suite_ring_laws(samples, seed)
    if name == "paper-table":
        return suite_table(n_max, field)
    raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")


def _primes_upto(p_max: int) -> List[int]:
    return [p for p in range(3, p_max + 1) if all(p % q for q in range(2, p))]


def suite_witt_fp(p_max: int = 11, rank_max: int = 4) -> Tuple[bool, List[str]]:
    """Equality over F_p must agree with the (rank parity, signed
    discriminant) classification, and the additive group must be Z/4 for
    p = 3 mod 4 and Klein-four for p = 1 mod 4."""
    lines = []
    ok = True
    for p in _primes_upto(p_max):
        field = finite_prime(p)
        from .quadext import all_witt_classes

        units = [u for u in range(1, p)]
        classes = all_witt_classes(field)
        class_inv = {c: fp_class_of_units(c.entries, p) for c in classes}
        bad = 0
        checked = 0
        for rank in range(0, rank_max + 1):
            for entries in product(units, repeat=rank):
                x = witt(field, *entries)
                inv = fp_class_of_units(entries, p)
                for c in classes:
                    checked += 1
                    if (x == c) != (inv == class_inv[c]):
                        bad += 1
        one = integer_class(1, field)
        four_torsion = (one + one + one + one).is_zero()
        order = 4 if not (one + one).is_zero() else 2
        want_order = 4 if p % 4 == 3 else 2
        group_ok = four_torsion and order == want_order
        line_ok = bad == 0 and group_ok
        ok = ok and line_ok
        lines.append(
            f"witt-fp p={p}: {checked} comparisons, "
            f"<1> has order {order} (expected {want_order}) ... "
            f"{'pass' if line_ok else 'FAIL'}"
        )
    return ok, lines


_DEFAULT_LAM = (
    (finite_prime(3), -1),
    (finite_prime(5), 2),
    (finite_prime(7), 3),
    (rationals(), Fraction(2)),
)


def _lam_samples(ctx, count: int, seed: int) -> List[WittClass]:
    from .quadext import all_witt_classes

    if ctx.base.kind == FINITE_PRIME:
        return all_witt_classes(ctx.base) + all_witt_classes(ctx.ext)
    rng = random.Random(seed)
    pool = [1, -1, 2, -2, 3, 5, -5, 7, 10]
    out = []
    gen_cls = witt(ctx.base, 1, -ctx.a)
    for _ in range(count // 2):
        rank = rng.randint(0, 3)
        entries = [Fraction(rng.choice(pool)) for _ in range(rank)]
        out.append(witt(ctx.base, *entries))
        # constructed kernel members: (1 - <a>) * small form
        out.append(gen_cls * witt(ctx.base, *entries))
    return out


def suite_lam(field, a, samples: int, seed: int) -> Tuple[bool, List[str]]:
    lines: List[str] = []
    ok = True
    if field is not None and a is not None:
        pairs = [(field, a)]
    else:
        pairs = list(_DEFAULT_LAM)
    for base, aa in pairs:
        ctx = make_context(base, F.coerce(base, aa))
        rep = lam_exactness_check(ctx, _lam_samples(ctx, samples, seed))
        ok = ok and rep.passed
        lines.extend(rep.lines())
    return ok, lines


def _random_coeff(rng: random.Random, field: FieldDescriptor) -> WittClass:
    if field.kind == FINITE_PRIME:
        entries = [rng.randrange(1, field.p) for _ in range(rng.randint(0, 2))]
    else:
        entries = [Fraction(rng.choice([1, -1, 2, -2, 3, 5])) for _ in range(rng.randint(0, 2))]
    return witt(field, *entries)


def _random_elem(rng: random.Random, pres) -> GradedElement:
    from .rings import generator_names

    names = generator_names(pres)
    out = from_witt(pres, _random_coeff(rng, pres.coefficient_field()))
    for _ in range(rng.randint(0, 3)):
        term = from_witt(pres, _random_coeff(rng, pres.coefficient_field()))
        for _ in range(rng.randint(0, 2)):
            term = term * gen(pres, rng.choice(names))
        out = out + term
    return out


def suite_ring_laws(samples: int = 200, seed: int = 0) -> Tuple[bool, List[str]]:
    rng = random.Random(seed)
    Q = rationals()
    ctx = make_context(Q, Fraction(2))
    presentations = [bsl2n(2, Q), bnn(1, Q), bnn(2, finite_prime(5)), twisted_point(ctx)]
    lines = []
    ok = True
    for pres in presentations:
        bad = 0
        n_checks = max(1, samples // len(presentations))
        for _ in range(n_checks):
            x, y, z = (_random_elem(rng, pres) for _ in range(3))
            if x * (y + z) != x * y + x * z:
                bad += 1
            if (x * y) * z != x * (y * z):
                bad += 1
            if x * y != y * x:
                bad += 1
            if x + (y - y) != x:
                bad += 1
        rel_ok = _relations_hold(pres)
        line_ok = bad == 0 and rel_ok
        ok = ok and line_ok
        lines.append(
            f"ring-laws {pres}: {n_checks} triples, relations "
            f"{'hold' if rel_ok else 'BROKEN'} ... {'pass' if line_ok else 'FAIL'}"
        )
    return ok, lines


def _relations_hold(pres) -> bool:
    from .rings import BNN, BSL2N, TWISTED

    one = one_elem(pres)
    if pres.kind == BSL2N:
        return True  # free polynomial ring: nothing extra to check
    if pres.kind == BNN:
        oks = []
        for i in range(1, pres.n + 1):
            x = gen(pres, "x" if pres.n == 1 else f"x{i}")
            e = gen(pres, "e" if pres.n == 1 else f"e{i}")
            oks.append(x * x == one)
            oks.append(((one + x) * e).is_zero())
            oks.append(x * e == -e)
        return all(oks)
    if pres.kind == TWISTED:
        a = pres.ctx.a
        base = pres.ctx.base
        y = gen(pres, "y")
        e = gen(pres, "e")
        x = gen(pres, "x")  # the class <a>
        ysq = witt(base, F.one(base), F.one(base), F.neg(base, a), F.neg(base, a))
        return y * y == from_witt(pres, ysq) and x * e == -e
    return True


def suite_table(n_max: int = 4, field=None) -> Tuple[bool, List[str]]:
    """Localization degrees with known closed forms: chi(P^2n) = <1>,
    chi(P^(2n-1)) = 0, and binomial(n, r)<1> for the Grassmannian of
    2r-planes in 2n-space."""
    k = field if field is not None else rationals()
    lines = []
    ok = True
    for n in range(1, min(n_max, 3) + 1):
        got = bott_residue(build_projective_problem(2 * n, n, k)).degree_zero
        want = integer_class(1, k)
        good = got == want
        ok = ok and good
        lines.append(f"P^{2*n}: degree {got!r} ... {'pass' if good else 'FAIL'}")
        got = bott_residue(build_projective_problem(2 * n - 1, n, k)).degree_zero
        good = got is not None and got.is_zero()
        ok = ok and good
        lines.append(f"P^{2*n-1}: degree {got!r} ... {'pass' if good else 'FAIL'}")
    for n in range(2, n_max + 1):
        for r in range(1, n):
            got = bott_residue(build_grassmannian_problem(2 * r, 2 * n, n, k)).degree_zero
            want = integer_class(comb(n, r), k)
            good = got == want
            ok = ok and good
            lines.append(
                f"Gr({2*r},{2*n}): degree {got!r}, expected {comb(n,r)}<1> ... "
                f"{'pass' if good else 'FAIL'}"
            )
    return ok, lines
