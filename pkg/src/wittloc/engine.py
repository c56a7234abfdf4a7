"""Fixed-point localization problems and the Bott residue evaluator.

A problem is a group (SL2^n or N over a base field) plus a list of
0-dimensional fixed components.  Each component contributes
push(i^*(class) / e(normal)) and the engine sums the contributions,
attempting to clear denominators back into the polynomial presentation.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations
from typing import Dict, List, Optional, Tuple, Union

from . import fields as F
from .errors import (
    BadDimension,
    BadParameters,
    InconsistentField,
    NonInvertibleNormalEuler,
    UnsupportedResidueField,
)
from .euler import RepSum, euler_rep, fundamental, generic_euler, sl2n_rep, SL2nIrrep
from .fields import FINITE_PRIME, RATIONALS, REALS, FieldDescriptor
from .quadext import QuadExtContext
from .rings import (
    BNN,
    BSL2N,
    TWISTED,
    GradedElement,
    LocalizedElement,
    PresentationId,
    bnn,
    bsl2n,
    e_star,
    from_int,
    from_witt,
    gen,
    localization_carrier,
    localize_element,
    one_elem,
    twisted_point,
    zero_elem,
)
from .witt import WittClass, integer_class, zero_class

RATIONAL_POINT = "rational"


@dataclass(frozen=True)
class GroupDescriptor:
    kind: str  # "SL2n" or "N"
    n: int
    field: FieldDescriptor

    def __post_init__(self):
        if self.kind not in ("SL2n", "N"):
            raise BadParameters(f"unknown group kind {self.kind!r}")
        if self.kind == "N" and self.n != 1:
            raise BadParameters("the N-engine handles a single factor")
        if self.n < 1:
            raise BadParameters("n must be >= 1")


@dataclass(frozen=True)
class FixedComponent:
    id: str
    residue: Union[str, QuadExtContext]
    normal_rep: RepSum
    restricted: Union[RepSum, GradedElement]
    twist: Optional[str] = None


@dataclass(frozen=True)
class LocalizationProblem:
    group: GroupDescriptor
    components: Tuple[FixedComponent, ...]
    M: Optional[int] = None

    def __post_init__(self):
        if self.M == 0:
            raise BadParameters("M must be nonzero when provided")


@dataclass
class ResidueResult:
    value: LocalizedElement
    cleared: Optional[GradedElement]
    degree_zero: Optional[WittClass]
    flags: Dict[str, bool] = dc_field(default_factory=dict)


# ---------------------------------------------------------------------------
# coefficient-level exact division in W(k)


def _small_integer_value(c: WittClass) -> Optional[int]:
    for t in range(-12, 13):
        if c == integer_class(t, c.field):
            return t
    return None


def _witt_coeff_divide(c: WittClass, d: WittClass) -> List[WittClass]:
    """Verified candidates q with q*d == c."""
    field = c.field
    out: List[WittClass] = []
    seen = set()

    def push(q: WittClass):
        if q not in seen and q * d == c:
            seen.add(q)
            out.append(q)

    if field.kind == FINITE_PRIME:
        from .quadext import all_witt_classes

        for q in all_witt_classes(field):
            push(q)
        return out

    if field.kind == REALS:
        t = d.signature()
        if t != 0 and c.signature() % t == 0:
            push(integer_class(c.signature() // t, field))
        return out

    # unit-multiplier guesses: q = c * <u> for square classes u of d
    for u in d.entries:
        push(c * WittClass.from_entries(field, (u,)))
    push(c)
    push(-c)
    t = _small_integer_value(d)
    if t is not None and field.kind == RATIONALS:
        out.extend(q for q in _divide_rational_by_int(c, t) if q not in seen and (seen.add(q) or True))
    return out


def _divide_rational_by_int(c: WittClass, t: int) -> List[WittClass]:
    """Solutions q of t*q = c in W(Q), via the residue decomposition."""
    from . import places
    from .witt import _reconstruct_rationals

    if t == 0:
        return []
    key = c.key[1]
    sig, items, dy = key
    if sig % t:
        return []
    sig_q = sig // t
    per_prime: List[List[Tuple[int, Tuple[int, int]]]] = []
    for p, cls in items:
        sols = []
        for w in places.fp_all_classes(p):
            acc = places.FP_ZERO
            for _ in range(abs(t)):
                acc = places.fp_add(acc, w, p)
            if t < 0:
                acc = places.fp_neg(acc, p)
            if acc == cls:
                sols.append((p, w))
        if not sols:
            return []
        per_prime.append(sols)
    if t % 2 == 0 and dy:
        return []
    dys = [dy] if t % 2 else [0, 1]
    combos: List[List[Tuple[int, Tuple[int, int]]]] = [[]]
    for sols in per_prime:
        combos = [prefix + [s] for prefix in combos for s in sols]
        if len(combos) > 256:
            combos = combos[:256]
    results = []
    for combo in combos:
        for dq in dys:
            items_q = tuple(sorted((p, w) for p, w in combo if w != places.FP_ZERO))
            kq = (sig_q, items_q, dq)
            q = WittClass.from_entries(F.rationals(), _reconstruct_rationals(kq))
            results.append(q)
    return [q for q in results if (q * integer_class(t, q.field)) == c]


def exact_divide(num: GradedElement, den: GradedElement) -> Optional[GradedElement]:
    """num / den in the polynomial carrier, or None when not exactly divisible."""
    if den.pres != num.pres or den.pres.kind not in (BSL2N,):
        raise BadParameters("exact division works in the polynomial carrier")
    if den.is_zero():
        return None
    if num.is_zero():
        return zero_elem(num.pres)
    dk = max(den.coeffs)
    dc = den.coeffs[dk]

    def dfs(r: GradedElement, acc: GradedElement) -> Optional[GradedElement]:
        if r.is_zero():
            return acc
        lk = max(r.coeffs)
        if any(a < b for a, b in zip(lk, dk)):
            return None
        mono_key = tuple(a - b for a, b in zip(lk, dk))
        mono = GradedElement(num.pres, {mono_key: integer_class(1, num.pres.field)})
        for qc in _witt_coeff_divide(r.coeffs[lk], dc):
            term = from_witt(num.pres, qc) * mono
            got = dfs(r - term * den, acc + term)
            if got is not None:
                return got
        return None

    return dfs(num, zero_elem(num.pres))


# ---------------------------------------------------------------------------
# component rings and pushforwards


def component_presentation(c: FixedComponent, g: GroupDescriptor) -> PresentationId:
    if g.kind == "SL2n":
        if c.residue != RATIONAL_POINT:
            raise UnsupportedResidueField(
                "SL2n components must be rational points"
            )
        return bsl2n(g.n, g.field)
    if c.residue == RATIONAL_POINT:
        return bnn(1, g.field)
    if isinstance(c.residue, QuadExtContext):
        if c.residue.base != g.field:
            raise InconsistentField(f"{c.residue.base} vs {g.field}")
        return twisted_point(c.residue)
    raise UnsupportedResidueField(f"unsupported residue data {c.residue!r}")


def bn_to_twisted(x: GradedElement, tp: PresentationId) -> GradedElement:
    """Restriction map H*(BN) -> H*(twisted point): x maps to <a>, e to e."""
    if x.pres.kind != BNN or x.pres.n != 1:
        raise BadParameters("expected a BN class")
    a_cls = WittClass.from_entries(tp.ctx.base, (tp.ctx.a,))
    out: Dict = {}
    for ((xe, m),), c in x.coeffs.items():
        if xe:
            c = c * a_cls
        key = (0, m)
        out[key] = out[key] + c if key in out else c
    return GradedElement(tp, out)


def push_twisted_plain(x: GradedElement) -> GradedElement:
    """pi_* on the un-inverted twisted point: 1 -> <2>+<2a>x, e^m -> (<2>-<2a>)e^m, y -> 0."""
    tp = x.pres
    if tp.kind != TWISTED or tp.inverted:
        raise BadParameters("expected an un-inverted twisted-point class")
    ctx = tp.ctx
    base = ctx.base
    bn_pres = bnn(1, base)
    two = WittClass.from_entries(base, (F.coerce(base, 2),))
    two_a = WittClass.from_entries(base, (F.mul(base, F.coerce(base, 2), ctx.a),))
    out = zero_elem(bn_pres)
    for (y, m), c in x.coeffs.items():
        if y:
            continue  # pi_*(y * e^m) = 0
        if m == 0:
            out = out + GradedElement(
                bn_pres, {((0, 0),): c * two, ((1, 0),): c * two_a}
            )
        else:
            out = out + GradedElement(bn_pres, {((0, m),): c * (two - two_a)})
    return out


def push_twisted_inverted(x: GradedElement) -> GradedElement:
    """pi_* after inverting e: every degree-0 rule becomes <2> - <2a>."""
    tp = x.pres
    if tp.kind != TWISTED or not tp.inverted:
        raise BadParameters("expected an e-inverted twisted-point class")
    ctx = tp.ctx
    base = ctx.base
    carrier = bsl2n(1, base)
    two = WittClass.from_entries(base, (F.coerce(base, 2),))
    two_a = WittClass.from_entries(base, (F.mul(base, F.coerce(base, 2), ctx.a),))
    factor = two - two_a
    out: Dict = {}
    for (y, m), c in x.coeffs.items():
        if y:
            continue
        key = (m,)
        cc = c * factor
        out[key] = out[key] + cc if key in out else cc
    return GradedElement(carrier, out)


def push_to_base(x, c: FixedComponent, g: GroupDescriptor):
    """Pushforward from a component's coefficient ring to the base ring."""
    if c.residue == RATIONAL_POINT:
        return x
    if not isinstance(c.residue, QuadExtContext):
        raise UnsupportedResidueField(f"unsupported residue data {c.residue!r}")
    if isinstance(x, GradedElement):
        if x.pres.kind != TWISTED:
            raise BadParameters("twisted pushforward needs a twisted-point class")
        if x.pres.inverted:
            return push_twisted_inverted(x)
        return push_twisted_plain(x)
    if isinstance(x, LocalizedElement):
        num = push_twisted_inverted(x.numerator)
        inv = _integer_e_poly_to_base(x.inverted)
        return LocalizedElement(bsl2n(1, g.field), num, inv, x.dexp)
    raise BadParameters(f"cannot push {x!r}")


def _integer_e_poly_to_base(x: GradedElement) -> GradedElement:
    """Identify a twisted e-polynomial with integer coefficients with its
    base-ring preimage; anything else is ambiguous and rejected."""
    carrier = bsl2n(1, x.pres.ctx.base)
    out: Dict = {}
    for (y, m), c in x.coeffs.items():
        t = _small_integer_value(c)
        if y or t is None:
            raise UnsupportedResidueField(
                "denominator is not visibly pulled back from the base ring"
            )
        out[(m,)] = integer_class(t, x.pres.ctx.base)
    return GradedElement(carrier, out)


# ---------------------------------------------------------------------------
# residues


def component_residue(c: FixedComponent, g: GroupDescriptor) -> LocalizedElement:
    """euler(restricted) / euler(normal) over the component's localized ring."""
    num, den = _component_fraction(c, g)
    carrier = num.pres
    if den.is_zero():
        raise NonInvertibleNormalEuler(f"component {c.id}: normal Euler class is 0")
    return LocalizedElement(carrier, num, den, 1)


def _component_fraction(
    c: FixedComponent, g: GroupDescriptor
) -> Tuple[GradedElement, GradedElement]:
    """(numerator, denominator) over the localized base carrier ring."""
    pres = component_presentation(c, g)
    if generic_euler(c.normal_rep, g.field).is_zero():
        raise NonInvertibleNormalEuler(
            f"component {c.id}: generic Euler class of the normal bundle vanishes"
        )
    den_val = euler_rep(c.normal_rep, g.field).value
    if den_val is None or den_val.is_zero():
        raise NonInvertibleNormalEuler(
            f"component {c.id}: normal Euler class has no invertible representative"
        )
    if isinstance(c.restricted, RepSum):
        r_val = euler_rep(c.restricted, g.field).value
        if r_val is None:
            raise NonInvertibleNormalEuler(
                f"component {c.id}: restricted class only known by its square"
            )
    else:
        r_val = c.restricted

    if g.kind == "SL2n":
        return r_val, den_val

    carrier = bsl2n(1, g.field)
    den_base = localize_element(den_val, carrier)
    if pres.kind == BNN:
        if isinstance(r_val, GradedElement) and r_val.pres.kind != BNN:
            raise BadParameters("restricted class must live over BN")
        return localize_element(r_val, carrier), den_base
    # twisted point: restrict to the twisted presentation, invert e, push
    tp = pres
    tp_inv = twisted_point(tp.ctx, inverted=True)
    if isinstance(r_val, GradedElement) and r_val.pres.kind == TWISTED:
        r_tp = GradedElement(tp_inv, dict(r_val.coeffs))
    else:
        r_tp = GradedElement(tp_inv, dict(bn_to_twisted(r_val, tp).coeffs))
    num = push_twisted_inverted(r_tp)
    return num, den_base


def bott_residue(p: LocalizationProblem) -> ResidueResult:
    g = p.group
    flags: Dict[str, bool] = {}
    if g.field.kind == FINITE_PRIME:
        flags["finite_char"] = True
    if g.kind == "N" and p.M is not None and p.M % 2 == 0 and g.field.kind not in (
        RATIONALS,
        REALS,
    ):
        flags["potentially_vacuous"] = True

    if g.kind == "SL2n":
        carrier = bsl2n(g.n, g.field)
        default_s = e_star(g.n, g.field)
    else:
        carrier = bsl2n(1, g.field)
        default_s = from_int(carrier, p.M if p.M else 1) * gen(carrier, "e")

    fractions: List[Tuple[GradedElement, GradedElement]] = []
    one = one_elem(carrier)
    for c in p.components:
        num, den = _component_fraction(c, g)
        q = exact_divide(num, den)
        if q is not None:
            fractions.append((q, one))
        else:
            fractions.append((num, den))

    dens = [den for _, den in fractions if den != one]
    total_num = zero_elem(carrier)
    for i, (num, den) in enumerate(fractions):
        others = one
        for j, (_, d2) in enumerate(fractions):
            if j != i and d2 != one:
                others = others * d2
        total_num = total_num + num * others

    if not dens:
        value = LocalizedElement(carrier, total_num, default_s, 0)
        cleared: Optional[GradedElement] = total_num
    else:
        D = one
        for d in dens:
            D = D * d
        value = LocalizedElement(carrier, total_num, D, 1)
        cleared = exact_divide(total_num, D)

    degree_zero: Optional[WittClass] = None
    if cleared is not None and (cleared.is_zero() or cleared.degree() == 0):
        degree_zero = cleared.constant_coefficient()
    return ResidueResult(value, cleared, degree_zero, flags)


# ---------------------------------------------------------------------------
# built-in problem generators (projective spaces and Grassmannians)


def build_projective_problem(dim: int, n: int, field: FieldDescriptor) -> LocalizationProblem:
    if dim not in (2 * n - 1, 2 * n):
        raise BadDimension(f"dim must be 2n-1 or 2n for n={n}, got {dim}")
    g = GroupDescriptor("SL2n", n, field)
    if dim == 2 * n - 1:
        return LocalizationProblem(g, ())
    normal = sl2n_rep(n, [fundamental(n, i) for i in range(1, n + 1)])
    comp = FixedComponent("origin", RATIONAL_POINT, normal, normal)
    return LocalizationProblem(g, (comp,))


def _tensor_irrep(n: int, i: int, j: int) -> SL2nIrrep:
    return SL2nIrrep(tuple(1 if k in (i, j) else 0 for k in range(1, n + 1)))


def build_grassmannian_problem(
    m: int, ambient: int, n: int, field: FieldDescriptor
) -> LocalizationProblem:
    if ambient not in (2 * n, 2 * n + 1):
        raise BadParameters(f"ambient must be 2n or 2n+1 for n={n}, got {ambient}")
    if not 0 < m < ambient:
        raise BadParameters(f"need 0 < m < ambient, got m={m}")
    g = GroupDescriptor("SL2n", n, field)
    comps: List[FixedComponent] = []
    extra_line = ambient == 2 * n + 1
    if m % 2 == 1 and not extra_line:
        # no invariant odd-dimensional subspaces of a sum of 2-dim irreps
        return LocalizationProblem(g, ())
    r = m // 2
    if r > n:
        raise BadParameters(f"m={m} exceeds the invariant-subspace range")
    for I in combinations(range(1, n + 1), r):
        J = tuple(i for i in range(1, n + 1) if i not in I)
        summands: List[SL2nIrrep] = [_tensor_irrep(n, i, j) for i in I for j in J]
        if extra_line:
            if m % 2 == 1:
                # W = F_I + trivial line; Hom(line, F_j) adds each F_j
                summands += [fundamental(n, j) for j in J]
            else:
                # V/W contains the trivial line; Hom(F_i, line) adds each F_i
                summands += [fundamental(n, i) for i in I]
        if not summands:
            raise BadParameters("degenerate fixed component with no normal directions")
        normal = sl2n_rep(n, summands)
        comp = FixedComponent(
            f"I={{{','.join(map(str, I))}}}", RATIONAL_POINT, normal, normal
        )
        comps.append(comp)
    return LocalizationProblem(g, tuple(comps))


# ---------------------------------------------------------------------------
# JSON problem files


def problem_to_json(p: LocalizationProblem) -> dict:
    from .exprs import rep_str, ring_str

    comps = []
    for c in p.components:
        entry: dict = {"id": c.id, "normal": rep_str(c.normal_rep)}
        if isinstance(c.residue, QuadExtContext):
            entry["residue"] = {
                "twisted": {"a": F.scalar_repr(c.residue.base, c.residue.a)}
            }
        else:
            entry["residue"] = RATIONAL_POINT
        if isinstance(c.restricted, RepSum):
            entry["restricted"] = rep_str(c.restricted)
        else:
            entry["restricted"] = ring_str(c.restricted)
        if c.twist:
            entry["twist"] = c.twist
        comps.append(entry)
    out = {
        "group": {"kind": p.group.kind, "n": p.group.n, "field": str(p.group.field)},
        "components": comps,
    }
    if p.M is not None:
        out["invert"] = {"M": p.M}
    return out


def problem_from_json(doc: dict) -> LocalizationProblem:
    from .errors import ExprSyntaxError
    from .exprs import parse_field, parse_rep, parse_ring_expr, parse_scalar
    from .quadext import make_context
    from .rings import bnn as _bnn

    gdoc = doc["group"]
    field = parse_field(gdoc["field"])
    g = GroupDescriptor(gdoc["kind"], int(gdoc.get("n", 1)), field)
    comps: List[FixedComponent] = []
    for i, cdoc in enumerate(doc.get("components", [])):
        residue = cdoc.get("residue", RATIONAL_POINT)
        if isinstance(residue, dict) and "twisted" in residue:
            a = parse_scalar(residue["twisted"]["a"], field)
            residue = make_context(field, a)
        elif residue != RATIONAL_POINT:
            raise UnsupportedResidueField(f"unsupported residue {residue!r}")
        normal = parse_rep(cdoc["normal"], g.kind, g.n)
        restricted_text = cdoc.get("restricted", cdoc["normal"])
        try:
            restricted: Union[RepSum, GradedElement] = parse_rep(
                restricted_text, g.kind, g.n
            )
        except ExprSyntaxError:
            if g.kind == "SL2n":
                pres = bsl2n(g.n, field)
            elif isinstance(residue, QuadExtContext):
                pres = twisted_point(residue)
            else:
                pres = _bnn(1, field)
            restricted = parse_ring_expr(restricted_text, pres)
        comps.append(
            FixedComponent(
                cdoc.get("id", f"component-{i}"),
                residue,
                normal,
                restricted,
                cdoc.get("twist"),
            )
        )
    M = None
    if "invert" in doc and doc["invert"].get("M") is not None:
        M = int(doc["invert"]["M"])
    return LocalizationProblem(g, tuple(comps), M)
