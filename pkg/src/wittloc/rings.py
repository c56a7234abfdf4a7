"""Normal-form arithmetic in the presented graded W(k)-algebras.

Presentations:
  * BSL2n(n): polynomial ring W(k)[e_1..e_n], each e_i of degree 2;
  * BNn(n):   n-fold product of W(k)[x,e]/((1+x)e, x^2-1), x of degree 0;
  * TwistedPoint(ctx): W(k)[e,y]/(y^2 - 2(<1>-<a>), I_a*y, I_a*e) with the
    degree-0 generator x acting as the scalar <a>;
  * BNTwistedModule: the free W(k)[e]-module on one degree-2 generator eT,
    with x*eT = -eT; products of two module elements are rejected.

Each ring has a finite confluent rewrite system, applied eagerly so every
stored element is in normal form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple

from .errors import (
    BadParameters,
    FieldMismatch,
    NonHomogeneousDenominator,
    NonPositiveExponent,
    PresentationMismatch,
    UnknownGenerator,
    ZeroInput,
)
from .fields import FieldDescriptor
from .quadext import QuadExtContext, in_Ia
from .witt import WittClass, integer_class, zero_class

BSL2N = "BSL2n"
BNN = "BNn"
TWISTED = "TwistedPoint"
BN_TWISTED_MODULE = "BNTwistedModule"


@dataclass(frozen=True)
class PresentationId:
    kind: str
    n: int
    field: FieldDescriptor
    ctx: Optional[QuadExtContext] = None
    inverted: bool = False

    def coefficient_field(self) -> FieldDescriptor:
        return self.field

    def __str__(self):
        if self.kind == BSL2N:
            return f"BSL2n({self.n})/{self.field}"
        if self.kind == BNN:
            return f"BN^{self.n}/{self.field}"
        if self.kind == TWISTED:
            inv = ", e inverted" if self.inverted else ""
            return f"TwistedPoint({self.ctx.ext}{inv})"
        return f"BNTwistedModule/{self.field}"


def bsl2n(n: int, field: FieldDescriptor) -> PresentationId:
    if n < 1:
        raise BadParameters("n must be >= 1")
    return PresentationId(BSL2N, n, field)


def bnn(n: int, field: FieldDescriptor) -> PresentationId:
    if n < 1:
        raise BadParameters("n must be >= 1")
    return PresentationId(BNN, n, field)


def bn(field: FieldDescriptor) -> PresentationId:
    return bnn(1, field)


def twisted_point(ctx: QuadExtContext, inverted: bool = False) -> PresentationId:
    return PresentationId(TWISTED, 1, ctx.base, ctx=ctx, inverted=inverted)


def bn_twisted_module(field: FieldDescriptor) -> PresentationId:
    return PresentationId(BN_TWISTED_MODULE, 1, field)


# ---------------------------------------------------------------------------
# monomial keys


def _unit_key(pres: PresentationId):
    if pres.kind == BSL2N:
        return (0,) * pres.n
    if pres.kind == BNN:
        return ((0, 0),) * pres.n
    if pres.kind == TWISTED:
        return (0, 0)
    raise PresentationMismatch("the twisted module has no unit")


def key_degree(pres: PresentationId, key) -> int:
    if pres.kind == BSL2N:
        return 2 * sum(key)
    if pres.kind == BNN:
        return 2 * sum(m for _, m in key)
    if pres.kind == TWISTED:
        return 2 * key[1]
    return 2 * key + 2  # e^m * eT


def _coeff_reduced_mod_ia(pres: PresentationId, key) -> bool:
    return pres.kind == TWISTED and (pres.inverted or key != (0, 0))


def _coeff_is_zero(pres: PresentationId, key, c: WittClass) -> bool:
    if _coeff_reduced_mod_ia(pres, key):
        return in_Ia(c, pres.ctx)
    return c.is_zero()


def _coeff_eq(pres: PresentationId, key, c1: WittClass, c2: WittClass) -> bool:
    if _coeff_reduced_mod_ia(pres, key):
        return in_Ia(c1 - c2, pres.ctx)
    return c1 == c2


class GradedElement:
    """Normal-form element: dict from monomial key to nonzero W(k) coefficient."""

    __slots__ = ("pres", "coeffs")

    def __init__(self, pres: PresentationId, coeffs: Dict):
        clean = {
            k: c for k, c in coeffs.items() if not _coeff_is_zero(pres, k, c)
        }
        object.__setattr__(self, "pres", pres)
        object.__setattr__(self, "coeffs", clean)

    def __setattr__(self, *_):
        raise AttributeError("GradedElement is immutable")

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def degrees(self) -> List[int]:
        return sorted({key_degree(self.pres, k) for k in self.coeffs})

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self) -> Optional[int]:
        ds = self.degrees()
        return ds[0] if len(ds) == 1 else None

    def constant_coefficient(self) -> WittClass:
        unit = _unit_key(self.pres)
        return self.coeffs.get(unit, zero_class(self.pres.coefficient_field()))

    # -- ring operations ----------------------------------------------------

    def _check(self, other: "GradedElement"):
        if not isinstance(other, GradedElement):
            raise PresentationMismatch(f"expected GradedElement, got {other!r}")
        if other.pres != self.pres:
            raise PresentationMismatch(f"{self.pres} vs {other.pres}")

    def __add__(self, other: "GradedElement") -> "GradedElement":
        self._check(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out[k] + c if k in out else c
        return GradedElement(self.pres, out)

    def __neg__(self) -> "GradedElement":
        return GradedElement(self.pres, {k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other: "GradedElement") -> "GradedElement":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return self * from_witt(self.pres, integer_class(other, self.pres.coefficient_field()))
        if isinstance(other, WittClass):
            return self * from_witt(self.pres, other)
        self._check(other)
        if self.pres.kind == BN_TWISTED_MODULE:
            raise PresentationMismatch(
                "products of twisted-module elements are not defined"
            )
        out: Dict = {}
        for k1, c1 in self.coeffs.items():
            for k2, c2 in other.coeffs.items():
                for key, mult in _key_mul(self.pres, k1, k2):
                    c = c1 * c2
                    if mult is not None:
                        c = c * mult
                    out[key] = out[key] + c if key in out else c
        return GradedElement(self.pres, out)

    def __rmul__(self, other):
        if isinstance(other, (int, WittClass)):
            return self.__mul__(other)
        return NotImplemented

    def __pow__(self, k: int) -> "GradedElement":
        if k < 0:
            raise ZeroInput("negative powers need localization")
        r = one_elem(self.pres)
        for _ in range(k):
            r = r * self
        return r

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedElement) or other.pres != self.pres:
            return False
        keys = set(self.coeffs) | set(other.coeffs)
        z = zero_class(self.pres.coefficient_field())
        return all(
            _coeff_eq(self.pres, k, self.coeffs.get(k, z), other.coeffs.get(k, z))
            for k in keys
        )

    def __hash__(self):
        return hash((self.pres, frozenset(self.coeffs.keys())))

    def __repr__(self):
        from .exprs import ring_str

        return f"GradedElement({ring_str(self)} in {self.pres})"


def _key_mul(pres: PresentationId, k1, k2) -> Iterable[Tuple[object, Optional[WittClass]]]:
    """Product of two normal-form monomials: (key, extra coefficient)."""
    if pres.kind == BSL2N:
        return [(tuple(a + b for a, b in zip(k1, k2)), None)]
    if pres.kind == BNN:
        key = []
        sign = 1
        for (x1, m1), (x2, m2) in zip(k1, k2):
            if m1 + m2 == 0:
                key.append(((x1 + x2) % 2, 0))
            else:
                # x*e = -e collapses any x in an e-carrying factor
                sign *= (-1) ** (x1 + x2)
                key.append((0, m1 + m2))
        mult = None if sign == 1 else integer_class(-1, pres.field)
        return [(tuple(key), mult)]
    if pres.kind == TWISTED:
        y1, m1 = k1
        y2, m2 = k2
        if y1 + y2 == 2:
            # y^2 = 2(<1> - <a>) = <1,1,-a,-a>
            return [((0, m1 + m2), _y_square(pres.ctx))]
        return [((y1 + y2, m1 + m2), None)]
    raise PresentationMismatch(pres.kind)


def _y_square(ctx: QuadExtContext) -> WittClass:
    import wittloc.fields as F

    one = F.one(ctx.base)
    na = F.neg(ctx.base, ctx.a)
    return WittClass.from_entries(ctx.base, (one, one, na, na))


# ---------------------------------------------------------------------------
# constructors and generators


def zero_elem(pres: PresentationId) -> GradedElement:
    return GradedElement(pres, {})


def from_witt(pres: PresentationId, w: WittClass) -> GradedElement:
    if w.field != pres.coefficient_field():
        raise FieldMismatch(f"{w.field} vs {pres.coefficient_field()}")
    if pres.kind == BN_TWISTED_MODULE:
        raise PresentationMismatch("the twisted module has no scalars")
    return GradedElement(pres, {_unit_key(pres): w})


def from_int(pres: PresentationId, n: int) -> GradedElement:
    return from_witt(pres, integer_class(n, pres.coefficient_field()))


def one_elem(pres: PresentationId) -> GradedElement:
    return from_int(pres, 1)


def generator_names(pres: PresentationId) -> List[str]:
    if pres.kind == BSL2N:
        names = [f"e{i}" for i in range(1, pres.n + 1)]
        return names + ["e"] if pres.n == 1 else names
    if pres.kind == BNN:
        names = [f"x{i}" for i in range(1, pres.n + 1)]
        names += [f"e{i}" for i in range(1, pres.n + 1)]
        return names + ["x", "e"] if pres.n == 1 else names
    if pres.kind == TWISTED:
        return ["e", "y", "x"]
    return ["e", "x", "eT"]


def gen(pres: PresentationId, name: str) -> GradedElement:
    one = integer_class(1, pres.coefficient_field())
    if pres.kind == BSL2N:
        if name == "e" and pres.n == 1:
            name = "e1"
        if name.startswith("e") and name[1:].isdigit():
            i = int(name[1:])
            if 1 <= i <= pres.n:
                key = tuple(1 if j == i - 1 else 0 for j in range(pres.n))
                return GradedElement(pres, {key: one})
    elif pres.kind == BNN:
        if pres.n == 1 and name in ("x", "e"):
            name += "1"
        if name[0] in "xe" and name[1:].isdigit():
            i = int(name[1:])
            if 1 <= i <= pres.n:
                fac = (1, 0) if name[0] == "x" else (0, 1)
                key = tuple(fac if j == i - 1 else (0, 0) for j in range(pres.n))
                return GradedElement(pres, {key: one})
    elif pres.kind == TWISTED:
        if name == "e":
            return GradedElement(pres, {(0, 1): one})
        if name == "y":
            return GradedElement(pres, {(1, 0): one})
        if name == "x":
            # the degree-0 class x restricts to the scalar <a>
            a_cls = WittClass.from_entries(pres.ctx.base, (pres.ctx.a,))
            return from_witt(pres, a_cls)
    elif pres.kind == BN_TWISTED_MODULE:
        if name == "eT":
            return GradedElement(pres, {0: one})
    raise UnknownGenerator(f"{name!r} is not a generator of {pres}")


def module_action(b: GradedElement, t: GradedElement) -> GradedElement:
    """W(k)[x,e]-action on the twisted module: x*eT = -eT, e*(e^m eT) = e^{m+1} eT."""
    if b.pres.kind != BNN or b.pres.n != 1:
        raise PresentationMismatch("module scalars must come from BN")
    if t.pres.kind != BN_TWISTED_MODULE:
        raise PresentationMismatch("module_action needs a twisted-module element")
    if b.pres.field != t.pres.field:
        raise FieldMismatch(f"{b.pres.field} vs {t.pres.field}")
    out: Dict = {}
    for ((x, m),), c1 in b.coeffs.items():
        for m2, c2 in t.coeffs.items():
            c = c1 * c2
            if x:
                c = -c
            key = m + m2
            out[key] = out[key] + c if key in out else c
    return GradedElement(t.pres, out)


# ---------------------------------------------------------------------------
# normalize: formal polynomials in named generators


def normalize(raw, pres: PresentationId) -> GradedElement:
    """Evaluate a formal polynomial into normal form.

    `raw` is either a GradedElement (re-normalized as-is) or an iterable of
    terms (coefficient, [(generator_name, exponent), ...]) with integer or
    WittClass coefficients.
    """
    if isinstance(raw, GradedElement):
        if raw.pres != pres:
            raise PresentationMismatch(f"{raw.pres} vs {pres}")
        return GradedElement(pres, dict(raw.coeffs))
    if pres.kind == BN_TWISTED_MODULE:
        return _normalize_module(raw, pres)
    total = zero_elem(pres)
    for coeff, powers in raw:
        term = _coeff_elem(pres, coeff)
        for name, exp in powers:
            if exp < 0:
                raise ZeroInput("negative exponents need localization")
            term = term * (gen(pres, name) ** exp)
        total = total + term
    return total


def _coeff_elem(pres: PresentationId, coeff) -> GradedElement:
    if isinstance(coeff, WittClass):
        return from_witt(pres, coeff)
    if isinstance(coeff, int):
        return from_int(pres, coeff)
    raise UnknownGenerator(f"bad coefficient {coeff!r}")


def _normalize_module(raw, pres: PresentationId) -> GradedElement:
    bn_pres = bnn(1, pres.field)
    total = GradedElement(pres, {})
    for coeff, powers in raw:
        scalar = _coeff_elem(bn_pres, coeff)
        et_count = 0
        for name, exp in powers:
            if name == "eT":
                et_count += exp
            else:
                scalar = scalar * (gen(bn_pres, name) ** exp)
        if et_count != 1:
            raise PresentationMismatch(
                "twisted-module terms need exactly one factor eT (products of "
                "eT are not defined)"
            )
        total = total + module_action(scalar, GradedElement(pres, {0: integer_class(1, pres.field)}))
    return total


# ---------------------------------------------------------------------------
# distinguished elements


def e_star(n: int, field: FieldDescriptor) -> GradedElement:
    """prod_i e_i * prod_{j<i} (e_i - e_j) in BSL2n(n)."""
    pres = bsl2n(n, field)
    out = one_elem(pres)
    for i in range(1, n + 1):
        out = out * gen(pres, f"e{i}")
    for i in range(1, n + 1):
        for j in range(1, i):
            out = out * (gen(pres, f"e{i}") - gen(pres, f"e{j}"))
    return out


def kunneth(xs: List[GradedElement]) -> GradedElement:
    """External product over a product presentation (BSL2n or BNn factors)."""
    if not xs:
        raise BadParameters("kunneth needs at least one factor")
    kind = xs[0].pres.kind
    field = xs[0].pres.field
    if kind not in (BSL2N, BNN):
        raise PresentationMismatch(f"kunneth is defined for BSL2n/BNn, not {kind}")
    total_n = 0
    for x in xs:
        if x.pres.kind != kind:
            raise PresentationMismatch(f"{x.pres.kind} vs {kind}")
        if x.pres.field != field:
            raise FieldMismatch(f"{x.pres.field} vs {field}")
        total_n += x.pres.n
    pres = bsl2n(total_n, field) if kind == BSL2N else bnn(total_n, field)
    out: Dict = {(): integer_class(1, field)}
    for x in xs:
        nxt: Dict = {}
        for k1, c1 in out.items():
            for k2, c2 in x.coeffs.items():
                key = k1 + k2
                c = c1 * c2
                nxt[key] = nxt[key] + c if key in nxt else c
        out = nxt
    return GradedElement(pres, out)


def n_loc_multiplier(orbit_types: List[Tuple[int, str]]) -> int:
    """lcm of {1 for type a, m for b and c+, 2m for c-}."""
    M = 1
    for m, tag in orbit_types:
        if m < 1:
            raise NonPositiveExponent(f"character exponent must be >= 1, got {m}")
        if tag == "a":
            part = 1
        elif tag in ("b", "c+"):
            part = m
        elif tag == "c-":
            part = 2 * m
        else:
            raise BadParameters(f"unknown orbit type tag {tag!r}")
        M = math.lcm(M, part)
    return M


# ---------------------------------------------------------------------------
# localization


@dataclass(frozen=True)
class LocalizedElement:
    pres: PresentationId          # carrier presentation after localizing
    numerator: GradedElement
    inverted: GradedElement       # homogeneous nonzero denominator base
    dexp: int

    def __repr__(self):
        from .exprs import ring_str

        if self.dexp == 0:
            return f"Localized({ring_str(self.numerator)})"
        return (
            f"Localized(({ring_str(self.numerator)}) / "
            f"({ring_str(self.inverted)})^{self.dexp})"
        )


def localization_carrier(pres: PresentationId) -> PresentationId:
    if pres.kind == BSL2N:
        return pres
    if pres.kind == BNN:
        return bsl2n(pres.n, pres.field)
    if pres.kind == TWISTED:
        return twisted_point(pres.ctx, inverted=True)
    raise PresentationMismatch(f"cannot localize {pres}")


def localize_element(x: GradedElement, carrier: PresentationId) -> GradedElement:
    """Image of x under the localization map into the carrier presentation."""
    if x.pres.kind == BSL2N:
        return x
    if x.pres.kind == BNN:
        # x_i maps to -1
        out: Dict = {}
        for key, c in x.coeffs.items():
            sign = sum(xi for xi, _ in key)
            newkey = tuple(m for _, m in key)
            cc = -c if sign % 2 else c
            out[newkey] = out[newkey] + cc if newkey in out else cc
        return GradedElement(carrier, out)
    if x.pres.kind == TWISTED:
        return GradedElement(carrier, dict(x.coeffs))
    raise PresentationMismatch(f"cannot localize {x.pres}")


def localize(x: GradedElement, s: GradedElement) -> LocalizedElement:
    if x.pres != s.pres:
        raise PresentationMismatch(f"{x.pres} vs {s.pres}")
    carrier = localization_carrier(x.pres)
    s_loc = localize_element(s, carrier)
    if not s_loc.is_homogeneous() or s_loc.is_zero() or s_loc.degree() == 0:
        raise NonHomogeneousDenominator(
            "denominator must be homogeneous of positive degree and nonzero "
            "in the localized ring"
        )
    return LocalizedElement(carrier, localize_element(x, carrier), s_loc, 0)


def loc_div(u: LocalizedElement, extra: int = 1) -> LocalizedElement:
    return LocalizedElement(u.pres, u.numerator, u.inverted, u.dexp + extra)


def loc_eq(u: LocalizedElement, v: LocalizedElement, max_shift: int = 2) -> bool:
    """Equality after cross-multiplication and bounded exponent shifts."""
    if u.pres != v.pres:
        return False
    if u.inverted != v.inverted:
        raise PresentationMismatch("localized elements invert different classes")
    s = u.inverted
    lhs = u.numerator * (s ** v.dexp)
    rhs = v.numerator * (s ** u.dexp)
    diff = lhs - rhs
    for _ in range(max_shift + 1):
        if diff.is_zero():
            return True
        diff = diff * s
    return False

