"""Euler classes of SL2^n- and N-representations.

Supported SL2^n shapes: a single Sym^m factor (m odd: m!!*e_i^{m+1}, with
the fundamental case m = 1 giving e_i; m even: 0 by odd rank), a tensor
product of two fundamental factors (e_i^2 - e_j^2), and the all-even
vanishing case.  For N, e(O~(m)) is +-m*e for odd m (sign surfaced as
determinacy metadata) and only its square m^2 e^2 is available for even m.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Dict, Optional, Tuple

from .errors import BadParameters, UnsupportedIrrep
from .fields import FieldDescriptor
from .rings import GradedElement, PresentationId, bnn, bsl2n, from_int, gen, one_elem, zero_elem

EXACT = "exact"
UP_TO_SIGN = "up_to_sign"
SQUARE_ONLY = "square_only"

RHO = "rho"
RHO0 = "rho0"
RHO0_MINUS = "rho0-"


@dataclass(frozen=True)
class SL2nIrrep:
    """Sym^{m_1}(F_1) (x) ... (x) Sym^{m_n}(F_n)."""

    exponents: Tuple[int, ...]

    @property
    def rank(self) -> int:
        return prod(m + 1 for m in self.exponents)


@dataclass(frozen=True)
class NIrrep:
    tag: str
    m: int = 0

    def __post_init__(self):
        if self.tag == RHO:
            if self.m < 1:
                raise BadParameters("rho(m) needs m >= 1")
        elif self.tag in (RHO0, RHO0_MINUS):
            if self.m:
                raise BadParameters(f"{self.tag} carries no exponent")
        else:
            raise BadParameters(f"unknown N-irrep tag {self.tag!r}")

    @property
    def rank(self) -> int:
        return 2 if self.tag == RHO else 1


@dataclass(frozen=True)
class RepSum:
    """Formal sum of irreps with positive multiplicities over SL2^n or N."""

    group: Tuple
    summands: Tuple[Tuple[object, int], ...]

    def __post_init__(self):
        for irrep, mult in self.summands:
            if mult < 1:
                raise BadParameters("multiplicities must be >= 1")
            if self.group[0] == "SL2n":
                if not isinstance(irrep, SL2nIrrep) or len(irrep.exponents) != self.group[1]:
                    raise BadParameters(f"bad SL2n({self.group[1]}) irrep {irrep!r}")
            elif self.group[0] == "N":
                if not isinstance(irrep, NIrrep):
                    raise BadParameters(f"bad N irrep {irrep!r}")
            else:
                raise BadParameters(f"unknown group {self.group!r}")

    @property
    def rank(self) -> int:
        return sum(irrep.rank * mult for irrep, mult in self.summands)

    def concat(self, other: "RepSum") -> "RepSum":
        if other.group != self.group:
            raise BadParameters(f"{other.group} vs {self.group}")
        return RepSum(self.group, self.summands + other.summands)


def sl2n_rep(n: int, items) -> RepSum:
    """items: iterable of exponent tuples or (exponent tuple, multiplicity)."""
    summands = []
    for it in items:
        if isinstance(it, tuple) and len(it) == 2 and isinstance(it[1], int) and isinstance(it[0], (tuple, SL2nIrrep)):
            irrep, mult = it
        else:
            irrep, mult = it, 1
        if not isinstance(irrep, SL2nIrrep):
            irrep = SL2nIrrep(tuple(irrep))
        summands.append((irrep, mult))
    return RepSum(("SL2n", n), tuple(summands))


def n_rep(items) -> RepSum:
    summands = []
    for it in items:
        if isinstance(it, tuple):
            irrep, mult = it
        else:
            irrep, mult = it, 1
        summands.append((irrep, mult))
    return RepSum(("N",), tuple(summands))


def fundamental(n: int, i: int) -> SL2nIrrep:
    return SL2nIrrep(tuple(1 if j == i - 1 else 0 for j in range(n)))


class EulerClassValue:
    """An Euler class together with how well-defined it is.

    The square is always well-defined but can be large (double-factorial
    coefficients tensor-square quickly), so it is computed on first use.
    """

    __slots__ = ("value", "determinacy", "_square", "_square_thunk")

    def __init__(self, value: Optional[GradedElement], determinacy: str, known_square):
        self.value = value
        self.determinacy = determinacy
        if callable(known_square):
            self._square = None
            self._square_thunk = known_square
        else:
            self._square = known_square
            self._square_thunk = None

    @property
    def known_square(self) -> GradedElement:
        if self._square is None:
            self._square = self._square_thunk()
        return self._square

    def require_exact(self) -> GradedElement:
        if self.determinacy != EXACT or self.value is None:
            raise UnsupportedIrrep(
                f"Euler class only known {self.determinacy}; exact value required"
            )
        return self.value


def double_factorial(m: int) -> int:
    return prod(range(m, 0, -2))


# ---------------------------------------------------------------------------


def euler_sl2n_irrep(irrep: SL2nIrrep, n: int, field: FieldDescriptor) -> EulerClassValue:
    if len(irrep.exponents) != n:
        raise BadParameters(f"irrep has {len(irrep.exponents)} exponents, group has n={n}")
    pres = bsl2n(n, field)
    nz = [(i, m) for i, m in enumerate(irrep.exponents, start=1) if m]
    if all(m % 2 == 0 for _, m in nz):
        # includes the single even-exponent case: odd rank forces vanishing
        z = zero_elem(pres)
        return EulerClassValue(z, EXACT, z)
    if len(nz) == 1:
        i, m = nz[0]
        ei = gen(pres, f"e{i}")
        if m == 1:
            val = ei
        else:
            val = from_int(pres, double_factorial(m)) * ei ** (m + 1)
        return EulerClassValue(val, EXACT, lambda: val * val)
    if len(nz) == 2 and all(m == 1 for _, m in nz):
        i, j = nz[0][0], nz[1][0]
        val = euler_tensor_pair(i, j, n, field)
        return EulerClassValue(val, EXACT, lambda: val * val)
    raise UnsupportedIrrep(
        f"no closed Euler-class formula for exponents {irrep.exponents}"
    )


def euler_tensor_pair(i: int, j: int, n: int, field: FieldDescriptor) -> GradedElement:
    """e(F_i (x) F_j) = e_i^2 - e_j^2 as written (antisymmetric in i, j)."""
    pres = bsl2n(n, field)
    ei, ej = gen(pres, f"e{i}"), gen(pres, f"e{j}")
    return ei * ei - ej * ej


def euler_n_irrep(irrep: NIrrep, field: FieldDescriptor) -> EulerClassValue:
    pres = bnn(1, field)
    if irrep.tag in (RHO0, RHO0_MINUS):
        z = zero_elem(pres)
        return EulerClassValue(z, EXACT, z)
    m = irrep.m
    e = gen(pres, "e")
    square = from_int(pres, m * m) * e * e
    if m % 2:
        return EulerClassValue(from_int(pres, m) * e, UP_TO_SIGN, square)
    # the honest class lives in the twisted module; only its square is known
    return EulerClassValue(None, SQUARE_ONLY, square)


def euler_rep(rep: RepSum, field: FieldDescriptor) -> EulerClassValue:
    """Whitney product over the summands with multiplicities."""
    if rep.group[0] == "SL2n":
        pres = bsl2n(rep.group[1], field)
        val = one_elem(pres)
        for irrep, mult in rep.summands:
            part = euler_sl2n_irrep(irrep, rep.group[1], field).value
            val = val * part ** mult
        return EulerClassValue(val, EXACT, lambda: val * val)

    pres = bnn(1, field)
    # group identical rho(m): same-m sign ambiguities square away pairwise
    counts: Dict[int, int] = {}
    for irrep, mult in rep.summands:
        if irrep.tag in (RHO0, RHO0_MINUS):
            z = zero_elem(pres)
            return EulerClassValue(z, EXACT, z)
        counts[irrep.m] = counts.get(irrep.m, 0) + mult
    value: Optional[GradedElement] = one_elem(pres)
    square = one_elem(pres)
    determinacy = EXACT
    e = gen(pres, "e")
    for m, k in sorted(counts.items()):
        sq_m = from_int(pres, m * m) * e * e
        square = square * sq_m ** k
        if m % 2:
            if value is not None:
                value = value * (from_int(pres, m) * e) ** k
            if k % 2 and determinacy == EXACT:
                determinacy = UP_TO_SIGN
        else:
            if k % 2:
                value = None
                determinacy = SQUARE_ONLY
            elif value is not None:
                value = value * sq_m ** (k // 2)
    return EulerClassValue(value, determinacy, square)


def generic_euler(rep: RepSum, field: FieldDescriptor) -> GradedElement:
    """The well-defined square representative e(V^gen)^2; 0 for odd rank."""
    pres = bsl2n(rep.group[1], field) if rep.group[0] == "SL2n" else bnn(1, field)
    if rep.rank % 2:
        return zero_elem(pres)
    return euler_rep(rep, field).known_square
