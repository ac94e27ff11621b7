"""Fractions of Iwasawa series, Akashi series and evaluation at Artin representations.

Akashi series and evaluations of characteristic elements are only defined up
to units of Lambda.  Accordingly the total operations here are equality (by
cross-multiplication), the order of vanishing at T = 0, and the p-adic
valuation of the leading value; an explicit leading value is never claimed to
be canonical.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import (IndeterminateOrder, InsufficientPrecision, InvalidInput, NotAUnit, PrimeMismatch,
                     TorsionViolation)
from .padic import PadicInt, vp
from .series import (Indeterminate, IwasawaSeries, SeriesPrecision, is_unit, leading_value,
                     ord_at_zero, substitute_index)


def _ord(f: IwasawaSeries) -> int:
    r = ord_at_zero(f)
    if isinstance(r, Indeterminate):
        raise IndeterminateOrder(f"order at T = 0 is at least {r.bound}, not certified")
    return r


class FractionElement:
    """num / den in the fraction field of Lambda.

    ``unit_class`` marks a factor that is known only to be some unit: the
    stored representative 1 carries the right order (zero) but not a
    meaningful value, and the flag propagates through products.
    """

    __slots__ = ("num", "den", "unit_class")

    def __init__(self, num: IwasawaSeries, den: IwasawaSeries | None = None, unit_class: bool = False):
        if den is None:
            den = IwasawaSeries.one(num.precision)
        if num.p != den.p:
            raise PrimeMismatch("numerator and denominator use different primes")
        if den.is_zero():
            raise InvalidInput("denominator vanishes at working precision")
        self.num = num
        self.den = den
        self.unit_class = unit_class

    @classmethod
    def one(cls, prec: SeriesPrecision, unit_class: bool = False) -> FractionElement:
        return cls(IwasawaSeries.one(prec), IwasawaSeries.one(prec), unit_class)

    @property
    def precision(self) -> SeriesPrecision:
        return self.num.precision.meet(self.den.precision)

    def __mul__(self, other: FractionElement) -> FractionElement:
        return FractionElement(self.num * other.num, self.den * other.den,
                               self.unit_class or other.unit_class)

    def __truediv__(self, other: FractionElement) -> FractionElement:
        return self * other.inverse()

    def inverse(self) -> FractionElement:
        if self.num.is_zero():
            raise ZeroDivisionError("fraction vanishes at working precision")
        return FractionElement(self.den, self.num, self.unit_class)

    def __pow__(self, k: int) -> FractionElement:
        if k < 0:
            return self.inverse() ** (-k)
        return FractionElement(self.num ** k, self.den ** k, self.unit_class)

    def __eq__(self, other):
        if not isinstance(other, FractionElement):
            return NotImplemented
        return (self.num * other.den).congruent(other.num * self.den)

    __hash__ = None

    def ord(self) -> int:
        return _ord(self.num) - _ord(self.den)

    def leading_valuation(self) -> int:
        """p-adic valuation of the leading value; well defined modulo units."""
        a, b = leading_value(self.num), leading_value(self.den)
        return vp(a.residue, a.p) - vp(b.residue, b.p)

    def reduced(self) -> FractionElement:
        """Cancel the common power of T (the degree cap drops accordingly)."""
        if self.num.is_zero():
            return self
        k = min(_ord(self.num), _ord(self.den))
        if k == 0:
            return self
        return FractionElement(self.num.shift_down(k), self.den.shift_down(k), self.unit_class)

    def to_json(self) -> dict:
        out = {
            "num": self.num.to_json()["coeffs"],
            "den": self.den.to_json()["coeffs"],
            "certified_precision": self.precision.coeff_precision,
            "degree_cap": self.precision.degree_cap,
            "unit_class": self.unit_class,
        }
        if not self.num.is_zero():
            out["ord"] = self.ord()
        return out

    def __repr__(self):
        tag = ", unit class" if self.unit_class else ""
        return f"FractionElement(({self.num}) / ({self.den}){tag})"


def ord_of_fraction(x: FractionElement) -> int:
    return x.ord()


@dataclass(frozen=True)
class GradedCharList:
    """Characteristic elements ch(H_i(H, M)) indexed by homological degree i."""

    entries: tuple  # pairs (degree, IwasawaSeries)
    precision: SeriesPrecision | None = None

    def __post_init__(self):
        entries = tuple((int(i), f) for i, f in self.entries)
        degrees = [i for i, _ in entries]
        if len(set(degrees)) != len(degrees):
            raise InvalidInput("homological degrees must be distinct")
        if any(i < 0 for i in degrees):
            raise InvalidInput("homological degrees must be nonnegative")
        if not entries and self.precision is None:
            raise InvalidInput("an empty list needs an explicit precision")
        object.__setattr__(self, "entries", entries)

    def shifted(self, by: int = 1) -> GradedCharList:
        return GradedCharList(tuple((i + by, f) for i, f in self.entries), self.precision)


def akashi_compose(chs: GradedCharList) -> FractionElement:
    """Alternating product: even degrees in the numerator, odd in the denominator."""
    prec = chs.precision or chs.entries[0][1].precision
    num = IwasawaSeries.one(prec)
    den = IwasawaSeries.one(prec)
    for i, f in chs.entries:
        if f.is_zero():
            raise TorsionViolation(f"H_{i} has vanishing characteristic element: not torsion")
        if i % 2:
            den = den * f
        else:
            num = num * f
    return FractionElement(num, den)


class LocalFactorRule(enum.Enum):
    GOOD_ORDINARY = "good_ordinary"
    SPLIT_MULT_CASE_I = "split_I"
    SPLIT_MULT_CASE_II = "split_II"
    NON_SPLIT_MULT = "nonsplit"
    AWAY_FROM_P = "away"

    @classmethod
    def parse(cls, name: str) -> LocalFactorRule:
        key = name.strip()
        for rule in cls:
            if key in (rule.value, rule.name, rule.name.lower()):
                return rule
        raise InvalidInput(f"unknown local factor {name!r}; expected one of "
                           + ", ".join(r.value for r in cls))


# Order of vanishing contributed by each kind of local factor.  CaseI split
# multiplicative primes contribute exactly T; CaseII and primes away from p
# contribute some unit; good ordinary and non-split primes contribute 1.
LOCAL_FACTOR_ORD = {
    LocalFactorRule.GOOD_ORDINARY: 0,
    LocalFactorRule.SPLIT_MULT_CASE_I: 1,
    LocalFactorRule.SPLIT_MULT_CASE_II: 0,
    LocalFactorRule.NON_SPLIT_MULT: 0,
    LocalFactorRule.AWAY_FROM_P: 0,
}

_UNIT_CLASS = {LocalFactorRule.SPLIT_MULT_CASE_II, LocalFactorRule.AWAY_FROM_P}


def local_factor(rule: LocalFactorRule, prec: SeriesPrecision) -> tuple[FractionElement, int]:
    if rule is LocalFactorRule.SPLIT_MULT_CASE_I:
        value = FractionElement(IwasawaSeries.gen(prec))
    else:
        value = FractionElement.one(prec, unit_class=rule in _UNIT_CLASS)
    return value, LOCAL_FACTOR_ORD[rule]


def akashi_selmer_formula(ch_cyc: IwasawaSeries, local_rules, prec: SeriesPrecision | None = None
                          ) -> FractionElement:
    """Akashi series of the dual Selmer group: ch_cyc times the local factors."""
    prec = prec or ch_cyc.precision
    if ch_cyc.is_zero():
        raise TorsionViolation("cyclotomic characteristic element vanishes: not torsion")
    result = FractionElement(ch_cyc.reduce(prec.coeff_precision, prec.degree_cap)
                             if ch_cyc.precision != prec else ch_cyc)
    for rule in local_rules:
        factor, _ = local_factor(rule, prec)
        result = result * factor
    return result


@dataclass(frozen=True)
class InducedEvaluation:
    series: IwasawaSeries
    ord: int
    leading_correction: PadicInt


def eval_induced(f_in_tu: IwasawaSeries, d: int) -> InducedEvaluation:
    """Pass from a series in T_U = (1+T)^d - 1 to one in T.

    The order is unchanged and the leading value picks up the factor d^ord.
    """
    r = _ord(f_in_tu)
    g = substitute_index(f_in_tu, d)
    prec = f_in_tu.precision
    if r >= prec.degree_cap or g.coeffs[r] == 0:
        # the leading coefficient c_r d^r vanishes mod p^N: order not certified
        raise InsufficientPrecision(f"leading coefficient times {d}^{r} vanishes at working precision")
    return InducedEvaluation(g, r, PadicInt.of(prec.p, prec.coeff_precision, d ** r))


def artin_formalism_check(ak_big: FractionElement, ak_small: FractionElement,
                          phi_rho: FractionElement, unit_norm: IwasawaSeries, p: int, n: int) -> bool:
    """ord-level Artin formalism between the two Akashi series of a tower step.

    ord(big) = ord(small) + p^{n-1}(p-1) ord(phi_rho) + (p-1) ord(unit_norm);
    the last term is zero because unit_norm must be a unit.
    """
    if n < 1:
        raise InvalidInput("tower level n must be >= 1")
    if not is_unit(unit_norm):
        raise NotAUnit("norm factor is not a unit of Lambda")
    dim = p ** (n - 1) * (p - 1)
    return ak_big.ord() == ak_small.ord() + dim * phi_rho.ord() + (p - 1) * _ord(unit_norm)
