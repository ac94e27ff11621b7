"""Arithmetic scenarios: Selmer coranks and local data in, orders of vanishing out.

Coranks, analytic orders and Euler-characteristic components are input data.
The functions here only apply the vanishing-order formulas to them; every
result that depends on unproven hypotheses is reported together with them
(see :data:`HYPOTHESES`).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

try:
    import tomllib
except ImportError:  # Python < 3.11
    import tomli as tomllib

from .errors import InvalidInput, MissingData, NegativeDifference, NotDivisible
from .padic import check_prime, vp

REDUCTION_KINDS = ("good_ordinary", "split_mult", "nonsplit_mult")
MP_CASES = ("I", "II")

HYPOTHESES = {
    "vanishing": [
        "X(E/L^cyc) satisfies the semisimplicity conjecture",
        "X(E/F_inf) lies in M_H(G)",
        "E has good ordinary or multiplicative reduction at every prime above p",
    ],
    "false_tate": [
        "X(E/F_inf) lies in M_H(G)",
        "X(E/L^cyc) satisfies the semisimplicity conjecture at both levels",
    ],
    "euler": [
        "X(E/F_inf) lies in M_H(G)",
        "Sel(E/L) has finite Sha[p^inf] and nondegenerate p-adic height pairing",
    ],
    "l_value_convention": "v_lvalues is log_p |prod L_w(E,1)|_p, so a product with "
                          "p-adic valuation v contributes -v",
}


@dataclass(frozen=True)
class PrimeReduction:
    kind: str
    mp_case: str | None = None
    count: int = 1

    def __post_init__(self):
        if self.kind not in REDUCTION_KINDS:
            raise InvalidInput(f"unknown reduction kind {self.kind!r}")
        if (self.kind == "split_mult") != (self.mp_case is not None):
            raise InvalidInput("mp_case is required for split_mult primes and only for them")
        if self.mp_case is not None and self.mp_case not in MP_CASES:
            raise InvalidInput(f"mp_case must be 'I' or 'II', got {self.mp_case!r}")
        if self.count < 0:
            raise InvalidInput("prime count must be nonnegative")


@dataclass(frozen=True)
class ReductionData:
    primes_over_p: tuple = ()
    # per-level count of CaseI split multiplicative primes of L^cyc, when it
    # differs from what primes_over_p gives
    m_p: dict = field(default_factory=dict)


@dataclass(frozen=True)
class Tower:
    m: int
    levels: int

    def __post_init__(self):
        if self.levels < 0:
            raise InvalidInput("tower levels must be nonnegative")


@dataclass(frozen=True)
class EulerComponents:
    r_L: int = 0
    gamma_index: int = 1
    v_reg: int = 0
    v_sha: int = 0
    v_torsion: int = 0
    v_tamagawa: tuple = ()
    v_d: tuple = ()
    v_lvalues: int = 0


@dataclass(frozen=True)
class Scenario:
    p: int
    curve: str = ""
    reduction: ReductionData | None = None
    corank: dict = field(default_factory=dict)
    tower: Tower | None = None
    analytic: dict = field(default_factory=dict)
    euler: EulerComponents | None = None

    def __post_init__(self):
        check_prime(self.p)
        if self.tower is not None:
            check_powerfree(self.p, self.tower.m)
        for name, value in list(self.corank.items()) + list(self.analytic.items()):
            if not isinstance(value, int) or value < 0:
                raise InvalidInput(f"level {name!r}: orders must be nonnegative integers")

    def corank_at(self, level: str) -> int:
        try:
            return self.corank[level]
        except KeyError:
            raise MissingData(f"no corank given for level {level!r}") from None


def check_powerfree(p: int, m: int) -> int:
    if not isinstance(m, int) or m <= 1:
        raise InvalidInput(f"m must be an integer > 1, got {m!r}")
    q = 2
    rest = m
    while q * q <= rest:
        e = 0
        while rest % q == 0:
            rest //= q
            e += 1
        if e >= p:
            raise InvalidInput(f"m = {m} is divisible by {q}^{p}; not {p}-powerfree")
        q += 1
    return m


def scenario_from_dict(data: dict) -> Scenario:
    try:
        p = int(data["p"])
    except KeyError:
        raise MissingData("scenario has no prime p") from None
    reduction = None
    if "reduction" in data:
        red = data["reduction"]
        primes = tuple(PrimeReduction(kind=e["kind"], mp_case=e.get("mp_case"), count=int(e.get("count", 1)))
                       for e in red.get("primes_over_p", []))
        reduction = ReductionData(primes, {str(k): int(v) for k, v in red.get("m_p", {}).items()})
    tower = None
    if "tower" in data:
        tower = Tower(int(data["tower"]["m"]), int(data["tower"].get("levels", 0)))
    euler = None
    if "euler" in data:
        e = data["euler"]
        euler = EulerComponents(
            r_L=int(e.get("r_L", 0)), gamma_index=int(e.get("gamma_index", 1)),
            v_reg=int(e.get("v_reg", 0)), v_sha=int(e.get("v_sha", 0)),
            v_torsion=int(e.get("v_torsion", 0)),
            v_tamagawa=tuple(int(x) for x in e.get("v_tamagawa", [])),
            v_d=tuple(int(x) for x in e.get("v_d", [])),
            v_lvalues=int(e.get("v_lvalues", 0)))
    return Scenario(p=p, curve=str(data.get("curve", "")), reduction=reduction,
                    corank=dict(data.get("corank", {})), tower=tower,
                    analytic=dict(data.get("analytic", {})), euler=euler)


def load_scenario(path) -> Scenario:
    try:
        with Path(path).open("rb") as fh:
            data = tomllib.load(fh)
    except FileNotFoundError:
        raise MissingData(f"scenario file {path} not found") from None
    except tomllib.TOMLDecodeError as exc:
        raise InvalidInput(f"{path}: {exc}") from None
    return scenario_from_dict(data)


# ---------------------------------------------------------------------------


def m_p_count(scn: Scenario, level: str) -> int:
    red = scn.reduction
    if red is None:
        raise MissingData("scenario has no reduction data")
    if level in red.m_p:
        return red.m_p[level]
    return sum(pr.count for pr in red.primes_over_p if pr.kind == "split_mult" and pr.mp_case == "I")


def vanishing_order_regular(scn: Scenario, level: str) -> int:
    """Order of vanishing at the regular representation of Gal(L/F): corank + m_p."""
    return scn.corank_at(level) + m_p_count(scn, level)


def uncond_orders(case: str, p: int, n: int) -> int:
    check_prime(p)
    if n < 1:
        raise InvalidInput("n must be >= 1")
    if case == "a":
        return p ** n - 1
    if case == "b":
        return p ** n
    raise InvalidInput(f"case must be 'a' or 'b', got {case!r}")


def _rep_dimension(p: int, n: int) -> int:
    check_prime(p)
    if n < 1:
        raise InvalidInput("n must be >= 1")
    return p ** (n - 1) * (p - 1)


def s_via_corank_difference(p: int, n: int, corank_L: int, corank_Lprime: int) -> int:
    """Multiplicity of the degree p^{n-1}(p-1) representation in the Selmer corank jump."""
    dim = _rep_dimension(p, n)
    diff = corank_L - corank_Lprime
    if diff < 0:
        raise NegativeDifference(f"corank(L) = {corank_L} < corank(L') = {corank_Lprime}")
    if diff % dim:
        raise NotDivisible(f"corank difference {diff} is not a multiple of {dim}")
    return diff // dim


@dataclass(frozen=True)
class Determined:
    value: int


@dataclass(frozen=True)
class Undetermined:
    candidates: tuple


def darmon_tian_order(p: int, n: int, corank_L: int, corank_Lprime_lower_bound: int,
                      parity_odd: bool) -> Determined | Undetermined:
    """Squeeze the order between 0 and an upper bound, optionally keeping odd values only."""
    dim = _rep_dimension(p, n)
    diff = corank_L - corank_Lprime_lower_bound
    if diff < 0:
        raise NegativeDifference(f"corank(L) = {corank_L} below the lower bound {corank_Lprime_lower_bound}")
    candidates = [v for v in range(diff // dim + 1) if not parity_odd or v % 2 == 1]
    if len(candidates) == 1:
        return Determined(candidates[0])
    return Undetermined(tuple(candidates))


def bsd_inequality_check(ord_alg: int, ord_analytic: int) -> bool:
    return ord_alg <= ord_analytic


def analytic_lower_bound_false_tate(p: int, n: int) -> int:
    """Sum of the dimensions p^{k-1}(p-1), k = 1..n, of the nontrivial induced representations."""
    if n < 1:
        raise InvalidInput("n must be >= 1")
    return sum(_rep_dimension(p, k) for k in range(1, n + 1))


def amenability_condition(p: int, m: int) -> bool:
    """p | m, or p exactly divides m^{p-1} - 1; no check that m is p-powerfree."""
    if m % p == 0:
        return True
    t = pow(m, p - 1, p * p)
    return t % p == 1 and t != 1


def amenable_pair(p: int, m: int) -> bool:
    check_prime(p)
    check_powerfree(p, m)
    return amenability_condition(p, m)


def lvalue_contribution(v_p_of_product: int) -> int:
    """Signed term for the |prod L_w(E,1)|_p factor: |x|_p = p^{-v} contributes -v."""
    return -v_p_of_product


def euler_leading_valuation(c: EulerComponents, p: int) -> int:
    check_prime(p)
    if c.gamma_index < 1 or p ** vp(c.gamma_index, p) != c.gamma_index:
        raise InvalidInput(f"|Gamma : Gamma_L| = {c.gamma_index} is not a power of {p}")
    return (c.r_L * vp(c.gamma_index, p) + c.v_reg + c.v_sha - 2 * c.v_torsion
            + sum(c.v_tamagawa) + 2 * sum(c.v_d) + c.v_lvalues)
