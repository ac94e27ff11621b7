"""Elements of Zp known modulo p^N.

A :class:`PadicInt` is an immutable triple ``(p, precision, residue)`` with
``0 <= residue < p**precision``.  Arithmetic takes the minimum precision of
the operands and never lifts silently.

    >>> a = PadicInt(3, 4, 5)
    >>> a + PadicInt(3, 4, 79)
    PadicInt(p=3, precision=4, residue=3)
    >>> valuation(PadicInt(3, 4, 18))
    2
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import InsufficientPrecision, InvalidInput, NotAUnit, PrimeMismatch


@lru_cache(maxsize=None)
def is_odd_prime(p: int) -> bool:
    if not isinstance(p, int) or p < 3 or p % 2 == 0:
        return False
    q = 3
    while q * q <= p:
        if p % q == 0:
            return False
        q += 2
    return True


def check_prime(p: int) -> int:
    if not is_odd_prime(p):
        raise InvalidInput(f"p must be an odd prime, got {p!r}")
    return p


def vp(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    n = abs(n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def vp_factorial(k: int, p: int) -> int:
    """Legendre's formula: v_p(k!) = sum floor(k / p^i)."""
    total, q = 0, p
    while q <= k:
        total += k // q
        q *= p
    return total


def floor_log(k: int, p: int) -> int:
    """Largest e with p^e <= k (k >= 1)."""
    e, q = 0, p
    while q <= k:
        q *= p
        e += 1
    return e


@dataclass(frozen=True)
class AtLeastPrecision:
    """Lower bound returned for a residue that vanishes at working precision."""

    bound: int


@dataclass(frozen=True)
class PadicInt:
    p: int
    precision: int
    residue: int

    def __post_init__(self):
        check_prime(self.p)
        if not isinstance(self.precision, int) or self.precision < 1:
            raise InvalidInput(f"precision must be a positive integer, got {self.precision!r}")
        modulus = self.p ** self.precision
        if not 0 <= self.residue < modulus:
            raise InvalidInput(f"residue {self.residue} outside [0, {modulus})")

    @classmethod
    def of(cls, p: int, precision: int, value: int) -> PadicInt:
        """Reduce an arbitrary integer into a PadicInt."""
        check_prime(p)
        return cls(p, precision, value % p ** precision)

    @property
    def modulus(self) -> int:
        return self.p ** self.precision

    def _coerce(self, other) -> PadicInt:
        if isinstance(other, PadicInt):
            if other.p != self.p:
                raise PrimeMismatch(f"cannot combine {self.p}-adic and {other.p}-adic values")
            return other
        if isinstance(other, int):
            return PadicInt.of(self.p, self.precision, other)
        return NotImplemented

    def _binop(self, other, fn):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n = min(self.precision, other.precision)
        return PadicInt.of(self.p, n, fn(self.residue, other.residue))

    def __add__(self, other):
        return self._binop(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._binop(other, lambda a, b: a - b)

    def __mul__(self, other):
        return self._binop(other, lambda a, b: a * b)

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other):
        return self._binop(other, lambda a, b: b - a)

    def __neg__(self):
        return PadicInt.of(self.p, self.precision, -self.residue)

    def __pow__(self, k: int):
        if k < 0:
            return invert_unit(self) ** (-k)
        return PadicInt(self.p, self.precision, pow(self.residue, k, self.modulus))

    def reduce(self, precision: int) -> PadicInt:
        if precision > self.precision:
            raise InsufficientPrecision(
                f"cannot raise precision from {self.precision} to {precision}")
        return PadicInt.of(self.p, precision, self.residue)

    def congruent(self, other, precision: int | None = None) -> bool:
        """True when the two values agree modulo p^precision (default: common precision)."""
        other = self._coerce(other)
        n = min(self.precision, other.precision)
        if precision is not None:
            n = min(n, precision)
        return (self.residue - other.residue) % self.p ** n == 0

    def to_json(self) -> dict:
        return {"p": self.p, "precision": self.precision, "residue": str(self.residue)}

    @classmethod
    def from_json(cls, data: dict) -> PadicInt:
        return cls(int(data["p"]), int(data["precision"]), int(data["residue"]))

    def __str__(self):
        return f"{self.residue} + O({self.p}^{self.precision})"


def padic_arith(a: PadicInt, b: PadicInt, op: str) -> PadicInt:
    try:
        fn = {"add": PadicInt.__add__, "sub": PadicInt.__sub__, "mul": PadicInt.__mul__}[op]
    except KeyError:
        raise InvalidInput(f"unknown operation {op!r}") from None
    if a.p != b.p:
        raise PrimeMismatch(f"cannot combine {a.p}-adic and {b.p}-adic values")
    return fn(a, b)


def valuation(a: PadicInt) -> int | AtLeastPrecision:
    if a.residue == 0:
        return AtLeastPrecision(a.precision)
    return vp(a.residue, a.p)


def is_unit(a: PadicInt) -> bool:
    return a.residue % a.p != 0


def invert_unit(a: PadicInt) -> PadicInt:
    if not is_unit(a):
        raise NotAUnit(f"{a.residue} is divisible by {a.p}")
    return PadicInt(a.p, a.precision, pow(a.residue, -1, a.modulus))


def _int_binomial(u: int, k: int) -> int:
    # generalized binomial of an integer (negative u allowed); exact
    num = 1
    for i in range(k):
        num *= u - i
    fact = 1
    for i in range(2, k + 1):
        fact *= i
    return num // fact


def padic_binomial(u: PadicInt | int, k: int, p: int | None = None,
                   precision: int | None = None) -> PadicInt:
    """C(u, k) in Zp.

    For a :class:`PadicInt` the canonical residue is used as the integer lift
    and the binomial is computed exactly over Z before reduction.  Because
    ``u`` is only known modulo p^N, C(u, k) is only determined modulo
    p^(N - floor(log_p k)); that is the precision of the result.

    A plain ``int`` is treated as an exact element of Zp and then ``p`` and
    ``precision`` must be supplied.
    """
    if k < 0:
        raise InvalidInput("k must be nonnegative")
    if isinstance(u, PadicInt):
        p, lift = u.p, u.residue
        n = u.precision - (floor_log(k, p) if k >= 1 else 0)
        if n < 1:
            raise InsufficientPrecision(
                f"C(u, {k}) undetermined: u known only mod {p}^{u.precision}")
    else:
        if p is None or precision is None:
            raise InvalidInput("exact integer u needs p and precision")
        lift, n = u, precision
    return PadicInt.of(p, n, _int_binomial(lift, k))
