"""The truncated Iwasawa algebra (Z/p^N)[T]/(T^M).

An :class:`IwasawaSeries` stores the coefficients ``c_0 .. c_{M-1}`` of an
element of Zp[[T]] modulo ``(p^N, T^M)``.  Structural operations (Weierstrass
preparation, norms) act on the polynomial representative ``sum c_i T^i``;
that representative is a genuine element of Zp[[T]], so results are exact at
the reported coefficient precision.

Binary operations take the minimum of the operands' coefficient precision and
degree cap.  Results that cannot be certified at working precision raise
(:class:`~iwachar.errors.InsufficientPrecision` and subclasses) instead of
returning a wrong value.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from .errors import (DegreeCapExceeded, IndeterminateOrder, InsufficientPrecision,
                     InvalidInput, NotAUnit, PrimeMismatch)
from .padic import PadicInt, check_prime, floor_log, vp

# ---------------------------------------------------------------------------
# coefficient-list kernels (lists of residues mod `mod`)


def _trim(a):
    n = len(a)
    while n and a[n - 1] == 0:
        n -= 1
    return a[:n]


def _mul_trunc(a, b, mod, length):
    """Product of two coefficient lists, reduced mod `mod` and truncated to `length`."""
    a = _trim(list(a[:length]))
    b = _trim(list(b[:length]))
    if not a or not b:
        return [0] * length
    # Kronecker substitution: pack into byte-aligned big ints, multiply once
    bound = min(len(a), len(b)) * (mod - 1) ** 2
    w = bound.bit_length() // 8 + 1
    pa = int.from_bytes(b"".join(c.to_bytes(w, "little") for c in a), "little")
    pb = int.from_bytes(b"".join(c.to_bytes(w, "little") for c in b), "little")
    raw = (pa * pb).to_bytes(w * (len(a) + len(b)), "little")
    n = min(len(a) + len(b) - 1, length)
    out = [int.from_bytes(raw[i * w:(i + 1) * w], "little") % mod for i in range(n)]
    out.extend([0] * (length - n))
    return out


def _add(a, b, mod):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return [(x + y) % mod for x, y in zip(a, b)]


def _sub(a, b, mod):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return [(x - y) % mod for x, y in zip(a, b)]


def _inv_trunc(v, mod, length):
    """Inverse of a series with unit constant term, mod (mod, T^length)."""
    x = [pow(v[0], -1, mod)]
    k = 1
    while k < length:
        k = min(2 * k, length)
        e = _mul_trunc(v, x, mod, k)
        e = [(-c) % mod for c in e]
        e[0] = (e[0] + 2) % mod
        x = _mul_trunc(x, e, mod, k)
    return x + [0] * (length - len(x))


def _compose(f, s, mod, length):
    """f(s) truncated at T^length; s must have zero constant term."""
    f = _trim(list(f[:length]))
    acc = [0] * length
    for c in reversed(f):
        acc = _mul_trunc(acc, s, mod, length)
        acc[0] = (acc[0] + c) % mod
    return acc


def _divmod_monic(f, g, mod):
    """Polynomial division by a monic polynomial g; returns (quotient, remainder)."""
    f = list(f)
    g = _trim(list(g))
    dg = len(g) - 1
    if g[-1] % mod != 1 % mod:
        raise InvalidInput("divisor must be monic")
    if len(f) <= dg:
        return [0], f
    q = [0] * (len(f) - dg)
    for i in range(len(f) - 1, dg - 1, -1):
        c = f[i] % mod
        if c:
            q[i - dg] = c
            for j in range(dg + 1):
                f[i - dg + j] = (f[i - dg + j] - c * g[j]) % mod
    return q, [c % mod for c in f[:dg]]


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Indeterminate:
    """Order of vanishing not certifiable: every stored coefficient is zero (ord >= bound)."""

    bound: int


@dataclass(frozen=True)
class SeriesPrecision:
    p: int
    coeff_precision: int
    degree_cap: int
    # Reserved for coefficient rings O larger than Zp; only 1 is supported.
    residue_degree: int = 1

    def __post_init__(self):
        check_prime(self.p)
        if self.coeff_precision < 1 or self.degree_cap < 1:
            raise InvalidInput("coefficient precision and degree cap must be >= 1")
        if self.residue_degree != 1:
            raise InvalidInput("only Zp coefficients (residue_degree = 1) are supported")

    @property
    def modulus(self) -> int:
        return self.p ** self.coeff_precision

    def meet(self, other: SeriesPrecision) -> SeriesPrecision:
        if self.p != other.p:
            raise PrimeMismatch(f"cannot combine {self.p}-adic and {other.p}-adic series")
        return SeriesPrecision(self.p, min(self.coeff_precision, other.coeff_precision),
                               min(self.degree_cap, other.degree_cap))

    def with_coeff_precision(self, n: int) -> SeriesPrecision:
        if n < 1:
            raise InsufficientPrecision("no p-adic digits left to certify")
        return SeriesPrecision(self.p, n, self.degree_cap)


@dataclass(frozen=True)
class IwasawaSeries:
    precision: SeriesPrecision
    coeffs: tuple = field(default=())

    def __post_init__(self):
        prec = self.precision
        mod = prec.modulus
        cs = [int(c) % mod for c in self.coeffs[:prec.degree_cap]]
        cs.extend([0] * (prec.degree_cap - len(cs)))
        object.__setattr__(self, "coeffs", tuple(cs))

    # constructors
    @classmethod
    def from_coeffs(cls, coeffs, p: int, coeff_precision: int, degree_cap: int) -> IwasawaSeries:
        if len(_trim(list(coeffs))) > degree_cap:
            raise DegreeCapExceeded(f"{len(coeffs)} coefficients exceed degree cap {degree_cap}")
        return cls(SeriesPrecision(p, coeff_precision, degree_cap), tuple(coeffs))

    @classmethod
    def constant(cls, c: int, prec: SeriesPrecision) -> IwasawaSeries:
        return cls(prec, (c,))

    @classmethod
    def one(cls, prec: SeriesPrecision) -> IwasawaSeries:
        return cls(prec, (1,))

    @classmethod
    def gen(cls, prec: SeriesPrecision) -> IwasawaSeries:
        """The variable T."""
        if prec.degree_cap < 2:
            raise DegreeCapExceeded("degree cap 1 cannot hold T")
        return cls(prec, (0, 1))

    # basic accessors
    @property
    def p(self) -> int:
        return self.precision.p

    @property
    def modulus(self) -> int:
        return self.precision.modulus

    def __getitem__(self, i):
        return self.coeffs[i]

    def __len__(self):
        return len(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def degree(self) -> int:
        """Degree of the polynomial representative (-1 for zero)."""
        return len(_trim(list(self.coeffs))) - 1

    def _like(self, coeffs, prec: SeriesPrecision | None = None) -> IwasawaSeries:
        return IwasawaSeries(prec or self.precision, tuple(coeffs))

    def _lift(self, other):
        if isinstance(other, IwasawaSeries):
            return other
        if isinstance(other, int):
            return IwasawaSeries.constant(other, self.precision)
        if isinstance(other, PadicInt):
            if other.p != self.p:
                raise PrimeMismatch("prime mismatch")
            prec = self.precision.with_coeff_precision(
                min(self.precision.coeff_precision, other.precision))
            return IwasawaSeries.constant(other.residue, prec)
        return NotImplemented

    # arithmetic
    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        prec = self.precision.meet(other.precision)
        return self._like(_add(self.coeffs, other.coeffs, prec.modulus), prec)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        prec = self.precision.meet(other.precision)
        return self._like(_sub(self.coeffs, other.coeffs, prec.modulus), prec)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __neg__(self):
        return self._like([-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, int):
            return self._like([c * other for c in self.coeffs])
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        prec = self.precision.meet(other.precision)
        return self._like(_mul_trunc(self.coeffs, other.coeffs, prec.modulus, prec.degree_cap), prec)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise InvalidInput("negative powers are not defined in Zp[[T]] in general")
        result = IwasawaSeries.one(self.precision)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def reduce(self, coeff_precision: int | None = None, degree_cap: int | None = None) -> IwasawaSeries:
        """Forget digits and/or high-degree coefficients."""
        n = self.precision.coeff_precision if coeff_precision is None else coeff_precision
        m = self.precision.degree_cap if degree_cap is None else degree_cap
        if n > self.precision.coeff_precision or m > self.precision.degree_cap:
            raise InsufficientPrecision("cannot increase precision of a truncated series")
        return IwasawaSeries(SeriesPrecision(self.p, n, m), self.coeffs[:m])

    def congruent(self, other: IwasawaSeries, coeff_precision: int | None = None,
                  degree_cap: int | None = None) -> bool:
        """Equality modulo (p^n, T^m), by default at the common precision."""
        prec = self.precision.meet(other.precision)
        n = prec.coeff_precision if coeff_precision is None else min(coeff_precision, prec.coeff_precision)
        m = prec.degree_cap if degree_cap is None else min(degree_cap, prec.degree_cap)
        mod = self.p ** n
        return all((a - b) % mod == 0 for a, b in zip(self.coeffs[:m], other.coeffs[:m]))

    def inverse(self) -> IwasawaSeries:
        if not is_unit(self):
            raise NotAUnit("constant term is divisible by p")
        return self._like(_inv_trunc(self.coeffs, self.modulus, self.precision.degree_cap))

    def __call__(self, s: IwasawaSeries) -> IwasawaSeries:
        """Composition f(s) for s with zero constant term."""
        if s.coeffs[0] % s.modulus:
            raise InvalidInput("can only substitute a series without constant term")
        prec = self.precision.meet(s.precision)
        return self._like(_compose(self.coeffs, s.coeffs, prec.modulus, prec.degree_cap), prec)

    def shift_down(self, r: int) -> IwasawaSeries:
        """Divide by T^r; the coefficients below r must vanish.  The degree cap drops by r."""
        if any(self.coeffs[:r]):
            raise InvalidInput(f"series is not divisible by T^{r}")
        prec = SeriesPrecision(self.p, self.precision.coeff_precision, max(self.precision.degree_cap - r, 1))
        return IwasawaSeries(prec, self.coeffs[r:])

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "coeff_precision": self.precision.coeff_precision,
            "degree_cap": self.precision.degree_cap,
            "coeffs": [str(c) for c in _trim(list(self.coeffs))],
        }

    @classmethod
    def from_json(cls, data: dict) -> IwasawaSeries:
        return cls.from_coeffs([int(c) for c in data["coeffs"]], int(data["p"]),
                               int(data["coeff_precision"]), int(data["degree_cap"]))

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mono = "T" if i == 1 else f"T^{i}"
                terms.append(mono if c == 1 else f"{c}*{mono}")
        body = " + ".join(terms) if terms else "0"
        return f"{body} + O({self.p}^{self.precision.coeff_precision}, T^{self.precision.degree_cap})"


# ---------------------------------------------------------------------------
# operations


def series_arith(f: IwasawaSeries, g: IwasawaSeries, op: str) -> IwasawaSeries:
    if f.p != g.p:
        raise PrimeMismatch(f"cannot combine {f.p}-adic and {g.p}-adic series")
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise InvalidInput(f"unknown operation {op!r}")


def ord_at_zero(f: IwasawaSeries) -> int | Indeterminate:
    for i, c in enumerate(f.coeffs):
        if c:
            return i
    return Indeterminate(f.precision.degree_cap)


def leading_value(f: IwasawaSeries) -> PadicInt:
    """Value of f / T^r at T = 0 where r = ord_at_zero(f)."""
    r = ord_at_zero(f)
    if isinstance(r, Indeterminate):
        raise IndeterminateOrder("series vanishes at working precision")
    return PadicInt(f.p, f.precision.coeff_precision, f.coeffs[r])


def is_unit(f: IwasawaSeries) -> bool:
    return f.coeffs[0] % f.p != 0


def is_distinguished(f: IwasawaSeries) -> bool:
    """Monic polynomial whose lower coefficients are all divisible by p."""
    d = f.degree()
    if d < 0 or f.coeffs[d] != 1 % f.modulus:
        return False
    return all(c % f.p == 0 for c in f.coeffs[:d])


def mu_lambda_raw(f: IwasawaSeries) -> tuple[int, int]:
    """(mu, lambda) read off the coefficients, without building the factorization."""
    best = None
    for i, c in enumerate(f.coeffs):
        if c:
            v = vp(c, f.p)
            if best is None or v < best[0]:
                best = (v, i)
    if best is None:
        raise InsufficientPrecision("series vanishes at working precision")
    return best


@dataclass(frozen=True)
class WeierstrassData:
    """f = p^mu * unit * distinguished, certified modulo (p^certified_precision, T^M).

    The factorization is that of the stored polynomial representative.  A
    series that agrees with it only below T^M (and whose unseen tail is
    divisible by p^mu) has a distinguished polynomial congruent to this one
    modulo p^tail_stable_precision: in Lambda/(P) the power T^lambda lies in
    p Lambda/(P), so T^M lies in p^(M // lambda) Lambda/(P).
    """

    mu: int
    lam: int
    unit: IwasawaSeries
    distinguished: IwasawaSeries
    certified_precision: int
    tail_stable_precision: int

    def reconstruct(self) -> IwasawaSeries:
        """p^mu * unit * distinguished, at precision certified_precision + mu."""
        prod = self.unit * self.distinguished
        n = self.certified_precision + self.mu
        prec = SeriesPrecision(prod.p, n, prod.precision.degree_cap)
        return IwasawaSeries(prec, tuple(c * prod.p ** self.mu for c in prod.coeffs))


def weierstrass_prepare(f: IwasawaSeries) -> WeierstrassData:
    """Weierstrass factorization of the polynomial representative of f.

    With g = f / p^mu and lambda the first index where g is a unit, the
    quotient q with T^lambda = q*g + r (deg r < lambda) is the fixed point of
    q -> V^{-1} (1 - tau(A q)), where g = A + T^lambda V splits g at degree
    lambda and tau drops the part below T^lambda.  A is divisible by p so each
    step gains one p-adic digit.  Intermediate series carry lambda extra
    degrees per iteration so the truncation at T^M never leaks into the result.
    """
    p, n_coeff, m = f.p, f.precision.coeff_precision, f.precision.degree_cap
    mu, lam = mu_lambda_raw(f)
    n_cert = n_coeff - mu
    if n_cert < 1:
        raise InsufficientPrecision("mu exhausts the coefficient precision")
    mod = p ** n_cert
    prec = SeriesPrecision(p, n_cert, m)
    g = [(c // p ** mu) % mod for c in f.coeffs]

    if lam == 0:
        return WeierstrassData(mu, 0, IwasawaSeries(prec, tuple(g)), IwasawaSeries.one(prec), n_cert, n_cert)

    iterations = n_cert + 1
    width = m + lam * (iterations + 1)
    a_part = g[:lam]
    v_part = g[lam:] + [0] * (width - (m - lam))
    v_inv = _inv_trunc(v_part, mod, width)
    one = [1] + [0] * (width - 1)
    q = v_inv
    for _ in range(iterations):
        aq = _mul_trunc(a_part, q, mod, width)
        tail = aq[lam:] + [0] * lam
        q_next = _mul_trunc(v_inv, _sub(one, tail, mod), mod, width)
        if q_next == q:
            break
        q = q_next
    qg = _mul_trunc(q, g, mod, lam + 1)
    remainder = [(-c) % mod for c in qg[:lam]]  # r = T^lam - q*g on low degrees
    dist = [(-c) % mod for c in remainder] + [1]
    unit = _inv_trunc(q, mod, m)
    return WeierstrassData(mu, lam, IwasawaSeries(prec, tuple(unit)),
                           IwasawaSeries(prec, tuple(dist)), n_cert, min(n_cert, m // lam))


def mu_lambda(f: IwasawaSeries) -> tuple[int, int]:
    w = weierstrass_prepare(f)
    return w.mu, w.lam


def binomial_series(u: PadicInt | int, prec: SeriesPrecision) -> IwasawaSeries:
    """(1+T)^u.

    An ``int`` exponent is exact.  A :class:`PadicInt` exponent known modulo
    p^N determines the coefficient of T^k only modulo p^(N - floor(log_p k)),
    so the result precision drops to N - floor(log_p (M-1)).
    """
    m = prec.degree_cap
    if isinstance(u, PadicInt):
        if u.p != prec.p:
            raise PrimeMismatch(f"exponent is {u.p}-adic, series are {prec.p}-adic")
        loss = floor_log(m - 1, prec.p) if m > 1 else 0
        n = min(prec.coeff_precision, u.precision - loss)
        if n < 1:
            raise InsufficientPrecision(
                f"exponent known mod {u.p}^{u.precision} cannot certify {m} coefficients")
        lift = u.residue
        prec = prec.with_coeff_precision(n)
    else:
        lift = int(u)
    mod = prec.modulus
    coeffs = [1]
    c = 1
    for k in range(1, m):
        c = c * (lift - k + 1) // k
        coeffs.append(c % mod)
    return IwasawaSeries(prec, tuple(coeffs))


def substitute_generator(f: IwasawaSeries, u: PadicInt | int) -> IwasawaSeries:
    """f((1+T)^u - 1): change of topological generator by the unit u."""
    residue = u.residue if isinstance(u, PadicInt) else int(u)
    if residue % f.p == 0:
        raise NotAUnit(f"{residue} is not a {f.p}-adic unit")
    s = binomial_series(u, f.precision) - 1
    return f(s)


def substitute_index(f_in_tu: IwasawaSeries, d: int) -> IwasawaSeries:
    """Rewrite a series in T_U = (1+T)^d - 1 as a series in T."""
    if not isinstance(d, int) or d < 1:
        raise InvalidInput("index d must be a positive integer")
    s = binomial_series(d, f_in_tu.precision) - 1
    return f_in_tu(s)


def cyclotomic_gamma(p: int, i: int, prec: SeriesPrecision) -> IwasawaSeries:
    """Phi_{p^i}(1+T); by convention T when i = 0."""
    if prec.p != p:
        raise PrimeMismatch("precision context has a different prime")
    if i < 0:
        raise InvalidInput("i must be nonnegative")
    if i == 0:
        return IwasawaSeries.gen(prec)
    q = p ** (i - 1)
    deg = q * (p - 1)
    if deg >= prec.degree_cap:
        raise DegreeCapExceeded(f"Phi_{p}^{i} has degree {deg} >= degree cap {prec.degree_cap}")
    # sum_{j<p} (1+T)^{j q}
    coeffs = [0] * (deg + 1)
    for j in range(p):
        e = j * q
        for k in range(e + 1):
            coeffs[k] += comb(e, k)
    return IwasawaSeries(prec, tuple(coeffs))


def omega(p: int, n: int, prec: SeriesPrecision) -> IwasawaSeries:
    """(1+T)^{p^n} - 1."""
    if prec.p != p:
        raise PrimeMismatch("precision context has a different prime")
    q = p ** n
    if q >= prec.degree_cap:
        raise DegreeCapExceeded(f"omega_{n} has degree {q} >= degree cap {prec.degree_cap}")
    return IwasawaSeries(prec, tuple([0] + [comb(q, k) for k in range(1, q + 1)]))


def divides_polynomial(g: IwasawaSeries, f: IwasawaSeries) -> bool:
    """Whether the monic polynomial g divides the polynomial representative of f mod p^N."""
    prec = f.precision.meet(g.precision)
    _, r = _divmod_monic(_trim(list(f.coeffs)) or [0], list(g.coeffs), prec.modulus)
    return not any(r)


# --- norms -----------------------------------------------------------------


def _ring_mul(a, b, mod, m):
    return _mul_trunc(a, b, mod, m)


def _berkowitz_det(mat, mod, m):
    """Division-free determinant over (Z/mod)[S]/(S^m) (entries are coefficient lists)."""
    n = len(mat)
    zero = [0] * m
    one = [1] + [0] * (m - 1)
    charpoly = [one]  # coefficients of det(x - A_r), highest degree first
    for r in range(1, n + 1):
        a = mat[r - 1][r - 1]
        row = mat[r - 1][:r - 1]
        col = [mat[i][r - 1] for i in range(r - 1)]
        # first column of the Toeplitz factor: 1, -a, -R C, -R A C, ...
        column = [one, [(-c) % mod for c in a]]
        vec = col
        for k in range(r - 1):
            if k > 0:
                vec = [
                    _sum_products([mat[i][j] for j in range(r - 1)], vec, mod, m)
                    for i in range(r - 1)
                ]
            dot = _sum_products(row, vec, mod, m)
            column.append([(-c) % mod for c in dot])
        new = []
        for i in range(r + 1):
            acc = zero
            for j in range(min(i + 1, r)):
                acc = _add(acc, _ring_mul(column[i - j], charpoly[j], mod, m), mod)
            new.append(acc)
        charpoly = new
    det = charpoly[n]
    if n % 2:
        det = [(-c) % mod for c in det]
    return det


def _sum_products(xs, ys, mod, m):
    acc = [0] * m
    for x, y in zip(xs, ys):
        acc = _add(acc, _ring_mul(x, y, mod, m), mod)
    return acc


def norm_to_subalgebra(f: IwasawaSeries, d: int) -> IwasawaSeries:
    """Norm of f from Zp[T] down to Zp[T_U], T_U = (1+T)^d - 1.

    Computed as the determinant of multiplication by f on the free module
    Zp[T_U][T] / ((1+T)^d - 1 - T_U) with basis 1, T, ..., T^{d-1}.  For even
    d the product over the d conjugates sends T to -T_U; the sign
    (-1)^((d+1) lambda(f)) restores N(T) = T_U while keeping N multiplicative.
    """
    if not isinstance(d, int) or d < 1:
        raise InvalidInput("index d must be a positive integer")
    p, mod, m = f.p, f.modulus, f.precision.degree_cap
    if f.is_zero():
        return IwasawaSeries(f.precision, ())
    coeffs = _trim(list(f.coeffs))
    # reduction rule: T^d = S - sum_{0<i<d} C(d, i) T^i ; each slot is a poly in S
    binoms = [comb(d, i) % mod for i in range(d)]
    s_poly = [0, 1] + [0] * (m - 2) if m > 1 else [0]

    def times_t(vec):
        top = vec[d - 1]
        out = [[0] * m] + [list(x) for x in vec[:d - 1]]
        if any(top):
            shifted = [0] + top[:m - 1]  # top * S
            out[0] = _add(out[0], shifted, mod)
            for i in range(1, d):
                if binoms[i]:
                    out[i] = _sub(out[i], [c * binoms[i] for c in top], mod)
        return out

    # f mod g by Horner in T
    vec = [[0] * m for _ in range(d)]
    for c in reversed(coeffs):
        vec = times_t(vec)
        vec[0] = list(vec[0])
        vec[0][0] = (vec[0][0] + c) % mod
    columns = [vec]
    for _ in range(d - 1):
        columns.append(times_t(columns[-1]))
    mat = [[columns[j][i] for j in range(d)] for i in range(d)]
    det = _berkowitz_det(mat, mod, m)
    if d % 2 == 0:
        _, lam = mu_lambda_raw(f)
        if lam % 2:
            det = [(-c) % mod for c in det]
    del s_poly
    return IwasawaSeries(f.precision, tuple(det))
