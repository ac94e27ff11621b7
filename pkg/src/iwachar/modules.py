"""Finitely generated torsion Lambda-modules given by elementary structure data.

A module is recorded as its elementary decomposition

    Lambda/p^{a_1} + ... + Lambda/f_1^{b_1} + ...

with each f_j a distinguished polynomial.  Everything here (characteristic
elements, mu/lambda, coinvariant ranks) depends only on that data, so results
are insensitive to the pseudo-null error hidden in a pseudo-isomorphism.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (DegreeCapExceeded, InsufficientPrecision, InvalidInput, NegativeResidual,
                     NotDivisible)
from .padic import check_prime
from .series import (IwasawaSeries, SeriesPrecision, cyclotomic_gamma, divides_polynomial,
                     is_distinguished)


def cyclotomic_degree(p: int, i: int) -> int:
    """Degree of Phi_{p^i}(1+T); 1 for the i = 0 convention (the factor T)."""
    return 1 if i == 0 else p ** (i - 1) * (p - 1)


@dataclass(frozen=True)
class ElementaryModule:
    precision: SeriesPrecision
    p_part: tuple = ()
    poly_part: tuple = ()  # pairs (distinguished series, multiplicity)

    def __post_init__(self):
        object.__setattr__(self, "p_part", tuple(int(a) for a in self.p_part))
        object.__setattr__(self, "poly_part", tuple((f, int(b)) for f, b in self.poly_part))
        for a in self.p_part:
            if a < 1:
                raise InvalidInput(f"p-power exponents must be >= 1, got {a}")
        for f, b in self.poly_part:
            if f.p != self.precision.p:
                raise InvalidInput("factor has the wrong prime")
            if b < 1:
                raise InvalidInput(f"multiplicities must be >= 1, got {b}")
            if not is_distinguished(f) or f.degree() < 1:
                raise InvalidInput(f"factor {f} is not a nonconstant distinguished polynomial")

    @property
    def p(self) -> int:
        return self.precision.p

    @classmethod
    def cyclotomic(cls, prec: SeriesPrecision, multiplicities: dict, p_part=()) -> ElementaryModule:
        """Direct sum of (Lambda/Phi_{p^i})^{count}, from a map i -> count."""
        poly = []
        for i, count in sorted(multiplicities.items()):
            poly.extend([(cyclotomic_gamma(prec.p, i, prec), 1)] * count)
        return cls(prec, tuple(p_part), tuple(poly))

    def direct_sum(self, other: ElementaryModule) -> ElementaryModule:
        prec = self.precision.meet(other.precision)
        poly = [(f.reduce(prec.coeff_precision, prec.degree_cap), b)
                for f, b in self.poly_part + other.poly_part]
        return ElementaryModule(prec, self.p_part + other.p_part, tuple(poly))


@dataclass(frozen=True)
class CorankSequence:
    p: int
    ranks: tuple = field(default=())

    def __post_init__(self):
        check_prime(self.p)
        ranks = tuple(int(r) for r in self.ranks)
        if not ranks:
            raise InvalidInput("corank sequence is empty")
        if any(r < 0 for r in ranks):
            raise InvalidInput("coranks must be nonnegative")
        if any(b < a for a, b in zip(ranks, ranks[1:])):
            raise InvalidInput(f"coranks must be non-decreasing along the tower, got {list(ranks)}")
        object.__setattr__(self, "ranks", ranks)


def module_mu_lambda(mod: ElementaryModule) -> tuple[int, int]:
    return sum(mod.p_part), sum(b * f.degree() for f, b in mod.poly_part)


def char_element(mod: ElementaryModule) -> IwasawaSeries:
    mu, lam = module_mu_lambda(mod)
    prec = mod.precision
    if mu >= prec.coeff_precision:
        raise InsufficientPrecision(f"mu = {mu} needs coefficient precision > {mu}")
    if lam >= prec.degree_cap:
        raise DegreeCapExceeded(f"lambda = {lam} needs degree cap > {lam}")
    result = IwasawaSeries.constant(prec.p ** mu, prec)
    for f, b in mod.poly_part:
        result = result * f ** b
    return result


def coinvariant_rank(mod: ElementaryModule, n: int) -> int:
    """Zp-rank of the Gamma_n-coinvariants, i.e. of M / omega_n M.

    omega_n is the squarefree product of the Phi_{p^i}(1+T), i <= n, which
    are irreducible; Lambda/f^b therefore contributes deg gcd(f, omega_n),
    the total degree of the Phi_{p^i} dividing f, whatever b is.
    """
    if n < 0:
        raise InvalidInput("level must be nonnegative")
    prec = mod.precision
    p = prec.p
    if p ** n >= prec.degree_cap:
        raise DegreeCapExceeded(f"omega_{n} has degree {p ** n} >= degree cap {prec.degree_cap}")
    cyclos = [cyclotomic_gamma(p, i, prec) for i in range(n + 1)]
    total = 0
    for f, _ in mod.poly_part:
        for i, phi in enumerate(cyclos):
            if phi.degree() <= f.degree() and divides_polynomial(phi, f):
                total += cyclotomic_degree(p, i)
    return total


@dataclass(frozen=True)
class Semisimple:
    witness: int


@dataclass(frozen=True)
class Inconclusive:
    pass


def semisimple_criterion(lam: int, seq: CorankSequence) -> Semisimple | Inconclusive:
    """Sufficient test: some coinvariant rank already equals lambda."""
    if any(r > lam for r in seq.ranks):
        raise InvalidInput(f"a corank exceeds lambda = {lam}; impossible for a torsion module")
    for n, r in enumerate(seq.ranks):
        if r == lam:
            return Semisimple(n)
    return Inconclusive()


@dataclass(frozen=True)
class StructureDeduction:
    p: int
    multiplicities: tuple  # a_i = multiplicity of Phi_{p^i}(1+T)
    residual_lambda: int
    verdict: Semisimple | Inconclusive

    def to_module(self, prec: SeriesPrecision) -> ElementaryModule:
        """Module built from the cyclotomic part; the residual lambda is not representable."""
        return ElementaryModule.cyclotomic(prec, dict(enumerate(self.multiplicities)))

    def factor_labels(self) -> list[str]:
        out = []
        for i, a in enumerate(self.multiplicities):
            if a:
                name = "T" if i == 0 else f"Phi_{self.p ** i}"
                out.append(name if a == 1 else f"{name}^{a}")
        return out


def deduce_structure(p: int, seq: CorankSequence, lam: int) -> StructureDeduction:
    """Multiplicities of the cyclotomic factors read off a corank sequence.

    r_0 counts T, and each increase r_n - r_{n-1} is the degree of
    Phi_{p^n} times its multiplicity.  Whatever part of lambda is not
    accounted for is returned as residual_lambda rather than guessed at.
    """
    check_prime(p)
    if seq.p != p:
        raise InvalidInput(f"corank sequence is for p = {seq.p}, not {p}")
    mults = [seq.ranks[0]]
    for n in range(1, len(seq.ranks)):
        diff = seq.ranks[n] - seq.ranks[n - 1]
        deg = cyclotomic_degree(p, n)
        if diff % deg:
            raise NotDivisible(f"r_{n} - r_{n - 1} = {diff} is not a multiple of deg Phi_{p ** n} = {deg}")
        mults.append(diff // deg)
    used = sum(a * cyclotomic_degree(p, i) for i, a in enumerate(mults))
    if used > lam:
        raise NegativeResidual(f"cyclotomic factors have total degree {used} > lambda = {lam}")
    return StructureDeduction(p, tuple(mults), lam - used, semisimple_criterion(lam, seq))
