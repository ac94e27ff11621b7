import itertools
import random

import pytest
from hypothesis import given, strategies as st

from iwachar import (CorankSequence, DegreeCapExceeded, ElementaryModule, Inconclusive,
                     InsufficientPrecision, InvalidInput, IwasawaSeries, NegativeResidual,
                     NotDivisible, Semisimple, SeriesPrecision, char_element, coinvariant_rank,
                     cyclotomic_gamma, deduce_structure, module_mu_lambda, mu_lambda, omega,
                     semisimple_criterion)
from iwachar.modules import cyclotomic_degree

from oracles import cokernel_free_rank, multiplication_matrix, omega_poly

P3 = SeriesPrecision(3, 16, 64)


def example_module(prec=P3):
    return ElementaryModule.cyclotomic(prec, {0: 2, 1: 2, 2: 1})


def random_distinguished(rng, p, deg, prec):
    coeffs = [p * rng.randrange(p ** 6) for _ in range(deg)] + [1]
    return IwasawaSeries(prec, tuple(coeffs))


# --- char element / mu lambda ---------------------------------------------

def test_char_element_examples():
    assert char_element(ElementaryModule(P3)) == IwasawaSeries.one(P3)
    ch = char_element(example_module())
    t, phi3, phi9 = (cyclotomic_gamma(3, i, P3) for i in range(3))
    assert ch == t ** 2 * phi3 ** 2 * phi9
    assert ch.degree() == 12 and mu_lambda(ch) == (0, 12)
    assert char_element(ElementaryModule(P3, (2,))) == IwasawaSeries.constant(9, P3)


def test_module_mu_lambda_examples():
    assert module_mu_lambda(example_module()) == (0, 12)
    assert module_mu_lambda(ElementaryModule(P3, (1, 1))) == (2, 0)
    assert module_mu_lambda(ElementaryModule(P3, (), ((cyclotomic_gamma(3, 1, P3), 2),))) == (0, 4)


def test_char_element_precision_limits():
    with pytest.raises(InsufficientPrecision):
        char_element(ElementaryModule(P3, (10, 6)))
    with pytest.raises(DegreeCapExceeded):
        char_element(ElementaryModule(P3, (), ((cyclotomic_gamma(3, 3, P3), 4),)))


def test_module_validation():
    with pytest.raises(InvalidInput):
        ElementaryModule(P3, (0,))
    with pytest.raises(InvalidInput):
        ElementaryModule(P3, (), ((IwasawaSeries(P3, (1, 1)), 1),))  # 1 + T not distinguished
    with pytest.raises(InvalidInput):
        ElementaryModule(P3, (), ((IwasawaSeries.one(P3), 1),))
    with pytest.raises(InvalidInput):
        ElementaryModule(P3, (), ((cyclotomic_gamma(3, 1, P3), 0),))


@given(st.randoms())
def test_char_element_multiplicative(rng):
    a = ElementaryModule(P3, (1,), ((random_distinguished(rng, 3, 3, P3), 2),))
    b = ElementaryModule(P3, (2,), ((cyclotomic_gamma(3, 1, P3), 1), (random_distinguished(rng, 3, 2, P3), 1)))
    assert char_element(a.direct_sum(b)) == char_element(a) * char_element(b)


# --- coinvariants ------------------------------------------------------------

def test_coinvariant_examples():
    mod = example_module()
    assert [coinvariant_rank(mod, n) for n in range(4)] == [2, 6, 12, 12]
    assert coinvariant_rank(ElementaryModule(P3, (), ((cyclotomic_gamma(3, 2, P3), 1),)), 1) == 0
    assert coinvariant_rank(ElementaryModule(P3, (5,)), 3) == 0


def test_coinvariant_degree_cap():
    with pytest.raises(DegreeCapExceeded):
        coinvariant_rank(example_module(), 4)


def test_coinvariant_ignores_multiplicity():
    phi3 = cyclotomic_gamma(3, 1, P3)
    mod = ElementaryModule(P3, (), ((phi3, 3),))
    assert coinvariant_rank(mod, 1) == 2


def test_coinvariant_sees_composite_factors():
    # a single factor T * Phi_3 (not irreducible) still contributes 1 + 2
    f = IwasawaSeries.gen(P3) * cyclotomic_gamma(3, 1, P3)
    assert coinvariant_rank(ElementaryModule(P3, (), ((f, 1),)), 1) == 3


def oracle_rank(mod, n):
    p, prec = mod.p, mod.precision
    w = omega_poly(p, n)
    total = 0
    for f, b in mod.poly_part:
        fb = f ** b
        coeffs = list(fb.coeffs[:fb.degree() + 1])
        total += cokernel_free_rank(multiplication_matrix(w, coeffs, prec.modulus), p,
                                    prec.coeff_precision)
    return total


@given(st.sampled_from([3, 5]), st.randoms())
def test_coinvariant_rank_matches_oracle(p, rng):
    prec = SeriesPrecision(p, 30, 64)
    factors = []
    for _ in range(rng.randrange(1, 4)):
        if rng.random() < 0.5:
            i = rng.randrange(0, 3 if p == 3 else 2)
            factors.append((cyclotomic_gamma(p, i, prec), rng.randrange(1, 3)))
        else:
            factors.append((random_distinguished(rng, p, rng.randrange(1, 6), prec), 1))
    mod = ElementaryModule(prec, (), tuple(factors))
    for n in range(3):
        assert coinvariant_rank(mod, n) == oracle_rank(mod, n)


@given(st.randoms())
def test_coinvariant_monotone_and_bounded(rng):
    prec = SeriesPrecision(3, 16, 64)
    factors = [(cyclotomic_gamma(3, rng.randrange(3), prec), rng.randrange(1, 3)) for _ in range(3)]
    mod = ElementaryModule(prec, (), tuple(factors))
    ranks = [coinvariant_rank(mod, n) for n in range(4)]
    assert ranks == sorted(ranks) and ranks[-1] <= module_mu_lambda(mod)[1]


# --- criterion / deduction ----------------------------------------------------

def test_criterion_examples():
    assert semisimple_criterion(12, CorankSequence(3, (2, 6, 12, 12))) == Semisimple(2)
    assert semisimple_criterion(5, CorankSequence(3, (2, 3))) == Inconclusive()
    with pytest.raises(InvalidInput):
        semisimple_criterion(3, CorankSequence(3, (4,)))


def test_corank_sequence_must_increase():
    with pytest.raises(InvalidInput):
        CorankSequence(3, (2, 1))


def test_deduce_examples():
    d = deduce_structure(3, CorankSequence(3, (2, 6, 12)), 12)
    assert d.multiplicities == (2, 2, 1) and d.residual_lambda == 0
    assert d.factor_labels() == ["T^2", "Phi_3^2", "Phi_9"]
    z = deduce_structure(3, CorankSequence(3, (0,)), 0)
    assert z.multiplicities == (0,) and z.residual_lambda == 0
    with pytest.raises(NotDivisible):
        deduce_structure(3, CorankSequence(3, (1, 2)), 2)


def test_deduce_negative_residual():
    with pytest.raises(NegativeResidual):
        deduce_structure(3, CorankSequence(3, (2, 6)), 5)


def test_deduce_reports_residual():
    d = deduce_structure(5, CorankSequence(5, (1, 5)), 9)
    assert d.multiplicities == (1, 1) and d.residual_lambda == 4
    assert d.verdict == Inconclusive()


@given(st.sampled_from([3, 5]), st.lists(st.integers(0, 3), min_size=1, max_size=3))
def test_deduce_then_coinvariants_round_trip(p, mults):
    prec = SeriesPrecision(p, 16, 128)
    ranks, total = [], 0
    for i, a in enumerate(mults):
        total += a * cyclotomic_degree(p, i)
        ranks.append(total)
    extra = 3
    d = deduce_structure(p, CorankSequence(p, tuple(ranks)), total + extra)
    assert list(d.multiplicities) == mults and d.residual_lambda == extra
    mod = d.to_module(prec)
    assert [coinvariant_rank(mod, n) for n in range(len(ranks))] == ranks
    assert module_mu_lambda(mod) == (0, total)


def test_criterion_brute_force():
    """Whenever the criterion fires, every consistent module is semisimple on cyclotomic factors.

    Enumerates all elementary modules with lambda <= 8 built from T^k,
    Phi_3^k, Phi_9^k and the non-cyclotomic Eisenstein factor T^2 + 3.
    """
    prec = SeriesPrecision(3, 16, 64)
    t, phi3, phi9 = (cyclotomic_gamma(3, i, prec) for i in range(3))
    other = IwasawaSeries(prec, (3, 0, 1))
    atoms = [(t, b) for b in (1, 2, 3)] + [(phi3, b) for b in (1, 2)] + [(phi9, 1)] + [(other, 1)]
    fired = 0
    for counts in itertools.product(range(4), range(3), range(2), range(3), range(2), range(2), range(3)):
        factors = [atom for atom, c in zip(atoms, counts) for _ in range(c)]
        mod = ElementaryModule(prec, (), tuple(factors))
        lam = module_mu_lambda(mod)[1]
        if lam > 8:
            continue
        seq = CorankSequence(3, tuple(coinvariant_rank(mod, n) for n in range(3)))
        if isinstance(semisimple_criterion(lam, seq), Semisimple):
            fired += 1
            assert all(b == 1 for _, b in factors)
            assert all(f is not other for f, _ in factors)
    assert fired > 5
