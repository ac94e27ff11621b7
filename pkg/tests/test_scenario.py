import pytest
from hypothesis import given, strategies as st

from iwachar import (Determined, ElementaryModule, EulerComponents, InvalidInput, LocalFactorRule,
                     MissingData, NegativeDifference, NotDivisible, Scenario, SeriesPrecision,
                     Undetermined, akashi_selmer_formula, amenable_pair,
                     analytic_lower_bound_false_tate, bsd_inequality_check, char_element,
                     coinvariant_rank, darmon_tian_order, euler_leading_valuation, m_p_count,
                     s_via_corank_difference, uncond_orders, vanishing_order_regular)
from iwachar.scenario import (PrimeReduction, amenability_condition, ReductionData, Tower, lvalue_contribution,
                              scenario_from_dict)


def scn(primes=(), corank=None, m_p=None, **kw):
    return Scenario(p=3, reduction=ReductionData(tuple(primes), m_p or {}), corank=corank or {}, **kw)


def test_m_p_examples():
    assert m_p_count(scn([PrimeReduction("good_ordinary")]), "Q") == 0
    assert m_p_count(scn([PrimeReduction("split_mult", "II")]), "Q") == 0
    assert m_p_count(scn([PrimeReduction("split_mult", "I", count=2)]), "Q") == 2
    assert m_p_count(scn([PrimeReduction("split_mult", "I")], m_p={"F2": 3}), "F2") == 3
    with pytest.raises(MissingData):
        m_p_count(Scenario(p=3), "Q")


def test_reduction_validation():
    with pytest.raises(InvalidInput):
        PrimeReduction("split_mult")
    with pytest.raises(InvalidInput):
        PrimeReduction("good_ordinary", "I")
    with pytest.raises(InvalidInput):
        PrimeReduction("additive")


def test_vanishing_examples():
    assert vanishing_order_regular(scn([PrimeReduction("split_mult", "I")], {"L": 5}), "L") == 6
    assert vanishing_order_regular(scn([PrimeReduction("good_ordinary")], {"Q": 2}), "Q") == 2
    assert vanishing_order_regular(scn([], {"F2": 8}), "F2") == 8
    with pytest.raises(MissingData):
        vanishing_order_regular(scn([], {}), "Q")


def test_uncond_examples():
    assert [uncond_orders("a", 3, 1), uncond_orders("b", 3, 2), uncond_orders("a", 5, 1)] == [2, 9, 4]
    with pytest.raises(InvalidInput):
        uncond_orders("c", 3, 1)
    with pytest.raises(InvalidInput):
        uncond_orders("a", 3, 0)


def test_s_examples():
    assert s_via_corank_difference(3, 1, 2, 0) == 1
    assert s_via_corank_difference(3, 2, 8, 2) == 1
    with pytest.raises(NotDivisible):
        s_via_corank_difference(3, 1, 3, 0)
    with pytest.raises(NegativeDifference):
        s_via_corank_difference(3, 1, 0, 2)


@pytest.mark.parametrize("p", [3, 5, 7])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_s_is_one_along_case_a(p, n):
    lower = uncond_orders("a", p, n - 1) if n > 1 else 0
    assert s_via_corank_difference(p, n, uncond_orders("a", p, n), lower) == 1


def test_darmon_tian_examples():
    assert darmon_tian_order(3, 2, 8, 2, True) == Determined(1)
    assert darmon_tian_order(3, 1, 8, 0, True) == Undetermined((1, 3))
    assert darmon_tian_order(3, 1, 1, 0, False) == Determined(0)
    with pytest.raises(NegativeDifference):
        darmon_tian_order(3, 1, 0, 1, True)


@given(st.sampled_from([3, 5, 7]), st.integers(1, 3), st.integers(0, 60), st.integers(0, 60))
def test_darmon_tian_never_even_under_parity(p, n, a, b):
    hi, lo = max(a, b), min(a, b)
    res = darmon_tian_order(p, n, hi, lo, True)
    if isinstance(res, Determined):
        assert res.value % 2 == 1
    else:
        assert all(v % 2 == 1 for v in res.candidates)


def test_bsd_examples():
    assert bsd_inequality_check(2, 2)
    assert bsd_inequality_check(8, 8)
    assert not bsd_inequality_check(3, 2)


@pytest.mark.parametrize("p", [3, 5, 7])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_uncond_matches_analytic_bound(p, n):
    assert uncond_orders("a", p, n) == analytic_lower_bound_false_tate(p, n) == p ** n - 1


def test_amenable_examples():
    assert amenable_pair(3, 3)
    assert amenable_pair(3, 2)
    assert not amenable_pair(3, 17)  # 17^2 - 1 = 288 = 32 * 9
    assert amenable_pair(5, 2)  # 2^4 - 1 = 15
    assert not amenable_pair(5, 7)  # 7^4 - 1 = 2400 = 96 * 25
    # 8^2 - 1 = 63 is divisible by 9, but 8 = 2^3 is not 3-powerfree at all
    assert not amenability_condition(3, 8)
    with pytest.raises(InvalidInput):
        amenable_pair(3, 8)
    with pytest.raises(InvalidInput):
        amenable_pair(3, 1)


@given(st.sampled_from([3, 5, 7]), st.integers(2, 2000))
def test_amenable_matches_definition(p, m):
    if any(m % q ** p == 0 for q in range(2, 50)):
        return
    t = m ** (p - 1) - 1
    assert amenable_pair(p, m) == (m % p == 0 or (t % p == 0 and t % (p * p) != 0))


def test_euler_examples():
    assert euler_leading_valuation(EulerComponents(), 3) == 0
    assert euler_leading_valuation(EulerComponents(r_L=2, gamma_index=3), 3) == 2
    assert euler_leading_valuation(EulerComponents(v_sha=1, v_torsion=1), 3) == -1
    assert euler_leading_valuation(EulerComponents(v_lvalues=lvalue_contribution(2)), 5) == -2
    with pytest.raises(InvalidInput):
        euler_leading_valuation(EulerComponents(gamma_index=6), 3)


@given(st.integers(0, 5), st.integers(0, 3), st.integers(-4, 4), st.integers(0, 4), st.integers(0, 4),
       st.lists(st.integers(0, 3), max_size=3), st.lists(st.integers(0, 3), max_size=3), st.integers(-3, 3))
def test_euler_linear(r, g, reg, sha, tors, tam, d, lv):
    c = EulerComponents(r, 3 ** g, reg, sha, tors, tuple(tam), tuple(d), lv)
    base = euler_leading_valuation(c, 3)
    bumped = EulerComponents(r, 3 ** g, reg + 1, sha + 1, tors + 1, tuple(tam) + (1,), tuple(d) + (1,), lv + 1)
    assert euler_leading_valuation(bumped, 3) == base + 1 + 1 - 2 + 1 + 2 + 1
    assert base == r * g + reg + sha - 2 * tors + sum(tam) + 2 * sum(d) + lv


def test_tower_must_be_powerfree():
    with pytest.raises(InvalidInput):
        Scenario(p=3, tower=Tower(8, 2))
    assert Scenario(p=3, tower=Tower(12, 2)).tower.m == 12


def test_scenario_from_dict():
    s = scenario_from_dict({
        "p": 3, "curve": "X",
        "reduction": {"primes_over_p": [{"kind": "split_mult", "mp_case": "I"}]},
        "corank": {"Q": 4}, "tower": {"m": 2, "levels": 2}, "analytic": {"Q": 5},
        "euler": {"r_L": 1, "gamma_index": 9, "v_tamagawa": [1, 2]},
    })
    assert vanishing_order_regular(s, "Q") == 5
    assert euler_leading_valuation(s.euler, s.p) == 2 + 3
    with pytest.raises(MissingData):
        scenario_from_dict({"curve": "no prime"})


def test_vanishing_agrees_with_akashi_formula():
    # with a semisimple T-part the order of ch_cyc is the level-0 coinvariant rank
    prec = SeriesPrecision(3, 16, 64)
    mod = ElementaryModule.cyclotomic(prec, {0: 2, 1: 2, 2: 1})
    rules = [LocalFactorRule.SPLIT_MULT_CASE_I, LocalFactorRule.GOOD_ORDINARY]
    s = scn([PrimeReduction("split_mult", "I"), PrimeReduction("good_ordinary")],
            {"Q": coinvariant_rank(mod, 0)})
    assert vanishing_order_regular(s, "Q") == akashi_selmer_formula(char_element(mod), rules).ord() == 3
