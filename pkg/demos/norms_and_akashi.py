"""Norms down a finite layer and Akashi series of dual Selmer groups."""

from iwachar import (GradedCharList, IwasawaSeries, LocalFactorRule, SeriesPrecision,
                     akashi_compose, akashi_selmer_formula, norm_to_subalgebra)

prec = SeriesPrecision(3, 10, 32)
t = IwasawaSeries.gen(prec)
f = IwasawaSeries(prec, (3, 1, 1))
g = IwasawaSeries(prec, (1, 0, 3))

# Lambda is free of rank 3 over Z_3[[T_U]], T_U = (1+T)^3 - 1
print("N(T) =", norm_to_subalgebra(t, 3))
print("N(f) =", norm_to_subalgebra(f, 3))
print("multiplicative:",
      norm_to_subalgebra(f * g, 3) == norm_to_subalgebra(f, 3) * norm_to_subalgebra(g, 3))

# H_0 and H_1 characteristic elements combine into a fraction
ak = akashi_compose(GradedCharList(((0, t * t * f), (1, t))))
print("Akashi series order:", ak.ord(), "leading valuation:", ak.leading_valuation())

# with one CaseI split multiplicative prime the order goes up by one
ch_cyc = t * t * IwasawaSeries(prec, (3, 3, 1))
rules = [LocalFactorRule.GOOD_ORDINARY, LocalFactorRule.SPLIT_MULT_CASE_I, LocalFactorRule.AWAY_FROM_P]
sel = akashi_selmer_formula(ch_cyc, rules)
print("Selmer Akashi order:", sel.ord(), "known only up to units:", sel.unit_class)
