"""Weierstrass preparation and changes of variable in Z_p[[T]].

Everything lives in (Z/p^N)[T]/(T^M); each result carries the precision it
is certified to.
"""

from iwachar import (IwasawaSeries, PadicInt, SeriesPrecision, eval_induced, leading_value,
                     mu_lambda, ord_at_zero, substitute_generator, weierstrass_prepare)

prec = SeriesPrecision(5, 12, 32)
# 5 * (T^3 + 10 T + 5) * (1 + T + T^2), a series with mu = 1 and lambda = 3
f = (IwasawaSeries.constant(5, prec)
     * IwasawaSeries(prec, (5, 10, 0, 1))
     * IwasawaSeries(prec, (1, 1, 1)))
print("f =", f)
print("mu, lambda:", mu_lambda(f))

w = weierstrass_prepare(f)
print("distinguished part:", w.distinguished)
print("unit part:", w.unit)
print("certified to 5^%d, tail-stable to 5^%d" % (w.certified_precision, w.tail_stable_precision))
print("reconstructs f:", w.reconstruct().congruent(f))

# a different topological generator: 1 + T -> (1 + T)^u
g = IwasawaSeries(prec, (0, 0, 15, 7, 1))
u = PadicInt.of(5, 12, 6)
h = substitute_generator(g, u)
r = ord_at_zero(g)
print(f"ord before/after: {r}/{ord_at_zero(h)}")
print("leading values:", leading_value(g), "->", leading_value(h), "(scaled by u^r)")
print("output precision drops to", h.precision.coeff_precision)

# passing from T_U = (1+T)^d - 1 to T keeps the order and multiplies by d^r
e = eval_induced(g, 4)
print("induced: ord", e.ord, "correction", e.leading_correction)
