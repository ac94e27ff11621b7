"""Recover the elementary structure of a Selmer dual from its coranks.

For 5692A1 at p = 3 the coranks over Q, Q_1, Q_2 are 2, 6, 12 and the
lambda-invariant is 12.  Reading off the jumps gives the module
(Lambda/T)^2 + (Lambda/Phi_3)^2 + Lambda/Phi_9, and its coinvariant ranks
reproduce the input.
"""

from iwachar import (CorankSequence, SeriesPrecision, char_element, coinvariant_rank,
                     deduce_structure, module_mu_lambda)

prec = SeriesPrecision(3, 16, 64)
ded = deduce_structure(3, CorankSequence(3, (2, 6, 12)), 12)
print("multiplicities of T, Phi_3, Phi_9:", ded.multiplicities)
print("factors:", " * ".join(ded.factor_labels()))
print("unexplained lambda:", ded.residual_lambda)
print("semisimplicity verdict:", ded.verdict)

mod = ded.to_module(prec)
print("mu, lambda:", module_mu_lambda(mod))
print("coinvariant ranks n = 0..3:", [coinvariant_rank(mod, n) for n in range(4)])

# the rank stabilises once omega_n swallows every cyclotomic factor
ch = char_element(mod)
print("characteristic element:", ch)
