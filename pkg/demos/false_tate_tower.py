"""Bookkeeping along a false-Tate tower Q(mu_{3^n}, 2^{1/3^n}).

Given Selmer coranks over L_n and the subfield L'_n, the multiplicity s of the
degree 3^{n-1}*2 induced representation is the corank jump divided by its
dimension.  When only a lower bound for the smaller corank is known, parity
can still pin the order down.
"""

from iwachar import (Determined, amenable_pair, analytic_lower_bound_false_tate,
                     bsd_inequality_check, darmon_tian_order, s_via_corank_difference,
                     uncond_orders)

p, m = 3, 2
print(f"(p, m) = ({p}, {m}) amenable:", amenable_pair(p, m))

for n in (1, 2, 3):
    big, small = uncond_orders("a", p, n), p ** (n - 1) - 1
    s = s_via_corank_difference(p, n, big, small)
    bound = analytic_lower_bound_false_tate(p, n)
    print(f"n={n}: corank {big}, s={s}, analytic >= {bound}, inequality holds:",
          bsd_inequality_check(big, bound))

# only 0 <= s <= 1 is visible from the coranks; odd parity forces s = 1
print("squeeze:", darmon_tian_order(3, 2, 8, 2, parity_odd=True))
print("without parity:", darmon_tian_order(3, 2, 8, 2, parity_odd=False))
assert darmon_tian_order(3, 2, 8, 2, True) == Determined(1)
