"""
Counting groups of order p^6
============================

Closed forms for the number of groups of order p^6 and for the number
that can be exceptional, for primes p >= 5.
"""

from sympy import primerange

from pgmindeg import exceptional_bounds, group_count_p6
from pgmindeg.exceptional import nonexceptional_families

print(f"{'p':>3} {'groups':>7} {'non-exc >=':>10} {'exc <=':>7} {'conjectured':>11}")
for p in primerange(5, 32):
    b = exceptional_bounds(p)
    print(f"{p:>3} {group_count_p6(p):>7} {b.nonexceptional_lower:>10} {b.upper:>7} "
          f"{b.conjectured:>11}")

# the non-exceptional count is a sum over families of groups
for fam, n in nonexceptional_families(5).items():
    print(f"  {fam:<35} {n}")
print(sum(nonexceptional_families(5).values()))
