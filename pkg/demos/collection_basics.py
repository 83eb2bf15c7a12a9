"""
Arithmetic in a power-commutator presentation
=============================================

Elements are exponent vectors; products are put back into normal form by
collection.
"""

from pgmindeg import builtin_group, consistency_check, parse_pcp
from pgmindeg.pcgroup import commutator, element_order, inverse, multiply

# the Heisenberg group mod 3: [g2, g1] = g3, everything else trivial
H = builtin_group("heisenberg(3)")
print(H.order, H.comm_rhs)

# moving g1 past g2 leaves a commutator behind
print(multiply(H, (0, 1, 0), (1, 0, 0)))
print(commutator(H, (0, 1, 0), (1, 0, 0)))

# in C9 the generator has order 9 and g1^-1 needs a carry into g2
C9 = builtin_group("cyclic(3, 2)")
print(inverse(C9, (1, 0)), element_order(C9, (1, 0)))

# a presentation can look fine and still describe a smaller group
bad = parse_pcp("""group bad
prime 3
rank 3
pow 1 : 0 1 0
comm 2 1 : 0 0 1
end
""")
print(consistency_check(bad))
print(consistency_check(H))
