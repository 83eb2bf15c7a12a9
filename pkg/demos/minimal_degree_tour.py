"""
Minimal faithful permutation degrees
====================================

mu(G) is the least n with G inside S_n. The engine finds it by searching
subgroup collections whose cores meet trivially, and returns the
collection as a certificate.
"""

from pathlib import Path

from pgmindeg import builtin_group, minimal_degree, read_manifest, verify_certificate
from pgmindeg.reports import render

CORPORA = Path(__file__).resolve().parents[1] / "corpora"

# abelian groups: one orbit per cyclic factor
for spec in ["cyclic(3, 2)", "abelian(5, {2,1})", "elementary(2, 4)"]:
    G = builtin_group(spec)
    print(spec, minimal_degree(G).mu)

# the five groups of order 8
m = read_manifest(CORPORA / "p2_3")
for e in m.entries:
    G = m.load(e)
    cert = minimal_degree(G)
    print(e.group_id, cert.mu, [G.order // H.order for H in cert.collection])

# Q8 acts regularly, so mu(Q8) = 8; D8 acts on the 4 corners of a square
Q8 = m.load(m.entries[3])
cert = minimal_degree(Q8)
print(render(cert, "text", order=Q8.order))

# generator images on the 8 points, and an independent check
print(cert.perms)
print(verify_certificate(Q8, cert))
