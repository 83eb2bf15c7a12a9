"""
The smallest exceptional groups
===============================

G is exceptional if some quotient G/N needs more points than G itself.
Scanning the 51 groups of order 32 turns up two of them.
"""

from pathlib import Path

from pgmindeg import distinguished_quotients, read_manifest, scan_corpus
from pgmindeg.reports import render

CORPORA = Path(__file__).resolve().parents[1] / "corpora"

scan = scan_corpus(read_manifest(CORPORA / "p2_5"))
print(render(scan, "text"))

# look at one of them in detail
m = read_manifest(CORPORA / "p2_5")
gid = next(r.group_id for r in scan.per_group if r.exceptional)
G = m.load(next(e for e in m.entries if e.group_id == gid))
rep = distinguished_quotients(G, gid)
for e in rep.distinguished:
    print(f"|N| = {e.normal_subgroup.order}: mu(G) = {rep.mu} < mu(G/N) = {e.mu_quotient}")

# smaller 2-groups have none
for c in ("p2_2", "p2_3", "p2_4"):
    print(c, scan_corpus(read_manifest(CORPORA / c)).exceptional_count)
