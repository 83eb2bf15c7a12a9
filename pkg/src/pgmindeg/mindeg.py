"""Minimal faithful permutation degree of a p-group.

A permutation representation of G is a disjoint union of coset actions on
G/H_1, ..., G/H_k; it is faithful iff the normal cores of the H_i meet
trivially, and its degree is the sum of the indices. In a p-group every
nontrivial normal subgroup meets the socle Omega_1(Z(G)), and a central
subgroup meets H exactly where it meets core(H), so faithfulness only
depends on the subspaces core(H_i) & socle. The search below minimises
over those subspaces by branch and bound.
"""
from __future__ import annotations

import heapq
import logging
from dataclasses import dataclass

import numpy as np

from .dense import DenseGroup
from .pcgroup import PcPresentation, Verdict, depth, multiply, power, require_consistent
from .structure import Subgroup, closure, elements, subgroup_classes as ref_classes
from .structure import normal_core as ref_core

log = logging.getLogger(__name__)


@dataclass
class MuCertificate:
    mu: int
    collection: list  # of Subgroup
    perms: list  # one permutation (tuple of images, 0-based) per generator

    @property
    def indices(self):
        return [None if H is None else H.order for H in self.collection]


def _popcount(m: int) -> int:
    return bin(m).count("1")


@dataclass(frozen=True)
class _Candidate:
    index: int
    signature: int  # core & socle-preimage, as a mask
    mask: int  # the subgroup itself


def candidates(D: DenseGroup, nmask: int, top: int, classes=None) -> list:
    """Useful subgroup classes for faithful actions of G/N.

    Keeps classes containing N whose core does not contain ``top`` (the
    socle preimage), one per signature, then drops candidates dominated by a
    cheaper one with a smaller signature. Sorted by (index, mask).
    """
    if classes is None:
        classes = D.lattice()
    best = {}
    for c in classes:
        if c.mask & nmask != nmask:
            continue
        sig = c.core & top
        if sig == top:
            continue
        idx = D.order // c.order
        old = best.get(sig)
        if old is None or (idx, c.mask) < (old.index, old.mask):
            best[sig] = _Candidate(idx, sig, c.mask)
    cands = sorted(best.values(), key=lambda c: (c.index, c.mask))
    kept = []
    for c in cands:
        # c is dominated if a kept candidate is no more expensive and has a
        # signature contained in c's
        if any(k.signature & c.signature == k.signature for k in kept):
            continue
        kept.append(c)
    return kept


def branch_and_bound(cands: list, top: int, target: int, upper: int):
    """Cheapest sub-collection whose signatures meet exactly in ``target``.

    ``upper`` must be the cost of a known solution (it is returned, with an
    empty choice, if nothing cheaper exists).
    """
    best_cost = upper
    best_pick = None
    n = len(cands)

    def dfs(pos, V, cost, picked):
        nonlocal best_cost, best_pick
        if V == target:
            if cost < best_cost:
                best_cost, best_pick = cost, list(picked)
            return
        for i in range(pos, n):
            c = cands[i]
            if cost + c.index >= best_cost:
                break  # sorted by index: every later candidate costs at least as much
            W = V & c.signature
            if W == V:
                continue
            picked.append(c)
            dfs(i + 1, W, cost + c.index, picked)
            picked.pop()

    dfs(0, top, 0, [])
    return best_cost, best_pick


def mu_of_quotient(D: DenseGroup, nmask: int = 1, classes=None):
    """mu(G/N) from the subgroup lattice of G; returns (mu, chosen masks)."""
    if nmask == D.all:
        return 1, [D.all]
    top = D.socle_preimage(nmask)
    cands = candidates(D, nmask, top, classes)
    # the regular representation of G/N: H = N itself
    upper = D.order // _popcount(nmask)
    cost, pick = branch_and_bound(cands, top, nmask, upper + 1)
    if pick is None:  # pragma: no cover - N is always a candidate
        raise AssertionError("no faithful collection found")
    return cost, [c.mask for c in pick]


def _abelian_certificate(P: PcPresentation):
    """Cyclic-factor decomposition via Smith normal form."""
    from sympy import Matrix, ZZ
    from sympy.matrices.normalforms import smith_normal_decomp

    rows = [[(P.p if k == i else 0) - w[k] for k in range(P.n)] for i, w in enumerate(P.pow_rhs)]
    Dm, U, V = smith_normal_decomp(Matrix(rows), domain=ZZ)
    Vinv = V.inv()
    factors = []
    for i in range(P.n):
        d = abs(int(Dm[i, i]))
        if d == 1:
            continue
        g = P.identity
        for k in range(P.n):
            c = int(Vinv[i, k])
            if c:
                g = multiply(P, g, power(P, P.generator(k), c))
        factors.append((d, g))
    factors.sort(key=lambda t: -t[0])
    mu = sum(d for d, _ in factors)
    collection = [closure(P, [g for j, (_, g) in enumerate(factors) if j != i])
                  for i in range(len(factors))]
    return mu, collection


def minimal_degree(P: PcPresentation, dense: DenseGroup | None = None,
                   check: bool = False, abelian_fast_path: bool = True,
                   with_perms: bool = True) -> MuCertificate:
    """mu(G) with a witnessing subgroup collection.

    ``with_perms`` also builds the permutation images of the generators on
    the disjoint union of coset spaces (otherwise ``perms`` is empty).
    """
    if check:
        require_consistent(P)
    if P.n == 0:
        return MuCertificate(1, [Subgroup((), 1)], [])
    if abelian_fast_path and not P.comm_rhs:
        mu, collection = _abelian_certificate(P)
    else:
        D = dense or DenseGroup(P)
        mu, masks = mu_of_quotient(D)
        collection = [D.to_subgroup(m) for m in masks]
    # built without the multiplication table, so that verification with
    # the table is an independent check
    perms = _certificate_perms(P, collection) if with_perms else []
    cert = MuCertificate(mu, collection, perms)
    # rank bound: at most rank(socle) subgroups are ever needed
    assert len(collection) <= P.n
    return cert


def _certificate_perms(P, collection, D=None):
    blocks = [coset_action(P, H, D) for H in collection]
    perms = []
    for g in range(P.n):
        img = []
        offset = 0
        for b in blocks:
            img.extend(x + offset for x in b[g])
            offset += len(b[g])
        perms.append(tuple(img))
    return perms


def coset_action(P: PcPresentation, H: Subgroup, dense: DenseGroup | None = None) -> list:
    """Right-coset action of each generator on the cosets of ``H``.

    Cosets are numbered in order of their least element (as an integer
    index of the exponent vector); coset 0 is ``H`` itself. With ``dense``
    the action is read off the multiplication table.
    """
    if P.n == 0:
        return []
    D = dense
    if D is None:
        return _coset_action_pure(P, H)
    hm = D.from_subgroup(H)
    hel = D.members(hm)
    label = np.full(D.order, -1, dtype=np.int64)
    reps = []
    for g in range(D.order):
        if label[g] < 0:
            label[D.mul[hel, g]] = len(reps)
            reps.append(g)
    reps = np.asarray(reps)
    return [tuple(int(x) for x in label[D.mul[reps, gi]]) for gi in D.gen_index]


def _coset_action_pure(P, H):
    """Coset action without a multiplication table.

    Left multiplication by an element of depth d leaves exponents before d
    alone and shifts exponent d, so sifting x from the left by the canonical
    generators of H zeroes the pivot exponents and yields the least element
    of Hx. Cosets are then indexed by their non-pivot exponents.
    """
    from itertools import product

    p = P.p
    pivots = {depth(h): h for h in H.gens}
    free = [k for k in range(P.n) if k not in pivots]
    powers = {d: [power(P, h, e) for e in range(p)] for d, h in pivots.items()}

    def least(x):
        for d in sorted(pivots):
            if x[d]:
                x = multiply(P, powers[d][p - x[d]], x)
        return x

    def label(x):
        out = 0
        for k in free:
            out = out * p + x[k]
        return out

    reps = []
    for v in product(range(p), repeat=len(free)):
        x = [0] * P.n
        for k, e in zip(free, v):
            x[k] = e
        reps.append(tuple(x))
    return [tuple(label(least(multiply(P, r, P.generator(g)))) for r in reps)
            for g in range(P.n)]


def verify_certificate(P: PcPresentation, cert: MuCertificate,
                       dense: DenseGroup | None = None) -> Verdict:
    """Check degree, faithfulness and the permutations; not minimality."""
    if P.n == 0:
        return Verdict(cert.mu == 1, "trivial group" if cert.mu == 1 else "degree mismatch")
    try:
        idx = [P.order // H.order for H in cert.collection]
    except (AttributeError, ZeroDivisionError):
        return Verdict(False, "malformed collection")
    if sum(idx) != cert.mu:
        return Verdict(False, f"degree mismatch: sum of indices {sum(idx)} != mu {cert.mu}")
    D = dense or DenseGroup(P)
    core = D.all
    for H in cert.collection:
        core &= D.core(D.from_subgroup(H))
    if core != 1:
        return Verdict(False, f"cores meet nontrivially (order {_popcount(core)})")
    if len(cert.perms) != P.n:
        return Verdict(False, "wrong number of permutations")
    expected = _certificate_perms(P, cert.collection, D)
    for g, (a, b) in enumerate(zip(cert.perms, expected)):
        if tuple(a) != b:
            return Verdict(False, f"permutation of generator {g + 1} disagrees with coset action")
    return Verdict(True, "ok")


def permutation_kernel_trivial(P: PcPresentation, perms, dense: DenseGroup | None = None) -> bool:
    """Faithfulness read directly off the permutations: only 1 acts trivially."""
    D = dense or DenseGroup(P)
    deg = len(perms[0]) if perms else 1
    ident = np.arange(deg)
    gens = [np.asarray(p) for p in perms]
    # action of element i = action of its normal-form word, built left to right
    acts = np.empty((D.order, deg), dtype=np.int64)
    acts[0] = ident
    for x in range(1, D.order):
        e = D.exps[x]
        k = int(np.flatnonzero(e)[-1])
        prev = acts[x - int(D.place[k])]
        acts[x] = gens[k][prev]  # right action: point -> prev -> gen
    return int((acts == ident).all(axis=1).sum()) == 1


# -- brute-force oracle ----------------------------------------------------

class OracleDomainError(ValueError):
    pass


def brute_force_minimal_degree(P: PcPresentation, bound: int = 64) -> int:
    """Exhaustive minimisation over collections of class representatives.

    Independent of the socle reasoning: subgroup classes come from the
    canonical-form backend, cores are full normal subgroups, and a
    shortest-path search over core intersections covers every collection.
    """
    if P.order > bound:
        raise OracleDomainError(f"group order {P.order} exceeds oracle bound {bound}")
    if P.n == 0:
        return 1
    reps = ref_classes(P)
    options = {}
    for H, _ in reps:
        c = frozenset(elements(P, ref_core(P, H)))
        idx = P.order // H.order
        if c not in options or options[c] > idx:
            options[c] = idx
    start = frozenset(elements(P, closure(P, P.generators())))
    trivial = frozenset([P.identity])
    dist = {start: 0}
    heap = [(0, sorted(start), start)]
    while heap:
        d, _, K = heapq.heappop(heap)
        if d > dist[K]:
            continue
        if K == trivial:
            return d
        for c, idx in options.items():
            K2 = K & c
            if K2 == K:
                continue
            if d + idx < dist.get(K2, 1 << 62):
                dist[K2] = d + idx
                heapq.heappush(heap, (d + idx, sorted(K2), K2))
    raise AssertionError("regular representation not reached")  # pragma: no cover
