"""Subgroups in canonical form: closure, membership, cores, quotients.

This is the reference backend. A subgroup is stored as its fully reduced
induced generating sequence: one generator per leading index (depth), each
with leading exponent 1 and zero exponents at the other leading indices.
Equal subgroups therefore have identical generator tuples.

All routines assume a presentation whose generators refine a central series,
which the strict support shape of :class:`PcPresentation` guarantees.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .pcgroup import (
    PcPresentation,
    PresentationError,
    commutator,
    conjugate,
    depth,
    multiply,
    power,
)


@dataclass(frozen=True, order=True)
class Subgroup:
    gens: tuple  # canonical generators, strictly increasing depth
    order: int = field(compare=False)

    @property
    def rank(self) -> int:
        return len(self.gens)

    @property
    def depths(self) -> tuple:
        return tuple(depth(h) for h in self.gens)

    def key(self):
        return (self.order, self.gens)

    def __len__(self):
        return self.order


def _normalize(P, x):
    """Scale ``x`` so that its leading exponent is 1."""
    d = depth(x)
    e = x[d]
    if e == 1:
        return x
    return power(P, x, pow(e, -1, P.p))


def _sift(P, table, x):
    """Reduce ``x`` by generators keyed on depth; return the residue."""
    n = P.n
    d = depth(x)
    while d < n and d in table:
        x = multiply(P, x, power(P, table[d], P.p - x[d]))
        d = depth(x)
    return x


def _from_table(P, table) -> Subgroup:
    ds = sorted(table)
    gens = {d: table[d] for d in ds}
    for a, d in enumerate(ds):
        h = gens[d]
        for d2 in ds[a + 1:]:
            if h[d2]:
                h = multiply(P, h, power(P, gens[d2], P.p - h[d2]))
        gens[d] = h
    return Subgroup(tuple(gens[d] for d in ds), P.p ** len(ds))


def trivial_subgroup(P: PcPresentation) -> Subgroup:
    return Subgroup((), 1)


def whole_group(P: PcPresentation) -> Subgroup:
    return Subgroup(tuple(P.generators()), P.order)


def closure(P: PcPresentation, seed) -> Subgroup:
    """Smallest subgroup containing ``seed``, in canonical form."""
    table = {}
    ident = P.identity
    queue = [tuple(x) for x in seed]
    while queue:
        x = _sift(P, table, queue.pop())
        if x == ident:
            continue
        x = _normalize(P, x)
        d = depth(x)
        queue.append(power(P, x, P.p))
        for h in table.values():
            queue.append(commutator(P, x, h))
        table[d] = x
    return _from_table(P, table)


def _table(H: Subgroup):
    return {depth(h): h for h in H.gens}


def contains(P: PcPresentation, H: Subgroup, a) -> bool:
    return _sift(P, _table(H), tuple(a)) == P.identity


def is_subgroup_of(P, H: Subgroup, K: Subgroup) -> bool:
    return all(contains(P, K, h) for h in H.gens)


def elements(P: PcPresentation, H: Subgroup):
    """All elements of ``H`` as normal-form tuples."""
    out = [P.identity]
    for h in reversed(H.gens):
        powers = [P.identity]
        for _ in range(P.p - 1):
            powers.append(multiply(P, powers[-1], h))
        out = [multiply(P, x, y) for x in powers for y in out]
    return out


def group_elements(P: PcPresentation):
    return [tuple(e) for e in itertools.product(range(P.p), repeat=P.n)]


def intersect(P: PcPresentation, H: Subgroup, K: Subgroup) -> Subgroup:
    if H.order > K.order:
        H, K = K, H
    if K.order == P.order:
        return H
    return closure(P, [x for x in elements(P, H) if contains(P, K, x)])


def conjugate_subgroup(P: PcPresentation, H: Subgroup, g) -> Subgroup:
    return closure(P, [conjugate(P, h, g) for h in H.gens])


def is_normal(P: PcPresentation, H: Subgroup) -> bool:
    return all(contains(P, H, conjugate(P, h, g)) for h in H.gens for g in P.generators())


def normal_core(P: PcPresentation, H: Subgroup) -> Subgroup:
    core = H
    while True:
        nxt = core
        for g in P.generators():
            nxt = intersect(P, nxt, conjugate_subgroup(P, core, g))
        if nxt == core:
            return core
        core = nxt


def center(P: PcPresentation) -> Subgroup:
    gens = P.generators()
    z = [x for x in group_elements(P)
         if all(multiply(P, x, g) == multiply(P, g, x) for g in gens)]
    return closure(P, z)


def socle(P: PcPresentation) -> Subgroup:
    """Central elements of order dividing p (the socle of a p-group)."""
    ident = P.identity
    return closure(P, [z for z in elements(P, center(P)) if power(P, z, P.p) == ident])


def derived_subgroup(P: PcPresentation) -> Subgroup:
    gens = P.generators()
    seed = [commutator(P, a, b) for a in gens for b in gens]
    return normal_closure(P, seed)


def normal_closure(P: PcPresentation, seed) -> Subgroup:
    H = closure(P, seed)
    while True:
        K = closure(P, list(H.gens) + [conjugate(P, h, g) for h in H.gens for g in P.generators()])
        if K == H:
            return H
        H = K


def frattini(P: PcPresentation) -> Subgroup:
    gens = P.generators()
    seed = [power(P, g, P.p) for g in gens] + [commutator(P, a, b) for a in gens for b in gens]
    return normal_closure(P, seed)


def normal_subgroups(P: PcPresentation) -> list:
    """All normal subgroups, sorted by (order, canonical generators)."""
    elts = group_elements(P)
    gens = P.generators()
    layer = {trivial_subgroup(P)}
    found = set(layer)
    while layer:
        nxt = set()
        for N in layer:
            for x in elts:
                if contains(P, N, x) or not contains(P, N, power(P, x, P.p)):
                    continue
                if all(contains(P, N, commutator(P, x, g)) for g in gens):
                    nxt.add(closure(P, list(N.gens) + [x]))
        nxt -= found
        found |= nxt
        layer = nxt
    return sorted(found, key=Subgroup.key)


def _normalizer_elements(P, H, elts):
    return [g for g in elts if all(contains(P, H, conjugate(P, h, g)) for h in H.gens)]


def conjugacy_class(P: PcPresentation, H: Subgroup) -> set:
    orbit = {H}
    frontier = [H]
    while frontier:
        K = frontier.pop()
        for g in P.generators():
            L = conjugate_subgroup(P, K, g)
            if L not in orbit:
                orbit.add(L)
                frontier.append(L)
    return orbit


def subgroup_classes(P: PcPresentation) -> list:
    """One representative per conjugacy class with its class size.

    The representative is the class member with the least canonical key;
    results are sorted by (index, canonical key).
    """
    elts = group_elements(P)
    layer = {trivial_subgroup(P): 1}
    classes = dict(layer)
    seen = {trivial_subgroup(P)}
    while layer:
        nxt = {}
        for H in layer:
            for x in _normalizer_elements(P, H, elts):
                if contains(P, H, x) or not contains(P, H, power(P, x, P.p)):
                    continue
                K = closure(P, list(H.gens) + [x])
                if K in seen:
                    continue
                orbit = conjugacy_class(P, K)
                seen |= orbit
                nxt[min(orbit, key=lambda S: S.gens)] = len(orbit)
        classes.update(nxt)
        layer = nxt
    return sorted(classes.items(), key=lambda kv: (P.order // kv[0].order, kv[0].gens))


def all_subgroups(P: PcPresentation) -> list:
    out = []
    for H, _ in subgroup_classes(P):
        out.extend(conjugacy_class(P, H))
    return sorted(out, key=Subgroup.key)


@dataclass(frozen=True)
class QuotientPresentation:
    pres: PcPresentation
    proj: tuple  # image of each generator of G, as a normal form in G/N
    kept: tuple  # generator indices of G surviving as quotient generators

    def image(self, P: PcPresentation, a):
        """Image in G/N of an arbitrary element of G."""
        out = self.pres.identity
        for i, e in enumerate(a):
            if e:
                out = multiply(self.pres, out, power(self.pres, self.proj[i], e))
        return out


def _reduce_mod(P, N: Subgroup, x):
    """Coset representative of ``xN`` with zero exponents at N's depths."""
    table = _table(N)
    for d in sorted(table):
        if x[d]:
            x = multiply(P, x, power(P, table[d], P.p - x[d]))
    return x


def quotient(P: PcPresentation, N: Subgroup, check: bool = True) -> QuotientPresentation:
    if check and not is_normal(P, N):
        raise PresentationError("quotient requires a normal subgroup")
    pivots = set(N.depths)
    kept = tuple(i for i in range(P.n) if i not in pivots)
    pos = {i: k for k, i in enumerate(kept)}

    def project(x):
        x = _reduce_mod(P, N, x)
        return tuple(x[i] for i in kept)

    pow_rhs = tuple(project(power(P, P.generator(i), P.p)) for i in kept)
    comm = {}
    for a, j in enumerate(kept):
        for i in kept[:a]:
            w = project(commutator(P, P.generator(j), P.generator(i)))
            if any(w):
                comm[(pos[j], pos[i])] = w
    Q = PcPresentation(p=P.p, n=len(kept), pow_rhs=pow_rhs, comm_rhs=comm,
                       name=f"{P.name}/N")
    proj = tuple(project(P.generator(i)) for i in range(P.n))
    return QuotientPresentation(Q, proj, kept)


def abelian_invariants(P: PcPresentation) -> list:
    """Exponents ``k`` of the cyclic factors ``C_{p^k}``, descending."""
    if P.comm_rhs:
        raise PresentationError(f"{P.name} is not abelian")
    if P.n == 0:
        return []
    from sympy import Matrix, ZZ
    from sympy.matrices.normalforms import smith_normal_form

    rows = []
    for i, w in enumerate(P.pow_rhs):
        rows.append([(P.p if k == i else 0) - w[k] for k in range(P.n)])
    snf = smith_normal_form(Matrix(rows), domain=ZZ)
    out = []
    for k in range(P.n):
        d = abs(int(snf[k, k]))
        e = 0
        while d > 1:
            d //= P.p
            e += 1
        if e:
            out.append(e)
    return sorted(out, reverse=True)


def exponent(P: PcPresentation) -> int:
    from .pcgroup import element_order
    return max(element_order(P, x) for x in group_elements(P))
