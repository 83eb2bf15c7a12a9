"""Dense backend: elements as integers, subgroups as bitmasks.

Element ``i`` is the normal form whose exponent vector is the base-p
expansion of ``i`` (first generator most significant), so integer order
matches lexicographic order of exponent vectors. The full multiplication
table is built once per group; subgroups are Python ints used as bitsets.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .pcgroup import PcPresentation, collect
from .structure import Subgroup


def _dtype(order):
    return np.int16 if order <= np.iinfo(np.int16).max else np.int32


@dataclass
class SubgroupClass:
    mask: int  # representative (least mask in the class)
    order: int
    size: int  # number of conjugates
    core: int  # normal core, as a mask
    gens: tuple  # element indices generating the representative
    members: tuple = field(repr=False, default=())  # masks of all conjugates


class DenseGroup:
    def __init__(self, P: PcPresentation):
        self.P = P
        self.p = p = P.p
        self.n = n = P.n
        self.order = N = p ** n
        self.nbytes = (N + 7) // 8
        place = p ** np.arange(n - 1, -1, -1, dtype=np.int64)
        self.place = place
        idx = np.arange(N, dtype=np.int64)
        self.exps = ((idx[:, None] // place[None, :]) % p).astype(np.int8) if n else np.zeros((1, 0), np.int8)
        dt = _dtype(N)
        # left multiplication by each generator, by collection
        left = np.empty((n, N), dtype=dt)
        for x in range(N):
            word = [j for j in range(n) for _ in range(int(self.exps[x, j]))]
            for k in range(n):
                unit = [0] * n
                unit[k] = 1
                left[k, x] = self.index(collect(P, unit, word))
        # row a*g_k is row a composed with left multiplication by g_k;
        # filling rows keeps every write contiguous
        table = np.empty((N, N), dtype=dt)
        table[0] = idx
        for a in range(1, N):
            k = int(np.flatnonzero(self.exps[a])[-1])
            np.take(table[a - int(place[k])], left[k], out=table[a])
        self.mul = table
        self.identity = 0
        self.gen_index = [int(place[k]) for k in range(n)]
        self.inv = np.argmin(table, axis=1).astype(dt)  # a * inv[a] = 0 is the unique zero
        self.ppow = self._power_map(p)
        self.all = (1 << N) - 1
        self._center = None
        self._lattice = None
        # at most |G| rows, i.e. one more table the size of mul
        self._conj_rows = {}
        self._arange = np.arange(N)

    # -- conversions -----------------------------------------------------
    def index(self, e) -> int:
        return int(np.dot(np.asarray(e, dtype=np.int64), self.place)) if self.n else 0

    def element(self, i) -> tuple:
        return tuple(int(x) for x in self.exps[i])

    def mask(self, elems) -> int:
        b = np.zeros(self.order, dtype=bool)
        b[np.asarray(elems, dtype=np.int64)] = True
        return int.from_bytes(np.packbits(b, bitorder="little").tobytes(), "little")

    def members(self, mask: int) -> np.ndarray:
        raw = np.frombuffer(mask.to_bytes(self.nbytes, "little"), dtype=np.uint8)
        return np.flatnonzero(np.unpackbits(raw, bitorder="little")[: self.order])

    def boolmask(self, mask: int) -> np.ndarray:
        raw = np.frombuffer(mask.to_bytes(self.nbytes, "little"), dtype=np.uint8)
        return np.unpackbits(raw, bitorder="little")[: self.order].astype(bool)

    # -- arithmetic ------------------------------------------------------
    def _power_map(self, k):
        N = self.order
        r = np.zeros(N, dtype=self.mul.dtype)
        ar = np.arange(N)
        for _ in range(k):
            r = self.mul[r, ar]
        return r

    def conj_all(self, h: int) -> np.ndarray:
        """``g^-1 h g`` for every ``g`` (cached; read-only)."""
        row = self._conj_rows.get(h)
        if row is None:
            row = self.mul[self.mul[self.inv, h], self._arange]
            row.flags.writeable = False
            self._conj_rows[h] = row
        return row

    def conj(self, elems, g: int) -> np.ndarray:
        return self.mul[self.mul[self.inv[g], elems], g]

    def comm_all(self, g: int) -> np.ndarray:
        """``[x, g] = x^-1 g^-1 x g`` for every ``x``."""
        ar = np.arange(self.order)
        xg = self.mul[ar, g]
        gx = self.mul[g, ar]
        return self.mul[self.inv[gx], xg]

    def element_order(self, x: int) -> int:
        o = 1
        while x != 0:
            x = int(self.ppow[x])
            o *= self.p
        return o

    # -- subgroups -------------------------------------------------------
    def closure(self, seeds, base_mask: int = 1) -> int:
        """Subgroup generated by ``seeds`` together with the subgroup ``base_mask``."""
        inside = self.boolmask(base_mask | 1)
        gens = [int(s) for s in seeds]
        if base_mask != 1:
            gens += [self.index(h) for h in self.canonical_gens(base_mask)]
        gens = [g for g in dict.fromkeys(gens) if g]
        if not gens:
            return base_mask | 1
        gens_arr = np.array(gens, dtype=np.int64)
        frontier = np.flatnonzero(inside)
        # a finite set closed under right multiplication by generators is
        # the generated subgroup
        while len(frontier):
            prod = self.mul[frontier[:, None], gens_arr[None, :]].ravel()
            new = np.unique(prod[~inside[prod]])
            inside[new] = True
            frontier = new
        return int.from_bytes(np.packbits(inside, bitorder="little").tobytes(), "little")

    def normalizer_of_gens(self, gens, mask: int) -> np.ndarray:
        inside = self.boolmask(mask)
        ok = np.ones(self.order, dtype=bool)
        for h in gens:
            ok &= inside[self.conj_all(int(h))]
        return ok

    def center(self) -> int:
        if self._center is None:
            ar = np.arange(self.order)
            ok = np.ones(self.order, dtype=bool)
            for g in self.gen_index:
                ok &= self.mul[ar, g] == self.mul[g, ar]
            self._center = self.mask(np.flatnonzero(ok))
        return self._center

    def socle(self) -> int:
        z = self.boolmask(self.center())
        return self.mask(np.flatnonzero(z & (self.ppow == 0)))

    def socle_preimage(self, N: int) -> int:
        """Preimage in G of the socle of G/N (N normal)."""
        inN = self.boolmask(N)
        ok = inN[self.ppow].copy()
        for g in self.gen_index:
            ok &= inN[self.comm_all(g)]
        return self.mask(np.flatnonzero(ok))

    def coset_labels(self, mask: int) -> np.ndarray:
        """Label of each element's coset ``Hx``, numbered by least element."""
        hel = self.members(mask)
        label = np.full(self.order, -1, dtype=np.int64)
        k = 0
        for g in range(self.order):
            if label[g] < 0:
                label[self.mul[hel, g]] = k
                k += 1
        return label

    def frattini(self) -> int:
        seeds = [int(self.ppow[g]) for g in self.gen_index]
        for a in self.gen_index:
            for b in self.gen_index:
                seeds.append(int(self.comm_all(b)[a]))
        return self.normal_closure(seeds)

    def derived(self) -> int:
        seeds = [int(self.comm_all(b)[a]) for a in self.gen_index for b in self.gen_index]
        return self.normal_closure(seeds)

    def normal_closure(self, seeds) -> int:
        m = self.closure(seeds)
        while True:
            el = self.members(m)
            conj = [self.conj(el, g) for g in self.gen_index]
            m2 = self.closure(np.concatenate(conj) if conj else [], m)
            if m2 == m:
                return m
            m = m2

    def is_normal(self, mask: int) -> bool:
        el = self.members(mask)
        inside = self.boolmask(mask)
        return all(inside[self.conj(el, g)].all() for g in self.gen_index)

    def core(self, mask: int) -> int:
        el = self.members(mask)
        inside = self.boolmask(mask)
        # h lies in the core iff every conjugate of h lies in H
        keep = [h for h in el if inside[self.conj_all(int(h))].all()]
        return self.mask(keep)

    def is_abelian(self) -> bool:
        return self.center() == self.all

    # -- canonical form --------------------------------------------------
    def canonical_gens(self, mask: int) -> tuple:
        """Fully reduced induced generating sequence of the subgroup."""
        E = self.exps[self.members(mask)].astype(np.int64)
        if len(E) <= 1:
            return ()
        nz = E != 0
        lead = np.where(nz.any(axis=1), nz.argmax(axis=1), self.n)
        pivots = sorted(set(int(d) for d in lead if d < self.n))
        gens = []
        for d in pivots:
            sel = (lead == d) & (E[:, d] == 1)
            for d2 in pivots:
                if d2 > d:
                    sel &= E[:, d2] == 0
            row = E[np.flatnonzero(sel)[0]]
            gens.append(tuple(int(x) for x in row))
        return tuple(gens)

    def to_subgroup(self, mask: int) -> Subgroup:
        gens = self.canonical_gens(mask)
        return Subgroup(gens, self.p ** len(gens))

    def from_subgroup(self, H: Subgroup) -> int:
        return self.closure([self.index(h) for h in H.gens])

    # -- lattice ---------------------------------------------------------
    def lattice(self) -> list:
        """Conjugacy classes of subgroups, by cyclic extension layer by layer."""
        if self._lattice is None:
            self._lattice = _enumerate_classes(self)
        return self._lattice

    def normal_subgroup_masks(self) -> list:
        if self._lattice is not None:
            return [c.mask for c in self._lattice if c.size == 1]
        return _enumerate_normal(self)


def _enumerate_classes(D: DenseGroup) -> list:
    N, p = D.order, D.p
    mul = D.mul
    trivial = SubgroupClass(mask=1, order=1, size=1, core=1, gens=(), members=(1,))
    classes = [trivial]
    seen = {1: 0}
    layer = [trivial]
    while layer:
        nxt = []
        for H in layer:
            Hel = D.members(H.mask)
            inH = D.boolmask(H.mask)
            norm = D.normalizer_of_gens(H.gens, H.mask)
            cand = norm & ~inH & inH[D.ppow]
            covered = np.zeros(N, dtype=bool)
            for x in np.flatnonzero(cand):
                if covered[x]:
                    continue
                x = int(x)
                parts = [Hel]
                y = x
                for _ in range(p - 1):
                    parts.append(mul[Hel, y])
                    y = int(mul[y, x])
                Kel = np.concatenate(parts)
                covered[Kel] = True
                kmask = D.mask(Kel)
                if kmask in seen:
                    continue
                cls = _new_class(D, kmask, Kel, H.gens + (x,))
                for m in cls.members:
                    seen[m] = len(classes)
                classes.append(cls)
                nxt.append(cls)
        layer = nxt
    return classes


def _new_class(D: DenseGroup, kmask, Kel, gens) -> SubgroupClass:
    N = D.order
    norm = D.normalizer_of_gens(gens, kmask)
    nel = np.flatnonzero(norm)
    size = N // len(nel)
    if size == 1:
        return SubgroupClass(kmask, len(Kel), 1, kmask, tuple(gens), (kmask,))
    covered = np.zeros(N, dtype=bool)
    masks = []
    core = D.all
    g = 0
    while len(masks) < size:
        while covered[g]:
            g += 1
        covered[D.mul[nel, g]] = True
        m = D.mask(D.conj(Kel, g))
        masks.append(m)
        core &= m
    rep = min(masks)
    if rep != kmask:
        gens = tuple(D.index(h) for h in D.canonical_gens(rep))
    return SubgroupClass(rep, len(Kel), size, core, tuple(gens), tuple(masks))


def _enumerate_normal(D: DenseGroup) -> list:
    """Normal subgroups by central extension: M/N of order p, central in G/N."""
    N, p = D.order, D.p
    mul = D.mul
    comms = [D.comm_all(g) for g in D.gen_index]
    found = {1}
    layer = [1]
    while layer:
        nxt = []
        for nm in layer:
            Nel = D.members(nm)
            inN = D.boolmask(nm)
            ok = inN[D.ppow] & ~inN
            for c in comms:
                ok &= inN[c]
            covered = np.zeros(N, dtype=bool)
            for x in np.flatnonzero(ok):
                if covered[x]:
                    continue
                x = int(x)
                parts = [Nel]
                y = x
                for _ in range(p - 1):
                    parts.append(mul[Nel, y])
                    y = int(mul[y, x])
                Mel = np.concatenate(parts)
                covered[Mel] = True
                m = D.mask(Mel)
                if m not in found:
                    found.add(m)
                    nxt.append(m)
        layer = nxt
    return sorted(found)
