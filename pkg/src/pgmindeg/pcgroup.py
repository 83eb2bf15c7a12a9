"""Power-commutator presentations of finite p-groups and collection.

Generators are indexed from 0 in code. An element is an exponent tuple
``(e_0, ..., e_{n-1})`` with entries mod p, standing for the normal form
``g_0^e_0 ... g_{n-1}^e_{n-1}``. Commutators follow ``[x, y] = x^-1 y^-1 x y``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

GroupElement = tuple  # tuple[int, ...], normal-form exponent vector


class PresentationError(ValueError):
    """Raised for malformed presentations or mismatched elements."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class PcPresentation:
    """A p-group on ``n`` generators given by power and commutator relations.

    ``pow_rhs[i]`` is the normal form of ``g_i^p`` and must vanish at indices
    ``<= i``. ``comm_rhs[(j, i)]`` (``j > i``) is the normal form of
    ``[g_j, g_i]`` and must vanish at indices ``<= j``; missing pairs are
    trivial commutators.
    """

    p: int
    n: int
    pow_rhs: tuple
    comm_rhs: Mapping[tuple, tuple] = field(default_factory=dict)
    name: str = "G"

    def __post_init__(self):
        p, n = self.p, self.n
        if not is_prime(p):
            raise PresentationError(f"p must be prime, got {p}")
        if n < 0:
            raise PresentationError("rank must be non-negative")
        pow_rhs = tuple(tuple(int(x) for x in w) for w in self.pow_rhs)
        if len(pow_rhs) != n:
            raise PresentationError(f"expected {n} power relations, got {len(pow_rhs)}")
        comm = {}
        for (j, i), w in dict(self.comm_rhs).items():
            if not (0 <= i < j < n):
                raise PresentationError(f"commutator index pair ({j}, {i}) out of range")
            w = tuple(int(x) for x in w)
            self._check_word(w, j, f"comm ({j}, {i})")
            if any(w):
                comm[(j, i)] = w
        for i, w in enumerate(pow_rhs):
            self._check_word(w, i, f"pow {i}")
        object.__setattr__(self, "pow_rhs", pow_rhs)
        object.__setattr__(self, "comm_rhs", dict(sorted(comm.items())))
        # letter lists used by the collector
        object.__setattr__(self, "_pow_letters", tuple(_letters(w) for w in pow_rhs))
        conj = {}
        for j in range(n):
            for i in range(j):
                conj[(j, i)] = (j,) + _letters(comm.get((j, i), ()))
        object.__setattr__(self, "_conj_letters", conj)

    def _check_word(self, w, pivot, what):
        if len(w) != self.n:
            raise PresentationError(f"{what}: expected {self.n} exponents, got {len(w)}")
        for k, x in enumerate(w):
            if not 0 <= x < self.p:
                raise PresentationError(f"{what}: entry {x} out of range [0, {self.p})")
            if k <= pivot and x:
                raise PresentationError(
                    f"{what}: support constraint violated at generator {k + 1}")

    @property
    def order(self) -> int:
        return self.p ** self.n

    @property
    def identity(self) -> GroupElement:
        return (0,) * self.n

    def generator(self, i: int) -> GroupElement:
        return tuple(1 if k == i else 0 for k in range(self.n))

    def generators(self) -> list:
        return [self.generator(i) for i in range(self.n)]

    def is_abelian_shaped(self) -> bool:
        return not self.comm_rhs

    def fingerprint(self) -> str:
        from .pcp_format import presentation_fingerprint
        return presentation_fingerprint(self)

    def __hash__(self):
        return hash((self.p, self.n, self.pow_rhs, tuple(self.comm_rhs.items())))

    def __eq__(self, other):
        if not isinstance(other, PcPresentation):
            return NotImplemented
        return (self.p, self.n, self.pow_rhs, self.comm_rhs) == (
            other.p, other.n, other.pow_rhs, other.comm_rhs)


def _letters(w: Sequence[int]) -> tuple:
    out = []
    for k, e in enumerate(w):
        out.extend([k] * e)
    return tuple(out)


def _check(P: PcPresentation, a) -> None:
    if len(a) != P.n:
        raise PresentationError(f"element of length {len(a)} does not match rank {P.n}")


def collect(P: PcPresentation, exps: Sequence[int], letters: Sequence[int]) -> GroupElement:
    """Normal form of ``exps * g_{l_0} g_{l_1} ...`` for a word of letters."""
    p, n = P.p, P.n
    res = list(exps)
    pow_letters = P._pow_letters
    conj_letters = P._conj_letters
    stack = list(reversed(letters))
    while stack:
        k = stack.pop()
        tail = [j for j in range(k + 1, n) if res[j]]
        pending = []
        res[k] += 1
        if res[k] == p:
            res[k] = 0
            pending.extend(pow_letters[k])
        for j in tail:
            pending.extend(conj_letters[(j, k)] * res[j])
            res[j] = 0
        if pending:
            stack.extend(reversed(pending))
    return tuple(res)


def multiply(P: PcPresentation, a, b) -> GroupElement:
    _check(P, a)
    _check(P, b)
    return collect(P, a, _letters(b))


def inverse(P: PcPresentation, a) -> GroupElement:
    _check(P, a)
    p = P.p
    y = tuple(a)
    r = P.identity
    for i in range(P.n):
        e = y[i]
        if e:
            word = (i,) * (p - e)
            y = collect(P, y, word)
            r = collect(P, r, word)
    return r


def power(P: PcPresentation, a, k: int) -> GroupElement:
    _check(P, a)
    if k < 0:
        return power(P, inverse(P, a), -k)
    result = P.identity
    base = tuple(a)
    while k:
        if k & 1:
            result = multiply(P, result, base)
        base = multiply(P, base, base)
        k >>= 1
    return result


def commutator(P: PcPresentation, a, b) -> GroupElement:
    """``[a, b] = a^-1 b^-1 a b``."""
    return multiply(P, inverse(P, multiply(P, b, a)), multiply(P, a, b))


def conjugate(P: PcPresentation, a, g) -> GroupElement:
    """``a^g = g^-1 a g``."""
    return multiply(P, inverse(P, g), multiply(P, a, g))


def element_order(P: PcPresentation, a) -> int:
    _check(P, a)
    order = 1
    x = tuple(a)
    ident = P.identity
    while x != ident:
        x = power(P, x, P.p)
        order *= P.p
    return order


def depth(a) -> int:
    """Index of the first nonzero exponent; ``len(a)`` for the identity."""
    for i, e in enumerate(a):
        if e:
            return i
    return len(a)


@dataclass(frozen=True)
class Verdict:
    ok: bool
    reason: str = ""

    def __bool__(self):
        return self.ok


def consistency_check(P: PcPresentation) -> Verdict:
    """Run the standard overlap tests; report the first one that fails."""
    p, n = P.p, P.n
    e = P.identity

    def nf(*letters):
        return collect(P, e, letters)

    def times(x, y):
        return collect(P, x, _letters(y))

    def fail(name, lhs, rhs):
        return Verdict(False, f"overlap {name}: {lhs} != {rhs}")

    for k in range(n):
        for j in range(k):
            for i in range(j):
                lhs = times(nf(k, j), P.generator(i))
                rhs = times(P.generator(k), nf(j, i))
                if lhs != rhs:
                    return fail(f"(g{k + 1} g{j + 1}) g{i + 1}", lhs, rhs)
    for j in range(n):
        for i in range(j):
            lhs = times(P.pow_rhs[j], P.generator(i))
            rhs = times(nf(*([j] * (p - 1))), nf(j, i))
            if lhs != rhs:
                return fail(f"(g{j + 1}^p) g{i + 1}", lhs, rhs)
            lhs = times(P.generator(j), P.pow_rhs[i])
            rhs = collect(P, nf(j, i), (i,) * (p - 1))
            if lhs != rhs:
                return fail(f"g{j + 1} (g{i + 1}^p)", lhs, rhs)
    for i in range(n):
        lhs = times(P.generator(i), P.pow_rhs[i])
        rhs = times(P.pow_rhs[i], P.generator(i))
        if lhs != rhs:
            return fail(f"g{i + 1} (g{i + 1}^p)", lhs, rhs)
    return Verdict(True, "consistent")


class InconsistentPresentation(PresentationError):
    pass


def require_consistent(P: PcPresentation) -> None:
    v = consistency_check(P)
    if not v:
        raise InconsistentPresentation(f"{P.name}: {v.reason}")
