"""Built-in group constructors and the residue parameters omega, nu."""
from __future__ import annotations

import re
from dataclasses import dataclass

from .pcgroup import PcPresentation, PresentationError, is_prime


def _zero(n):
    return [0] * n


def cyclic(p: int, k: int) -> PcPresentation:
    return abelian(p, [k], name=f"C{p}^{k}" if k != 1 else f"C{p}")


def elementary(p: int, k: int) -> PcPresentation:
    return abelian(p, [1] * k, name=f"E{p}^{k}")


def abelian(p: int, partition, name: str | None = None) -> PcPresentation:
    """Direct product of cyclic groups of orders ``p**k`` for ``k`` in ``partition``."""
    if not is_prime(p):
        raise PresentationError(f"p must be prime, got {p}")
    parts = sorted((int(k) for k in partition), reverse=True)
    if any(k < 1 for k in parts):
        raise PresentationError(f"invalid partition {list(partition)}")
    n = sum(parts)
    pow_rhs = []
    pos = 0
    for k in parts:
        for t in range(k):
            w = _zero(n)
            if t < k - 1:
                w[pos + t + 1] = 1
            pow_rhs.append(tuple(w))
        pos += k
    if name is None:
        name = "x".join(f"C{p ** k}" for k in parts) or "1"
    return PcPresentation(p=p, n=n, pow_rhs=tuple(pow_rhs), name=name)


def heisenberg(p: int) -> PcPresentation:
    """Unitriangular 3x3 matrices mod p: ``[g2, g1] = g3`` central."""
    if not is_prime(p):
        raise PresentationError(f"p must be prime, got {p}")
    return PcPresentation(p=p, n=3, pow_rhs=((0, 0, 0),) * 3,
                          comm_rhs={(1, 0): (0, 0, 1)}, name=f"Heis({p})")


def direct_product(A: PcPresentation, B: PcPresentation) -> PcPresentation:
    if A.p != B.p:
        raise PresentationError("direct_product requires equal primes")
    n = A.n + B.n

    def pad(w, shift):
        out = _zero(n)
        for k, e in enumerate(w):
            out[k + shift] = e
        return tuple(out)

    pow_rhs = [pad(w, 0) for w in A.pow_rhs] + [pad(w, A.n) for w in B.pow_rhs]
    comm = {k: pad(w, 0) for k, w in A.comm_rhs.items()}
    comm.update({(j + A.n, i + A.n): pad(w, A.n) for (j, i), w in B.comm_rhs.items()})
    return PcPresentation(p=A.p, n=n, pow_rhs=tuple(pow_rhs), comm_rhs=comm,
                          name=f"{A.name}x{B.name}")


_SPEC = re.compile(r"^\s*(\w+)\s*\((.*)\)\s*$")


def builtin_group(spec: str) -> PcPresentation:
    """Build a group from a text spec such as ``abelian(5, {2,1})``.

    Recognised forms: ``cyclic(p,k)``, ``elementary(p,k)``,
    ``abelian(p, {n1,...})``, ``heisenberg(p)`` and
    ``direct_product(A, B)`` with nested specs.
    """
    m = _SPEC.match(spec)
    if not m:
        raise PresentationError(f"cannot parse group spec {spec!r}")
    kind, args = m.group(1), _split_args(m.group(2))
    try:
        if kind == "cyclic":
            return cyclic(int(args[0]), int(args[1]))
        if kind == "elementary":
            return elementary(int(args[0]), int(args[1]))
        if kind == "abelian":
            part = args[1].strip().strip("{}[]()")
            return abelian(int(args[0]), [int(x) for x in part.split(",") if x.strip()])
        if kind == "heisenberg":
            return heisenberg(int(args[0]))
        if kind == "direct_product":
            return direct_product(builtin_group(args[0]), builtin_group(args[1]))
    except (IndexError, ValueError) as exc:
        if isinstance(exc, PresentationError):
            raise
        raise PresentationError(f"bad arguments in {spec!r}: {exc}") from None
    raise PresentationError(f"unknown group constructor {kind!r}")


def _split_args(s):
    out, depth, cur = [], 0, ""
    for ch in s:
        if ch in "({[":
            depth += 1
        elif ch in ")}]":
            depth -= 1
        if ch == "," and depth == 0:
            out.append(cur.strip())
            cur = ""
        else:
            cur += ch
    if cur.strip():
        out.append(cur.strip())
    return out


@dataclass(frozen=True)
class ParamContext:
    p: int
    omega: int  # least positive primitive root mod p
    nu: int  # least positive quadratic non-residue mod p


def _multiplicative_order(a, p):
    k, x = 1, a % p
    while x != 1:
        x = x * a % p
        k += 1
    return k


def omega_nu(p: int) -> ParamContext:
    if not is_prime(p) or p == 2:
        raise PresentationError(f"omega/nu need an odd prime, got {p}")
    omega = next(a for a in range(1, p) if _multiplicative_order(a, p) == p - 1)
    nu = next(a for a in range(1, p) if pow(a, (p - 1) // 2, p) == p - 1)
    return ParamContext(p, omega, nu)
