"""Exceptional groups: quotients whose minimal degree exceeds the group's.

Also evaluates the closed-form counts for groups of order p^6 (p >= 5).
"""
from __future__ import annotations

import logging
import math
import re
import time

import numpy as np
from dataclasses import dataclass, field

from .dense import DenseGroup
from .mindeg import minimal_degree, mu_of_quotient
from .pcgroup import PcPresentation, is_prime, require_consistent
from .structure import Subgroup

log = logging.getLogger(__name__)


@dataclass
class QuotientEntry:
    normal_subgroup: Subgroup
    quotient_order: int
    mu_quotient: int
    distinguished: bool
    cyclic: bool = False


@dataclass
class ExceptionalReport:
    group_id: str
    order: int
    mu: int
    entries: list = field(default_factory=list)
    exceptional: bool = False
    shortcut: str | None = None  # set when entries were not enumerated

    @property
    def distinguished(self):
        return [e for e in self.entries if e.distinguished]


@dataclass
class ScanReport:
    corpus_id: str
    p: int
    order_exponent: int
    total_groups: int
    exceptional_count: int
    per_group: list
    timing: float = 0.0
    failures: dict = field(default_factory=dict)  # group_id -> error text
    partial: bool = False
    manifest_digest: str = ""
    engine_version: str = ""


def _is_cyclic_quotient(D: DenseGroup, nmask: int, phi_labels: np.ndarray) -> bool:
    # G/N is cyclic iff N*Phi(G) has index at most p, and N*Phi/Phi is read
    # off as the set of Phi-cosets that N meets
    cosets = int(phi_labels.max()) + 1
    hit = len(np.unique(phi_labels[D.members(nmask)]))
    return cosets // hit <= D.p


def abelian_quotient_mu(D: DenseGroup, nmask: int) -> int:
    """mu(G/N) for G/N abelian, from the orders of its Omega subgroups.

    The number of cyclic factors of G/N of order at least p^i is
    log_p |Omega_i(G/N) : Omega_{i-1}(G/N)|, and |Omega_i(G/N)| is the number
    of x in G with x^(p^i) in N, divided by |N|.
    """
    inN = D.boolmask(nmask)
    nsize = int(inN.sum())
    p = D.p
    logs = [0]
    x = np.arange(D.order)
    while logs[-1] < D.n - _log(p, nsize):
        x = D.ppow[x]
        logs.append(_log(p, int(inN[x].sum()) // nsize))
    at_least = [logs[i] - logs[i - 1] for i in range(1, len(logs))] + [0]
    return sum((at_least[i - 1] - at_least[i]) * p ** i for i in range(1, len(logs)))


def _log(p, m):
    k = 0
    while m > 1:
        m //= p
        k += 1
    return k


def distinguished_quotients(P: PcPresentation, group_id: str | None = None,
                            dense: DenseGroup | None = None, cyclic_skip: bool = True,
                            abelian_shortcut: bool = True, abelian_formula: bool = True,
                            route: str = "lattice", check: bool = False) -> ExceptionalReport:
    """Compute mu(G/N) for every normal N with 1 < N < G.

    ``route="lattice"`` reads every mu(G/N) off the subgroup lattice of G
    (classes containing N); ``route="presentation"`` builds each quotient
    presentation and runs :func:`minimal_degree` on it. With
    ``abelian_shortcut`` an abelian G is reported non-exceptional without
    enumerating its subgroups, since each quotient of a finite abelian group
    is isomorphic to a subgroup. With ``abelian_formula`` the degree of an
    abelian quotient comes from its invariants instead of a search.
    """
    if check:
        require_consistent(P)
    gid = group_id or P.name
    if P.n == 0:
        return ExceptionalReport(gid, 1, 1)
    if abelian_shortcut and not P.comm_rhs:
        report = ExceptionalReport(gid, P.order, minimal_degree(P, dense, with_perms=False).mu)
        report.shortcut = "abelian"
        return report
    D = dense or DenseGroup(P)
    mu = minimal_degree(P, D, with_perms=False).mu
    report = ExceptionalReport(gid, P.order, mu)
    if route not in ("lattice", "presentation"):
        raise ValueError(f"unknown route {route!r}")
    normals = D.normal_subgroup_masks()
    phi_labels = D.coset_labels(D.frattini())
    derived = D.derived()
    subgroups = [(D.to_subgroup(m), m) for m in normals if m not in (1, D.all)]
    subgroups.sort(key=lambda t: t[0].key())
    qcache = {}
    for N, nmask in subgroups:
        qorder = D.order // N.order
        cyclic = _is_cyclic_quotient(D, nmask, phi_labels)
        if cyclic and cyclic_skip:
            muq = qorder  # a cyclic group of order p^k has degree p^k
        elif abelian_formula and nmask & derived == derived:
            muq = abelian_quotient_mu(D, nmask)
        elif route == "lattice":
            muq, _ = mu_of_quotient(D, nmask, D.lattice())
        else:
            from .structure import quotient
            Q = quotient(P, N, check=False).pres
            fp = Q.fingerprint()
            if fp not in qcache:
                qcache[fp] = minimal_degree(Q, with_perms=False).mu
            muq = qcache[fp]
        report.entries.append(QuotientEntry(N, qorder, muq, muq > mu, cyclic))
    report.exceptional = any(e.distinguished for e in report.entries)
    return report


def is_exceptional(P: PcPresentation, **kw) -> bool:
    return distinguished_quotients(P, **kw).exceptional


# -- closed forms for groups of order p^6 ----------------------------------

def _require_p(p):
    if not is_prime(p) or p < 5:
        raise ValueError(f"formula holds for primes p >= 5 only, got {p}")


def _half(x):
    assert x % 2 == 0, x
    return x // 2


def group_count_p6(p: int) -> int:
    """Number of groups of order p^6 for a prime p >= 5."""
    _require_p(p)
    g = math.gcd
    return 3 * p * p + 39 * p + 344 + 24 * g(p - 1, 3) + 11 * g(p - 1, 4) + 2 * g(p - 1, 5)


@dataclass(frozen=True)
class ExceptionalBounds:
    upper: int
    conjectured: int
    nonexceptional_lower: int


def nonexceptional_families(p: int) -> dict:
    """Groups of order p^6 shown non-exceptional, by isoclinism families."""
    _require_p(p)
    g3, g4, g5 = math.gcd(p - 1, 3), math.gcd(p - 1, 4), math.gcd(p - 1, 5)
    return {
        "15": p + 3,
        "21": _half(3 * p * p + 4 * p + 5),
        "25,26,42,43": 3 * p + 4,
        "22,24,27,30-33,35-41": 2 * p + 45 + 10 * g3 + 5 * g4 + 2 * g5,
        "28,29,34": 2 * p,
        "2-10,14 (mu >= p^4)": p + 28 + 2 * g3 + g4,
        "4,6,11-13,16-20,23 (mu >= 2p^3)": _half(3 * p * p + 23 * p + 56) + 6 * g3 + 2 * g4,
    }


def exceptional_bounds(p: int) -> ExceptionalBounds:
    _require_p(p)
    g3, g4, g5 = math.gcd(p - 1, 3), math.gcd(p - 1, 4), math.gcd(p - 1, 5)
    upper = _half(33 * p + 467) + 6 * g3 + 3 * g4
    conjectured = _half(11 * p + 107)
    lower = 3 * p * p + _half(45 * p + 221) + 18 * g3 + 8 * g4 + 2 * g5
    if sum(nonexceptional_families(p).values()) != lower:
        raise AssertionError("family counts do not add up")
    if group_count_p6(p) - lower != upper:
        raise AssertionError(f"count identity fails at p={p}")
    return ExceptionalBounds(upper, conjectured, lower)


# -- corpus scans ------------------------------------------------------------

def natural_key(s: str):
    return [int(t) if t.isdigit() else t for t in re.split(r"(\d+)", s)]


def _scan_one(args):
    """Worker: returns (group_id, report or None, error text or None, seconds)."""
    gid, path, fingerprint_expected, opts = args
    t0 = time.perf_counter()
    try:
        from .pcp_format import read_pcp
        P = read_pcp(path)
        if opts.get("check"):
            require_consistent(P)
        rep = _with_timeout(opts.get("timeout"), distinguished_quotients, P, gid,
                            cyclic_skip=opts["cyclic_skip"],
                            abelian_shortcut=opts["abelian_shortcut"],
                            abelian_formula=opts["abelian_formula"])
        return gid, rep, None, time.perf_counter() - t0
    except Exception as exc:  # recorded, never dropped
        return gid, None, f"{type(exc).__name__}: {exc}", time.perf_counter() - t0


class ScanTimeout(Exception):
    pass


def _with_timeout(seconds, fn, *args, **kw):
    if not seconds:
        return fn(*args, **kw)
    import signal

    def handler(signum, frame):
        raise ScanTimeout(f"exceeded {seconds} s")

    old = signal.signal(signal.SIGALRM, handler)
    signal.setitimer(signal.ITIMER_REAL, seconds)
    try:
        return fn(*args, **kw)
    finally:
        signal.setitimer(signal.ITIMER_REAL, 0)
        signal.signal(signal.SIGALRM, old)


def scan_corpus(manifest, jobs: int = 1, cache=None, resume: bool = True,
                timeout: float | None = None, limit: int | None = None,
                check: bool = False, cyclic_skip: bool = True,
                abelian_shortcut: bool = True, abelian_formula: bool = True,
                progress=None) -> ScanReport:
    """Scan every group of a corpus manifest for distinguished quotients.

    ``cache`` is a :class:`pgmindeg.cache.ResultCache` (or None); with
    ``resume`` cached reports whose fingerprint still matches are reused.
    ``limit`` scans only the first entries (in group-id order) and marks the
    report partial. Results are merged in group-id order, so the report does
    not depend on ``jobs``.
    """
    from . import __version__
    from .pcp_format import read_pcp
    from .serialize import report_from_dict, report_to_dict

    t0 = time.perf_counter()
    entries = sorted(manifest.entries, key=lambda e: natural_key(e.group_id))
    partial = False
    if limit is not None and limit < len(entries):
        entries = entries[:limit]
        partial = True
    results = {}
    failures = {}
    todo = []
    opts = dict(timeout=timeout, check=check, cyclic_skip=cyclic_skip,
                abelian_shortcut=abelian_shortcut, abelian_formula=abelian_formula)
    for e in entries:
        path = manifest.resolve(e)
        try:
            # scan options change the entries, so they take part in the key
            fp = f"{read_pcp(path).fingerprint()}/skip={int(cyclic_skip)}" \
                 f"/abelian={int(abelian_shortcut)}{int(abelian_formula)}/v{__version__}"
        except Exception as exc:
            failures[e.group_id] = f"{type(exc).__name__}: {exc}"
            continue
        if cache is not None and resume:
            hit = cache.lookup(e.group_id, fp)
            if hit is not None:
                results[e.group_id] = report_from_dict(hit)
                continue
        todo.append((e.group_id, str(path), fp, opts))

    fps = {t[0]: t[2] for t in todo}

    def record(out):
        gid, rep, err, secs = out
        if err is not None:
            failures[gid] = err
            log.warning("%s failed: %s", gid, err)
        else:
            results[gid] = rep
            if cache is not None:
                cache.store(gid, fps[gid], report_to_dict(rep))
        if progress:
            progress(gid, rep, secs)

    if jobs <= 1:
        for t in todo:
            record(_scan_one(t))
    else:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for out in pool.map(_scan_one, todo, chunksize=1):
                record(out)

    per_group = [results[g] for g in sorted(results, key=natural_key)]
    return ScanReport(
        corpus_id=manifest.corpus_id,
        p=manifest.p,
        order_exponent=manifest.order_exponent,
        total_groups=len(manifest.entries),
        exceptional_count=sum(r.exceptional for r in per_group),
        per_group=per_group,
        timing=time.perf_counter() - t0,
        failures=dict(sorted(failures.items(), key=lambda kv: natural_key(kv[0]))),
        partial=partial or bool(failures),
        manifest_digest=manifest.digest,
        engine_version=__version__,
    )
