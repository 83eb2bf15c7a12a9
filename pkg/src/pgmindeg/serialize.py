"""Plain-data (JSON-ready) forms of reports and certificates."""
from __future__ import annotations

from .exceptional import ExceptionalReport, QuotientEntry, ScanReport
from .mindeg import MuCertificate
from .structure import Subgroup


def subgroup_to_data(H: Subgroup) -> dict:
    return {"order": H.order, "gens": [list(h) for h in H.gens]}


def subgroup_from_data(d: dict) -> Subgroup:
    return Subgroup(tuple(tuple(h) for h in d["gens"]), d["order"])


def report_to_dict(r: ExceptionalReport) -> dict:
    return {
        "group_id": r.group_id,
        "order": r.order,
        "mu": r.mu,
        "exceptional": r.exceptional,
        "shortcut": r.shortcut,
        "entries": [
            {
                "normal_subgroup": subgroup_to_data(e.normal_subgroup),
                "quotient_order": e.quotient_order,
                "mu_quotient": e.mu_quotient,
                "distinguished": e.distinguished,
                "cyclic": e.cyclic,
            }
            for e in r.entries
        ],
    }


def report_from_dict(d: dict) -> ExceptionalReport:
    entries = [QuotientEntry(subgroup_from_data(e["normal_subgroup"]), e["quotient_order"],
                             e["mu_quotient"], e["distinguished"], e.get("cyclic", False))
               for e in d["entries"]]
    return ExceptionalReport(d["group_id"], d["order"], d["mu"], entries,
                             d["exceptional"], d.get("shortcut"))


def scan_to_dict(s: ScanReport, timing: bool = False) -> dict:
    out = {
        "corpus_id": s.corpus_id,
        "p": s.p,
        "order_exponent": s.order_exponent,
        "total_groups": s.total_groups,
        "scanned_groups": len(s.per_group),
        "exceptional_count": s.exceptional_count,
        "partial": s.partial,
        "failures": dict(s.failures),
        "engine_version": s.engine_version,
        "manifest_sha256": s.manifest_digest,
        "per_group": [report_to_dict(r) for r in s.per_group],
    }
    if timing:
        out["timing_seconds"] = round(s.timing, 3)
    return out


def scan_from_dict(d: dict) -> ScanReport:
    return ScanReport(
        corpus_id=d["corpus_id"],
        p=d["p"],
        order_exponent=d["order_exponent"],
        total_groups=d["total_groups"],
        exceptional_count=d["exceptional_count"],
        per_group=[report_from_dict(r) for r in d["per_group"]],
        timing=d.get("timing_seconds", 0.0),
        failures=d.get("failures", {}),
        partial=d.get("partial", False),
        manifest_digest=d.get("manifest_sha256", ""),
        engine_version=d.get("engine_version", ""),
    )


def certificate_to_dict(c: MuCertificate, order: int | None = None) -> dict:
    blocks = []
    for H in c.collection:
        b = {"subgroup": subgroup_to_data(H)}
        if order is not None:
            b["index"] = order // H.order
        blocks.append(b)
    return {"mu": c.mu, "blocks": blocks, "generator_images": [list(p) for p in c.perms]}


def certificate_from_dict(d: dict) -> MuCertificate:
    return MuCertificate(d["mu"], [subgroup_from_data(b["subgroup"]) for b in d["blocks"]],
                         [tuple(p) for p in d["generator_images"]])
