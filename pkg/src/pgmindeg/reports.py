"""Report emission: JSON, CSV tables and plain text.

Output is deterministic for a given report. Wall-clock timing is left out
unless asked for, so two runs of the same scan give identical bytes.
"""
from __future__ import annotations

import csv
import io
import json
from pathlib import Path

from .exceptional import ExceptionalReport, ScanReport
from .mindeg import MuCertificate
from .serialize import certificate_to_dict, report_to_dict, scan_to_dict

FORMATS = ("json", "csv", "text")

SCAN_COLUMNS = ["group_id", "order", "mu", "exceptional", "normal_subgroups",
                "distinguished", "max_mu_quotient", "status"]


def _gens_text(H) -> str:
    return ";".join("".join(str(x) if x < 10 else f"({x})" for x in h) for h in H.gens) or "1"


def _csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerows(rows)
    return buf.getvalue()


def _scan_rows(s: ScanReport):
    rows = [SCAN_COLUMNS]
    for r in s.per_group:
        dist = [e for e in r.entries if e.distinguished]
        rows.append([r.group_id, r.order, r.mu, int(r.exceptional),
                     "" if r.shortcut else len(r.entries), len(dist),
                     max((e.mu_quotient for e in r.entries), default=""),
                     r.shortcut or "ok"])
    for gid, err in s.failures.items():
        rows.append([gid, "", "", "", "", "", "", f"failed: {err}"])
    if s.per_group or s.failures:
        rows.append(["summary", f"{s.total_groups} total", "",
                     f"{s.exceptional_count} exceptional", "", "", "",
                     "partial" if s.partial else "complete"])
    return rows


def _scan_text(s: ScanReport, timing: bool) -> str:
    out = [f"corpus {s.corpus_id}: groups of order {s.p}^{s.order_exponent}",
           f"scanned {len(s.per_group)} of {s.total_groups}, "
           f"exceptional {s.exceptional_count}" + (" (partial)" if s.partial else "")]
    if timing:
        out.append(f"wall time {s.timing:.1f} s")
    for r in s.per_group:
        if r.exceptional:
            qs = ", ".join(f"|N|={e.normal_subgroup.order} mu(G/N)={e.mu_quotient}"
                           for e in r.entries if e.distinguished)
            out.append(f"  {r.group_id}: mu={r.mu}; {qs}")
    for gid, err in s.failures.items():
        out.append(f"  {gid}: FAILED {err}")
    out.append(f"engine {s.engine_version}, manifest sha256 {s.manifest_digest[:16]}")
    return "\n".join(out) + "\n"


def _exc_text(r: ExceptionalReport) -> str:
    out = [f"{r.group_id}: order {r.order}, mu {r.mu}, "
           f"{'exceptional' if r.exceptional else 'not exceptional'}"]
    if r.shortcut:
        out.append(f"  quotients not enumerated ({r.shortcut} group)")
    for e in r.entries:
        mark = " *" if e.distinguished else ""
        out.append(f"  N=<{_gens_text(e.normal_subgroup)}> |G/N|={e.quotient_order} "
                   f"mu(G/N)={e.mu_quotient}{mark}")
    return "\n".join(out) + "\n"


def _cert_text(c: MuCertificate, order) -> str:
    out = [f"mu = {c.mu} ({len(c.collection)} coset block(s))"]
    for k, H in enumerate(c.collection):
        idx = order // H.order if order else "?"
        out.append(f"  block {k + 1}: index {idx}, H=<{_gens_text(H)}>")
    return "\n".join(out) + "\n"


def render(report, fmt: str = "json", timing: bool = False, order: int | None = None) -> str:
    """Report as text in ``fmt``. ``order`` (|G|) labels certificate blocks."""
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}; choose from {', '.join(FORMATS)}")
    if isinstance(report, ScanReport):
        if fmt == "json":
            return json.dumps(scan_to_dict(report, timing), sort_keys=True, separators=(",", ":")) + "\n"
        if fmt == "csv":
            return _csv(_scan_rows(report))
        return _scan_text(report, timing)
    if isinstance(report, ExceptionalReport):
        if fmt == "json":
            return json.dumps(report_to_dict(report), indent=1, sort_keys=True) + "\n"
        if fmt == "csv":
            rows = [["normal_subgroup", "subgroup_order", "quotient_order", "mu_quotient",
                     "distinguished"]]
            rows += [[_gens_text(e.normal_subgroup), e.normal_subgroup.order, e.quotient_order,
                      e.mu_quotient, int(e.distinguished)] for e in report.entries]
            return _csv(rows)
        return _exc_text(report)
    if isinstance(report, MuCertificate):
        if fmt == "json":
            return json.dumps(certificate_to_dict(report, order), indent=1, sort_keys=True) + "\n"
        if fmt == "csv":
            rows = [["block", "index", "subgroup_order", "subgroup"]]
            for k, H in enumerate(report.collection):
                rows.append([k + 1, order // H.order if order else "", H.order, _gens_text(H)])
            return _csv(rows)
        return _cert_text(report, order)
    raise TypeError(f"cannot render {type(report).__name__}")


def emit_report(report, fmt: str = "json", dest=None, timing: bool = False,
                order: int | None = None) -> str:
    """Render ``report`` and write it to ``dest`` (a path) if given."""
    text = render(report, fmt, timing, order)
    if dest is not None:
        Path(dest).write_text(text)
    return text
