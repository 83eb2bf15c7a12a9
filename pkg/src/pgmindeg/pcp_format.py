"""Reading and writing the PCP text format and corpus manifests.

PCP files look like::

    group 27_3
    prime 3
    rank 3
    comm 2 1 : 0 0 1
    end

Generator indices are 1-based in files. Tokens are separated by exactly one
space; ``#`` starts a comment.
"""
from __future__ import annotations

import hashlib
import os
from dataclasses import dataclass, field
from pathlib import Path

from .pcgroup import PcPresentation, PresentationError, is_prime


class PcpSyntaxError(PresentationError):
    def __init__(self, msg, line=None, col=None, source=None):
        where = ""
        if source:
            where += f"{source}:"
        if line is not None:
            where += f"{line}:{col or 1}: "
        super().__init__(where + msg)
        self.line = line
        self.col = col


def _tokens(raw, lineno, source):
    """Split on single spaces, tracking 1-based columns."""
    text = raw.split("#", 1)[0].rstrip("\r\n")
    stripped = text.rstrip(" \t")
    if not stripped:
        return []
    if stripped[0] == " ":
        raise PcpSyntaxError("leading whitespace", lineno, 1, source)
    if "\t" in stripped:
        raise PcpSyntaxError("tab character", lineno, stripped.index("\t") + 1, source)
    toks = []
    col = 1
    for part in stripped.split(" "):
        if part == "":
            raise PcpSyntaxError("tokens must be separated by exactly one space",
                                 lineno, col, source)
        toks.append((part, col))
        col += len(part) + 1
    return toks


def _int(tok, lineno, source):
    s, col = tok
    if not (s.isdigit() or (s[0] == "-" and s[1:].isdigit())):
        raise PcpSyntaxError(f"expected a base-10 integer, got {s!r}", lineno, col, source)
    return int(s)


def parse_pcp(text: str, source: str | None = None) -> PcPresentation:
    lines = [(i + 1, _tokens(raw, i + 1, source)) for i, raw in enumerate(text.splitlines())]
    lines = [(ln, t) for ln, t in lines if t]
    header = ["group", "prime", "rank"]
    if len(lines) < 4:
        raise PcpSyntaxError("truncated file: need group, prime, rank and end lines",
                             lines[-1][0] if lines else 1, 1, source)
    values = []
    for key, (ln, toks) in zip(header, lines[:3]):
        if toks[0][0] != key:
            raise PcpSyntaxError(f"expected {key!r}", ln, toks[0][1], source)
        if len(toks) != 2:
            raise PcpSyntaxError(f"{key!r} takes exactly one argument", ln, toks[0][1], source)
        values.append(toks[1] if key == "group" else _int(toks[1], ln, source))
    name = values[0][0]
    p, n = values[1], values[2]
    if not is_prime(p):
        raise PcpSyntaxError("p must be prime", lines[1][0], lines[1][1][1][1], source)
    if n < 0:
        raise PcpSyntaxError("rank must be non-negative", lines[2][0], lines[2][1][1][1], source)
    pow_rhs = [None] * n
    comm = {}
    ended = False
    for ln, toks in lines[3:]:
        if ended:
            raise PcpSyntaxError("content after 'end'", ln, toks[0][1], source)
        kw, col = toks[0]
        if kw == "end":
            if len(toks) != 1:
                raise PcpSyntaxError("'end' takes no arguments", ln, toks[1][1], source)
            ended = True
            continue
        if kw not in ("pow", "comm"):
            raise PcpSyntaxError(f"unknown keyword {kw!r}", ln, col, source)
        nidx = 1 if kw == "pow" else 2
        if len(toks) != 1 + nidx + 1 + n or toks[1 + nidx][0] != ":":
            raise PcpSyntaxError(f"expected '{kw} <index...> : <{n} exponents>'", ln, col, source)
        idx = [_int(t, ln, source) for t in toks[1:1 + nidx]]
        for v, t in zip(idx, toks[1:1 + nidx]):
            if not 1 <= v <= n:
                raise PcpSyntaxError(f"generator index {v} out of range 1..{n}", ln, t[1], source)
        exps = []
        for t in toks[2 + nidx:]:
            v = _int(t, ln, source)
            if not 0 <= v < p:
                raise PcpSyntaxError(f"entry {v} out of range [0, {p})", ln, t[1], source)
            exps.append(v)
        pivot = idx[0] - 1
        if kw == "comm":
            j, i = idx[0] - 1, idx[1] - 1
            if not j > i:
                raise PcpSyntaxError("comm indices must satisfy j > i", ln, toks[1][1], source)
            if (j, i) in comm:
                raise PcpSyntaxError(f"duplicate relation comm {j + 1} {i + 1}", ln, col, source)
        elif pow_rhs[pivot] is not None:
            raise PcpSyntaxError(f"duplicate relation pow {pivot + 1}", ln, col, source)
        for k, v in enumerate(exps):
            if v and k <= pivot:
                raise PcpSyntaxError(
                    f"support constraint violated: rhs touches generator {k + 1}",
                    ln, toks[2 + nidx + k][1], source)
        if kw == "pow":
            pow_rhs[pivot] = tuple(exps)
        else:
            comm[(j, i)] = tuple(exps)
    if not ended:
        raise PcpSyntaxError("missing 'end'", lines[-1][0], 1, source)
    pow_rhs = [w if w is not None else (0,) * n for w in pow_rhs]
    return PcPresentation(p=p, n=n, pow_rhs=tuple(pow_rhs), comm_rhs=comm, name=name)


def write_pcp(P: PcPresentation) -> str:
    out = [f"group {P.name}", f"prime {P.p}", f"rank {P.n}"]
    for i, w in enumerate(P.pow_rhs):
        if any(w):
            out.append(f"pow {i + 1} : " + " ".join(map(str, w)))
    for (j, i), w in sorted(P.comm_rhs.items()):
        out.append(f"comm {j + 1} {i + 1} : " + " ".join(map(str, w)))
    out.append("end")
    return "\n".join(out) + "\n"


def read_pcp(path) -> PcPresentation:
    path = Path(path)
    return parse_pcp(path.read_text(), source=str(path))


def presentation_fingerprint(P: PcPresentation) -> str:
    """Hash of the relations only; the group label does not take part."""
    body = write_pcp(P).split("\n", 1)[1]
    return hashlib.sha256(body.encode()).hexdigest()


@dataclass
class ManifestEntry:
    group_id: str
    path: str
    family: str | None = None
    params: dict = field(default_factory=dict)


@dataclass
class CorpusManifest:
    corpus_id: str
    p: int
    order_exponent: int
    entries: list
    expected_count: int | None = None
    root: Path = Path(".")
    digest: str = ""

    def resolve(self, entry: ManifestEntry) -> Path:
        return (self.root / entry.path).resolve()

    def load(self, entry: ManifestEntry) -> PcPresentation:
        return read_pcp(self.resolve(entry))

    def validate(self, parse_files: bool = True) -> None:
        """Raise ``PresentationError`` if the manifest is not self-consistent."""
        seen = set()
        for e in self.entries:
            if e.group_id in seen:
                raise PresentationError(f"duplicate group id {e.group_id}")
            seen.add(e.group_id)
        if self.expected_count is not None and self.expected_count != len(self.entries):
            raise PresentationError(
                f"corpus {self.corpus_id}: expected {self.expected_count} entries, "
                f"found {len(self.entries)}")
        if self.order_exponent == 6 and self.p >= 5:
            from .exceptional import group_count_p6
            want = group_count_p6(self.p)
            if len(self.entries) != want:
                raise PresentationError(
                    f"corpus {self.corpus_id}: {len(self.entries)} entries but there are "
                    f"{want} groups of order {self.p}^6")
        if parse_files:
            for e in self.entries:
                P = self.load(e)
                if P.p != self.p or P.n != self.order_exponent:
                    raise PresentationError(
                        f"{e.group_id}: presentation has order {P.p}^{P.n}, "
                        f"manifest says {self.p}^{self.order_exponent}")


def parse_manifest(text: str, root=".", source: str | None = None) -> CorpusManifest:
    fields = {}
    entries = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        toks = raw.split("#", 1)[0].split()
        if not toks:
            continue
        kw = toks[0]
        if kw == "entry":
            if len(toks) < 3:
                raise PcpSyntaxError("entry needs <group_id> <path>", lineno, 1, source)
            entry = ManifestEntry(toks[1], toks[2])
            for extra in toks[3:]:
                key, _, val = extra.partition("=")
                if key == "family":
                    entry.family = val
                elif key == "params":
                    for binding in filter(None, val.split(",")):
                        k, _, v = binding.partition("=")
                        entry.params[k] = v
                else:
                    raise PcpSyntaxError(f"unknown entry attribute {key!r}", lineno, 1, source)
            entries.append(entry)
        elif kw in ("corpus", "prime", "order_exponent", "expected_count"):
            if len(toks) != 2:
                raise PcpSyntaxError(f"{kw!r} takes one argument", lineno, 1, source)
            fields[kw] = toks[1]
        else:
            raise PcpSyntaxError(f"unknown manifest keyword {kw!r}", lineno, 1, source)
    for req in ("corpus", "prime", "order_exponent"):
        if req not in fields:
            raise PcpSyntaxError(f"manifest lacks {req!r}", None, None, source)
    return CorpusManifest(
        corpus_id=fields["corpus"],
        p=int(fields["prime"]),
        order_exponent=int(fields["order_exponent"]),
        expected_count=int(fields["expected_count"]) if "expected_count" in fields else None,
        entries=entries,
        root=Path(root),
        digest=hashlib.sha256(text.encode()).hexdigest(),
    )


def read_manifest(path) -> CorpusManifest:
    path = Path(path)
    if path.is_dir():
        path = path / "manifest.txt"
    return parse_manifest(path.read_text(), root=path.parent, source=str(path))


def write_manifest(m: CorpusManifest) -> str:
    out = [f"corpus {m.corpus_id}", f"prime {m.p}", f"order_exponent {m.order_exponent}"]
    if m.expected_count is not None:
        out.append(f"expected_count {m.expected_count}")
    for e in m.entries:
        line = f"entry {e.group_id} {e.path}"
        if e.family:
            line += f" family={e.family}"
        if e.params:
            line += " params=" + ",".join(f"{k}={v}" for k, v in e.params.items())
        out.append(line)
    return "\n".join(out) + "\n"


def default_cache_dir():
    return os.environ.get("PGMINDEG_CACHE")
