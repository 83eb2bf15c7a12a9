from __future__ import annotations

from functools import lru_cache
from pathlib import Path

import pytest

from pgmindeg.pcp_format import read_manifest

ROOT = Path(__file__).resolve().parents[1]
CORPORA = ROOT / "corpora"

# every exported corpus of order at most 3^5 = 243
SMALL = ["p2_1", "p2_2", "p2_3", "p2_4", "p2_5", "p3_1", "p3_2", "p3_3", "p3_4", "p3_5",
         "p5_1", "p5_2", "p5_3"]


@lru_cache(maxsize=None)
def manifest(corpus: str):
    return read_manifest(CORPORA / corpus)


@lru_cache(maxsize=None)
def corpus_groups(corpus: str):
    m = manifest(corpus)
    return tuple(m.load(e) for e in m.entries)


def small_groups():
    out = []
    for c in SMALL:
        out.extend(corpus_groups(c))
    return out


@lru_cache(maxsize=None)
def gap_reference(corpus: str) -> dict:
    """group_id -> (mu, exceptional) as computed independently by GAP."""
    path = CORPORA / corpus / "reference.txt"
    if not path.exists():
        return {}
    ref = {}
    for line in path.read_text().splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        gid, mu, exc = line.split()
        ref[gid] = (int(mu), exc == "true")
    return ref


@pytest.fixture(scope="session")
def small_corpus():
    return small_groups()


# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
