import pytest

from pgmindeg.builtins import heisenberg
from pgmindeg.pcgroup import PresentationError
from pgmindeg.pcp_format import (PcpSyntaxError, parse_manifest, parse_pcp, read_manifest,
                                 write_pcp)

from conftest import CORPORA, SMALL, manifest

HEIS3 = """group heis3
prime 3
rank 3
comm 2 1 : 0 0 1
end
"""


def test_heisenberg_round_trip():
    P = parse_pcp(HEIS3)
    assert P.n == 3 and P.p == 3
    assert P.comm_rhs == {(1, 0): (0, 0, 1)}
    assert write_pcp(P) == HEIS3
    assert P == heisenberg(3)


def test_comments_and_blank_lines():
    text = "# a comment\ngroup x # trailing\n\nprime 2\nrank 1\npow 1 : 0\nend\n"
    P = parse_pcp(text)
    assert P.p == 2 and P.n == 1


@pytest.mark.parametrize("text, message, line, col", [
    ("group x\nprime 4\nrank 1\nend\n", "p must be prime", 2, 7),
    ("group x\nprime 3\nrank 3\ncomm 2 1 : 0 1 0\nend\n", "support", 4, 14),
    ("group x\nprime 3\nrank 2\npow 1 : 0 3\nend\n", "out of range", 4, 11),
    ("group x\nprime 3\nrank 2\npow 1 : 0 1\npow 1 : 0 2\nend\n", "duplicate", 5, 1),
    ("group x\nprime 3\nrank 2\npow 1 : 0 1\n", "missing 'end'", 4, 1),
    ("group x\nprime 3\nrank 2\npow 1 :  0 1\nend\n", "exactly one space", 4, 9),
    ("group x\nprime 3\nrank 2\npow 3 : 0 1\nend\n", "out of range 1..2", 4, 5),
])
def test_syntax_errors_carry_position(text, message, line, col):
    with pytest.raises(PcpSyntaxError, match=message) as info:
        parse_pcp(text, source="t.pcp")
    assert (info.value.line, info.value.col) == (line, col)
    assert str(info.value).startswith(f"t.pcp:{line}:{col}:")


@pytest.mark.parametrize("corpus", SMALL + ["p2_6", "p5_5"])
def test_round_trip_on_corpus(corpus):
    m = manifest(corpus)
    m.validate(parse_files=False)
    for e in m.entries:
        text = m.resolve(e).read_text()
        P = parse_pcp(text)
        canon = write_pcp(P)
        assert parse_pcp(canon) == P
        assert write_pcp(parse_pcp(canon)) == canon


def test_corpus_sizes():
    sizes = {c: len(manifest(c).entries) for c in ("p2_4", "p2_5", "p2_6", "p3_6", "p5_5")}
    assert sizes == {"p2_4": 14, "p2_5": 51, "p2_6": 267, "p3_6": 504, "p5_5": 77}
    assert sizes["p5_5"] <= 2 * 5 + 71


def test_p5_6_manifest_count_gate(tmp_path):
    m = read_manifest(CORPORA / "p5_6")
    assert len(m.entries) == 684
    m.validate(parse_files=False)
    text = (CORPORA / "p5_6" / "manifest.txt").read_text()
    lines = [ln for ln in text.splitlines() if not ln.startswith("entry 15625_684 ")]
    broken = parse_manifest("\n".join(lines).replace("expected_count 684", ""),
                            root=CORPORA / "p5_6")
    with pytest.raises(PresentationError, match="684"):
        broken.validate(parse_files=False)


def test_manifest_entry_attributes():
    m = parse_manifest("corpus c\nprime 5\norder_exponent 6\n"
                       "entry g1 a.pcp family=Phi15 params=r=1,nu=2\n")
    e = m.entries[0]
    assert e.family == "Phi15" and e.params == {"r": "1", "nu": "2"}


def test_manifest_rejects_duplicates_and_count():
    m = parse_manifest("corpus c\nprime 2\norder_exponent 1\nexpected_count 2\n"
                       "entry a a.pcp\nentry a b.pcp\n")
    with pytest.raises(PresentationError, match="duplicate"):
        m.validate(parse_files=False)
    m = parse_manifest("corpus c\nprime 2\norder_exponent 1\nexpected_count 3\nentry a a.pcp\n")
    with pytest.raises(PresentationError, match="expected 3"):
        m.validate(parse_files=False)
