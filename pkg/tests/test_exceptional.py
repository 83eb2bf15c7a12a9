import pytest
from sympy import primerange

from pgmindeg.builtins import abelian, heisenberg
from pgmindeg.dense import DenseGroup
from pgmindeg.exceptional import (distinguished_quotients, exceptional_bounds, group_count_p6,
                                  is_exceptional, natural_key, nonexceptional_families)
from pgmindeg.serialize import report_to_dict

from conftest import SMALL, corpus_groups, gap_reference
from test_builtins import all_partitions


def test_group_counts():
    assert group_count_p6(5) == 684
    assert group_count_p6(7) == 860
    assert group_count_p6(11) == 1192


def test_bounds_p5():
    b = exceptional_bounds(5)
    assert (b.upper, b.conjectured, b.nonexceptional_lower) == (334, 81, 350)
    assert group_count_p6(5) - b.nonexceptional_lower == b.upper


def test_conjectured_values():
    assert [exceptional_bounds(p).conjectured for p in (5, 7, 11, 13)] == [81, 92, 114, 125]


def test_identities_for_primes_up_to_97():
    for p in primerange(5, 98):
        b = exceptional_bounds(p)
        assert group_count_p6(p) - b.nonexceptional_lower == b.upper
        assert sum(nonexceptional_families(p).values()) == b.nonexceptional_lower
        assert b.conjectured <= b.upper


@pytest.mark.parametrize("p", [2, 3, 4, 1, 25])
def test_formulas_reject_small_or_composite(p):
    with pytest.raises(ValueError):
        group_count_p6(p)
    with pytest.raises(ValueError):
        exceptional_bounds(p)


def test_heisenberg_not_exceptional():
    rep = distinguished_quotients(heisenberg(3))
    assert rep.mu == 9 and not rep.exceptional
    assert len(rep.entries) == 5
    assert max(e.mu_quotient for e in rep.entries) == 6


def test_entries_cover_normal_subgroups_once():
    for P in corpus_groups("p2_4"):
        D = DenseGroup(P)
        rep = distinguished_quotients(P, dense=D, abelian_shortcut=False)
        keys = [e.normal_subgroup.gens for e in rep.entries]
        assert len(keys) == len(set(keys)) == len(D.normal_subgroup_masks()) - 2
        assert rep.exceptional == any(e.mu_quotient > rep.mu for e in rep.entries)
        assert all(e.distinguished == (e.mu_quotient > rep.mu) for e in rep.entries)


@pytest.mark.parametrize("corpus", SMALL)
def test_cyclic_skip_is_sound(corpus):
    for P in corpus_groups(corpus):
        D = DenseGroup(P)
        kw = dict(dense=D, abelian_shortcut=False, abelian_formula=False)
        a = distinguished_quotients(P, **kw)
        b = distinguished_quotients(P, cyclic_skip=False, **kw)
        assert report_to_dict(a) == report_to_dict(b), P.name


@pytest.mark.parametrize("corpus", SMALL)
def test_abelian_quotient_formula_is_sound(corpus):
    for P in corpus_groups(corpus):
        D = DenseGroup(P)
        kw = dict(dense=D, abelian_shortcut=False, cyclic_skip=False)
        a = distinguished_quotients(P, **kw)
        b = distinguished_quotients(P, abelian_formula=False, **kw)
        assert report_to_dict(a) == report_to_dict(b), P.name


@pytest.mark.parametrize("corpus", ["p2_3", "p2_4", "p3_3", "p3_4", "p5_3"])
def test_presentation_route_agrees(corpus):
    for P in corpus_groups(corpus):
        kw = dict(abelian_shortcut=False, cyclic_skip=False, abelian_formula=False)
        a = distinguished_quotients(P, **kw)
        b = distinguished_quotients(P, route="presentation", **kw)
        assert report_to_dict(a) == report_to_dict(b), P.name


def test_presentation_route_on_order_32():
    for P in corpus_groups("p2_5"):
        a = distinguished_quotients(P)
        b = distinguished_quotients(P, route="presentation", cyclic_skip=False)
        assert a.exceptional == b.exceptional, P.name
        assert [e.mu_quotient for e in a.entries] == [e.mu_quotient for e in b.entries]


@pytest.mark.parametrize("p", [2, 3, 5])
def test_abelian_never_exceptional(p):
    # every abelian group of order at most 3^6, without the abelian shortcut;
    # quotient degrees come from a lattice search up to order 243
    for part in all_partitions(6):
        A = abelian(p, part)
        if A.order > 3 ** 6:
            continue
        if A.order == 3 ** 6 and part == [1] * 6:
            continue  # separate test below
        rep = distinguished_quotients(A, abelian_shortcut=False,
                                      abelian_formula=A.order > 243)
        assert not rep.exceptional, part


@pytest.mark.slow
def test_elementary_abelian_729_not_exceptional():
    rep = distinguished_quotients(abelian(3, [1] * 6), abelian_shortcut=False)
    assert len(rep.entries) == 56630  # subspaces of F_3^6 other than 0 and the whole
    assert not rep.exceptional


def test_abelian_shortcut_flags_report():
    rep = distinguished_quotients(abelian(5, [2, 1]))
    assert rep.shortcut == "abelian" and rep.entries == [] and not rep.exceptional


@pytest.mark.parametrize("corpus", SMALL)
def test_exceptional_flags_match_gap(corpus):
    ref = gap_reference(corpus)
    if not ref:
        pytest.skip("no reference file")
    for P in corpus_groups(corpus):
        assert is_exceptional(P) == ref[P.name][1], P.name


def test_order_32_has_exceptional_groups():
    flags = {P.name: is_exceptional(P) for P in corpus_groups("p2_5")}
    assert sorted(g for g, f in flags.items() if f) == ["32_10", "32_14"]


def test_natural_key():
    assert sorted(["32_10", "32_9", "32_100"], key=natural_key) == ["32_9", "32_10", "32_100"]
