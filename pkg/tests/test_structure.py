import itertools

import pytest

from pgmindeg.builtins import abelian, cyclic, heisenberg
from pgmindeg.dense import DenseGroup
from pgmindeg.pcgroup import PresentationError, consistency_check, multiply
from pgmindeg.structure import (Subgroup, abelian_invariants, center, closure,
                                conjugacy_class, contains, derived_subgroup, elements, frattini,
                                intersect, is_normal, normal_core, normal_subgroups, quotient,
                                socle, subgroup_classes)

from conftest import corpus_groups


def test_heisenberg_closures():
    H = heisenberg(3)
    assert closure(H, [(1, 0, 0), (0, 1, 0)]).order == 27
    Z = closure(H, [(0, 0, 1)])
    assert Z.order == 3 and Z == center(H)


def test_heisenberg_subgroup_counts():
    H = heisenberg(3)
    assert len(normal_subgroups(H)) == 7
    # 1, Z, four normal subgroups of order 9, G; and the non-normal order-3
    # subgroups fall into 4 classes of size 3, which gives 11 classes
    assert len(subgroup_classes(H)) == 11


def test_c9_socle():
    assert socle(cyclic(3, 2)) == Subgroup(((0, 1),), 3)


def test_quotient_of_heisenberg_by_center():
    H = heisenberg(3)
    Q = quotient(H, center(H))
    assert consistency_check(Q.pres)
    assert abelian_invariants(Q.pres) == [1, 1]
    assert abelian_invariants(abelian(5, [2, 1])) == [2, 1]


def test_quotient_rejects_non_normal():
    H = heisenberg(3)
    with pytest.raises(PresentationError):
        quotient(H, closure(H, [(1, 0, 0)]))


def test_klein_four():
    V = abelian(2, [1, 1])
    assert len(normal_subgroups(V)) == 5
    C = closure(V, [(1, 0)])
    assert normal_core(V, C) == C


def test_core_in_d8_is_trivial():
    # the dihedral group of order 8 is SmallGroup(8, 3)
    D8 = corpus_groups("p2_3")[2]
    refl = [H for H, size in subgroup_classes(D8) if H.order == 2 and size == 2]
    assert len(refl) == 2
    for H in refl:
        assert normal_core(D8, H).order == 1


GROUPS = [P for c in ("p2_3", "p2_4", "p3_3", "p3_4", "p5_3") for P in corpus_groups(c)]


@pytest.mark.parametrize("P", GROUPS, ids=lambda P: P.name)
def test_canonical_forms_and_lagrange(P):
    for H, size in subgroup_classes(P):
        assert P.order % H.order == 0
        assert len(set(elements(P, H))) == H.order
        assert closure(P, elements(P, H)) == H
        assert P.order % size == 0
        core = normal_core(P, H)
        assert is_normal(P, core) and all(contains(P, H, x) for x in core.gens)
    for N in normal_subgroups(P):
        Q = quotient(P, N)
        assert Q.pres.order * N.order == P.order
        assert consistency_check(Q.pres)


@pytest.mark.parametrize("P", GROUPS, ids=lambda P: P.name)
def test_core_is_maximal(P):
    normals = normal_subgroups(P)
    for H, _ in subgroup_classes(P):
        core = normal_core(P, H)
        inside = [N for N in normals if all(contains(P, H, x) for x in N.gens)]
        assert max(inside, key=lambda N: N.order) == core
        assert all(all(contains(P, core, x) for x in N.gens) for N in inside)


@pytest.mark.parametrize("P", GROUPS + list(corpus_groups("p2_5")), ids=lambda P: P.name)
def test_dense_agrees_with_reference(P):
    D = DenseGroup(P)
    ref = subgroup_classes(P)
    lat = D.lattice()
    assert len(lat) == len(ref)
    dense_parts = sorted(sorted(D.to_subgroup(m).gens for m in c.members) for c in lat)
    ref_parts = sorted(sorted(K.gens for K in conjugacy_class(P, H)) for H, _ in ref)
    assert dense_parts == ref_parts
    for c in lat:
        assert D.to_subgroup(c.core) == normal_core(P, D.to_subgroup(c.mask))
    assert sorted(D.to_subgroup(m).gens for m in D.normal_subgroup_masks()) == \
        sorted(N.gens for N in normal_subgroups(P))
    assert D.to_subgroup(D.center()) == center(P)
    assert D.to_subgroup(D.socle()) == socle(P)
    assert D.to_subgroup(D.frattini()) == frattini(P)
    assert D.to_subgroup(D.derived()) == derived_subgroup(P)


def test_dense_multiplication_table():
    for P in corpus_groups("p3_3"):
        D = DenseGroup(P)
        for a, b in itertools.product(range(D.order), repeat=2):
            assert D.element(int(D.mul[a, b])) == multiply(P, D.element(a), D.element(b))


def test_intersection():
    H = heisenberg(3)
    A = closure(H, [(1, 0, 0), (0, 0, 1)])
    B = closure(H, [(0, 1, 0), (0, 0, 1)])
    assert intersect(H, A, B) == center(H)
