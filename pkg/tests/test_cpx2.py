import random

import pytest

from siltgeo import algebra as al
from siltgeo import cpx2
from siltgeo import repmod as rm
from siltgeo.errors import NotSilting

from _support import a4, a4_u, algebra, random_module


def arrow_complex(a, src, dst, word):
    """P(src) -> P(dst) given by the path ``word``; vertices 1-based."""
    return cpx2.TwoTerm(a, [src - 1], [dst - 1], [[cpx2._sparse(al.path_algebra_element(a, word))]])


def stalk(a, *verts, shift=0):
    return cpx2.TwoTerm.stalk(a, [v - 1 for v in verts], shift)


def test_h0_examples():
    a = a4()
    assert cpx2.h0(stalk(a, 3)).dimvec == (0, 0, 1, 1)
    u1, _ = a4_u()
    assert cpx2.h0(u1).dimvec == (0, 0, 1, 0)
    t3 = arrow_complex(a, 2, 1, "a1")
    assert cpx2.h0(t3).dimvec == (1, 0, 0, 0)


def test_hminus1_nu_examples():
    a = a4()
    assert cpx2.hminus1_nu(stalk(a, 2)).dim == 0
    u1, _ = a4_u()
    assert cpx2.hminus1_nu(u1).dimvec == (0, 0, 0, 1)
    t4 = arrow_complex(a, 4, 1, "a1*a2*a3")
    assert cpx2.hminus1_nu(t4).dimvec == (0, 1, 1, 1)


def test_hom_k_examples():
    a = a4()
    u1, u2 = a4_u()
    assert cpx2.hom_k(u1, u1).dim >= 1
    assert cpx2.hom_k(u1, u2, 1).dim == 0
    assert cpx2.hom_k(u2, u1, 1).dim == 0


def test_hom_k_from_projective_matches_module_hom():
    a = algebra("A3_rad2")
    rng = random.Random(11)
    for _ in range(8):
        m = random_module(a, rng)
        x = cpx2.TwoTerm.from_module(m)
        assert cpx2.h0(x).dimvec == m.dimvec
        for i in range(a.n):
            p = cpx2.TwoTerm.stalk(a, [i])
            assert cpx2.hom_k(p, x).dim == rm.hom_dim(rm.projective(a, i), m) == m.dimvec[i]


def test_presilting_and_silting():
    a = a4()
    assert cpx2.is_silting(stalk(a, 1, 2, 3, 4))
    u = cpx2.as_complex(a4_u(), a)
    assert cpx2.is_presilting(u) and not cpx2.is_silting(u)
    bad = cpx2.direct_sum([stalk(a, 1), stalk(a, 1, shift=1)], a)
    assert not cpx2.is_presilting(bad)


def test_indec_summands_of_regular():
    a = algebra("square")
    parts = cpx2.indec_summands(cpx2.TwoTerm.stalk(a, [0, 1, 2, 3, 0]))
    assert sorted(k for _, k in parts) == [1, 1, 1, 2]


def test_min_left_approx_examples():
    a = a4()
    us = a4_u()
    ap = cpx2.min_left_approx(stalk(a, 2), us)
    assert ap.mult == [0, 1]
    ap = cpx2.min_left_approx(stalk(a, 3), us)
    assert ap.mult == [1, 1]
    ap = cpx2.min_left_approx(us[1], us)
    assert ap.mult == [0, 1]


def test_mutations_over_a2():
    a = algebra("A2")
    regular = [stalk(a, 1), stalk(a, 2)]
    left_at_p2 = cpx2.mutate(regular, 1, "left")
    assert sorted(x.g_vector for x in left_at_p2) == sorted([(1, 0), (1, -1)])
    left_at_p1 = cpx2.mutate(regular, 0, "left")
    assert sorted(x.g_vector for x in left_at_p1) == sorted([(-1, 0), (0, 1)])


def test_right_then_left_mutation_is_identity():
    a = algebra("A3")
    shifted = [cpx2.TwoTerm.stalk(a, [i], 1) for i in range(3)]
    for j in range(3):
        there = cpx2.mutate(shifted, j, "right")
        back = cpx2.mutate(there, j, "left")
        assert cpx2.silting_key(back) == cpx2.silting_key(shifted)


def test_mutate_rejects_non_silting():
    a = a4()
    with pytest.raises(NotSilting):
        cpx2.mutate(a4_u(), 0)


def test_bongartz_completion():
    a = a4()
    full = [stalk(a, i) for i in range(1, 5)]
    assert cpx2.silting_key(cpx2.bongartz_completion(full, a)) == cpx2.silting_key(full)
    s = cpx2.bongartz_completion(a4_u(), a)
    assert [x.g_vector for x in s[:2]] == [x.g_vector for x in a4_u()]
    assert sorted(x.g_vector for x in s[2:]) == sorted([(0, 1, 0, 0), (0, 0, 1, 0)])
    assert cpx2.silting_key(cpx2.bongartz_completion([], a)) == cpx2.silting_key(full)


def test_minimal_completion():
    a = a4()
    full = [stalk(a, i) for i in range(1, 5)]
    assert cpx2.silting_key(cpx2.minimal_completion(full, owner=a)) == cpx2.silting_key(full)
    t = cpx2.minimal_completion(a4_u(), owner=a)
    expected = [arrow_complex(a, 2, 1, "a1").g_vector, arrow_complex(a, 4, 1, "a1*a2*a3").g_vector]
    assert sorted(x.g_vector for x in t[2:]) == sorted(expected)
    shifted = [cpx2.TwoTerm.stalk(a, [i], 1) for i in range(4)]
    assert cpx2.silting_key(cpx2.minimal_completion([], owner=a)) == cpx2.silting_key(shifted)


def test_smc_of_regular_is_simples():
    a = a4()
    smc = cpx2.smc_of_silting([stalk(a, i) for i in range(1, 5)])
    assert [(s, m.dimvec) for s, m in smc.parts] == \
        [(1, tuple(1 if k == i else 0 for k in range(4))) for i in range(4)]


def test_smc_of_completions():
    a = a4()
    s = cpx2.bongartz_completion(a4_u(), a)
    t = cpx2.minimal_completion(a4_u(), s=s, owner=a)
    assert cpx2.smc_of_silting(s).signed_dimvecs() == [
        (-1, (0, 0, 0, 1)), (1, (1, 0, 0, 0)), (1, (0, 1, 0, 0)), (1, (0, 0, 1, 1))]
    assert cpx2.smc_of_silting(t).signed_dimvecs() == [
        (1, (0, 0, 1, 0)), (1, (1, 1, 1, 1)), (-1, (0, 1, 0, 0)), (-1, (0, 0, 1, 1))]
