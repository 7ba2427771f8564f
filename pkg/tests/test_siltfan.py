from collections import Counter

import pytest

from siltgeo import algebra as al
from siltgeo import cpx2
from siltgeo import repmod as rm
from siltgeo import siltfan as sf
from siltgeo.cones import RatCone, common_refinement, fan_check
from siltgeo.errors import IncompleteAtlas, NotLocated

from _support import a4_u, algebra, atlas


def label_paths(at):
    succ = {}
    for arr in at.arrows:
        succ.setdefault(arr.src, []).append(arr)
    out = []

    def walk(v, acc):
        if v not in succ:
            out.append(acc)
            return
        for arr in succ[v]:
            walk(arr.dst, acc + [arr.label.dimvec])
    walk(at.find([cpx2.TwoTerm.stalk(at.algebra, [i]) for i in range(at.algebra.n)]), [])
    return sorted(out)


def test_a2_pentagon():
    at = atlas("A2")
    assert len(at) == 5 and at.complete
    assert len(at.arrows) == 5
    assert label_paths(at) == sorted([[(0, 1), (1, 1), (1, 0)], [(1, 0), (0, 1)]])


def test_semisimple_has_square_exchange_graph():
    at = sf.enumerate_siltings(al.product_algebra(2))
    assert len(at) == 4 and at.complete
    assert len(at.arrows) == 4


def test_a4_every_vertex_has_four_arrows():
    at = atlas("A4")
    assert at.complete and len(at) == 42
    deg = Counter()
    for arr in at.arrows:
        deg[arr.src] += 1
        deg[arr.dst] += 1
    assert all(deg[v] == 4 for v in range(len(at)))


@pytest.mark.parametrize("name", ["A3", "A3_rad2", "square"])
def test_arrow_labels_follow_semibrick_signs(name):
    at = atlas(name)
    n = at.algebra.n
    out_deg, in_deg = Counter(), Counter()
    for arr in at.arrows:
        out_deg[arr.src] += 1
        in_deg[arr.dst] += 1
        sign, brick = at.smc[arr.src].parts[arr.index]
        assert sign > 0 and rm.is_isomorphic(brick, arr.label)
    for v in range(len(at)):
        signs = [s for s, _ in at.smc[v].parts]
        assert out_deg[v] == signs.count(1) and in_deg[v] == signs.count(-1)
        assert out_deg[v] + in_deg[v] == n


def test_known_silting_counts():
    assert len(atlas("A3")) == 14
    assert len(atlas("A3_rad2")) == 12


def test_cap_marks_incomplete():
    at = sf.enumerate_siltings(algebra("A3"), cap=3)
    assert not at.complete
    with pytest.raises(IncompleteAtlas):
        at.require_complete()


def test_gfan_is_complete():
    for name in ("A2", "A3", "A4"):
        assert fan_check(sf.gfan(atlas(name))) == (True, True)
    fan = sf.gfan(atlas("A2"))
    assert len(fan) == 11


def test_gfan_of_one_vertex():
    at = sf.enumerate_siltings(al.product_algebra(1))
    fan = sf.gfan(at)
    assert fan_check(fan) == (True, True)
    assert fan.keys() == {RatCone.from_rays([[1]]).key, RatCone.from_rays([[-1]]).key, RatCone.origin(1).key}


def test_cone_locate():
    at = atlas("A4")
    assert [x.g_vector for x in sf.cone_locate(at, [1, 0, 0, 0])] == [(1, 0, 0, 0)]
    found = sf.cone_locate(at, [1, 0, 1, -1])
    assert sorted(x.g_vector for x in found) == sorted(x.g_vector for x in a4_u())
    a2 = atlas("A2")
    assert sorted(x.g_vector for x in sf.cone_locate(a2, [1, 1])) == [(0, 1), (1, 0)]
    assert sf.cone_locate(a2, [0, 0]) == []


def test_cone_locate_incomplete_raises():
    at = sf.enumerate_siltings(algebra("A3"), cap=1)
    with pytest.raises(NotLocated):
        sf.cone_locate(at, [-1, -1, -1])


def test_triple_in_positive_chamber():
    at = atlas("A3")
    m = rm.direct_sum([rm.projective(at.algebra, 1), rm.simple(at.algebra, 0)])
    tr = sf.torsion_triple(at, [2, 1, 3], m)
    assert tr.dims() == (m.dim, 0, 0)


def test_triples_over_a2():
    at = atlas("A2")
    a = at.algebra
    p1 = rm.projective(a, 0)
    tr = sf.torsion_triple(at, [1, -1], p1)
    assert tr.torsion_free.dim == 0
    assert tr.semistable.dimvec == (1, 1)
    l2 = rm.simple(a, 1)
    tr = sf.torsion_triple(at, [1, -1], l2)
    assert tr.torsion_free.dimvec == (0, 1)
    assert tr.dims() == (0, 0, 1)


def test_walls_over_a2():
    at = atlas("A2")
    a = at.algebra
    [ray] = sf.wall(at, rm.projective(a, 0))
    assert ray.key == RatCone.from_rays([[1, -1]]).key
    [line] = sf.wall(at, rm.simple(a, 0))
    assert line.dim == 1 and line.lineality.dim == 1 and line.contains([0, 1])
    assert sf.wall(at, rm.zero_module(a))[0].dim == 2


def test_mtf_fans_over_a2():
    at = atlas("A2")
    a = at.algebra
    zero = sf.mtf_fan(at, rm.zero_module(a))
    assert len(zero.maximal()) == 1 and zero.maximal()[0].lineality.dim == 2
    halves = sf.mtf_fan(at, rm.simple(a, 1)).maximal()
    assert sorted(c.key for c in halves) == sorted(
        [RatCone.from_inequalities([[0, 1]]).key, RatCone.from_inequalities([[0, -1]]).key])
    three = sf.mtf_fan(at, rm.projective(a, 0))
    assert len(three.maximal()) == 3
    rays = {c.rays[0] for c in three.fan.cones if c.dim == 1}
    assert rays == {(0, 1), (-1, 0), (1, -1)}


def test_mtf_refinement_of_direct_sum():
    at = atlas("A2")
    a = at.algebra
    f1 = sf.mtf_fan(at, rm.simple(a, 1)).fan
    f2 = sf.mtf_fan(at, rm.projective(a, 0)).fan
    both = sf.mtf_fan(at, rm.direct_sum([rm.simple(a, 1), rm.projective(a, 0)])).fan
    assert both == common_refinement(f1, f2)


def test_dot_output():
    text = sf.to_dot(atlas("A2"))
    assert text.startswith("digraph")
    assert text.count("->") == 5
    assert "(1,1)" in text


def test_atlas_json_is_stable():
    at = atlas("A2")
    js = at.to_json()
    assert js["complete"] and len(js["siltings"]) == 5 and len(js["arrows"]) == 5
    assert js == sf.enumerate_siltings(algebra("A2")).to_json()
