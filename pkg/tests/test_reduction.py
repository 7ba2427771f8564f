import pytest

from siltgeo import algebra as al
from siltgeo import cpx2
from siltgeo import reduction as rd
from siltgeo import repmod as rm
from siltgeo.errors import NotInWU

from _support import a4, a4_context, a4_u, algebra


@pytest.fixture(scope="module")
def red():
    return a4_context().red


def test_a4_reduced_algebra(red):
    assert red.b.dim == 3
    q = red.b_quiver()
    assert q is not None and q.n == 2
    assert [(s, t) for _, s, t in q.arrows] == [(0, 1)]
    assert red.end_dim - red.ideal_dim == red.b.dim


def test_a4_m_modules(red):
    m1, m2 = rd.m_module(red, 0), rd.m_module(red, 1)
    assert m1.dimvec == (0, 1)
    assert m2.dimvec == (1, 1)
    b = red.b
    assert rm.is_isomorphic(m1, rm.simple(b, 1))
    assert rm.is_isomorphic(m2, rm.projective(b, 0))


def test_m_module_index_check(red):
    with pytest.raises(IndexError):
        rd.m_module(red, 2)


def test_a4_pi(red):
    assert rd.pi(red, [0, 1, 0, -1]) == [1, -1]
    assert rd.pi(red, [0, 1, 0, 0]) == [1, 0]
    for x in a4_u():
        assert rd.pi(red, list(x.g_vector)) == [0, 0]


def test_a4_phi(red):
    a = a4()
    b = red.b
    assert rd.phi(red, rm.zero_module(a)).dim == 0
    x3 = rm.simple(a, 1)
    x4 = rm.projective(a, 2)
    assert rm.is_isomorphic(rd.phi(red, x3), rm.simple(b, 0))
    assert rm.is_isomorphic(rd.phi(red, x4), rm.simple(b, 1))
    w2 = rm.projective(a, 1)
    assert rm.is_isomorphic(rd.phi(red, w2), rm.projective(b, 0))


def test_phi_rejects_modules_outside_perpendicular_category(red):
    with pytest.raises(NotInWU):
        rd.phi(red, cpx2.h0(a4_u()[1]))
    assert not rd.w_u_membership(red, rm.simple(a4(), 0))
    assert rd.w_u_membership(red, rm.simple(a4(), 1))


def test_phi_is_additive(red):
    a = a4()
    mods = [rm.simple(a, 1), rm.projective(a, 2)]
    total = rd.phi(red, rm.direct_sum(mods))
    assert total.dimvec == tuple(x + y for x, y in zip(*(rd.phi(red, m).dimvec for m in mods)))


def test_silting_u_gives_zero_algebra():
    a = algebra("A3")
    full = [cpx2.TwoTerm.stalk(a, [i]) for i in range(3)]
    ctx = rd.reduce(a, full)
    assert ctx.b is None and ctx.rank == 0
    assert rd.pi(ctx, [1, 2, 3]) == []
    assert rd.m_module(ctx, 0) is None


def test_zero_u_gives_the_algebra_back():
    for name in ("A3", "A3_rad2"):
        a = algebra(name)
        ctx = rd.reduce(a, [])
        assert ctx.m == 0
        assert ctx.b.dim == a.dim and ctx.b.n == a.n
        theta = [3, -1, 2]
        assert rd.pi(ctx, theta) == theta
        assert al.jacobson_radical(ctx.b).dim == al.jacobson_radical(a).dim


def test_b_of_zero_u_is_path_algebra_when_a_is():
    a = algebra("A3")
    q = rd.reduce(a, []).b_quiver()
    assert q is not None and q.n == 3 and len(q.arrows) == 2


def test_reduce_accepts_a_complex():
    a = a4()
    ctx = rd.reduce(a, cpx2.as_complex(a4_u(), a))
    assert ctx.m == 2 and ctx.b.dim == 3


def test_report(red):
    rep = rd.b_report(red)
    assert rep["dim"] == 3
    assert [m["dimvec"] for m in rep["M"]] == [[0, 1], [1, 1]]
    assert len(rep["pi"]) == 4 and all(len(r) == 2 for r in rep["pi"])
