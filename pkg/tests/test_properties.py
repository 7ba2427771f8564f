"""Randomized invariants over every algebra in the property set.

Each hypothesis-driven property runs 200 cases per algebra.  Interval
contexts come from a shared cache, exhaustively for the small algebras and
from a fixed sample for A4 and the commutative square.
"""
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from siltgeo import cpx2
from siltgeo import interval as iv
from siltgeo import reduction as rd
from siltgeo import repmod as rm
from siltgeo import siltfan as sf
from siltgeo.cones import fan_check

from _support import (PROPERTY_ALGEBRAS, algebra, atlas, context, context_indices,
                      presilting_lists, random_module)

CASES = 200


def _point(data, cone, denominators=True):
    """Random point of ``cone``: nonnegative ray weights plus free lineality weights."""
    rays, lin = cone.generators()
    n = cone.ambient
    denom = data.draw(st.integers(1, 5)) if denominators else 1
    theta = [Fraction(0)] * n
    for r in rays:
        c = data.draw(st.integers(0, 4))
        theta = [t + Fraction(c, denom) * x for t, x in zip(theta, r)]
    for v in lin:
        c = data.draw(st.integers(-4, 4))
        theta = [t + Fraction(c, denom) * x for t, x in zip(theta, v)]
    return theta


def _draw_context(data, name):
    idx = data.draw(st.sampled_from(context_indices(name)))
    return context(name, idx)


def _dot(u, v):
    return sum(x * y for x, y in zip(u, v))


@pytest.mark.parametrize("name", PROPERTY_ALGEBRAS)
@settings(max_examples=CASES)
@given(data=st.data())
def test_facet_partition_and_pairing(name, data):
    ctx = _draw_context(data, name)
    facets = iv.dcu_inequalities(ctx)
    cone = iv.dcu_cone(ctx)
    # every facet of D(U) carries exactly one (i, eps)
    assert sorted(f.face.key for f in facets) == sorted(f.key for f in cone.facets())
    assert len({f.face.key for f in facets}) == len(facets)
    for f in facets:
        assert f.eps in (1, -1) and 0 <= f.index < ctx.m
        assert rm.is_brick(f.label)
        # inner normal: positive on the cone, zero on the facet
        p = cone.relative_interior_point()
        assert _dot(f.normal, p) > 0
        assert all(_dot(f.normal, r) == 0 for r in f.face.rays)
        for k, x in enumerate(ctx.u):
            want = f.eps * ctx.d[f.index] if k == f.index else 0
            assert rm.euler_pair(list(x.g_vector), f.label) == want


@pytest.mark.parametrize("name", PROPERTY_ALGEBRAS)
@settings(max_examples=CASES)
@given(data=st.data())
def test_closed_interval_is_union_of_compatible_cones(name, data):
    ctx = _draw_context(data, name)
    n = ctx.n
    theta = data.draw(st.lists(st.integers(-3, 3), min_size=n, max_size=n))
    inside = iv.dcu_membership(ctx, theta)
    located = sf.cone_locate(atlas(name), theta)
    compatible = cpx2.is_presilting(cpx2.as_complex(list(ctx.u) + located, ctx.a))
    assert inside == compatible


@pytest.mark.parametrize("name", PROPERTY_ALGEBRAS)
@settings(max_examples=CASES)
@given(data=st.data())
def test_lambda_axioms(name, data):
    ctx = _draw_context(data, name)
    theta = _point(data, iv.dcu_cone(ctx))
    lam, rest = iv.lam(ctx, theta)
    assert [x + y for x, y in zip(lam, rest)] == theta
    lam2, rest2 = iv.lam(ctx, lam)
    assert lam2 == lam and not any(rest2)
    lam3, rest3 = iv.lam(ctx, rest)
    assert not any(lam3) and rest3 == rest
    # lambda lands in C(U), lambda' in the link
    coeffs = iv.lambda_coefficients(ctx, theta)
    assert all(c >= 0 for c in coeffs)
    assert not any(iv.lambda_coefficients(ctx, rest))


@pytest.mark.parametrize("name", PROPERTY_ALGEBRAS)
@settings(max_examples=CASES)
@given(data=st.data())
def test_lambda_integrality(name, data):
    ctx = _draw_context(data, name)
    theta = _point(data, iv.dcu_cone(ctx), denominators=False)
    if any(Fraction(x).denominator != 1 for x in theta):
        # lineality bases may be fractional; scale to an integer point
        lcm = 1
        for x in theta:
            d = Fraction(x).denominator
            lcm = lcm * d // math.gcd(lcm, d)
        theta = [x * lcm for x in theta]
    coeffs = iv.lambda_coefficients(ctx, theta)
    assert all(Fraction(c).denominator == 1 and c >= 0 for c in coeffs)


@pytest.mark.parametrize("name", PROPERTY_ALGEBRAS)
def test_dual_basis_mutation_for_every_presilting(name):
    a = algebra(name)
    checked = 0
    for us in presilting_lists(name):
        red = rd.reduce(a, list(us))
        if red.b is None:
            continue
        for i in range(red.m):
            mi = rd.m_module(red, i)
            for j in range(red.m, red.n):
                b_ji = mi.dimvec[j - red.m]
                assert red.approx_mult[j][i] * red.d[i] == b_ji * red.d[j]
                checked += 1
    assert checked > 0


@pytest.mark.parametrize("name", PROPERTY_ALGEBRAS)
def test_duality_for_every_silting(name):
    at = atlas(name)
    for s, smc in zip(at.siltings, at.smc):
        for i, x in enumerate(s):
            for j, (sign, mod) in enumerate(smc.parts):
                want = smc.d[i] if i == j else 0
                assert sign * rm.euler_pair(list(x.g_vector), mod) == want


def _no_common_facet(at, mtf):
    n = at.algebra.n
    for hull, tr in mtf.classes:
        if hull.dim != n:
            continue
        t_mod, f_mod = tr.torsion, tr.torsion_free
        for facet in hull.facets():
            p = facet.relative_interior_point()
            plus = t_mod.dim and sf.torsion_triple(at, p, t_mod).t.dim != t_mod.dim
            minus = f_mod.dim and sf.torsion_triple(at, p, f_mod).tbar.dim != 0
            if plus and minus:
                return False
    return True


@pytest.mark.parametrize("name", PROPERTY_ALGEBRAS)
def test_mtf_fans_of_random_modules(name):
    at = atlas(name)
    a = at.algebra
    rng = random.Random("mtf-" + name)
    mods = [random_module(a, rng) for _ in range(10)]
    assert sum(1 for m in mods if m.dim) >= 8
    for m in mods:
        mtf = sf.mtf_fan(at, m)
        assert fan_check(mtf.fan) == (True, True)
        assert mtf.fan.close() == mtf.fan
        keys = mtf.fan.keys()
        for hull, _ in mtf.classes:
            assert all(f.key in keys for f in hull.faces())
        assert _no_common_facet(at, mtf)


@pytest.mark.parametrize("name", PROPERTY_ALGEBRAS)
def test_presilting_sum_iff_cone_inside_interval(name):
    lists = presilting_lists(name)
    a = algebra(name)
    for idx in context_indices(name):
        ctx = context(name, idx)
        facets = iv.dcu_inequalities(ctx)
        for vs in lists:
            inside = all(_dot(f.normal, v.g_vector) >= 0 for f in facets for v in vs)
            presilting = cpx2.is_presilting(cpx2.as_complex(list(ctx.u) + list(vs), a))
            assert inside == presilting
