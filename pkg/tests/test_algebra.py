import pytest
from hypothesis import given
from hypothesis import strategies as st

from siltgeo import algebra as al
from siltgeo import repmod as rm
from siltgeo.errors import IdealIsWholeAlgebra, InfiniteDimensional, MalformedRelation

from _support import algebra, a4_context


def dual_numbers():
    return al.from_quiver(al.Quiver([1], [("x", 1, 1)], ["x*x"]))


def count_paths_linear(n):
    return n * (n + 1) // 2


def test_linear_a4_dimension_matches_path_count():
    a = algebra("A4")
    assert a.dim == count_paths_linear(4) == 10
    assert a.n == 4


def test_a2_dimension():
    assert algebra("A2").dim == 3


def test_dual_numbers():
    a = dual_numbers()
    assert a.dim == 2 and a.n == 1
    rad = al.jacobson_radical(a)
    assert rad.dim == 1
    x = [0, 0]
    x[a.generators[0]] = 1
    assert rad.contains(x)


def test_relations_cut_dimension():
    assert algebra("A3_rad2").dim == 5
    assert algebra("square").dim == 9


def test_loop_without_relations_is_infinite():
    with pytest.raises(InfiniteDimensional):
        al.from_quiver(al.Quiver([1], [("x", 1, 1)]))


def test_malformed_relation():
    with pytest.raises(MalformedRelation):
        al.from_quiver(al.linear_quiver(3, ["a2*a1"]))
    with pytest.raises(MalformedRelation):
        al.from_quiver(al.linear_quiver(3, ["a1*zz"]))


def test_radical_of_semisimple_and_a2():
    assert al.jacobson_radical(al.product_algebra(2)).dim == 0
    a = algebra("A2")
    rad = al.jacobson_radical(a)
    assert rad.dim == 1
    assert rad.contains(al.path_algebra_element(a, "a1"))


def test_radical_of_path_algebra_is_arrow_ideal():
    a = algebra("A4")
    arrows_ideal = al.ideal_closure(a, [al.path_algebra_element(a, "a%d" % i) for i in (1, 2, 3)])
    assert al.jacobson_radical(a) == arrows_ideal


def test_quotient_by_zero_is_copy():
    a = algebra("A3")
    q, proj = al.quotient_by_ideal(a, [[0] * a.dim])
    assert q.dim == a.dim and q.n == a.n


def test_quotient_by_arrow_is_semisimple():
    a = algebra("A2")
    q, _ = al.quotient_by_ideal(a, [al.path_algebra_element(a, "a1")])
    assert q.dim == 2 and q.n == 2
    assert al.jacobson_radical(q).dim == 0


def test_quotient_by_unit_raises():
    a = algebra("A2")
    with pytest.raises(IdealIsWholeAlgebra):
        al.quotient_by_ideal(a, [a.unit])


def test_primitive_idempotents():
    assert len(al.primitive_idempotents(al.product_algebra(2))) == 2
    a = algebra("A4")
    ids = al.primitive_idempotents(a)
    assert sorted(map(list, ids)) == sorted(a.basis_vector(a.idem_basis[i]) for i in range(4))


def test_reduced_algebra_has_two_vertices_and_is_a2():
    b = a4_context().red.b
    assert b.dim == 3
    assert len(al.primitive_idempotents(b)) == 2
    q = al.quiver_guess(b)
    assert q is not None and q.n == 2 and len(q.arrows) == 1


def test_endomorphism_algebras():
    a = algebra("A4")
    assert rm.endomorphism_algebra(rm.simple(a, 2))[0].dim == 1
    assert rm.endomorphism_algebra(rm.projective(a, 0))[0].dim == 1
    s = rm.simple(a, 1)
    end, homs = rm.endomorphism_algebra(rm.direct_sum([s, s]))
    assert end.dim == 4 and end.n == 2
    assert len(homs) == 4


def test_quiver_guess_rejects_relations():
    assert al.quiver_guess(algebra("A3_rad2")) is None
    assert al.quiver_guess(algebra("A3")) is not None


@pytest.mark.parametrize("name", ["A3_rad2", "square"])
@given(data=st.data())
def test_associativity_and_unit(name, data):
    a = algebra(name)
    coords = st.lists(st.integers(-3, 3), min_size=a.dim, max_size=a.dim)
    x, y, z = data.draw(coords), data.draw(coords), data.draw(coords)
    assert a.mul(a.mul(x, y), z) == a.mul(x, a.mul(y, z))
    assert a.mul(a.unit, x) == x and a.mul(x, a.unit) == x


def test_commutative_square_relation_holds():
    a = algebra("square")
    ab = a.mul(al.path_algebra_element(a, "a"), al.path_algebra_element(a, "b"))
    cd = a.mul(al.path_algebra_element(a, "c"), al.path_algebra_element(a, "d"))
    assert ab == cd and any(ab)
