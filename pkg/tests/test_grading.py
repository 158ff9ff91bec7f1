import random

import pytest

from heckegrading.abgroup import AbGroup, hom
from heckegrading.coxeter import VGrading, alternating, uniform_v_grading
from heckegrading.diagram import (DotIn, DotOut, Merge, Split, Vertex, compose,
                                  parse_diagram, single, tensor)
from heckegrading.grading import (GradingError, InhomogeneousError, bigrading, degree,
                                  general_grading, original_grading, phi, same_assignment,
                                  specialize, total_degree_hom, universal_lambda)
from heckegrading.relations import build_catalog

from conftest import EXPECTED_RANK, i2, make_pair, make_system
from helpers import random_diagram, vertex_only_diagram

A2, A2R = make_pair("A2")


def deg(d, a):
    return degree(d, a).coordinates()


def test_bigrading_generator_degrees():
    a = bigrading(A2, A2R)
    assert deg(single(DotIn("s")), a) == (1, 0)
    assert deg(single(DotOut("s")), a) == (0, 1)
    assert deg(single(Split("s")), a) == (0, -1)
    assert deg(single(Merge("s")), a) == (-1, 0)
    for m in (2, 3, 4, 6):
        sys_ = i2(m)
        assert deg(single(Vertex("s", "t", m)), bigrading(sys_)) == (0, 0)
    assert a.poly_degree(A2R.alpha["s"]).coordinates() == (1, 1)


def test_universal_lambda_ranks():
    for name, rank in EXPECTED_RANK.items():
        lam, _ = universal_lambda(make_system(name))
        assert lam.free_rank == rank and lam.invariant_factors == ()
    assert universal_lambda(i2(5))[0].free_rank == 3


def test_degree_examples():
    a = bigrading(A2, A2R)
    barbell = compose(single(DotIn("s")), single(DotOut("s")))
    cup = compose(single(DotIn("s")), single(Split("s")))
    cap = compose(single(Merge("s")), single(DotOut("s")))
    assert deg(barbell, a) == (1, 1)
    assert deg(cup, a) == (1, -1)
    assert deg(cap, a) == (-1, 1)
    lam, u = universal_lambda(A2)
    v = degree(single(Vertex("s", "t", 3)), u)
    assert v == lam.gen("g_s") - lam.gen("g_t")


def test_inhomogeneous_box():
    a = bigrading(A2, A2R)
    d = parse_diagram("bottom:\nslice: poly{a_s + a_s^2}")
    with pytest.raises(InhomogeneousError) as exc:
        degree(d, a)
    assert len(exc.value.degrees) == 2
    with pytest.raises(GradingError, match="no degree"):
        degree(parse_diagram("bottom:\nslice: poly{x}"), a)


def test_general_grading_a2_z():
    q, a = general_grading(A2, A2R, uniform_v_grading(A2R))
    assert q.free_rank == 3
    # the bigrading is a specialization along f -> (1,0), g -> (0,1), gamma -> (1,1)
    z2 = AbGroup.free(["a", "b"])
    h = hom(q, z2, {"f_s": [1, 0], "g_s": [0, 1], "f_t": [1, 0], "g_t": [0, 1], "gamma": [1, 1]})
    assert same_assignment(specialize(a, h), bigrading(A2, A2R))


def test_general_grading_trivial_gamma():
    sys_, real = make_pair("A1xA1")
    zero = AbGroup.presented(["c"], [[1]])
    q, a = general_grading(sys_, real, uniform_v_grading(real, zero))
    assert q.free_rank == 2 and q.invariant_factors == ()
    assert a.g["s"] == -a.f["s"]
    assert a.poly_degree(real.alpha["s"]).is_zero()


def test_general_grading_rejects_invalid_v_grading():
    z = AbGroup.free(["gamma"])
    vg = VGrading(z, {"a_s": z.element([1]), "a_t": z.element([2])})
    with pytest.raises(GradingError, match="invalid grading"):
        general_grading(A2, A2R, vg)


def test_specialize_chain():
    lam, u = universal_lambda(A2)
    z2 = AbGroup.free(["a", "b"])
    h = hom(lam, z2, {"f_s": [1, 0], "g_s": [0, 1], "f_t": [1, 0], "g_t": [0, 1]})
    b = specialize(u, h)
    assert b.vertex("s", "t").coordinates() == (0, 0)
    o = specialize(bigrading(A2, A2R), total_degree_hom())
    assert o.f["s"].coordinates() == (1,) and o.split("s").coordinates() == (-1,)
    assert o.merge("t").coordinates() == (-1,) and o.deg_v["a_s"].coordinates() == (2,)
    ident = hom(lam, lam, lam.generators())
    assert same_assignment(specialize(u, ident), u)
    orig = original_grading(A2, A2R)
    assert [x.coordinates() for x in (orig.f["s"], orig.g["s"], orig.deg_v["a_s"])] == [(1,), (1,), (2,)]


@pytest.mark.parametrize("name", ["A2", "B2", "G2", "A3", "A2xA1"])
def test_degree_additivity(name):
    sys_, real = make_pair(name)
    rng = random.Random(hash(name) % 1000)
    assignments = [bigrading(sys_, real), universal_lambda(sys_)[1]]
    basis = list(real.basis)
    for _ in range(40):
        d1 = random_diagram(sys_, rng, basis=basis)
        d2 = random_diagram(sys_, rng, bottom=d1.top, basis=basis)
        d3 = random_diagram(sys_, rng, basis=basis)
        for a in assignments:
            assert degree(compose(d1, d2), a) == degree(d1, a) + degree(d2, a)
            assert degree(tensor(d1, d3), a) == degree(d1, a) + degree(d3, a)


@pytest.mark.parametrize("name", ["A2", "B2", "G2", "A3"])
def test_telescoping_random_vertex_diagrams(name):
    sys_ = make_system(name)
    _, a = universal_lambda(sys_)
    rng = random.Random(11)
    for _ in range(50):
        s, t = rng.choice(list(sys_.finite_pairs()))
        bottom = tuple(rng.choice(sys_.labels) for _ in range(rng.randint(0, 3)))
        word = bottom + alternating(s, t, sys_.mst(s, t))
        d = vertex_only_diagram(sys_, rng, word, rng.randint(1, 6))
        assert degree(d, a) == phi(d.bottom, a) - phi(d.top, a)


def test_telescoping_a3_zamolodchikov_sides():
    sys_, real = make_pair("A3")
    _, a = universal_lambda(sys_)
    zam = [r for r in build_catalog(sys_, real) if r.family == "zamolodchikov"]
    assert zam
    for rel in zam:
        degs = {degree(d, a) for _, d in rel.terms}
        assert degs == {phi(rel.bottom, a) - phi(rel.top, a)}
