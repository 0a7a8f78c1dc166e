from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from probopp.regions import (
    Cell,
    DimensionMismatch,
    LinearConstraint,
    Region,
    as_rational,
    box,
    complement,
    constraint_region,
    contains_point,
    cylinder,
    empty,
    full,
    grid_points,
    halfspace,
    intersect,
    point,
    region_equal,
    region_is_empty,
    subset,
    union,
    witness,
)

# ---------------------------------------------------------------- strategies

rationals = st.builds(F, st.integers(0, 8), st.just(8))
coeffs = st.integers(-2, 2)
rels = st.sampled_from(["<=", "<", ">=", ">", "="])


@st.composite
def cells(draw, dim):
    cons = []
    for _ in range(draw(st.integers(0, 3))):
        a = {i: draw(coeffs) for i in range(dim)}
        a = {i: v for i, v in a.items() if v}
        if not a:
            continue
        cons.append(LinearConstraint.make(a, draw(rels), draw(st.builds(F, st.integers(-8, 16), st.just(8)))))
    return Cell.make(dim, cons)


@st.composite
def regions(draw, dim=None):
    dim = dim or draw(st.integers(1, 3))
    return Region.from_cells(dim, [draw(cells(dim)) for _ in range(draw(st.integers(0, 3)))])


@st.composite
def region_pairs(draw):
    dim = draw(st.integers(1, 3))
    return draw(regions(dim)), draw(regions(dim))


def members(r, m=4):
    return {q for q in grid_points(r.dim, m) if contains_point(r, q)}


# ---------------------------------------------------------------- constructors


def test_closed_box():
    r = box([(F(3, 4), True, 1, True)])
    assert contains_point(r, [F(3, 4)]) and contains_point(r, [1])
    assert not contains_point(r, [F(74, 100)])


def test_open_box():
    r = box([(F(1, 4), False, F(3, 4), False)])
    assert not contains_point(r, [F(1, 4)]) and not contains_point(r, [F(3, 4)])
    assert contains_point(r, [F(1, 2)])


@pytest.mark.parametrize("iv", [(F(1, 2), True, F(1, 4), True), (0, True, 2, True), (F(1, 2), False, F(1, 2), True)])
def test_malformed_box(iv):
    with pytest.raises(ValueError):
        box([iv])


def test_floats_rejected():
    with pytest.raises(TypeError):
        as_rational(0.5)


def test_normalisation_of_ge():
    c = LinearConstraint.make({0: 2, 1: 2}, ">=", 3)
    assert c.rel == "<=" and dict(c.coeffs) == {0: -1, 1: -1} and c.bound == F(-3, 2)


# ---------------------------------------------------------------- algebra


def test_complement_examples():
    assert region_equal(complement(box([(F(3, 4), True, 1, True)])), box([(0, True, F(3, 4), False)]))
    assert region_is_empty(complement(full(1)))
    got = complement(box([(F(1, 4), False, F(3, 4), False)]))
    want = union(box([(0, True, F(1, 4), True)]), box([(F(3, 4), True, 1, True)]))
    assert region_equal(got, want)


def test_intersection_examples():
    a, e = box([(F(3, 4), True, 1, True)]), box([(0, True, F(1, 4), True)])
    assert region_is_empty(intersect(a, e))
    assert region_equal(intersect(a, full(1)), a)
    got = intersect(box([(0, True, F(1, 2), True)]), box([(F(1, 4), True, 1, True)]))
    assert region_equal(got, box([(F(1, 4), True, F(1, 2), True)]))


def test_union_examples():
    a, e = box([(F(3, 4), True, 1, True)]), box([(0, True, F(1, 4), True)])
    u = union(a, e)
    assert members(u, 8) == {q for q in grid_points(1, 8) if q[0] <= F(1, 4) or q[0] >= F(3, 4)}
    assert region_equal(union(a, empty(1)), a)
    halves = union(box([(0, True, F(1, 2), True)]), box([(F(1, 2), True, 1, True)]))
    assert region_equal(halves, full(1))


def test_emptiness_examples():
    line = halfspace([1, 1], "=", 1)
    assert region_is_empty(intersect(line, box([(0, True, F(3, 10), True)] * 2)))
    mean = halfspace({0: F(1, 2), 1: F(1, 2)}, ">=", F(3, 4), dim=2)
    assert not region_is_empty(mean)
    assert contains_point(mean, witness(mean))
    # grid oracle at step 1/20 agrees the line misses the box
    assert not any(q[0] + q[1] == 1 for q in grid_points(2, 20) if max(q) <= F(3, 10))


def test_strict_emptiness():
    lo_hi = constraint_region(1, [LinearConstraint.make({0: 1}, ">", F(1, 2)), LinearConstraint.make({0: 1}, "<", F(1, 2))])
    assert region_is_empty(lo_hi)
    assert region_is_empty(halfspace([1], "<", 0))
    assert region_is_empty(halfspace([1, 1], ">", 2))
    assert not region_is_empty(halfspace([1, 1], ">", F(19, 10)))


def test_membership_examples():
    assert contains_point(box([(F(3, 4), True, 1, True)]), [1])
    assert not contains_point(box([(0, True, F(3, 4), False)]), [F(3, 4)])
    assert contains_point(halfspace({0: F(1, 2), 1: F(1, 2)}, ">=", F(3, 4), dim=2), [F(9, 10), F(7, 10)])
    with pytest.raises(DimensionMismatch):
        contains_point(full(2), [0])
    with pytest.raises(ValueError):
        contains_point(full(1), [F(3, 2)])


def test_subset_examples():
    assert subset(box([(F(3, 4), True, 1, True)]), box([(F(1, 4), False, 1, True)]))
    assert not subset(full(1), box([(0, True, 1, False)]))
    assert subset(empty(1), box([(F(1, 3), True, F(1, 2), True)]))
    assert not region_equal(box([(0, True, 1, False)]), full(1))


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        intersect(full(1), full(2))
    with pytest.raises(DimensionMismatch):
        union(full(1), full(2))


def test_cylinder_places_coordinates():
    a = box([(F(3, 4), True, 1, True)])
    lifted = cylinder(a, 2, 1)
    assert contains_point(lifted, [0, 1]) and not contains_point(lifted, [1, 0])
    assert region_equal(lifted, box([(0, True, 1, True), (F(3, 4), True, 1, True)]))
    with pytest.raises(DimensionMismatch):
        cylinder(a, 2, 2)


def test_point_region():
    r = point([F(1, 3), 1])
    assert members(r, 3) == {(F(1, 3), F(1))}


# ---------------------------------------------------------------- properties


@settings(max_examples=60, deadline=None)
@given(regions())
def test_involution(r):
    assert region_equal(complement(complement(r)), r)


@settings(max_examples=60, deadline=None)
@given(regions())
def test_complement_is_pointwise(r):
    c = complement(r)
    for q in grid_points(r.dim, 4):
        assert contains_point(c, q) != contains_point(r, q)


@settings(max_examples=40, deadline=None)
@given(region_pairs())
def test_de_morgan(rs):
    r1, r2 = rs
    assert region_equal(complement(union(r1, r2)), intersect(complement(r1), complement(r2)))
    assert region_equal(complement(intersect(r1, r2)), union(complement(r1), complement(r2)))


@settings(max_examples=40, deadline=None)
@given(region_pairs())
def test_monotonicity(rs):
    r1, r2 = rs
    assert subset(intersect(r1, r2), r1)
    assert subset(r1, union(r1, r2))


@settings(max_examples=60, deadline=None)
@given(regions())
def test_emptiness_agrees_with_grid(r):
    hit = any(contains_point(r, q) for q in grid_points(r.dim, 16 if r.dim < 3 else 6))
    if hit:
        assert not region_is_empty(r)
    w = witness(r)
    assert (w is None) == region_is_empty(r)
    if w is not None:
        assert contains_point(r, w)
