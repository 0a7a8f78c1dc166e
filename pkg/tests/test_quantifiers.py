import itertools
from fractions import Fraction as F

import pytest

from probopp.coherence import ExactPi, Grid, LambdaLP, UnsupportedCellError, check_coherence, pi_equal
from probopp.events import EventContext, Family, SingleCase
from probopp.oppositions import hexagon_relations, verify_hexagon, verify_square
from probopp.quantifiers import (
    Threshold,
    basic_hexagon,
    basic_square,
    cross_threshold,
    de_morgan_square,
    degenerate_report,
    mean_hexagon,
    mean_regions,
    mean_tripartition,
    no_cube_check,
    table_regions,
    threshold_tripartition,
)
from probopp.regions import box, complement, contains_point, cylinder, point, region_equal, union
from probopp.sentences import Sentence, is_subaltern, relation_witness_region

from conftest import SWEEP, context, ps


def iv(lo, hi, lc=True, hc=True):
    return (F(lo), lc, F(hi), hc)


def independent_family(n):
    ctx = EventContext.of(*[f"P{i}" for i in range(n)], "S")
    return Family(tuple(ctx.conditional(f"P{i}", "S") for i in range(n)), independent=True)


@pytest.mark.parametrize("bad", [F(1, 2), F(2, 5), F(11, 10), 0])
def test_threshold_bounds(bad):
    with pytest.raises(ValueError):
        Threshold(bad)
    with pytest.raises(ValueError):
        basic_square(bad, ps())


def test_threshold_refuses_float():
    with pytest.raises(TypeError):
        Threshold(0.75)


def test_square_regions_at_three_quarters():
    sq = basic_square(F(3, 4), ps())
    want = [box([iv(F(3, 4), 1)]), box([iv(0, F(1, 4))]), box([iv(F(1, 4), 1, lc=False)]), box([iv(0, F(3, 4), hc=False)])]
    for s, w in zip(sq, want):
        assert region_equal(s.region, w)
    assert [s.label for s in sq] == ["A(3/4)", "E(3/4)", "I(3/4)", "O(3/4)"]
    report = degenerate_report(F(3, 4), ps())
    assert report.case is SingleCase.CaseI and set(report.parts.values()) == {"region"}
    assert report.discrepancies == [] and report.strengthened == {}


def test_traditional_square():
    sq = basic_square(1, ps())
    for s, w in zip(sq, [point([1]), point([0]), box([iv(0, 1, lc=False)]), box([iv(0, 1, hc=False)])]):
        assert region_equal(s.region, w)
    assert verify_square(sq).ok


@pytest.mark.parametrize("x", SWEEP)
def test_contradictory_structure_of_table(x):
    t = table_regions(x)
    assert region_equal(t["O"], complement(t["A"]))
    assert region_equal(t["I"], complement(t["E"]))
    assert region_equal(t["U"], union(t["A"], t["E"]))
    assert region_equal(t["Y"], complement(t["U"]))


@pytest.mark.parametrize("x", SWEEP)
def test_dual_phrasing(x):
    c = context("independent")
    fam = Family.of(c.conditional("P", "S"), c.conditional("!P", "S"))
    lifted_dual = box([iv(0, 1), iv(x, 1)])
    lifted = box([iv(0, 1 - x), iv(0, 1)])
    assert pi_equal(fam, lifted_dual, lifted) is True


def test_degenerate_case_two():
    for x in SWEEP:
        r = degenerate_report(x, ps("S->P"))
        assert r.case is SingleCase.CaseII
        assert r.parts == {"A": "{1}", "E": "empty", "I": "{1}", "O": "empty"}
        assert r.discrepancies == []
        assert all(r.strengthened.values())


def test_degenerate_case_three_follows_definitions():
    for x in SWEEP:
        r = degenerate_report(x, ps("S->!P"))
        assert r.case is SingleCase.CaseIII
        assert r.parts == {"A": "empty", "E": "{0}", "I": "empty", "O": "{0}"}
        assert "E" in r.discrepancies
        assert all(r.strengthened.values())


def test_cross_threshold_examples():
    assert all(cross_threshold(F(9, 10), F(3, 5), ps()).values())
    assert all(cross_threshold(1, F(3, 4), ps()).values())
    with pytest.raises(ValueError):
        cross_threshold(F(3, 4), F(3, 4), ps())
    with pytest.raises(ValueError):
        cross_threshold(F(3, 5), F(9, 10), ps())


def test_cross_threshold_is_not_symmetric():
    # the reverse direction fails for the independent event
    hi, lo = basic_square(F(9, 10), ps()), basic_square(F(3, 5), ps())
    assert is_subaltern(lo.a, hi.a) is False


def test_basic_hexagon_examples():
    h = basic_hexagon(F(3, 4), ps())
    assert verify_hexagon(h).ok and hexagon_relations(h).ok
    assert region_equal(h.u.region, union(box([iv(0, F(1, 4))]), box([iv(F(3, 4), 1)])))
    assert [s.label for s in h] == [f"{k}(3/4)" for k in "AEIOUY"]
    tight = basic_hexagon(F(51, 100), ps())
    assert region_equal(tight.y.region, box([iv(F(49, 100), F(51, 100), False, False)]))
    assert contains_point(tight.y.region, [F(1, 2)])
    assert verify_hexagon(tight, Grid(F(1, 2))).ok


def test_mean_tripartition():
    assert all(region_equal(a, b) for a, b in zip(mean_tripartition(1, F(3, 4)).parts, threshold_tripartition(F(3, 4)).parts))
    b1 = mean_tripartition(2, F(3, 4)).d1
    assert contains_point(b1, [F(9, 10), F(7, 10)])
    for n in (1, 2, 3):
        for x in SWEEP:
            assert mean_tripartition(n, x).check() is True
    with pytest.raises(ValueError):
        mean_tripartition(0, F(3, 4))


def test_mean_regions_by_sum_oracle():
    regs = mean_regions(2, F(2, 3))
    for q in itertools.product([F(k, 6) for k in range(7)], repeat=2):
        m = sum(q) / 2
        assert contains_point(regs["A"], q) == (m >= F(2, 3))
        assert contains_point(regs["Y"], q) == (F(1, 3) < m < F(2, 3))
        assert contains_point(regs["O"], q) == (m < F(2, 3))


def test_mean_hexagons():
    assert verify_hexagon(mean_hexagon(2, F(3, 4), independent_family(2))).ok
    assert verify_hexagon(mean_hexagon(3, F(2, 3), independent_family(3))).ok
    ctx = EventContext.of("P", "Q", "S")
    plain = Family.of(ctx.conditional("P", "S"), ctx.conditional("Q", "S"))
    with pytest.raises(UnsupportedCellError):
        mean_hexagon(2, F(3, 4), plain, LambdaLP())
    with pytest.raises(ValueError):
        mean_hexagon(3, F(3, 4), independent_family(2))


def test_mean_hexagon_on_grid():
    h = mean_hexagon(2, F(3, 4), independent_family(2), Grid(F(1, 4)))
    assert verify_hexagon(h, ExactPi()).ok


def test_de_morgan_square(ctx):
    sq = de_morgan_square(ctx)
    assert sq.labels == ("a", "e", "i", "o")
    assert str(sq.family.events[0]) == "!P | !S"
    assert verify_square(sq).ok
    everything_s = EventContext.of("P", "S", constraints=["S"])
    with pytest.raises(ValueError):
        de_morgan_square(everything_s)
    plain = de_morgan_square(ctx, x=1)
    assert all(region_equal(a.region, b.region) for a, b in zip(plain, sq))
    assert de_morgan_square(ctx, x=F(3, 4)).labels == ("a(3/4)", "e(3/4)", "i(3/4)", "o(3/4)")


def test_no_cube():
    report = no_cube_check()
    assert report.ok and report.grid_coherent
    assert len(report.pairs) == 16
    c = EventContext.of("P", "S")
    fam = Family.of(c.conditional("P", "S"), c.conditional("!P", "!S"), independent=True)
    for (ku, kl), rels in report.pairs.items():
        assert len(rels) == 5
        for verdict, w in rels.values():
            assert verdict is False and check_coherence(fam, w)


def test_no_cube_named_witnesses():
    t = table_regions(1)
    A, a, e, I, o = (cylinder(t["A"], 2, 0), cylinder(t["A"], 2, 1), cylinder(t["E"], 2, 1),
                     cylinder(t["I"], 2, 0), cylinder(t["O"], 2, 1))
    assert contains_point(A, (1, 0)) and contains_point(e, (1, 0))
    assert contains_point(A, (1, 0)) and not contains_point(a, (1, 0))
    assert not contains_point(I, (0, 1)) and not contains_point(o, (0, 1))


def test_no_cube_witness_regions():
    report = no_cube_check()
    t = table_regions(1)
    c = EventContext.of("P", "S")
    fam = Family.of(c.conditional("P", "S"), c.conditional("!P", "!S"), independent=True)
    s_A = Sentence(fam, cylinder(t["A"], 2, 0))
    s_e = Sentence(fam, cylinder(t["E"], 2, 1))
    _, w = report.pairs[("A", "e")]["contrary"]
    assert contains_point(relation_witness_region("contrary", s_A, s_e), w)
