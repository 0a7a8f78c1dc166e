import random
from fractions import Fraction as F

import pytest

from probopp.coherence import ExactPi, Grid, LambdaLP, check_coherence
from probopp.events import EventContext, Family
from probopp.regions import box, contains_point, empty, full, intersect, point, region_equal, union
from probopp.sentences import (
    FamilyMismatch,
    Sentence,
    acceptable,
    counterexample,
    equivalent_t,
    is_contradictory,
    is_contrary,
    is_subaltern,
    is_subcontrary,
    relation_witness_region,
    s_and,
    s_not,
    s_or,
)

from conftest import ps


def iv(lo, hi, lc=True, hc=True):
    return (F(lo), lc, F(hi), hc)


@pytest.fixture
def eh():
    c = EventContext.of("E", "H")
    return Family.of(c.conditional("E", "H"))


@pytest.fixture
def ps_fam():
    return Family.of(ps())


def test_conjunction_of_acceptable_sentences_can_be_unacceptable(eh):
    s1, s2 = Sentence(eh, point([1])), Sentence(eh, point([0]))
    both = s_and(s1, s2)
    assert region_equal(both.region, empty(1))
    assert acceptable(s1) and acceptable(s2)
    assert acceptable(both) is False


def test_double_negation(ps_fam):
    s = Sentence(ps_fam, box([iv(F(1, 4), F(3, 4), lc=False)]))
    assert region_equal(s_not(s_not(s)).region, s.region)
    assert region_equal((~~s).region, s.region)


def test_disjunction_is_u_region(ps_fam):
    a, e = Sentence(ps_fam, box([iv(F(3, 4), 1)])), Sentence(ps_fam, box([iv(0, F(1, 4))]))
    u = s_or(a, e)
    want = union(box([iv(0, F(1, 4))]), box([iv(F(3, 4), 1)]))
    assert region_equal(u.region, want)
    assert region_equal((a | e).region, want) and region_equal((a & e).region, empty(1))


def test_acceptability_examples(eh, e_given_not_e):
    assert acceptable(Sentence(e_given_not_e, point([1]))) is False
    assert acceptable(Sentence(eh, point([1]))) is True
    assert acceptable(Sentence(eh, empty(1))) is False


def test_equivalence_examples(ps_fam):
    r = box([iv(F(1, 5), F(3, 5))])
    assert equivalent_t(Sentence(ps_fam, r), Sentence(ps_fam, intersect(r, full(1))))
    implied = Family.of(ps("S->P"))
    assert equivalent_t(Sentence(implied, point([1])), Sentence(implied, box([iv(F(1, 2), 1)])))
    assert equivalent_t(Sentence(ps_fam, box([iv(0, 1, hc=False)])), Sentence(ps_fam, full(1))) is False


def test_relation_examples(ps_fam, e_given_not_e):
    a1, e1 = Sentence(ps_fam, point([1])), Sentence(ps_fam, point([0]))
    assert is_contrary(a1, e1)
    s = Sentence(ps_fam, box([iv(F(1, 3), F(2, 3))]))
    assert is_contradictory(s, s_not(s))
    s1 = Sentence(e_given_not_e, point([1]))
    for r in (empty(1), full(1), point([0]), box([iv(F(1, 2), 1)])):
        assert is_subaltern(s1, Sentence(e_given_not_e, r))
    a, i = Sentence(ps_fam, box([iv(F(3, 4), 1)])), Sentence(ps_fam, box([iv(F(1, 4), 1, lc=False)]))
    assert is_subaltern(a, i) and not is_subaltern(i, a)


def test_family_mismatch(ctx):
    f1, f2 = Family.of(ctx.conditional("P", "S")), Family.of(ctx.conditional("S", "P"))
    with pytest.raises(FamilyMismatch):
        is_contrary(Sentence(f1, full(1)), Sentence(f2, full(1)))
    with pytest.raises(ValueError):
        Sentence(f1, full(2))


def test_counterexamples_are_coherent_and_in_place(ps_fam):
    i, o = Sentence(ps_fam, box([iv(F(1, 4), 1, lc=False)])), Sentence(ps_fam, box([iv(0, F(3, 4), hc=False)]))
    w = counterexample("contrary", i, o)
    assert contains_point(relation_witness_region("contrary", i, o), w) and check_coherence(ps_fam, w)
    with pytest.raises(ValueError):
        relation_witness_region("contradictory", i, o)


# ---------------------------------------------------------------- properties


def random_sentence(rng, fam):
    cells = []
    for _ in range(rng.randint(0, 2)):
        a, b = sorted(F(rng.randint(0, 8), 8) for _ in range(2))
        lc, hc = (True, True) if a == b else (rng.random() < 0.5, rng.random() < 0.5)
        cells.append(box([(a, lc, b, hc)]))
    r = empty(1)
    for c in cells:
        r = union(r, c)
    return Sentence(fam, r)


FAMILIES = [Family.of(ps()), Family.of(ps("S->P")), Family.of(ps("S->!P"))]


@pytest.mark.parametrize("backend", [ExactPi(), LambdaLP()], ids=lambda b: b.name)
def test_sentence_laws(backend):
    rng = random.Random(3)
    for k in range(120):
        fam = FAMILIES[k % 3]
        s1, s2, s3 = (random_sentence(rng, fam) for _ in range(3))
        if acceptable(s_and(s1, s2), backend):
            assert acceptable(s1, backend) and acceptable(s2, backend)
        assert acceptable(s1, backend) or acceptable(s_not(s1), backend)
        assert is_contradictory(s1, s2, backend) == equivalent_t(s2, s_not(s1), backend)
        assert is_subaltern(s1, s1, backend)
        if is_subaltern(s1, s2, backend) and is_subaltern(s2, s3, backend):
            assert is_subaltern(s1, s3, backend)
        assert is_subaltern(s1, s_or(s1, s2), backend)
        assert is_subaltern(s_and(s1, s2), s1, backend)
        assert is_contradictory(s1, s2, backend) == (
            is_contrary(s1, s2, backend) and is_subcontrary(s1, s2, backend)
        )


def test_equivalence_compatibility_under_implication():
    # under S implies P, [0,1/4] has empty coherent part, so adding it changes nothing
    fam = Family.of(ps("S->P"))
    noise = box([iv(0, F(1, 4))])
    rng = random.Random(9)
    for _ in range(40):
        s1, s2 = random_sentence(rng, fam), random_sentence(rng, fam)
        n1, n2 = Sentence(fam, union(s1.region, noise)), Sentence(fam, union(s2.region, noise))
        for op in (s_and, s_or):
            assert acceptable(op(s1, s2)) == acceptable(op(n1, n2))
        for rel in (is_contrary, is_subcontrary, is_subaltern):
            assert rel(s1, s2) == rel(n1, n2)


def test_grid_backend_is_three_valued(ps_fam):
    a = Sentence(ps_fam, box([iv(F(3, 4), 1)]))
    e = Sentence(ps_fam, box([iv(0, F(1, 4))]))
    assert is_contrary(a, e, Grid(F(1, 4))) is True
    assert is_subaltern(a, e, Grid(F(1, 4))) is False
