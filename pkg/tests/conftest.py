from fractions import Fraction as F

import pytest

from probopp.events import EventContext, Family

# the three single-event contexts: independent, S implies P, S implies not P
CONTEXTS = {
    "independent": (),
    "S->P": ("!S | P",),
    "S->!P": ("!S | !P",),
}

SWEEP = [F(51, 100), F(3, 5), F(2, 3), F(3, 4), F(9, 10), F(1)]


def context(kind: str) -> EventContext:
    return EventContext.of("P", "S", constraints=CONTEXTS[kind])


def ps(kind: str = "independent"):
    return context(kind).conditional("P", "S")


@pytest.fixture
def ctx():
    return context("independent")


@pytest.fixture
def pair():
    """The complementary pair (E|H, !E|H) over independent E, H."""
    c = EventContext.of("E", "H")
    return Family.of(c.conditional("E", "H"), c.conditional("!E", "H"))


@pytest.fixture
def e_given_not_e():
    c = EventContext.of("E")
    return Family.of(c.conditional("E", "!E"))
