import pytest

from lrbg.semigroup import FiniteSemigroup


@pytest.fixture
def appendix_semigroup() -> FiniteSemigroup:
    """The 4-element monoid {x, s, y, z}: an LRBG that is not strict.

    x is the unit, G_x = {x, s} is a copy of C2, and left multiplication
    by s swaps the absorbing elements y and z.
    """
    labels = ["x", "s", "y", "z"]
    X, S, Y, Z = range(4)
    table = [
        [X, S, Y, Z],
        [S, X, Z, Y],
        [Y, Y, Y, Y],
        [Z, Z, Z, Z],
    ]
    return FiniteSemigroup(labels, table, X, name="A6")


@pytest.fixture
def five_element_lrbag() -> FiniteSemigroup:
    """A 5-element LRBaG whose algebra has an exotic CSoPOI.

    Unit 1 and two C2 fibers {l+, l-}, {r+, r-}; kept as a regression
    fixture for systems that do not come from the section construction.
    """
    labels = ["1", "l+", "l-", "r+", "r-"]
    I, LP, LM, RP, RM = range(5)
    table = [
        [I, LP, LM, RP, RM],
        [LP, LP, LM, LP, LM],
        [LM, LM, LP, LM, LP],
        [RP, RP, RM, RP, RM],
        [RM, RM, RP, RM, RP],
    ]
    return FiniteSemigroup(labels, table, I, name="L5")
