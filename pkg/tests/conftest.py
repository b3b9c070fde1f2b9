import pytest

from nimhoff.game import GcnSpec
from nimhoff.sets import all_but, all_positive, finite


def naive_grundy(S, length):
    """Reference DP: plain mex over membership tests, no numpy."""
    values = []
    for x in range(length):
        reach = {values[x - s] for s in range(1, x + 1) if s in S}
        g = 0
        while g in reach:
            g += 1
        values.append(g)
    return values


@pytest.fixture
def mixed_game():
    """GCN(4; N+, {1..7}, N+ minus {4,8})."""
    return GcnSpec(4, (all_positive(), finite(range(1, 8)), all_but([4, 8])))


def mixed_formula(x1, x2, x3):
    return ((x1 // 4) ^ ((x2 % 8) // 4) ^ (x3 // 12)) * 4 + (x1 + x2 + x3) % 4
