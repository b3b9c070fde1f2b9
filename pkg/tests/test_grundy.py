import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import naive_grundy, mixed_formula
from nimhoff.config import DEFAULT_DP_CAP
from nimhoff.errors import CoverageError, ResourceCapError, StairViolationError
from nimhoff.game import GcnSpec
from nimhoff.grundy import (
    StairDecomposition,
    StairViolation,
    closed_form_sequences,
    cyclic_nimhoff_grundy,
    detect_periodicity,
    gcn_closed_grundy,
    grundy_sequence,
    mex,
    nim_sum,
    sequence_csv,
    stair_compose,
    stair_csv,
    stair_decompose,
    stair_guarantee,
    sum_grundy,
    verify_lift_identity,
)
from nimhoff.sets import all_but, all_positive, finite, lift_set, parse_set_spec


@pytest.mark.parametrize("values, expected", [(set(), 0), ({0, 1, 2}, 3), ({1, 2, 5}, 0), ([0, 0, 2], 1)])
def test_mex(values, expected):
    assert mex(values) == expected


def test_nim_sum():
    assert nim_sum([]) == 0
    assert nim_sum([12345, 12345]) == 0
    assert nim_sum([1, 2]) == 3
    assert nim_sum([5, 9, 14]) == 2


def test_sum_grundy():
    assert sum_grundy([7]) == 7
    assert sum_grundy([]) == 0
    assert sum_grundy([3, 5]) == 6


@given(st.sets(st.integers(0, 40), max_size=30))
def test_mex_laws(values):
    m = mex(values)
    assert m not in values
    assert all(v in values for v in range(m))


@pytest.mark.parametrize(
    "S, length, expected",
    [
        (all_positive(), 6, [0, 1, 2, 3, 4, 5]),
        (finite([1, 2, 3]), 9, [0, 1, 2, 3, 0, 1, 2, 3, 0]),
        (all_but([4, 8]), 13, [0, 1, 2, 3, 0, 1, 2, 3, 0, 1, 2, 3, 4]),
        (finite([]), 4, [0, 0, 0, 0]),
        (finite([1, 2]), 7, [0, 1, 2, 0, 1, 2, 0]),
    ],
)
def test_grundy_sequence_examples(S, length, expected):
    seq = grundy_sequence(S, length)
    assert list(seq.values) == expected
    assert seq.length == length


@pytest.mark.parametrize(
    "text",
    ["all", "finite:1", "finite:2,3", "finite:1..6", "allbut:1", "allbut:3,5", "allbut:2,7,9",
     "periodic(t=4, prefix=1,3, p=3, r=0,2)", "lift(h=3, finite:2,5)", "finite:"],
)
def test_grundy_sequence_matches_naive_recheck(text):
    S = parse_set_spec(text)
    assert list(grundy_sequence(S, 300).values) == naive_grundy(S, 300)


def test_grundy_sequence_cap(monkeypatch):
    with pytest.raises(ResourceCapError):
        grundy_sequence(all_positive(), DEFAULT_DP_CAP + 1)
    monkeypatch.setenv("NIMHOFF_DP_CAP", "10")
    with pytest.raises(ResourceCapError, match="cap 10"):
        grundy_sequence(all_positive(), 11)
    assert grundy_sequence(all_positive(), 10).length == 10


EXAMPLE_B = [0, 1, 2, 0, 1, 2, 3, 4, 5, 15, 16, 17, 12, 13, 14]


def test_stair_compose_examples():
    assert stair_compose([0, 0, 1, 5, 4], 3) == EXAMPLE_B
    assert stair_compose([3, 1, 4], 1) == [3, 1, 4]
    assert stair_compose([0, 0, 0], 2) == [0, 1, 0, 1, 0, 1]


def test_stair_decompose_examples():
    assert stair_decompose(EXAMPLE_B, 3) == StairDecomposition(3, (0, 0, 1, 5, 4), 15, None)
    assert stair_decompose(list(range(8)), 4).base == (0, 1)
    assert stair_decompose([0, 0], 2) == StairViolation(2, 1)


def test_stair_decompose_partial_block_and_violations():
    res = stair_decompose(EXAMPLE_B[:11], 3)
    assert res.base == (0, 0, 1) and res.provisional == 5
    assert stair_decompose([0, 1, 2, 4], 3) == StairViolation(3, 3)
    assert stair_decompose([0, 1, 2, 3, 5, 5], 3) == StairViolation(3, 4)
    assert stair_decompose([], 3) == StairDecomposition(3, (), 0)


@given(st.lists(st.integers(0, 1000), max_size=30), st.integers(1, 8))
def test_stair_round_trip(a, h):
    res = stair_decompose(stair_compose(a, h), h)
    assert res.base == tuple(a)
    assert res.provisional is None


@given(st.lists(st.integers(0, 30), max_size=40), st.integers(1, 5))
def test_accepted_stairs_are_congruent(b, h):
    res = stair_decompose(b, h)
    if isinstance(res, StairDecomposition):
        assert all(v % h == i % h for i, v in enumerate(b))
    else:
        # every earlier index is consistent with its block start
        i = res.index
        assert all(b[j] == (b[j - j % h] // h) * h + j % h for j in range(i))
        assert b[i] != (b[i - i % h] // h) * h + i % h


@pytest.mark.parametrize(
    "S, h, name",
    [
        (all_positive(), 3, "nim"),
        (finite([1, 2]), 1, "identity"),
        (all_but([4, 8]), 4, "all-but-multiples"),
        (lift_set(finite([2, 3]), 3), 3, "lift"),
        (finite(range(1, 8)), 4, "mod-l"),
        (finite([1, 2, 3, 5]), 4, "mod-l"),
        (all_but([3, 5]), 3, "all-but-pair"),
        (finite([1, 2]), 4, None),
        (finite(range(1, 8)), 3, None),
        (finite([]), 2, None),
    ],
)
def test_stair_guarantee(S, h, name):
    assert stair_guarantee(S, h) == name
    if name is not None:
        assert isinstance(stair_decompose(grundy_sequence(S, 400).values, h), StairDecomposition)


def test_closed_form_mixed_game(mixed_game):
    seqs = closed_form_sequences(mixed_game, 14)
    b = gcn_closed_grundy(mixed_game, (5, 9, 14), seqs)
    assert b.heights == (1, 0, 1)
    assert (b.Q, b.R, b.value) == (0, 0, 0)
    assert b.quotients == (1, 2, 3) and b.remainders == (1, 1, 2)
    assert b.value == mixed_formula(5, 9, 14)
    assert b.basis == ("nim", "mod-l", "all-but-multiples")
    assert gcn_closed_grundy(mixed_game, (0, 0, 0), seqs).value == 0


def test_closed_form_h1_is_nim():
    spec = GcnSpec(1, (all_positive(), all_positive()))
    b = gcn_closed_grundy(spec, (3, 5), closed_form_sequences(spec, 5))
    assert b.value == 6 and b.R == 0


def test_closed_form_errors(mixed_game):
    seqs = closed_form_sequences(mixed_game, 5)
    with pytest.raises(CoverageError):
        gcn_closed_grundy(mixed_game, (5, 9, 14), seqs)
    broken = GcnSpec(4, (finite([1, 2]), all_positive()))
    with pytest.raises(StairViolationError) as info:
        gcn_closed_grundy(broken, (2, 2), closed_form_sequences(broken, 2))
    assert (info.value.heap, info.value.index) == (0, 3)


def test_breakdown_invariants(mixed_game):
    seqs = closed_form_sequences(mixed_game, 12)
    for pos in itertools.product(range(13), repeat=3):
        b = gcn_closed_grundy(mixed_game, pos, seqs)
        assert all(0 <= r < 4 for r in b.remainders)
        assert 0 <= b.R < 4 and b.value % 4 == b.R
        assert b.value == mixed_formula(*pos)


def test_cyclic_nimhoff_examples():
    rng = random.Random(3)
    for _ in range(50):
        m, n = rng.randrange(100), rng.randrange(100)
        assert cyclic_nimhoff_grundy(1, (m, n)) == m ^ n
    assert cyclic_nimhoff_grundy(2, (1,)) == 1
    assert cyclic_nimhoff_grundy(3, (4, 5)) == 0


@pytest.mark.parametrize("h", [1, 2, 3, 5])
def test_cyclic_nimhoff_equals_gcn_closed_form(h):
    spec = GcnSpec(h, (all_positive(),) * 3)
    seqs = closed_form_sequences(spec, 9)
    for pos in itertools.product(range(10), repeat=3):
        assert cyclic_nimhoff_grundy(h, pos) == gcn_closed_grundy(spec, pos, seqs).value


def test_lift_set_g_sequence():
    S = lift_set(finite([1]), 2)
    assert list(grundy_sequence(S, 12).values) == [0, 1, 2, 3] * 3


@pytest.mark.parametrize(
    "S, h, length",
    [(all_positive(), 3, 100), (finite([1]), 2, 1000), (all_but([1, 2]), 4, 1000)],
)
def test_verify_lift_identity(S, h, length):
    report = verify_lift_identity(S, h, length)
    assert report.ok, report.summary()


def test_lift_of_allbut_matches_example_stair():
    seq = grundy_sequence(lift_set(all_but([1, 2]), 4), 1000)
    expected = stair_compose([q // 3 for q in range(250)], 4)
    assert list(seq.values) == expected


def brute_relation(a, p, n0, s):
    return all(a[n + p] == a[n] + s for n in range(n0, len(a) - p))


@pytest.mark.parametrize(
    "values, max_period, expected",
    [
        ([0, 1, 2] * 3, 4, ("purely-periodic", 3, 0, 0)),
        (list(range(8)), 4, ("arithmetic-periodic", 1, 0, 1)),
        ([5, 7, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1], 3, ("periodic", 2, 2, 0)),
        ([0, 3, 1, 4, 2, 9], 3, ("undetected", 0, 0, 0)),
        ([0, 1], 2, ("undetected", 0, 0, 0)),
    ],
)
def test_detect_periodicity(values, max_period, expected):
    r = detect_periodicity(values, max_period)
    assert (r.classification, r.period, r.preperiod, r.saltus) == expected
    assert r.checked_length == len(values)


def test_detect_periodicity_allbut_3_5():
    r = detect_periodicity(grundy_sequence(all_but([3, 5]), 10000).values, 1000)
    assert (r.classification, r.period, r.preperiod, r.saltus) == ("arithmetic-periodic", 6, 0, 3)


@settings(max_examples=200)
@given(st.lists(st.integers(0, 4), min_size=1, max_size=6), st.integers(0, 5), st.lists(st.integers(0, 9), max_size=6), st.integers(0, 3))
def test_detect_periodicity_minimality(block, reps, pre, saltus):
    values = list(pre)
    for k in range(reps + 4):
        values += [v + k * saltus for v in block]
    max_period = min(len(values) // 2, 12)
    r = detect_periodicity(values, max_period)
    if r.classification == "undetected":
        return
    a, p, n0, s = values, r.period, r.preperiod, r.saltus
    assert brute_relation(a, p, n0, s)
    assert n0 == 0 or not brute_relation(a, p, n0 - 1, s)
    if s == 0:
        assert not any(brute_relation(a, q, m, 0) for q in range(1, p) for m in range(0, (len(a) - q) // 2 + 1)
                       if len(a) - q - m >= q and 2 * (len(a) - q - m) >= len(a) - q)
    assert r.classification != "purely-periodic" or n0 == 0


def test_exports():
    seq = grundy_sequence(finite([1, 2]), 4)
    assert sequence_csv(seq) == "index,gvalue\n0,0\n1,1\n2,2\n3,0\n"
    assert stair_csv([0, 1, 4, 5], 2) == "index,gvalue,block,base\n0,0,0,0\n1,1,0,0\n2,4,1,2\n3,5,1,2\n"
    r = detect_periodicity([0, 1, 2] * 3, 4)
    assert r.to_text() == "classification=purely-periodic\np=3\nn0=0\nsaltus=0\nchecked_length=9\n"
