import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from repcap.closure import Budget, membership
from repcap.constructions import (
    ConstructionError,
    end_force_suffix,
    gap_distinct_round,
    gap_push_to_end,
    hamming_defect,
    rt_embed_as_suffix,
    rt_push_to_end,
    tandem_compact_distinct,
    tandem_gek_seed_prep,
)
from repcap.rules import Variant, apply, make_system, trace_replay
from repcap.words import Alphabet, word

from conftest import words_of

ABC = Alphabet(3, "abc")


def assert_replays(res, variant, k, kprime=None):
    assert trace_replay(res.input, res.trace) == res.output
    x = res.input
    for rule in res.trace:
        assert rule.variant is variant
        assert rule.kprime == kprime
        y = apply(rule, x)
        assert y != x
        x = y
    return res


def test_end_force_suffix_examples():
    res = assert_replays(end_force_suffix(word("01"), 1, word("0")), Variant.END, 1)
    assert res.output[-1] == 0 and res.steps <= 2
    ab = ABC.parse("ab")
    res = end_force_suffix(ab, 2, ab)
    assert res.output[-2:] == ab and res.steps <= 4
    with pytest.raises(ConstructionError):
        end_force_suffix(word("01"), 1, word("2"))


def test_tandem_compact_examples():
    res = tandem_compact_distinct(word("01"))
    assert res.steps == 1
    for mid in "01":
        res = assert_replays(tandem_compact_distinct(word("0" + mid + "1")), Variant.TANDEM, None)
        assert any(len(set(res.output[j:j + 2])) == 2 for j in range(len(res.output) - 1))
    with pytest.raises(ConstructionError):
        tandem_compact_distinct(word("000"))


def test_tandem_compact_trace_is_not_fixed_length():
    # block lengths differ step to step; only the variant is fixed
    res = tandem_compact_distinct(word("0012"))
    assert {r.variant for r in res.trace} == {Variant.TANDEM}
    assert trace_replay(res.input, res.trace) == res.output


@settings(max_examples=300)
@given(words_of(4, min_size=2, max_size=12))
def test_tandem_compact_property(s):
    if len(set(s)) < 2:
        return
    res = tandem_compact_distinct(s)
    delta = len(set(s))
    assert res.steps == delta - 1
    assert trace_replay(s, res.trace) == res.output
    assert len(set(res.output[res.window:res.window + delta])) == delta


def test_seed_prep_examples():
    res, pat = tandem_gek_seed_prep(word("01"), 2)
    assert res.steps == 2
    assert res.output[2] == res.output[3] == res.output[0] == 0
    res, pat = tandem_gek_seed_prep(word("10"), 1)
    assert res.steps == 1
    block = res.output[pat.start:pat.start + 2]
    assert set(block) == {0, 1}
    with pytest.raises(ConstructionError):
        tandem_gek_seed_prep(word("00"), 1)


@settings(max_examples=300)
@given(st.integers(1, 4), st.data())
def test_seed_prep_property(k, data):
    s = data.draw(words_of(3, min_size=k, max_size=10))
    if len(set(s)) < 2:
        return
    res, pat = tandem_gek_seed_prep(s, k)
    t = res.output
    assert res.steps == k and trace_replay(s, res.trace) == t
    assert all(t[j] == t[0] for j in range(k, 2 * k))
    run = (pat.run_symbol,) * k
    other = (pat.other_symbol,)
    expected = run + other if pat.run_first else other + run
    assert t[pat.start:pat.start + k + 1] == expected
    assert pat.run_symbol != pat.other_symbol


def test_rt_push_examples():
    res = assert_replays(rt_push_to_end(word("01"), 2, 0), Variant.REVERSED, 2)
    assert res.output[-1] == 0
    res = rt_push_to_end(ABC.parse("abc"), 2, 0)
    assert res.output[-1] == 0
    with pytest.raises(ConstructionError):
        rt_push_to_end(word("111"), 2, 0)
    with pytest.raises(ConstructionError):
        rt_push_to_end(word("01"), 1, 0)


def test_rt_embed_examples():
    res = assert_replays(rt_embed_as_suffix(word("0101"), 2, word("10")), Variant.REVERSED, 2)
    assert res.output[-2:] == word("10")
    res = rt_embed_as_suffix(word("0101"), 2, ())
    assert res.output == word("0101") and res.steps == 0
    with pytest.raises(ConstructionError):
        rt_embed_as_suffix(word("01"), 2, word("00"))


@settings(max_examples=300, deadline=None)
@given(st.integers(2, 4), st.data())
def test_rt_embed_property(k, data):
    y = data.draw(words_of(3, min_size=k, max_size=8))
    pool = list(y)
    x = tuple(data.draw(st.permutations(pool)))[:data.draw(st.integers(0, min(4, len(pool))))]
    res = rt_embed_as_suffix(y, k, x)
    assert_replays(res, Variant.REVERSED, k)
    assert res.output[len(res.output) - len(x):] == x


def test_gap_push_examples():
    res = assert_replays(gap_push_to_end(word("010"), 2, 1, 1), Variant.GAP, 2, 1)
    assert res.output[-1] == 1
    res = gap_push_to_end(word("011"), 2, 1, 1)
    assert res.steps == 0 and res.output == word("011")
    with pytest.raises(ConstructionError):
        gap_push_to_end(word("0101"), 2, 2, 1)


@pytest.mark.parametrize("variant,y,k,kprime,a", [
    ("rt", "01", 2, None, 0),
    ("rt", "0112", 3, None, 0),
    ("rt", "0011", 2, None, 0),
    ("gap", "010", 2, 1, 1),
    ("gap", "0110", 1, 2, 0),
    ("gap", "1002", 3, 1, 1),
])
def test_push_output_is_in_closure(variant, y, k, kprime, a):
    push = rt_push_to_end if variant == "rt" else gap_push_to_end
    args = (k,) if kprime is None else (k, kprime)
    res = push(word(y), *args, a)
    sysm = make_system(variant, y, k, kprime)
    got = membership(sysm, res.output, Budget(len(res.output), store_traces=True))
    assert got.found
    assert trace_replay(sysm.seed, got.trace) == res.output


def test_gap_round_examples():
    assert len(gap_distinct_round(word("0110"), 2, 2)) == 3
    # sharpness seed: first block a1 a2, then b a2 with b != a1
    assert len(gap_distinct_round(word("0111"), 2, 2)) == 2
    assert hamming_defect(word("0111"), 2) == 1
    assert len(gap_distinct_round(word("0101"), 2, 2)) == 1
    assert len(gap_distinct_round(word("000"), 1, 2)) == 1
    with pytest.raises(ConstructionError):
        gap_distinct_round(word("01"), 2, 1)


@pytest.mark.parametrize("n", range(2, 9))
def test_gap_round_count_exhaustive(n):
    for k in range(1, n):
        kprime = n - k
        for s in itertools.product((0, 1), repeat=n):
            assert len(gap_distinct_round(s, k, kprime)) == 1 + hamming_defect(s, k)
