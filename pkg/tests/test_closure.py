import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from repcap.closure import (
    Budget,
    BudgetExceeded,
    count_at_length,
    enumerate_closure,
    membership,
    profile_tsv,
    tandem_bins_count,
    traces_text,
    witnesses_text,
)
from repcap.rules import Alphabet, RuleFamily, StringSystem, Variant, make_system, parse_trace, trace_replay
from repcap.words import residue_profile, word

from conftest import naive_closure


def counts(profile, start, step, stop):
    return [profile.count(n) for n in range(start, stop + 1, step)]


@pytest.mark.parametrize("seed,k,expected", [
    ("01", 2, [1, 1, 3, 10, 37, 145, 584]),
    ("010", 3, [1, 1, 3, 14, 78, 467, 2894]),
    ("012", 3, [1, 1, 4, 25, 182, 1423, 11577]),
])
def test_reference_reversed_tandem_counts(seed, k, expected):
    prof = enumerate_closure(make_system("rt", seed, k), Budget(7 * k))
    assert counts(prof, k, k, 7 * k) == expected


def test_end_k1_closed_form():
    prof = enumerate_closure(make_system("end", "01", 1), Budget(10))
    assert [prof.count(2 + t) for t in range(9)] == [2**t for t in range(9)]


def test_periodic_gap_seed_has_single_words():
    prof = enumerate_closure(make_system("gap", "0101", 2, 2), Budget(4 + 12))
    assert set(prof.counts.values()) == {1}
    assert prof.reachable_lengths() == list(range(4, 17, 2))


@pytest.mark.parametrize("variant,seed,k,kprime,at_least,max_len", [
    ("end", "01", 1, None, False, 8),
    ("end", "012", 2, None, True, 9),
    ("tan", "0110", 2, None, False, 12),
    ("tan", "01", 1, None, True, 8),
    ("tan", "012", 2, None, True, 9),
    ("rt", "0112", 2, None, False, 10),
    ("rt", "021", 3, None, False, 12),
    ("gap", "0110", 2, 2, False, 12),
    ("gap", "0112", 2, 1, False, 11),
    ("gap", "01", 1, 1, False, 10),
])
def test_matches_naive_worklist_closure(variant, seed, k, kprime, at_least, max_len):
    oracle = naive_closure(seed, variant, k, max_len, kprime, at_least)
    sysm = make_system(variant, seed, k, kprime, at_least)
    prof = enumerate_closure(sysm, Budget(max_len, store_witnesses=True))
    assert prof.counts == {n: len(ws) for n, ws in oracle.items()}
    got = {sysm.render(w) for w in prof.all_witnesses()}
    assert got == set().union(*oracle.values())


def test_count_at_length_edges():
    prof = enumerate_closure(make_system("rt", "01", 2), Budget(14))
    assert count_at_length(prof, 14) == 584
    assert count_at_length(prof, 7) == 0
    assert count_at_length(prof, 2) == 1
    with pytest.raises(ValueError):
        prof.count(16)


def test_budget_exceeded():
    with pytest.raises(BudgetExceeded) as info:
        enumerate_closure(make_system("rt", "012", 3), Budget(21, max_states=10))
    assert info.value.frontier > 0


def test_traces_replay_to_witnesses():
    sysm = make_system("rt", "010", 3)
    prof = enumerate_closure(sysm, Budget(15, store_witnesses=True, store_traces=True))
    for w in prof.all_witnesses():
        assert trace_replay(sysm.seed, prof.trace(w)) == w
    for line in traces_text(prof).splitlines():
        text, trace = line.split("\t")
        assert sysm.render(trace_replay(sysm.seed, parse_trace(trace))) == text


def test_every_witness_has_a_predecessor():
    sysm = make_system("tan", "0120", 2)
    prof = enumerate_closure(sysm, Budget(12, store_witnesses=True))
    for n in prof.reachable_lengths()[1:]:
        prev = set(prof.witnesses[n - 2])
        for w in prof.witnesses[n]:
            assert any(w[:i + 2] + w[i + 4:] in prev for i in range(len(w) - 3))


def test_determinism():
    sysm = make_system("gap", "0112", 2, 1)
    a = enumerate_closure(sysm, Budget(12, store_witnesses=True, store_traces=True))
    b = enumerate_closure(sysm, Budget(12, store_witnesses=True, store_traces=True))
    assert a.witnesses == b.witnesses
    assert traces_text(a) == traces_text(b)


def test_exports():
    sysm = make_system("tan", "01", 2)
    prof = enumerate_closure(sysm, Budget(6, store_witnesses=True, store_traces=True))
    assert profile_tsv(prof) == "n\tcount\n2\t1\n4\t1\n6\t1\n"
    assert witnesses_text(prof) == "01\n0101\n010101\n"
    assert traces_text(prof).splitlines()[-1] == "010101\ttan(0,2);tan(0,2)"


def test_membership_examples():
    sysm = make_system("tan", "01", 2)
    res = membership(sysm, word("0101"), Budget(4, store_traces=True))
    assert res.found and trace_replay(sysm.seed, res.trace) == word("0101")
    assert membership(sysm, sysm.seed, Budget(2)).trace == []
    assert not membership(make_system("rt", "00", 2), word("01"), Budget(4)).found
    assert not membership(sysm, word("0110"), Budget(4)).found


def test_membership_inconclusive_is_not_false():
    sysm = make_system("rt", "012", 3)
    with pytest.raises(BudgetExceeded):
        membership(sysm, word("012210012"), Budget(9, max_states=3))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["01", "012", "0112", "1020"]), st.integers(1, 2), st.data())
def test_membership_agrees_with_enumeration(seed, k, data):
    sysm = make_system("end", seed, k)
    prof = enumerate_closure(sysm, Budget(len(seed) + 3 * k, store_witnesses=True))
    n = len(seed) + data.draw(st.integers(0, 3)) * k
    cands = list(itertools.product(range(sysm.alphabet.size), repeat=n))
    target = data.draw(st.sampled_from(cands))
    expected = target in set(prof.witnesses.get(n, []))
    res = membership(sysm, target, Budget(n, store_traces=True))
    assert res.found == expected
    if res.found:
        assert trace_replay(sysm.seed, res.trace) == target


def test_tandem_bins_examples():
    assert tandem_bins_count(word("0011"), 2, 0) == 1
    assert tandem_bins_count(word("0101"), 2, 5) == 1
    assert tandem_bins_count(word("0011"), 2, 2) == math.comb(4, 2) == 6
    prof = enumerate_closure(make_system("tan", "0011", 2), Budget(8))
    assert prof.count(8) == 6


def test_rho_invariance_small():
    sysm = StringSystem(Alphabet(3), word("01202"), RuleFamily(Variant.GAP, 2, kprime=2))
    prof = enumerate_closure(sysm, Budget(13, store_witnesses=True))
    ref = residue_profile(sysm.seed, 2)
    for w in prof.all_witnesses():
        assert residue_profile(w, 2) == ref


def test_concatenation_inequality_on_reference_counts():
    prof = enumerate_closure(make_system("rt", "01", 2), Budget(14))
    assert prof.count(8) >= prof.count(4) ** 2
    assert prof.count(12) >= prof.count(6) ** 2


@pytest.mark.slow
def test_tandem_bins_oracle_length_six():
    # seeds of length <= 5 are swept by the acceptance gate; this covers length 6
    for s in itertools.product(range(3), repeat=6):
        text = "".join(map(str, s))
        for k in (1, 2, 3):
            prof = enumerate_closure(make_system("tan", text, k, alphabet=3), Budget(6 + 4 * k))
            for m in range(5):
                assert prof.count(6 + m * k) == tandem_bins_count(s, k, m)
