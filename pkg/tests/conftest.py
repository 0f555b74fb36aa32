import itertools

import pytest
from hypothesis import strategies as st

from repcap.words import word


def naive_step(x, variant, k, kprime=None):
    """String-slicing rule application, written independently of repcap.rules."""
    out = set()
    n = len(x)
    span = k + (kprime or 0)
    for i in range(n - span + 1):
        v = x[i:i + k]
        if variant == "end":
            out.add(x + v)
        elif variant == "tan":
            out.add(x[:i + k] + v + x[i + k:])
        elif variant == "rt":
            out.add(x[:i + k] + v[::-1] + x[i + k:])
        else:
            cut = i + k + kprime
            out.add(x[:cut] + v + x[cut:])
    return out


def naive_closure(seed, variant, k, max_len, kprime=None, at_least=False):
    """Worklist fixed point over plain strings; returns {length: set of words}."""
    seen = {seed}
    todo = [seed]
    while todo:
        x = todo.pop()
        ks = range(k, len(x) + 1) if at_least else [k]
        for kk in ks:
            for y in naive_step(x, variant, kk, kprime):
                if len(y) <= max_len and y not in seen:
                    seen.add(y)
                    todo.append(y)
    by_len = {}
    for w in seen:
        by_len.setdefault(len(w), set()).add(w)
    return by_len


def all_words(sigma, n):
    return ["".join(map(str, t)) for t in itertools.product(range(sigma), repeat=n)]


def words_of(sigma, min_size=0, max_size=12):
    return st.lists(st.integers(0, sigma - 1), min_size=min_size, max_size=max_size).map(tuple)


@pytest.fixture
def w():
    return word
