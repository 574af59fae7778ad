"""Shared corpora and independent oracles for the tests."""

import itertools
import random
from functools import lru_cache

from critfix.blowup import blow_up
from critfix.classify import enumerate_levels
from critfix.curves import cyclic_reduce, greedy_tree, invert, reduce
from critfix.pullback import build_overlay, wreath_recursion


@lru_cache(maxsize=None)
def census_graphs(n_max):
    """(N, code, graph) for every class with at most ``n_max`` edges."""
    levels = enumerate_levels(n_max)
    return tuple((n, c, levels[n][c]) for n in range(1, n_max + 1) for c in sorted(levels[n]))


@lru_cache(maxsize=None)
def overlay_for(code):
    for _, c, g in census_graphs(6):
        if c == code:
            tree = greedy_tree(g)
            o = build_overlay(blow_up(g), tree)
            return tree, o, wreath_recursion(o)
    raise KeyError(code)


def random_reduced_word(rng, rank, max_len):
    """Uniform length in 1..max_len, then a random freely reduced word."""
    letters = [i for i in range(-rank, rank + 1) if i]
    n = rng.randint(1, max_len)
    w = []
    while len(w) < n:
        x = rng.choice(letters)
        if w and w[-1] == -x:
            continue
        w.append(x)
    return w


def random_words(seed, rank, count, max_len=12):
    rng = random.Random(seed)
    return [reduce(random_reduced_word(rng, rank, max_len)) for _ in range(count)]


def same_class(a, b, oriented=False):
    """Conjugacy (up to inversion) by string search in the doubled word."""
    a, b = cyclic_reduce(a), cyclic_reduce(b)
    if len(a) != len(b):
        return False
    if not a:
        return True
    key = lambda w: ",".join(map(str, w)) + ","
    doubled = key(a) * 2
    if "," + key(b) in "," + doubled:
        return True
    return not oriented and "," + key(invert(b)) in "," + doubled


def all_classes(rank, max_len):
    """Every free homotopy class of length <= max_len, as oracle words."""
    letters = [i for i in range(-rank, rank + 1) if i]
    found = {}
    for n in range(max_len + 1):
        for w in itertools.product(letters, repeat=n):
            if any(w[i] == -w[i + 1] for i in range(n - 1)):
                continue
            cw = reduce(w)
            found.setdefault(cw, w)
    return found
