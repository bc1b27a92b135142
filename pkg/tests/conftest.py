"""Shared strategies, random generators, and independent brute-force oracles."""

from __future__ import annotations

import random

from hypothesis import strategies as st

from loctower.words import Word, reduce


def letter_strategy(rank: int = 3):
    return st.integers(-rank, rank).filter(lambda l: l != 0)


def words_strategy(rank: int = 3, max_len: int = 12):
    return st.lists(letter_strategy(rank), max_size=max_len).map(reduce)


def nonempty_words_strategy(rank: int = 3, max_len: int = 12):
    return words_strategy(rank, max_len).filter(lambda w: bool(w))


def random_reduced_letters(rng: random.Random, length: int, alphabet) -> tuple[int, ...]:
    """Uniform-ish freely reduced tuple of exactly `length` letters."""
    alphabet = list(alphabet)
    out: list[int] = []
    while len(out) < length:
        choices = [s * i for i in alphabet for s in (1, -1)]
        if out:
            choices = [c for c in choices if c != -out[-1]]
        out.append(rng.choice(choices))
    return tuple(out)


def random_word(rng: random.Random, max_len: int, alphabet) -> Word:
    return Word(random_reduced_letters(rng, rng.randint(0, max_len), alphabet))


def random_nonempty_word(rng: random.Random, max_len: int, alphabet) -> Word:
    return Word(random_reduced_letters(rng, rng.randint(1, max_len), alphabet))


def iter_reduced_tuples(max_len: int, rank: int):
    """All nonempty freely reduced letter tuples with length <= max_len."""
    alphabet = [s * i for i in range(1, rank + 1) for s in (1, -1)]
    current = [(l,) for l in alphabet]
    for _ in range(max_len):
        nxt = []
        for t in current:
            yield t
            if len(t) < max_len:
                last = t[-1]
                nxt.extend(t + (l,) for l in alphabet if l != -last)
        current = [t for t in nxt if len(t) <= max_len]
        if not current:
            break


# ---------------------------------------------------------------------------
# oracles (kept independent of the library's algorithmic path)


def naive_reduce(letters) -> tuple[int, ...]:
    """Repeated-scan free reduction; quadratic but transparently correct."""
    out = list(letters)
    changed = True
    while changed:
        changed = False
        for i in range(len(out) - 1):
            if out[i] == -out[i + 1]:
                del out[i : i + 2]
                changed = True
                break
    return tuple(out)


def concat_reduce(a: tuple, b: tuple) -> tuple:
    i, j = len(a), 0
    while i > 0 and j < len(b) and a[i - 1] == -b[j]:
        i -= 1
        j += 1
    return a[:i] + b[j:]


def oracle_cyclic_reduce(letters) -> tuple[tuple, tuple]:
    """Peel matching ends until the first letter is not the inverse of the last."""
    conj: list[int] = []
    core = list(letters)
    while len(core) >= 2 and core[0] == -core[-1]:
        conj.append(core[0])
        core = core[1:-1]
    return tuple(conj), tuple(core)


def oracle_primitive_root(letters) -> tuple[tuple, int]:
    """Maximal-exponent root by enumerating prefix/conjugator candidates.

    Every root of w = r u^k r^-1 has the shape (prefix of w) * (prefix of
    w)^-1, so candidates reduce(w[:a] + inverse(w[:b])) for b <= a cover
    all of them; powers are monotone in length, so the scan terminates.
    """
    n = len(letters)
    best = (letters, 1)
    for a in range(n + 1):
        head = letters[:a]
        for b in range(a + 1):
            tail = tuple(-l for l in reversed(letters[:b]))
            cand = concat_reduce(head, tail)
            if not cand or len(cand) > n:
                continue
            acc = cand
            k = 1
            # |cand^k| grows strictly with k, so this loop terminates
            while len(acc) <= n:
                if acc == letters and k > best[1]:
                    best = (cand, k)
                acc = concat_reduce(acc, cand)
                k += 1
    return best
