"""Root extraction and centralizers in free groups.

Every nontrivial element of a free group is a power of a unique primitive
element, which also generates its (infinite cyclic) centralizer.
"""

from __future__ import annotations

from dataclasses import dataclass

from .words import (
    IdentityWordError,
    Word,
    cyclic_reduce,
    invert,
    multiply,
    power,
)


@dataclass(frozen=True)
class RootDecomposition:
    """``power(root, exponent)`` equals the decomposed word and ``root`` is
    not itself a proper power."""

    root: Word
    exponent: int


def primitive_root(w: Word) -> RootDecomposition:
    """Unique primitive v and maximal k >= 1 with w = v^k.

    Cyclically reduces ``w = r u r^-1``, finds the smallest period of the
    core ``u`` by scanning divisors of its length, and conjugates back.
    """
    if not w:
        raise IdentityWordError("identity word has no primitive root")
    conj, core = cyclic_reduce(w)
    n = len(core)
    for d in range(1, n + 1):
        if n % d:
            continue
        if core.letters[:d] * (n // d) == core.letters:
            seed = Word(core.letters[:d])
            root = multiply(multiply(conj, seed), invert(conj))
            return RootDecomposition(root, n // d)
    raise AssertionError("unreachable: d == n always matches")


def kth_root(w: Word, k: int) -> Word | None:
    """The unique v with v^k = w, or None when no such v exists."""
    if k == 0:
        raise ValueError("k must be nonzero")
    if not w:
        return Word()
    if k < 0:
        v = kth_root(w, -k)
        return invert(v) if v is not None else None
    dec = primitive_root(w)
    if dec.exponent % k:
        return None
    return power(dec.root, dec.exponent // k)


def centralizer_generator(w: Word) -> Word:
    """Generator of the centralizer of ``w``: its primitive root.

    A word commutes with ``w`` iff it is a power of the returned word.
    """
    if not w:
        raise IdentityWordError("centralizer of the identity is not cyclic")
    return primitive_root(w).root


def commutes(a: Word, b: Word) -> bool:
    return multiply(a, b) == multiply(b, a)
