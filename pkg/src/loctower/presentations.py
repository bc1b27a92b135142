"""Finite presentations, Smith normal form, and abelianization.

All matrix arithmetic is exact over Python's arbitrary-precision integers;
intermediate entry blowup in the Smith reduction is real even for small
matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .words import Word, commutator, invert, multiply, parse_word, power, validate_rank

Matrix = tuple[tuple[int, ...], ...]


class PresentationSyntaxError(ValueError):
    """Malformed presentation text.  ``line`` is 1-based."""

    def __init__(self, message: str, line: int) -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class Presentation:
    """Finite presentation; each relator is a word set equal to the identity."""

    generator_count: int
    relators: tuple[Word, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "relators", tuple(self.relators))
        if self.generator_count < 1:
            raise ValueError("generator count must be positive")
        for r in self.relators:
            validate_rank(r, self.generator_count)


@dataclass(frozen=True)
class AbelianInvariants:
    """Abelianization Z^free_rank + sum of Z/d_i with d_1 | d_2 | ..."""

    torsion: tuple[int, ...]
    free_rank: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "torsion", tuple(self.torsion))
        for d in self.torsion:
            if d < 2:
                raise ValueError("torsion entries must be >= 2")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError("torsion entries must form a divisibility chain")
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion


def exponent_sums(w: Word, generator_count: int) -> tuple[int, ...]:
    sums = [0] * generator_count
    for letter in w.letters:
        sums[abs(letter) - 1] += 1 if letter > 0 else -1
    return tuple(sums)


def relation_matrix(p: Presentation) -> Matrix:
    """One row per relator, one column per generator; entries are exponent
    sums.  A free group yields a 0 x n matrix."""
    return tuple(exponent_sums(r, p.generator_count) for r in p.relators)


@dataclass(frozen=True)
class SmithNormalForm:
    """u @ m @ v == d with d diagonal (nonnegative, divisibility chain) and
    u, v unimodular."""

    d: Matrix
    u: Matrix
    v: Matrix

    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.d[i][i] for i in range(min(len(self.d), len(self.d[0]) if self.d else 0)))


def _identity_matrix(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def matrix_multiply(a, b):
    rows = len(a)
    inner = len(b)
    cols = len(b[0]) if inner else 0
    out = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        for k in range(inner):
            aik = a[i][k]
            if not aik:
                continue
            row_b = b[k]
            row_o = out[i]
            for j in range(cols):
                row_o[j] += aik * row_b[j]
    return tuple(tuple(row) for row in out)


def determinant(matrix) -> int:
    """Exact integer determinant via fraction-free (Bareiss) elimination."""
    n = len(matrix)
    if n == 0:
        return 1
    a = [list(row) for row in matrix]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def smith_normal_form(matrix) -> SmithNormalForm:
    """Diagonalize an integer matrix by unimodular row and column operations."""
    a = [[int(x) for x in row] for row in matrix]
    nr = len(a)
    nc = len(a[0]) if nr else 0
    for row in a:
        if len(row) != nc:
            raise ValueError("matrix rows must have equal length")
    u = _identity_matrix(nr)
    v = _identity_matrix(nc)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, c):
        a[dst] = [x + c * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + c * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, c):
        for row in a:
            row[dst] += c * row[src]
        for row in v:
            row[dst] += c * row[src]

    t = 0
    while t < min(nr, nc):
        pivot = None
        for i in range(t, nr):
            for j in range(t, nc):
                if a[i][j] and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        if pivot[0] != t:
            swap_rows(t, pivot[0])
        if pivot[1] != t:
            swap_cols(t, pivot[1])
        while True:
            dirty = False
            for i in range(nr):
                if i == t or not a[i][t]:
                    continue
                add_row(t, i, -(a[i][t] // a[t][t]))
                if a[i][t]:
                    swap_rows(t, i)
                    dirty = True
            if dirty:
                continue
            for j in range(nc):
                if j == t or not a[t][j]:
                    continue
                add_col(t, j, -(a[t][j] // a[t][t]))
                if a[t][j]:
                    swap_cols(t, j)
                    dirty = True
            if dirty:
                continue
            offender = None
            for i in range(t + 1, nr):
                if any(a[i][j] % a[t][t] for j in range(t + 1, nc)):
                    offender = i
                    break
            if offender is None:
                break
            add_row(offender, t, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return SmithNormalForm(
        tuple(tuple(row) for row in a),
        tuple(tuple(row) for row in u),
        tuple(tuple(row) for row in v),
    )


def abelianization(p: Presentation) -> AbelianInvariants:
    """Read the abelianization off the Smith diagonal: zeros and missing
    pivots contribute free rank, entries >= 2 torsion, ones nothing."""
    m = relation_matrix(p)
    if not m:
        return AbelianInvariants((), p.generator_count)
    snf = smith_normal_form(m)
    diagonal = snf.diagonal()
    nonzero = [d for d in diagonal if d != 0]
    torsion = tuple(d for d in nonzero if d >= 2)
    return AbelianInvariants(torsion, p.generator_count - len(nonzero))


def is_perfect(p: Presentation) -> bool:
    return abelianization(p).is_trivial()


def format_abelian_invariants(inv: AbelianInvariants) -> str:
    """Render as ``Z^r + Z/d1 + Z/d2 + ...``; the trivial group is ``0``."""
    parts = []
    if inv.free_rank == 1:
        parts.append("Z")
    elif inv.free_rank > 1:
        parts.append(f"Z^{inv.free_rank}")
    parts.extend(f"Z/{d}" for d in inv.torsion)
    return " + ".join(parts) if parts else "0"


def triangle_group(l: int, m: int, n: int) -> Presentation:
    """The central extension <x, y | x^l = y^m = (xy)^n> of a triangle group."""
    if 0 in (l, m, n):
        raise ValueError("triangle parameters must be nonzero")
    x = Word((1,))
    y = Word((2,))
    xy = multiply(x, y)
    return Presentation(
        2,
        (
            multiply(power(x, l), power(y, -m)),
            multiply(power(y, m), power(xy, -n)),
        ),
    )


def triangle_is_finite(l: int, m: int, n: int) -> bool:
    """Finiteness criterion 1/|l| + 1/|m| + 1/|n| > 1, exact arithmetic."""
    if 0 in (l, m, n):
        raise ValueError("triangle parameters must be nonzero")
    return Fraction(1, abs(l)) + Fraction(1, abs(m)) + Fraction(1, abs(n)) > 1


def tower_truncation(n: int) -> Presentation:
    """Depth-n truncation of the commutator-tower presentation:
    generators x_1..x_{2^{n+1}-1}, relators x_i = [x_{2i}, x_{2i+1}] for
    i < 2^n.  Abelianization is free of rank 2^n for every n."""
    if n < 0:
        raise ValueError("depth must be nonnegative")
    count = 2 ** (n + 1) - 1
    relators = []
    for i in range(1, 2**n):
        rel = multiply(
            Word((i,)),
            invert(commutator(Word((2 * i,)), Word((2 * i + 1,)))),
        )
        relators.append(rel)
    return Presentation(count, tuple(relators))


def parse_presentation(text: str) -> Presentation:
    """Parse the presentation text format.

    A ``gens: n`` line followed by one relator per line in word syntax;
    chained equalities ``w1 = w2 = w3`` become relators ``w1*w2^-1`` and
    ``w2*w3^-1``.  Blank lines and ``#`` comments are skipped.
    """
    generator_count = None
    relators: list[Word] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if generator_count is None:
            if not line.startswith("gens:"):
                raise PresentationSyntaxError("expected a 'gens: n' header", lineno)
            try:
                generator_count = int(line[len("gens:") :].strip())
            except ValueError:
                raise PresentationSyntaxError("invalid generator count", lineno) from None
            if generator_count < 1:
                raise PresentationSyntaxError("generator count must be positive", lineno)
            continue
        try:
            sides = [parse_word(part) for part in line.split("=")]
        except ValueError as exc:
            raise PresentationSyntaxError(str(exc), lineno) from None
        if len(sides) == 1:
            relators.append(sides[0])
        else:
            for a, b in zip(sides, sides[1:]):
                relators.append(multiply(a, invert(b)))
    if generator_count is None:
        raise PresentationSyntaxError("missing 'gens: n' header", 1)
    try:
        return Presentation(generator_count, tuple(relators))
    except ValueError as exc:
        raise PresentationSyntaxError(str(exc), 1) from None
