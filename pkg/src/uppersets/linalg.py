"""Exact rational vectors and the small linear-algebra helpers the geometry needs.

Vectors are plain tuples of ``fractions.Fraction`` (or ``int``, which
interoperates); everything here is pure and allocation-light because the
double description method calls these in tight loops.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Vec = tuple
Rational = Fraction | int

NEG_INF = float("-inf")
POS_INF = float("inf")


def vec(entries: Iterable) -> Vec:
    """Build an exact vector, accepting ints, Fractions and 'p/q' strings."""
    return tuple(Fraction(e) for e in entries)


def dot(a: Sequence, b: Sequence) -> Fraction:
    if len(a) != len(b):
        raise ValueError(f"dimension mismatch: {len(a)} vs {len(b)}")
    return sum(x * y for x, y in zip(a, b)) or Fraction(0)


def vadd(a: Sequence, b: Sequence) -> Vec:
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: Sequence, b: Sequence) -> Vec:
    return tuple(x - y for x, y in zip(a, b))


def vscale(k, a: Sequence) -> Vec:
    return tuple(k * x for x in a)


def vneg(a: Sequence) -> Vec:
    return tuple(-x for x in a)


def is_zero(a: Sequence) -> bool:
    return all(x == 0 for x in a)


def primitive(a: Sequence) -> Vec:
    """Scale to the coprime integer vector with the same direction.

    The zero vector maps to itself.  Sign is preserved, so ``primitive`` is a
    canonical form for rays and normals: two vectors are positive multiples
    of each other iff their primitive forms are equal.
    """
    fracs = [Fraction(x) for x in a]
    if all(f == 0 for f in fracs):
        return tuple(0 for _ in fracs)
    denom_lcm = 1
    for f in fracs:
        denom_lcm = denom_lcm * f.denominator // gcd(denom_lcm, f.denominator)
    ints = [int(f * denom_lcm) for f in fracs]
    g = 0
    for n in ints:
        g = gcd(g, n)
    return tuple(n // g for n in ints)


def rank(rows: Sequence[Sequence]) -> int:
    """Rank over the rationals, by Gaussian elimination."""
    mat = [list(map(Fraction, row)) for row in rows]
    if not mat:
        return 0
    ncols = len(mat[0])
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(mat)) if mat[i][col] != 0), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = 1 / mat[r][col]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col] != 0:
                f = mat[i][col]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        r += 1
        if r == len(mat):
            break
    return r


def format_rational(x) -> str:
    """Render a rational (or +/-inf) as 'p', 'p/q', 'inf' or '-inf'."""
    if isinstance(x, float):
        if x == NEG_INF:
            return "-inf"
        if x == POS_INF:
            return "inf"
        raise ValueError(f"not an exact rational: {x!r}")
    f = Fraction(x)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def parse_rational(text: str):
    """Inverse of format_rational; '-inf' parses to NEG_INF."""
    t = text.strip()
    if t == "-inf":
        return NEG_INF
    if t == "inf":
        return POS_INF
    try:
        return Fraction(t)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad rational literal {text!r}") from exc


def format_vector(v: Sequence) -> str:
    return "[" + ", ".join(format_rational(x) for x in v) + "]"


def ext_add(a, b):
    """Extended addition on Q ∪ {-inf, +inf}; +inf dominates -inf."""
    if a == POS_INF or b == POS_INF:
        return POS_INF
    if a == NEG_INF or b == NEG_INF:
        return NEG_INF
    return a + b


def ext_sum(values) -> Fraction | float:
    total: Fraction | float = Fraction(0)
    for v in values:
        total = ext_add(total, v)
        if total == POS_INF:
            return POS_INF
    return total


def ext_scale(k, a):
    """k * a for k > 0 with infinities preserved."""
    if k <= 0:
        raise ValueError("ext_scale requires a strictly positive factor")
    if isinstance(a, float):
        return a
    return k * a
