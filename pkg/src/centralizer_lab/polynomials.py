"""Dense univariate polynomials over Q.

A polynomial is a list of coefficients, constant term first.  Integer and
Fraction coefficients mix freely; results are normalized by :func:`strip`
so that the zero polynomial is ``[]``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

from .errors import ZeroPolynomial

Poly = list


def strip(f: Sequence) -> Poly:
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def degree(f: Sequence) -> int:
    f = strip(f)
    return len(f) - 1  # -1 for the zero polynomial


def lc(f: Sequence):
    f = strip(f)
    if not f:
        raise ZeroPolynomial("leading coefficient of the zero polynomial")
    return f[-1]


def add(f: Sequence, g: Sequence) -> Poly:
    n = max(len(f), len(g))
    return strip([(f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0) for i in range(n)])


def neg(f: Sequence) -> Poly:
    return [-c for c in f]


def sub(f: Sequence, g: Sequence) -> Poly:
    return add(f, neg(g))


def scale(f: Sequence, c) -> Poly:
    return strip([c * a for a in f])


def mul(f: Sequence, g: Sequence) -> Poly:
    f, g = strip(f), strip(g)
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            out[i + j] += a * b
    return strip(out)


def divmod_poly(f: Sequence, g: Sequence) -> tuple[Poly, Poly]:
    """Division with remainder over Q."""
    f, g = strip(f), strip(g)
    if not g:
        raise ZeroPolynomial("division by the zero polynomial")
    r = [Fraction(c) for c in f]
    dg = len(g) - 1
    q = [Fraction(0)] * max(len(f) - dg, 0)
    inv = Fraction(1) / Fraction(g[-1])
    for k in range(len(f) - 1 - dg, -1, -1):
        c = r[k + dg] * inv
        q[k] = c
        if c:
            for j, b in enumerate(g):
                r[k + j] -= c * b
    return _demote(strip(q)), _demote(strip(r[:dg]))


def rem(f: Sequence, g: Sequence) -> Poly:
    return divmod_poly(f, g)[1]


def exquo(f: Sequence, g: Sequence) -> Poly:
    q, r = divmod_poly(f, g)
    if r:
        raise ValueError("inexact polynomial division")
    return q


def _demote(f: Poly) -> Poly:
    return [int(c) if isinstance(c, Fraction) and c.denominator == 1 else c for c in f]


def primitive(f: Sequence) -> Poly:
    """Integer polynomial with coprime coefficients and positive leading term."""
    f = strip(f)
    if not f:
        return []
    den = 1
    for c in f:
        den = den * Fraction(c).denominator // gcd(den, Fraction(c).denominator)
    ints = [int(Fraction(c) * den) for c in f]
    g = 0
    for c in ints:
        g = gcd(g, c)
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def monic(f: Sequence) -> Poly:
    c = Fraction(lc(f))
    return _demote([Fraction(a) / c for a in strip(f)])


def poly_gcd(f: Sequence, g: Sequence) -> Poly:
    """Greatest common divisor, returned as a primitive integer polynomial."""
    f, g = primitive(f), primitive(g)
    while g:
        f, g = g, primitive(rem(f, g))
    return primitive(f) if f else []


def derivative(f: Sequence) -> Poly:
    return strip([i * c for i, c in enumerate(f)][1:])


def evaluate(f: Sequence, x):
    """Horner evaluation; ``x`` may be any ring element (int, Fraction, Interval, ...)."""
    acc = 0
    for c in reversed(strip(f)):
        acc = acc * x + c
    return acc


def reverse(f: Sequence) -> Poly:
    """x^deg(f) * f(1/x)."""
    return strip(list(reversed(strip(f))))


def compose_neg(f: Sequence) -> Poly:
    """f(-x)."""
    return [c if i % 2 == 0 else -c for i, c in enumerate(f)]


def squarefree_decomposition(f: Sequence) -> list[tuple[Poly, int]]:
    """Yun's algorithm: pairs (g_i, i) with f = c * prod g_i**i, g_i squarefree and coprime.

    Factors are returned as primitive integer polynomials, nonconstant only.
    """
    f = strip(f)
    if not f:
        raise ZeroPolynomial("squarefree decomposition of the zero polynomial")
    if degree(f) <= 0:
        return []
    f = monic(f)
    df = derivative(f)
    a = monic(poly_gcd(f, df))
    b = exquo(f, a)
    d = sub(exquo(df, a), derivative(b))
    out = []
    i = 1
    while degree(b) > 0:
        g = monic(poly_gcd(b, d)) if strip(d) else monic(b)
        if degree(g) > 0:
            out.append((primitive(g), i))
        b = exquo(b, g)
        d = sub(exquo(d, g), derivative(b))
        i += 1
    return out


def squarefree_part(f: Sequence) -> Poly:
    f = primitive(f)
    return primitive(exquo(f, poly_gcd(f, derivative(f)))) if degree(f) > 0 else f


# --- Sturm sequences -------------------------------------------------------

def sturm_sequence(f: Sequence) -> list[Poly]:
    f = strip(f)
    seq = [f, derivative(f)]
    while strip(seq[-1]):
        r = rem(seq[-2], seq[-1])
        if not r:
            break
        seq.append(neg(r))
    return [s for s in seq if strip(s)]


def sign_changes_at(seq: list[Poly], x) -> int:
    signs = []
    for p in seq:
        v = evaluate(p, x)
        if v != 0:
            signs.append(v > 0)
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def _sign_at_infinity(p: Poly, positive: bool) -> bool:
    c = lc(p)
    if positive or degree(p) % 2 == 0:
        return c > 0
    return c < 0


def sign_changes_at_infinity(seq: list[Poly], positive: bool) -> int:
    signs = [_sign_at_infinity(p, positive) for p in seq]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def count_real_roots(f: Sequence, a=None, b=None, seq=None) -> int:
    """Number of distinct real roots of ``f`` in the half-open interval (a, b].

    ``None`` endpoints stand for -inf / +inf.  A precomputed ``seq`` must come
    from a squarefree polynomial.
    """
    seq = seq if seq is not None else sturm_sequence(squarefree_part(f))
    va = sign_changes_at_infinity(seq, False) if a is None else sign_changes_at(seq, a)
    vb = sign_changes_at_infinity(seq, True) if b is None else sign_changes_at(seq, b)
    return va - vb


def cauchy_bound(f: Sequence) -> Fraction:
    """All complex roots have modulus strictly below this bound."""
    f = strip(f)
    c = Fraction(lc(f))
    return 1 + max((abs(Fraction(a) / c) for a in f[:-1]), default=Fraction(0))


def to_string(f: Sequence, var: str = "x") -> str:
    f = strip(f)
    if not f:
        return "0"
    terms = []
    for i in range(len(f) - 1, -1, -1):
        c = f[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if i == 0:
            body = f"{a}"
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if a == 1 else f"{a}*{mono}"
        terms.append((sign, body))
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for s, body in terms[1:]:
        out += f" {s} {body}"
    return out
