"""Certified spectra of integer polynomials and matrices.

Real roots are isolated with Sturm sequences and refined by bisection.
Moduli of non-real roots are enclosed with a Gershgorin inclusion built from
numerical seeds and then checked in exact rational arithmetic, so every
interval returned here is a proof, not an estimate.  Unit-circle questions
are settled exactly, without any floating point.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from . import polynomials as P
from .errors import UnitModulusUndecided, ZeroPolynomial
from .exact_linalg import IntMatrix, charpoly
from .intervals import Interval, as_fraction, log_interval, sqrt_bounds

log = logging.getLogger(__name__)

DEFAULT_TOL = Fraction(1, 10 ** 9)
# refinement stops here when deciding on which side of 1 a modulus lies
PRECISION_FLOOR = Fraction(1, 2 ** 256)


@dataclass(frozen=True)
class RootEnclosure:
    """A real root (``interval`` encloses the root) or a conjugate pair (``interval`` encloses the modulus)."""

    kind: str
    interval: Interval
    multiplicity: int = 1

    @property
    def modulus(self) -> Interval:
        return abs(self.interval) if self.kind == "real" else self.interval

    @property
    def root_count(self) -> int:
        return self.multiplicity * (1 if self.kind == "real" else 2)

    def to_json(self, digits: int = 12) -> dict:
        return {"kind": self.kind, "interval": self.interval.to_json(digits),
                "multiplicity": self.multiplicity}


@dataclass(frozen=True)
class SpectrumReport:
    enclosures: tuple
    hyperbolic: bool
    stable_dim: int
    unstable_dim: int
    entropy: Interval
    center_dim: int = 0

    def to_json(self, digits: int = 12) -> dict:
        return {
            "enclosures": [e.to_json(digits) for e in self.enclosures],
            "hyperbolic": self.hyperbolic,
            "stable_dim": self.stable_dim,
            "unstable_dim": self.unstable_dim,
            "center_dim": self.center_dim,
            "entropy": self.entropy.to_json(digits),
        }


# --- real roots ------------------------------------------------------------

def _power_of_two_above(x: Fraction) -> Fraction:
    b = Fraction(1)
    while b < x:
        b *= 2
    return b


def _split_point(f, seq, a, b):
    """A point strictly inside (a, b), not a root of f, as close to the midpoint as practical."""
    m = (a + b) / 2
    if P.evaluate(f, m) != 0:
        return m, None
    # m is an exact root; move off it by a width that isolates it
    eps = (b - a) / 4
    while True:
        lo, hi = m - eps, m + eps
        if P.evaluate(f, lo) != 0 and P.evaluate(f, hi) != 0 and P.count_real_roots(f, lo, hi, seq) == 1:
            return None, (lo, m, hi)
        eps /= 2


def _integer_root_in(f, a: Fraction, b: Fraction):
    lo, hi = math.ceil(a), math.floor(b)
    if hi - lo > 4:
        return None
    for c in range(lo, hi + 1):
        if P.evaluate(f, c) == 0:
            return c
    return None


def real_root_intervals(f, tol=DEFAULT_TOL) -> list[Interval]:
    """Isolating intervals of the distinct real roots of ``f``, each of width <= tol, ascending.

    Integer roots come back as exact point intervals.  Refinement is plain
    bisection on dyadic endpoints, so a smaller ``tol`` yields nested intervals.
    """
    tol = as_fraction(tol)
    f = P.squarefree_part(f)
    if P.degree(f) <= 0:
        return []
    seq = P.sturm_sequence(f)
    B = _power_of_two_above(P.cauchy_bound(f))
    stack = [(-B, B)]
    isolated = []
    while stack:
        a, b = stack.pop()
        k = P.count_real_roots(f, a, b, seq)
        if k == 0:
            continue
        if k == 1:
            isolated.append((a, b))
            continue
        m, exact = _split_point(f, seq, a, b)
        if exact is not None:
            lo, r, hi = exact
            isolated.append((r, r))
            stack.extend([(a, lo), (hi, b)])
        else:
            stack.extend([(a, m), (m, b)])
    out = [_refine(f, a, b, tol) for a, b in isolated]
    return sorted(out, key=lambda iv: iv.lo)


def _refine(f, a, b, tol) -> Interval:
    if a == b:
        return Interval.point(a)
    # roots are in (a, b]; if b itself is the root we are done
    if P.evaluate(f, b) == 0:
        return Interval.point(b)
    fa = P.evaluate(f, a)
    checked_integers = False
    while b - a > tol:
        if not checked_integers and b - a <= 4:
            checked_integers = True
            c = _integer_root_in(f, a, b)
            if c is not None:
                return Interval.point(c)
        m = (a + b) / 2
        fm = P.evaluate(f, m)
        if fm == 0:
            return Interval.point(m)
        if (fm > 0) == (fa > 0):
            a, fa = m, fm
        else:
            b = m
    if not checked_integers:
        c = _integer_root_in(f, a, b)
        if c is not None:
            return Interval.point(c)
    return Interval(a, b)


# --- non-real roots --------------------------------------------------------

def _cmul(x, y):
    return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def _cdiv(x, y):
    d = y[0] * y[0] + y[1] * y[1]
    return ((x[0] * y[0] + x[1] * y[1]) / d, (x[1] * y[0] - x[0] * y[1]) / d)


def _ceval(f, z):
    acc = (Fraction(0), Fraction(0))
    for c in reversed(f):
        acc = _cmul(acc, z)
        acc = (acc[0] + c, acc[1])
    return acc


def _seeds(f, bits: int):
    ctx = mpmath.MPContext()
    ctx.prec = bits
    coeffs = [int(c) for c in reversed(f)]
    roots = ctx.polyroots(coeffs, maxsteps=50 + 4 * bits, extraprec=bits)
    out = []
    for r in roots:
        re = ctx.re(r)
        im = ctx.im(r)
        out.append((Fraction(*map(int, _to_rat(re))), Fraction(*map(int, _to_rat(im)))))
    return out


def _to_rat(x):
    from mpmath.libmp import to_rational
    return to_rational(x._mpf_)


def _gershgorin_pairs(f, bits: int):
    """Disk (center, radius upper bound) for each root with positive imaginary part, or None.

    ``f`` is a squarefree integer polynomial.  Returns None when the seeds at
    this precision do not yield pairwise disjoint disks.
    """
    d = P.degree(f)
    mf = [Fraction(c) / f[-1] for c in f]
    try:
        z = _seeds(f, bits)
    except mpmath.libmp.NoConvergence:
        return None
    if len(set(z)) != d:
        return None
    disks = []
    for i, zi in enumerate(z):
        denom = (Fraction(1), Fraction(0))
        for j, zj in enumerate(z):
            if j != i:
                denom = _cmul(denom, (zi[0] - zj[0], zi[1] - zj[1]))
        w = _cdiv(_ceval(mf, zi), denom)
        c = (zi[0] - w[0], zi[1] - w[1])
        r = (d - 1) * sqrt_bounds(w[0] ** 2 + w[1] ** 2, bits + 8).hi
        disks.append((c, r))
    for i in range(d):
        for j in range(i + 1, d):
            (ci, ri), (cj, rj) = disks[i], disks[j]
            dist2 = (ci[0] - cj[0]) ** 2 + (ci[1] - cj[1]) ** 2
            if dist2 <= (ri + rj) ** 2:
                return None
    return disks


def _disjoint(ivs) -> bool:
    return all(a.hi < b.lo for a, b in zip(ivs, ivs[1:]))


def complex_pair_moduli(f, tol=DEFAULT_TOL, n_real: int | None = None) -> list[Interval]:
    """Modulus enclosures, one per conjugate pair of non-real roots of squarefree ``f``.

    Enclosures are intersected across a fixed precision schedule, so a
    smaller ``tol`` gives nested intervals.
    """
    tol = as_fraction(tol)
    f = P.squarefree_part(f)
    d = P.degree(f)
    if n_real is None:
        n_real = P.count_real_roots(f)
    n_pairs = (d - n_real) // 2
    if n_pairs == 0:
        return []
    current = None
    bits = 64
    while True:
        disks = _gershgorin_pairs(f, bits)
        if disks is not None:
            upper = [(c, r) for c, r in disks if c[1] > r]
            lower = [(c, r) for c, r in disks if -c[1] > r]
            if len(upper) == n_pairs and len(lower) == n_pairs:
                mods = []
                for c, r in sorted(upper, key=lambda cr: cr[0][0] ** 2 + cr[0][1] ** 2):
                    s = sqrt_bounds(c[0] ** 2 + c[1] ** 2, bits + 8)
                    mods.append(Interval(max(s.lo - r, Fraction(0)), s.hi + r))
                if current is not None and _disjoint(current) and _disjoint(mods):
                    # sorted disjoint enclosures list the true moduli in the same order
                    current = [o.intersection(m) for o, m in zip(current, mods)]
                else:
                    current = mods
                if current and all(m.width <= tol for m in current):
                    return sorted(current, key=lambda iv: (iv.lo, iv.hi))
        bits *= 2
        if bits > 1 << 16:
            raise ArithmeticError("complex root inclusion did not converge")


# --- decomposition into enclosures ----------------------------------------

def _spectrum_by_factor(p, tol):
    """(factor, multiplicity, enclosures) for each factor of the squarefree decomposition."""
    tol = as_fraction(tol)
    if tol <= 0:
        raise ValueError("tol must be positive")
    p = P.strip(p)
    if not p:
        raise ZeroPolynomial("cannot isolate roots of the zero polynomial")
    factors = P.squarefree_decomposition(p)
    sqf = [1]
    for g, _ in factors:
        sqf = P.mul(sqf, g)
    # isolate real roots of all factors together so distinct roots get disjoint intervals
    reals = real_root_intervals(sqf, tol) if factors else []
    parts = []
    for g, i in factors:
        encl = [RootEnclosure("real", iv, i) for iv in reals if _has_root_in(g, iv)]
        n_real = len(encl)
        encl += [RootEnclosure("complex-pair", m, i) for m in complex_pair_moduli(g, tol, n_real)]
        parts.append((g, i, encl))
    return parts


def isolate_spectrum(p, tol=DEFAULT_TOL) -> list[RootEnclosure]:
    """Real roots (ascending) followed by conjugate pairs (ascending modulus)."""
    encl = [e for _, _, es in _spectrum_by_factor(p, tol) for e in es]
    reals = sorted((e for e in encl if e.kind == "real"), key=lambda e: e.interval.lo)
    pairs = sorted((e for e in encl if e.kind != "real"), key=lambda e: (e.interval.lo, e.interval.hi))
    return reals + pairs


def _has_root_in(g, iv: Interval) -> bool:
    if iv.is_point:
        return P.evaluate(g, iv.lo) == 0
    return P.count_real_roots(P.squarefree_part(g), iv.lo, iv.hi) > 0


# --- unit circle -----------------------------------------------------------

def _chebyshev_transform(g):
    """h with g(x) = x^m h(x + 1/x) for palindromic g of degree 2m."""
    d = P.degree(g)
    m = d // 2
    D_prev, D = [2], [0, 1]
    h = [g[m]]
    for k in range(1, m + 1):
        h = P.add(h, P.scale(D, g[m + k]))
        D_prev, D = D, P.sub(P.mul([0, 1], D), D_prev)
    return h


def unit_circle_root_count(p) -> int:
    """Number of distinct roots of ``p`` on the unit circle, decided exactly."""
    f = P.squarefree_part(p)
    if P.degree(f) <= 0:
        return 0
    count = 0
    for r in (1, -1):
        if P.evaluate(f, r) == 0:
            count += 1
            f = P.exquo(f, [-r, 1])
    if P.degree(f) <= 0:
        return count
    g = P.poly_gcd(f, P.reverse(f))
    if P.degree(g) <= 0:
        return count
    if g != P.primitive(P.reverse(g)) or P.degree(g) % 2:
        raise ArithmeticError("reciprocal factor is not palindromic")
    h = P.squarefree_part(_chebyshev_transform(g))
    # y = x + 1/x maps the circle onto [-2, 2]; the endpoints are x = +-1, already removed
    return count + 2 * P.count_real_roots(h, -2, 2)


def is_hyperbolic(p) -> bool:
    """True iff no root of ``p`` lies on the unit circle (and 0 is not a root)."""
    p = P.strip(p)
    if not p:
        raise ZeroPolynomial("hyperbolicity of the zero polynomial")
    if p[0] == 0:
        return False
    return unit_circle_root_count(p) == 0


# --- moduli relative to 1 --------------------------------------------------

@dataclass(frozen=True)
class _Modulus:
    interval: Interval
    count: int  # roots represented, with multiplicity
    side: int  # -1 inside, 0 on, +1 outside the unit circle


def classified_moduli(p, tol=DEFAULT_TOL) -> list[_Modulus]:
    """Moduli of all roots, each certified inside, on, or outside the unit circle.

    Roots exactly on the circle are recognized by comparing, factor by factor,
    the enclosures that still contain 1 with the exact unit-circle count.
    """
    t = as_fraction(tol)
    on_circle = None
    while True:
        parts = _spectrum_by_factor(p, t)
        if on_circle is None:
            on_circle = [unit_circle_root_count(g) for g, _, _ in parts]
        out = []
        undecided = False
        for (g, _, encl), expected in zip(parts, on_circle):
            ambiguous = sum(1 if e.kind == "real" else 2 for e in encl if e.modulus.contains(1))
            if ambiguous != expected:
                undecided = True
            for e in encl:
                m = e.modulus
                side = 0 if m.contains(1) else (1 if m.lo > 1 else -1)
                out.append(_Modulus(m, e.root_count, side))
        if not undecided:
            return out
        if t < PRECISION_FLOOR:
            raise UnitModulusUndecided("could not separate a modulus from 1")
        t /= 2 ** 16


def mahler_log_interval(p, tol=DEFAULT_TOL) -> Interval:
    """Enclosure of the logarithmic Mahler measure of a monic polynomial, width <= tol."""
    tol = as_fraction(tol)
    p = P.strip(p)
    d = max(P.degree(p), 1)
    if P.lc(p) not in (1, -1):
        base = log_interval(Interval.point(abs(Fraction(P.lc(p)))), tol / (4 * d))
    else:
        base = Interval.point(0)
    total = base
    for m in classified_moduli(p, tol / (2 * d)):
        if m.side > 0:
            total = total + log_interval(m.interval, tol / (4 * d)) * m.count
    return total


def entropy_interval(M: IntMatrix, tol=DEFAULT_TOL) -> Interval:
    """Topological entropy of the toral endomorphism induced by ``M``: sum of log|lambda| over |lambda| > 1."""
    return mahler_log_interval(charpoly(M), tol)


def spectrum_report(M: IntMatrix, tol=DEFAULT_TOL) -> SpectrumReport:
    p = charpoly(M)
    moduli = classified_moduli(p, tol)
    return SpectrumReport(
        enclosures=tuple(isolate_spectrum(p, tol)),
        hyperbolic=is_hyperbolic(p),
        stable_dim=sum(m.count for m in moduli if m.side < 0),
        unstable_dim=sum(m.count for m in moduli if m.side > 0),
        center_dim=sum(m.count for m in moduli if m.side == 0),
        entropy=entropy_interval(M, tol),
    )


# --- dominated splittings --------------------------------------------------

@dataclass(frozen=True)
class Splitting:
    """Outcome of :func:`ph_splitting`.

    ``status`` is ``"split"`` when a partially hyperbolic splitting
    E^u + E^c was certified, ``"absent"`` when every modulus is certified
    <= 1 (no expanding bundle exists), and ``"undecided"`` when the moduli
    could not be separated at the precision floor.
    """

    status: str
    unstable_dim: int = 0
    center_dim: int = 0
    hyperbolic: bool = False
    blocks: tuple = field(default_factory=tuple)

    @property
    def found(self) -> bool:
        return self.status == "split"

    def to_json(self, digits: int = 12) -> dict:
        return {
            "status": self.status,
            "unstable_dim": self.unstable_dim,
            "center_dim": self.center_dim,
            "hyperbolic": self.hyperbolic,
            "blocks": [{"hull": iv.to_json(digits), "dim": k} for iv, k in self.blocks],
        }


def _blocks(moduli):
    ms = sorted(moduli, key=lambda m: m.interval.hi, reverse=True)
    blocks = []
    for m in ms:
        if blocks and not (m.interval.hi < blocks[-1][0].lo):
            hull, k = blocks[-1]
            blocks[-1] = (Interval.hull(hull.lo, hull.hi, m.interval.lo, m.interval.hi), k + m.count)
        else:
            blocks.append((m.interval, m.count))
    return blocks


def ph_splitting(M: IntMatrix, tol=DEFAULT_TOL) -> Splitting:
    """Certified dominated splitting E^u + E^c from eigenvalue moduli."""
    p = charpoly(M)
    hyperbolic = is_hyperbolic(p)
    t = as_fraction(tol)
    try:
        while True:
            moduli = classified_moduli(p, t)
            up = [m for m in moduli if m.side > 0]
            rest = [m for m in moduli if m.side <= 0]
            if not up:
                return Splitting("absent", 0, sum(m.count for m in moduli), hyperbolic,
                                 tuple(_blocks(moduli)))
            gap = not rest or max(m.interval.hi for m in rest) < min(m.interval.lo for m in up)
            if gap:
                du = sum(m.count for m in up)
                return Splitting("split", du, sum(m.count for m in rest), hyperbolic,
                                 tuple(_blocks(moduli)))
            if t < PRECISION_FLOOR:
                return Splitting("undecided", hyperbolic=hyperbolic)
            t /= 2 ** 16
    except UnitModulusUndecided:
        return Splitting("undecided", hyperbolic=hyperbolic)


def perron_root_interval(p, tol=DEFAULT_TOL) -> Interval:
    """Enclosure of the largest real root."""
    roots = real_root_intervals(p, tol)
    if not roots:
        raise ValueError("polynomial has no real root")
    return roots[-1]
