"""Periodic orbits of toral automorphisms, scanned by denominator.

Every rational point of T^n is periodic for a hyperbolic automorphism, and
a point with denominator q stays on the finite grid (Z/q)^n.  Scanning q
therefore enumerates periodic orbits exactly, with no shadowing or metric
estimates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd
from typing import Sequence

from .errors import NotCommuting, NotHyperbolic, NotInvertibleModQ
from .exact_linalg import IntMatrix, charpoly, det, mat_pow
from .spectral import is_hyperbolic


@dataclass(frozen=True)
class RationalPoint:
    """The point coords/q mod 1 of T^n."""

    q: int
    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(int(c) % self.q for c in self.coords))


@dataclass(frozen=True)
class Orbit:
    representative: tuple  # lexicographically least point
    period: int
    points: tuple  # representative, A rep, A^2 rep, ...


@dataclass
class OrbitTable:
    q: int
    orbits: list
    n_values: dict = field(default_factory=dict)  # representative -> n(p), when a commuting map is attached

    @property
    def size(self) -> int:
        return sum(o.period for o in self.orbits)

    def to_json(self, limit: int | None = None) -> dict:
        orbits = self.orbits if limit is None else self.orbits[:limit]
        out = {
            "q": self.q,
            "orbit_count": len(self.orbits),
            "point_count": self.size,
            "truncated": limit is not None and len(self.orbits) > limit,
            "orbits": [{"representative": list(o.representative), "period": o.period} for o in orbits],
        }
        if self.n_values:
            out["n_values"] = {",".join(map(str, k)): v for k, v in self.n_values.items()}
        return out


def _require_hyperbolic(A: IntMatrix):
    if not is_hyperbolic(charpoly(A)):
        raise NotHyperbolic("matrix has an eigenvalue on the unit circle")


def count_periodic(A: IntMatrix, n: int) -> int:
    """Number of fixed points of f_A^n, |det(A^n - I)|."""
    if n < 1:
        raise ValueError("period must be positive")
    _require_hyperbolic(A)
    d = det(mat_pow(A, n) - IntMatrix.identity(A.n))
    if d == 0:
        raise NotHyperbolic(f"det(A^{n} - I) = 0")
    return abs(d)


def fixed_points_mod(M: IntMatrix, q: int) -> list[tuple]:
    """Brute force: all x in (Z/q)^n with M x = x (mod q)."""
    return [x for x in itertools.product(range(q), repeat=M.n) if M.apply_mod(x, q) == x]


def enumerate_periodic(A: IntMatrix, q: int) -> OrbitTable:
    """Partition (Z/q)^n into orbits of A."""
    if q < 1:
        raise ValueError("q must be positive")
    if gcd(det(A), q) != 1:
        raise NotInvertibleModQ(f"A is not invertible mod {q}")
    seen = set()
    orbits = []
    # product() yields points in lexicographic order, so the first unseen point is the least of its orbit
    for x in itertools.product(range(q), repeat=A.n):
        if x in seen:
            continue
        pts = [x]
        seen.add(x)
        y = A.apply_mod(x, q)
        while y != x:
            pts.append(y)
            seen.add(y)
            y = A.apply_mod(y, q)
        orbits.append(Orbit(x, len(pts), tuple(pts)))
    return OrbitTable(q, orbits)


def normalize_shift(j: int, period: int) -> int:
    """Representative of j mod period in the half-open window (-period/2, period/2]."""
    j %= period
    if 2 * j > period:
        j -= period
    return j


@dataclass
class PreservationReport:
    q_values: list
    all_preserved: bool
    first_failure: tuple | None  # (q, orbit representative, image point)
    max_abs_n: int
    detected_power: int | None
    power_verified: bool
    tables: list = field(default_factory=list)
    inconsistent: tuple | None = None  # (q, representative, n) contradicting constancy

    def to_json(self, limit: int | None = 50) -> dict:
        return {
            "q_values": self.q_values,
            "all_preserved": self.all_preserved,
            "first_failure": None if self.first_failure is None else {
                "q": self.first_failure[0], "representative": list(self.first_failure[1]),
                "image": list(self.first_failure[2])},
            "max_abs_n": self.max_abs_n,
            "detected_power": self.detected_power,
            "power_verified": self.power_verified,
            "inconsistent": None if self.inconsistent is None else {
                "q": self.inconsistent[0], "representative": list(self.inconsistent[1]),
                "n": self.inconsistent[2]},
            "tables": [t.to_json(limit) for t in self.tables],
        }


def orbit_preservation_scan(A: IntMatrix, B: IntMatrix, qmax: int) -> PreservationReport:
    """Does B map every A-orbit with denominator q <= qmax to itself, and with which shift n(p)?

    When B(p) = A^j(p) on an orbit of period pi, n(p) is j normalized into
    (-pi/2, pi/2].  If one integer k satisfies n(p) = k (mod pi(p)) on every
    scanned orbit, B agrees with A^k on all scanned points; this is re-checked
    point by point before ``power_verified`` is set.
    """
    if not A.commutes_with(B):
        raise NotCommuting("A and B do not commute")
    _require_hyperbolic(A)
    if abs(det(B)) != 1:
        raise ValueError("B must have |det| = 1")
    dAB = det(A) * det(B)
    q_values = [q for q in range(1, qmax + 1) if gcd(dAB, q) == 1]
    tables = []
    all_preserved = True
    first_failure = None
    records = []  # (q, rep, period, n)
    for q in q_values:
        table = enumerate_periodic(A, q)
        for orb in table.orbits:
            image = B.apply_mod(orb.representative, q)
            try:
                j = orb.points.index(image)
            except ValueError:
                all_preserved = False
                if first_failure is None:
                    first_failure = (q, orb.representative, image)
                continue
            n = normalize_shift(j, orb.period)
            # n(p) is constant along the orbit because B commutes with A
            for i, pt in enumerate(orb.points):
                assert B.apply_mod(pt, q) == orb.points[(i + j) % orb.period]
            table.n_values[orb.representative] = n
            records.append((q, orb.representative, orb.period, n))
        tables.append(table)
    max_abs_n = max((abs(r[3]) for r in records), default=0)

    detected = None
    verified = False
    inconsistent = None
    if all_preserved and records:
        # candidate k: the common value on orbits long enough to pin it down
        long = [r for r in records if r[2] > 2 * max_abs_n]
        candidates = sorted({r[3] for r in long}, key=lambda k: (abs(k), -k))
        if len(candidates) == 1:
            k = candidates[0]
            bad = next((r for r in records if (r[3] - k) % r[2]), None)
            if bad is None:
                detected = k
                Ak = mat_pow(A, k)
                verified = all(B.apply_mod(pt, t.q) == Ak.apply_mod(pt, t.q)
                               for t in tables for o in t.orbits for pt in o.points)
            else:
                inconsistent = (bad[0], bad[1], bad[3])
        elif len(candidates) > 1:
            k = candidates[0]
            bad = next(r for r in long if r[3] != k)
            inconsistent = (bad[0], bad[1], bad[3])
    return PreservationReport(q_values, all_preserved, first_failure, max_abs_n,
                              detected, verified, tables, inconsistent)


@dataclass(frozen=True)
class DenseWitness:
    q: int
    representative: tuple
    period: int

    def to_json(self) -> dict:
        return {"q": self.q, "representative": list(self.representative), "period": self.period}


def orbit_cells(points: Sequence[tuple], q: int, g: int) -> set:
    """Grid cells (floor(g*x/q) per coordinate) visited by a set of points."""
    return {tuple(c * g // q for c in p) for p in points}


def dense_orbit_search(A: IntMatrix, grid: int, qmax: int) -> DenseWitness | None:
    """First orbit (by q, then representative) visiting every cell of the grid^n partition of T^n."""
    if grid < 1:
        raise ValueError("grid must be positive")
    _require_hyperbolic(A)
    target = grid ** A.n
    for q in range(1, qmax + 1):
        if gcd(det(A), q) != 1:
            continue
        if q ** A.n < target:
            continue
        for orb in enumerate_periodic(A, q).orbits:
            if orb.period >= target and len(orbit_cells(orb.points, q, grid)) == target:
                return DenseWitness(q, orb.representative, orb.period)
    return None
