"""Integer commutants, their units, and relations among commuting automorphisms."""

from __future__ import annotations

import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import polynomials as P
from .errors import ComplexSpectrumUnsupported, NotCommuting, NotHyperbolic
from .exact_linalg import (IntMatrix, adjugate_poly, charpoly, det, integer_kernel,
                           lattice_coordinates, mat_pow, solve_rational)
from .intervals import Interval, as_fraction, log_interval
from .spectral import DEFAULT_TOL, entropy_interval, is_hyperbolic, real_root_intervals

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class CommutantLattice:
    """Z-basis of {X : base X = X base}, in Hermite normal form on the n^2 entries."""

    base: IntMatrix
    basis: tuple

    @property
    def rank(self) -> int:
        return len(self.basis)

    def combine(self, coords: Sequence[int]) -> IntMatrix:
        n = self.base.n
        flat = [0] * (n * n)
        for c, X in zip(coords, self.basis):
            if c:
                for k, x in enumerate(X.flat()):
                    flat[k] += c * x
        return IntMatrix.from_flat(flat, n)

    def coordinates(self, X: IntMatrix) -> tuple | None:
        """Coordinates of X in this basis, or None when X does not commute with the base."""
        return lattice_coordinates([B.flat() for B in self.basis], X.flat())

    def contains(self, X: IntMatrix) -> bool:
        return self.coordinates(X) is not None

    def rebased(self, basis: Sequence[IntMatrix]) -> "CommutantLattice":
        """The same lattice with another Z-basis; coordinates then refer to ``basis``.

        Raises ValueError unless ``basis`` spans exactly this lattice.
        """
        basis = tuple(basis)
        if len(basis) != self.rank:
            raise ValueError("basis has the wrong size")
        coords = [self.coordinates(X) for X in basis]
        if any(c is None for c in coords) or abs(det([list(c) for c in coords])) != 1:
            raise ValueError("basis does not span the commutant lattice")
        return _RebasedLattice(self.base, basis)

    def to_json(self) -> dict:
        return {"base": self.base.to_json(), "rank": self.rank,
                "basis": [X.to_json() for X in self.basis]}


class _RebasedLattice(CommutantLattice):
    def coordinates(self, X: IntMatrix) -> tuple | None:
        c = coordinates_in(self.basis, X)
        if c is None or any(x.denominator != 1 for x in c):
            return None
        return tuple(int(x) for x in c)


def commutant_basis(A: IntMatrix) -> CommutantLattice:
    """Solve (A X - X A) = 0 over Z.

    With X flattened row-major, entry (i, j) of AX - XA is
    sum_k A[i][k] X[k][j] - X[i][k] A[k][j].
    """
    n = A.n
    rows = []
    for i in range(n):
        for j in range(n):
            row = [0] * (n * n)
            for k in range(n):
                row[k * n + j] += A[i, k]
                row[i * n + k] -= A[k, j]
            rows.append(row)
    kernel = integer_kernel(rows)
    return CommutantLattice(A, tuple(IntMatrix.from_flat(v, n) for v in kernel))


def coordinates_in(basis: Sequence[IntMatrix], X: IntMatrix) -> list[Fraction] | None:
    """Rational coordinates of X in an arbitrary (independent) family of matrices."""
    return solve_rational([B.flat() for B in basis], X.flat())


# --- units -----------------------------------------------------------------

def _units_in_slice(args):
    L, box, first = args
    out = []
    for rest in itertools.product(range(-box, box + 1), repeat=L.rank - 1):
        coords = (first,) + rest
        X = L.combine(coords)
        if abs(det(X)) == 1:
            out.append((coords, X))
    return out


def enumerate_units(L: CommutantLattice, box: int, workers: int = 1) -> list[IntMatrix]:
    """All X = sum c_i basis_i with |c_i| <= box and |det X| = 1, in lexicographic coordinate order."""
    return [X for _, X in enumerate_units_with_coordinates(L, box, workers)]


def enumerate_units_with_coordinates(L: CommutantLattice, box: int, workers: int = 1):
    if box < 1:
        raise ValueError("box must be at least 1")
    if L.rank == 0:
        return []
    jobs = [(L, box, c) for c in range(-box, box + 1)]
    if workers > 1 and L.rank > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_units_in_slice, jobs))
    else:
        chunks = [_units_in_slice(j) for j in jobs]
    found = [u for chunk in chunks for u in chunk]
    found.sort(key=lambda cu: cu[0])
    return found


# --- relations -------------------------------------------------------------

@dataclass(frozen=True)
class RelationCertificate:
    """Outcome of a relation search or of the ratio-independence test.

    ``kind`` is one of ``found-relation``, ``independence-certificate`` and
    ``inconclusive``; only the independence certificate proves that no
    relation exists.
    """

    kind: str
    exponents: tuple | None = None
    ratio_enclosures: tuple = ()
    eigenvalue_pairs: tuple = ()
    notes: tuple = field(default_factory=tuple)

    @property
    def found(self) -> bool:
        return self.kind == "found-relation"

    def to_json(self, digits: int = 12) -> dict:
        out = {"kind": self.kind}
        if self.exponents is not None:
            out["exponents"] = list(self.exponents)
        if self.ratio_enclosures:
            out["ratio_enclosures"] = [r.to_json(digits) for r in self.ratio_enclosures]
        if self.eigenvalue_pairs:
            out["eigenvalue_pairs"] = [{"a": a.to_json(digits), "b": b.to_json(digits)}
                                       for a, b in self.eigenvalue_pairs]
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def _require_commuting(mats):
    for X, Y in itertools.combinations(mats, 2):
        if not X.commutes_with(Y):
            raise NotCommuting("matrices do not commute")


def find_power_relations(A: IntMatrix, B: IntMatrix, max_exp: int,
                         tol=DEFAULT_TOL) -> RelationCertificate:
    """Search 0 < |n|, |m| <= max_exp for A^n = B^m.

    Pairs whose entropies cannot match (|n| h(A) vs |m| h(B)) are skipped
    without multiplying matrices.  Since A^n = B^m iff A^-n = B^-m, only
    n > 0 is scanned.
    """
    _require_commuting([A, B])
    tol = as_fraction(tol)
    hA, hB = entropy_interval(A, tol), entropy_interval(B, tol)
    A_pows = {n: mat_pow(A, n) for n in range(1, max_exp + 1)}
    B_pows = {}
    order = sorted(((n, m) for n in range(1, max_exp + 1)
                    for m in range(-max_exp, max_exp + 1) if m),
                   key=lambda nm: (max(nm[0], abs(nm[1])), nm[0], abs(nm[1]), -nm[1]))
    for n, m in order:
        if not (hA * n).intersects(hB * abs(m)):
            continue
        if m not in B_pows:
            B_pows[m] = mat_pow(B, m)
        if A_pows[n] == B_pows[m]:
            return RelationCertificate("found-relation", (n, m))
    return RelationCertificate("inconclusive", notes=(f"no relation with exponents up to {max_exp}",))


def find_identity_relations(mats: Sequence[IntMatrix], max_exp: int) -> RelationCertificate:
    """First exponent tuple e (graded, then lexicographic) with prod mats[i]^e[i] = I.

    Tuples and their negatives give the same relation, so only tuples whose
    first nonzero entry is positive are scanned.
    """
    mats = list(mats)
    _require_commuting(mats)
    for X in mats:
        if abs(det(X)) != 1:
            raise ValueError("every matrix must have |det| = 1")
    n = mats[0].n
    I = IntMatrix.identity(n)
    powers = [{e: mat_pow(X, e) for e in range(-max_exp, max_exp + 1)} for X in mats]
    k = len(mats)
    for grade in range(1, k * max_exp + 1):
        candidates = []
        for e in itertools.product(range(-max_exp, max_exp + 1), repeat=k):
            if sum(abs(x) for x in e) != grade:
                continue
            first = next(x for x in e if x)
            if first > 0:
                candidates.append(e)
        for e in sorted(candidates):
            M = I
            for X, x in zip(powers, e):
                if x:
                    M = M @ X[x]
            if M == I:
                return RelationCertificate("found-relation", tuple(e))
    return RelationCertificate("inconclusive", notes=(f"no relation with exponents up to {max_exp}",))


def polynomial_representation(A: IntMatrix, B: IntMatrix) -> list[Fraction] | None:
    """Coefficients q with B = q(A), deg q < n, or None when B is not in Q[A]."""
    n = A.n
    pows = [mat_pow(A, k) for k in range(n)]
    return coordinates_in(pows, B)


def _eigenvector_residual_contains_zero(A: IntMatrix, B: IntMatrix, lam: Interval, mu: Interval) -> bool:
    """Interval check that (B - mu I) v(lam) can vanish for the eigenvector v(lam) of A.

    v(lam) is a nonzero column of adj(lam I - A), a polynomial vector in lam.
    """
    n = A.n
    terms = adjugate_poly(A)  # adj(xI - A) = sum_k terms[k] x^k
    best = None
    for col in range(n):
        v = []
        for i in range(n):
            coeffs = [T[i, col] for T in terms]
            v.append(P.evaluate(coeffs, lam))
        if any(not x.contains(0) for x in v):
            best = v
            break
    if best is None:
        return False
    for i in range(n):
        r = sum((v_j * B[i, j] for j, v_j in enumerate(best)), Interval.point(0)) - mu * best[i]
        if not r.contains(0):
            return False
    return True


def certify_independence(A: IntMatrix, B: IntMatrix, tol=DEFAULT_TOL) -> RelationCertificate:
    """Prove that A^n = B^m has no solution with nm != 0, when possible.

    Requires A to have simple real spectrum.  Then B = q(A) for a rational
    polynomial q, the eigenvalue of B on the eigenline of lambda_i is
    mu_i = q(lambda_i), and A^n = B^m would force every ratio
    log|mu_i| / log|lambda_i| to equal n/m.  Two certified distinct ratios
    therefore rule out every relation.
    """
    _require_commuting([A, B])
    tol = as_fraction(tol)
    pA, pB = charpoly(A), charpoly(B)
    if not is_hyperbolic(pA) or not is_hyperbolic(pB):
        raise NotHyperbolic("both matrices must be hyperbolic")
    sqf = P.squarefree_part(pA)
    if P.degree(sqf) != A.n or P.count_real_roots(sqf) != A.n:
        raise ComplexSpectrumUnsupported("requires a simple, real spectrum for A")
    q = polynomial_representation(A, B)
    if q is None:
        raise ArithmeticError("B commutes with A but is not a polynomial in A")

    t = tol / 64
    while True:
        lams = real_root_intervals(pA, t)
        mus_B = real_root_intervals(pB, t)
        pairs, ratios = [], []
        ok = True
        for lam in lams:
            mu = P.evaluate(q, lam)
            # mu must be one certified eigenvalue of B, on the same eigenline
            hits = [m for m in mus_B if m.intersects(mu)]
            if len(hits) != 1 or not _eigenvector_residual_contains_zero(A, B, lam, mu):
                ok = False
                break
            mu = mu.intersection(hits[0])
            la, ma = abs(lam), abs(mu)
            if la.contains(1) or ma.contains(1) or ma.contains(0):
                ok = False
                break
            ratio = log_interval(ma, t) / log_interval(la, t)
            pairs.append((lam, mu))
            ratios.append(ratio)
        if ok and all(r.width <= tol for r in ratios):
            break
        if t < Fraction(1, 2 ** 200):
            return RelationCertificate("inconclusive", notes=("eigenvalue matching failed",))
        t /= 2 ** 8
    disjoint = all(not r.intersects(s) for r, s in itertools.combinations(ratios, 2))
    kind = "independence-certificate" if disjoint else "inconclusive"
    return RelationCertificate(kind, ratio_enclosures=tuple(ratios), eigenvalue_pairs=tuple(pairs))


# --- entropy set -----------------------------------------------------------

@dataclass(frozen=True)
class EntropySet:
    entries: tuple  # (matrix, coordinates, entropy interval), sorted by entropy midpoint
    base_entropy: Interval
    step_fits: tuple  # (k, fits) for steps h/k, k = 1..4
    step_divisor: int | None  # least k with all entropies on the lattice of h/k

    @property
    def values(self) -> list[Interval]:
        return [h for _, _, h in self.entries]

    def distinct_values(self, tol) -> list[Interval]:
        tol = as_fraction(tol)
        out = []
        for h in self.values:
            if not out or not h.widen(tol).intersects(out[-1]):
                out.append(h)
        return out

    def to_json(self, digits: int = 12) -> dict:
        return {
            "base_entropy": self.base_entropy.to_json(digits),
            "units": [{"matrix": X.to_json(), "coordinates": list(c), "entropy": h.to_json(digits)}
                      for X, c, h in self.entries],
            "step_fits": {str(k): fits for k, fits in self.step_fits},
            "step_divisor": self.step_divisor,
        }


def entropy_set(A: IntMatrix, box: int, tol=DEFAULT_TOL, workers: int = 1,
                lattice: CommutantLattice | None = None) -> EntropySet:
    """Entropies of the units of the commutant lattice inside a coordinate box.

    The box refers to coordinates in ``lattice`` (default: the canonical basis).
    """
    tol = as_fraction(tol)
    if abs(det(A)) != 1 or not is_hyperbolic(charpoly(A)):
        raise NotHyperbolic("entropy_set needs a hyperbolic matrix with |det| = 1")
    L = lattice if lattice is not None else commutant_basis(A)
    units = enumerate_units_with_coordinates(L, box, workers)
    h = entropy_interval(A, tol / 8)
    cache = {}
    entries = []
    for coords, X in units:
        key = tuple(charpoly(X))
        if key not in cache:
            cache[key] = entropy_interval(X, tol / 8)
        entries.append((X, coords, cache[key]))
    entries.sort(key=lambda e: (e[2].mid, e[1]))
    fits = []
    for k in range(1, 5):
        step = h / k
        ok = True
        for _, _, e in entries:
            n = round(e.mid / step.mid)
            if n < 0 or not (step * n).widen(tol).intersects(e):
                ok = False
                break
        fits.append((k, ok))
    divisor = next((k for k, ok in fits if ok), None)
    return EntropySet(tuple(entries), h, tuple(fits), divisor)
