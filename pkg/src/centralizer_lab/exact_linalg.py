"""Exact integer matrix arithmetic.

Python integers are arbitrary precision, so nothing here ever rounds or
overflows.  Matrices are immutable; every operation returns a new object.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import NonUnimodularInverse

JSON_SAFE_INT = 2 ** 53


@dataclass(frozen=True)
class IntMatrix:
    """Square integer matrix, stored row-major as a tuple of tuples."""

    entries: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.entries)
        if not rows:
            raise ValueError("matrix dimension must be at least 1")
        n = len(rows)
        if any(len(row) != n for row in rows):
            raise ValueError("matrix must be square")
        object.__setattr__(self, "entries", rows)

    @property
    def n(self) -> int:
        return len(self.entries)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def zero(cls, n: int) -> "IntMatrix":
        return cls(tuple((0,) * n for _ in range(n)))

    @classmethod
    def diag(cls, values: Sequence[int]) -> "IntMatrix":
        n = len(values)
        return cls(tuple(tuple(values[i] if i == j else 0 for j in range(n)) for i in range(n)))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def rows(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def flat(self) -> tuple:
        return tuple(x for row in self.entries for x in row)

    @classmethod
    def from_flat(cls, values: Sequence[int], n: int) -> "IntMatrix":
        return cls(tuple(tuple(values[i * n:(i + 1) * n]) for i in range(n)))

    def transpose(self) -> "IntMatrix":
        return IntMatrix(tuple(zip(*self.entries)))

    def trace(self) -> int:
        return sum(self.entries[i][i] for i in range(self.n))

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        return IntMatrix(tuple(tuple(a + b for a, b in zip(r, s))
                               for r, s in zip(self.entries, other.entries)))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return IntMatrix(tuple(tuple(a - b for a, b in zip(r, s))
                               for r, s in zip(self.entries, other.entries)))

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(tuple(tuple(-a for a in r) for r in self.entries))

    def scaled(self, c: int) -> "IntMatrix":
        return IntMatrix(tuple(tuple(c * a for a in r) for r in self.entries))

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            cols = list(zip(*other.entries))
            return IntMatrix(tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols)
                                   for r in self.entries))
        # matrix times vector
        return tuple(sum(a * b for a, b in zip(r, other)) for r in self.entries)

    def apply_mod(self, v: Sequence[int], q: int) -> tuple:
        return tuple(sum(a * b for a, b in zip(r, v)) % q for r in self.entries)

    def commutes_with(self, other: "IntMatrix") -> bool:
        return self @ other == other @ self

    def to_json(self) -> dict:
        return {"n": self.n, "entries": [[json_int(x) for x in row] for row in self.entries]}

    @classmethod
    def from_json(cls, data) -> "IntMatrix":
        if isinstance(data, dict):
            entries = data["entries"]
            m = cls(tuple(tuple(int(x) for x in row) for row in entries))
            if "n" in data and int(data["n"]) != m.n:
                raise ValueError(f"declared n={data['n']} does not match entries ({m.n})")
            return m
        return cls(tuple(tuple(int(x) for x in row) for row in data))

    def __str__(self):
        width = max(len(str(x)) for x in self.flat())
        return "\n".join("[" + " ".join(str(x).rjust(width) for x in row) + "]" for row in self.entries)


def json_int(x: int):
    """JSON-safe integer: decimal string once the value leaves the double-exact range."""
    return x if abs(x) <= JSON_SAFE_INT else str(x)


def identity(n: int) -> IntMatrix:
    return IntMatrix.identity(n)


def det(M: IntMatrix | Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free elimination; every intermediate division is exact."""
    a = [list(r) for r in (M.entries if isinstance(M, IntMatrix) else M)]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _faddeev_leverrier(M: IntMatrix):
    """Coefficients of det(xI - M) and the matrices N_k with adj(xI - M) = sum N_k x^(n-1-k)."""
    n = M.n
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    N = IntMatrix.identity(n)
    adj_terms = [N]
    for k in range(1, n + 1):
        MN = M @ N
        tr = MN.trace()
        if tr % k:
            raise ArithmeticError("non-integral Faddeev-LeVerrier step")
        c = -tr // k
        coeffs[n - k] = c
        if k < n:
            N = MN + IntMatrix.identity(n).scaled(c)
            adj_terms.append(N)
    return coeffs, adj_terms


def charpoly(M: IntMatrix) -> list[int]:
    """Monic det(xI - M), constant term first.

    Note the sign convention: this is (-1)^n times det(M - xI).
    """
    return _faddeev_leverrier(M)[0]


def adjugate_poly(M: IntMatrix) -> list[IntMatrix]:
    """Matrix coefficients of adj(xI - M), constant term first."""
    return list(reversed(_faddeev_leverrier(M)[1]))


def adjugate(M: IntMatrix) -> IntMatrix:
    """adj(M), so that M @ adj(M) = det(M) I."""
    n = M.n
    terms = _faddeev_leverrier(M)[1]
    # adj(-M) = N_{n-1} (x = 0), and adj(-M) = (-1)^(n-1) adj(M)
    return terms[n - 1].scaled((-1) ** (n - 1))


def poly_of_matrix(coeffs: Sequence[int], M: IntMatrix) -> IntMatrix:
    """sum c_k M^k by Horner's rule."""
    n = M.n
    acc = IntMatrix.zero(n)
    I = IntMatrix.identity(n)
    for c in reversed(list(coeffs)):
        acc = acc @ M + I.scaled(c)
    return acc


def mat_pow(M: IntMatrix, k: int) -> IntMatrix:
    """Exact M^k; negative k needs |det M| = 1."""
    if k < 0:
        d = det(M)
        if abs(d) != 1:
            raise NonUnimodularInverse(f"det = {d}; inverse is not integral")
        M = adjugate(M).scaled(d)  # d = +-1 so 1/d = d
        k = -k
    result = IntMatrix.identity(M.n)
    base = M
    while k:
        if k & 1:
            result = result @ base
        k >>= 1
        if k:
            base = base @ base
    return result


def inverse(M: IntMatrix) -> IntMatrix:
    return mat_pow(M, -1)


# --- lattices: Hermite and Smith normal forms ------------------------------

def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def hermite_normal_form(rows: Iterable[Sequence[int]]) -> list[list[int]]:
    """Row-style HNF of the lattice spanned by ``rows``.

    Nonzero rows only, pivots strictly increasing left to right and positive,
    entries above each pivot reduced into [0, pivot).  The result depends only
    on the lattice, which makes it a canonical basis.
    """
    a = [list(r) for r in rows if any(r)]
    if not a:
        return []
    ncols = len(a[0])
    r = 0
    for c in range(ncols):
        if r >= len(a):
            break
        # gcd-combine column c of rows r.. into row r
        for i in range(r + 1, len(a)):
            if a[i][c] == 0:
                continue
            g, x, y = _ext_gcd(a[r][c], a[i][c])
            p, q = a[r][c] // g, a[i][c] // g
            row_r = [x * u + y * v for u, v in zip(a[r], a[i])]
            row_i = [-q * u + p * v for u, v in zip(a[r], a[i])]
            a[r], a[i] = row_r, row_i
        if a[r][c] == 0:
            continue
        if a[r][c] < 0:
            a[r] = [-u for u in a[r]]
        piv = a[r][c]
        for i in range(r):
            f = a[i][c] // piv
            if f:
                a[i] = [u - f * v for u, v in zip(a[i], a[r])]
        r += 1
    return [row for row in a[:r] if any(row)]


@dataclass(frozen=True)
class SnfDecomposition:
    """U @ M @ V = D with U, V unimodular and d_1 | d_2 | ... on the diagonal."""

    U: tuple
    D: tuple
    V: tuple

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i][i] for i in range(min(len(self.D), len(self.D[0]) if self.D else 0))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


def _matmul(a, b):
    cols = list(zip(*b))
    return [[sum(x * y for x, y in zip(r, c)) for c in cols] for r in a]


def smith_normal_form(M: Sequence[Sequence[int]]) -> SnfDecomposition:
    """Smith normal form of a (possibly rectangular) integer matrix."""
    A = [list(r) for r in (M.entries if isinstance(M, IntMatrix) else M)]
    m = len(A)
    n = len(A[0]) if m else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def row_op(i, j, x, y, z, w):
        # rows (i, j) <- (x*ri + y*rj, z*ri + w*rj), determinant x*w - y*z = +-1
        for T in (A, U):
            ri, rj = T[i], T[j]
            T[i] = [x * a + y * b for a, b in zip(ri, rj)]
            T[j] = [z * a + w * b for a, b in zip(ri, rj)]

    def col_op(i, j, x, y, z, w):
        for T in (A, V):
            for row in T:
                a, b = row[i], row[j]
                row[i] = x * a + y * b
                row[j] = z * a + w * b

    for t in range(min(m, n)):
        # choose the smallest nonzero entry of the remaining block as pivot
        nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not nz:
            break
        _, pi, pj = min(nz)
        if pi != t:
            row_op(t, pi, 0, 1, 1, 0)
        if pj != t:
            col_op(t, pj, 0, 1, 1, 0)
        while True:
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    if A[i][t] % A[t][t] == 0:
                        row_op(t, i, 1, 0, -(A[i][t] // A[t][t]), 1)
                    else:
                        # strictly shrinks |pivot|, so this loop terminates
                        g, x, y = _ext_gcd(A[t][t], A[i][t])
                        p, q = A[t][t] // g, A[i][t] // g
                        row_op(t, i, x, y, -q, p)
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    if A[t][j] % A[t][t] == 0:
                        col_op(t, j, 1, 0, -(A[t][j] // A[t][t]), 1)
                    else:
                        g, x, y = _ext_gcd(A[t][t], A[t][j])
                        p, q = A[t][t] // g, A[t][j] // g
                        col_op(t, j, x, y, -q, p)
                        done = False
            if not done:
                continue
            # divisibility: fold any entry not divisible by the pivot into row t
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if A[i][j] % A[t][t]), None)
            if bad is None:
                break
            row_op(t, bad[0], 1, 1, 0, 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
    return SnfDecomposition(tuple(map(tuple, U)), tuple(map(tuple, A)), tuple(map(tuple, V)))


def integer_kernel(M: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Canonical basis of {x in Z^k : M x = 0}, possibly empty.

    Computed from the Smith form (the columns of V past the rank span the
    kernel) and then put in Hermite normal form so the output is unique.
    """
    rows = [list(r) for r in (M.entries if isinstance(M, IntMatrix) else M)]
    if not rows:
        return []
    k = len(rows[0])
    snf = smith_normal_form(rows)
    r = snf.rank
    V = snf.V
    basis = [[V[i][j] for i in range(k)] for j in range(r, k)]
    return [tuple(v) for v in hermite_normal_form(basis)]


def lattice_coordinates(basis: Sequence[Sequence[int]], v: Sequence[int]) -> tuple[int, ...] | None:
    """Integer coordinates of ``v`` in a HNF basis, or None if ``v`` is not in the lattice."""
    coords = []
    rest = list(v)
    for row in basis:
        c = next(j for j, x in enumerate(row) if x)
        q, rmd = divmod(rest[c], row[c])
        if rmd:
            return None
        coords.append(q)
        if q:
            rest = [a - q * b for a, b in zip(rest, row)]
    if any(rest):
        return None
    return tuple(coords)


def solve_rational(columns: Sequence[Sequence], target: Sequence) -> list[Fraction] | None:
    """Solve sum c_j columns[j] = target over Q; None if inconsistent.  Columns must be independent."""
    m = len(target)
    k = len(columns)
    aug = [[Fraction(columns[j][i]) for j in range(k)] + [Fraction(target[i])] for i in range(m)]
    piv_cols = []
    r = 0
    for c in range(k):
        p = next((i for i in range(r, m) if aug[i][c] != 0), None)
        if p is None:
            continue
        aug[r], aug[p] = aug[p], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        piv_cols.append(c)
        r += 1
    if any(aug[i][k] != 0 for i in range(r, m)):
        return None
    sol = [Fraction(0)] * k
    for i, c in enumerate(piv_cols):
        sol[c] = aug[i][k]
    return sol
