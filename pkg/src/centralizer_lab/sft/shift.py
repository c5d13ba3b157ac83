"""Vertex shifts of finite type: pruning, primitivity, entropy, periodic words."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from ..errors import EmptySubshift, NotPrimitive
from ..exact_linalg import IntMatrix, charpoly, mat_pow
from ..intervals import Interval, log_interval
from ..spectral import DEFAULT_TOL, perron_root_interval

_DIGITS = "0123456789abcdefghijklmnopqrstuvwxyz"


def word_str(w: Sequence[int]) -> str:
    return "".join(_DIGITS[a] for a in w)


def parse_word(s: str) -> tuple:
    return tuple(_DIGITS.index(c) for c in s.strip().lower())


@dataclass(frozen=True)
class Sft:
    """The vertex shift on symbols 0..k-1 with transition matrix T.

    ``labels`` records which rows of the matrix handed to ``build_sft``
    survived pruning.
    """

    T: tuple
    labels: tuple

    @property
    def k(self) -> int:
        return len(self.T)

    @property
    def matrix(self) -> IntMatrix:
        return IntMatrix(self.T)

    def allowed(self, a: int, b: int) -> bool:
        return self.T[a][b] == 1

    def is_word(self, w: Sequence[int]) -> bool:
        return all(self.T[a][b] for a, b in zip(w, w[1:]))

    def words(self, length: int) -> Iterator[tuple]:
        """Allowed words of a given length in lexicographic order."""
        if length <= 0:
            yield ()
            return
        stack = [(a,) for a in reversed(range(self.k))]
        while stack:
            w = stack.pop()
            if len(w) == length:
                yield w
                continue
            last = w[-1]
            for b in reversed(range(self.k)):
                if self.T[last][b]:
                    stack.append(w + (b,))

    def word_count(self, length: int) -> int:
        if length <= 0:
            return 1
        row = [1] * self.k
        for _ in range(length - 1):
            row = [sum(row[a] for a in range(self.k) if self.T[a][b]) for b in range(self.k)]
        return sum(row)

    @property
    def irreducible(self) -> bool:
        return all(_reachable(self.T, a) == set(range(self.k)) for a in range(self.k))

    @property
    def primitivity_index(self) -> int | None:
        """Least t with T^t > 0 entrywise, or None.  Wielandt bounds t by (k-1)^2 + 1."""
        k = self.k
        bound = (k - 1) ** 2 + 1
        P = [row[:] for row in self.T]
        for t in range(1, bound + 1):
            if all(all(row) for row in P):
                return t
            P = [[1 if any(P[i][m] and self.T[m][j] for m in range(k)) else 0 for j in range(k)]
                 for i in range(k)]
        return None

    @property
    def primitive(self) -> bool:
        return self.primitivity_index is not None

    def to_json(self) -> dict:
        return {"k": self.k, "T": [list(r) for r in self.T], "labels": list(self.labels)}


def _reachable(T, a) -> set:
    seen = {a}
    todo = [a]
    while todo:
        x = todo.pop()
        for y, e in enumerate(T[x]):
            if e and y not in seen:
                seen.add(y)
                todo.append(y)
    reach = {y for x in seen for y, e in enumerate(T[x]) if e}
    return reach


def build_sft(T: Sequence[Sequence[int]]) -> Sft:
    """Prune symbols with no successor or no predecessor until none remain."""
    rows = [list(map(int, r)) for r in T]
    k = len(rows)
    if any(len(r) != k for r in rows) or any(x not in (0, 1) for r in rows for x in r):
        raise ValueError("transition matrix must be square with 0/1 entries")
    alive = list(range(k))
    while True:
        keep = [a for a in alive
                if any(rows[a][b] for b in alive) and any(rows[b][a] for b in alive)]
        if keep == alive:
            break
        alive = keep
    if not alive:
        raise EmptySubshift("no bi-infinite sequence is allowed")
    return Sft(tuple(tuple(rows[a][b] for b in alive) for a in alive), tuple(alive))


def full_shift(k: int) -> Sft:
    return build_sft([[1] * k for _ in range(k)])


def golden_mean_shift() -> Sft:
    return build_sft([[1, 1], [1, 0]])


def gluing_constant(S: Sft) -> int:
    """Uniform gap for gluing admissible words: the primitivity index."""
    t = S.primitivity_index
    if t is None:
        raise NotPrimitive("transition matrix is not primitive")
    return t


def perron_root(S: Sft, tol=DEFAULT_TOL) -> Interval:
    return perron_root_interval(charpoly(S.matrix), tol)


def sft_entropy(S: Sft, tol=DEFAULT_TOL) -> Interval:
    """Enclosure of log of the Perron root, of width at most tol."""
    if not S.irreducible:
        raise NotPrimitive("entropy via the Perron root needs an irreducible shift")
    t = tol
    while True:
        lam = perron_root(S, t)
        h = log_interval(lam, tol)
        if h.width <= tol:
            return h
        t /= 4


# --- periodic words -------------------------------------------------------

def _is_least_rotation(w: tuple) -> bool:
    """True when w is strictly smaller than each nontrivial rotation (a Lyndon word)."""
    return all(w < w[i:] + w[:i] for i in range(1, len(w)))


def _closed_paths(S: Sft, n: int, start: int) -> Iterator[tuple]:
    for w in _paths_from(S, start, n):
        if S.T[w[-1]][w[0]]:
            yield w


def _paths_from(S: Sft, start: int, n: int) -> Iterator[tuple]:
    stack = [(start,)]
    while stack:
        w = stack.pop()
        if len(w) == n:
            yield w
            continue
        for b in reversed(range(S.k)):
            # a Lyndon word never uses a symbol below its first one
            if b >= start and S.T[w[-1]][b]:
                stack.append(w + (b,))


@dataclass(frozen=True)
class PeriodicWord:
    word: tuple  # least rotation of one period
    period: int

    def __str__(self):
        return "(" + word_str(self.word) + ")"


def enumerate_periodic_words(S: Sft, N: int) -> list[PeriodicWord]:
    """Shift orbits of prime period <= N, ordered by period, then word.

    Point counts are checked against trace(T^n) for every n <= N.
    """
    if N < 1:
        raise ValueError("maximal period must be positive")
    orbits = []
    for n in range(1, N + 1):
        found = [w for a in range(S.k) for w in _closed_paths(S, n, a) if _is_least_rotation(w)]
        orbits.extend(PeriodicWord(w, n) for w in sorted(found))
    for n in range(1, N + 1):
        points = sum(o.period for o in orbits if n % o.period == 0)
        trace = mat_pow(S.matrix, n).trace()
        if points != trace:
            raise AssertionError(f"period-{n} count {points} disagrees with trace {trace}")
    return orbits


def rotate(w: tuple, j: int) -> tuple:
    """sigma^j of a periodic sequence given by one period w."""
    j %= len(w)
    return w[j:] + w[:j]
