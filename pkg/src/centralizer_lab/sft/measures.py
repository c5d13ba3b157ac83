"""Stationary Markov measures on SFTs and their images under block codes.

Entries are exact when rational (stored as point intervals) and certified
enclosures otherwise.  Entropies of rational measures are returned as exact
combinations of logarithms of primes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..errors import NotInvertible, NotPrimitive
from ..exact_linalg import IntMatrix, adjugate_poly, charpoly
from ..intervals import Interval, as_fraction, fraction_str, log_interval
from ..spectral import DEFAULT_TOL, perron_root_interval
from .codes import SlidingBlockCode, classify_code
from .shift import Sft, build_sft, word_str


# --- exact logarithms -------------------------------------------------------

def _factor(n: int) -> dict:
    # trial division; the integers here are numerators and denominators of small measures
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass(frozen=True)
class LogCombination:
    """sum c_p log p over primes p, with rational c_p."""

    coeffs: tuple  # sorted (prime, Fraction) pairs with nonzero coefficients

    @classmethod
    def of(cls, x) -> "LogCombination":
        x = as_fraction(x)
        if x <= 0:
            raise ValueError("log of a non-positive rational")
        acc: dict = {}
        for p, e in _factor(x.numerator).items():
            acc[p] = acc.get(p, 0) + e
        for p, e in _factor(x.denominator).items():
            acc[p] = acc.get(p, 0) - e
        return cls._make(acc)

    @classmethod
    def _make(cls, acc: dict) -> "LogCombination":
        return cls(tuple(sorted((p, Fraction(c)) for p, c in acc.items() if c)))

    @classmethod
    def zero(cls) -> "LogCombination":
        return cls(())

    def __add__(self, other: "LogCombination") -> "LogCombination":
        acc = dict(self.coeffs)
        for p, c in other.coeffs:
            acc[p] = acc.get(p, 0) + c
        return self._make(acc)

    def __neg__(self):
        return LogCombination(tuple((p, -c) for p, c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def scaled(self, a) -> "LogCombination":
        a = as_fraction(a)
        return self._make({p: a * c for p, c in self.coeffs})

    def interval(self, tol=DEFAULT_TOL) -> Interval:
        acc = Interval.point(0)
        n = max(len(self.coeffs), 1)
        for p, c in self.coeffs:
            w = tol / (n * max(abs(c), 1))
            acc = acc + log_interval(Interval.point(p), w) * c
        return acc

    def to_json(self) -> dict:
        return {str(p): fraction_str(c) for p, c in self.coeffs}

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = [f"log({p})" if c == 1 else f"{fraction_str(c)}*log({p})" for p, c in self.coeffs]
        return " + ".join(terms)


# --- measures ----------------------------------------------------------------

def _iv(x) -> Interval:
    return x if isinstance(x, Interval) else Interval.point(x)


@dataclass(frozen=True)
class CylinderMeasure:
    """Stationary Markov measure: m[w] = pi(w0) P(w0,w1) ... P(w_{L-2},w_{L-1})."""

    pi: tuple
    P: tuple

    def __post_init__(self):
        object.__setattr__(self, "pi", tuple(_iv(x) for x in self.pi))
        object.__setattr__(self, "P", tuple(tuple(_iv(x) for x in row) for row in self.P))

    @property
    def k(self) -> int:
        return len(self.pi)

    @property
    def exact(self) -> bool:
        return all(x.is_point for x in self.pi) and all(x.is_point for r in self.P for x in r)

    @property
    def support(self) -> Sft:
        return build_sft([[0 if x == Interval.point(0) else 1 for x in row] for row in self.P])

    def validate(self) -> None:
        """Row sums, total mass and stationarity, exactly or up to the enclosures."""
        for row in self.P:
            if not sum(row, Interval.point(0)).contains(1):
                raise ValueError("transition rows must sum to 1")
        if not sum(self.pi, Interval.point(0)).contains(1):
            raise ValueError("stationary vector must sum to 1")
        for b in range(self.k):
            s = sum((self.pi[a] * self.P[a][b] for a in range(self.k)), Interval.point(0))
            if not s.intersects(self.pi[b]):
                raise ValueError("pi is not stationary for P")

    def weight(self, w: Sequence[int]) -> Interval:
        if not w:
            return Interval.point(1)
        acc = self.pi[w[0]]
        for a, b in zip(w, w[1:]):
            acc = acc * self.P[a][b]
        return acc

    def table(self, L: int) -> dict:
        S = self.support
        return {w: self.weight(w) for w in S.words(L)}

    def entropy(self, tol=DEFAULT_TOL):
        """-sum pi(a) P(a,b) log P(a,b): a LogCombination when exact, else an Interval."""
        if self.exact:
            acc = LogCombination.zero()
            for a in range(self.k):
                for b in range(self.k):
                    p = self.P[a][b].lo
                    if p:
                        acc = acc - LogCombination.of(p).scaled(self.pi[a].lo * p)
            return acc
        acc = Interval.point(0)
        for a in range(self.k):
            for b in range(self.k):
                p = self.P[a][b]
                if p.hi > 0:
                    acc = acc - self.pi[a] * p * log_interval(p, tol)
        return acc

    def to_json(self, digits: int = 12) -> dict:
        if self.exact:
            return {"pi": [fraction_str(x.lo) for x in self.pi],
                    "P": [[fraction_str(x.lo) for x in row] for row in self.P]}
        return {"pi": [x.to_json(digits) for x in self.pi],
                "P": [[x.to_json(digits) for x in row] for row in self.P]}

    @classmethod
    def from_json(cls, data: dict) -> "CylinderMeasure":
        m = cls(tuple(as_fraction(x) for x in data["pi"]),
                tuple(tuple(as_fraction(x) for x in row) for row in data["P"]))
        m.validate()
        return m


def bernoulli(probs: Sequence) -> CylinderMeasure:
    p = tuple(as_fraction(x) for x in probs)
    if sum(p) != 1 or any(x < 0 for x in p):
        raise ValueError("probabilities must be nonnegative and sum to 1")
    return CylinderMeasure(p, tuple(p for _ in p))


def _perron_data(W: IntMatrix, lam: Interval):
    """Right and left Perron vectors of W from adj(lam I - W), evaluated on the enclosure."""
    coeffs = adjugate_poly(W)
    n = W.n
    adj = [[Interval.point(0)] * n for _ in range(n)]
    for C in reversed(coeffs):
        adj = [[adj[i][j] * lam + C[i, j] for j in range(n)] for i in range(n)]
    # for a primitive matrix, adj(lam I - W) = v u^T with v, u > 0
    v = [adj[i][0] for i in range(n)]
    u = [adj[0][j] for j in range(n)]
    return v, u


def _markov_from_perron(W: IntMatrix, lam: Interval):
    v, u = _perron_data(W, lam)
    n = W.n
    if any(x.lo <= 0 for x in v + u):
        return None
    P = [[(v[b] * W[a, b]) / (v[a] * lam) if W[a, b] else Interval.point(0) for b in range(n)]
         for a in range(n)]
    for row in P:
        live = [b for b in range(n) if not row[b].is_point or row[b].lo]
        if len(live) == 1:
            row[live[0]] = Interval.point(1)
    uv = [u[a] * v[a] for a in range(n)]
    total = sum(uv, Interval.point(0))
    pi = [x / total for x in uv]
    return pi, P


def _equilibrium(W: IntMatrix, tol) -> CylinderMeasure:
    p = charpoly(W)
    t = Fraction(tol) / 16
    while True:
        lam = perron_root_interval(p, t)
        out = _markov_from_perron(W, lam)
        if out is not None:
            pi, P = out
            widest = max([x.width for x in pi] + [x.width for r in P for x in r])
            if widest <= tol:
                return CylinderMeasure(tuple(pi), tuple(tuple(r) for r in P))
        t /= 16


def parry_measure(S: Sft, tol=DEFAULT_TOL) -> CylinderMeasure:
    """The measure of maximal entropy of a primitive SFT."""
    if not S.primitive:
        raise NotPrimitive("Parry measure needs a primitive transition matrix")
    return _equilibrium(S.matrix, as_fraction(tol))


def rpf_equilibrium(S: Sft, weights: Sequence, tol=DEFAULT_TOL) -> CylinderMeasure:
    """Equilibrium state of the potential log weights[x_0].

    Rational weights are cleared to integers first; scaling W does not change
    the Markov measure.
    """
    if not S.primitive:
        raise NotPrimitive("equilibrium states need a primitive transition matrix")
    w = [as_fraction(x) for x in weights]
    if len(w) != S.k or any(x <= 0 for x in w):
        raise ValueError("need one positive weight per symbol")
    den = 1
    for x in w:
        den = den * x.denominator // _gcd(den, x.denominator)
    ints = [int(x * den) for x in w]
    W = IntMatrix([[ints[a] * S.T[a][b] for b in range(S.k)] for a in range(S.k)])
    return _equilibrium(W, as_fraction(tol))


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


# --- cylinder tables ----------------------------------------------------------

def push_table(table: dict, h: SlidingBlockCode) -> dict:
    """Image weights: (h_* m)[v] = sum of m[u] over words u with h(u) = v."""
    out: dict = {}
    for u, wt in table.items():
        v = h.apply(u)
        out[v] = out[v] + wt if v in out else wt
    return out


def marginal(table: dict, L: int) -> dict:
    """Weights of the central L-words of a table of longer words."""
    out: dict = {}
    for u, wt in table.items():
        d = len(u) - L
        v = u[d // 2:d // 2 + L]
        out[v] = out[v] + wt if v in out else wt
    return out


def sup_distance(a: dict, b: dict) -> Interval:
    zero = Interval.point(0)
    best = zero
    for w in set(a) | set(b):
        d = abs(a.get(w, zero) - b.get(w, zero))
        if d.hi > best.hi:
            best = Interval(max(best.lo, d.lo), d.hi)
        elif d.lo > best.lo:
            best = Interval(d.lo, best.hi)
    return best


def block_entropy(table: dict):
    """-sum m[w] log m[w] over a table of exact weights."""
    acc = LogCombination.zero()
    for wt in table.values():
        x = wt.lo
        if x:
            acc = acc - LogCombination.of(x).scaled(x)
    return acc


def _require_invertible(h: SlidingBlockCode, S: Sft):
    if classify_code(h, S).status != "invertible":
        raise NotInvertible("code is not invertible on the support of the measure")


@dataclass
class PushforwardReport:
    L: int
    source: dict
    image: dict
    preserved: bool
    distance: Interval
    entropy_source: object = None
    entropy_image: object = None

    def to_json(self, digits: int = 12) -> dict:
        def enc(x):
            return fraction_str(x.lo) if x.is_point else x.to_json(digits)

        def ent(e):
            if e is None:
                return None
            if isinstance(e, LogCombination):
                return {"exact": e.to_json(), "interval": e.interval().to_json(digits)}
            return e.to_json(digits)

        return {"L": self.L, "preserved": self.preserved,
                "distance": enc(self.distance),
                "source": {word_str(w): enc(x) for w, x in sorted(self.source.items())},
                "image": {word_str(w): enc(x) for w, x in sorted(self.image.items())},
                "entropy_source": ent(self.entropy_source),
                "entropy_image": ent(self.entropy_image)}


def _conditional_entropy(m_table_L, m_table_Lm1):
    return block_entropy(m_table_L) - block_entropy(m_table_Lm1)


def pushforward(m: CylinderMeasure, h: SlidingBlockCode, L: int, tol=DEFAULT_TOL) -> PushforwardReport:
    """Weights of h_* m on L-cylinders and whether they equal those of m.

    For exact measures the entropies reported are the L-block conditional
    entropies H_L - H_{L-1} of m and of h_* m, both exact.  For a Markov
    source this is its entropy; for the image it equals the entropy whenever
    h_* m is Markov of order below L, which holds for every radius-0 code.
    """
    if L < h.window:
        raise ValueError("cylinder length must be at least 2r+1")
    S = m.support
    _require_invertible(h, S)
    r = h.radius
    src = m.table(L)
    img = push_table(m.table(L + 2 * r), h)
    dist = sup_distance(src, img)
    if m.exact:
        preserved = dist.hi == 0
    else:
        preserved = dist.lo <= tol
    e_src = e_img = None
    if m.exact:
        if L >= 2:
            e_src = _conditional_entropy(src, marginal(src, L - 1))
            e_img = _conditional_entropy(img, marginal(img, L - 1))
        else:
            e_src, e_img = block_entropy(src), block_entropy(img)
    return PushforwardReport(L, src, img, preserved, dist, e_src, e_img)


@dataclass
class CesaroReport:
    n: int
    L: int
    average: dict
    image: dict
    distance: Interval

    def to_json(self, digits: int = 12) -> dict:
        def enc(x):
            return fraction_str(x.lo) if x.is_point else x.to_json(digits)
        return {"n": self.n, "L": self.L, "distance": enc(self.distance),
                "average": {word_str(w): enc(x) for w, x in sorted(self.average.items())},
                "image": {word_str(w): enc(x) for w, x in sorted(self.image.items())}}


def cesaro_average(m: CylinderMeasure, h: SlidingBlockCode, n: int, L: int) -> CesaroReport:
    """mu_n = (1/n) sum_{j<n} h_*^j m on L-cylinders, and its sup distance to h_* mu_n."""
    if n < 1:
        raise ValueError("n must be positive")
    if L < h.window:
        raise ValueError("cylinder length must be at least 2r+1")
    S = m.support
    _require_invertible(h, S)
    r = h.radius
    top = L + 2 * r  # mu_n is needed on (L+2r)-words to push it once more
    table = m.table(top + 2 * r * (n - 1))
    acc = marginal(table, top)
    for _ in range(n - 1):
        table = push_table(table, h)
        part = marginal(table, top)
        acc = {w: acc.get(w, Interval.point(0)) + part.get(w, Interval.point(0)) for w in set(acc) | set(part)}
    mu = {w: x / n for w, x in acc.items()}
    avg = marginal(mu, L)
    img = push_table(mu, h)
    return CesaroReport(n, L, avg, img, sup_distance(avg, img))
