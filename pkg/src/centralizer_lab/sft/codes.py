"""Sliding block codes on an SFT: automorphism search and the orbit-preservation criterion."""

from __future__ import annotations

import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from ..errors import NotInvertible, RadiusTooLarge
from .shift import PeriodicWord, Sft, enumerate_periodic_words, parse_word, rotate, word_str

log = logging.getLogger(__name__)

MAX_RULES = 1 << 20


@dataclass(frozen=True)
class SlidingBlockCode:
    """(h x)_i = rule[x_{i-r} ... x_{i+r}], with the rule given on allowed (2r+1)-words."""

    radius: int
    rule: dict = field(hash=False, compare=False)
    _key: tuple = field(default=(), repr=False)

    def __post_init__(self):
        if self.radius < 0:
            raise ValueError("radius must be nonnegative")
        items = tuple(sorted((tuple(w), int(s)) for w, s in self.rule.items()))
        if any(len(w) != 2 * self.radius + 1 for w, _ in items):
            raise ValueError("rule words must have length 2r+1")
        object.__setattr__(self, "rule", dict(items))
        object.__setattr__(self, "_key", (self.radius, items))

    @property
    def window(self) -> int:
        return 2 * self.radius + 1

    def apply(self, w: Sequence[int]) -> tuple:
        """Image of a finite word; the result is 2r symbols shorter."""
        m = self.window
        return tuple(self.rule[tuple(w[i:i + m])] for i in range(len(w) - m + 1))

    def apply_periodic(self, w: tuple) -> tuple:
        """Image of the periodic sequence with period w, as one period."""
        r, p = self.radius, len(w)
        ext = tuple(w[(i - r) % p] for i in range(p + 2 * r))
        return self.apply(ext)

    def outputs(self, S: Sft) -> tuple:
        """Rule values listed in lexicographic order of the allowed windows."""
        return tuple(self.rule[w] for w in S.words(self.window))

    def widened(self, R: int) -> "SlidingBlockCode":
        """The same map written with a larger radius R, on all words of the full shift."""
        if R < self.radius:
            raise ValueError("cannot shrink the radius")
        d = R - self.radius
        k = 1 + max(max(w) for w in self.rule) if self.rule else 1
        k = max(k, 1 + max(self.rule.values(), default=0))
        rule = {}
        for w in itertools.product(range(k), repeat=2 * R + 1):
            core = w[d:len(w) - d]
            if core in self.rule:
                rule[w] = self.rule[core]
        return SlidingBlockCode(R, rule)

    def restricted(self, S: Sft) -> "SlidingBlockCode":
        return SlidingBlockCode(self.radius, {w: self.rule[w] for w in S.words(self.window)})

    def equals_on(self, other: "SlidingBlockCode", S: Sft) -> bool:
        """Same map on S, compared after normalizing both to a common radius."""
        R = max(self.radius, other.radius)
        a, b = self, other
        for w in S.words(2 * R + 1):
            if a.apply(w[R - a.radius:len(w) - (R - a.radius)]) != b.apply(w[R - b.radius:len(w) - (R - b.radius)]):
                return False
        return True

    def compose(self, inner: "SlidingBlockCode", S: Sft) -> "SlidingBlockCode":
        """self after inner, on allowed words of S."""
        R = self.radius + inner.radius
        return SlidingBlockCode(R, {w: self.apply(inner.apply(w))[0] for w in S.words(2 * R + 1)})

    def maps_into(self, S: Sft) -> bool:
        """Images of allowed (2r+2)-words are allowed 2-words; this suffices for h(S) in S."""
        try:
            return all(S.is_word(self.apply(w)) for w in S.words(self.window + 1))
        except KeyError:
            return False

    def to_json(self) -> dict:
        return {"radius": self.radius, "rule": {word_str(w): str(s) for w, s in sorted(self.rule.items())}}

    @classmethod
    def from_json(cls, data: dict) -> "SlidingBlockCode":
        return cls(int(data["radius"]), {parse_word(w): int(s) for w, s in data["rule"].items()})

    def __str__(self):
        return f"r={self.radius} " + " ".join(f"{word_str(w)}->{s}" for w, s in sorted(self.rule.items()))


def identity_code(S: Sft) -> SlidingBlockCode:
    return SlidingBlockCode(0, {(a,): a for a in range(S.k)})


def shift_power(S: Sft, k: int, radius: int | None = None) -> SlidingBlockCode:
    """sigma^k, (sigma^k x)_i = x_{i+k}."""
    r = abs(k) if radius is None else radius
    if r < abs(k):
        raise ValueError("radius too small for this power")
    return SlidingBlockCode(r, {w: w[r + k] for w in S.words(2 * r + 1)})


def symbol_map(S: Sft, images: Sequence[int]) -> SlidingBlockCode:
    return SlidingBlockCode(0, {(a,): int(images[a]) for a in range(S.k)})


# --- invertibility ----------------------------------------------------------

@dataclass(frozen=True)
class CodeStatus:
    """``invertible`` (with inverse), ``not_into``, ``not_injective`` (with a
    colliding pair of periodic words), ``not_surjective`` (with a missed word)
    or ``undecided_at_budget``."""

    status: str
    inverse: SlidingBlockCode | None = None
    witness: tuple = ()


def _periodic_collision(h: SlidingBlockCode, S: Sft, max_period: int):
    for p in range(1, max_period + 1):
        seen = {}
        for w in S.words(p):
            if not S.T[w[-1]][w[0]]:
                continue
            img = h.apply_periodic(w)
            if img in seen:
                return seen[img], w
            seen[img] = w
    return None


def classify_code(h: SlidingBlockCode, S: Sft, inverse_radius: int | None = None) -> CodeStatus:
    """Decide bijectivity of h on S, searching inverses up to a radius budget.

    A missing image word proves non-surjectivity: in a pruned SFT every
    allowed word occurs in some point.  Two periodic points with one image
    prove non-injectivity.
    """
    r = h.radius
    R = 3 * r + 1 if inverse_radius is None else inverse_radius
    if not h.maps_into(S):
        return CodeStatus("not_into")
    collision = _periodic_collision(h, S, 2 * r + 2)
    if collision:
        return CodeStatus("not_injective", witness=collision)
    for s in range(R + 1):
        m = 2 * (r + s) + 1
        g = {}
        conflict = False
        for u in S.words(m):
            v = h.apply(u)
            c = u[r + s]
            if g.setdefault(v, c) != c:
                conflict = True
                break
        missed = next((v for v in S.words(2 * s + 1) if v not in g), None) if not conflict else None
        if missed is not None:
            return CodeStatus("not_surjective", witness=(missed,))
        if conflict:
            continue
        inv = SlidingBlockCode(s, g)
        if inv.maps_into(S) and all(h.apply(inv.apply(v)) == (v[r + s],) for v in S.words(m)):
            return CodeStatus("invertible", inverse=inv)
    return CodeStatus("undecided_at_budget")


def _classify_slice(args):
    S, r, inverse_radius, prefix, n_words = args
    windows = list(S.words(2 * r + 1))
    out = []
    for tail in itertools.product(range(S.k), repeat=n_words - len(prefix)):
        values = prefix + tail
        h = SlidingBlockCode(r, dict(zip(windows, values)))
        st = classify_code(h, S, inverse_radius)
        out.append((values, st))
    return out


@dataclass
class AutomorphismScan:
    radius: int
    rules_scanned: int
    automorphisms: list
    status_counts: dict

    def to_json(self) -> dict:
        return {"radius": self.radius, "rules_scanned": self.rules_scanned,
                "status_counts": dict(sorted(self.status_counts.items())),
                "automorphisms": [h.to_json() for h in self.automorphisms]}


def scan_automorphisms(S: Sft, r: int, inverse_radius: int | None = None,
                       workers: int = 1, max_rules: int = MAX_RULES) -> AutomorphismScan:
    if r < 0:
        raise ValueError("radius must be nonnegative")
    n_words = S.word_count(2 * r + 1)
    total = S.k ** n_words
    if total > max_rules:
        raise RadiusTooLarge(f"{total} rules at radius {r} exceed the budget of {max_rules}")
    plen = min(n_words, 2)
    jobs = [(S, r, inverse_radius, p, n_words) for p in itertools.product(range(S.k), repeat=plen)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_classify_slice, jobs))
    else:
        chunks = [_classify_slice(j) for j in jobs]
    results = sorted((x for c in chunks for x in c), key=lambda x: x[0])
    counts: dict = {}
    autos = []
    windows = list(S.words(2 * r + 1))
    for values, st in results:
        counts[st.status] = counts.get(st.status, 0) + 1
        if st.status == "invertible":
            autos.append(SlidingBlockCode(r, dict(zip(windows, values))))
    log.info("radius %d: %s", r, counts)
    return AutomorphismScan(r, total, autos, counts)


def enumerate_automorphisms(S: Sft, r: int, inverse_radius: int | None = None,
                            workers: int = 1, max_rules: int = MAX_RULES) -> list[SlidingBlockCode]:
    """All radius-r rules inducing a bijection of S, in rule order."""
    return scan_automorphisms(S, r, inverse_radius, workers, max_rules).automorphisms


# --- orbit preservation -----------------------------------------------------

def _normalize(j: int, p: int) -> int:
    j %= p
    return j - p if 2 * j > p else j


@dataclass(frozen=True)
class Verdict:
    """Outcome of theorem_a_check.

    kind is ``PowerDetected`` (power k), ``NotOrbitPreserving`` (orbit and its
    image), ``Inconsistent`` (two long orbits with different n) or
    ``Inconclusive`` (no orbit long enough, or agreement on orbits only).
    """

    kind: str
    k: int | None = None
    orbits: tuple = ()
    images: tuple = ()
    n_values: tuple = ()
    max_abs_n: int = 0
    note: str = ""

    def to_json(self) -> dict:
        out = {"kind": self.kind, "max_abs_n": self.max_abs_n,
               "orbits": [word_str(w) for w in self.orbits],
               "n_values": list(self.n_values)}
        if self.k is not None:
            out["k"] = self.k
        if self.images:
            out["images"] = [word_str(w) for w in self.images]
        if self.note:
            out["note"] = self.note
        return out

    def __str__(self):
        if self.kind == "PowerDetected":
            return f"PowerDetected({self.k})"
        if self.kind == "NotOrbitPreserving":
            return f"NotOrbitPreserving: ({word_str(self.orbits[0])}) -> ({word_str(self.images[0])})"
        if self.kind == "Inconsistent":
            a, b = self.orbits
            return f"Inconsistent: n({word_str(a)})={self.n_values[0]}, n({word_str(b)})={self.n_values[1]}"
        return f"Inconclusive: {self.note}"


def orbit_shift(h: SlidingBlockCode, orbit: PeriodicWord):
    """n with h(p) = sigma^n(p) for the orbit representative, or None."""
    img = h.apply_periodic(orbit.word)
    for j in range(orbit.period):
        if rotate(orbit.word, j) == img:
            return _normalize(j, orbit.period), img
    return None, img


def theorem_a_check(S: Sft, h: SlidingBlockCode, N: int, inverse_radius: int | None = None) -> Verdict:
    """Does h preserve every periodic orbit of period <= N, and is it then a shift power?"""
    st = classify_code(h, S, inverse_radius)
    if st.status != "invertible":
        raise NotInvertible(f"code is not invertible on this shift ({st.status})")
    orbits = enumerate_periodic_words(S, N)
    records = []
    for o in orbits:
        n, img = orbit_shift(h, o)
        if n is None:
            return Verdict("NotOrbitPreserving", orbits=(o.word,), images=(img,))
        # constancy of n along the orbit: h commutes with sigma
        for i in range(o.period):
            assert h.apply_periodic(rotate(o.word, i)) == rotate(img, i)
        records.append((o, n))
    max_abs = max(abs(n) for _, n in records)
    long = [(o, n) for o, n in records if o.period > 2 * max_abs]
    if not long:
        return Verdict("Inconclusive", max_abs_n=max_abs, note=f"no orbit of period > {2 * max_abs} up to {N}")
    o0, k = long[0]
    other = next(((o, n) for o, n in long if n != k), None)
    if other is not None:
        return Verdict("Inconsistent", orbits=(o0.word, other[0].word), n_values=(k, other[1]), max_abs_n=max_abs)
    bad = next(((o, n) for o, n in records if (n - k) % o.period), None)
    if bad is not None:
        return Verdict("Inconsistent", orbits=(o0.word, bad[0].word), n_values=(k, bad[1]), max_abs_n=max_abs)
    if h.equals_on(shift_power(S, k), S):
        return Verdict("PowerDetected", k=k, max_abs_n=max_abs)
    return Verdict("Inconclusive", k=k, max_abs_n=max_abs,
                   note=f"h agrees with sigma^{k} on periods <= {N} but not as a block code")
