import itertools
from fractions import Fraction

import mpmath
import pytest

from centralizer_lab.errors import EmptySubshift, NotInvertible, NotPrimitive, RadiusTooLarge
from centralizer_lab.exact_linalg import mat_pow
from centralizer_lab.intervals import Interval
from centralizer_lab.sft import (SlidingBlockCode, build_sft, classify_code, enumerate_automorphisms,
                                 enumerate_periodic_words, full_shift, gluing_constant, golden_mean_shift,
                                 identity_code, orbit_shift, sft_entropy, shift_power, symbol_map,
                                 theorem_a_check)
from centralizer_lab.sft.shift import PeriodicWord, word_str

S2 = full_shift(2)
G = golden_mean_shift()


def test_build_and_prune():
    assert S2.T == ((1, 1), (1, 1))
    assert G.T == ((1, 1), (1, 0))
    with pytest.raises(EmptySubshift):
        build_sft([[0]])
    # symbol 2 has no successor, then symbol 1 loses its only successor
    S = build_sft([[1, 1, 0], [0, 0, 1], [0, 0, 0]])
    assert S.labels == (0,) and S.T == ((1,),)
    with pytest.raises(ValueError):
        build_sft([[1, 2], [1, 1]])


def test_words_and_counts():
    assert list(G.words(3)) == [(0, 0, 0), (0, 0, 1), (0, 1, 0), (1, 0, 0), (1, 0, 1)]
    for n in range(1, 8):
        assert G.word_count(n) == len(list(G.words(n))) == sum(1 for w in itertools.product((0, 1), repeat=n)
                                                                 if G.is_word(w))


def test_gluing_constants():
    assert gluing_constant(S2) == 1
    assert gluing_constant(G) == 2
    with pytest.raises(NotPrimitive):
        gluing_constant(build_sft([[0, 1], [1, 0]]))


def test_entropies():
    tol = Fraction(1, 10 ** 9)
    for S, exact in ((S2, mpmath.log(2)), (G, mpmath.log((1 + mpmath.sqrt(5)) / 2)), (full_shift(3), mpmath.log(3))):
        h = sft_entropy(S, tol)
        assert h.width <= tol
        assert float(h.lo) <= float(exact) <= float(h.hi)


def test_periodic_words_examples():
    assert [word_str(o.word) for o in enumerate_periodic_words(S2, 2)] == ["0", "1", "01"]
    assert [word_str(o.word) for o in enumerate_periodic_words(G, 2)] == ["0", "01"]
    assert [word_str(o.word) for o in enumerate_periodic_words(G, 1)] == ["0"]


@pytest.mark.parametrize("T", [((1, 1), (1, 1)), ((1, 1), (1, 0)), ((0, 1, 1), (1, 0, 1), (1, 1, 0)),
                               ((1, 1, 0), (0, 0, 1), (1, 0, 0))])
def test_periodic_points_against_trace_and_brute_force(T):
    S = build_sft(T)
    orbits = enumerate_periodic_words(S, 7)
    for n in range(1, 8):
        # brute force: cyclically allowed words of length n
        brute = sum(1 for w in itertools.product(range(S.k), repeat=n)
                    if all(S.T[w[i]][w[(i + 1) % n]] for i in range(n)))
        assert brute == mat_pow(S.matrix, n).trace() == sum(o.period for o in orbits if n % o.period == 0)


def test_code_json_round_trip():
    h = shift_power(S2, 1)
    doc = h.to_json()
    assert doc == {"radius": 1, "rule": {w: w[2] for w in ("000", "001", "010", "011", "100", "101", "110", "111")}}
    assert SlidingBlockCode.from_json(doc) == h


def test_code_application():
    sigma = shift_power(S2, 1)
    assert sigma.apply((0, 1, 1, 0)) == (1, 0)
    assert sigma.apply_periodic((0, 0, 1)) == (0, 1, 0)
    swap = symbol_map(S2, [1, 0])
    assert swap.compose(swap, S2).equals_on(identity_code(S2), S2)
    assert shift_power(S2, 1).compose(shift_power(S2, -1), S2).equals_on(identity_code(S2), S2)
    assert sigma.widened(2).equals_on(sigma, S2)


def test_automorphisms_radius_zero():
    assert [h.outputs(S2) for h in enumerate_automorphisms(S2, 0)] == [(0, 1), (1, 0)]
    assert [h.outputs(G) for h in enumerate_automorphisms(G, 0)] == [(0, 1)]


def test_automorphisms_radius_one():
    autos = enumerate_automorphisms(S2, 1)
    assert len(autos) == 6
    swap = symbol_map(S2, [1, 0])
    expected = [shift_power(S2, k, 1) for k in (-1, 0, 1)]
    expected += [shift_power(S2, k).compose(swap, S2) for k in (-1, 0, 1)]
    for e in expected:
        assert sum(h.equals_on(e, S2) for h in autos) == 1


def test_every_automorphism_has_a_verified_inverse():
    for h in enumerate_automorphisms(S2, 1):
        st = classify_code(h, S2)
        inv = st.inverse
        assert inv.compose(h, S2).equals_on(identity_code(S2), S2)
        assert h.compose(inv, S2).equals_on(identity_code(S2), S2)
        # commutes with the shift
        sigma = shift_power(S2, 1)
        assert h.compose(sigma, S2).equals_on(sigma.compose(h, S2), S2)


def test_classification_witnesses():
    const = SlidingBlockCode(0, {(0,): 0, (1,): 0})
    st = classify_code(const, S2)
    assert st.status == "not_injective"
    a, b = st.witness
    assert const.apply_periodic(a) == const.apply_periodic(b) and a != b
    swap_g = SlidingBlockCode(0, {(0,): 1, (1,): 0})
    assert classify_code(swap_g, G).status == "not_into"


def test_parallel_scan_matches_serial():
    from centralizer_lab.sft import scan_automorphisms
    a = scan_automorphisms(S2, 1, workers=2)
    b = scan_automorphisms(S2, 1)
    assert a.to_json() == b.to_json()


def test_radius_budget():
    with pytest.raises(RadiusTooLarge):
        enumerate_automorphisms(S2, 2)


def test_power_criterion_examples():
    assert theorem_a_check(S2, shift_power(S2, 1), 4).kind == "PowerDetected"
    assert theorem_a_check(S2, shift_power(S2, 1), 4).k == 1
    v = theorem_a_check(S2, symbol_map(S2, [1, 0]), 1)
    assert v.kind == "NotOrbitPreserving" and v.orbits == ((0,),) and v.images == ((1,),)
    swap = symbol_map(S2, [1, 0])
    v = theorem_a_check(S2, shift_power(S2, 1).compose(swap, S2), 1)
    assert v.kind == "NotOrbitPreserving"


def test_power_criterion_exhaustive_radius_one():
    for h in enumerate_automorphisms(S2, 1):
        v = theorem_a_check(S2, h, 6)
        is_power = any(h.equals_on(shift_power(S2, k, 1), S2) for k in (-1, 0, 1))
        assert (v.kind == "PowerDetected") == is_power
        if not is_power:
            assert v.kind == "NotOrbitPreserving"


def test_power_criterion_n_values_are_normalized():
    sigma = shift_power(S2, -1)
    for o in enumerate_periodic_words(S2, 6):
        n, _ = orbit_shift(sigma, o)
        assert -o.period < 2 * n <= o.period
        assert (n + 1) % o.period == 0


def test_power_criterion_needs_long_orbits():
    v = theorem_a_check(S2, shift_power(S2, 1), 2)
    assert v.kind == "Inconclusive"


def test_power_criterion_requires_invertible():
    with pytest.raises(NotInvertible):
        theorem_a_check(S2, SlidingBlockCode(0, {(0,): 0, (1,): 0}), 3)


def test_orbit_shift_detects_foreign_orbit():
    n, img = orbit_shift(symbol_map(S2, [1, 0]), PeriodicWord((0, 1, 1), 3))
    assert n is None and img == (1, 0, 0)
