from fractions import Fraction

import mpmath
import pytest

from centralizer_lab.errors import NotInvertible, NotPrimitive
from centralizer_lab.intervals import Interval
from centralizer_lab.sft import (CylinderMeasure, LogCombination, SlidingBlockCode, bernoulli, build_sft,
                                 cesaro_average, full_shift, golden_mean_shift, identity_code, parry_measure,
                                 pushforward, rpf_equilibrium, sft_entropy, shift_power, symbol_map)
from centralizer_lab.sft.measures import marginal, push_table

S2 = full_shift(2)
G = golden_mean_shift()
TOL = Fraction(1, 10 ** 9)
HALF = Fraction(1, 2)
SKEW = bernoulli([Fraction(2, 3), Fraction(1, 3)])
SWAP = symbol_map(S2, [1, 0])


def exact_entries(m):
    return [x.lo for x in m.pi], [[x.lo for x in row] for row in m.P]


def test_parry_full_shifts_are_uniform_and_exact():
    m = parry_measure(S2)
    assert m.exact and exact_entries(m) == ([HALF, HALF], [[HALF, HALF], [HALF, HALF]])
    m3 = parry_measure(full_shift(3))
    third = Fraction(1, 3)
    assert exact_entries(m3) == ([third] * 3, [[third] * 3] * 3)
    assert m.entropy() == LogCombination.of(2)


def test_parry_golden_mean():
    m = parry_measure(G, TOL)
    phi = (1 + mpmath.sqrt(5)) / 2
    assert float(m.P[0][0].lo) <= float(1 / phi) <= float(m.P[0][0].hi)
    assert float(m.P[0][1].lo) <= float(1 / phi ** 2) <= float(m.P[0][1].hi)
    assert m.P[1][0] == Interval.point(1) and m.P[1][1] == Interval.point(0)
    assert all(x.width <= TOL for x in m.pi)
    m.validate()
    # the measure of maximal entropy: its entropy meets the topological entropy
    assert m.entropy(TOL).intersects(sft_entropy(G, TOL))


def test_parry_requires_primitive():
    with pytest.raises(NotPrimitive):
        parry_measure(build_sft([[0, 1], [1, 0]]))


def test_rpf_examples():
    assert exact_entries(rpf_equilibrium(S2, [1, 1])) == exact_entries(parry_measure(S2))
    m = rpf_equilibrium(S2, [2, 1])
    assert exact_entries(m) == ([Fraction(2, 3), Fraction(1, 3)], [[Fraction(2, 3), Fraction(1, 3)]] * 2)
    a, b = rpf_equilibrium(G, [1, 1], TOL), parry_measure(G, TOL)
    assert all(x.intersects(y) for x, y in zip(a.pi, b.pi))
    # rational weights scale away
    assert exact_entries(rpf_equilibrium(S2, ["1/2", "1/4"])) == exact_entries(m)


def test_rpf_variational_principle_on_full_shift():
    # for phi depending on x_0, P(phi) = log(sum e^phi) = h(m) + integral of phi
    w = [Fraction(2), Fraction(1)]
    m = rpf_equilibrium(S2, w)
    h = float(m.entropy().interval().mid)
    integral = sum(float(m.pi[a].lo) * float(mpmath.log(w[a])) for a in range(2))
    assert abs(h + integral - float(mpmath.log(3))) < 1e-12


def test_weights_validation():
    with pytest.raises(ValueError):
        rpf_equilibrium(S2, [1, 0])
    with pytest.raises(ValueError):
        rpf_equilibrium(S2, [1])


def test_cylinder_weights_are_shift_invariant():
    m = parry_measure(G, TOL)
    t3, t2 = m.table(3), m.table(2)
    for w, x in t2.items():
        left = sum((t3[(a,) + w] for a in range(2) if (a,) + w in t3), Interval.point(0))
        right = sum((t3[w + (a,)] for a in range(2) if w + (a,) in t3), Interval.point(0))
        assert left.intersects(x) and right.intersects(x)


def test_measure_json_round_trip():
    doc = SKEW.to_json()
    assert doc == {"pi": ["2/3", "1/3"], "P": [["2/3", "1/3"], ["2/3", "1/3"]]}
    assert CylinderMeasure.from_json(doc) == SKEW
    with pytest.raises(ValueError):
        CylinderMeasure.from_json({"pi": ["1/2", "1/2"], "P": [["1", "0"], ["1/2", "1/2"]]})


def test_log_combination():
    x = LogCombination.of(Fraction(12, 5))
    assert x.coeffs == ((2, 2), (3, 1), (5, -1))
    assert (x - x) == LogCombination.zero()
    assert abs(float(x.interval().mid) - float(mpmath.log(Fraction(12, 5).numerator / 5))) < 1e-12


def test_pushforward_examples():
    r = pushforward(bernoulli([HALF, HALF]), SWAP, 3)
    assert r.preserved and all(x == Interval.point(Fraction(1, 8)) for x in r.image.values())
    assert len(r.image) == 8
    r = pushforward(SKEW, SWAP, 1)
    assert not r.preserved
    assert r.image[(0,)] == Interval.point(Fraction(1, 3))
    for L in (1, 2, 4):
        assert pushforward(SKEW, identity_code(S2), L).preserved


def test_pushforward_mass_and_marginals():
    for h in (SWAP, shift_power(S2, 1), shift_power(S2, 1).compose(SWAP, S2)):
        r = pushforward(SKEW, h, 4)
        assert sum(x.lo for x in r.image.values()) == 1
        # consistency between 4-cylinders and 3-cylinders
        img3 = push_table(SKEW.table(3 + 2 * h.radius), h)
        m4 = marginal(r.image, 3)
        assert {w: x.lo for w, x in m4.items()} == {w: x.lo for w, x in img3.items()}


def test_pushforward_preserves_entropy_exactly():
    for h in (SWAP, shift_power(S2, 1), shift_power(S2, -1).compose(SWAP, S2)):
        r = pushforward(SKEW, h, 3)
        assert r.entropy_source == r.entropy_image == SKEW.entropy()


def test_pushforward_requires_invertible():
    with pytest.raises(NotInvertible):
        pushforward(SKEW, SlidingBlockCode(0, {(0,): 0, (1,): 0}), 1)
    with pytest.raises(ValueError):
        pushforward(SKEW, shift_power(S2, 1), 2)


def test_cesaro_examples():
    c = cesaro_average(SKEW, SWAP, 2, 1)
    assert {w: x.lo for w, x in c.average.items()} == {(0,): HALF, (1,): HALF}
    assert c.distance == Interval.point(0)
    c = cesaro_average(SKEW, SWAP, 3, 1)
    assert {w: x.lo for w, x in c.average.items()} == {(0,): Fraction(5, 9), (1,): Fraction(4, 9)}
    assert c.distance == Interval.point(Fraction(1, 9))
    c = cesaro_average(SKEW, identity_code(S2), 5, 2)
    assert {w: x.lo for w, x in c.average.items()} == {w: x.lo for w, x in SKEW.table(2).items()}


def test_cesaro_with_positive_radius():
    # the shift preserves every invariant measure, so averaging changes nothing
    c = cesaro_average(SKEW, shift_power(S2, 1), 3, 3)
    assert c.distance == Interval.point(0)
    assert {w: x.lo for w, x in c.average.items()} == {w: x.lo for w, x in SKEW.table(3).items()}
