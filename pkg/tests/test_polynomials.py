from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from centralizer_lab import polynomials as P
from centralizer_lab.intervals import Interval


def from_roots(roots):
    f = [1]
    for r in roots:
        f = P.mul(f, [-r, 1])
    return f


def test_divmod_and_gcd():
    f = from_roots([1, 2, 3])
    g = from_roots([2, 5])
    q, r = P.divmod_poly(f, g)
    assert P.add(P.mul(q, g), r) == f
    assert P.poly_gcd(f, g) == [-2, 1]


def test_squarefree_decomposition():
    f = P.mul(from_roots([1, 1, 1]), from_roots([2, -3, -3]))
    parts = {i: g for g, i in P.squarefree_decomposition(f)}
    assert parts[1] == [-2, 1]
    assert parts[2] == [3, 1]
    assert parts[3] == [-1, 1]


@settings(max_examples=80)
@given(st.lists(st.integers(-6, 6), min_size=1, max_size=6))
def test_sturm_counts_integer_roots(roots):
    f = from_roots(roots)
    assert P.count_real_roots(f) == len(set(roots))
    # (a, b] convention
    assert P.count_real_roots(f, Fraction(-6), Fraction(0)) == len({r for r in roots if -6 < r <= 0})


def test_sturm_ignores_complex_roots():
    f = P.mul([1, 0, 1], from_roots([2]))
    assert P.count_real_roots(f) == 1


def test_evaluate_on_intervals():
    f = [-2, 0, 1]
    v = P.evaluate(f, Interval(Fraction(14, 10), Fraction(15, 10)))
    assert v.lo < 0 < v.hi


def test_reverse_and_compose():
    assert P.reverse([1, 2, 3]) == [3, 2, 1]
    assert P.compose_neg([1, 2, 3]) == [1, -2, 3]


def test_cauchy_bound_encloses_roots():
    f = from_roots([-7, 3, 5])
    b = P.cauchy_bound(f)
    assert b > 7
