import itertools
from fractions import Fraction

import pytest

from centralizer_lab.commutant import (certify_independence, commutant_basis, entropy_set, enumerate_units,
                                       enumerate_units_with_coordinates, find_identity_relations,
                                       find_power_relations)
from centralizer_lab.errors import NotCommuting, NotHyperbolic
from centralizer_lab.exact_linalg import IntMatrix, det, mat_pow

A3 = IntMatrix(((0, 1, 1), (2, 1, 0), (1, 0, -1)))
B3 = IntMatrix(((2, 1, 1), (2, 3, 0), (1, 0, 1)))
CAT = IntMatrix(((2, 1), (1, 1)))
F = IntMatrix(((1, 1), (1, 0)))
I2, I3 = IntMatrix.identity(2), IntMatrix.identity(3)
PARAM = (A3 + I3, A3 @ A3 + A3 - I3, I3)


def brute_commutant(A, bound=2):
    n = A.n
    return [X for X in (IntMatrix.from_flat(v, n) for v in itertools.product(range(-bound, bound + 1), repeat=n * n))
            if A @ X == X @ A]


def test_basis_ranks():
    assert commutant_basis(A3).rank == 3
    assert commutant_basis(IntMatrix.identity(2)).rank == 4
    assert commutant_basis(CAT).rank == 2


def test_basis_elements_commute_and_contain_powers():
    for A in (A3, CAT, IntMatrix.diag([1, 1, 2])):
        L = commutant_basis(A)
        assert all(A.commutes_with(X) for X in L.basis)
        assert L.contains(IntMatrix.identity(A.n)) and L.contains(A)


def test_commutant_matches_brute_force_on_small_entries():
    for A in (CAT, IntMatrix(((1, 2), (0, 1))), IntMatrix.diag([2, 3])):
        L = commutant_basis(A)
        for X in brute_commutant(A):
            assert L.contains(X)


def test_cubic_commutant_is_z_of_a():
    L = commutant_basis(A3)
    for X in (I3, A3, A3 @ A3):
        assert L.contains(X)
    # the parametrized family spans the same lattice
    P = L.rebased(PARAM)
    assert P.coordinates(B3) == (1, 0, 1)
    assert P.combine((1, 0, 1)) == B3


def test_rebased_rejects_sublattice():
    L = commutant_basis(CAT)
    with pytest.raises(ValueError):
        L.rebased((I2.scaled(2), CAT))


def test_units_of_cat_commutant():
    units = enumerate_units(commutant_basis(CAT), 3)
    for k in (-1, 0, 1, 2):
        for s in (1, -1):
            assert mat_pow(F, k).scaled(s) in units
    assert all(abs(det(X)) == 1 and CAT.commutes_with(X) for X in units)
    # every unit is +-F^k
    powers = {mat_pow(F, k).scaled(s) for k in range(-12, 13) for s in (1, -1)}
    assert set(units) <= powers


def test_units_box_one_contains_plus_minus_identity():
    for A in (A3, CAT):
        units = enumerate_units(commutant_basis(A), 1)
        assert IntMatrix.identity(A.n) in units and IntMatrix.identity(A.n).scaled(-1) in units


def test_cubic_units_contain_b():
    assert B3 in enumerate_units(commutant_basis(A3), 2)


def test_unit_closure_in_box():
    L = commutant_basis(CAT)
    pairs = enumerate_units_with_coordinates(L, 3)
    coords = {X: c for c, X in pairs}
    for X, Y in itertools.product(coords, repeat=2):
        c = L.coordinates(X @ Y)
        if c is not None and max(map(abs, c)) <= 3:
            assert X @ Y in coords


def test_units_parallel_matches_serial():
    L = commutant_basis(A3)
    assert enumerate_units(L, 2, workers=2) == enumerate_units(L, 2)


def test_power_relations():
    r = find_power_relations(CAT, F, 5)
    assert r.kind == "found-relation" and r.exponents == (1, 2)
    assert find_power_relations(A3, A3, 1).exponents == (1, 1)
    assert find_power_relations(A3, B3, 20).kind == "inconclusive"
    with pytest.raises(NotCommuting):
        find_power_relations(CAT, IntMatrix(((1, 1), (0, 1))), 2)


def test_found_relations_verify_exactly():
    r = find_power_relations(mat_pow(A3, 2), mat_pow(A3, 3), 6)
    n, m = r.exponents
    assert mat_pow(mat_pow(A3, 2), n) == mat_pow(mat_pow(A3, 3), m)


def test_identity_relations():
    r = find_identity_relations([CAT, F], 3)
    assert r.exponents == (1, -2)
    assert mat_pow(CAT, 1) @ mat_pow(F, -2) == I2
    assert find_identity_relations([I2], 1).exponents == (1,)
    assert find_identity_relations([A3, B3], 10).kind == "inconclusive"


def test_certify_independence():
    cert = certify_independence(A3, B3, Fraction(1, 1000))
    assert cert.kind == "independence-certificate"
    r = cert.ratio_enclosures
    assert all(not r[i].intersects(r[j]) for i in range(3) for j in range(i + 1, 3))
    assert abs(float(r[0].mid) + 3.1753) < 1e-3
    assert abs(float(r[1].mid) + 0.41) < 0.01
    assert abs(float(r[2].mid) - 1.89) < 0.01


@pytest.mark.parametrize("k", [1, 2, 3])
def test_certificate_never_contradicts_a_relation(k):
    B = mat_pow(A3, k)
    assert find_power_relations(A3, B, 3).found
    assert certify_independence(A3, B, Fraction(1, 1000)).kind == "inconclusive"


def test_certify_preconditions():
    with pytest.raises(NotHyperbolic):
        certify_independence(IntMatrix.identity(2), IntMatrix.identity(2))


def test_entropy_set_cat():
    es = entropy_set(CAT, 3)
    assert es.step_divisor == 2
    assert dict(es.step_fits)[1] is False
    with pytest.raises(NotHyperbolic):
        entropy_set(IntMatrix.identity(2), 1)


def test_entropy_set_cubic_box_one_in_parametrized_basis():
    L = commutant_basis(A3).rebased(PARAM)
    vals = [float(v.mid) for v in entropy_set(A3, 1, lattice=L).distinct_values(Fraction(1, 10 ** 9))]
    assert vals[0] == 0
    assert any(abs(v - 1.3700207) < 1e-6 for v in vals)
    assert any(abs(v - 1.9718856) < 1e-6 for v in vals)
