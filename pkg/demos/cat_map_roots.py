"""The cat map has a square root, and its centralizer shows it."""

from fractions import Fraction

from centralizer_lab import fixtures as fx
from centralizer_lab.commutant import commutant_basis, entropy_set, enumerate_units, find_identity_relations
from centralizer_lab.exact_linalg import mat_pow
from centralizer_lab.torus_dynamics import count_periodic, dense_orbit_search, orbit_preservation_scan

CAT, F = fx.CAT, fx.FIBONACCI
tol = Fraction(1, 10 ** 9)

print("F^2 == cat:", mat_pow(F, 2) == CAT)
print("identity relation:", find_identity_relations([CAT, F], 3).exponents)

units = enumerate_units(commutant_basis(CAT), 3)
print(len(units), "units with coordinates in [-3, 3]")

for box in (2, 3):
    es = entropy_set(CAT, box, tol)
    print(f"box {box}: entropies", [round(float(v.mid), 6) for v in es.distinct_values(tol)],
          f"step h/{es.step_divisor}")

print("\nperiodic points:", [count_periodic(CAT, n) for n in range(1, 7)])

# cat^2 maps every cat-map orbit to itself; F already moves an orbit mod 3
for name, B in (("cat^2", mat_pow(CAT, 2)), ("F", F)):
    r = orbit_preservation_scan(CAT, B, 8)
    print(f"{name}: preserved {r.all_preserved}, detected power {r.detected_power}, first failure {r.first_failure}")

for grid in (2, 4):
    w = dense_orbit_search(CAT, grid, 50)
    print(f"orbit meeting every cell of a {grid}x{grid} grid: q={w.q}, start {w.representative}, period {w.period}")
