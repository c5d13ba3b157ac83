"""Exact and certified computations on centralizers of hyperbolic toral
automorphisms and of shifts of finite type."""

from .commutant import (CommutantLattice, EntropySet, RelationCertificate, certify_independence,
                        commutant_basis, entropy_set, enumerate_units, find_identity_relations,
                        find_power_relations)
from .errors import CentralizerLabError
from .exact_linalg import (IntMatrix, adjugate, adjugate_poly, charpoly, det, integer_kernel, inverse,
                           mat_pow, smith_normal_form)
from .intervals import Interval
from .spectral import (entropy_interval, is_hyperbolic, isolate_spectrum, ph_splitting,
                       real_root_intervals, spectrum_report, unit_circle_root_count)
from .torus_dynamics import (OrbitTable, RationalPoint, count_periodic, dense_orbit_search,
                             enumerate_periodic, orbit_preservation_scan)

__version__ = "0.1.0"
