"""Walk through a 3x3 hyperbolic matrix A and the commuting matrix B = A + 2I.

Prints the commutant lattice, certified spectra, and the certificate that
no power of A equals a power of B.
"""

from fractions import Fraction

from centralizer_lab import fixtures as fx
from centralizer_lab.commutant import certify_independence, commutant_basis, find_power_relations
from centralizer_lab.exact_linalg import charpoly, det
from centralizer_lab.spectral import isolate_spectrum, spectrum_report

A, B = fx.CUBIC_A, fx.CUBIC_B

print("A =")
print(A)
print("charpoly (constant first):", charpoly(A))
print("det B =", det(B), " AB == BA:", A @ B == B @ A)

L = commutant_basis(A).rebased(fx.CUBIC_BASIS)
print("commutant rank", L.rank, "; B has coordinates", L.coordinates(B), "in (I+A, A^2+A-I, I)")

print("\neigenvalues of A, width 1e-4:")
for e in isolate_spectrum(charpoly(A), Fraction(1, 10 ** 4)):
    print("  ", e.interval.to_json(6))

rep = spectrum_report(B, Fraction(1, 10 ** 6))
print("moduli of B:", [float(e.modulus.mid) for e in rep.enclosures])
print("B stable/unstable dims:", rep.stable_dim, rep.unstable_dim)

print("\nsearching A^n = B^m with |n|, |m| <= 20:", find_power_relations(A, B, 20).kind)
cert = certify_independence(A, B, Fraction(1, 1000))
print("certificate:", cert.kind)
for r in cert.ratio_enclosures:
    print(f"   log|mu|/log|lambda| in [{float(r.lo):.5f}, {float(r.hi):.5f}]")
print("distinct ratios mean no relation of any size exists")
