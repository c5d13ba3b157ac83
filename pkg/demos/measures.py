"""Maximal entropy measures and what automorphisms do to them."""

from fractions import Fraction

from centralizer_lab.sft import (bernoulli, cesaro_average, full_shift, golden_mean_shift, parry_measure,
                                 pushforward, rpf_equilibrium, sft_entropy, symbol_map)
from centralizer_lab.sft.shift import word_str

tol = Fraction(1, 10 ** 12)
G = golden_mean_shift()
m = parry_measure(G, tol)
print("golden mean Parry measure: P[0] =", [float(x.mid) for x in m.P[0]])
print("measure entropy", float(m.entropy(tol).mid), "topological", float(sft_entropy(G, tol).mid))

S = full_shift(2)
print("RPF state of weights (2, 1):", rpf_equilibrium(S, [2, 1]).to_json())

swap = symbol_map(S, [1, 0])
skew = bernoulli([Fraction(2, 3), Fraction(1, 3)])
half = bernoulli([Fraction(1, 2)] * 2)
print("\nswap keeps Bernoulli(1/2,1/2):", pushforward(half, swap, 3).preserved)
r = pushforward(skew, swap, 2)
print("swap moves Bernoulli(2/3,1/3):", not r.preserved, " entropy", r.entropy_source, "->", r.entropy_image)
for n in (2, 3, 4):
    c = cesaro_average(skew, swap, n, 1)
    avg = {word_str(w): str(x.lo) for w, x in sorted(c.average.items())}
    print(f"average of {n} pushes: {avg}, distance to its image {c.distance.lo}")
