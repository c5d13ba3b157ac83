"""Exhaustive power criterion on the full 2-shift at radius 1.

Every automorphism either acts on each periodic orbit as a fixed power of
the shift, or moves some orbit to another one.
"""

import time

from centralizer_lab.sft import full_shift, scan_automorphisms, theorem_a_check

S = full_shift(2)
t = time.perf_counter()
scan = scan_automorphisms(S, 1)
print(f"{scan.rules_scanned} rules scanned in {time.perf_counter() - t:.2f} s")
print("status counts:", dict(sorted(scan.status_counts.items())))

for h in scan.automorphisms:
    print(f"{h}  ->  {theorem_a_check(S, h, 6)}")
