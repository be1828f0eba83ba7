"""Bulk limits as t -> 1.

Finite-t kernels drift towards translation-invariant limits.  This script
shows that convergence for one drift specialization and for the smallest
cylindric staircase.  It then prints several closed-form densities next to
their quadrature values.
"""

import math

from cylschur import bulk
from cylschur.cylindric import staircase_profile
from cylschur.kernels import cylindric_kernel, kernel
from cylschur.process import ProcessSpec
from cylschur.symfunc import tp

drift = [tp(drift=1.0)]
limit = [bulk.bulk_kernel_t31(drift, drift, bulk.BulkPoint(1, 1, d)) for d in range(3)]
print("drift specialization: |K_t(1/2 + d, 1/2) - K_bulk(d)|")
for r in (0.2, 0.1, 0.05):
    spec = ProcessSpec(1, math.exp(-r), drift, drift)
    gaps = [abs(kernel(spec, (1, 0.5 + d), (1, 0.5)) - limit[d]) for d in range(3)]
    print(f"  r={r:<5} " + "  ".join(f"{g:.4f}" for g in gaps))

prof = staircase_profile(1)
limit = [bulk.cylindric_bulk_kernel(prof, 0.0, 1, 1, d) for d in range(3)]
print("\nstaircase with s = e^{-r}:")
for r in (0.2, 0.1, 0.05):
    gaps = [abs(cylindric_kernel(prof, math.exp(-r), (1, 0.5 + d), (1, 0.5)) - limit[d]) for d in range(3)]
    print(f"  r={r:<5} " + "  ".join(f"{g:.4f}" for g in gaps))

print("\ndensities")
for gamma in (-1.0, 0.0, 1.0):
    quad = bulk.cylindric_bulk_density(prof, gamma)
    print(f"  staircase  gamma={gamma:+.1f}: {quad:.12f}  closed form {1 / math.sqrt(1 + 4 * math.exp(gamma)):.12f}")
print(f"  slow growth kappa=1, gamma=0: {bulk.slow_density(1.0, 0.0):.12f} (one third)")
gamma = bulk.corner_gammas(0.4, 1.0, "outer")
print(f"  outer corner t=0.4: c=1 at gamma={gamma:.6f}, recovered c={bulk.corner_solve_c(0.4, gamma, 'outer'):.12f}")

print("\nsine kernel on equal times, c = 1.2")
chain_a, chain_b = [tp(alpha=[0.3], drift=0.2)], [tp(beta=[0.4])]
for d in range(1, 4):
    value = bulk.sine_extension_kernel(chain_a, chain_b, 1.2, 1, 1, d).real
    print(f"  d={d}: {value:.12f}  sin(cd)/(pi d) = {math.sin(1.2 * d) / (math.pi * d):.12f}")
