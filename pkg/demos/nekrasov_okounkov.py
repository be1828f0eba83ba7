"""The Nekrasov-Okounkov measure.

Weights are t^{|lam|} times a product over hooks of (h^2 - mu^2)/h^2.  For
imaginary mu this is a probability measure.  We check its normalization
and watch it approach the Plancherel measure.  Finally we compare its
correlations with the determinantal kernel.
"""

from cylschur.bulk import no_bulk_density
from cylschur.kernels import no_kernel
from cylschur.nekrasov_okounkov import NOSpec, no_correlation_oracle, no_normalization, plancherel_limit_check

spec = NOSpec.imaginary(0.6, 0.35)
for M in (10, 15, 20):
    print(f"truncation {M:2d}: total mass - 1 = {abs(no_normalization(spec, M) - 1):.2e}")

print("\nPlancherel degeneration at mu0 = 1000, theta = 1")
for lam in ((), (1,), (2, 1), (2, 2), (3, 1)):
    no_value, planch = plancherel_limit_check(1.0, 1000.0, lam)
    print(f"  {str(lam):<8} {no_value:.8f}  {planch:.8f}")

mu0, t = 0.7, 0.35
spec = NOSpec.imaginary(mu0, t)
print("\ndensity at x = 1/2: brute force vs kernel")
print(f"  {no_correlation_oracle(spec, [0.5], True, 24).real:.10f}  {no_kernel(1j * mu0, t, 1.0, 0.5, 0.5).real:.10f}")

print("\nbulk density for mu0 = 0.8:")
for gamma in (-1.0, 0.0, 1.0):
    print(f"  gamma={gamma:+.1f}: {no_bulk_density(0.8, 1.0, gamma):.10f}")
