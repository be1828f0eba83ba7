"""Counting cylindric partitions two ways.

A cylindric partition is a periodic chain of partitions in which neighbours
differ by a horizontal strip, in the direction dictated by a 0/1 profile.
Here we enumerate them by brute force and compare with the product formula
for their generating function.  For the smallest staircase the counts are
the ordinary partition numbers.
"""

from cylschur.cylindric import (
    CylindricPartition,
    corner_profile,
    count_cylindric,
    generating_function_formula,
    parse_profile,
    staircase_profile,
)

for profile in (staircase_profile(1), parse_profile("A=1011010;mark=7"), corner_profile(3, 3)):
    brute = count_cylindric(profile, 12)
    formula = generating_function_formula(profile, 12)
    status = "agree" if brute == formula else "DISAGREE"
    print(f"{profile.literal():>18}  d={profile.d} l={profile.l}  {status}: {brute}")

# A worked example read row by row from a plane array with offsets mu = (3, 1).
rows = [[7, 5, 2, 1], [10, 10, 6, 5, 1, 1], [11, 9, 1]]
example = CylindricPartition.from_rows(rows, (3, 1), 4)
print("\nworked example diagonals:")
for k, lam in enumerate(example.diagonals):
    print(f"  lambda({k}) = {lam}")
print(f"profile {example.profile.literal()}, total {example.norm}")
