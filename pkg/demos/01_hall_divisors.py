"""Hall divisors, Hall numbers and the witness primes that rule numbers out.

Run with:  python3 demos/01_hall_divisors.py
"""

import numpy as np

from hallnum import classify, factorize, hall_divisors, is_hall_divisor
from hallnum.numtheory import WitnessPrimeQuery, crt_xi, find_witness_primes

# a Hall divisor d of n shares no prime with n/d
print(factorize(3600))
print("Hall divisors of 60:", hall_divisors(60))
print("20 || 12180 ?", is_hall_divisor(20, 12180))
print("12 || 24 ?", is_hall_divisor(12, 24))

# classify a range and count the tags
tags = np.array([classify(m).tag for m in range(1, 1001)])
names, counts = np.unique(tags, return_counts=True)
for name, count in zip(names, counts):
    print(f"{name:12s} {count:4d}")

# the smallest numbers that are not Hall numbers, with their canonical split
bad = [m for m in range(1, 200) if not classify(m).is_hall]
print("first non-Hall numbers:", bad[:12])
print(classify(20), classify(45), classify(36))

# for m = a*b a witness prime p has a || p-1 and b || p+1
print("xi for (4, 5):", crt_xi(4, 5))
print("witness primes for 4 x 5:", find_witness_primes(WitnessPrimeQuery(4, 5, count=6, search_bound=10**4)))
print("witness primes for 9 x 5:", find_witness_primes(WitnessPrimeQuery(9, 5, count=6, search_bound=10**4)))
