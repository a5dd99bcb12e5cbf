"""The three exceptional Hall numbers 12, 24 and 60 at work.

For each, print the primes q whose congruence puts m as a Hall divisor of
|PSL(2,q)| and locate the A4, S4 or A5 subgroup explicitly.
"""

from hallnum import family_primes, order_spectrum, sylow2_class, verify_exceptional
from hallnum.psl2 import build_group

for m in (12, 24, 60):
    print(m, family_primes(m, 8, 10**4))

for m, q, kind in [(12, 5, "PSL"), (12, 29, "PSL"), (24, 7, "PSL"), (24, 5, "PGL"), (60, 11, "PSL"), (12, 7, "PSL")]:
    rep = verify_exceptional(m, q, kind)
    if rep.found:
        print(f"{kind}(2,{q}): {rep.recognized} of order {m}, generators {rep.generators}")
    else:
        print(f"{kind}(2,{q}): {m} is not a Hall divisor of {rep.group_order}")

# Sylow 2-subgroup sizes follow q mod 8 and q mod 16
for q in (5, 7, 11, 17, 23, 31):
    print(q, sylow2_class(q))

print(order_spectrum(build_group(5, "PGL")))
