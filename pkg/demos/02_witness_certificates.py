"""Certificates showing that 20 and 45 are not Hall numbers.

The witness group PSL(2,p) has order divisible by m with a coprime
cofactor, yet an exhaustive two-generator search finds no subgroup of order m.
Takes about 20 seconds.
"""

import json

from hallnum import build_group, generate_witness, normalizer
from hallnum.certificates import check_document
from hallnum.psl2 import closure
from hallnum.recognition import recognize

cert = generate_witness(45)
print(f"m=45: p={cert.witness_prime}, |G|={cert.group_order} = 45 x {cert.cofactor}")
print("search:", cert.verification)

doc = cert.to_json()
check_document(doc)  # replays the search
print("re-checked OK")

# a cheaper certificate that relies on the containment argument instead
quick = generate_witness(20, brute_force=False)
print(json.dumps(quick.verification["cases"], indent=1))
check_document(quick.to_json())

# for m = 20 the normalizer of a Sylow 5-subgroup already explains the answer
g = build_group(29)
five = int((g.element_orders == 5).nonzero()[0][0])
n = normalizer(g, closure(g, [five]))
print("normalizer of a C5 in PSL(2,29):", recognize(n), "- 20 does not divide", n.order)
