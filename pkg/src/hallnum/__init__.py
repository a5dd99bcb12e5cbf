"""Hall numbers: which m force a Hall subgroup of order m.

Integer classification, PSL(2,p) counterexample certificates for non-Hall
numbers, and verification of the exceptional A4 / S4 / A5 Hall subgroups.
"""

__version__ = "0.1.0"

from .halltheory import (  # noqa: E402
    classify,
    congruence_family,
    family_primes,
    generate_witness,
    hall_congruence_holds,
    split_coprime,
    sylow2_class,
    verify_exceptional,
)
from .numtheory import factorize, hall_divisors, is_hall_divisor, is_prime  # noqa: E402
from .psl2 import build_group, closure, find_subgroup_of_order, normalizer, order_spectrum  # noqa: E402
from .recognition import dickson_check, recognize  # noqa: E402

__all__ = [
    "build_group",
    "classify",
    "closure",
    "congruence_family",
    "dickson_check",
    "factorize",
    "family_primes",
    "find_subgroup_of_order",
    "generate_witness",
    "hall_congruence_holds",
    "hall_divisors",
    "is_hall_divisor",
    "is_prime",
    "normalizer",
    "order_spectrum",
    "recognize",
    "split_coprime",
    "sylow2_class",
    "verify_exceptional",
]
