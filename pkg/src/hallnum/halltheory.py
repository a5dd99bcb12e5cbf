"""Hall numbers as executable decisions.

``classify`` sorts every positive integer into one of four tags; for a
non-Hall number ``generate_witness`` exhibits a prime p such that m is a Hall
divisor of |PSL(2,p)| but PSL(2,p) has no subgroup of order m.
``verify_exceptional`` checks that the groups PSL(2,q) / PGL(2,q) with the
right congruence on q really contain the A4, S4 or A5 Hall subgroup.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import __version__
from .certificates import HallSubgroupReport, WitnessCertificate
from .numtheory import (
    DEFAULT_PRIME_BOUND,
    BoundExhaustedError,
    WitnessPrimeQuery,
    factorize,
    find_witness_primes,
    is_hall_divisor,
    is_prime,
    iter_prime_chunks,
)
from .psl2 import (
    DEFAULT_GROUP_CAP,
    build_group,
    find_subgroup_of_order,
    group_order,
)
from .recognition import NAMED_PROFILES, recognize

EXCEPTIONAL = (12, 24, 60)
DEFAULT_MAX_PAIRS = 20_000_000

TAGS = ("PrimePower", "TwoTimesOdd", "Exceptional", "NotHall")


class NotAWitnessCase(ValueError):
    """generate_witness was asked about a Hall number."""


class ExceptionalMismatchError(AssertionError):
    """A group satisfying the congruence lacks the expected Hall subgroup."""


@dataclass
class Classification:
    m: int
    tag: str
    split: tuple[int, int] | None = None
    witness: WitnessCertificate | None = None

    @property
    def is_hall(self) -> bool:
        return self.tag != "NotHall"

    def __str__(self):
        if self.tag == "Exceptional":
            return f"Exceptional({self.m})"
        if self.tag == "NotHall":
            return f"NotHall(split={self.split[0]}x{self.split[1]})"
        return self.tag

    def to_json(self) -> dict:
        doc = {"m": self.m, "classification": str(self), "tag": self.tag, "is_hall": self.is_hall}
        if self.split:
            doc["split"] = list(self.split)
        if self.witness is not None:
            doc["witness"] = self.witness.to_json()
        return doc


def classify(m: int, witness: bool = False, **witness_options) -> Classification:
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    f = factorize(m)
    if f.omega <= 1:
        return Classification(m, "PrimePower")
    if m % 2 == 0 and (m // 2) % 2 == 1:
        return Classification(m, "TwoTimesOdd")
    if m in EXCEPTIONAL:
        return Classification(m, "Exceptional")
    c = Classification(m, "NotHall", split_coprime(m))
    if witness:
        c.witness = generate_witness(m, **witness_options)
    return c


def split_coprime(m: int) -> tuple[int, int] | None:
    """Canonical coprime split m = a*b with a, b > 2, or None for Hall numbers."""
    if m < 1:
        return None
    f = factorize(m)
    if f.omega <= 1 or m % 4 == 2 or m in EXCEPTIONAL:
        return None
    q, e = f.factors[0]
    a = q**e
    return a, m // a


# ---------------------------------------------------------------------------
# congruences


@dataclass(frozen=True)
class CongruenceFamily:
    m: int
    modulus: int
    residues: frozenset[int]

    def __contains__(self, q: int) -> bool:
        return (q * q) % self.modulus in self.residues


_FAMILIES = {
    12: CongruenceFamily(12, 144, frozenset({25, 121})),
    24: CongruenceFamily(24, 288, frozenset({49, 241})),
    60: CongruenceFamily(60, 3600, frozenset(120 * k + 1 for k in (1, 7, 11, 13, 17, 19, 23, 29))),
}


def congruence_family(m: int) -> CongruenceFamily:
    try:
        return _FAMILIES[m]
    except KeyError:
        raise ValueError(f"no congruence family for m={m}; expected one of {EXCEPTIONAL}") from None


def hall_congruence_holds(m: int, q: int) -> bool:
    """q^2 lies in the residue set for m; same as m || (q^2 - 1)/2 for odd q >= 5."""
    if q % 2 == 0:
        raise ValueError(f"q must be odd, got {q}")
    if q < 5:
        raise ValueError(f"q must be at least 5, got {q}")
    return q in congruence_family(m)


def sylow2_class(q: int) -> int | None:
    """4 if q = 3,5 (mod 8); 8 if q = 7,9 (mod 16); None otherwise."""
    if q % 2 == 0 or q < 5:
        raise ValueError(f"q must be odd and at least 5, got {q}")
    if q % 8 in (3, 5):
        return 4
    if q % 16 in (7, 9):
        return 8
    return None


def family_primes(m: int, count: int, bound: int) -> list[int]:
    """Primes q <= bound in the congruence family of m, increasing."""
    fam = congruence_family(m)
    residues = sorted(fam.residues)
    found: list[int] = []
    for chunk in iter_prime_chunks(bound, start=5):
        for q in chunk[np.isin((chunk * chunk) % fam.modulus, residues)].tolist():
            found.append(q)
            if len(found) == count:
                return found
    raise BoundExhaustedError(f"only {len(found)} of {count} primes for m={m} below {bound}", found)


# ---------------------------------------------------------------------------
# counterexample certificates


def case_analysis(m: int, a: int, b: int, p: int) -> list[dict]:
    """The containment argument, as checkable arithmetic facts.

    A subgroup of order m inside C_p:C_{(p-1)/2} or D_{p-1} would force b to
    divide gcd(p-1, p+1) = 2, and one inside D_{p+1} would force a to; both
    exceed 2.  The remaining shapes have order 12, 24 or 60.
    """
    borel = p * (p - 1) // 2
    return [
        {"container": "C_p:C_(p-1)/2", "container_order": borel, "factor": "b", "factor_value": b,
         "gcd": math.gcd(b, borel)},
        {"container": "D_(p-1)", "container_order": p - 1, "factor": "b", "factor_value": b,
         "gcd": math.gcd(b, p - 1)},
        {"container": "D_(p+1)", "container_order": p + 1, "factor": "a", "factor_value": a,
         "gcd": math.gcd(a, p + 1)},
        {"container": "A4|S4|A5", "orders": list(EXCEPTIONAL), "m_listed": m in EXCEPTIONAL},
    ]


def generate_witness(
    m: int,
    prime_bound: int = DEFAULT_PRIME_BOUND,
    group_cap: int = DEFAULT_GROUP_CAP,
    max_pairs: int | None = DEFAULT_MAX_PAIRS,
    brute_force: bool = True,
) -> WitnessCertificate:
    """Certificate that m is not a Hall number.

    Uses the least witness prime p for the canonical split (a, b).  The
    absence of a subgroup of order m in PSL(2,p) is shown by exhaustive pair
    search when the group fits under ``group_cap`` and the scan fits in
    ``max_pairs``; otherwise the certificate falls back to the case analysis
    and records why in ``downgraded``.
    """
    split = split_coprime(m)
    if split is None:
        raise NotAWitnessCase(f"{m} is a Hall number ({classify(m)}); no counterexample exists")
    a, b = split
    p = find_witness_primes(WitnessPrimeQuery(a, b, 1, prime_bound))[0]
    order = group_order(p, "PSL")
    if not is_hall_divisor(m, order):
        raise AssertionError(f"{m} is not a Hall divisor of |PSL(2,{p})| = {order}")
    cofactor = order // m
    cert = WitnessCertificate(
        m=m,
        split=(a, b),
        witness_prime=p,
        group_kind="PSL",
        group_order=order,
        cofactor=cofactor,
        gcd=math.gcd(m, cofactor),
        search={"prime_bound": prime_bound, "group_cap": group_cap, "max_pairs": max_pairs},
        tool_version=__version__,
    )
    reason = None
    if not brute_force:
        reason = "brute force disabled"
    elif order > group_cap:
        reason = f"group too large for brute force ({order} > {group_cap})"
    else:
        res = find_subgroup_of_order(build_group(p, "PSL", cap=group_cap), m, "exhaustive", max_pairs=max_pairs)
        if res.found:
            raise AssertionError(f"PSL(2,{p}) has a subgroup of order {m}: {res.subgroup.generator_indices}")
        if res.status == "budget_exceeded":
            reason = f"search budget exceeded ({max_pairs} pairs)"
        else:
            cert.verification = {
                "mode": "BruteForce",
                "candidates_tried": res.pairs_tried,
                "candidate_elements": res.candidates,
                "exhausted": res.exhausted,
            }
    if reason is not None:
        cert.downgraded = reason
        cert.verification = {"mode": "CaseAnalysis", "cases": case_analysis(m, a, b, p)}
    return cert


# ---------------------------------------------------------------------------
# exceptional Hall subgroups

# (m, kind) -> (expected type, congruence family used for q)
EXPECTED = {
    (12, "PSL"): ("A4", 12),
    (24, "PSL"): ("S4", 24),
    (24, "PGL"): ("S4", 12),
    (60, "PSL"): ("A5", 60),
}

TABLE_ROWS = {
    (12, "PSL"): "12 & A4 & PSL_2(q).C_e & q^2 = 25, 121 (mod 144)",
    (24, "PSL"): "24 & S4 & PSL_2(q).C_e & q^2 = 49, 241 (mod 288)",
    (24, "PGL"): "24 & S4 & PGL_2(q).C_e & q^2 = 25, 121 (mod 144)",
    (60, "PSL"): "60 & A5 & PSL_2(q).C_e & q^2 = 120k+1 (mod 3600)",
}


def expected_type(m: int, kind: str) -> str | None:
    hit = EXPECTED.get((m, kind.upper()))
    return hit[0] if hit else None


def verify_exceptional(
    m: int,
    q: int,
    kind: str = "PSL",
    cap: int = DEFAULT_GROUP_CAP,
    max_pairs: int | None = None,
) -> HallSubgroupReport:
    """Find the expected Hall subgroup of order m in PSL(2,q) or PGL(2,q).

    When m is not a Hall divisor of the group order the report says so and no
    search is run.  When it is, failing to find a subgroup of the expected
    type raises ExceptionalMismatchError.
    """
    if m not in EXCEPTIONAL:
        raise ValueError(f"m must be one of {EXCEPTIONAL}, got {m}")
    kind = kind.upper()
    if kind not in ("PSL", "PGL"):
        raise ValueError(f"kind must be PSL or PGL, got {kind!r}")
    notes = []
    requested_q = q
    if q == 4 and kind == "PSL":
        q = 5
        notes.append("PSL(2,4) is isomorphic to PSL(2,5); using q=5")
    if not is_prime(q) or q < 5:
        raise ValueError(f"q={q} must be a prime >= 5 (or 4 for PSL)")

    order = group_order(q, kind)
    hall = is_hall_divisor(m, order)
    exp = EXPECTED.get((m, kind))
    family_m = exp[1] if exp else m
    fam = congruence_family(family_m)
    holds = hall_congruence_holds(family_m, q)
    if m == 60 and q == 5 and kind == "PSL":
        holds = True
        notes.append("q=5: |PSL(2,5)| = 60, the group is its own Hall subgroup")
    if kind == "PSL" and m == 24:
        notes.append(f"Sylow 2-subgroup order {sylow2_order_of(q)}")

    report = HallSubgroupReport(
        m=m,
        q=q,
        requested_q=requested_q,
        group_kind=kind,
        group_order=order,
        hall_divisor=hall,
        cofactor=order // m if order % m == 0 else None,
        congruence={"family": family_m, "modulus": fam.modulus, "residue": q * q % fam.modulus, "holds": holds},
        expected=exp[0] if exp else None,
        table_row=TABLE_ROWS.get((m, kind)),
        notes=notes,
        tool_version=__version__,
    )
    if holds != hall:
        raise AssertionError(f"congruence ({holds}) and Hall-divisor test ({hall}) disagree for m={m}, q={q}")
    if not hall or exp is None:
        return report

    target = exp[0]
    group = build_group(q, kind, cap=cap)
    allowed = NAMED_PROFILES[target][1].keys()
    res = find_subgroup_of_order(
        group, m, "first", accept=lambda s: recognize(s).tag == target, max_pairs=max_pairs, allowed_orders=allowed
    )
    if not res.found:
        seen = sorted({str(recognize(s)) for s in res.rejected})
        raise ExceptionalMismatchError(
            f"{kind}(2,{q}) has no subgroup of type {target} and order {m} ({res.status}); other types seen: {seen}"
        )
    sub = res.subgroup
    report.generators = sub.generator_matrices()
    report.subgroup_order = sub.order
    report.recognized = str(recognize(sub))
    report.pairs_tried = res.pairs_tried
    return report


def sylow2_order_of(q: int) -> int:
    n = group_order(q, "PSL")
    return n & -n
