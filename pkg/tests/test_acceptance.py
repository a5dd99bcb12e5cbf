"""Acceptance criteria, one test each.

Every test records a single PASS/FAIL line with its runtime against the
limit; the lines are repeated in the pytest terminal summary.
"""

import json
import math
import time
from contextlib import contextmanager

import numpy as np

from hallnum.certificates import HallSubgroupReport, WitnessCertificate, check_document, dumps
from hallnum.halltheory import (
    classify,
    family_primes,
    generate_witness,
    hall_congruence_holds,
    sylow2_class,
    verify_exceptional,
)
from hallnum.numtheory import BoundExhaustedError, WitnessPrimeQuery, factorize, find_witness_primes, is_hall_divisor
from hallnum.psl2 import DEFAULT_GROUP_CAP, build_group, closure, enumerate_subgroups, group_order, normalizer
from hallnum.recognition import dickson_check, recognize
from oracles import naive_primes, trial_factor, trial_prime

# documents emitted by earlier criteria, re-checked by criterion 10
EMITTED: list[dict] = []


@contextmanager
def criterion(record, number, title, limit=None):
    start = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        fast = limit is None or elapsed < limit
        bound = f" < {limit}s" if limit else ""
        status = "PASS" if ok and fast else "FAIL"
        record(f"criterion {number:2d}: {status}  {title}  ({elapsed:.2f}s{bound})")
    assert fast, f"criterion {number} took {elapsed:.2f}s, limit {limit}s"


def _odd_primes(lo, hi):
    return [q for q in naive_primes(hi) if q >= lo]


def test_c01_classifier(record_acceptance):
    def direct(m):
        f = trial_factor(m)
        prime_power = len(f) <= 1
        two_odd = f.get(2) == 1
        return not (prime_power or two_odd or m in (12, 24, 60))

    expected = [direct(m) for m in range(1, 10_001)]
    with criterion(record_acceptance, 1, "classify(m) for m <= 10000 matches the three conditions", 1.0):
        got = [classify(m).tag == "NotHall" for m in range(1, 10_001)]
        assert got == expected


def test_c02_congruence_equivalence(record_acceptance):
    primes = _odd_primes(5, 10_000)
    with criterion(record_acceptance, 2, "q^2 congruences <=> m || (q^2-1)/2 for primes 5 <= q <= 10^4", 1.0):
        for m in (12, 24, 60):
            for q in primes:
                if m == 60 and q == 5:
                    continue
                assert hall_congruence_holds(m, q) == is_hall_divisor(m, (q * q - 1) // 2), (m, q)


def test_c03_witness_45(record_acceptance):
    with criterion(record_acceptance, 3, "m=45: p=19, 3420 = 45 x 76, exhaustive search finds nothing", 30.0):
        cert = generate_witness(45)
        assert cert.witness_prime == 19
        assert cert.group_order == 3420 and cert.cofactor == 76 and math.gcd(45, 76) == 1 == cert.gcd
        assert cert.mode == "BruteForce" and cert.verification["exhausted"] is True
    EMITTED.append(cert.to_json())


def test_c04_witness_20(record_acceptance):
    with criterion(record_acceptance, 4, "m=20: p=29, 12180 = 20 x 609, exhaustive + normalizer oracle", 300.0):
        cert = generate_witness(20)
        assert cert.witness_prime == 29
        assert cert.group_order == 12180 and cert.cofactor == 609 and math.gcd(20, 609) == 1 == cert.gcd
        assert cert.mode == "BruteForce" and cert.verification["exhausted"] is True

        # a subgroup of order 20 has a normal Sylow 5-subgroup P, so it would lie in N(P)
        g = build_group(29)
        seen: set[int] = set()
        count = 0
        for x in np.flatnonzero(g.element_orders == 5).tolist():
            if x in seen:
                continue
            p5 = closure(g, [x])
            seen.update(p5.element_indices)
            n = normalizer(g, p5)
            assert n.order == 30 and str(recognize(n)) == "D30"
            assert n.order % 20 != 0
            count += 1
        assert count == 12180 // 30
    EMITTED.append(cert.to_json())


ROWS = [(12, 5, "PSL", "A4"), (24, 7, "PSL", "S4"), (24, 5, "PGL", "S4"), (60, 11, "PSL", "A5")]


def test_c05_exceptional_rows(record_acceptance):
    reports = []
    with criterion(record_acceptance, 5, "A4 < PSL(2,5), S4 < PSL(2,7), S4 < PGL(2,5), A5 < PSL(2,11)", 10.0):
        for m, q, kind, expected in ROWS:
            rep = verify_exceptional(m, q, kind)
            assert rep.recognized == expected == rep.expected and rep.subgroup_order == m
            reports.append(rep)
    EMITTED.extend(r.to_json() for r in reports)


def test_c06_dickson_conformance(record_acceptance):
    with criterion(record_acceptance, 6, "all pair-generated subgroups of PSL(2,p), p in 5,7,11,13, are Dickson", 600.0):
        for p in (5, 7, 11, 13):
            g = build_group(p)
            pairs = enumerate_subgroups(g, 2, use_conjugacy=False)
            for gens in pairs.values():
                sub = closure(g, gens)
                if sub.order < g.order:
                    assert dickson_check(p, sub), (p, str(recognize(sub)))
            if p in (5, 7):
                triples = enumerate_subgroups(g, 3, use_conjugacy=False)
                assert set(triples) == set(pairs)


def test_c07_witness_primes(record_acceptance):
    with criterion(record_acceptance, 7, "find_witness_primes gives >= 3 valid primes below 10^5", 5.0):
        for a, b in ((4, 5), (9, 5), (3, 8), (5, 12)):
            ps = find_witness_primes(WitnessPrimeQuery(a, b, 3, 10**5))
            assert len(ps) >= 3
            for p in ps:
                assert p < 10**5 and trial_prime(p)
                assert (p - 1) % a == 0 and math.gcd(a, (p - 1) // a) == 1
                assert (p + 1) % b == 0 and math.gcd(b, (p + 1) // b) == 1


def test_c08_sylow2_class(record_acceptance):
    primes = _odd_primes(5, 2000)
    with criterion(record_acceptance, 8, "sylow2_class(q) agrees with the 2-part of |PSL(2,q)|, q <= 2000", 1.0):
        for q in primes:
            part = 2 ** dict(factorize(q * (q * q - 1) // 2).factors).get(2, 0)
            cls = sylow2_class(q)
            assert (cls == 4) == (part == 4) and (cls == 8) == (part == 8), q


def test_c09_family_primes(record_acceptance):
    rows = [(12, "PSL", 12), (24, "PSL", 24), (24, "PGL", 12), (60, "PSL", 60)]
    reports = []
    with criterion(record_acceptance, 9, "family_primes >= 5 below 10^4; every q under the cap verifies", 120.0):
        for m in (12, 24, 60):
            assert len(family_primes(m, 5, 10**4)) == 5
        for m, kind, fam in rows:
            try:
                qs = family_primes(fam, 10**4, 10**4)
            except BoundExhaustedError as exc:
                qs = exc.found
            assert len(qs) >= 5
            for q in qs:
                if group_order(q, kind) > DEFAULT_GROUP_CAP:
                    continue
                rep = verify_exceptional(m, q, kind)
                assert rep.ok, (m, kind, q)
                reports.append(rep)
    EMITTED.extend(r.to_json() for r in reports)


def test_c10_certificate_integrity(record_acceptance):
    docs = list(EMITTED)
    if not docs:
        # run in isolation: emit a small but representative set
        docs = [generate_witness(45).to_json(), generate_witness(20, brute_force=False).to_json()]
        docs += [verify_exceptional(m, q, kind).to_json() for m, q, kind, _ in ROWS]
    docs.append(generate_witness(20, brute_force=False).to_json())
    docs.append(verify_exceptional(12, 7).to_json())
    with criterion(record_acceptance, 10, f"{len(docs)} emitted documents re-check and round-trip byte-stably"):
        for doc in docs:
            text = dumps(doc)
            again = json.loads(text)
            assert dumps(again) == text
            cls = WitnessCertificate if "witness_prime" in doc else HallSubgroupReport
            assert cls.from_json(again).dumps() == text
            check_document(again)
