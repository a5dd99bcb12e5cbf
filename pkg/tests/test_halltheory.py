import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

import hallnum.halltheory as ht
from hallnum.certificates import check_report, check_witness
from hallnum.halltheory import (
    EXCEPTIONAL,
    ExceptionalMismatchError,
    NotAWitnessCase,
    case_analysis,
    classify,
    congruence_family,
    family_primes,
    generate_witness,
    hall_congruence_holds,
    split_coprime,
    sylow2_class,
    verify_exceptional,
)
from hallnum.numtheory import BoundExhaustedError
from oracles import naive_primes, trial_factor, unitary


def _tag_oracle(m):
    f = trial_factor(m)
    if len(f) <= 1:
        return "PrimePower"
    if f.get(2) == 1:
        return "TwoTimesOdd"
    if m in (12, 24, 60):
        return "Exceptional"
    return "NotHall"


@pytest.mark.parametrize(
    "m, text",
    [
        (16, "PrimePower"),
        (1, "PrimePower"),
        (30, "TwoTimesOdd"),
        (60, "Exceptional(60)"),
        (20, "NotHall(split=4x5)"),
        (45, "NotHall(split=9x5)"),
        (36, "NotHall(split=4x9)"),
    ],
)
def test_classify_examples(m, text):
    assert str(classify(m)) == text


def test_classify_rejects_non_positive():
    with pytest.raises(ValueError):
        classify(0)


@given(st.integers(1, 10**6))
def test_classify_matches_oracle(m):
    c = classify(m)
    assert c.tag == _tag_oracle(m)
    assert c.is_hall == (c.tag != "NotHall")


@given(st.integers(1, 10**6))
def test_split_coprime_properties(m):
    split = split_coprime(m)
    if classify(m).is_hall:
        assert split is None
        return
    a, b = split
    assert a * b == m and a > 2 and b > 2 and math.gcd(a, b) == 1
    # a is a full prime-power part
    assert len(trial_factor(a)) == 1 and unitary(a, m)


def test_congruence_families():
    assert congruence_family(12).modulus == 144
    assert congruence_family(12).residues == {25, 121}
    assert congruence_family(24).residues == {49, 241}
    assert congruence_family(60).residues == {121, 841, 1321, 1561, 2041, 2281, 2761, 3481}
    with pytest.raises(ValueError):
        congruence_family(20)


def test_congruence_families_from_scratch():
    # residues of q^2 mod M for odd q coprime to M with m || (q^2-1)/2
    for m in EXCEPTIONAL:
        M = congruence_family(m).modulus
        derived = {q * q % M for q in range(1, M, 2) if math.gcd(q, M) == 1 and unitary(m, (q * q - 1) // 2)}
        assert derived == set(congruence_family(m).residues)


def test_hall_congruence_examples():
    assert hall_congruence_holds(12, 5)
    assert not hall_congruence_holds(12, 7)
    assert hall_congruence_holds(24, 7)
    assert hall_congruence_holds(60, 11)
    for q in (4, 3, 1):
        with pytest.raises(ValueError):
            hall_congruence_holds(12, q)


def test_sylow2_class_examples():
    assert sylow2_class(5) == 4
    assert sylow2_class(7) == 8
    assert sylow2_class(17) is None
    with pytest.raises(ValueError):
        sylow2_class(8)


def test_family_primes_values():
    assert family_primes(12, 10, 10**4) == [5, 11, 13, 29, 43, 59, 61, 67, 83, 101]
    assert family_primes(24, 10, 10**4) == [7, 23, 41, 103, 137, 151, 167, 263, 281, 311]
    assert family_primes(60, 10, 10**4) == [11, 29, 59, 61, 131, 139, 211, 229, 331, 389]


@pytest.mark.parametrize("m", EXCEPTIONAL)
def test_family_primes_match_definition(m):
    expect = [q for q in naive_primes(3000) if q >= 5 and unitary(m, (q * q - 1) // 2)]
    assert family_primes(m, len(expect), 3000) == expect


def test_family_primes_bound_exhausted():
    with pytest.raises(BoundExhaustedError) as info:
        family_primes(12, 10, 30)
    assert info.value.found == [5, 11, 13, 29]


def test_case_analysis_arithmetic():
    cases = {c["container"]: c for c in case_analysis(20, 4, 5, 29)}
    assert cases["C_p:C_(p-1)/2"]["container_order"] == 406
    assert cases["D_(p-1)"]["gcd"] == 1
    assert cases["D_(p+1)"]["gcd"] == 2
    assert cases["A4|S4|A5"]["m_listed"] is False


def test_generate_witness_rejects_hall_numbers():
    for m in (12, 16, 30):
        with pytest.raises(NotAWitnessCase):
            generate_witness(m)


def test_generate_witness_case_analysis_when_disabled():
    cert = generate_witness(20, brute_force=False)
    assert cert.witness_prime == 29 and cert.cofactor == 609 and cert.gcd == 1
    assert cert.mode == "CaseAnalysis" and cert.downgraded
    check_witness(cert.to_json())


def test_generate_witness_downgrades_on_cap():
    cert = generate_witness(20, group_cap=1000)
    assert cert.mode == "CaseAnalysis" and "too large" in cert.downgraded
    check_witness(cert.to_json())


def test_generate_witness_downgrades_on_budget():
    cert = generate_witness(20, max_pairs=1000)
    assert cert.mode == "CaseAnalysis" and "budget" in cert.downgraded


def test_generate_witness_brute_force_small():
    # m = 28 = 4 x 7: least witness prime 13, PSL(2,13) of order 1092
    cert = generate_witness(28)
    assert cert.witness_prime == 13 and cert.group_order == 1092 and cert.cofactor == 39
    assert cert.mode == "BruteForce" and cert.verification["exhausted"] is True
    check_witness(cert.to_json())


@pytest.mark.parametrize(
    "m, q, kind, expected",
    [(12, 5, "PSL", "A4"), (24, 7, "PSL", "S4"), (24, 5, "PGL", "S4"), (60, 11, "PSL", "A5"), (12, 11, "PSL", "A4")],
)
def test_verify_exceptional_finds_expected(m, q, kind, expected):
    rep = verify_exceptional(m, q, kind)
    assert rep.ok and rep.recognized == expected and rep.subgroup_order == m
    assert rep.congruence["holds"] and rep.hall_divisor
    check_report(rep.to_json())


def test_verify_exceptional_congruence_fails():
    rep = verify_exceptional(12, 7)
    assert not rep.hall_divisor and not rep.congruence["holds"] and not rep.found and not rep.ok
    check_report(rep.to_json())


def test_verify_exceptional_q4_alias():
    rep = verify_exceptional(12, 4)
    assert rep.q == 5 and rep.requested_q == 4 and rep.ok
    assert any("PSL(2,4)" in n for n in rep.notes)


def test_verify_exceptional_whole_group():
    rep = verify_exceptional(60, 5)
    assert rep.ok and rep.recognized == "A5" and rep.congruence["holds"]


def test_verify_exceptional_sylow_note():
    rep = verify_exceptional(24, 23)
    assert rep.ok and "Sylow 2-subgroup order 8" in rep.notes


def test_verify_exceptional_input_errors():
    with pytest.raises(ValueError):
        verify_exceptional(20, 5)
    with pytest.raises(ValueError):
        verify_exceptional(12, 9)
    with pytest.raises(ValueError):
        verify_exceptional(12, 5, kind="SL")


def test_verify_exceptional_mismatch(monkeypatch):
    monkeypatch.setitem(ht.EXPECTED, (12, "PSL"), ("C2xA4", 12))
    with pytest.raises(ExceptionalMismatchError):
        verify_exceptional(12, 5)


def test_pgl_uses_the_12_family():
    for q in naive_primes(200):
        if q < 5:
            continue
        rep = ht.EXPECTED[(24, "PGL")]
        assert rep[1] == 12
        assert hall_congruence_holds(12, q) == unitary(24, q * (q * q - 1))
