import copy
import json

import pytest

from hallnum.certificates import (
    CertificateError,
    HallSubgroupReport,
    WitnessCertificate,
    check_document,
    check_report,
    check_witness,
    dumps,
)
from hallnum.halltheory import generate_witness, verify_exceptional


@pytest.fixture(scope="module")
def brute_doc():
    return generate_witness(28).to_json()


@pytest.fixture(scope="module")
def case_doc():
    return generate_witness(20, brute_force=False).to_json()


@pytest.fixture(scope="module")
def report_doc():
    return verify_exceptional(24, 7).to_json()


def test_dumps_is_canonical():
    assert dumps({"b": 1, "a": [1, 2]}) == '{\n  "a": [\n    1,\n    2\n  ],\n  "b": 1\n}\n'


@pytest.mark.parametrize("name", ["brute_doc", "case_doc", "report_doc"])
def test_round_trip_is_byte_stable(name, request):
    doc = request.getfixturevalue(name)
    text = dumps(doc)
    assert dumps(json.loads(text)) == text
    cls = HallSubgroupReport if "q" in doc else WitnessCertificate
    assert cls.from_json(json.loads(text)).dumps() == text


def test_unknown_fields_are_ignored(brute_doc):
    doc = dict(brute_doc, extra_field={"x": 1})
    assert WitnessCertificate.from_json(doc).dumps() == dumps(brute_doc)
    check_witness(doc, replay=False)


def test_valid_documents_pass(brute_doc, case_doc, report_doc):
    for doc in (brute_doc, case_doc, report_doc):
        check_document(doc)


def _tampered(doc, path, value):
    doc = copy.deepcopy(doc)
    target = doc
    for key in path[:-1]:
        target = target[key]
    target[path[-1]] = value
    return doc


@pytest.mark.parametrize(
    "path, value",
    [
        (("witness_prime",), 17),
        (("witness_prime",), 15),
        (("split",), [2, 14]),
        (("hall_divisor", "cofactor"), 40),
        (("hall_divisor", "gcd"), 2),
        (("group", "order"), 2184),
        (("verification", "exhausted"), False),
        (("verification", "candidates_tried"), 1),
        (("verification", "mode"), "Trust"),
    ],
)
def test_tampered_witness_fails(brute_doc, path, value):
    with pytest.raises(CertificateError):
        check_witness(_tampered(brute_doc, path, value))


def test_tampered_case_analysis_fails(case_doc):
    doc = copy.deepcopy(case_doc)
    doc["verification"]["cases"][2]["gcd"] = 1
    with pytest.raises(CertificateError):
        check_witness(doc)
    doc = copy.deepcopy(case_doc)
    doc["verification"]["cases"].pop()
    with pytest.raises(CertificateError):
        check_witness(doc)


@pytest.mark.parametrize(
    "path, value",
    [
        (("group", "order"), 336),
        (("hall_divisor", "holds"), False),
        (("congruence", "residue"), 1),
        (("congruence", "holds"), False),
        (("recognized",), "A4"),
        (("subgroup", "order"), 12),
        (("subgroup", "generators"), [[1, 0, 0, 1]]),
        (("subgroup", "generators"), [[1, 1, 1, 1]]),
    ],
)
def test_tampered_report_fails(report_doc, path, value):
    with pytest.raises(CertificateError):
        check_report(_tampered(report_doc, path, value))


def test_malformed_and_unknown_documents():
    with pytest.raises(CertificateError):
        check_document({"schema": "nope"})
    with pytest.raises(CertificateError):
        WitnessCertificate.from_json({"m": 20})
    with pytest.raises(CertificateError):
        HallSubgroupReport.from_json({"m": 12})


def test_negative_report_passes():
    check_report(verify_exceptional(12, 7).to_json())
