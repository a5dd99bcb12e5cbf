"""Certificate documents and their independent re-checker.

Both document kinds serialize to JSON with sorted keys, so serializing a
parsed document again reproduces the original bytes.  Unknown fields are
ignored when reading.

The checker recomputes every arithmetic claim with plain integer operations
and, for brute-force certificates, replays the exhaustive search.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

SCHEMA_WITNESS = "hallnum/witness-certificate"
SCHEMA_REPORT = "hallnum/hall-subgroup-report"


class CertificateError(ValueError):
    pass


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


@dataclass
class WitnessCertificate:
    m: int
    split: tuple[int, int]
    witness_prime: int
    group_kind: str
    group_order: int
    cofactor: int
    gcd: int
    verification: dict = field(default_factory=dict)
    search: dict = field(default_factory=dict)
    downgraded: str | None = None
    tool_version: str = ""

    @property
    def mode(self) -> str:
        return self.verification.get("mode", "")

    def to_json(self) -> dict:
        doc = {
            "schema": SCHEMA_WITNESS,
            "m": self.m,
            "classification": "NotHall",
            "split": list(self.split),
            "witness_prime": self.witness_prime,
            "group": {"kind": self.group_kind, "p": self.witness_prime, "order": self.group_order},
            "hall_divisor": {"m": self.m, "cofactor": self.cofactor, "gcd": self.gcd},
            "verification": self.verification,
            "search": self.search,
            "tool_version": self.tool_version,
        }
        if self.downgraded:
            doc["downgraded"] = self.downgraded
        return doc

    def dumps(self) -> str:
        return dumps(self.to_json())

    @classmethod
    def from_json(cls, doc: dict) -> "WitnessCertificate":
        try:
            return cls(
                m=doc["m"],
                split=tuple(doc["split"]),
                witness_prime=doc["witness_prime"],
                group_kind=doc["group"]["kind"],
                group_order=doc["group"]["order"],
                cofactor=doc["hall_divisor"]["cofactor"],
                gcd=doc["hall_divisor"]["gcd"],
                verification=dict(doc["verification"]),
                search=dict(doc.get("search", {})),
                downgraded=doc.get("downgraded"),
                tool_version=doc.get("tool_version", ""),
            )
        except (KeyError, TypeError) as exc:
            raise CertificateError(f"malformed witness certificate: {exc}") from exc


@dataclass
class HallSubgroupReport:
    m: int
    q: int
    group_kind: str
    group_order: int
    hall_divisor: bool
    congruence: dict
    requested_q: int | None = None
    cofactor: int | None = None
    expected: str | None = None
    recognized: str | None = None
    generators: list[list[int]] = field(default_factory=list)
    subgroup_order: int | None = None
    pairs_tried: int | None = None
    table_row: str | None = None
    notes: list[str] = field(default_factory=list)
    tool_version: str = ""

    @property
    def found(self) -> bool:
        return self.recognized is not None

    @property
    def ok(self) -> bool:
        return self.found and self.recognized == self.expected

    def to_json(self) -> dict:
        doc = {
            "schema": SCHEMA_REPORT,
            "m": self.m,
            "classification": f"Exceptional({self.m})",
            "q": self.q,
            "group": {"kind": self.group_kind, "p": self.q, "order": self.group_order},
            "hall_divisor": {
                "m": self.m,
                "cofactor": self.cofactor,
                "gcd": math.gcd(self.m, self.cofactor) if self.cofactor else None,
                "holds": self.hall_divisor,
            },
            "congruence": self.congruence,
            "expected": self.expected,
            "recognized": self.recognized,
            "subgroup": {"order": self.subgroup_order, "generators": self.generators},
            "notes": list(self.notes),
            "tool_version": self.tool_version,
        }
        if self.requested_q is not None and self.requested_q != self.q:
            doc["requested_q"] = self.requested_q
        if self.pairs_tried is not None:
            doc["subgroup"]["pairs_tried"] = self.pairs_tried
        if self.table_row:
            doc["table_row"] = self.table_row
        return doc

    def dumps(self) -> str:
        return dumps(self.to_json())

    @classmethod
    def from_json(cls, doc: dict) -> "HallSubgroupReport":
        try:
            sub = doc.get("subgroup", {})
            return cls(
                m=doc["m"],
                q=doc["q"],
                group_kind=doc["group"]["kind"],
                group_order=doc["group"]["order"],
                hall_divisor=doc["hall_divisor"]["holds"],
                cofactor=doc["hall_divisor"].get("cofactor"),
                congruence=dict(doc["congruence"]),
                requested_q=doc.get("requested_q", doc["q"]),
                expected=doc.get("expected"),
                recognized=doc.get("recognized"),
                generators=[list(g) for g in sub.get("generators", [])],
                subgroup_order=sub.get("order"),
                pairs_tried=sub.get("pairs_tried"),
                table_row=doc.get("table_row"),
                notes=list(doc.get("notes", [])),
                tool_version=doc.get("tool_version", ""),
            )
        except (KeyError, TypeError) as exc:
            raise CertificateError(f"malformed Hall subgroup report: {exc}") from exc


# ---------------------------------------------------------------------------
# checker


def _prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 10**12:
        return all(n % k for k in range(2, math.isqrt(n) + 1))
    from sympy import isprime

    return bool(isprime(n))


def _unitary(d: int, n: int) -> bool:
    return n % d == 0 and math.gcd(d, n // d) == 1


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise CertificateError(message)


def check_witness(doc: dict, replay: bool = True) -> None:
    """Raise CertificateError unless ``doc`` proves m is not a Hall number."""
    cert = WitnessCertificate.from_json(doc)
    m, (a, b), p = cert.m, cert.split, cert.witness_prime
    _require(a * b == m and a > 2 and b > 2 and math.gcd(a, b) == 1, f"bad split {cert.split} of {m}")
    _require(_prime(p), f"{p} is not prime")
    _require(_unitary(a, p - 1) and _unitary(b, p + 1), f"{p} is not a witness prime for {cert.split}")
    order = p * (p * p - 1) // 2
    _require(cert.group_kind == "PSL" and cert.group_order == order, "group must be PSL(2,p) of order p(p^2-1)/2")
    _require(order == m * cert.cofactor, "cofactor does not match the group order")
    _require(math.gcd(m, cert.cofactor) == 1 == cert.gcd, "m is not a Hall divisor of the group order")
    _require(m not in (12, 24, 60), "exceptional m cannot have a witness")

    mode = cert.mode
    if mode == "BruteForce":
        _require(cert.verification.get("exhausted") is True, "brute-force certificate is not exhaustive")
        if replay:
            from .psl2 import build_group, find_subgroup_of_order

            cap = max(order, cert.search.get("group_cap", order))
            res = find_subgroup_of_order(build_group(p, "PSL", cap=cap), m, "exhaustive")
            _require(res.status == "not_found" and res.exhausted, f"replay found {res.status}")
            _require(
                res.pairs_tried == cert.verification.get("candidates_tried"),
                f"replay tried {res.pairs_tried} pairs, certificate says {cert.verification.get('candidates_tried')}",
            )
    elif mode == "CaseAnalysis":
        cases = {c.get("container"): c for c in cert.verification.get("cases", [])}
        borel = p * (p - 1) // 2
        for name, container, factor in (
            ("C_p:C_(p-1)/2", borel, b),
            ("D_(p-1)", p - 1, b),
            ("D_(p+1)", p + 1, a),
        ):
            case = cases.get(name)
            _require(case is not None, f"case {name} missing")
            g = math.gcd(factor, container)
            _require(case.get("container_order") == container and case.get("gcd") == g, f"case {name} miscomputed")
            _require(g <= 2 < factor, f"case {name}: factor {factor} is not blocked")
        _require("A4|S4|A5" in cases and cases["A4|S4|A5"].get("m_listed") is False, "A4/S4/A5 case missing")
    else:
        raise CertificateError(f"unknown verification mode {mode!r}")


def check_report(doc: dict) -> None:
    """Raise CertificateError unless ``doc`` is a consistent Hall subgroup report."""
    rep = HallSubgroupReport.from_json(doc)
    m, q, kind = rep.m, rep.q, rep.group_kind
    _require(_prime(q) and q >= 5, f"q={q} is not a prime >= 5")
    order = q * (q * q - 1) // (2 if kind == "PSL" else 1)
    _require(kind in ("PSL", "PGL") and rep.group_order == order, "group order mismatch")
    hall = _unitary(m, order)
    _require(rep.hall_divisor == hall, "Hall-divisor claim is wrong")
    fam_m = rep.congruence.get("family")
    modulus = rep.congruence.get("modulus")
    _require(rep.congruence.get("residue") == q * q % modulus, "congruence residue is wrong")
    fam_holds = _unitary(fam_m, (q * q - 1) // 2)
    if m == 60 and q == 5 and kind == "PSL":
        fam_holds = True
    _require(rep.congruence.get("holds") == fam_holds, "congruence verdict is wrong")
    if not hall:
        _require(rep.recognized is None, "non-Hall report cannot carry a subgroup")
        return

    from .psl2 import build_group, closure
    from .recognition import recognize

    _require(rep.expected is not None and rep.recognized == rep.expected, "recognized type differs from expectation")
    group = build_group(q, kind, cap=max(order, 1))
    try:
        gens = [int(group.lookup(g)[0]) for g in rep.generators]
    except KeyError as exc:
        raise CertificateError(f"generator outside {kind}(2,{q})") from exc
    sub = closure(group, gens, cap=m)
    _require(bool(sub) and sub.order == m == rep.subgroup_order, "generators do not span a subgroup of order m")
    _require(str(recognize(sub)) == rep.expected, f"generated subgroup is {recognize(sub)}, not {rep.expected}")


def check_document(doc: dict) -> None:
    schema = doc.get("schema")
    if schema == SCHEMA_WITNESS:
        check_witness(doc)
    elif schema == SCHEMA_REPORT:
        check_report(doc)
    else:
        raise CertificateError(f"unknown schema {schema!r}")
