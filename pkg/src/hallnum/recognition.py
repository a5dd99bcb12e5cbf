"""Isomorphism-type fingerprints for small subgroups.

Types are decided from (order, order spectrum, abelianness, centre order).
That is enough to separate the handful of groups that occur here: cyclic,
dihedral, Frobenius C_r:C_d, A4, S4, A5, SL(2,3), C2 x A4 and C5 x A4.  It is
not a general isomorphism test.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from sympy import divisors, primefactors, totient

from .psl2 import GroupTable, Subgroup, order_spectrum

MAX_ORDER = 120


@dataclass(frozen=True)
class IsoType:
    tag: str
    order: int
    params: tuple[int, ...] = ()
    spectrum: tuple[tuple[int, int], ...] = field(default=(), compare=False)

    def __str__(self):
        if self.tag == "Cyclic":
            return f"C{self.params[0]}"
        if self.tag == "Dihedral":
            return f"D{self.order}"
        if self.tag == "Frobenius_CpCd":
            r, d = self.params
            return f"C{r}:C{d}"
        if self.tag == "Other":
            return f"Other(order={self.order})"
        return self.tag

    def to_json(self) -> dict:
        out = {"tag": self.tag, "order": self.order, "name": str(self)}
        if self.params:
            out["params"] = list(self.params)
        return out


def cyclic(n: int) -> IsoType:
    return IsoType("Cyclic", n, (n,))


def dihedral(order: int) -> IsoType:
    return IsoType("Dihedral", order, (order // 2,))


def frobenius(r: int, d: int) -> IsoType:
    return IsoType("Frobenius_CpCd", r * d, (r, d))


def named(tag: str) -> IsoType:
    return IsoType(tag, NAMED_PROFILES[tag][0])


# (order, spectrum, abelian, centre order)
NAMED_PROFILES: dict[str, tuple[int, dict[int, int], bool, int]] = {
    "A4": (12, {1: 1, 2: 3, 3: 8}, False, 1),
    "S4": (24, {1: 1, 2: 9, 3: 8, 4: 6}, False, 1),
    "SL2_3": (24, {1: 1, 2: 1, 3: 8, 4: 6, 6: 8}, False, 2),
    "C2xA4": (24, {1: 1, 2: 7, 3: 8, 6: 8}, False, 2),
    "A5": (60, {1: 1, 2: 15, 3: 20, 5: 24}, False, 1),
    "C5xA4": (60, {1: 1, 2: 3, 3: 8, 5: 4, 10: 12, 15: 32}, False, 5),
}


def cyclic_spectrum(n: int) -> dict[int, int]:
    return {d: int(totient(d)) for d in divisors(n)}


def dihedral_spectrum(order: int) -> dict[int, int]:
    n = order // 2
    spec = cyclic_spectrum(n)
    spec[2] = spec.get(2, 0) + n
    return dict(sorted(spec.items()))


def _self_test() -> None:
    # named profiles must differ from each other and from every cyclic or
    # dihedral group of the same order
    seen: dict[tuple, str] = {}
    for tag, (order, spec, _, _) in NAMED_PROFILES.items():
        if sum(spec.values()) != order:
            raise AssertionError(f"profile {tag} does not sum to {order}")
        key = (order, tuple(sorted(spec.items())))
        for rival, rival_spec in (("cyclic", cyclic_spectrum(order)), ("dihedral", dihedral_spectrum(order))):
            if key == (order, tuple(sorted(rival_spec.items()))):
                raise AssertionError(f"profile {tag} collides with the {rival} group of order {order}")
        if key in seen:
            raise AssertionError(f"profiles {tag} and {seen[key]} collide")
        seen[key] = tag


_self_test()


def _commutes_with(group: GroupTable, x: int, ys) -> bool:
    return all(group.mul(x, y) == group.mul(y, x) for y in ys)


def _center_order(group: GroupTable, sub: Subgroup) -> int:
    probes = sub.generator_indices or sub.element_indices
    return sum(1 for x in sub.element_indices if _commutes_with(group, x, probes))


def recognize(sub: Subgroup) -> IsoType:
    if sub.order > MAX_ORDER:
        raise ValueError(f"recognition is limited to order <= {MAX_ORDER}, got {sub.order}")
    group = sub.group
    n = sub.order
    spec = order_spectrum(group, sub)
    spectrum = tuple(sorted(spec.items()))
    involutions = spec.get(2, 0)

    if n in spec:
        return IsoType("Cyclic", n, (n,), spectrum)
    if n == 4 and involutions == 3:
        return IsoType("Dihedral", 4, (2,), spectrum)
    if n % 2 == 0 and n >= 6 and (n // 2) in spec and involutions >= n // 2:
        return IsoType("Dihedral", n, (n // 2,), spectrum)

    for tag, (order, profile, abelian, z) in NAMED_PROFILES.items():
        if order == n and profile == spec:
            if _center_order(group, sub) == z and (z == n) == abelian:
                return IsoType(tag, n, (), spectrum)

    for r in primefactors(n):
        d = n // r
        if d == 1 or d % r == 0 or (r - 1) % d:
            continue
        # unique subgroup of order r, cyclic complements of order d
        if spec.get(r) == r - 1 and d in spec and all(o == r or d % o == 0 for o in spec):
            return IsoType("Frobenius_CpCd", n, (r, d), spectrum)

    return IsoType("Other", n, (), spectrum)


def dickson_check(p: int, sub: Subgroup) -> bool:
    """Is the recognized type one of the classical subgroup shapes of PSL(2,p)?

    The shapes are: subgroups of C_p:C_{(p-1)/2}, of D_{p-1}, of D_{p+1}, or
    A4, S4, A5 (accepted whenever found).
    """
    if sub.group.kind != "PSL" or sub.group.p != p:
        raise ValueError(f"subgroup does not live in PSL(2,{p})")
    if sub.order >= sub.group.order:
        raise ValueError("dickson_check applies to proper subgroups")
    t = recognize(sub)
    lo, hi = (p - 1) // 2, (p + 1) // 2
    if t.tag == "Cyclic":
        n = t.params[0]
        return n == p or lo % n == 0 or hi % n == 0
    if t.tag == "Dihedral":
        n = t.params[0]
        return lo % n == 0 or hi % n == 0 or (n == p and lo % 2 == 0)
    if t.tag == "Frobenius_CpCd":
        r, d = t.params
        return r == p and lo % d == 0
    return t.tag in ("A4", "S4", "A5")
