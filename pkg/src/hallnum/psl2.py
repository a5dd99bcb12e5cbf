"""Fully enumerated PSL(2,p), PGL(2,p) and SL(2,p) over prime fields.

Elements are 2x2 matrices over GF(p) stored in a canonical scalar class
representative, so equality is plain tuple equality:

* PSL: det 1, first nonzero entry (scan order a, b, c, d) in [1, (p-1)/2];
* PGL: first nonzero entry equal to 1;
* SL:  no quotient (used for small models such as SL(2,3)).

A :class:`GroupTable` is immutable once built.  Element 0 is the identity and
the remaining elements follow in increasing order of their code
``((a*p + b)*p + c)*p + d``.
"""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Literal

import numpy as np

from .numtheory import is_prime

Kind = Literal["PSL", "PGL", "SL"]
KINDS = ("PSL", "PGL", "SL")

DEFAULT_GROUP_CAP = 5_000_000
# Above this many elements no full Cayley table is kept.
CAYLEY_LIMIT = 4096
# Largest candidate set for which the pair search tabulates products.
CANDIDATE_TABLE_LIMIT = 4096


class GroupTooLargeError(ValueError):
    pass


def group_order(p: int, kind: Kind) -> int:
    if kind == "PSL":
        return p * (p - 1) * (p + 1) // 2
    if kind in ("PGL", "SL"):
        return p * (p - 1) * (p + 1)
    raise ValueError(f"unknown kind {kind!r}")


def env_group_cap() -> int:
    raw = os.environ.get("HALLNUM_CAP")
    return int(raw) if raw else DEFAULT_GROUP_CAP


# ---------------------------------------------------------------------------
# elements


def _canonical_tuple(p: int, kind: Kind, a: int, b: int, c: int, d: int) -> tuple[int, int, int, int]:
    a, b, c, d = a % p, b % p, c % p, d % p
    lead = a if a else b
    if kind == "PSL":
        if lead > (p - 1) // 2:
            a, b, c, d = (-a) % p, (-b) % p, (-c) % p, (-d) % p
    elif kind == "PGL":
        s = pow(lead, -1, p)
        a, b, c, d = a * s % p, b * s % p, c * s % p, d * s % p
    return a, b, c, d


@dataclass(frozen=True)
class ProjElement:
    """Canonical representative of a projective 2x2 matrix over GF(p)."""

    p: int
    kind: Kind
    entries: tuple[int, int, int, int]

    @classmethod
    def from_matrix(cls, p: int, kind: Kind, a: int, b: int, c: int, d: int) -> "ProjElement":
        det = (a * d - b * c) % p
        if det == 0:
            raise ValueError("singular matrix")
        if kind in ("PSL", "SL") and det != 1:
            if kind == "SL":
                raise ValueError(f"det {det} != 1 in SL(2,{p})")
            # a PSL element may be given by any matrix whose det is a square
            root = next((r for r in range(1, p) if r * r % p == det), None)
            if root is None:
                raise ValueError(f"det {det} is not a square mod {p}; not in PSL(2,{p})")
            s = pow(root, -1, p)
            a, b, c, d = a * s, b * s, c * s, d * s
        return cls(p, kind, _canonical_tuple(p, kind, a, b, c, d))

    @classmethod
    def identity(cls, p: int, kind: Kind) -> "ProjElement":
        return cls(p, kind, (1, 0, 0, 1))

    def __matmul__(self, other: "ProjElement") -> "ProjElement":
        return multiply(self, other)


def multiply(g: ProjElement, h: ProjElement) -> ProjElement:
    if (g.p, g.kind) != (h.p, h.kind):
        raise ValueError(f"cannot multiply elements of {g.kind}(2,{g.p}) and {h.kind}(2,{h.p})")
    p = g.p
    a1, b1, c1, d1 = g.entries
    a2, b2, c2, d2 = h.entries
    return ProjElement(
        p,
        g.kind,
        _canonical_tuple(p, g.kind, a1 * a2 + b1 * c2, a1 * b2 + b1 * d2, c1 * a2 + d1 * c2, c1 * b2 + d1 * d2),
    )


def invert(g: ProjElement) -> ProjElement:
    # adjugate; equals the inverse up to the scalar det
    a, b, c, d = g.entries
    return ProjElement(g.p, g.kind, _canonical_tuple(g.p, g.kind, d, -b, -c, a))


# ---------------------------------------------------------------------------
# vectorized arithmetic


def _canonicalize(p: int, kind: Kind, m: np.ndarray) -> np.ndarray:
    m = m % p
    if kind == "SL":
        return m
    lead = np.where(m[:, 0] != 0, m[:, 0], m[:, 1])
    if kind == "PSL":
        flip = lead > (p - 1) // 2
        m[flip] = (-m[flip]) % p
        return m
    inv = np.array([0] + [pow(x, -1, p) for x in range(1, p)], dtype=np.int64)
    return (m * inv[lead][:, None]) % p


def _product(p: int, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    a1, b1, c1, d1 = x.T
    a2, b2, c2, d2 = y.T
    return np.stack(
        [a1 * a2 + b1 * c2, a1 * b2 + b1 * d2, c1 * a2 + d1 * c2, c1 * b2 + d1 * d2], axis=1
    ) % p


def _enumerate(p: int, kind: Kind) -> np.ndarray:
    inv = np.array([0] + [pow(x, -1, p) for x in range(1, p)], dtype=np.int64)
    rng = np.arange(p, dtype=np.int64)
    blocks = []
    if kind == "PGL":
        b, c, d = (g.ravel() for g in np.meshgrid(rng, rng, rng, indexing="ij"))
        keep = (d - b * c) % p != 0
        blocks.append(np.stack([np.ones(keep.sum(), np.int64), b[keep], c[keep], d[keep]], axis=1))
        c, d = (g.ravel() for g in np.meshgrid(rng[1:], rng, indexing="ij"))
        blocks.append(np.stack([np.zeros_like(c), np.ones_like(c), c, d], axis=1))
    else:
        top = (p - 1) // 2 if kind == "PSL" else p - 1
        lead = np.arange(1, top + 1, dtype=np.int64)
        # a != 0: d = (1 + bc) / a
        a, b, c = (g.ravel() for g in np.meshgrid(lead, rng, rng, indexing="ij"))
        blocks.append(np.stack([a, b, c, (1 + b * c) * inv[a] % p], axis=1))
        # a == 0: c = -1/b
        b, d = (g.ravel() for g in np.meshgrid(lead, rng, indexing="ij"))
        blocks.append(np.stack([np.zeros_like(b), b, (-inv[b]) % p, d], axis=1))
    return np.concatenate(blocks)


def _encode(p: int, m: np.ndarray) -> np.ndarray:
    return ((m[:, 0] * p + m[:, 1]) * p + m[:, 2]) * p + m[:, 3]


def _projective_order_table(p: int) -> list[int]:
    """order_by_tau[t] for t = tr^2/det != 4, via s_k = zeta^k + zeta^-k."""
    table = [0] * p
    for tau in range(p):
        if tau == 4 % p:
            continue
        s1 = (tau - 2) % p
        prev, cur, k = 2, s1, 1
        while cur != 2:
            prev, cur = cur, (s1 * cur - prev) % p
            k += 1
        table[tau] = k
    return table


class GroupTable:
    """A fully enumerated matrix group over GF(p) with O(1)-ish index lookup."""

    def __init__(self, p: int, kind: Kind):
        self.p = p
        self.kind = kind
        mats = _canonicalize(p, kind, _enumerate(p, kind))
        codes = _encode(p, mats)
        order = np.argsort(codes, kind="stable")
        ident = int(np.flatnonzero(codes[order] == _encode(p, np.array([[1, 0, 0, 1]]))[0])[0])
        order = np.concatenate([order[ident : ident + 1], order[:ident], order[ident + 1 :]])
        self._mats = mats[order]
        self._mats.setflags(write=False)
        codes = codes[order]
        self._sorter = np.argsort(codes)
        self._sorted_codes = codes[self._sorter]
        self.order = len(self._mats)
        if self.order != group_order(p, kind):
            raise AssertionError(f"enumerated {self.order} elements, expected {group_order(p, kind)}")
        adj = np.stack([self._mats[:, 3], -self._mats[:, 1], -self._mats[:, 2], self._mats[:, 0]], axis=1)
        self._table: np.ndarray | None = None
        self._orders_list: list[int] | None = None
        self.inverses = self.lookup(adj)
        self.element_orders = self._compute_orders()

    def __repr__(self):
        return f"GroupTable({self.kind}(2,{self.p}), order={self.order})"

    def __len__(self):
        return self.order

    @property
    def name(self) -> str:
        return f"{self.kind}(2,{self.p})"

    # -- lookup ------------------------------------------------------------

    def lookup(self, mats: np.ndarray) -> np.ndarray:
        """Indices of (not necessarily canonical) matrices; KeyError if absent."""
        mats = _canonicalize(self.p, self.kind, np.asarray(mats, dtype=np.int64).reshape(-1, 4))
        codes = _encode(self.p, mats)
        pos = np.searchsorted(self._sorted_codes, codes)
        pos[pos == self.order] = 0
        if not np.array_equal(self._sorted_codes[pos], codes):
            raise KeyError(f"matrix not in {self.name}")
        return self._sorter[pos]

    def index_of(self, g: ProjElement) -> int:
        if (g.p, g.kind) != (self.p, self.kind):
            raise ValueError(f"{g} is not an element of {self.name}")
        return int(self.lookup(np.array(g.entries))[0])

    def element(self, i: int) -> ProjElement:
        return ProjElement(self.p, self.kind, tuple(int(x) for x in self._mats[i]))

    def matrix(self, i: int) -> list[int]:
        return [int(x) for x in self._mats[i]]

    # -- arithmetic --------------------------------------------------------

    def mul_indices(self, i: np.ndarray, j: np.ndarray) -> np.ndarray:
        i = np.asarray(i)
        j = np.asarray(j)
        if self._table is not None:
            return self._table[i, j]
        shape = np.broadcast(i, j).shape
        i, j = np.broadcast_to(i, shape).ravel(), np.broadcast_to(j, shape).ravel()
        return self.lookup(_product(self.p, self._mats[i], self._mats[j])).reshape(shape)

    def mul(self, i: int, j: int) -> int:
        if self._table is not None:
            return int(self._table[i, j])
        p = self.p
        a1, b1, c1, d1 = self._mats[i].tolist()
        a2, b2, c2, d2 = self._mats[j].tolist()
        a, b, c, d = _canonical_tuple(p, self.kind, a1 * a2 + b1 * c2, a1 * b2 + b1 * d2, c1 * a2 + d1 * c2, c1 * b2 + d1 * d2)
        code = ((a * p + b) * p + c) * p + d
        pos = int(np.searchsorted(self._sorted_codes, code))
        return int(self._sorter[pos])

    def inv(self, i: int) -> int:
        return int(self.inverses[i])

    @property
    def cayley(self) -> np.ndarray:
        """Full multiplication table (only for groups up to CAYLEY_LIMIT)."""
        if self._table is None:
            if self.order > CAYLEY_LIMIT:
                raise GroupTooLargeError(f"{self.name} has {self.order} > {CAYLEY_LIMIT} elements")
            n = self.order
            table = np.empty((n, n), dtype=np.int32)
            idx = np.arange(n)
            step = max(1, 2**20 // n)
            for lo in range(0, n, step):
                rows = idx[lo : lo + step]
                table[lo : lo + step] = self.mul_indices(rows[:, None], idx[None, :])
            table.setflags(write=False)
            self._table = table
        return self._table

    def has_cayley(self) -> bool:
        return self.order <= CAYLEY_LIMIT

    def _compute_orders(self) -> np.ndarray:
        p = self.p
        if self.kind == "SL":
            return _orders_by_powers(self)
        m = self._mats
        tr = (m[:, 0] + m[:, 3]) % p
        det = (m[:, 0] * m[:, 3] - m[:, 1] * m[:, 2]) % p
        inv = np.array([0] + [pow(x, -1, p) for x in range(1, p)], dtype=np.int64)
        tau = tr * tr % p * inv[det] % p
        table = np.array(_projective_order_table(p), dtype=np.int64)
        orders = np.where(tau == 4 % p, p, table[tau])
        orders[0] = 1
        return orders

    def orders_list(self) -> list[int]:
        if self._orders_list is None:
            self._orders_list = self.element_orders.tolist()
        return self._orders_list


def _orders_by_powers(group) -> np.ndarray:
    n = group.order
    idx = np.arange(n)
    orders = np.zeros(n, dtype=np.int64)
    cur = idx.copy()
    k = 1
    while (orders == 0).any():
        hit = (cur == 0) & (orders == 0)
        orders[hit] = k
        cur = group.mul_indices(cur, idx)
        k += 1
        if k > n + 1:
            raise AssertionError("element order exceeded the group order")
    return orders


class CayleyGroup:
    """A small group given by its multiplication table; identity is index 0.

    Shares the interface that searches and recognition rely on, so explicit
    models (permutation groups, direct products) can be fingerprinted too.
    """

    kind = "table"
    p = None

    def __init__(self, table, name: str = "table", labels: list | None = None):
        table = np.asarray(table, dtype=np.int32)
        n = table.shape[0]
        if table.shape != (n, n) or not np.array_equal(table[0], np.arange(n)):
            raise ValueError("table must be square with the identity at index 0")
        self._table = table
        self.order = n
        self.name = name
        self.labels = labels
        self.inverses = np.argmin(table, axis=1)
        self.element_orders = _orders_by_powers(self)

    def __len__(self):
        return self.order

    def __repr__(self):
        return f"CayleyGroup({self.name}, order={self.order})"

    @classmethod
    def from_permutations(cls, generators, name: str = "perm") -> "CayleyGroup":
        gens = [tuple(g) for g in generators]
        ident = tuple(range(len(gens[0])))
        elems = [ident]
        index = {ident: 0}
        k = 0
        while k < len(elems):
            e = elems[k]
            k += 1
            for g in gens:
                h = tuple(e[i] for i in g)
                if h not in index:
                    index[h] = len(elems)
                    elems.append(h)
        table = [[index[tuple(x[i] for i in y)] for y in elems] for x in elems]
        return cls(table, name, elems)

    @classmethod
    def direct_product(cls, left: "CayleyGroup", right: "CayleyGroup") -> "CayleyGroup":
        n, m = left.order, right.order
        lt, rt = left.cayley, right.cayley
        i = np.arange(n * m)
        a, b = i // m, i % m
        table = lt[a[:, None], a[None, :]] * m + rt[b[:, None], b[None, :]]
        return cls(table, f"{left.name}x{right.name}")

    @property
    def cayley(self) -> np.ndarray:
        return self._table

    def has_cayley(self) -> bool:
        return True

    def mul_indices(self, i, j):
        return self._table[np.asarray(i), np.asarray(j)]

    def mul(self, i: int, j: int) -> int:
        return int(self._table[i, j])

    def inv(self, i: int) -> int:
        return int(self.inverses[i])


# Large tables take hundreds of MB; only small ones are kept around.
CACHE_ORDER_LIMIT = 250_000


@lru_cache(maxsize=32)
def _cached_group(p: int, kind: Kind) -> GroupTable:
    return GroupTable(p, kind)


def _get_group(p: int, kind: Kind) -> GroupTable:
    if group_order(p, kind) <= CACHE_ORDER_LIMIT:
        return _cached_group(p, kind)
    return GroupTable(p, kind)


def build_group(p: int, kind: Kind = "PSL", cap: int | None = None) -> GroupTable:
    """Enumerate PSL(2,p) or PGL(2,p) for a prime p >= 5.

    Small tables are cached per (p, kind); all tables are immutable.
    """
    kind = kind.upper()
    if kind not in ("PSL", "PGL"):
        raise ValueError(f"kind must be PSL or PGL, got {kind!r}")
    if not is_prime(p) or p < 5:
        raise ValueError(f"p={p} must be a prime >= 5")
    cap = env_group_cap() if cap is None else cap
    if group_order(p, kind) > cap:
        raise GroupTooLargeError(f"|{kind}(2,{p})| = {group_order(p, kind)} exceeds the cap {cap}")
    return _get_group(p, kind)


def build_special_linear(p: int) -> GroupTable:
    """SL(2,p) without the scalar quotient, for small model groups."""
    if not is_prime(p):
        raise ValueError(f"p={p} must be prime")
    if group_order(p, "SL") > CAYLEY_LIMIT:
        raise GroupTooLargeError(f"SL(2,{p}) is too large for a model group")
    return _cached_group(p, "SL")


def element_order(group: GroupTable, i: int) -> int:
    return int(group.element_orders[i])


# ---------------------------------------------------------------------------
# subgroups


@dataclass(frozen=True)
class Subgroup:
    group: GroupTable = field(repr=False, compare=False)
    generator_indices: tuple[int, ...]
    element_indices: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.element_indices)

    @property
    def key(self) -> bytes:
        return np.asarray(self.element_indices, dtype=np.int32).tobytes()

    def __contains__(self, i: int) -> bool:
        return i in self._members

    @property
    def _members(self) -> frozenset[int]:
        cache = self.__dict__.get("_member_cache")
        if cache is None:
            cache = frozenset(self.element_indices)
            object.__setattr__(self, "_member_cache", cache)
        return cache

    def generator_matrices(self) -> list[list[int]]:
        return [self.group.matrix(i) for i in self.generator_indices]

    def is_closed(self) -> bool:
        members = self._members
        return 0 in members and all(
            self.group.mul(x, y) in members for x in self.element_indices for y in self.element_indices
        )


class CapExceeded:
    """Returned by :func:`closure` when the generated subgroup outgrows the cap."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "CAP_EXCEEDED"

    def __bool__(self):
        return False


CAP_EXCEEDED = CapExceeded()


def _closure_mask(group: GroupTable, gens: np.ndarray, cap: int) -> np.ndarray | None:
    mask = np.zeros(group.order, dtype=bool)
    mask[0] = True
    count = 1
    frontier = np.zeros(1, dtype=np.int64)
    gens = np.unique(np.asarray(gens, dtype=np.int64))
    while frontier.size:
        prods = group.mul_indices(frontier[:, None], gens[None, :]).ravel()
        new = np.unique(prods[~mask[prods]])
        count += new.size
        if count > cap:
            return None
        mask[new] = True
        frontier = new
    return mask


def closure(group: GroupTable, generators: Iterable[int], cap: int | None = None) -> Subgroup | CapExceeded:
    """Smallest subgroup containing ``generators``, or CAP_EXCEEDED."""
    gens = tuple(int(g) for g in generators)
    for g in gens:
        if not 0 <= g < group.order:
            raise IndexError(f"element index {g} out of range for {group.name}")
    cap = group.order if cap is None else cap
    if cap < 1:
        raise ValueError("cap must be at least 1")
    if not gens:
        return Subgroup(group, (), (0,))
    mask = _closure_mask(group, np.array(gens), cap)
    if mask is None:
        return CAP_EXCEEDED
    return Subgroup(group, gens, tuple(np.flatnonzero(mask).tolist()))


def subgroup_from_elements(group: GroupTable, elements: Iterable[int]) -> Subgroup:
    """Wrap a closed element set, choosing a small generating set greedily."""
    elems = sorted(set(int(e) for e in elements))
    gens: list[int] = []
    span = {0}
    for x in elems:
        if x not in span:
            gens.append(x)
            sub = closure(group, gens)
            span = set(sub.element_indices)
    if span != set(elems):
        raise ValueError("element set is not a subgroup")
    return Subgroup(group, tuple(gens), tuple(elems))


def whole_group(group: GroupTable) -> Subgroup:
    gens = _generating_pair(group)
    return Subgroup(group, gens, tuple(range(group.order)))


def _generating_pair(group: GroupTable) -> tuple[int, ...]:
    if group.order == 1:
        return ()
    orders = group.element_orders
    # elements of maximal order first keep the scan short
    ranked = np.argsort(-orders, kind="stable")[: min(group.order, 64)]
    for i in ranked:
        if orders[i] == group.order:
            return (int(i),)
    for i in ranked:
        for j in range(1, group.order):
            if _closure_mask(group, np.array([i, j]), group.order - 1) is None:
                return (int(i), int(j))
    raise AssertionError(f"{group.name} is not 2-generated")


def conjugate(group: GroupTable, sub: Subgroup, g: int) -> Subgroup:
    """g * sub * g^-1."""
    gi = group.inv(g)
    conj = lambda x: group.mul(group.mul(g, x), gi)  # noqa: E731
    elems = tuple(sorted(conj(x) for x in sub.element_indices))
    return Subgroup(group, tuple(conj(x) for x in sub.generator_indices), elems)


def normalizer(group: GroupTable, sub: Subgroup) -> Subgroup:
    """{g : g sub g^-1 = sub}."""
    members = np.zeros(group.order, dtype=bool)
    members[list(sub.element_indices)] = True
    probes = sub.generator_indices or sub.element_indices
    everything = np.arange(group.order)
    ok = np.ones(group.order, dtype=bool)
    for h in probes:
        c = group.mul_indices(group.mul_indices(everything, h), group.inverses)
        ok &= members[c]
    elems = np.flatnonzero(ok).tolist()
    if len(elems) == group.order:
        return whole_group(group)
    return subgroup_from_elements(group, elems)


def order_spectrum(group: GroupTable, sub: Subgroup | None = None) -> dict[int, int]:
    if sub is None:
        vals, counts = np.unique(group.element_orders, return_counts=True)
        return {int(v): int(c) for v, c in zip(vals, counts)}
    orders = group.element_orders[list(sub.element_indices)]
    return dict(sorted(Counter(orders.tolist()).items()))


def sylow2_order(group: GroupTable) -> int:
    n = group.order
    part = 1
    while n % 2 == 0:
        n //= 2
        part *= 2
    return part


# ---------------------------------------------------------------------------
# search for a subgroup of given order


@dataclass
class SubgroupSearchResult:
    status: Literal["found", "not_found", "budget_exceeded"]
    m: int
    subgroup: Subgroup | None = None
    exhausted: bool = False
    candidates: int = 0
    pairs_tried: int = 0
    reason: str = ""
    subgroups: list[Subgroup] = field(default_factory=list)
    rejected: list[Subgroup] = field(default_factory=list)

    @property
    def found(self) -> bool:
        return self.status == "found"


def search_candidates(group: GroupTable, m: int) -> np.ndarray:
    """Non-identity elements whose order divides m, ascending by index."""
    cand = np.flatnonzero(m % group.element_orders == 0)
    return cand[cand != 0]


def find_subgroup_of_order(
    group: GroupTable,
    m: int,
    mode: Literal["first", "exhaustive"] = "first",
    accept: Callable[[Subgroup], bool] | None = None,
    max_pairs: int | None = None,
    allowed_orders: Iterable[int] | None = None,
) -> SubgroupSearchResult:
    """Search for a subgroup of order ``m`` generated by at most two elements.

    Generators are restricted to elements whose order divides ``m`` and a
    closure is abandoned as soon as it exceeds ``m`` elements or produces an
    element whose order does not divide ``m``; neither can happen inside a
    subgroup of order ``m``.  Pairs (x, y) with x <= y are scanned in index
    order, so the first hit is deterministic.  Since every subgroup of
    PSL(2,p) is generated by two elements, a finished scan with no hit shows
    no subgroup of order ``m`` exists.

    ``accept`` filters hits (rejected subgroups keep the scan going).
    ``mode="exhaustive"`` scans every pair and lists all distinct accepted
    subgroups.  Exceeding ``max_pairs`` gives status ``"budget_exceeded"``.
    ``allowed_orders`` narrows the admissible element orders further (for a
    search aimed at one isomorphism type); it must only contain divisors of m.
    """
    if mode not in ("first", "exhaustive"):
        raise ValueError(f"mode must be 'first' or 'exhaustive', got {mode!r}")
    if m < 1:
        raise ValueError("m must be positive")
    res = SubgroupSearchResult("not_found", m)
    if group.order % m:
        res.exhausted = True
        res.reason = "lagrange"
        return res

    def offer(sub: Subgroup) -> bool:
        if accept is not None and not accept(sub):
            res.rejected.append(sub)
            return False
        res.subgroups.append(sub)
        if res.subgroup is None:
            res.subgroup = sub
            res.status = "found"
        return mode == "first"

    if m == 1 or m == group.order:
        res.exhausted = True
        res.reason = "trivial"
        offer(Subgroup(group, (), (0,)) if m == 1 else whole_group(group))
        return res

    cand = search_candidates(group, m)
    if allowed_orders is not None:
        allowed = sorted(set(int(o) for o in allowed_orders))
        if any(m % o for o in allowed):
            raise ValueError("allowed_orders must divide m")
        cand = cand[np.isin(group.element_orders[cand], allowed)]
    res.candidates = int(cand.size)
    if cand.size + 1 <= CANDIDATE_TABLE_LIMIT:
        scan = _scan_with_table(group, m, cand)
    else:
        scan = _scan_direct(group, m, cand, allowed_orders)

    seen: set[bytes] = set()
    for pairs, gens, elems in scan:
        res.pairs_tried = pairs
        if max_pairs is not None and pairs > max_pairs:
            res.pairs_tried = max_pairs
            res.status = "budget_exceeded" if res.subgroup is None else res.status
            res.reason = f"pair budget {max_pairs} exhausted"
            return res
        if elems is None:
            continue
        sub = Subgroup(group, gens, tuple(sorted(elems)))
        if sub.key in seen:
            continue
        seen.add(sub.key)
        if offer(sub):
            return res
    res.exhausted = True
    if res.subgroup is None:
        res.reason = "exhaustive pair search"
    return res


def _scan_with_table(group: GroupTable, m: int, cand: np.ndarray):
    """Yield (pairs_tried, generators, elements-or-None) over candidate pairs.

    Products among {identity} + candidates are tabulated once; a product that
    leaves the candidate set is stored as -1.
    """
    local = np.concatenate([[0], cand]).astype(np.int64)
    width = local.size
    to_local = np.full(group.order, -1, dtype=np.int32)
    to_local[local] = np.arange(width, dtype=np.int32)
    table = np.empty((width, width), dtype=np.int32)
    step = max(1, 2**20 // width)
    for lo in range(0, width, step):
        rows = local[lo : lo + step]
        table[lo : lo + step] = to_local[group.mul_indices(rows[:, None], local[None, :])]
    flat = memoryview(table.reshape(-1))
    local_list = local.tolist()

    pairs = 0
    for x in range(1, width):
        cyc = {0}
        y = x
        while y:
            cyc.add(y)
            y = flat[y * width + x]
        for y in range(x, width):
            pairs += 1
            if y != x and y in cyc:
                yield pairs, None, None  # same closure as (x, x)
                continue
            elems = _local_closure(flat, width, x, y, m)
            if elems is None or len(elems) != m:
                yield pairs, None, None
            else:
                yield pairs, _gens(local_list[x], local_list[y]), [local_list[e] for e in elems]


def _gens(x: int, y: int) -> tuple[int, ...]:
    return (x,) if x == y else (x, y)


def _local_closure(flat, width: int, x: int, y: int, cap: int) -> list[int] | None:
    elems = [0]
    seen = {0}
    gens = (x,) if x == y else (x, y)
    k = 0
    while k < len(elems):
        base = elems[k] * width
        k += 1
        for g in gens:
            h = flat[base + g]
            if h < 0:
                return None
            if h not in seen:
                seen.add(h)
                elems.append(h)
                if len(elems) > cap:
                    return None
    return elems


def _scan_direct(group: GroupTable, m: int, cand: np.ndarray, allowed_orders=None):
    """Same scan as _scan_with_table, multiplying elements on demand."""
    orders = group.element_orders
    allowed = set(allowed_orders) if allowed_orders is not None else None
    mul = group.mul
    cand_list = cand.tolist()
    pairs = 0

    def bounded(gens: tuple[int, ...]) -> list[int] | None:
        elems = [0]
        seen = {0}
        k = 0
        while k < len(elems):
            e = elems[k]
            k += 1
            for g in gens:
                h = mul(e, g)
                if h not in seen:
                    o = int(orders[h])
                    if m % o or (allowed is not None and o not in allowed):
                        return None
                    seen.add(h)
                    elems.append(h)
                    if len(elems) > m:
                        return None
        return elems

    for ix, x in enumerate(cand_list):
        cyc = {0}
        y = x
        while y:
            cyc.add(y)
            y = mul(y, x)
        for y in cand_list[ix:]:
            pairs += 1
            if y != x and y in cyc:
                yield pairs, None, None
                continue
            elems = bounded((x,) if x == y else (x, y))
            if elems is None or len(elems) != m:
                yield pairs, None, None
            else:
                yield pairs, _gens(x, y), elems


# ---------------------------------------------------------------------------
# subgroup enumeration (Cayley-table groups only)


def conjugacy_class_representatives(group: GroupTable) -> list[int]:
    table = group.cayley
    inv = group.inverses
    everything = np.arange(group.order)
    seen = np.zeros(group.order, dtype=bool)
    reps = []
    for x in range(group.order):
        if seen[x]:
            continue
        reps.append(x)
        seen[table[table[everything, x], inv]] = True
    return reps


def _table_closure(table: np.ndarray, n: int, gens) -> np.ndarray:
    mask = np.zeros(n, dtype=bool)
    mask[0] = True
    frontier = np.zeros(1, dtype=np.int64)
    gens = np.asarray(gens, dtype=np.int64)
    while frontier.size:
        prods = table[frontier[:, None], gens[None, :]].ravel()
        new = np.unique(prods[~mask[prods]])
        mask[new] = True
        frontier = new
    return np.flatnonzero(mask)


def _conjugates(group: GroupTable, elems: np.ndarray) -> set[bytes]:
    table = group.cayley
    everything = np.arange(group.order)
    conj = table[table[everything[:, None], elems[None, :]], group.inverses[:, None]]
    rows = np.unique(np.sort(conj, axis=1).astype(np.int32), axis=0)
    return {r.tobytes() for r in rows}


def enumerate_subgroups(group: GroupTable, rank: int = 2, use_conjugacy: bool = True) -> dict[bytes, tuple[int, ...]]:
    """All subgroups generated by at most ``rank`` (2 or 3) elements.

    Returns a map from subgroup key (sorted int32 element bytes) to one
    generating tuple.  With ``use_conjugacy`` the first generator runs over
    conjugacy class representatives (rank 2) or the pair subgroups over class
    representatives (rank 3), and the result is closed under conjugation;
    this is exact because conjugation permutes generating tuples.
    """
    if rank not in (2, 3):
        raise ValueError("rank must be 2 or 3")
    table = group.cayley
    n = group.order
    found: dict[bytes, tuple[int, ...]] = {}

    def add(gens: tuple[int, ...]):
        elems = _table_closure(table, n, gens)
        key = elems.astype(np.int32).tobytes()
        found.setdefault(key, gens)

    if rank == 2:
        firsts = conjugacy_class_representatives(group) if use_conjugacy else range(n)
        for x in firsts:
            for y in range(0 if use_conjugacy else x, n):
                add((x, y))
    else:
        pair_subs = enumerate_subgroups(group, 2, use_conjugacy)
        bases = pair_subs
        if use_conjugacy:
            bases = _class_representatives_of_subgroups(group, pair_subs)
        for gens in list(bases.values()):
            for z in range(n):
                add(tuple(gens) + (z,))

    if use_conjugacy:
        closed: dict[bytes, tuple[int, ...]] = {}
        for key, gens in found.items():
            if key in closed:
                continue
            elems = np.frombuffer(key, dtype=np.int32).astype(np.int64)
            for ck in _conjugates(group, elems):
                closed.setdefault(ck, gens if ck == key else ())
        for key in closed:
            if not closed[key]:
                elems = np.frombuffer(key, dtype=np.int32).tolist()
                closed[key] = subgroup_from_elements(group, elems).generator_indices
        found = closed
    return found


def _class_representatives_of_subgroups(group: GroupTable, subs: dict[bytes, tuple[int, ...]]) -> dict[bytes, tuple[int, ...]]:
    reps: dict[bytes, tuple[int, ...]] = {}
    covered: set[bytes] = set()
    for key, gens in subs.items():
        if key in covered:
            continue
        reps[key] = gens
        covered |= _conjugates(group, np.frombuffer(key, dtype=np.int32).astype(np.int64))
    return reps
