"""Brute-force verifiers, independent of every closed-form count.

Two substrates:

* finite abelian groups given by their cyclic factor orders, elements
  stored as coordinate tuples (element-order and cyclic-subgroup
  enumeration for the unit-group counts);
* arbitrary finite groups given by a Cayley table (full subgroup-lattice
  enumeration and the chain-count identity for conjugacy classes).

Everything proceeds by exhaustive enumeration; caps keep the worst
cases bounded and raise MagnitudeError when exceeded.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from itertools import permutations, product, starmap

from . import arith
from .errors import ConsistencyError, DomainError, MagnitudeError
from .profiles import CyclicBaseProfile

DEFAULT_ABELIAN_CAP = 100_000
DEFAULT_TABLE_CAP = 48


class AbelianGroup:
    """Direct product of cyclic groups, elements stored as coordinate tuples.

    Factors of order 1 are allowed so that a product can keep the
    positional layout of a construction even when a slot degenerates
    (positions matter to the dual-group oracle).
    """

    def __init__(self, factors, cap: int = DEFAULT_ABELIAN_CAP):
        factors = tuple(int(f) for f in factors)
        if any(f < 1 for f in factors):
            raise DomainError("cyclic factor orders must be >= 1")
        order = math.prod(factors)
        if order > cap:
            raise MagnitudeError(f"group order {order} exceeds cap {cap}")
        self.factors = factors
        self.order = order
        self._histogram = None

    def identity(self) -> tuple[int, ...]:
        return (0,) * len(self.factors)

    def elements(self):
        return product(*(range(f) for f in self.factors))

    def add(self, x, y):
        return tuple((a + b) % f for a, b, f in zip(x, y, self.factors))

    def element_order(self, x) -> int:
        order = 1
        for c, f in zip(x, self.factors):
            order = math.lcm(order, f // math.gcd(c, f))
        return order

    def order_histogram(self) -> Counter:
        """order -> element count, by iterating every element of the group."""
        if self._histogram is None:
            per_coord = [[f // math.gcd(c, f) for c in range(f)] for f in self.factors]
            self._histogram = Counter(starmap(math.lcm, product(*per_coord)))
        return self._histogram


def element_order_count(G: AbelianGroup, u: int) -> int:
    """Number of elements of G with order exactly u.

    Computed by iterating all elements, each order being the lcm of the
    coordinate orders.
    """
    if u < 1:
        raise DomainError("element order must be >= 1")
    return G.order_histogram().get(u, 0)


def dual_group(F: CyclicBaseProfile, d: int, cap: int = DEFAULT_ABELIAN_CAP) -> AbelianGroup:
    """The dual-side product for degree d over F.

    C_d x C_z x C_{p^r}^m x C_{p^{min(xi,r)}} with d = p^r * k,
    gcd(k, p) = 1 and z = gcd(k, p^f_abs - 1).  The C_d factor comes
    first; it is the distinguished coordinate for intersection counts.
    """
    if d < 1:
        raise DomainError("d must be >= 1")
    r, k = arith.p_valuation(d, F.p)
    z = arith.gcd_p_power_minus_one(k, F.p, F.f_abs)
    factors = (d, z) + (F.p**r,) * F.m + (F.p ** min(F.xi, r),)
    return AbelianGroup(factors, cap=cap)


def dual_cyclic_subgroup_count(Ghat: AbelianGroup, d: int, f: int, b_index: int = 0) -> int:
    """Cyclic subgroups H of Ghat of order d meeting the distinguished
    coordinate subgroup B in a subgroup of order f.

    Enumerates every element of order d, forms the generated subgroup as
    a canonical element set, deduplicates, and measures |H intersect B|,
    where B is the factor at b_index embedded coordinate-wise.
    """
    if f < 1 or d < 1:
        raise DomainError("d and f must be >= 1")
    if not 0 <= b_index < len(Ghat.factors):
        raise DomainError("b_index out of range")
    if Ghat.factors[b_index] != d:
        raise DomainError(
            f"distinguished factor must be C_{d}, found C_{Ghat.factors[b_index]}"
        )
    seen = set()
    hits = 0
    for x in Ghat.elements():
        if Ghat.element_order(x) != d:
            continue
        members = []
        cur = Ghat.identity()
        for _ in range(d):
            members.append(cur)
            cur = Ghat.add(cur, x)
        H = frozenset(members)
        if H in seen:
            continue
        seen.add(H)
        inside_b = sum(
            1
            for m in members
            if all(c == 0 for j, c in enumerate(m) if j != b_index)
        )
        if inside_b == f:
            hits += 1
    return hits


class GroupTable:
    """A finite group as an order x order multiplication table on indices.

    Construction verifies the group axioms outright: an identity exists,
    every row and column is a permutation, and the law is associative.
    """

    def __init__(self, table, name: str = ""):
        order = len(table)
        if order < 1:
            raise DomainError("group table must be non-empty")
        rows = [list(row) for row in table]
        if any(len(row) != order for row in rows):
            raise DomainError("group table must be square")
        if any(not 0 <= x < order for row in rows for x in row):
            raise DomainError("table entries must be element indices")

        identity = None
        for e in range(order):
            if all(rows[e][x] == x and rows[x][e] == x for x in range(order)):
                identity = e
                break
        if identity is None:
            raise DomainError("table has no identity element")
        everything = set(range(order))
        for x in range(order):
            if set(rows[x]) != everything:
                raise DomainError(f"row {x} is not a permutation")
            if {rows[y][x] for y in range(order)} != everything:
                raise DomainError(f"column {x} is not a permutation")
        for a in range(order):
            ra = rows[a]
            for b in range(order):
                rab = rows[ra[b]]
                rb = rows[b]
                for c in range(order):
                    if rab[c] != ra[rb[c]]:
                        raise DomainError(f"table is not associative at ({a}, {b}, {c})")

        self.table = rows
        self.order = order
        self.identity = identity
        self.name = name or f"group of order {order}"
        self._inverse = [row.index(identity) for row in rows]
        self._abelian = all(
            rows[a][b] == rows[b][a] for a in range(order) for b in range(a)
        )
        self._subgroups = None

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self._inverse[a]

    def conjugate(self, g: int, x: int) -> int:
        """g * x * g^-1."""
        return self.table[self.table[g][x]][self._inverse[g]]

    def is_abelian(self) -> bool:
        return self._abelian

    def element_order(self, x: int) -> int:
        order = 1
        cur = x
        while cur != self.identity:
            cur = self.table[cur][x]
            order += 1
        return order

    def __repr__(self):
        return f"GroupTable({self.name}, order={self.order})"


def _cyclic_members(G: GroupTable, g: int) -> frozenset:
    members = [G.identity]
    x = g
    while x != G.identity:
        members.append(x)
        x = G.table[x][g]
    return frozenset(members)


def _join_with_element(G: GroupTable, H: frozenset, g: int, cyc_g: frozenset) -> frozenset:
    """The subgroup generated by H and g (H already a subgroup)."""
    table = G.table
    if G.is_abelian():
        # <H, g> = {h * g^t}: products commute, so cosets of H by powers of g
        out = set()
        for t in cyc_g:
            row = table[t]
            out.update(row[h] for h in H)
        return frozenset(out)
    els = set(H)
    els.add(g)
    frontier = [g]
    while frontier:
        x = frontier.pop()
        row = table[x]
        for y in tuple(els):
            for z in (row[y], table[y][x]):
                if z not in els:
                    els.add(z)
                    frontier.append(z)
    return frozenset(els)


def subgroups(G: GroupTable, cap: int = DEFAULT_TABLE_CAP) -> list[tuple[int, ...]]:
    """Every subgroup of G, each as a sorted tuple of element indices.

    Works by closing generator sets: starting from the trivial subgroup,
    every known subgroup is joined with each cyclic subgroup (one new
    generator at a time) until no new subgroup appears.  Every subgroup
    is a join of cyclic ones, so the fixed point is complete.
    """
    if G.order > cap:
        raise MagnitudeError(f"group order {G.order} exceeds cap {cap}")
    if G._subgroups is None:
        cyc = [_cyclic_members(G, g) for g in range(G.order)]
        trivial = frozenset([G.identity])
        found = {trivial}
        work = [trivial]
        while work:
            H = work.pop()
            for g in range(G.order):
                if g in H:
                    continue
                J = _join_with_element(G, H, g, cyc[g])
                if J not in found:
                    found.add(J)
                    work.append(J)
        G._subgroups = sorted((tuple(sorted(S)) for S in found), key=lambda t: (len(t), t))
    return G._subgroups


@dataclass
class LemmaReport:
    """Both sides of the chain-count identity for index-n subgroups.

    lhs counts conjugacy classes of index-n subgroups; rhs is
    (1/n) * sum over d | n of phi(d) * T(d), where T(d) = chain_counts[d]
    counts chains H normal-in J <= G with (G:H) = n and J/H cyclic of
    order d.
    """

    n: int
    lhs: int
    rhs: int
    chain_counts: dict[int, int]
    equal: bool


def _is_normal_in(G: GroupTable, H: frozenset, J) -> bool:
    table = G.table
    inverse = G._inverse
    for j in J:
        row = table[j]
        inv_j = inverse[j]
        for h in H:
            if table[row[h]][inv_j] not in H:
                return False
    return True


def _quotient_has_coset_of_order(G: GroupTable, H: frozenset, J, d: int) -> bool:
    """Whether J/H (H normal in J) contains a coset of order exactly d."""
    if d == 1:
        return True
    table = G.table
    for j in J:
        if j in H:
            continue
        # order of the coset jH: smallest t with j^t in H
        t = 1
        x = j
        while x not in H:
            x = table[x][j]
            t += 1
        if t == d:
            return True
    return False


def lemma_check(G: GroupTable, n: int, cap: int = DEFAULT_TABLE_CAP) -> LemmaReport:
    """Verify the chain-count identity for index-n subgroups of G.

    The left side counts conjugacy classes of index-n subgroups directly.
    The right side sums phi(d) * T(d) over d | n, T(d) counting chains
    H normal-in J <= G with (G:H) = n and J/H cyclic of order d, and
    divides by n.  The family checked is all subgroups of G, which is
    closed under conjugation, so the identity must hold.
    """
    if n < 1 or G.order % n:
        raise DomainError(f"n = {n} does not divide |G| = {G.order}")
    subs = subgroups(G, cap=cap)
    target = G.order // n
    index_n = [frozenset(S) for S in subs if len(S) == target]

    seen = set()
    lhs = 0
    for H in index_n:
        if H in seen:
            continue
        lhs += 1
        for g in range(G.order):
            seen.add(frozenset(G.conjugate(g, x) for x in H))

    by_size: dict[int, list[frozenset]] = {}
    for S in subs:
        by_size.setdefault(len(S), []).append(frozenset(S))

    abelian = G.is_abelian()
    chain_counts: dict[int, int] = {}
    for d in arith.divisors(n):
        count = 0
        for H in index_n:
            for J in by_size.get(target * d, ()):
                if not H <= J:
                    continue
                if not abelian and not _is_normal_in(G, H, J):
                    continue
                if _quotient_has_coset_of_order(G, H, J, d):
                    count += 1
        chain_counts[d] = count

    weighted = sum(arith.euler_phi(d) * c for d, c in chain_counts.items())
    rhs, rem = divmod(weighted, n)
    if rem:
        raise ConsistencyError(
            f"chain-count sum {weighted} not divisible by n = {n} for {G.name}"
        )
    return LemmaReport(n=n, lhs=lhs, rhs=rhs, chain_counts=chain_counts, equal=lhs == rhs)


def _table_from_elements(elements, mul) -> list[list[int]]:
    index = {x: i for i, x in enumerate(elements)}
    return [[index[mul(a, b)] for b in elements] for a in elements]


def _abelian_table(factors) -> list[list[int]]:
    elements = list(product(*(range(f) for f in factors)))

    def mul(a, b):
        return tuple((x + y) % f for x, y, f in zip(a, b, factors))

    return _table_from_elements(elements, mul)


def _dihedral_table(n: int) -> list[list[int]]:
    # elements r^i s^b, encoded as (i, b); s r s = r^-1
    elements = [(i, b) for b in range(2) for i in range(n)]

    def mul(a, b):
        i1, b1 = a
        i2, b2 = b
        i = (i1 - i2) % n if b1 else (i1 + i2) % n
        return (i, b1 ^ b2)

    return _table_from_elements(elements, mul)


_QUATERNION_UNITS = {
    # (u1, u2) -> (sign, u3) on the basis 1, i, j, k
    (0, 0): (0, 0), (0, 1): (0, 1), (0, 2): (0, 2), (0, 3): (0, 3),
    (1, 0): (0, 1), (1, 1): (1, 0), (1, 2): (0, 3), (1, 3): (1, 2),
    (2, 0): (0, 2), (2, 1): (1, 3), (2, 2): (1, 0), (2, 3): (0, 1),
    (3, 0): (0, 3), (3, 1): (0, 2), (3, 2): (1, 1), (3, 3): (1, 0),
}


def _quaternion_table() -> list[list[int]]:
    elements = [(u, s) for u in range(4) for s in range(2)]

    def mul(a, b):
        (u1, s1), (u2, s2) = a, b
        sign, u3 = _QUATERNION_UNITS[(u1, u2)]
        return (u3, s1 ^ s2 ^ sign)

    return _table_from_elements(elements, mul)


def _perm_parity(perm) -> int:
    inversions = sum(
        1 for a in range(len(perm)) for b in range(a + 1, len(perm)) if perm[a] > perm[b]
    )
    return inversions % 2


def _permutation_table(k: int, even_only: bool = False) -> list[list[int]]:
    elements = [p for p in permutations(range(k)) if not (even_only and _perm_parity(p))]

    def mul(a, b):
        return tuple(a[b[i]] for i in range(k))

    return _table_from_elements(elements, mul)


def builtin_group(name: str, *params: int) -> GroupTable:
    """Construct a named, verified Cayley table.

    Known constructions: cyclic(n), abelian(f1, f2, ...), dihedral(n)
    of order 2n, quaternion8, symmetric(k) for k <= 4, alternating(4).
    """

    def expect(count):
        if len(params) != count:
            raise DomainError(f"{name} takes {count} parameter(s), got {len(params)}")

    if name == "cyclic":
        expect(1)
        (n,) = params
        if n < 1:
            raise DomainError("cyclic order must be >= 1")
        return GroupTable(_abelian_table((n,)), name=f"cyclic({n})")
    if name == "abelian":
        if not params:
            raise DomainError("abelian needs at least one factor")
        if any(f < 1 for f in params):
            raise DomainError("abelian factors must be >= 1")
        label = ",".join(str(f) for f in params)
        return GroupTable(_abelian_table(params), name=f"abelian({label})")
    if name == "dihedral":
        expect(1)
        (n,) = params
        if n < 1:
            raise DomainError("dihedral parameter must be >= 1")
        return GroupTable(_dihedral_table(n), name=f"dihedral({n})")
    if name == "quaternion8":
        expect(0)
        return GroupTable(_quaternion_table(), name="quaternion8")
    if name == "symmetric":
        expect(1)
        (k,) = params
        if not 1 <= k <= 4:
            raise DomainError("symmetric(k) supported for 1 <= k <= 4")
        return GroupTable(_permutation_table(k), name=f"symmetric({k})")
    if name == "alternating":
        expect(1)
        (k,) = params
        if k != 4:
            raise DomainError("alternating(k) supported for k = 4 only")
        return GroupTable(_permutation_table(k, even_only=True), name="alternating(4)")
    raise DomainError(f"unknown builtin group {name!r}")
