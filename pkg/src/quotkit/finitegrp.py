"""Finite permutation groups at desk scale.

Permutations are tuples of 0-based images; ``pmul(a, b)`` applies a first and
then b, matching the right-action convention used across the package.  Groups
store explicit element sets (no stabilizer chains), with a hard order bound.
On top of that sit conjugacy machinery, full subgroup enumeration, the poset
of conjugacy classes of subgroups with meet/join, and an isomorphism-class
signature with a brute-force confirmation search below a configurable order.
"""

from __future__ import annotations

import itertools
from collections import Counter, deque

Perm = tuple[int, ...]

DEFAULT_ORDER_BOUND = 10_000

# brute-force isomorphism confirmation and full subgroup scans below this
ISO_CONFIRM_BOUND = 128
SUBGROUP_ORDER_CAP = 16


class OrderBoundExceeded(RuntimeError):
    pass


def identity_perm(degree: int) -> Perm:
    return tuple(range(degree))


def pmul(a: Perm, b: Perm) -> Perm:
    """a then b."""
    return tuple(b[x] for x in a)


def pinv(a: Perm) -> Perm:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def perm_order(a: Perm) -> int:
    order = 1
    x = a
    e = identity_perm(len(a))
    while x != e:
        x = pmul(x, a)
        order += 1
    return order


def perm_conj(a: Perm, g: Perm) -> Perm:
    """g^-1 a g."""
    return pmul(pmul(pinv(g), a), g)


def from_one_line(images, degree: int | None = None) -> Perm:
    """Parse a 1-based one-line image list."""
    images = list(images)
    degree = degree or len(images)
    if sorted(images) != list(range(1, len(images) + 1)):
        raise ValueError(f"not a permutation: {images}")
    out = [x - 1 for x in images]
    out.extend(range(len(images), degree))
    return tuple(out)


def to_one_line(p: Perm) -> list[int]:
    return [x + 1 for x in p]


def from_cycles(cycles, degree: int) -> Perm:
    """Build a permutation from 1-based cycles, e.g. [[1,2],[3,4,5]]."""
    out = list(range(degree))
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            out[a - 1] = b - 1
    return tuple(out)


def mulclose(gens, bound: int = DEFAULT_ORDER_BOUND) -> frozenset:
    """Closure of a generator list under multiplication, with an order bound."""
    gens = [g for g in gens]
    if not gens:
        raise ValueError("need at least one permutation (give the identity)")
    e = identity_perm(len(gens[0]))
    seen = {e}
    frontier = deque([e])
    while frontier:
        x = frontier.popleft()
        for g in gens:
            y = pmul(x, g)
            if y not in seen:
                if len(seen) >= bound:
                    raise OrderBoundExceeded(f"closure exceeds bound {bound}")
                seen.add(y)
                frontier.append(y)
    return frozenset(seen)


def mulclose_capped(gens, cap: int) -> frozenset | None:
    """Like mulclose, but returns None as soon as the closure exceeds cap."""
    e = identity_perm(len(gens[0]))
    seen = {e}
    frontier = deque([e])
    while frontier:
        x = frontier.popleft()
        for g in gens:
            y = pmul(x, g)
            if y not in seen:
                if len(seen) >= cap:
                    return None
                seen.add(y)
                frontier.append(y)
    return frozenset(seen)


class PermGroup:
    """A finite group of permutations of {0..degree-1}, elements kept explicit."""

    def __init__(self, degree: int, gens, name: str = "", bound: int = DEFAULT_ORDER_BOUND):
        self.degree = degree
        gens = tuple(tuple(g) for g in gens)
        for g in gens:
            if len(g) != degree or sorted(g) != list(range(degree)):
                raise ValueError(f"bad generator {g} for degree {degree}")
        self.gens = gens or (identity_perm(degree),)
        self.name = name
        self.bound = bound
        self._elements: frozenset | None = None

    @classmethod
    def trivial(cls, degree: int = 1) -> "PermGroup":
        return cls(degree, [identity_perm(degree)], name="1")

    def elements(self) -> frozenset:
        if self._elements is None:
            self._elements = mulclose(self.gens, self.bound)
        return self._elements

    def order(self) -> int:
        return len(self.elements())

    def __contains__(self, p) -> bool:
        return tuple(p) in self.elements()

    def identity(self) -> Perm:
        return identity_perm(self.degree)

    def is_abelian(self) -> bool:
        return all(
            pmul(a, b) == pmul(b, a)
            for a, b in itertools.combinations(self.gens, 2)
        )

    def element_order_histogram(self) -> dict[int, int]:
        hist: Counter = Counter(perm_order(x) for x in self.elements())
        return dict(hist)

    def conjugacy_classes(self) -> list[frozenset]:
        elems = self.elements()
        seen = set()
        classes = []
        for x in sorted(elems):
            if x in seen:
                continue
            orbit = {x}
            frontier = deque([x])
            while frontier:
                y = frontier.popleft()
                for g in self.gens:
                    z = perm_conj(y, g)
                    if z not in orbit:
                        orbit.add(z)
                        frontier.append(z)
            seen |= orbit
            classes.append(frozenset(orbit))
        return classes

    def subgroup(self, gens) -> "PermGroup":
        return PermGroup(self.degree, gens, bound=self.bound)

    def normal_closure(self, gens) -> frozenset:
        """Elements of the normal closure of ``gens`` in this group."""
        elems = self.elements()
        seed = {tuple(g) for g in gens}
        closure = set(mulclose(list(seed) + [self.identity()], self.bound))
        changed = True
        while changed:
            changed = False
            new = set()
            for x in list(closure):
                for g in self.gens:
                    y = perm_conj(x, g)
                    if y not in closure:
                        new.add(y)
            if new:
                closure = set(
                    mulclose(list(closure | new), min(self.bound, len(elems)))
                )
                changed = True
        return frozenset(closure)

    def derived_subgroup(self) -> frozenset:
        comms = [
            pmul(pmul(pinv(a), pinv(b)), pmul(a, b))
            for a in self.gens
            for b in self.gens
        ]
        return self.normal_closure(comms)


def direct_product(groups) -> PermGroup:
    """Direct product acting on the disjoint union of the factors' domains."""
    groups = list(groups)
    if not groups:
        return PermGroup.trivial()
    degree = sum(g.degree for g in groups)
    gens = []
    offset = 0
    for g in groups:
        for p in g.gens:
            q = list(range(degree))
            for i, x in enumerate(p):
                q[offset + i] = offset + x
            gens.append(tuple(q))
        offset += g.degree
    name = "x".join(g.name or "?" for g in groups)
    return PermGroup(degree, gens, name=name)


# ---------------------------------------------------------------------------
# subgroups


def all_subgroups(group: PermGroup, order_cap: int | None = None) -> list[frozenset]:
    """Every subgroup (as an element frozenset), optionally capped by order.

    Breadth-first extension: every subgroup arises from a maximal chain, and
    any chain through a subgroup of order <= cap stays within the cap, so
    pruning extensions above the cap loses nothing below it.
    """
    elems = sorted(group.elements())
    e = group.identity()
    trivial = frozenset([e])
    found = {trivial}
    frontier = deque([trivial])
    while frontier:
        h = frontier.popleft()
        for g in elems:
            if g in h:
                continue
            k = mulclose(list(h) + [g], group.bound)
            if order_cap is not None and len(k) > order_cap:
                continue
            if k not in found:
                found.add(k)
                frontier.append(k)
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def conjugate_subgroups(group: PermGroup, a, b) -> bool:
    """True iff the subgroups a and b are conjugate in the group."""
    a, b = frozenset(a), frozenset(b)
    if len(a) != len(b):
        return False
    if a == b:
        return True
    return any(frozenset(perm_conj(x, g) for x in a) == b for g in group.elements())


# ---------------------------------------------------------------------------
# labeled posets (conjugacy classes of subgroups; also reused for cliques)


class LabeledPoset:
    """A finite poset with node payloads and labels; meet/join by search."""

    def __init__(self, payloads, labels, leq):
        self.payloads = list(payloads)
        self.labels = list(labels)
        n = len(self.payloads)
        self.leq = [[bool(leq[i][j]) for j in range(n)] for i in range(n)]
        for i in range(n):
            if not self.leq[i][i]:
                raise ValueError("order must be reflexive")
        for i in range(n):
            for j in range(n):
                if i != j and self.leq[i][j] and self.leq[j][i]:
                    raise ValueError("order must be antisymmetric")
        for i in range(n):
            for j in range(n):
                if self.leq[i][j]:
                    for k in range(n):
                        if self.leq[j][k] and not self.leq[i][k]:
                            raise ValueError("order must be transitive")

    def __len__(self):
        return len(self.payloads)

    def lower(self, i: int) -> set[int]:
        return {j for j in range(len(self)) if self.leq[j][i]}

    def upper(self, i: int) -> set[int]:
        return {j for j in range(len(self)) if self.leq[i][j]}

    def _extreme(self, candidates: set[int], want_greatest: bool):
        for c in candidates:
            if want_greatest and all(self.leq[d][c] for d in candidates):
                return c
            if not want_greatest and all(self.leq[c][d] for d in candidates):
                return c
        return None

    def meet(self, i: int, j: int):
        """Greatest lower bound, or None if it does not exist."""
        common = self.lower(i) & self.lower(j)
        if not common:
            return None
        return self._extreme(common, want_greatest=True)

    def join(self, i: int, j: int):
        """Least upper bound, or None if it does not exist."""
        common = self.upper(i) & self.upper(j)
        if not common:
            return None
        return self._extreme(common, want_greatest=False)

    def bottom(self):
        for i in range(len(self)):
            if all(self.leq[i][j] for j in range(len(self))):
                return i
        return None

    def atoms(self) -> list[int]:
        bot = self.bottom()
        if bot is None:
            return []
        out = []
        for i in range(len(self)):
            if i == bot:
                continue
            below = self.lower(i) - {i, bot}
            if not below:
                out.append(i)
        return out

    def covers(self) -> list[tuple[int, int]]:
        """Pairs (i, j) with j covering i."""
        n = len(self)
        out = []
        for i in range(n):
            for j in range(n):
                if i == j or not self.leq[i][j]:
                    continue
                if any(
                    k != i and k != j and self.leq[i][k] and self.leq[k][j]
                    for k in range(n)
                ):
                    continue
                out.append((i, j))
        return out


def subgroup_classes(group: PermGroup, order_cap: int | None = None) -> LabeledPoset:
    """Conjugacy classes of subgroups, ordered by containment up to conjugacy.

    Payloads are lists of subgroups (element frozensets) forming one class;
    labels are iso signatures of the class representative.
    """
    subs = all_subgroups(group, order_cap=order_cap)
    elems = sorted(group.elements())
    unseen = set(subs)
    classes = []
    for s in subs:
        if s not in unseen:
            continue
        orbit = {frozenset(perm_conj(x, g) for x in s) for g in elems}
        unseen -= orbit
        classes.append(sorted(orbit, key=sorted))
    classes.sort(key=lambda c: (len(c[0]), sorted(c[0])))
    n = len(classes)
    leq = [[False] * n for _ in range(n)]
    for i, ci in enumerate(classes):
        rep = ci[0]
        for j, cj in enumerate(classes):
            leq[i][j] = any(rep <= s for s in cj)
    labels = [
        signature_string(iso_signature(PermGroup(group.degree, sorted(c[0]))))
        for c in classes
    ]
    return LabeledPoset(classes, labels, leq)


# ---------------------------------------------------------------------------
# isomorphism signatures


def _abelian_invariants(group: PermGroup) -> tuple[tuple[int, int], ...]:
    """Primary decomposition of the abelianization, as (prime-power, count)s.

    Orders are counted directly in the quotient G/[G,G] without building it:
    the order of a coset gD divides m iff g^m lies in D.
    """
    derived = group.derived_subgroup()
    elems = group.elements()
    q_order = len(elems) // len(derived)
    if q_order == 1:
        return ()

    def count_dividing(m: int) -> int:
        cnt = 0
        for g in elems:
            p = g
            acc = group.identity()
            k = m
            base = g
            while k:
                if k & 1:
                    acc = pmul(acc, base)
                base = pmul(base, base)
                k >>= 1
            if acc in derived:
                cnt += 1
        return cnt // len(derived)

    invariants = []
    rest = q_order
    p = 2
    while rest > 1:
        if rest % p == 0:
            e = 0
            while rest % p == 0:
                rest //= p
                e += 1
            # multiplicities of C_{p^k} factors from counts of solutions
            counts = [count_dividing(p**k) for k in range(e + 1)]
            ranks = []
            for k in range(1, e + 1):
                # log_p of (#x: x^{p^k}=1) / (#x: x^{p^{k-1}}=1) = number of
                # factors with exponent >= k
                ratio = counts[k] // counts[k - 1]
                r = 0
                while ratio > 1:
                    ratio //= p
                    r += 1
                ranks.append(r)
            for k in range(1, e + 1):
                nk = ranks[k - 1] - (ranks[k] if k < e else 0)
                if nk:
                    invariants.append((p**k, nk))
        p += 1 if p == 2 else 2
    return tuple(sorted(invariants))


def _derived_series_orders(group: PermGroup) -> tuple[int, ...]:
    orders = [group.order()]
    current = group
    while True:
        d = current.derived_subgroup()
        if len(d) == orders[-1]:
            break
        orders.append(len(d))
        if len(d) == 1:
            break
        current = PermGroup(group.degree, sorted(d))
    return tuple(orders)


def iso_signature(group: PermGroup):
    """Canonical invariant tuple; unequal signatures imply non-isomorphic.

    Components: order, abelian invariants of the abelianization, element
    order histogram, conjugacy class size multiset, multiset of subgroup
    orders up to SUBGROUP_ORDER_CAP (only scanned for groups of order <=
    ISO_CONFIRM_BOUND; larger groups carry a fixed marker), derived series.
    """
    order = group.order()
    hist = tuple(sorted(group.element_order_histogram().items()))
    classes = tuple(sorted(len(c) for c in group.conjugacy_classes()))
    if order <= ISO_CONFIRM_BOUND:
        subs = tuple(
            sorted(len(s) for s in all_subgroups(group, order_cap=SUBGROUP_ORDER_CAP))
        )
    else:
        subs = ("skipped",)
    return (
        order,
        _abelian_invariants(group),
        hist,
        classes,
        subs,
        _derived_series_orders(group),
    )


def signature_string(sig) -> str:
    order, ab, hist, classes, subs, derived = sig
    ab_s = ",".join(f"{p}^{m}" for p, m in ab) or "1"
    hist_s = ",".join(f"{o}:{c}" for o, c in hist)
    cls_s = ",".join(str(c) for c in classes)
    subs_s = "skip" if subs == ("skipped",) else ",".join(str(s) for s in subs)
    der_s = ",".join(str(d) for d in derived)
    return f"o{order}|ab[{ab_s}]|eo[{hist_s}]|cc[{cls_s}]|sub[{subs_s}]|ds[{der_s}]"


def _generating_sequence(group: PermGroup) -> list[Perm]:
    """A short generating sequence found greedily."""
    elems = sorted(group.elements(), key=lambda p: (-perm_order(p), p))
    chosen: list[Perm] = []
    span = frozenset([group.identity()])
    for x in elems:
        if x in span:
            continue
        chosen.append(x)
        span = mulclose(chosen, group.bound)
        if len(span) == group.order():
            break
    return chosen


def is_isomorphic(g1: PermGroup, g2: PermGroup) -> bool:
    """Backtracking generator-image isomorphism search (desk scale)."""
    if g1.order() != g2.order():
        return False
    sig1, sig2 = iso_signature(g1), iso_signature(g2)
    if sig1 != sig2:
        return False
    gens = _generating_sequence(g1)
    elems1 = g1.elements()
    elems2 = sorted(g2.elements())
    by_order: dict[int, list[Perm]] = {}
    for y in elems2:
        by_order.setdefault(perm_order(y), []).append(y)

    # relations among gens are captured by the full multiplication action on
    # the generated prefix subgroup: extend a partial map gen-by-gen and close
    def extend(mapping: dict[Perm, Perm], new_gen: Perm, image: Perm):
        mapping = dict(mapping)
        if new_gen in mapping:
            return mapping if mapping[new_gen] == image else None
        mapping[new_gen] = image
        frontier = deque(mapping.keys())
        while frontier:
            x = frontier.popleft()
            for g in list(mapping.keys()):
                for a, b in ((x, g), (g, x)):
                    prod = pmul(a, b)
                    img = pmul(mapping[a], mapping[b])
                    if prod in mapping:
                        if mapping[prod] != img:
                            return None
                    else:
                        mapping[prod] = img
                        frontier.append(prod)
        if len(set(mapping.values())) != len(mapping):
            return None
        return mapping

    def search(i: int, mapping: dict[Perm, Perm]):
        if i == len(gens):
            return len(mapping) == len(elems1)
        x = gens[i]
        for y in by_order.get(perm_order(x), []):
            nxt = extend(mapping, x, y)
            if nxt is not None and search(i + 1, nxt):
                return True
        return False

    e1, e2 = g1.identity(), g2.identity()
    return search(0, {e1: e2})
