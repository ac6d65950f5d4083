"""Exact arithmetic in the Higman-Thompson groups V_n via tree-pair diagrams.

An element is stored as a pair of finite complete n-ary trees with a bijection
between their leaf sets.  Trees are represented by their leaf sets: tuples of
addresses, where an address is a tuple of digits < n.  The composition
convention throughout is *right action*: ``x * y`` applies x first, then y,
and ``addr.apply`` style helpers read the same way.

Besides the group arithmetic this module carries the generating-set machinery:
the four standard involutions b1..b4, the two "pull up" elements that shift
the cone below 0 across the tree, the special transpositions d(m, p), and the
synthesis of words in b1..b4 evaluating to any leaf transposition.
"""

from __future__ import annotations

import itertools
import re
from bisect import bisect_left, bisect_right
from functools import lru_cache
from random import Random

Address = tuple[int, ...]

EPSILON: Address = ()


class ArityMismatch(ValueError):
    pass


class NotATree(ValueError):
    pass


# ---------------------------------------------------------------------------
# addresses and trees


def parse_address(text: str) -> Address:
    """Parse a digit string into an address; 'e' or '' is the root."""
    text = text.strip()
    if text in ("", "e"):
        return EPSILON
    if not text.isdigit():
        raise ValueError(f"bad address {text!r}")
    return tuple(int(c) for c in text)


def format_address(addr: Address) -> str:
    return "".join(str(d) for d in addr) if addr else "e"


def is_prefix(a: Address, b: Address) -> bool:
    return len(a) <= len(b) and b[: len(a)] == a


def _check_digits(n: int, leaves) -> None:
    for leaf in leaves:
        if any(d < 0 or d >= n for d in leaf):
            raise ValueError(f"address {format_address(leaf)} has digits >= arity {n}")


def is_leaf_set(n: int, leaves) -> bool:
    """True iff ``leaves`` is exactly the leaf set of a finite complete n-ary tree."""
    if not leaves:
        return False
    try:
        _check_digits(n, leaves)
    except ValueError:
        return False
    stack: list[Address] = []
    for leaf in sorted(leaves):
        stack.append(leaf)
        # a full sibling block sits at the top of the stack exactly when the
        # last entry ends in the digit n-1
        while stack and stack[-1] and stack[-1][-1] == n - 1 and len(stack) >= n:
            parent = stack[-1][:-1]
            if stack[-n:] != [parent + (i,) for i in range(n)]:
                break
            del stack[-n:]
            stack.append(parent)
    return stack == [EPSILON]


def complete_tree(n: int, k: int) -> tuple[Address, ...]:
    """Leaves of the complete tree of depth k (lexicographic order)."""
    return tuple(itertools.product(range(n), repeat=k))


def minimal_tree(n: int, addrs) -> tuple[Address, ...]:
    """Leaves of the smallest complete tree in which every given address is a leaf.

    The addresses must be pairwise prefix-incomparable (and none may be a
    proper prefix of another input), otherwise no such tree exists.
    """
    addrs = list(addrs)
    _check_digits(n, addrs)
    for a, b in itertools.combinations(addrs, 2):
        if is_prefix(a, b) or is_prefix(b, a):
            raise ValueError(
                f"{format_address(a)} and {format_address(b)} are prefix-comparable"
            )
    leaves = {EPSILON}
    for addr in addrs:
        while addr not in leaves:
            # expand the unique current leaf that is a prefix of addr
            probe = addr
            while probe not in leaves:
                probe = probe[:-1]
            leaves.remove(probe)
            leaves.update(probe + (i,) for i in range(n))
    return tuple(sorted(leaves))


def refine_leaf_sets(n: int, left, right) -> tuple[Address, ...]:
    """Common refinement: the leaf set of the union of the two trees."""
    out = []
    right = sorted(right)
    for leaf in left:
        lo = bisect_left(right, leaf)
        if lo < len(right) and is_prefix(leaf, right[lo]):
            hi = lo
            while hi < len(right) and is_prefix(leaf, right[hi]):
                out.append(right[hi])
                hi += 1
        else:
            out.append(leaf)
    return tuple(sorted(out))


# ---------------------------------------------------------------------------
# elements


class VnElement:
    """A tree-pair representative of an element of V_n.

    ``dom`` and ``img`` are parallel tuples: the leaf ``dom[i]`` of the domain
    tree is sent to the leaf ``img[i]`` of the range tree.  ``dom`` is kept
    sorted lexicographically.  Instances are immutable; ``==`` and ``hash``
    work on the underlying group element (i.e. via canonical forms), so two
    different representatives of the same element compare equal.
    """

    __slots__ = ("n", "dom", "img", "_canon")

    def __init__(self, n: int, dom, img, _checked: bool = False):
        if n < 2:
            raise ValueError("arity must be >= 2")
        dom = tuple(dom)
        img = tuple(img)
        if len(dom) != len(img):
            raise ValueError("domain and range leaf counts differ")
        if not _checked:
            pairs = sorted(zip(dom, img))
            dom = tuple(p[0] for p in pairs)
            img = tuple(p[1] for p in pairs)
            if not is_leaf_set(n, dom):
                raise NotATree("domain is not the leaf set of a complete tree")
            if not is_leaf_set(n, img):
                raise NotATree("range is not the leaf set of a complete tree")
            if len(set(img)) != len(img):
                raise ValueError("leaf map is not injective")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "dom", dom)
        object.__setattr__(self, "img", img)
        object.__setattr__(self, "_canon", None)

    def __setattr__(self, name, value):
        raise AttributeError("VnElement is immutable")

    # -- constructors

    @classmethod
    def identity(cls, n: int) -> "VnElement":
        return cls(n, (EPSILON,), (EPSILON,), _checked=True)

    @classmethod
    def from_map(cls, n: int, mapping: dict) -> "VnElement":
        dom = tuple(sorted(mapping))
        img = tuple(mapping[a] for a in dom)
        return cls(n, dom, img)

    # -- structure

    @property
    def num_leaves(self) -> int:
        return len(self.dom)

    def mapping(self) -> dict:
        return dict(zip(self.dom, self.img))

    def is_identity(self) -> bool:
        c = self.canonical()
        return c.dom == (EPSILON,)

    def apply(self, addr: Address) -> Address:
        """Image of an address that lies at or below a domain leaf."""
        dom = self.dom
        i = bisect_right(dom, addr) - 1
        if i >= 0 and is_prefix(dom[i], addr):
            return self.img[i] + addr[len(dom[i]) :]
        raise ValueError(
            f"{format_address(addr)} is above the domain tree of this representative"
        )

    # -- canonical form

    def reducible_carets(self) -> list[int]:
        """Indices i such that dom[i:i+n] is a collapsible sibling block."""
        n, dom, img = self.n, self.dom, self.img
        out = []
        i = 0
        while i + n <= len(dom):
            leaf = dom[i]
            if leaf and leaf[-1] == 0:
                parent = leaf[:-1]
                if dom[i + n - 1] == parent + (n - 1,):
                    target = img[i]
                    if target and target[-1] == 0:
                        beta = target[:-1]
                        if all(img[i + j] == beta + (j,) for j in range(1, n)):
                            out.append(i)
                            i += n
                            continue
            i += 1
        return out

    @property
    def is_canonical(self) -> bool:
        return not self.reducible_carets()

    def canonical(self) -> "VnElement":
        canon = object.__getattribute__(self, "_canon")
        if canon is not None:
            return canon
        n = self.n
        dom = list(self.dom)
        img = list(self.img)
        while True:
            hits = []
            i = 0
            top = len(dom) - n
            while i <= top:
                leaf = dom[i]
                if leaf and leaf[-1] == 0 and dom[i + n - 1] == leaf[:-1] + (n - 1,):
                    target = img[i]
                    if target and target[-1] == 0:
                        beta = target[:-1]
                        if all(img[i + j] == beta + (j,) for j in range(1, n)):
                            hits.append(i)
                            i += n
                            continue
                i += 1
            if not hits:
                break
            for i in reversed(hits):
                dom[i : i + n] = [dom[i][:-1]]
                img[i : i + n] = [img[i][:-1]]
        canon = VnElement(n, tuple(dom), tuple(img), _checked=True)
        object.__setattr__(canon, "_canon", canon)
        object.__setattr__(self, "_canon", canon)
        return canon

    def expand(self, leaf: Address) -> "VnElement":
        """Replace a domain leaf by its n children (a non-canonical representative)."""
        if leaf not in self.dom:
            raise ValueError(f"{format_address(leaf)} is not a domain leaf")
        n = self.n
        i = self.dom.index(leaf)
        target = self.img[i]
        dom = self.dom[:i] + tuple(leaf + (j,) for j in range(n)) + self.dom[i + 1 :]
        img = self.img[:i] + tuple(target + (j,) for j in range(n)) + self.img[i + 1 :]
        return VnElement(n, dom, img, _checked=True)

    # -- arithmetic (right action: x * y applies x first)

    def __mul__(self, other: "VnElement") -> "VnElement":
        if not isinstance(other, VnElement):
            return NotImplemented
        if self.n != other.n:
            raise ArityMismatch(f"arity {self.n} vs {other.n}")
        n = self.n
        ydom = other.dom
        yimg = other.img
        ylen = len(ydom)
        # iterating self.dom in order keeps the output sorted: each leaf
        # contributes either itself or a contiguous increasing block
        new_dom = []
        new_img = []
        for a, b in zip(self.dom, self.img):
            i = bisect_right(ydom, b) - 1
            if i >= 0:
                d = ydom[i]
                nd = len(d)
                if b[:nd] == d:
                    # the cone at b sits inside one leaf of other's domain
                    new_dom.append(a)
                    new_img.append(yimg[i] + b[nd:])
                    continue
            j = i + 1
            nb = len(b)
            if j >= ylen or ydom[j][:nb] != b:
                raise AssertionError("leaf sets do not refine")
            while j < ylen and ydom[j][:nb] == b:
                new_dom.append(a + ydom[j][nb:])
                new_img.append(yimg[j])
                j += 1
        elem = VnElement(n, tuple(new_dom), tuple(new_img), _checked=True)
        return elem.canonical()

    def inverse(self) -> "VnElement":
        pairs = sorted(zip(self.img, self.dom))
        return VnElement(
            self.n,
            tuple(p[0] for p in pairs),
            tuple(p[1] for p in pairs),
            _checked=True,
        )

    def __pow__(self, k: int) -> "VnElement":
        if k < 0:
            return self.inverse() ** (-k)
        out = VnElement.identity(self.n)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def conjugate(self, g: "VnElement") -> "VnElement":
        """g^-1 * self * g under the right-action convention."""
        return g.inverse() * self * g

    def __eq__(self, other) -> bool:
        if not isinstance(other, VnElement):
            return NotImplemented
        if self.n != other.n:
            return False
        a, b = self.canonical(), other.canonical()
        return a.dom == b.dom and a.img == b.img

    def __hash__(self):
        c = self.canonical()
        return hash((c.n, c.dom, c.img))

    def order(self, bound: int):
        """Least k <= bound with self^k = 1, else the string 'exceeds-bound'."""
        if bound < 1:
            raise ValueError("bound must be >= 1")
        acc = self.canonical()
        one = VnElement.identity(self.n)
        for k in range(1, bound + 1):
            if acc == one:
                return k
            acc = acc * self
        return "exceeds-bound"

    # -- parity

    def parity(self) -> str:
        """Parity of this *representative*: inversion count of the leaf bijection."""
        img = self.img
        inversions = 0
        for i in range(len(img)):
            a = img[i]
            for j in range(i + 1, len(img)):
                if a > img[j]:
                    inversions += 1
        return "odd" if inversions % 2 else "even"

    def class_parity(self) -> str:
        """Parity of the group element; only well defined for odd arity."""
        if self.n % 2 == 0:
            raise ValueError("parity is not a class invariant for even arity")
        return self.canonical().parity()

    # -- serialization

    def to_text(self) -> str:
        if self.n > 10:
            raise ValueError("digit-string serialization needs arity <= 10")
        dom = ",".join(format_address(a) for a in self.dom)
        img = ",".join(format_address(a) for a in self.img)
        return f"n={self.n}; dom=[{dom}]; map=[{img}]"

    @classmethod
    def from_text(cls, text: str) -> "VnElement":
        m = re.fullmatch(
            r"\s*n=(\d+);\s*dom=\[([^\]]*)\];\s*map=\[([^\]]*)\]\s*", text
        )
        if not m:
            raise ValueError(f"cannot parse element text {text!r}")
        n = int(m.group(1))
        dom = tuple(parse_address(t) for t in m.group(2).split(",") if t.strip())
        img = tuple(parse_address(t) for t in m.group(3).split(",") if t.strip())
        return cls(n, dom, img)

    def __repr__(self):
        return f"VnElement({self.to_text()!r})"


def random_element(rng: Random, n: int, max_leaves: int = 12) -> VnElement:
    """A random representative: two random trees of equal size, random bijection."""
    leaves = rng.randrange(1, max(2, (max_leaves - 1) // (n - 1) + 1))

    def tree(k):
        out = [EPSILON]
        for _ in range(k):
            pick = rng.randrange(len(out))
            leaf = out.pop(pick)
            out.extend(leaf + (i,) for i in range(n))
        return sorted(out)

    dom = tree(leaves)
    img = tree(leaves)
    rng.shuffle(img)
    return VnElement(n, tuple(dom), tuple(img))


# ---------------------------------------------------------------------------
# the four standard involutions and friends


def _depth2_positions(n: int) -> tuple[Address, ...]:
    return complete_tree(n, 2)


@lru_cache(maxsize=None)
def generator(n: int, which: int) -> VnElement:
    """The standard involutions b1..b4 (canonical forms), defined for n >= 3.

    b1 and b2 are the two dihedral reflections of the regular n^2-gon whose
    vertices are the depth-2 leaves in lexicographic order (b1 swaps the first
    and last leaf, b2 fixes the first); their product is the n^2-cycle through
    the leaves in lexicographic order.  b3 transposes the leaves 00 and 01.
    b4 swaps the leaf 00 with the leaf 1 on the tree whose leaves are
    {0i : i < n} + {j : 0 < j < n}.
    """
    if n < 3:
        raise ValueError("the involution generating set needs arity >= 3")
    if which not in (1, 2, 3, 4):
        raise ValueError("generator index must be 1..4")
    if which == 4:
        dom = tuple(sorted([(0, i) for i in range(n)] + [(j,) for j in range(1, n)]))
        mapping = {leaf: leaf for leaf in dom}
        mapping[(0, 0)] = (1,)
        mapping[(1,)] = (0, 0)
        return VnElement(n, dom, tuple(mapping[a] for a in dom), _checked=True)
    leaves = _depth2_positions(n)
    big = len(leaves)
    if which == 1:
        img = tuple(leaves[big - 1 - i] for i in range(big))
    elif which == 2:
        img = tuple(leaves[(big - i) % big] for i in range(big))
    else:
        order = list(range(big))
        order[0], order[1] = 1, 0
        img = tuple(leaves[i] for i in order)
    return VnElement(n, leaves, img, _checked=True).canonical()


@lru_cache(maxsize=None)
def pull_up(n: int) -> VnElement:
    """The element 00 -> 0; 01 -> 10; 0i -> 1i (2 <= i < n); 1 -> 11; j -> j."""
    if n < 3:
        raise ValueError("needs arity >= 3")
    mapping = {(0, 0): (0,), (0, 1): (1, 0), (1,): (1, 1)}
    for i in range(2, n):
        mapping[(0, i)] = (1, i)
        mapping[(i,)] = (i,)
    return VnElement.from_map(n, mapping)


@lru_cache(maxsize=None)
def pull_up2(n: int) -> VnElement:
    """The variant using the symbol 2: 00 -> 0; 02 -> 20; 0i -> 2i; 2 -> 22; j -> j."""
    if n < 3:
        raise ValueError("needs arity >= 3")
    mapping = {(0, 0): (0,), (0, 2): (2, 0), (2,): (2, 2)}
    for i in range(1, n):
        if i != 2:
            mapping[(0, i)] = (2, i)
    for j in range(1, n):
        if j != 2:
            mapping[(j,)] = (j,)
    return VnElement.from_map(n, mapping)


def transposition_element(n: int, a: Address, b: Address) -> VnElement:
    """The transposition of the leaves a and b on the minimal tree containing both."""
    if is_prefix(a, b) or is_prefix(b, a):
        raise ValueError(
            f"{format_address(a)} and {format_address(b)} are prefix-comparable"
        )
    leaves = minimal_tree(n, [a, b])
    mapping = {leaf: leaf for leaf in leaves}
    mapping[a], mapping[b] = b, a
    return VnElement(n, leaves, tuple(mapping[x] for x in leaves), _checked=True)


def d_element(n: int, m: int, p: int = 0) -> VnElement:
    """The transposition of 0^(p+m) and 0^p 1 on the minimal tree containing both."""
    if n < 3 or m < 1 or p < 0:
        raise ValueError("need n >= 3, m >= 1, p >= 0")
    return transposition_element(n, (0,) * (p + m), (0,) * p + (1,))


# ---------------------------------------------------------------------------
# words in the generators


class GenWord:
    """A word over the four involution generators (tokens 1..4)."""

    __slots__ = ("n", "letters")

    def __init__(self, n: int, letters=()):
        if n < 3:
            raise ValueError("generator words need arity >= 3")
        letters = tuple(letters)
        if any(l not in (1, 2, 3, 4) for l in letters):
            raise ValueError("letters must be in 1..4")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "letters", letters)

    def __setattr__(self, name, value):
        raise AttributeError("GenWord is immutable")

    def __len__(self):
        return len(self.letters)

    def __mul__(self, other: "GenWord") -> "GenWord":
        if self.n != other.n:
            raise ArityMismatch(f"arity {self.n} vs {other.n}")
        return GenWord(self.n, self.letters + other.letters)

    def inverse(self) -> "GenWord":
        # every letter is an involution
        return GenWord(self.n, tuple(reversed(self.letters)))

    def __pow__(self, k: int) -> "GenWord":
        if k < 0:
            return self.inverse() ** (-k)
        return GenWord(self.n, self.letters * k)

    def evaluate(self) -> VnElement:
        out = VnElement.identity(self.n)
        for l in self.letters:
            out = out * generator(self.n, l)
        return out

    def __str__(self):
        return " ".join(f"b{l}" for l in self.letters)

    def __repr__(self):
        return f"GenWord(n={self.n}, {str(self)!r})"


def _perm_to_adjacent_swaps(images: list[int]) -> list[int]:
    """Bubble-sort factorization: position swaps (j, j+1), in application order.

    ``images[p]`` is the image of position p.  The returned list j1, j2, ...
    satisfies perm = t_{j1} * t_{j2} * ... under the right-action convention.
    """
    arr = list(images)
    swaps = []
    changed = True
    while changed:
        changed = False
        for j in range(len(arr) - 1):
            if arr[j] > arr[j + 1]:
                arr[j], arr[j + 1] = arr[j + 1], arr[j]
                swaps.append(j)
                changed = True
    return swaps


def _base_word(n: int, images: list[int]) -> GenWord:
    """Word for a permutation of the depth-2 leaves, via the n^2-cycle and b3."""
    cyc = (1, 2)       # b1 b2 moves every leaf one step up in lex order
    cyc_inv = (2, 1)
    letters: list[int] = []
    for j in _perm_to_adjacent_swaps(images):
        letters.extend(cyc_inv * j)
        letters.append(3)
        letters.extend(cyc * j)
    return GenWord(n, letters)


def sym_word(n: int, k: int, perm: dict) -> GenWord:
    """A word evaluating to the permutation ``perm`` of the depth-k leaves.

    ``perm`` maps every leaf of the complete depth-k tree to its image.
    Depth <= 2 is synthesized from the n^2-cycle and b3 by bubble sort;
    deeper permutations factor into leaf transpositions, each built by the
    pull-up conjugation pattern.
    """
    leaves = complete_tree(n, k)
    if set(perm) != set(leaves) or set(perm.values()) != set(leaves):
        raise ValueError(f"not a permutation of the depth-{k} leaves")
    if k == 0:
        return GenWord(n)
    if k == 1:
        lifted = {(i, j): (perm[(i,)][0], j) for i in range(n) for j in range(n)}
        return sym_word(n, 2, lifted)
    if k == 2:
        index = {leaf: pos for pos, leaf in enumerate(leaves)}
        images = [index[perm[leaf]] for leaf in leaves]
        return _base_word(n, images)
    word = GenWord(n)
    for alpha, beta in _cycle_transpositions(perm):
        word = word * _level_transposition_word(n, k, alpha, beta)
    return word


def _cycle_transpositions(perm: dict) -> list[tuple[Address, Address]]:
    """Factor a permutation into transpositions, right-action order."""
    out = []
    seen = set()
    for start in sorted(perm):
        if start in seen or perm[start] == start:
            seen.add(start)
            continue
        cycle = [start]
        cur = perm[start]
        while cur != start:
            cycle.append(cur)
            cur = perm[cur]
        seen.update(cycle)
        out.extend((cycle[0], c) for c in cycle[1:])
    return out


@lru_cache(maxsize=None)
def _pull_up_word(n: int) -> GenWord:
    swap01 = {(i,): (i,) for i in range(n)}
    swap01[(0,)], swap01[(1,)] = (1,), (0,)
    deep = {leaf: leaf for leaf in complete_tree(n, 2)}
    deep[(1, 0)], deep[(1, 1)] = (1, 1), (1, 0)
    return GenWord(n, (4,)) * sym_word(n, 1, swap01) * sym_word(n, 2, deep)


@lru_cache(maxsize=None)
def _pull_up2_word(n: int) -> GenWord:
    swap12 = {(i,): (i,) for i in range(n)}
    swap12[(1,)], swap12[(2,)] = (2,), (1,)
    swap02 = {(i,): (i,) for i in range(n)}
    swap02[(0,)], swap02[(2,)] = (2,), (0,)
    deep = {leaf: leaf for leaf in complete_tree(n, 2)}
    deep[(2, 0)], deep[(2, 2)] = (2, 2), (2, 0)
    c = sym_word(n, 1, swap12)
    return c * GenWord(n, (4,)) * c * sym_word(n, 1, swap02) * sym_word(n, 2, deep)


@lru_cache(maxsize=None)
def _d_m_word(n: int, m: int) -> GenWord:
    if m == 1:
        swap01 = {(i,): (i,) for i in range(n)}
        swap01[(0,)], swap01[(1,)] = (1,), (0,)
        return sym_word(n, 1, swap01)
    if m == 2:
        return GenWord(n, (4,))
    up2 = _pull_up2_word(n)
    return (up2 ** (m - 2)) * GenWord(n, (4,)) * (up2.inverse() ** (m - 2))


@lru_cache(maxsize=None)
def _zero_ten_word(n: int, m: int) -> GenWord:
    """Word for the transposition of 0^m with the leaf 10.

    Conjugating d(m+1) by the pull-up map lands its second support point on
    11 (the pull-up sends the leaf 1 there uniformly); a sibling swap then
    moves it to 10.
    """
    up = _pull_up_word(n)
    z11 = up.inverse() * _d_m_word(n, m + 1) * up
    sibling = _level_transposition_word(n, 2, (1, 1), (1, 0))
    return z11 * sibling * z11


def d_word(n: int, m: int, p: int = 0) -> GenWord:
    """Word evaluating to d_element(n, m, p).

    For p >= 1 the transposition is pushed below 0^p by conjugating with
    powers of the pull-up map; the conjugation is sound there because both
    support points of t(0^m, 10) sit at or below leaves of the pull-up tree,
    so each conjugation step moves the support cones uniformly.
    """
    if n < 3 or m < 1 or p < 0:
        raise ValueError("need n >= 3, m >= 1, p >= 0")
    if p == 0:
        return _d_m_word(n, m)
    up = _pull_up_word(n)
    return (up ** p) * _zero_ten_word(n, m) * (up.inverse() ** p)


def _swap_perm(leaves, a: Address, b: Address) -> dict:
    perm = {leaf: leaf for leaf in leaves}
    if a != b:
        perm[a], perm[b] = b, a
    return perm


def _conj_word(inner: GenWord, by: GenWord) -> GenWord:
    """Word for by^-1 * inner * by (right action: apply by^-1, inner, by)."""
    return by.inverse() * inner * by


@lru_cache(maxsize=None)
def _mixed_transposition_word(n: int, deep: Address, shallow: Address) -> GenWord:
    """Word for the transposition of a depth-k leaf with a depth-(k-1) leaf.

    Needs ``shallow`` distinct from the parent of ``deep``.  Built by moving
    the special transposition of 0^k with 0^(k-2) 1 into place with
    complete-tree transpositions one level up, then fixing the last digit
    with a sibling swap.
    """
    k = len(deep)
    if len(shallow) != k - 1 or k < 3:
        raise ValueError("mixed transposition needs depths k and k-1, k >= 3")
    parent, digit = deep[:-1], deep[-1]
    if shallow == parent:
        raise ValueError("shallow leaf may not be the parent of the deep leaf")
    zeros = (0,) * (k - 1)
    low = (0,) * (k - 2) + (1,)
    # c maps 0^(k-1) -> parent and 0^(k-2) 1 -> shallow, as a product of at
    # most two transpositions of depth-(k-1) leaves
    e1 = _swap_perm(complete_tree(n, k - 1), zeros, parent)
    mid = e1[low]
    c_word = GenWord(n)
    if parent != zeros:
        c_word = c_word * _level_transposition_word(n, k - 1, zeros, parent)
    if mid != shallow:
        c_word = c_word * _level_transposition_word(n, k - 1, mid, shallow)
    word = _conj_word(d_word(n, 2, k - 2), c_word)
    if digit != 0:
        sibling = _level_transposition_word(n, k, parent + (0,), deep)
        word = _conj_word(word, sibling)
    return word


@lru_cache(maxsize=None)
def _level_transposition_word(n: int, k: int, alpha: Address, beta: Address) -> GenWord:
    """Word for the transposition of two distinct depth-k leaves.

    Depth <= 2 is the bubble-sort base case; deeper transpositions use the
    pull-up conjugation pattern c * up * c' * up^-1 * c^-1, where c moves the
    parents onto 0^(k-1) and 0^(k-2) 1 and c' transposes the two images under
    the pull-up map.  At depth 3 with distinct parents one image point stays
    at depth 3, so c' is a mixed-depth transposition.
    """
    if alpha == beta:
        return GenWord(n)
    if k <= 2:
        return sym_word(n, k, _swap_perm(complete_tree(n, k), alpha, beta))
    up = pull_up(n)
    prev = complete_tree(n, k - 1)
    a_pre, b_pre = alpha[:-1], beta[:-1]
    zeros = (0,) * (k - 1)
    steps: list[tuple[Address, Address]] = []
    if a_pre == b_pre:
        if a_pre != zeros:
            steps.append((zeros, a_pre))
    else:
        low = (0,) * (k - 2) + (1,)
        e1 = _swap_perm(prev, zeros, a_pre)
        mid = e1[b_pre]
        if a_pre != zeros:
            steps.append((zeros, a_pre))
        if mid != low:
            steps.append((mid, low))
    c_word = GenWord(n)
    c_elems = []
    for u, v in steps:
        c_word = c_word * _level_transposition_word(n, k - 1, u, v)
        c_elems.append(transposition_element(n, u, v))

    def push(addr: Address) -> Address:
        for e in c_elems:
            addr = e.apply(addr)
        return up.apply(addr)

    moved_a, moved_b = push(alpha), push(beta)
    if len(moved_a) > len(moved_b):
        moved_a, moved_b = moved_b, moved_a
    if len(moved_a) == len(moved_b):
        inner = _level_transposition_word(n, k - 1, moved_a, moved_b)
    else:
        inner = _mixed_transposition_word(n, moved_b, moved_a)
    up_w = _pull_up_word(n)
    return c_word * up_w * inner * up_w.inverse() * c_word.inverse()


def transposition_word(n: int, a: Address, b: Address) -> GenWord:
    """A word in b1..b4 evaluating to transposition_element(n, a, b).

    Assembled by conjugating the special transposition d(m, p) with two
    complete-tree transpositions that move b onto 0^(Lb-1) 1 and a onto 0^La.
    """
    if is_prefix(a, b) or is_prefix(b, a):
        raise ValueError(
            f"{format_address(a)} and {format_address(b)} are prefix-comparable"
        )
    if len(a) < len(b):
        a, b = b, a
    la, lb = len(a), len(b)
    low = (0,) * (lb - 1) + (1,)
    c1_word = _level_transposition_word(n, lb, low, b) if low != b else GenWord(n)
    c1 = transposition_element(n, low, b) if low != b else None
    a_moved = c1.apply(a) if c1 else a
    zeros = (0,) * la
    c2_word = (
        _level_transposition_word(n, la, zeros, a_moved)
        if zeros != a_moved
        else GenWord(n)
    )
    m = la - lb + 1
    p = lb - 1
    return (
        c1_word
        * c2_word
        * d_word(n, m, p)
        * c2_word.inverse()
        * c1_word.inverse()
    )


def involution_word(x: VnElement) -> GenWord:
    """Express an involution as a product of leaf-transposition words."""
    n = x.n
    if n < 3:
        raise ValueError("word synthesis needs arity >= 3")
    if not (x * x).is_identity():
        raise ValueError("element is not an involution")
    c = x.canonical()
    if sorted(c.dom) != sorted(c.img):
        raise AssertionError("canonical involution must have equal trees")
    word = GenWord(n)
    seen = set()
    for a, b in zip(c.dom, c.img):
        if a == b or a in seen:
            continue
        seen.update((a, b))
        word = word * transposition_word(n, a, b)
    return word


# ---------------------------------------------------------------------------
# generation evidence


def _level_swap_element(n: int, a: Address, b: Address) -> VnElement:
    return transposition_element(n, a, b)


def _pattern_steps(n: int, k: int, alpha: Address, beta: Address):
    """The conjugator transpositions and image points of the pull-up pattern."""
    prev = complete_tree(n, k - 1)
    a_pre, b_pre = alpha[:-1], beta[:-1]
    zeros = (0,) * (k - 1)
    steps = []
    if a_pre == b_pre:
        if a_pre != zeros:
            steps.append((zeros, a_pre))
    else:
        low = (0,) * (k - 2) + (1,)
        e1 = _swap_perm(prev, zeros, a_pre)
        mid = e1[b_pre]
        if a_pre != zeros:
            steps.append((zeros, a_pre))
        if mid != low:
            steps.append((mid, low))
    up = pull_up(n)
    addr_a, addr_b = alpha, beta
    for u, v in steps:
        t = transposition_element(n, u, v)
        addr_a, addr_b = t.apply(addr_a), t.apply(addr_b)
    return steps, up.apply(addr_a), up.apply(addr_b)


def _check_pattern_identity(n: int, k: int, alpha: Address, beta: Address) -> bool:
    """conjugation pattern c * up * c' * up^-1 * c^-1 equals the transposition."""
    steps, moved_a, moved_b = _pattern_steps(n, k, alpha, beta)
    c = VnElement.identity(n)
    for u, v in steps:
        c = c * transposition_element(n, u, v)
    up = pull_up(n)
    inner = transposition_element(n, moved_a, moved_b)
    composite = c * up * inner * up.inverse() * c.inverse()
    return composite == transposition_element(n, alpha, beta)


def generation_report(
    n: int,
    max_depth: int = 3,
    m_max: int = 4,
    p_max: int = 3,
    addr_len: int = 3,
    word_samples: int = 40,
    seed: int = 0,
) -> dict:
    """Exercise every identity behind the four-involution generating set.

    Element identities run over the full stated parameter ranges; word
    synthesis is additionally spot-checked by evaluating ``word_samples``
    random instances per family against the directly constructed oracle
    element.  Returns a claim-by-claim report dict.
    """
    rng = Random(seed)
    claims = []

    def record(name, instances, failures):
        claims.append(
            {
                "claim": name,
                "instances": instances,
                "failures": failures,
                "passed": not failures,
            }
        )

    one = VnElement.identity(n)
    b = {i: generator(n, i) for i in (1, 2, 3, 4)}

    # the four elements are involutions and b1 b2 cycles the depth-2 leaves
    failures = [f"b{i} not an involution" for i in (1, 2, 3, 4) if b[i] * b[i] != one]
    leaves2 = complete_tree(n, 2)
    cycle = VnElement(
        n, leaves2, tuple(leaves2[(i + 1) % len(leaves2)] for i in range(len(leaves2)))
    )
    if b[1] * b[2] != cycle:
        failures.append("b1 b2 is not the lexicographic cycle")
    record("involutions-and-cycle", 5, failures)

    # block lift: a depth-1 permutation equals its digit-preserving depth-2 lift
    failures = []
    count = 0
    level1 = [(i,) for i in range(n)]
    for images in itertools.permutations(range(n)):
        lifted = {(i, j): (images[i], j) for i in range(n) for j in range(n)}
        direct = VnElement.from_map(n, {(i,): (images[i],) for i in range(n)})
        count += 1
        if VnElement.from_map(n, lifted) != direct:
            failures.append(f"lift of {images} differs")
    record("depth1-lift", count, failures)

    # pull-up maps factor through b4 and two leaf swaps
    failures = []
    swap01 = _level_swap_element(n, (0,), (1,))
    swap1011 = _level_swap_element(n, (1, 0), (1, 1))
    if b[4] * swap01 * swap1011 != pull_up(n):
        failures.append("pull_up factorization")
    swap12 = _level_swap_element(n, (1,), (2,))
    swap02 = _level_swap_element(n, (0,), (2,))
    swap2022 = _level_swap_element(n, (2, 0), (2, 2))
    if swap12 * b[4] * swap12 * swap02 * swap2022 != pull_up2(n):
        failures.append("pull_up2 factorization")
    if _pull_up_word(n).evaluate() != pull_up(n):
        failures.append("pull_up word")
    if _pull_up2_word(n).evaluate() != pull_up2(n):
        failures.append("pull_up2 word")
    record("pull-up-factorizations", 4, failures)

    # conjugation pattern for every transposition of depth-k leaves, k <= max_depth
    failures = []
    count = 0
    for k in range(3, max_depth + 1):
        leaves = complete_tree(n, k)
        for alpha, beta in itertools.combinations(leaves, 2):
            count += 1
            if not _check_pattern_identity(n, k, alpha, beta):
                failures.append(
                    f"pattern fails at {format_address(alpha)},{format_address(beta)}"
                )
    record("transposition-pattern", count, failures)

    # d(m): equality with the conjugated b4 chain
    failures = []
    count = 0
    for m in range(1, m_max + 1):
        count += 1
        d = d_element(n, m, 0)
        if m == 1:
            ok = d == _level_swap_element(n, (0,), (1,))
        elif m == 2:
            ok = d == b[4]
        else:
            up2 = pull_up2(n)
            ok = d == (up2 ** (m - 2)) * b[4] * (up2 ** (2 - m))
        if not ok:
            failures.append(f"d({m}) chain")
        if d_word(n, m).evaluate() != d:
            failures.append(f"d({m}) word")
    record("d-elements", count, failures)

    # d(m, p): pull-up shift chain.  The naive conjugation of d(m) itself by
    # powers of the pull-up map does NOT equal d(m, p) (the cone at the leaf 1
    # splits); the sound route goes through t(0^m, 11) and a sibling swap.
    failures = []
    count = 0
    up = pull_up(n)
    sib = transposition_element(n, (1, 1), (1, 0))
    for m in range(1, m_max + 1):
        z11 = up.inverse() * d_element(n, m + 1, 0) * up
        count += 1
        if z11 != transposition_element(n, (0,) * m, (1, 1)):
            failures.append(f"t(0^{m},11) via pull-up")
        z10 = z11 * sib * z11
        for p in range(0, p_max + 1):
            count += 1
            d = d_element(n, m, p)
            if p > 0 and d != (up ** p) * z10 * (up ** (-p)):
                failures.append(f"d({m},{p}) shift chain")
            if d_word(n, m, p).evaluate() != d:
                failures.append(f"d({m},{p}) word")
    record("d-shifted", count, failures)

    # general transpositions: conjugated d(m, p) recipe, all pairs up to addr_len
    failures = []
    count = 0
    addrs = [
        a
        for length in range(1, addr_len + 1)
        for a in itertools.product(range(n), repeat=length)
    ]
    pairs = [
        (a, c)
        for a, c in itertools.combinations(addrs, 2)
        if not is_prefix(a, c) and not is_prefix(c, a)
    ]
    for a, c in pairs:
        count += 1
        alpha, beta = (a, c) if len(a) >= len(c) else (c, a)
        la, lb = len(alpha), len(beta)
        low = (0,) * (lb - 1) + (1,)
        c1 = _level_swap_element(n, low, beta) if low != beta else one
        a_moved = c1.apply(alpha)
        zeros = (0,) * la
        c2 = _level_swap_element(n, zeros, a_moved) if zeros != a_moved else one
        core = d_element(n, la - lb + 1, lb - 1)
        recipe = c1 * c2 * core * c2.inverse() * c1.inverse()
        if recipe != transposition_element(n, a, c):
            failures.append(
                f"recipe fails at {format_address(a)},{format_address(c)}"
            )
    record("general-transpositions", count, failures)

    # word synthesis spot checks against the oracle elements
    failures = []
    sample = pairs if len(pairs) <= word_samples else rng.sample(pairs, word_samples)
    for a, c in sample:
        w = transposition_word(n, a, c)
        if w.evaluate() != transposition_element(n, a, c):
            failures.append(
                f"word fails at {format_address(a)},{format_address(c)}"
            )
    record("transposition-words", len(sample), failures)

    # involution decomposition: each generator rebuilt from its transpositions
    failures = []
    for i in (1, 2, 3, 4):
        if involution_word(b[i]).evaluate() != b[i]:
            failures.append(f"involution word for b{i}")
    record("involution-words", 4, failures)

    return {
        "n": n,
        "claims": claims,
        "all_passed": all(c["passed"] for c in claims),
    }


# ---------------------------------------------------------------------------
# CLI word tokens: b1 b2 b3 b4 up up2 d(m,p) t(a,b)

_TOKEN_RE = re.compile(
    r"(b[1-4])|(up2)|(up)|d\(\s*(\d+)\s*,\s*(\d+)\s*\)|t\(\s*(\w+)\s*,\s*(\w+)\s*\)"
)


def parse_element_word(n: int, text: str) -> VnElement:
    """Evaluate a whitespace-separated word over the CLI element tokens."""
    out = VnElement.identity(n)
    pos = 0
    for tok in text.split():
        m = _TOKEN_RE.fullmatch(tok)
        if not m:
            raise ValueError(f"bad token {tok!r} at position {pos}")
        if m.group(1):
            out = out * generator(n, int(m.group(1)[1]))
        elif m.group(2):
            out = out * pull_up2(n)
        elif m.group(3):
            out = out * pull_up(n)
        elif m.group(4):
            out = out * d_element(n, int(m.group(4)), int(m.group(5)))
        else:
            out = out * transposition_element(
                n, parse_address(m.group(6)), parse_address(m.group(7))
            )
        pos += 1
    return out
