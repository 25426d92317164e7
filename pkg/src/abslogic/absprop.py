"""Abstract propositions: labelled leaves plus a double-orthogonal set of resolutions.

Leaf subsets are plain ``int`` bit masks over leaf ids ``0..n-1``.
"""

from __future__ import annotations

import functools
import operator
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import formula as fm
from .errors import BoundExceededError, ShapeError
from .formula import Literal

MAX_LEAVES = 22


def bits(mask: int) -> Iterator[int]:
    """Yield the set positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(ids: Iterable[int]) -> int:
    mask = 0
    for i in ids:
        mask |= 1 << i
    return mask


def submasks(mask: int) -> Iterator[int]:
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def orthogonal_pair(s: int, t: int) -> bool:
    """True iff the two leaf sets meet in exactly one leaf."""
    return (s & t).bit_count() == 1


def _check_bound(n):
    if n > MAX_LEAVES:
        raise BoundExceededError(f"{n} leaves exceeds the enumeration bound of {MAX_LEAVES}")


def orthogonal_brute(n: int, sets: Iterable[int]) -> frozenset[int]:
    """All ``t`` over ``n`` leaves orthogonal to every member of ``sets``, by scanning 2**n subsets."""
    _check_bound(n)
    cand = np.arange(1 << n, dtype=np.int64)
    keep = np.ones(cand.shape, dtype=bool)
    for s in set(sets):
        keep &= np.bitwise_count(cand & s) == 1
    return frozenset(int(t) for t in cand[keep])


def orthogonal_search(n: int, sets: Iterable[int]) -> frozenset[int]:
    """Same result as :func:`orthogonal_brute`, by choosing one leaf per set depth-first."""
    _check_bound(n)
    sets = sorted(set(sets))
    if any(s >> n for s in sets):
        raise ValueError("leaf set refers to ids beyond the leaf count")
    if 0 in sets:
        return frozenset()
    covered = functools.reduce(int.__or__, sets, 0)
    free = ((1 << n) - 1) & ~covered
    containing = {x: [s for s in sets if s >> x & 1] for x in bits(covered)}
    cores = []

    def extend(inc, exc):
        best = None
        for s in sets:
            if s & inc:
                continue
            avail = s & ~exc
            if not avail:
                return
            if best is None or avail.bit_count() < best.bit_count():
                best = avail
        if best is None:
            cores.append(inc)
            return
        for x in bits(best):
            bit = 1 << x
            new_exc = exc
            for s in containing[x]:
                if s & inc:
                    break
                new_exc |= s
            else:
                extend(inc | bit, new_exc & ~bit)

    extend(0, 0)
    return frozenset(core | extra for core in cores for extra in submasks(free))


def orthogonal(n: int, sets: Iterable[int], method: str = "search") -> frozenset[int]:
    if method == "brute":
        return orthogonal_brute(n, sets)
    if method == "search":
        return orthogonal_search(n, sets)
    raise ValueError(f"unknown method {method!r}")


@dataclass(frozen=True)
class AbstractProp:
    """Leaves labelled by literals, and the set of resolutions as bit masks.

    Construction does not verify double orthogonality; use
    :func:`is_abstract_prop` or :meth:`checked` for that.
    """

    labels: tuple[Literal, ...]
    resolutions: frozenset[int]

    def __post_init__(self):
        limit = 1 << len(self.labels)
        if any(r < 0 or r >= limit for r in self.resolutions):
            raise ValueError("resolution refers to a leaf id beyond the leaf count")

    @classmethod
    def from_sets(cls, labels: Sequence[str | Literal], resolutions: Iterable[Iterable[int]]) -> AbstractProp:
        labs = tuple(l if isinstance(l, Literal) else Literal.parse(l) for l in labels)
        return cls(labs, frozenset(to_mask(r) for r in resolutions))

    @classmethod
    def checked(cls, labels, resolutions) -> AbstractProp:
        prop = cls.from_sets(labels, resolutions)
        if not is_abstract_prop(prop):
            raise ShapeError("resolution set is not double-orthogonal")
        return prop

    @property
    def n(self) -> int:
        return len(self.labels)

    @cached_property
    def coresolutions(self) -> frozenset[int]:
        return orthogonal(self.n, self.resolutions)

    def resolution_lists(self) -> list[list[int]]:
        """Resolutions as sorted id lists, ordered lexicographically."""
        return sorted(list(bits(r)) for r in self.resolutions)

    def __invert__(self):
        return neg(self)

    def __or__(self, other):
        return vee(self, other)

    def __and__(self, other):
        return wedge(self, other)

    def __repr__(self):
        labs = ",".join(map(str, self.labels))
        return f"AbstractProp([{labs}], {self.resolution_lists()})"


def is_abstract_prop(p: AbstractProp) -> bool:
    return orthogonal(p.n, orthogonal(p.n, p.resolutions)) == p.resolutions


ONE = AbstractProp((), frozenset())
ZERO = AbstractProp((), frozenset({0}))


def unit(kind: bool | str) -> AbstractProp:
    if kind in (True, "true", "1"):
        return ONE
    if kind in (False, "false", "0"):
        return ZERO
    raise ValueError(f"unknown unit {kind!r}")


def literal_prop(label: Literal | str) -> AbstractProp:
    if not isinstance(label, Literal):
        label = Literal.parse(label)
    return AbstractProp((label,), frozenset({1}))


@functools.lru_cache(maxsize=8192)
def neg(a: AbstractProp) -> AbstractProp:
    return AbstractProp(tuple(l.dual for l in a.labels), a.coresolutions)


def vee(a: AbstractProp, b: AbstractProp) -> AbstractProp:
    """Sum: disjoint union of leaves, resolutions are unions of one from each side."""
    shift = a.n
    res = frozenset(s | (t << shift) for s in a.resolutions for t in b.resolutions)
    return AbstractProp(a.labels + b.labels, res)


def _covered(a: AbstractProp) -> bool:
    cores = a.coresolutions
    return bool(cores) and functools.reduce(operator.or_, cores, 0) == (1 << a.n) - 1


@functools.lru_cache(maxsize=8192)
def wedge(a: AbstractProp, b: AbstractProp) -> AbstractProp:
    """Product, defined as the de Morgan dual of the sum.

    Inputs are assumed abstract.  When every leaf of each factor lies in
    some coresolution, the dual of the sum is just the disjoint union of the
    two resolution sets, which skips the orthogonality search.
    """
    _check_bound(a.n + b.n)
    if _covered(a) and _covered(b):
        return AbstractProp(a.labels + b.labels, a.resolutions | frozenset(t << a.n for t in b.resolutions))
    return neg(vee(neg(a), neg(b)))


def big_wedge(props: Iterable[AbstractProp]) -> AbstractProp:
    """Right-nested product; the empty product is ``1``."""
    props = list(props)
    if not props:
        return ONE
    return functools.reduce(lambda acc, p: wedge(p, acc), reversed(props[:-1]), props[-1])


def big_vee(props: Iterable[AbstractProp]) -> AbstractProp:
    props = list(props)
    if not props:
        return ZERO
    return functools.reduce(lambda acc, p: vee(p, acc), reversed(props[:-1]), props[-1])


def pure_product(labels: Sequence[Literal | str]) -> AbstractProp:
    """Product of single leaves: every singleton is a resolution."""
    return AbstractProp.from_sets(labels, [[i] for i in range(len(labels))])


def pure_sum(labels: Sequence[Literal | str]) -> AbstractProp:
    """Sum of single leaves: one resolution containing every leaf."""
    return AbstractProp.from_sets(labels, [range(len(labels))])


# -- compilation from formulas ----------------------------------------------

def meet_graph(f: fm.Formula) -> tuple[int, list[int]]:
    """Leaf count and adjacency masks; leaves are adjacent iff they meet at an ``&``."""
    n = sum(1 for _ in fm.literals(f))
    adj = [0] * n
    counter = iter(range(n))

    def walk(node):
        if isinstance(node, fm.Lit):
            return 1 << next(counter)
        if isinstance(node, fm.Const):
            raise ShapeError("constants have no meet-graph representation")
        left, right = walk(node.left), walk(node.right)
        if isinstance(node, fm.And):
            for x in bits(left):
                adj[x] |= right
            for y in bits(right):
                adj[y] |= left
        return left | right

    walk(f)
    return n, adj


def maximal_stable_sets(n: int, adj: Sequence[int]) -> frozenset[int]:
    """Inclusion-maximal edge-free vertex sets (Bron-Kerbosch with pivoting on the complement)."""
    _check_bound(n)
    full = (1 << n) - 1
    non_adj = [full & ~adj[v] & ~(1 << v) for v in range(n)]
    found = []

    def expand(r, p, x):
        if not p and not x:
            found.append(r)
            return
        pivot = ((p | x) & -(p | x)).bit_length() - 1
        for v in bits(p & ~non_adj[pivot]):
            expand(r | 1 << v, p & non_adj[v], x & non_adj[v])
            p &= ~(1 << v)
            x |= 1 << v

    expand(0, full, 0)
    return frozenset(found)


def compile_graph(f: fm.Formula) -> AbstractProp:
    n, adj = meet_graph(f)
    return AbstractProp(tuple(fm.literals(f)), maximal_stable_sets(n, adj))


def compile_recursive(f: fm.Formula) -> AbstractProp:
    if isinstance(f, fm.Lit):
        return literal_prop(f.literal)
    if isinstance(f, fm.Const):
        return ONE if f.value else ZERO
    left, right = compile_recursive(f.left), compile_recursive(f.right)
    if isinstance(f, fm.And):
        return wedge(left, right)
    return vee(left, right)


def compile_formula(f: fm.Formula | str) -> AbstractProp:
    """Abstract proposition of a formula; leaves follow left-to-right occurrence order."""
    if isinstance(f, str):
        f = fm.parse(f)
    if fm.has_constants(f):
        return compile_recursive(f)
    return compile_graph(f)


# -- truth ------------------------------------------------------------------

def untrue_resolution(a: AbstractProp) -> int | None:
    """A resolution with no complementary pair of leaves, or None if there is none."""
    for r in sorted(a.resolutions):
        seen = {a.labels[i] for i in bits(r)}
        if not any(l.dual in seen for l in seen):
            return r
    return None


def is_true(a: AbstractProp) -> bool:
    return untrue_resolution(a) is None


# -- structural helpers -----------------------------------------------------

def is_isomorphic(a: AbstractProp, b: AbstractProp) -> bool:
    """Whether some label-preserving leaf bijection carries one resolution set onto the other."""
    if a.n != b.n or sorted(a.labels) != sorted(b.labels):
        return False
    if len(a.resolutions) != len(b.resolutions):
        return False
    if sorted(r.bit_count() for r in a.resolutions) != sorted(r.bit_count() for r in b.resolutions):
        return False
    n = a.n
    image = [0] * n

    def assign(i, used):
        if i == n:
            mapped = frozenset(to_mask(image[x] for x in bits(r)) for r in a.resolutions)
            return mapped == b.resolutions
        for j in range(n):
            if not used >> j & 1 and b.labels[j] == a.labels[i]:
                image[i] = j
                if assign(i + 1, used | 1 << j):
                    return True
        return False

    return assign(0, 0)


def restrict(a: AbstractProp, lo: int, hi: int, sets: Iterable[int]) -> AbstractProp:
    width = hi - lo
    mask = (1 << width) - 1
    return AbstractProp(a.labels[lo:hi], frozenset((s >> lo) & mask for s in sets))


def split_product(p: AbstractProp, k: int) -> tuple[AbstractProp, AbstractProp]:
    """Recover ``(a, b)`` with ``wedge(a, b) == p`` and ``a`` owning the first ``k`` leaves."""
    low = (1 << k) - 1
    a = restrict(p, 0, k, [r for r in p.resolutions if not r & ~low])
    b = restrict(p, k, p.n, [r for r in p.resolutions if not r & low])
    if wedge(a, b) != p:
        raise ShapeError(f"proposition is not a product split after leaf {k}")
    return a, b


def split_sum(p: AbstractProp, k: int) -> tuple[AbstractProp, AbstractProp]:
    """Recover ``(a, b)`` with ``vee(a, b) == p`` and ``a`` owning the first ``k`` leaves."""
    a = restrict(p, 0, k, p.resolutions)
    b = restrict(p, k, p.n, p.resolutions)
    if vee(a, b) != p:
        raise ShapeError(f"proposition is not a sum split after leaf {k}")
    return a, b
