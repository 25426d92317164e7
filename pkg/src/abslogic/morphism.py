"""Abstract proofs: label-respecting leaf relations and their resolution conditions.

A morphism ``A -> B`` is a set of ``(source leaf, target leaf)`` pairs.  Four
conditions are checked:

* strict: preimages of target resolutions are source resolutions, and
  images of source coresolutions are target coresolutions;
* strict edge: exactly one pair in every (source coresolution x target
  resolution) rectangle;
* lax / lax edge: the same with "superset of a (co)resolution" and "at
  least one pair" respectively.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

from .absprop import (
    AbstractProp,
    bits,
    pure_product,
    pure_sum,
    vee,
    wedge,
)
from .errors import BoundExceededError, ConditionError, ShapeError

MAX_CANDIDATE_PAIRS = 20


@dataclass(frozen=True)
class Morphism:
    source: AbstractProp
    target: AbstractProp
    pairs: frozenset[tuple[int, int]]

    def __post_init__(self):
        for x, y in self.pairs:
            if not (0 <= x < self.source.n and 0 <= y < self.target.n):
                raise ShapeError(f"pair {(x, y)} refers to a missing leaf")
            if self.source.labels[x] != self.target.labels[y]:
                raise ShapeError(
                    f"pair {(x, y)} joins {self.source.labels[x]} to {self.target.labels[y]}"
                )

    @classmethod
    def of(cls, source: AbstractProp, target: AbstractProp, pairs: Iterable[tuple[int, int]]) -> Morphism:
        return cls(source, target, frozenset((int(x), int(y)) for x, y in pairs))

    @cached_property
    def forward(self) -> tuple[int, ...]:
        """Per source leaf, the mask of related target leaves."""
        out = [0] * self.source.n
        for x, y in self.pairs:
            out[x] |= 1 << y
        return tuple(out)

    @cached_property
    def backward(self) -> tuple[int, ...]:
        out = [0] * self.target.n
        for x, y in self.pairs:
            out[y] |= 1 << x
        return tuple(out)

    def image(self, mask: int) -> int:
        out = 0
        for x in bits(mask):
            out |= self.forward[x]
        return out

    def preimage(self, mask: int) -> int:
        out = 0
        for y in bits(mask):
            out |= self.backward[y]
        return out

    def sorted_pairs(self) -> list[tuple[int, int]]:
        return sorted(self.pairs)

    def __repr__(self):
        return f"Morphism({self.source!r} -> {self.target!r}, {self.sorted_pairs()})"


@dataclass(frozen=True)
class Witness:
    """A failing (co)resolution, or a failing rectangle for the edge conditions.

    ``kind`` is ``"resolution"`` (``first`` a target resolution, ``second`` its
    preimage), ``"coresolution"`` (``first`` a source coresolution, ``second``
    its image) or ``"rectangle"`` (``first`` a source coresolution, ``second``
    a target resolution, ``edges`` the number of pairs between them).
    """

    kind: str
    first: int
    second: int
    edges: int | None = None


@dataclass(frozen=True)
class ConditionReport:
    strict_R: bool
    strict_Redge: bool
    lax_R: bool
    lax_Redge: bool
    witness: Witness | None = None


def _rectangle_edges(m, alpha, b):
    return sum((m.forward[x] & b).bit_count() for x in bits(alpha))


def strict_failure(m: Morphism) -> Witness | None:
    src, tgt = m.source, m.target
    for t in sorted(tgt.resolutions):
        pre = m.preimage(t)
        if pre not in src.resolutions:
            return Witness("resolution", t, pre)
    tgt_cores = tgt.coresolutions
    for sigma in sorted(src.coresolutions):
        img = m.image(sigma)
        if img not in tgt_cores:
            return Witness("coresolution", sigma, img)
    return None


def lax_failure(m: Morphism) -> Witness | None:
    src, tgt = m.source, m.target
    for t in sorted(tgt.resolutions):
        pre = m.preimage(t)
        if not any(not s & ~pre for s in src.resolutions):
            return Witness("resolution", t, pre)
    tgt_cores = tgt.coresolutions
    for sigma in sorted(src.coresolutions):
        img = m.image(sigma)
        if not any(not tau & ~img for tau in tgt_cores):
            return Witness("coresolution", sigma, img)
    return None


def edge_failure(m: Morphism, strict: bool) -> Witness | None:
    for b in sorted(m.target.resolutions):
        pre = m.preimage(b)
        for alpha in sorted(m.source.coresolutions):
            if strict:
                k = _rectangle_edges(m, alpha, b)
                if k != 1:
                    return Witness("rectangle", alpha, b, k)
            elif not pre & alpha:
                return Witness("rectangle", alpha, b, 0)
    return None


def check_strict(m: Morphism) -> bool:
    return strict_failure(m) is None


def check_strict_edge(m: Morphism) -> bool:
    return edge_failure(m, strict=True) is None


def check_lax(m: Morphism) -> bool:
    return lax_failure(m) is None


def check_lax_edge(m: Morphism) -> bool:
    return edge_failure(m, strict=False) is None


def check(m: Morphism, condition: str) -> bool:
    if condition == "strict":
        return check_strict(m)
    if condition == "lax":
        return check_lax(m)
    raise ValueError(f"unknown condition {condition!r}")


def report(m: Morphism) -> ConditionReport:
    """All four verdicts, with the first failure found (strict checks first)."""
    fails = [strict_failure(m), edge_failure(m, True), lax_failure(m), edge_failure(m, False)]
    witness = next((w for w in fails if w is not None), None)
    return ConditionReport(*(w is None for w in fails), witness=witness)


def coincide_strict(m: Morphism) -> bool:
    return check_strict(m) == check_strict_edge(m)


def coincide_lax(m: Morphism) -> bool:
    return check_lax(m) == check_lax_edge(m)


# -- category structure -----------------------------------------------------

def compose(f: Morphism, g: Morphism) -> Morphism:
    """Relational composite ``f ; g``."""
    if f.target != g.source:
        raise ShapeError("cannot compose: target of the first morphism differs from source of the second")
    pairs = set()
    for x in range(f.source.n):
        for z in bits(g.image(f.forward[x])):
            pairs.add((x, z))
    return Morphism(f.source, g.target, frozenset(pairs))


def identity(a: AbstractProp) -> Morphism:
    return Morphism.of(a, a, ((x, x) for x in range(a.n)))


def projection(a: AbstractProp, b: AbstractProp, i: int) -> Morphism:
    if i == 0:
        return Morphism.of(wedge(a, b), a, ((x, x) for x in range(a.n)))
    return Morphism.of(wedge(a, b), b, ((a.n + y, y) for y in range(b.n)))


def injection(a: AbstractProp, b: AbstractProp, i: int) -> Morphism:
    if i == 0:
        return Morphism.of(a, vee(a, b), ((x, x) for x in range(a.n)))
    return Morphism.of(b, vee(a, b), ((y, a.n + y) for y in range(b.n)))


def diagonal(a: AbstractProp) -> Morphism:
    return Morphism.of(a, wedge(a, a), [p for x in range(a.n) for p in ((x, x), (x, a.n + x))])


def codiagonal(a: AbstractProp) -> Morphism:
    return Morphism.of(vee(a, a), a, [p for x in range(a.n) for p in ((x, x), (a.n + x, x))])


def pairing(f: Morphism, g: Morphism) -> Morphism:
    """``<f, g> : C -> A & B`` from ``f : C -> A`` and ``g : C -> B``."""
    if f.source != g.source:
        raise ShapeError("pairing needs morphisms with a common source")
    shift = f.target.n
    pairs = set(f.pairs) | {(x, y + shift) for x, y in g.pairs}
    return Morphism.of(f.source, wedge(f.target, g.target), pairs)


def copairing(f: Morphism, g: Morphism) -> Morphism:
    """``[f, g] : A | B -> C`` from ``f : A -> C`` and ``g : B -> C``."""
    if f.target != g.target:
        raise ShapeError("copairing needs morphisms with a common target")
    shift = f.source.n
    pairs = set(f.pairs) | {(x + shift, y) for x, y in g.pairs}
    return Morphism.of(vee(f.source, g.source), f.target, pairs)


def _parallel_pairs(f, g):
    return set(f.pairs) | {(x + f.source.n, y + f.target.n) for x, y in g.pairs}


def and_par(f: Morphism, g: Morphism) -> Morphism:
    return Morphism.of(wedge(f.source, g.source), wedge(f.target, g.target), _parallel_pairs(f, g))


def or_par(f: Morphism, g: Morphism) -> Morphism:
    return Morphism.of(vee(f.source, g.source), vee(f.target, g.target), _parallel_pairs(f, g))


def _swap_pairs(a, b):
    return [(x, b.n + x) for x in range(a.n)] + [(a.n + y, y) for y in range(b.n)]


def symmetry_and(a: AbstractProp, b: AbstractProp) -> Morphism:
    return Morphism.of(wedge(a, b), wedge(b, a), _swap_pairs(a, b))


def symmetry_or(a: AbstractProp, b: AbstractProp) -> Morphism:
    return Morphism.of(vee(a, b), vee(b, a), _swap_pairs(a, b))


def _leaf_identity(source, target):
    if source.labels != target.labels:
        raise ShapeError("leaf-identity map needs equal leaf labels")
    return Morphism.of(source, target, ((x, x) for x in range(source.n)))


def assoc_and(a, b, c, inverse=False) -> Morphism:
    """``(a & b) & c -> a & (b & c)``, or the reverse direction."""
    left, right = wedge(wedge(a, b), c), wedge(a, wedge(b, c))
    return _leaf_identity(right, left) if inverse else _leaf_identity(left, right)


def assoc_or(a, b, c, inverse=False) -> Morphism:
    left, right = vee(vee(a, b), c), vee(a, vee(b, c))
    return _leaf_identity(right, left) if inverse else _leaf_identity(left, right)


def distribution(a: AbstractProp, b: AbstractProp, c: AbstractProp) -> Morphism:
    """``a & (b | c) -> (a & b) | (a & c)``; each leaf of ``a`` goes to both copies."""
    na, nb, nc = a.n, b.n, c.n
    pairs = [(x, x) for x in range(na)]
    pairs += [(x, na + nb + x) for x in range(na)]
    pairs += [(na + y, na + y) for y in range(nb)]
    pairs += [(na + nb + z, 2 * na + nb + z) for z in range(nc)]
    return Morphism.of(wedge(a, vee(b, c)), vee(wedge(a, b), wedge(a, c)), pairs)


def linear_distribution(a: AbstractProp, b: AbstractProp, c: AbstractProp) -> Morphism:
    """``a & (b | c) -> (a & b) | c``, the identity on leaves."""
    return _leaf_identity(wedge(a, vee(b, c)), vee(wedge(a, b), c))


def mix(a: AbstractProp, b: AbstractProp) -> Morphism:
    return _leaf_identity(wedge(a, b), vee(a, b))


_CANONICAL = {
    "identity": (identity, 1),
    "projection": (projection, 3),
    "injection": (injection, 3),
    "diagonal": (diagonal, 1),
    "codiagonal": (codiagonal, 1),
    "pairing": (pairing, 2),
    "copairing": (copairing, 2),
    "and_par": (and_par, 2),
    "or_par": (or_par, 2),
    "symmetry_and": (symmetry_and, 2),
    "symmetry_or": (symmetry_or, 2),
    "distribution": (distribution, 3),
    "linear_distribution": (linear_distribution, 3),
    "assoc_and": (assoc_and, 3),
    "assoc_or": (assoc_or, 3),
    "mix": (mix, 2),
}


def canonical(kind: str, *operands) -> Morphism:
    """Build a canonical map by name; ``projection``/``injection`` take ``(a, b, i)``."""
    try:
        build, arity = _CANONICAL[kind]
    except KeyError:
        raise ShapeError(f"unknown canonical map {kind!r}") from None
    if len(operands) != arity:
        raise ShapeError(f"{kind} takes {arity} operands, got {len(operands)}")
    return build(*operands)


def mix_via_z(a: AbstractProp, b: AbstractProp, z: AbstractProp) -> Morphism:
    """Mix as the composite ``a&b -> a&(z|b) -> (a&z)|(a&b) -> a|b``."""
    inject = and_par(identity(a), injection(z, b, 1))
    spread = distribution(a, z, b)
    collapse = or_par(projection(a, z, 0), projection(a, b, 1))
    return compose(compose(inject, spread), collapse)


# -- enumeration ------------------------------------------------------------

def candidate_pairs(a: AbstractProp, b: AbstractProp) -> list[tuple[int, int]]:
    return [(x, y) for x in range(a.n) for y in range(b.n) if a.labels[x] == b.labels[y]]


def iter_morphisms(a: AbstractProp, b: AbstractProp, condition: str) -> Iterator[Morphism]:
    """Yield every relation ``a -> b`` satisfying ``condition``.

    Both conditions imply at least one pair per (coresolution x resolution)
    rectangle, and the strict one at most one, so partial relations
    violating those counts are cut early; survivors get the full check.
    """
    if condition not in ("strict", "lax"):
        raise ValueError(f"unknown condition {condition!r}")
    cands = candidate_pairs(a, b)
    k = len(cands)
    if k > MAX_CANDIDATE_PAIRS:
        raise BoundExceededError(f"{k} candidate pairs exceeds the bound of {MAX_CANDIDATE_PAIRS}")
    strict = condition == "strict"
    rects = set()
    for res in b.resolutions:
        for alpha in a.coresolutions:
            rects.add(sum(1 << i for i, (x, y) in enumerate(cands) if alpha >> x & 1 and res >> y & 1))
    if 0 in rects:
        return
    rects = sorted(rects)
    full = (1 << k) - 1

    def viable(inc, undecided):
        for r in rects:
            hit = inc & r
            if strict and hit & (hit - 1):
                return False
            if not hit and not r & undecided:
                return False
        return True

    def walk(i, inc):
        undecided = full & ~((1 << i) - 1)
        if not viable(inc, undecided):
            return
        if i == k:
            m = Morphism(a, b, frozenset(cands[j] for j in bits(inc)))
            if check(m, condition):
                yield m
            return
        yield from walk(i + 1, inc | 1 << i)
        yield from walk(i + 1, inc)

    yield from walk(0, 0)


def enumerate_morphisms(a: AbstractProp, b: AbstractProp, condition: str) -> list[Morphism]:
    """All morphisms ``a -> b`` under ``condition``, ordered by their sorted pair lists."""
    return sorted(iter_morphisms(a, b, condition), key=Morphism.sorted_pairs)


def find_morphism(a: AbstractProp, b: AbstractProp, condition: str) -> Morphism | None:
    return next(iter_morphisms(a, b, condition), None)


# -- factorisations ---------------------------------------------------------

@dataclass(frozen=True)
class FactorResult:
    """``original == compose(first, second)`` unless the tag is ``identity-leaf``.

    ``residual`` is whichever of ``first``/``second`` is not the canonical map.
    ``side`` names the kept factor (softness) and ``leaf`` the discarded leaf
    (mix-softness).
    """

    tag: str
    first: Morphism | None = None
    second: Morphism | None = None
    residual: Morphism | None = None
    side: int | None = None
    leaf: int | None = None

    def recompose(self) -> Morphism | None:
        if self.first is None:
            return self.residual
        return compose(self.first, self.second)


def factor_distribution(m: Morphism, a: AbstractProp, b: AbstractProp, c: AbstractProp) -> Morphism:
    """The ``R'`` with ``compose(distribution(a, b, c), R') == m``."""
    if m.source != wedge(a, vee(b, c)):
        raise ShapeError("source is not a & (b | c) for the given operands")
    witness = lax_failure(m)
    if witness is not None:
        raise ConditionError(f"morphism is not lax: {witness}")
    na, nb = a.n, b.n
    pairs = set()
    for x, y in m.pairs:
        if x < na:
            pairs.add((x, y))
            pairs.add((na + nb + x, y))
        elif x < na + nb:
            pairs.add((x, y))
        else:
            pairs.add((x + na, y))
    return Morphism.of(vee(wedge(a, b), wedge(a, c)), m.target, pairs)


def _drop(labels, i):
    return labels[:i] + labels[i + 1:]


def _reindex_without(i):
    return lambda x: x - (x > i)


def mix_soft_factor(m: Morphism) -> FactorResult:
    """Factor a morphism from a pure product to a pure sum.

    Returns ``identity-leaf`` for the identity on one leaf, otherwise a
    factorisation through a projection or injection (dropping the first
    uncovered leaf) or through mix.
    """
    a, b = m.source, m.target
    if a.resolutions != frozenset(1 << i for i in range(a.n)):
        raise ShapeError("source is not a pure product of leaves")
    if b.resolutions != frozenset({(1 << b.n) - 1}):
        raise ShapeError("target is not a pure sum of leaves")
    if a.n == b.n == 1 and m.pairs == {(0, 0)}:
        return FactorResult("identity-leaf", residual=m)

    covered_src = {x for x, _ in m.pairs}
    covered_tgt = {y for _, y in m.pairs}
    for x in range(a.n):
        if x not in covered_src:
            smaller = pure_product(_drop(a.labels, x))
            shift = _reindex_without(x)
            proj = Morphism.of(a, smaller, ((i, shift(i)) for i in range(a.n) if i != x))
            rest = Morphism.of(smaller, b, ((shift(i), j) for i, j in m.pairs))
            return FactorResult("projection", proj, rest, rest, leaf=x)
    for y in range(b.n):
        if y not in covered_tgt:
            smaller = pure_sum(_drop(b.labels, y))
            shift = _reindex_without(y)
            rest = Morphism.of(a, smaller, ((i, shift(j)) for i, j in m.pairs))
            inj = Morphism.of(smaller, b, ((shift(j), j) for j in range(b.n) if j != y))
            return FactorResult("injection", rest, inj, rest, leaf=y)

    if a.n > 1:
        head, tail = pure_product(a.labels[:1]), pure_product(a.labels[1:])
        through = mix(head, tail)
        rest = Morphism(through.target, b, m.pairs)
        return FactorResult("mix", through, rest, rest, side=0)
    head, tail = pure_sum(b.labels[:1]), pure_sum(b.labels[1:])
    through = mix(head, tail)
    rest = Morphism(a, through.source, m.pairs)
    return FactorResult("mix", rest, through, rest, side=1)


def softness_witness(
    m: Morphism,
    a: AbstractProp,
    b: AbstractProp,
    c: AbstractProp | None = None,
    d: AbstractProp | None = None,
) -> FactorResult:
    """Factor ``m : a & b -> c | d`` through a projection or an injection.

    Projections are tried before injections and the first factor before
    the second.  Without ``c``/``d`` only projections are tried.
    """
    if m.source != wedge(a, b):
        raise ShapeError("source is not a & b for the given operands")
    if c is not None and m.target != vee(c, d):
        raise ShapeError("target is not c | d for the given operands")
    na = a.n
    srcs = {x for x, _ in m.pairs}
    if all(x < na for x in srcs):
        rest = Morphism.of(a, m.target, m.pairs)
        return FactorResult("projection", projection(a, b, 0), rest, rest, side=0)
    if all(x >= na for x in srcs):
        rest = Morphism.of(b, m.target, ((x - na, y) for x, y in m.pairs))
        return FactorResult("projection", projection(a, b, 1), rest, rest, side=1)
    if c is not None:
        nc = c.n
        tgts = {y for _, y in m.pairs}
        if all(y < nc for y in tgts):
            rest = Morphism.of(m.source, c, m.pairs)
            return FactorResult("injection", rest, injection(c, d, 0), rest, side=0)
        if all(y >= nc for y in tgts):
            rest = Morphism.of(m.source, d, ((x, y - nc) for x, y in m.pairs))
            return FactorResult("injection", rest, injection(c, d, 1), rest, side=1)
    raise ConditionError("morphism factors through neither a projection nor an injection")
