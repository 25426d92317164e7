"""Adding the axioms ``p | ~p``: universal axiom, local axioms, and linkings.

* universal: a proof ``A -> B`` is a lax morphism ``AX & A -> B | CUT``
  where ``AX`` is the product of ``p | ~p`` over a fixed finite atom
  universe and ``CUT = ~AX``;
* local: a lax morphism ``a & A -> B | beta`` for a chosen list of axioms
  ``a`` and cuts ``beta``;
* linkings: simple graphs on the leaves of source and target, composed
  along alternating paths, subject to the lax edge condition on ``~A | B``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from .absprop import (
    ONE,
    AbstractProp,
    big_vee,
    big_wedge,
    compile_formula,
    is_true,
    neg,
    vee,
    wedge,
)
from .errors import ConditionError, LogicError, ShapeError
from .formula import ATOM_RE, Literal
from .morphism import (
    Morphism,
    and_par,
    assoc_and,
    assoc_or,
    check_lax,
    compose,
    copairing,
    find_morphism,
    identity,
    injection,
    linear_distribution,
    or_par,
    pairing,
    projection,
)

MAX_UNIVERSE = 8


@lru_cache(maxsize=None)
def axiom(atom: str) -> AbstractProp:
    """``p | ~p`` with leaves ``[p, ~p]``."""
    return compile_formula(f"{atom}|~{atom}")


def axioms_prop(atoms: Sequence[str]) -> AbstractProp:
    return big_wedge(axiom(a) for a in atoms)


def cuts_prop(atoms: Sequence[str]) -> AbstractProp:
    """Sum of cuts ``~p & p``; the empty sum is ``0``."""
    return big_vee(neg(axiom(a)) for a in atoms)


def _check_atoms(atoms):
    for a in atoms:
        if not ATOM_RE.fullmatch(a):
            raise ShapeError(f"invalid atom name {a!r}")


def prop_atoms(a: AbstractProp) -> set[str]:
    return {l.atom for l in a.labels}


# -- universal axiom --------------------------------------------------------

@dataclass(frozen=True)
class UniversalContext:
    atoms: tuple[str, ...]

    @cached_property
    def ax(self) -> AbstractProp:
        return axioms_prop(self.atoms)

    @cached_property
    def cut(self) -> AbstractProp:
        return neg(self.ax)


def make_context(atoms: Iterable[str]) -> UniversalContext:
    atoms = tuple(atoms)
    if not 1 <= len(atoms) <= MAX_UNIVERSE:
        raise ShapeError(f"atom universe must have 1 to {MAX_UNIVERSE} atoms, got {len(atoms)}")
    if len(set(atoms)) != len(atoms):
        raise ShapeError("atom universe has duplicates")
    _check_atoms(atoms)
    return UniversalContext(atoms)


@dataclass(frozen=True)
class BuMorphism:
    ctx: UniversalContext
    source: AbstractProp
    target: AbstractProp
    body: Morphism

    def __post_init__(self):
        if self.body.source != wedge(self.ctx.ax, self.source):
            raise ShapeError("body source is not AX & source")
        if self.body.target != vee(self.target, self.ctx.cut):
            raise ShapeError("body target is not target | CUT")


def bu_check(f: BuMorphism) -> bool:
    return check_lax(f.body)


def bu_id(ctx: UniversalContext, a: AbstractProp) -> BuMorphism:
    shift = ctx.ax.n
    body = Morphism.of(wedge(ctx.ax, a), vee(a, ctx.cut), ((shift + x, x) for x in range(a.n)))
    return BuMorphism(ctx, a, a, body)


def bu_compose(f: BuMorphism, g: BuMorphism) -> BuMorphism:
    """``<pi1, f> ; l ; [g, iota2]`` with ``l`` the linear distribution at ``AX & (B | CUT)``."""
    if f.ctx != g.ctx:
        raise ShapeError("morphisms live in different atom universes")
    if f.target != g.source:
        raise ShapeError("cannot compose: target of f differs from source of g")
    ax, cut = f.ctx.ax, f.ctx.cut
    keep_ax = pairing(projection(ax, f.source, 0), f.body)
    interface = linear_distribution(ax, f.target, cut)
    finish = copairing(g.body, injection(g.target, cut, 1))
    body = compose(compose(keep_ax, interface), finish)
    return BuMorphism(f.ctx, f.source, g.target, body)


def bu_search(ctx: UniversalContext, a: AbstractProp, b: AbstractProp) -> BuMorphism | None:
    """Exhaustive search for some lax body ``AX & a -> b | CUT``."""
    body = find_morphism(wedge(ctx.ax, a), vee(b, ctx.cut), "lax")
    return None if body is None else BuMorphism(ctx, a, b, body)


def witness_proof(ctx: UniversalContext, a: AbstractProp, confirm: bool = False) -> BuMorphism | None:
    """A proof ``1 -> a`` when ``a`` is true, relating every axiom leaf to every equally labelled leaf of ``a``.

    With ``confirm``, an untrue ``a`` is double-checked by exhaustive search,
    and a found body raises :class:`LogicError`.
    """
    missing = prop_atoms(a) - set(ctx.atoms)
    if missing:
        raise ShapeError(f"atoms {sorted(missing)} are outside the universe")
    if is_true(a):
        ax = ctx.ax
        pairs = [(i, j) for i in range(ax.n) for j in range(a.n) if ax.labels[i] == a.labels[j]]
        return BuMorphism(ctx, ONE, a, Morphism.of(wedge(ax, ONE), vee(a, ctx.cut), pairs))
    if confirm and bu_search(ctx, ONE, a) is not None:
        raise LogicError("found a proof of an untrue proposition")
    return None


# -- local axioms -----------------------------------------------------------

@dataclass(frozen=True)
class BaMorphism:
    source: AbstractProp
    target: AbstractProp
    axioms: tuple[str, ...]
    cuts: tuple[str, ...]
    body: Morphism

    def __post_init__(self):
        _check_atoms(self.axioms + self.cuts)
        if self.body.source != wedge(axioms_prop(self.axioms), self.source):
            raise ShapeError("body source is not axioms & source")
        if self.body.target != vee(self.target, cuts_prop(self.cuts)):
            raise ShapeError("body target is not target | cuts")


def ba_check(f: BaMorphism) -> bool:
    return check_lax(f.body)


def ba_id(a: AbstractProp) -> BaMorphism:
    return BaMorphism(a, a, (), (), identity(a))


def ba_compose(f: BaMorphism, g: BaMorphism) -> BaMorphism:
    """Composite ``(b & a) & A -> C | (gamma | beta)`` with axioms ``b + a`` and cuts ``gamma + beta``."""
    if f.target != g.source:
        raise ShapeError("cannot compose: target of f differs from source of g")
    a_ax, b_ax = axioms_prop(f.axioms), axioms_prop(g.axioms)
    beta, gamma = cuts_prop(f.cuts), cuts_prop(g.cuts)
    steps = [
        assoc_and(b_ax, a_ax, f.source),
        and_par(identity(b_ax), f.body),
        linear_distribution(b_ax, f.target, beta),
        or_par(g.body, identity(beta)),
        assoc_or(g.target, gamma, beta),
    ]
    body = steps[0]
    for step in steps[1:]:
        body = compose(body, step)
    return BaMorphism(f.source, g.target, g.axioms + f.axioms, g.cuts + f.cuts, body)


# -- linkings ---------------------------------------------------------------

@dataclass(frozen=True)
class Linking:
    """Simple graph on source leaves ``0..n-1`` followed by target leaves ``n..n+m-1``.

    Edges across the two sides join equal labels; edges within one side join
    dual labels.
    """

    source: AbstractProp
    target: AbstractProp
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        n = self.source.n
        total = n + self.target.n
        for u, v in self.edges:
            if not 0 <= u < v < total:
                raise ShapeError(f"edge {(u, v)} is not a normalised pair of distinct vertices")
            lu, lv = self.label(u), self.label(v)
            cross = (u < n) != (v < n)
            if cross and lu != lv:
                raise ShapeError(f"cross edge {(u, v)} joins {lu} to {lv}")
            if not cross and lu != lv.dual:
                raise ShapeError(f"edge {(u, v)} within one side joins {lu} to {lv}, not duals")

    @classmethod
    def of(cls, source, target, edges) -> Linking:
        return cls(source, target, frozenset((min(u, v), max(u, v)) for u, v in edges))

    def label(self, v: int) -> Literal:
        n = self.source.n
        return self.source.labels[v] if v < n else self.target.labels[v - n]

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)


def identity_linking(a: AbstractProp) -> Linking:
    return Linking.of(a, a, ((x, a.n + x) for x in range(a.n)))


def linking_of_morphism(m: Morphism) -> Linking:
    return Linking.of(m.source, m.target, ((x, m.source.n + y) for x, y in m.pairs))


def linking_compose(f: Linking, g: Linking) -> Linking:
    """Alternating path composition through the shared middle object.

    A path leaves an outer vertex, and every time it enters a middle vertex
    it must continue along an edge of the other linking.  Closed loops and
    cycles inside the middle contribute nothing.
    """
    if f.target != g.source:
        raise ShapeError("cannot compose: target of f differs from source of g")
    na, nb = f.source.n, f.target.n
    # vertices: A = [0, na), B = [na, na + nb), C = [na + nb, ...)
    adj = (defaultdict(list), defaultdict(list))
    for u, v in f.edges:
        adj[0][u].append(v)
        adj[0][v].append(u)
    for u, v in g.edges:
        u, v = u + na, v + na
        adj[1][u].append(v)
        adj[1][v].append(u)

    def middle(v):
        return na <= v < na + nb

    def outer(v):
        return v if v < na else v - nb

    edges = set()
    total = na + nb + g.target.n
    for start in (v for v in range(total) if not middle(v)):
        first = 0 if start < na else 1
        seen = set()
        stack = [(w, first) for w in adj[first][start]]
        while stack:
            v, via = stack.pop()
            if not middle(v):
                if v != start:
                    edges.add((outer(start), outer(v)))
                continue
            if (v, via) in seen:
                continue
            seen.add((v, via))
            stack.extend((w, 1 - via) for w in adj[1 - via][v])
    return Linking.of(f.source, g.target, edges)


def bl_failure(f: Linking) -> int | None:
    """A resolution of ``~A | B`` containing no edge, or None."""
    for r in sorted(vee(neg(f.source), f.target).resolutions):
        if not any(r >> u & 1 and r >> v & 1 for u, v in f.edges):
            return r
    return None


def bl_check(f: Linking) -> bool:
    return bl_failure(f) is None


def bl_compose_checked(f: Linking, g: Linking) -> Linking:
    for name, h in (("first", f), ("second", g)):
        if not bl_check(h):
            raise ConditionError(f"{name} linking violates the lax edge condition")
    out = linking_compose(f, g)
    if not bl_check(out):
        raise LogicError("composite linking violates the lax edge condition")
    return out
