"""Random and exhaustive generators for formulas, propositions and relations."""

from __future__ import annotations

import random
from typing import Iterator, Sequence

from . import formula as fm
from .absprop import AbstractProp, compile_formula
from .formula import Literal
from .morphism import Morphism, candidate_pairs, check_lax


def literals_over(atoms: Sequence[str]) -> list[Literal]:
    return [Literal(a, neg) for a in atoms for neg in (False, True)]


def random_formula(rng: random.Random, atoms: Sequence[str], leaves: int, constants: bool = False) -> fm.Formula:
    """A uniformly shaped-at-random formula with exactly ``leaves`` leaves."""
    if leaves == 1:
        if constants and rng.random() < 0.15:
            return fm.Const(rng.random() < 0.5)
        return fm.Lit(rng.choice(literals_over(atoms)))
    k = rng.randint(1, leaves - 1)
    node = fm.And if rng.random() < 0.5 else fm.Or
    return node(random_formula(rng, atoms, k, constants), random_formula(rng, atoms, leaves - k, constants))


def random_prop(rng: random.Random, atoms: Sequence[str], max_leaves: int) -> AbstractProp:
    return compile_formula(random_formula(rng, atoms, rng.randint(1, max_leaves)))


def random_relation(rng: random.Random, a: AbstractProp, b: AbstractProp, density: float = 0.5) -> Morphism:
    pairs = [p for p in candidate_pairs(a, b) if rng.random() < density]
    return Morphism.of(a, b, pairs)


def all_relations(a: AbstractProp, b: AbstractProp) -> Iterator[Morphism]:
    cands = candidate_pairs(a, b)
    for mask in range(1 << len(cands)):
        yield Morphism.of(a, b, (cands[i] for i in range(len(cands)) if mask >> i & 1))


# -- exhaustive formula classes ---------------------------------------------
#
# Formulas are generated up to associativity and commutativity: a canonical
# form is a literal/constant, or (op, sorted tuple of children) where no
# child has the same op.

def _ac_key(f):
    if isinstance(f, fm.Lit):
        return (0, str(f.literal))
    if isinstance(f, fm.Const):
        return (0, "1" if f.value else "0")
    op = "&" if isinstance(f, fm.And) else "|"
    kids = []
    for child in (f.left, f.right):
        key = _ac_key(child)
        if key[0] == 1 and key[1] == op:
            kids.extend(key[2])
        else:
            kids.append(key)
    return (1, op, tuple(sorted(kids)))


def ac_key(f: fm.Formula):
    """Canonical form of ``f`` modulo associativity and commutativity."""
    return _ac_key(f)


def formulas_by_depth(atoms: Sequence[str], depth: int, constants: bool = True) -> list[fm.Formula]:
    """One representative per AC class of formulas of height at most ``depth``.

    A single leaf has height 1.
    """
    leaves = [fm.Lit(l) for l in literals_over(atoms)]
    if constants:
        leaves += [fm.TRUE, fm.FALSE]
    level = {ac_key(f): f for f in leaves}
    for _ in range(depth - 1):
        items = list(level.values())
        nxt = dict(level)
        for i, x in enumerate(items):
            for y in items[i:]:
                for node in (fm.And, fm.Or):
                    f = node(x, y)
                    nxt.setdefault(ac_key(f), f)
        level = nxt
    return list(level.values())


def formulas_by_leaves(atoms: Sequence[str], max_leaves: int) -> list[fm.Formula]:
    """One representative per AC class of constant-free formulas with at most ``max_leaves`` leaves."""
    by_size = {1: {ac_key(f): f for f in (fm.Lit(l) for l in literals_over(atoms))}}
    for n in range(2, max_leaves + 1):
        found = {}
        for k in range(1, n // 2 + 1):
            lefts = list(by_size[k].values())
            rights = list(by_size[n - k].values())
            for x in lefts:
                for y in rights:
                    for node in (fm.And, fm.Or):
                        f = node(x, y)
                        found.setdefault(ac_key(f), f)
        by_size[n] = found
    return [f for n in sorted(by_size) for f in by_size[n].values()]


def random_lax(rng: random.Random, a: AbstractProp, b: AbstractProp, keep: float = 0.3) -> Morphism | None:
    """A random lax morphism ``a -> b``, or None when there is none.

    Laxness is preserved by adding pairs, so a lax morphism exists iff the
    full candidate relation is lax; pairs are then dropped in random order
    whenever that keeps the relation lax.
    """
    pairs = set(candidate_pairs(a, b))
    if not check_lax(Morphism.of(a, b, pairs)):
        return None
    order = sorted(pairs)
    rng.shuffle(order)
    for pair in order:
        if rng.random() < keep:
            continue
        pairs.discard(pair)
        if not check_lax(Morphism.of(a, b, pairs)):
            pairs.add(pair)
    return Morphism.of(a, b, pairs)
