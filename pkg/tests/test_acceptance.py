"""Exit criteria, each run at its stated size and time limit.

Every test appends one PASS/FAIL line, printed at the end of the session.
"""

import functools
import itertools
import random
import time
from contextlib import contextmanager

import numpy as np
import pytest

from abslogic import formula as fm
from abslogic.absprop import (
    compile_formula,
    is_true,
    literal_prop,
    orthogonal,
    pure_product,
    pure_sum,
    vee,
    wedge,
)
from abslogic.boolean import (
    BaMorphism,
    BuMorphism,
    Linking,
    axioms_prop,
    ba_check,
    ba_compose,
    ba_id,
    bl_check,
    bl_compose_checked,
    bu_check,
    bu_compose,
    bu_id,
    cuts_prop,
    identity_linking,
    linking_compose,
    linking_of_morphism,
    make_context,
    witness_proof,
)
from abslogic.morphism import (
    check_lax,
    check_lax_edge,
    check_strict,
    check_strict_edge,
    coincide_lax,
    coincide_strict,
    compose,
    distribution,
    enumerate_morphisms,
    factor_distribution,
    identity,
    Morphism,
    candidate_pairs,
    linear_distribution,
    mix_soft_factor,
)
from abslogic.sampling import (
    ac_key,
    all_relations,
    formulas_by_depth,
    formulas_by_leaves,
    random_lax,
    random_prop,
    random_relation,
)

from conftest import ACCEPTANCE_LINES

pytestmark = pytest.mark.acceptance


@contextmanager
def criterion(number, title, limit):
    """Time the block and record one result line; failures inside still record FAIL."""
    start = time.perf_counter()
    info = {"detail": ""}
    ok = False
    try:
        yield info
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        in_time = elapsed < limit
        verdict = "PASS" if ok and in_time else "FAIL"
        note = info["detail"] + ("" if in_time else f" (over the {limit:g} s limit)")
        shown = f"{elapsed * 1000:.2f} ms" if elapsed < 1 else f"{elapsed:.1f} s"
        ACCEPTANCE_LINES.append(f"[{verdict}] {number}. {title}: {shown}, {note}".rstrip(", "))
    assert elapsed < limit, f"took {elapsed:.3f} s, limit {limit} s"


def test_1_compilation_fixture():
    compile_formula("p|q")  # warm imports and caches unrelated to the fixture
    with criterion(1, "compile (p|q)&(p|~p)", 1e-3) as info:
        prop = compile_formula("(p|q)&(p|~p)")
        assert prop.n == 4
        assert len(prop.resolutions) == 2
        info["detail"] = f"4 leaves, resolutions {prop.resolution_lists()}"
    assert prop.resolution_lists() == [[0, 1], [2, 3]]


# pairs read off the four pictures for p&p and for p|p
FOUR_PROOFS = {
    "p&p": [{(0, 0), (1, 1)}, {(0, 1), (1, 0)}, {(0, 0), (0, 1)}, {(1, 0), (1, 1)}],
    "p|p": [{(0, 0), (1, 1)}, {(0, 1), (1, 0)}, {(0, 0), (1, 0)}, {(0, 1), (1, 1)}],
}


def test_2_four_proofs_enumeration():
    with criterion(2, "four strict morphisms on p&p and on p|p", 1.0) as info:
        for text, expected in FOUR_PROOFS.items():
            a = compile_formula(text)
            found = [set(m.pairs) for m in enumerate_morphisms(a, a, "strict")]
            assert len(found) == 4
            assert sorted(map(sorted, found)) == sorted(map(sorted, expected))
        info["detail"] = "identity, twist, left, right"


def test_3_condition_coincidence():
    with criterion(3, "strict = strict-edge and lax = lax-edge", 60.0) as info:
        by_size = {}
        for f in formulas_by_leaves("pq", 5):
            a = compile_formula(f)
            by_size.setdefault(a.n, set()).add(a)
        exhaustive = bad = 0
        for na, nb in itertools.product(by_size, repeat=2):
            if na + nb > 6:
                continue
            for a in by_size[na]:
                for b in by_size[nb]:
                    for m in all_relations(a, b):
                        exhaustive += 1
                        if not (coincide_strict(m) and coincide_lax(m)):
                            bad += 1
        rng = random.Random(31)
        for _ in range(10_000):
            a, b = random_prop(rng, "pq", 10), random_prop(rng, "pq", 10)
            m = random_relation(rng, a, b, rng.random())
            if not (coincide_strict(m) and coincide_lax(m)):
                bad += 1
        info["detail"] = f"{exhaustive} exhaustive + 10000 random relations, {bad} discrepancies"
        assert bad == 0


def test_4_distribution_candidates():
    with criterion(4, "distribution fails (R),(R') and passes lax", 1.0) as info:
        pool = [literal_prop("p"), literal_prop("q"), literal_prop("r"), compile_formula("p&q")]
        count = 0
        for a, b, c in itertools.product(pool, repeat=3):
            for m in (distribution(a, b, c), linear_distribution(a, b, c)):
                assert not check_strict(m) and not check_strict_edge(m)
                assert check_lax(m) and check_lax_edge(m)
                count += 1
        info["detail"] = f"{count} instances"


def _random_split_shape(rng):
    a, b, c = (random_prop(rng, "pq", 2) for _ in range(3))
    return a, b, c, random_prop(rng, "pq", 4)


def test_5_factorisation_round_trips():
    with criterion(5, "distribution and mix-soft factorisations recompose", 60.0) as info:
        rng = random.Random(41)
        dist = soft = attempts = 0
        while dist < 1000:
            attempts += 1
            a, b, c, target = _random_split_shape(rng)
            m = random_lax(rng, wedge(a, vee(b, c)), target)
            if m is None:
                continue
            rest = factor_distribution(m, a, b, c)
            assert compose(distribution(a, b, c), rest) == m
            dist += 1
        while soft < 1000:
            attempts += 1
            xs = [rng.choice(["p", "~p", "q"]) for _ in range(rng.randint(1, 4))]
            ys = [rng.choice(["p", "~p", "q"]) for _ in range(rng.randint(1, 4))]
            m = random_lax(rng, pure_product(xs), pure_sum(ys))
            if m is None:
                continue
            res = mix_soft_factor(m)
            if res.tag == "identity-leaf":
                assert m == identity(m.source)
            else:
                assert res.recompose() == m
            soft += 1
        info["detail"] = f"{dist} distribution + {soft} mix-soft morphisms, 0 failures"


ATOMS = "pqr"
SIGNED_PERMUTATIONS = [(perm, flips) for perm in itertools.permutations(range(3))
                       for flips in itertools.product((False, True), repeat=3)]


def _rename(f, perm, flips):
    if isinstance(f, fm.Lit):
        i = ATOMS.index(f.literal.atom)
        return fm.Lit(fm.Literal(ATOMS[perm[i]], f.literal.negative ^ flips[i]))
    if isinstance(f, fm.Const):
        return f
    return type(f)(_rename(f.left, perm, flips), _rename(f.right, perm, flips))


def _truth_table(f):
    return sum(1 << k for k, row in enumerate(fm.assignments(list(ATOMS))) if fm.evaluate(f, row))


def test_6_truth_equivalence():
    """Every formula over p, q, r of height at most 4, modulo associativity and commutativity.

    A height-4 formula is ``x & y`` or ``x | y`` with ``x`` and ``y`` of height
    at most 3.  Renaming atoms and flipping their polarity preserves both
    abstract truth and tautology, so ``x`` ranges over one representative per
    symmetry orbit, ``y`` over every class in an orbit at or after it.
    """
    with criterion(6, "abstract truth = tautology, depth <= 4 over 3 atoms", 60.0) as info:
        shallow = formulas_by_depth(ATOMS, 3)
        index = {ac_key(f): i for i, f in enumerate(shallow)}
        props = [compile_formula(f) for f in shallow]
        tables = [_truth_table(f) for f in shallow]
        full = (1 << 8) - 1
        bad = sum(is_true(p) != fm.is_tautology(f) for p, f in zip(props, shallow))
        bad += sum(fm.is_tautology(f) != (t == full) for f, t in zip(shallow, tables))

        orbit = [-1] * len(shallow)
        reps = []
        for i, f in enumerate(shallow):
            if orbit[i] < 0:
                for g in SIGNED_PERMUTATIONS:
                    orbit[index[ac_key(_rename(f, *g))]] = len(reps)
                reps.append(i)
        later = [[j for j in range(len(shallow)) if orbit[j] >= k] for k in range(len(reps))]

        checked = 0
        for k, i in enumerate(reps):
            x, tx = props[i], tables[i]
            for j in later[k]:
                y, ty = props[j], tables[j]
                bad += is_true(wedge(x, y)) != (tx & ty == full)
                bad += is_true(vee(x, y)) != (tx | ty == full)
                checked += 2

        # the children-combining shortcut agrees with compiling the whole formula
        rng = random.Random(61)
        for _ in range(2000):
            i, j = rng.randrange(len(shallow)), rng.randrange(len(shallow))
            node = rng.choice([fm.And, fm.Or])
            f = node(shallow[i], shallow[j])
            whole = compile_formula(f)
            assert whole == (wedge if node is fm.And else vee)(props[i], props[j])
            g = _rename(f, *rng.choice(SIGNED_PERMUTATIONS))
            assert is_true(whole) == fm.is_tautology(f) == is_true(compile_formula(g)) == fm.is_tautology(g)
        info["detail"] = (f"{len(shallow)} classes of height <= 3, {len(reps)} orbits, "
                          f"{checked} height-4 checks, {bad} discrepancies")
        assert bad == 0


def test_7_universal_axiom_existence():
    with criterion(7, "proof in B^u exists iff true, atoms {p,q}, <= 6 leaves", 300.0) as info:
        ctx = make_context(["p", "q"])
        props = {compile_formula(f): f for f in formulas_by_leaves("pq", 6)}
        proved = refuted = 0
        for a, f in props.items():
            proof = witness_proof(ctx, a, confirm=True)
            assert (proof is not None) == is_true(a) == fm.is_tautology(f)
            if proof is None:
                refuted += 1
            else:
                assert bu_check(proof)
                proved += 1
        info["detail"] = f"{len(props)} propositions: {proved} proved, {refuted} refuted by exhaustive search"


def _chain(rng, pool, make, length=3):
    """A random walk ``a0 -> a1 -> a2 -> a3`` through ``pool``, arrows drawn by ``make``.

    ``make(rng, a, b)`` returns None when no arrow exists; such steps are
    retried with another target.
    """
    while True:
        objs, arrows = [rng.choice(pool)], []
        while len(arrows) < length:
            for b in rng.sample(pool, len(pool)):
                arrow = make(rng, objs[-1], b)
                if arrow is not None:
                    break
            else:
                break
            arrows.append(arrow)
            objs.append(b)
        if len(arrows) == length:
            return objs, arrows


def _pool(max_leaves):
    return sorted({compile_formula(f) for f in formulas_by_leaves("pq", max_leaves)}, key=repr)


@functools.lru_cache(maxsize=None)
def _lax_exists(a, b):
    return check_lax(Morphism.of(a, b, candidate_pairs(a, b)))


def _lax(rng, a, b):
    return random_lax(rng, a, b) if _lax_exists(a, b) else None


def _bu(ctx):
    def make(rng, a, b):
        source, target = wedge(ctx.ax, a), vee(b, ctx.cut)
        if not _lax_exists(source, target):
            return None
        return BuMorphism(ctx, a, b, random_lax(rng, source, target))
    return make


def _ba(rng, a, b):
    axioms = tuple(rng.choice("pq") for _ in range(rng.randint(0, 1)))
    cuts = tuple(rng.choice("pq") for _ in range(rng.randint(0, 1)))
    source, target = wedge(axioms_prop(axioms), a), vee(b, cuts_prop(cuts))
    if not _lax_exists(source, target):
        return None
    return BaMorphism(a, b, axioms, cuts, random_lax(rng, source, target))


def _bl(rng, a, b):
    m = _lax(rng, a, b)
    if m is None:
        return None
    n = a.n
    labels = list(a.labels) + list(b.labels)
    extra = [(u, v) for u in range(len(labels)) for v in range(u + 1, len(labels))
             if ((u < n) == (v < n)) and labels[u] == labels[v].dual and rng.random() < 0.3]
    return Linking.of(a, b, set(linking_of_morphism(m).edges) | set(extra))


def test_8_composition_closure_and_laws():
    with criterion(8, "closure, associativity, units and linking preservation", 60.0) as info:
        rng = random.Random(81)
        triples = 1000

        small, medium = _pool(2), _pool(3)
        homs = {(a, b): enumerate_morphisms(a, b, "strict") for a in small for b in small}

        def strict(rng, a, b):
            return rng.choice(homs[a, b]) if homs[a, b] else None

        for _ in range(triples):
            (a, b, c, d), (f, g, h) = _chain(rng, small, strict)
            fg = compose(f, g)
            assert check_strict(fg) and check_strict(compose(fg, h))
            assert compose(fg, h) == compose(f, compose(g, h))
            assert compose(identity(a), f) == f == compose(f, identity(b))

        for _ in range(triples):
            (a, b, c, d), (f, g, h) = _chain(rng, medium, _lax)
            fg = compose(f, g)
            assert check_lax(fg) and check_lax(compose(fg, h))
            assert compose(fg, h) == compose(f, compose(g, h))

        ctx = make_context(["p", "q"])
        for _ in range(triples):
            (a, b, c, d), (f, g, h) = _chain(rng, small, _bu(ctx))
            fg = bu_compose(f, g)
            assert bu_check(fg)
            assert bu_compose(fg, h) == bu_compose(f, bu_compose(g, h))
            assert bu_compose(bu_id(ctx, a), f) == f == bu_compose(f, bu_id(ctx, b))

        for _ in range(triples):
            (a, b, c, d), (f, g, h) = _chain(rng, small, _ba)
            fg = ba_compose(f, g)
            assert ba_check(fg)
            assert ba_compose(fg, h) == ba_compose(f, ba_compose(g, h))
            assert ba_compose(ba_id(a), f) == f == ba_compose(f, ba_id(b))

        for _ in range(triples):
            (a, b, c, d), (f, g, h) = _chain(rng, medium, _bl)
            assert bl_check(f) and bl_check(g) and bl_check(h)
            fg = bl_compose_checked(f, g)
            assert bl_compose_checked(fg, h) == bl_compose_checked(f, bl_compose_checked(g, h))
            assert linking_compose(identity_linking(a), f) == f == linking_compose(f, identity_linking(b))
        info["detail"] = f"{triples} triples each in G, G-lax, B^u, B^a, B^l; 0 failures"


def test_9_orthogonality_kernel():
    with criterion(9, "pruned orthogonal search = brute force, n <= 14", 60.0) as info:
        rng = np.random.default_rng(91)
        cases = 0
        for _ in range(1000):
            n = int(rng.integers(0, 15))
            k = int(rng.integers(0, 7))
            density = rng.uniform(0.05, 0.6)
            sets = [int(sum(1 << i for i in range(n) if rng.random() < density)) for _ in range(k)]
            assert orthogonal(n, sets, method="search") == orthogonal(n, sets, method="brute")
            cases += 1
        info["detail"] = f"{cases} random set systems, 0 disagreements"
