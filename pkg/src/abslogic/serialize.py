"""JSON encodings of formulas, propositions, morphisms and linkings, plus DOT export.

Every encoder produces canonically ordered output so equal values serialise
to identical text.
"""

from __future__ import annotations

import json

from . import formula as fm
from .absprop import AbstractProp, bits, is_abstract_prop
from .boolean import BaMorphism, BuMorphism, Linking, make_context
from .errors import ShapeError
from .formula import Literal
from .morphism import ConditionReport, FactorResult, Morphism, Witness


def dumps(obj) -> str:
    return json.dumps(obj, indent=2)


# -- formulas ---------------------------------------------------------------

def formula_to_json(f: fm.Formula) -> dict:
    if isinstance(f, fm.Lit):
        return {"op": "lit", "label": str(f.literal)}
    if isinstance(f, fm.Const):
        return {"op": "true" if f.value else "false"}
    op = "and" if isinstance(f, fm.And) else "or"
    return {"op": op, "left": formula_to_json(f.left), "right": formula_to_json(f.right)}


def formula_from_json(data: dict) -> fm.Formula:
    op = data.get("op")
    if op == "lit":
        return fm.Lit(Literal.parse(data["label"]))
    if op in ("true", "false"):
        return fm.Const(op == "true")
    if op in ("and", "or"):
        node = fm.And if op == "and" else fm.Or
        return node(formula_from_json(data["left"]), formula_from_json(data["right"]))
    raise ShapeError(f"unknown formula node {op!r}")


# -- propositions -----------------------------------------------------------

def mask_list(mask: int) -> list[int]:
    return list(bits(mask))


def prop_to_json(p: AbstractProp) -> dict:
    return {
        "leaves": [{"id": i, "label": str(l)} for i, l in enumerate(p.labels)],
        "resolutions": p.resolution_lists(),
    }


def prop_from_json(data: dict, check: bool = True) -> AbstractProp:
    leaves = data["leaves"]
    if [leaf["id"] for leaf in leaves] != list(range(len(leaves))):
        raise ShapeError("leaf ids must be dense and ascending from 0")
    try:
        prop = AbstractProp.from_sets([leaf["label"] for leaf in leaves], data["resolutions"])
    except ValueError as exc:
        raise ShapeError(str(exc)) from exc
    if check and not is_abstract_prop(prop):
        raise ShapeError("resolution set is not double-orthogonal")
    return prop


# -- morphisms --------------------------------------------------------------

def morphism_to_json(m: Morphism) -> dict:
    return {
        "source": prop_to_json(m.source),
        "target": prop_to_json(m.target),
        "pairs": [list(p) for p in m.sorted_pairs()],
    }


def morphism_from_json(data: dict) -> Morphism:
    return Morphism.of(prop_from_json(data["source"]), prop_from_json(data["target"]), data["pairs"])


def witness_to_json(w: Witness | None):
    if w is None:
        return None
    out = {"kind": w.kind, "first": mask_list(w.first), "second": mask_list(w.second)}
    if w.edges is not None:
        out["edges"] = w.edges
    return out


def report_to_json(r: ConditionReport) -> dict:
    return {
        "strict": r.strict_R,
        "strict_edge": r.strict_Redge,
        "lax": r.lax_R,
        "lax_edge": r.lax_Redge,
        "witness": witness_to_json(r.witness),
    }


def factor_to_json(r: FactorResult) -> dict:
    out = {"tag": r.tag, "side": r.side, "leaf": r.leaf}
    for key in ("first", "second", "residual"):
        m = getattr(r, key)
        out[key] = None if m is None else morphism_to_json(m)
    return out


# -- boolean categories -----------------------------------------------------

def bu_to_json(f: BuMorphism) -> dict:
    return {
        "kind": "bu",
        "atoms": list(f.ctx.atoms),
        "source": prop_to_json(f.source),
        "target": prop_to_json(f.target),
        "body": morphism_to_json(f.body),
    }


def bu_from_json(data: dict) -> BuMorphism:
    ctx = make_context(data["atoms"])
    return BuMorphism(ctx, prop_from_json(data["source"]), prop_from_json(data["target"]),
                      morphism_from_json(data["body"]))


def ba_to_json(f: BaMorphism) -> dict:
    return {
        "kind": "ba",
        "axioms": list(f.axioms),
        "cuts": list(f.cuts),
        "source": prop_to_json(f.source),
        "target": prop_to_json(f.target),
        "body": morphism_to_json(f.body),
    }


def ba_from_json(data: dict) -> BaMorphism:
    return BaMorphism(prop_from_json(data["source"]), prop_from_json(data["target"]),
                      tuple(data["axioms"]), tuple(data["cuts"]), morphism_from_json(data["body"]))


def _side(v, n):
    return ("src", v) if v < n else ("tgt", v - n)


def linking_to_json(f: Linking) -> dict:
    n = f.source.n
    edges = []
    for u, v in f.sorted_edges():
        su, lu = _side(u, n)
        sv, lv = _side(v, n)
        edges.append({"side_u": su, "u": lu, "side_v": sv, "v": lv})
    return {"source": prop_to_json(f.source), "target": prop_to_json(f.target), "edges": edges}


def linking_from_json(data: dict) -> Linking:
    source, target = prop_from_json(data["source"]), prop_from_json(data["target"])

    def vertex(side, i):
        if side == "src":
            return i
        if side == "tgt":
            return source.n + i
        raise ShapeError(f"unknown edge side {side!r}")

    edges = [(vertex(e["side_u"], e["u"]), vertex(e["side_v"], e["v"])) for e in data["edges"]]
    return Linking.of(source, target, edges)


def object_from_json(data: dict):
    """Decode whichever object ``data`` encodes, going by its keys."""
    kind = data.get("kind")
    if kind == "bu":
        return bu_from_json(data)
    if kind == "ba":
        return ba_from_json(data)
    if "edges" in data:
        return linking_from_json(data)
    if "pairs" in data:
        return morphism_from_json(data)
    if "leaves" in data:
        return prop_from_json(data)
    if "op" in data:
        return formula_from_json(data)
    raise ShapeError("unrecognised JSON object")


def to_json(obj) -> dict:
    for cls, enc in _ENCODERS:
        if isinstance(obj, cls):
            return enc(obj)
    raise TypeError(f"cannot encode {type(obj).__name__}")


_ENCODERS = [
    (AbstractProp, prop_to_json),
    (Morphism, morphism_to_json),
    (Linking, linking_to_json),
    (BuMorphism, bu_to_json),
    (BaMorphism, ba_to_json),
    (ConditionReport, report_to_json),
    (FactorResult, factor_to_json),
    ((fm.Lit, fm.Const, fm.And, fm.Or), formula_to_json),
]


# -- DOT --------------------------------------------------------------------

def _sets_label(title, sets):
    body = " ".join("{" + ",".join(map(str, mask_list(s))) + "}" for s in sorted(sets))
    return f"{title}: {body or '(none)'}"


def _leaf_nodes(prefix, p, rank):
    lines = [f"  {{ rank={rank};"]
    for i, l in enumerate(p.labels):
        lines.append(f'    {prefix}{i} [label="{l}"];')
    lines.append("  }")
    return lines


def to_dot(obj) -> str:
    """DOT text: source leaves on top, target leaves below.

    Target resolutions and source coresolutions are listed in the graph
    label, the same regions drawn around leaves in proof-net pictures.
    """
    if isinstance(obj, (BuMorphism, BaMorphism)):
        obj = obj.body
    if isinstance(obj, AbstractProp):
        lines = ["graph prop {", "  node [shape=plaintext];"]
        lines += _leaf_nodes("x", obj, "same")
        lines.append(f'  label="{_sets_label("resolutions", obj.resolutions)}";')
        lines.append("}")
        return "\n".join(lines) + "\n"
    if isinstance(obj, Morphism):
        src, tgt, edges = obj.source, obj.target, [(f"s{x}", f"t{y}") for x, y in obj.sorted_pairs()]
    elif isinstance(obj, Linking):
        src, tgt, n = obj.source, obj.target, obj.source.n
        name = lambda v: f"s{v}" if v < n else f"t{v - n}"
        edges = [(name(u), name(v)) for u, v in obj.sorted_edges()]
    else:
        raise TypeError(f"cannot draw {type(obj).__name__}")
    lines = ["graph proof {", "  rankdir=TB;", "  node [shape=plaintext];"]
    lines += _leaf_nodes("s", src, "min")
    lines += _leaf_nodes("t", tgt, "max")
    lines += [f"  {u} -- {v};" for u, v in edges]
    label = _sets_label("source coresolutions", src.coresolutions) + "\\n" + _sets_label(
        "target resolutions", tgt.resolutions)
    lines.append(f'  label="{label}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
