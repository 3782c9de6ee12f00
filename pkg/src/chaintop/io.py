"""File schemas for the CLI: complexes, DAGs, posets, sheaves, vertex maps.

All formats are UTF-8 JSON. Vertex and block labels may be strings or
integers in the files; they are mapped to dense integer ids internally and
the label table is echoed back in reports. Rational matrix entries are
integers or "p/q" strings; all output is exact.
"""

import json
from fractions import Fraction

from .errors import ParseError, ValidationError
from .exact import Matrix
from .posets import FinToposet
from .protocol import BlockDAG
from .sheaves import CellularSheaf
from .simplicial import SimplicialComplex, closure


def load_json(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise ParseError(f"no such file: {path}")
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON (line {e.lineno}, column {e.colno}): "
                         f"{e.msg}", where=path)


def _expect(cond, message, where):
    if not cond:
        raise ParseError(message, where=where)


def _label_key(label):
    # integers sort before strings; within a kind, natural order
    return (0, label, "") if isinstance(label, int) else (1, 0, str(label))


def _label_table(labels):
    """Dense ids for a collection of labels, sorted deterministically."""
    uniq = sorted(set(labels), key=_label_key)
    return uniq, {lab: i for i, lab in enumerate(uniq)}


# ---------------------------------------------------------------------------
# complexes: {"simplices": [[label, ...], ...]}  (maximal faces)
# ---------------------------------------------------------------------------

def complex_from_dict(doc, where="<complex>"):
    _expect(isinstance(doc, dict), "document must be an object", where)
    simplices = doc.get("simplices")
    _expect(isinstance(simplices, list), "'simplices' must be a list", where)
    labels = []
    for i, s in enumerate(simplices):
        _expect(isinstance(s, list) and s,
                f"simplices[{i}] must be a nonempty list", where)
        _expect(all(isinstance(v, (str, int)) and not isinstance(v, bool)
                    for v in s),
                f"simplices[{i}] labels must be strings or integers", where)
        _expect(len(set(s)) == len(s),
                f"simplices[{i}] has duplicate vertices", where)
        labels.extend(s)
    table, ids = _label_table(labels)
    gens = [tuple(sorted(ids[v] for v in s)) for s in simplices]
    return closure(gens), table


def parse_complex(path):
    return complex_from_dict(load_json(path), where=path)


def complex_to_dict(c: SimplicialComplex, labels=None):
    if labels is None:
        # vertex ids label themselves (works for non-dense id sets too)
        labels = {v: v for v in c.vertices}
    return {"simplices": [[labels[v] for v in s]
                          for s in c.maximal_simplices()]}


# ---------------------------------------------------------------------------
# DAGs: {"blocks": [{"id": label, "parents": [label, ...]}, ...]}
# ---------------------------------------------------------------------------

def dag_from_dict(doc, where="<dag>"):
    _expect(isinstance(doc, dict), "document must be an object", where)
    blocks = doc.get("blocks")
    _expect(isinstance(blocks, list), "'blocks' must be a list", where)
    ids = []
    parents = {}
    for i, b in enumerate(blocks):
        _expect(isinstance(b, dict) and "id" in b,
                f"blocks[{i}] must be an object with an 'id'", where)
        bid = b["id"]
        _expect(isinstance(bid, (str, int)) and not isinstance(bid, bool),
                f"blocks[{i}].id must be a string or integer", where)
        _expect(bid not in parents, f"duplicate block id {bid!r}", where)
        ps = b.get("parents", [])
        _expect(isinstance(ps, list), f"blocks[{i}].parents must be a list",
                where)
        ids.append(bid)
        parents[bid] = ps
    known = set(ids)
    for bid, ps in parents.items():
        for p in ps:
            _expect(p in known,
                    f"block {bid!r} references unknown parent {p!r}", where)
    # BlockDAG works on the labels directly; the table still goes in reports
    table, _ = _label_table(ids)
    return BlockDAG.build(ids, {b: set(ps) for b, ps in parents.items()}), table


def parse_dag(path):
    return dag_from_dict(load_json(path), where=path)


def dag_to_dict(d: BlockDAG):
    return {"blocks": [{"id": b, "parents": sorted(d.parents[b],
                                                   key=_label_key)}
                       for b in d.blocks]}


# ---------------------------------------------------------------------------
# posets: {"elements": [label, ...], "covers": [[lo, hi], ...]}
# ---------------------------------------------------------------------------

def poset_from_dict(doc, where="<poset>"):
    _expect(isinstance(doc, dict), "document must be an object", where)
    elements = doc.get("elements")
    covers = doc.get("covers", [])
    _expect(isinstance(elements, list) and elements,
            "'elements' must be a nonempty list", where)
    _expect(isinstance(covers, list), "'covers' must be a list", where)
    for i, c in enumerate(covers):
        _expect(isinstance(c, list) and len(c) == 2,
                f"covers[{i}] must be a [lo, hi] pair", where)
    try:
        return FinToposet.from_covers(elements, [tuple(c) for c in covers])
    except ValidationError as e:
        raise ParseError(str(e), where=where)


def parse_poset(path):
    return poset_from_dict(load_json(path), where=path)


def poset_to_dict(p: FinToposet):
    return {"elements": list(p.elements),
            "covers": sorted([list(c) for c in p.covers])}


# ---------------------------------------------------------------------------
# rationals and matrices
# ---------------------------------------------------------------------------

def parse_scalar(v, where):
    if isinstance(v, bool):
        raise ParseError(f"boolean is not a number: {v!r}", where=where)
    if isinstance(v, int):
        return v
    if isinstance(v, str):
        try:
            return Fraction(v)
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"not a rational: {v!r}", where=where)
    raise ParseError(f"matrix entries must be integers or 'p/q' strings, "
                     f"got {v!r}", where=where)


def format_scalar(v):
    if isinstance(v, Fraction):
        return int(v) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return int(v)


def matrix_from_lists(rows, expected_shape, where):
    _expect(isinstance(rows, list), "matrix must be a list of rows", where)
    r, c = expected_shape
    _expect(len(rows) == r, f"matrix has {len(rows)} rows, expected {r}", where)
    data = []
    for row in rows:
        _expect(isinstance(row, list) and len(row) == c,
                f"matrix row has {len(row) if isinstance(row, list) else '?'} "
                f"entries, expected {c}", where)
        data.append(tuple(parse_scalar(v, where) for v in row))
    return Matrix(r, c, tuple(data))


def matrix_to_lists(m: Matrix):
    return [[format_scalar(v) for v in row] for row in m.data]


# ---------------------------------------------------------------------------
# sheaves: {"poset": {...}, "stalks": {label: dim},
#           "restrictions": [{"cover": [lo, hi], "matrix": [[...], ...]}]}
# ---------------------------------------------------------------------------

def sheaf_from_dict(doc, where="<sheaf>"):
    _expect(isinstance(doc, dict), "document must be an object", where)
    _expect("poset" in doc, "'poset' is required", where)
    p = poset_from_dict(doc["poset"], where=f"{where}#poset")
    stalks_doc = doc.get("stalks", {})
    _expect(isinstance(stalks_doc, dict), "'stalks' must be an object", where)
    stalks = {}
    for x in p.elements:
        key = x if isinstance(x, str) else str(x)
        d = stalks_doc.get(key, stalks_doc.get(x, 1))
        _expect(isinstance(d, int) and not isinstance(d, bool) and d >= 0,
                f"stalk dimension of {x!r} must be a non-negative integer",
                where)
        stalks[x] = d
    restrictions = {}
    for i, entry in enumerate(doc.get("restrictions", [])):
        loc = f"{where}#restrictions[{i}]"
        _expect(isinstance(entry, dict) and "cover" in entry
                and "matrix" in entry,
                "restriction entries need 'cover' and 'matrix'", loc)
        cover = tuple(entry["cover"])
        _expect(cover in p.covers,
                f"{list(cover)} is not a cover of the poset", loc)
        lo, hi = cover
        restrictions[cover] = matrix_from_lists(
            entry["matrix"], (stalks[hi], stalks[lo]), loc)
    for cover in p.covers:
        lo, hi = cover
        if cover not in restrictions:
            # default: identity when dimensions agree, else a schema error
            _expect(stalks[lo] == stalks[hi],
                    f"cover {list(cover)} needs an explicit matrix "
                    f"(stalk dims differ)", where)
            restrictions[cover] = Matrix.identity(stalks[lo])
    return CellularSheaf(base=p, stalks=stalks,
                         restrictions=restrictions).validate()


def parse_sheaf(path):
    return sheaf_from_dict(load_json(path), where=path)


def sheaf_to_dict(s: CellularSheaf):
    return {
        "poset": poset_to_dict(s.base),
        "stalks": {str(x): s.stalks[x] for x in s.base.elements},
        "restrictions": [
            {"cover": list(c), "matrix": matrix_to_lists(s.restrictions[c])}
            for c in sorted(s.base.covers)],
    }


# ---------------------------------------------------------------------------
# vertex maps: {"source": <complex>, "target": <complex>,
#               "mapping": {label: label}}
# ---------------------------------------------------------------------------

def vertex_map_from_dict(doc, where="<map>"):
    from .chainmaps import VertexMap
    _expect(isinstance(doc, dict), "document must be an object", where)
    for key in ("source", "target", "mapping"):
        _expect(key in doc, f"'{key}' is required", where)
    src, src_labels = complex_from_dict(doc["source"], where=f"{where}#source")
    tgt, tgt_labels = complex_from_dict(doc["target"], where=f"{where}#target")
    src_ids = {lab: i for i, lab in enumerate(src_labels)}
    tgt_ids = {lab: i for i, lab in enumerate(tgt_labels)}
    mapping = {}
    for k, v in doc["mapping"].items():
        # JSON object keys are strings; match against the label table
        key = k if k in src_ids else (int(k) if k.lstrip("-").isdigit()
                                      and int(k) in src_ids else None)
        _expect(key is not None, f"mapping key {k!r} is not a source vertex",
                where)
        _expect(v in tgt_ids, f"mapping value {v!r} is not a target vertex",
                where)
        mapping[src_ids[key]] = tgt_ids[v]
    for lab, i in src_ids.items():
        _expect(i in mapping, f"source vertex {lab!r} has no image", where)
    return (VertexMap(source=src, target=tgt, mapping=mapping),
            src_labels, tgt_labels)


def parse_vertex_map(path):
    return vertex_map_from_dict(load_json(path), where=path)
