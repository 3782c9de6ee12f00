"""Batch CLI: parse complexes/DAGs/sheaves from JSON files, run one
analysis per invocation, and print a deterministic JSON report on stdout.

Exit codes: 0 success, 1 domain validation failure, 2 parse/IO failure.
Human diagnostics and wall time go to stderr; stdout stays byte-identical
across repeated runs on identical inputs. With --figures DIR the report
path also renders matplotlib figures (plus CSVs of the plotted numbers)
into DIR.
"""

import argparse
import hashlib
import json
import os
import sys
import time
from . import figures as figs
from .chainmaps import (VertexMap, build_protocol_topology,
                        induced_chain_map, induced_map_on_homology,
                        solve_chain_homotopy, verify_chain_map)
from .errors import (ChaintopError, ParseError, StreamOrderError,
                     TerminationError, ValidationError)
from .homology import cohomology, euler_characteristic, homology, is_k_acyclic
from .io import (complex_from_dict, load_json, matrix_to_lists, parse_complex,
                 parse_dag, parse_poset,
                 parse_sheaf, parse_vertex_map, poset_from_dict,
                 sheaf_from_dict)
from .posets import incidence_decomposition, order_complex
from .protocol import (barycentric_carrier, check_acyclic_carrier,
                       dag_order_complex, fork_report, identity_carrier)
from .recursion import (DEFAULT_DEPTH_BOUND, hylo_build, is_poincare_protocol,
                        poincare_check, simplex_accumulator,
                        subdivision_coalgebra)
from .sheaves import build_tetrad, protocol_manifold, sheaf_cohomology
from .simplicial import chain_complex

DEPTH_ENV = "PH_DEPTH_BOUND"


def _sha256(path):
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def _profile_dict(profile):
    return {"betti": list(profile.betti),
            "torsion": [list(t) for t in profile.torsion]}


def _depth_bound(args):
    if getattr(args, "depth", None) is not None:
        return args.depth
    env = os.environ.get(DEPTH_ENV)
    return int(env) if env else DEFAULT_DEPTH_BOUND


def _report(args, results, labels=None, options=None):
    report = {
        "command": args.command,
        "inputs": {path: _sha256(path) for path in args._input_paths},
        "options": options or {},
        "results": results,
    }
    if labels:
        report["labels"] = labels
    return report


# ---------------------------------------------------------------------------
# subcommand handlers: each returns (results, labels, options, figure paths)
# ---------------------------------------------------------------------------

def cmd_homology(args):
    c, labels = parse_complex(args.input)
    cc = chain_complex(c)
    profile = homology(cc, reduced=args.reduced)
    results = {
        "dims": list(cc.dims),
        "euler_characteristic": euler_characteristic(c),
    }
    if args.ring == "Q":
        results["betti"] = list(profile.betti)
    else:
        results.update(_profile_dict(profile))
    options = {"reduced": bool(args.reduced), "ring": args.ring}
    rendered = []
    if args.figures:
        rendered = figs.betti_figure(profile.betti, args.figures,
                                     "homology", "Betti numbers")
    return results, {"vertices": list(map(str, labels))}, options, rendered


def cmd_cohomology(args):
    c, labels = parse_complex(args.input)
    profile = cohomology(chain_complex(c))
    rendered = []
    if args.figures:
        rendered = figs.betti_figure(profile.betti, args.figures,
                                     "cohomology", "cohomology ranks")
    return (_profile_dict(profile), {"vertices": list(map(str, labels))},
            {}, rendered)


def cmd_acyclic(args):
    c, labels = parse_complex(args.input)
    reduced = homology(chain_complex(c), reduced=True)
    results = {"k": args.k,
               "is_k_acyclic": is_k_acyclic(c, args.k),
               "reduced_profile": _profile_dict(reduced)}
    return results, {"vertices": list(map(str, labels))}, {"k": args.k}, []


def cmd_carrier_check(args):
    c, labels = parse_complex(args.input)
    carrier = (identity_carrier(c) if args.carrier == "identity"
               else barycentric_carrier(c))
    report = check_acyclic_carrier(carrier)
    results = {
        "carrier": args.carrier,
        "acyclic": report.acyclic,
        "violations": [
            {"simplex": list(s), "reduced_profile": _profile_dict(p)}
            for s, p in report.violations],
    }
    return results, {"vertices": list(map(str, labels))}, \
        {"carrier": args.carrier}, []


def cmd_chain_map_verify(args):
    vm, src_labels, tgt_labels = parse_vertex_map(args.input)
    f = induced_chain_map(vm)
    results = {
        "simplicial": True,
        "chain_map_ok": verify_chain_map(f),
        "induced_homology": [matrix_to_lists(m)
                             for m in induced_map_on_homology(f)],
    }
    labels = {"source_vertices": list(map(str, src_labels)),
              "target_vertices": list(map(str, tgt_labels))}
    return results, labels, {}, []


def cmd_homotopy_solve(args):
    doc = load_json(args.input)
    for key in ("source", "target", "f", "g"):
        if key not in doc:
            raise ParseError(f"'{key}' is required", where=args.input)
    f_vm, src_labels, tgt_labels = _vertex_map_parts(doc, "f", args.input)
    g_vm, _, _ = _vertex_map_parts(doc, "g", args.input)
    f = induced_chain_map(f_vm)
    g = induced_chain_map(g_vm)
    witness = solve_chain_homotopy(f, g)
    results = {"homotopic": witness is not None}
    if witness is not None:
        results["witness"] = [matrix_to_lists(m) for m in witness.mats]
    results["induced_homology_f"] = [matrix_to_lists(m)
                                     for m in induced_map_on_homology(f)]
    results["induced_homology_g"] = [matrix_to_lists(m)
                                     for m in induced_map_on_homology(g)]
    labels = {"source_vertices": list(map(str, src_labels)),
              "target_vertices": list(map(str, tgt_labels))}
    return results, labels, {}, []


def _vertex_map_parts(doc, key, where):
    from .io import vertex_map_from_dict
    sub = {"source": doc["source"], "target": doc["target"],
           "mapping": doc[key]}
    return vertex_map_from_dict(sub, where=f"{where}#{key}")


def cmd_fork_report(args):
    dag, labels = parse_dag(args.input)
    rep = fork_report(dag)
    results = {"tips": rep.tips, "components": rep.components,
               "cycle_rank": rep.cycle_rank,
               "genesis": sorted(map(str, dag.genesis()))}
    rendered = []
    if args.figures:
        rendered = figs.dag_figure(dag, args.figures, "fork_report",
                                   "block DAG")
    return results, {"blocks": list(map(str, labels))}, {}, rendered


def cmd_order_complex(args):
    doc = load_json(args.input)
    if isinstance(doc, dict) and "blocks" in doc:
        dag, labels = parse_dag(args.input)
        c = dag_order_complex(dag)
        table = list(map(str, dag.to_poset().elements))
        rendered = (figs.dag_figure(dag, args.figures, "order_complex",
                                    "block DAG") if args.figures else [])
    else:
        p = poset_from_dict(doc, where=args.input)
        c = order_complex(p)
        table = list(map(str, p.elements))
        rendered = []
    profile = homology(chain_complex(c))
    results = {
        "counts": list(c.counts()),
        "maximal_simplices": [list(s) for s in c.maximal_simplices()],
        **_profile_dict(profile),
    }
    if args.figures:
        rendered += figs.betti_figure(profile.betti, args.figures,
                                      "order_complex_betti", "Betti numbers")
    return results, {"elements": table}, {}, rendered


def cmd_incidence(args):
    p = parse_poset(args.input)
    prof = incidence_decomposition(p)
    results = {
        "grades": list(prof.grades),
        "basis": [[[str(x), str(y)] for x, y in level] for level in prof.basis],
    }
    rendered = []
    if args.figures:
        rendered = figs.grades_figure(prof.grades, args.figures, "incidence",
                                      "incidence grades")
    return results, {"elements": list(map(str, p.elements))}, {}, rendered


def cmd_sheaf_cohomology(args):
    s = parse_sheaf(args.input)
    dims = sheaf_cohomology(s)
    results = {"cohomology": list(dims),
               "stalks": {str(x): s.stalks[x] for x in s.base.elements}}
    rendered = []
    if args.figures:
        rendered = figs.betti_figure(dims, args.figures, "sheaf_cohomology",
                                     "sheaf cohomology")
    return results, {"elements": list(map(str, s.base.elements))}, {}, rendered


def cmd_tetrad(args):
    p = parse_poset(args.input)
    tetrad = build_tetrad(p)
    results = {
        "forms": list(tetrad.forms.grades),
        "derham_dims": list(tetrad.derham.dims),
        "derham_cohomology": list(tetrad.derham.cohomology_dims()),
    }
    rendered = []
    if args.figures:
        rendered = figs.betti_figure(tetrad.derham.cohomology_dims(),
                                     args.figures, "tetrad",
                                     "de Rham cohomology")
    return results, {"elements": list(map(str, p.elements))}, {}, rendered


def cmd_manifold(args):
    doc = load_json(args.input)
    if not isinstance(doc, dict) or "target" not in doc:
        raise ParseError("'target' poset is required", where=args.input)
    target = poset_from_dict(doc["target"], where=f"{args.input}#target")
    pairs = []
    for i, entry in enumerate(doc.get("summands", [])):
        loc = f"{args.input}#summands[{i}]"
        if not isinstance(entry, dict) or "sheaf" not in entry:
            raise ParseError("summands need a 'sheaf'", where=loc)
        sheaf = sheaf_from_dict(entry["sheaf"], where=loc)
        mapping_doc = entry.get("map")
        if mapping_doc is None:
            mapping = {x: x for x in sheaf.base.elements}
        else:
            mapping = {}
            lookup = {str(x): x for x in sheaf.base.elements}
            target_lookup = {str(x): x for x in target.elements}
            for k, v in mapping_doc.items():
                if k not in lookup:
                    raise ParseError(f"map key {k!r} not in summand base", loc)
                if str(v) not in target_lookup:
                    raise ParseError(f"map value {v!r} not in target", loc)
                mapping[lookup[k]] = target_lookup[str(v)]
        pairs.append((mapping, sheaf))
    manifold = protocol_manifold(pairs, target)
    dims = manifold.cohomology()
    results = {
        "summands": len(pairs),
        "total_stalks": {str(x): manifold.total.stalks[x]
                         for x in target.elements},
        "cohomology": list(dims),
    }
    rendered = []
    if args.figures:
        rendered = figs.betti_figure(dims, args.figures, "manifold",
                                     "protocol manifold cohomology")
    return results, {"elements": list(map(str, target.elements))}, {}, rendered


def cmd_hylo_build(args):
    c, labels = parse_complex(args.input)
    bound = _depth_bound(args)
    cc = hylo_build((c, args.rounds), subdivision_coalgebra(bound),
                    simplex_accumulator())
    profile = homology(cc)
    results = {"rounds": args.rounds, "dims": list(cc.dims),
               **_profile_dict(profile)}
    options = {"rounds": args.rounds, "depth_bound": bound}
    rendered = []
    if args.figures:
        rendered = figs.betti_figure(profile.betti, args.figures,
                                     "hylo_build", "Betti numbers")
    return results, {"vertices": list(map(str, labels))}, options, rendered


def cmd_duality_check(args):
    c, labels = parse_complex(args.input)
    rep = poincare_check(c)
    results = {
        "dimension": rep.dimension,
        "betti": list(rep.betti),
        "dual_ok": rep.dual_ok,
        "pseudomanifold_ok": rep.pseudomanifold_ok,
        "orientable": rep.orientable,
        "verdict": rep.verdict,
    }
    rendered = []
    if args.figures:
        rendered = figs.betti_figure(rep.betti, args.figures, "duality_check",
                                     "Betti numbers")
    return results, {"vertices": list(map(str, labels))}, {}, rendered


def cmd_protocol_check(args):
    doc = load_json(args.input)
    if not isinstance(doc, dict) or "stages" not in doc:
        raise ParseError("'stages' is required", where=args.input)
    stages = []
    stage_labels = []
    for i, stage_doc in enumerate(doc["stages"]):
        c, labels = complex_from_dict(stage_doc,
                                      where=f"{args.input}#stages[{i}]")
        stages.append(c)
        stage_labels.append(list(map(str, labels)))
    maps_doc = doc.get("maps", [])
    if len(maps_doc) != max(len(stages) - 1, 0):
        raise ParseError("need exactly one map per consecutive stage pair",
                         where=args.input)
    vertex_maps = []
    for i, mapping_doc in enumerate(maps_doc):
        src, tgt = stages[i], stages[i + 1]
        src_ids = {lab: j for j, lab in enumerate(stage_labels[i])}
        tgt_ids = {lab: j for j, lab in enumerate(stage_labels[i + 1])}
        mapping = {}
        for k, v in mapping_doc.items():
            if k not in src_ids or str(v) not in tgt_ids:
                raise ParseError(f"maps[{i}] has labels outside its stages",
                                 where=args.input)
            mapping[src_ids[k]] = tgt_ids[str(v)]
        vertex_maps.append(VertexMap(source=src, target=tgt, mapping=mapping))
    topology = build_protocol_topology(stages, vertex_maps)
    report = is_poincare_protocol(topology)
    results = {
        "verdict": report.verdict,
        "failing_stages": report.failing_stages(),
        "stages": [
            {"dimension": r.dimension, "betti": list(r.betti),
             "dual_ok": r.dual_ok, "pseudomanifold_ok": r.pseudomanifold_ok,
             "orientable": r.orientable, "verdict": r.verdict}
            for r in report.stage_reports],
        "link_signatures": [[list(shape) for shape in sig]
                            for sig in report.link_signatures],
        "stage_acyclicity": [topology.acyclic_up_to(i)
                             for i in range(len(stages))],
    }
    return results, {"stages": stage_labels}, {}, []


HANDLERS = {
    "homology": cmd_homology,
    "cohomology": cmd_cohomology,
    "acyclic": cmd_acyclic,
    "carrier-check": cmd_carrier_check,
    "chain-map-verify": cmd_chain_map_verify,
    "homotopy-solve": cmd_homotopy_solve,
    "fork-report": cmd_fork_report,
    "order-complex": cmd_order_complex,
    "incidence": cmd_incidence,
    "sheaf-cohomology": cmd_sheaf_cohomology,
    "tetrad": cmd_tetrad,
    "manifold": cmd_manifold,
    "hylo-build": cmd_hylo_build,
    "duality-check": cmd_duality_check,
    "protocol-check": cmd_protocol_check,
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="chaintop",
        description="Topological analysis of consensus protocols.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--input", required=True, help="input JSON file")
        p.add_argument("--figures", metavar="DIR",
                       help="also render figures and CSVs into DIR")
        return p

    add("homology", "Betti numbers and torsion of a complex") \
        .add_argument("--reduced", action="store_true")
    sub.choices["homology"].add_argument("--ring", choices=["Z", "Q"],
                                         default="Z")
    add("cohomology", "cohomology of a complex")
    add("acyclic", "reduced-homology acyclicity through degree k") \
        .add_argument("--k", type=int, required=True)
    add("carrier-check", "acyclic-carrier check of a stock round operator") \
        .add_argument("--carrier", choices=["identity", "barycentric"],
                      default="barycentric")
    add("chain-map-verify", "verify a vertex map induces a chain map")
    add("homotopy-solve", "search for a chain homotopy between two maps")
    add("fork-report", "tips, components, and cycle rank of a block DAG")
    add("order-complex", "order complex of a DAG or poset, with homology")
    add("incidence", "graded incidence-algebra decomposition of a poset")
    add("sheaf-cohomology", "cohomology of a cellular sheaf")
    add("tetrad", "differential tetrad of a poset")
    add("manifold", "protocol manifold from pushforward summands")
    p = add("hylo-build", "streaming subdivision build of a chain complex")
    p.add_argument("--rounds", type=int, default=1)
    p.add_argument("--depth", type=int, default=None,
                   help=f"depth bound (default {DEFAULT_DEPTH_BOUND}, or "
                        f"${DEPTH_ENV})")
    add("duality-check", "Poincaré duality report of a complex")
    add("protocol-check", "per-stage Poincaré report of a protocol topology")
    return parser


def run(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    args._input_paths = [args.input]
    started = time.monotonic()
    try:
        results, labels, options, rendered = HANDLERS[args.command](args)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return 2
    except (ValidationError, StreamOrderError, TerminationError,
            ValueError) as e:
        print(f"validation error: {e}", file=sys.stderr)
        return 1
    except ChaintopError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    report = _report(args, results, labels=labels, options=options)
    if rendered:
        report["figures"] = sorted(rendered)
    sys.stdout.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
    elapsed = time.monotonic() - started
    print(f"{args.command}: ok in {elapsed:.3f}s", file=sys.stderr)
    return 0


def main():
    raise SystemExit(run())


if __name__ == "__main__":
    main()
