"""Acceptance gate: twelve exact criteria, one pass/fail line each.

Every criterion either passes exactly or fails the suite; there are no
tolerances anywhere. Oracles (second Smith normal form, rational
elimination, union-find, graph formulas) live in oracles.py and share no
code with the library.
"""

import json
import random

from chaintop import (BlockDAG, CarrierMap, FinToposet, chain_complex,
                      check_acyclic_carrier, closure, constant_sheaf,
                      barycentric_carrier, cohomology, euler_characteristic,
                      face_layers_coalgebra, fold, fork_report, homology,
                      hylo_build, identity_carrier, incidence_decomposition,
                      incidence_product, induced_chain_map,
                      induced_map_on_homology, materialize, meta_build,
                      order_complex, poincare_check, protocol_manifold,
                      sheaf_cochain_complex, sheaf_cohomology,
                      simplex_accumulator, solve_chain_homotopy, sphere,
                      standard_simplex, subdivision_coalgebra,
                      verify_chain_homotopy, VertexMap)
from chaintop.builtin import (chain_dag, diamond_dag, diamond_poset,
                              projective_plane6, torus7, two_tip_tree)
from chaintop.cli import run
from chaintop.exact import Matrix, det

from conftest import (random_complex, random_dag, random_matrix_rows,
                      random_poset, random_stream)
from oracles import betti_from_boundaries, component_count, snf_divisors

from fractions import Fraction
from importlib import resources


def _report(criterion, ok):
    print(f"ACCEPTANCE {criterion}: {'PASS' if ok else 'FAIL'}")
    assert ok, f"acceptance criterion {criterion} failed"


def test_criterion_01_chain_complex_law():
    """500 randomized complexes: D_k * D_{k+1} = 0 exactly in every degree."""
    rng = random.Random(101)
    ok = True
    for _ in range(500):
        cc = chain_complex(random_complex(rng, max_vertices=12, max_dim=4))
        for k in range(1, cc.top_degree + 1):
            ok = ok and (cc.boundary(k) * cc.boundary(k + 1)).is_zero()
    _report("01 chain-complex law", ok)


def test_criterion_02_known_space_homology():
    """Known spaces, cross-checked against an independent elimination."""
    cases = [
        (sphere(1), (1, 1), {}),
        (sphere(2), (1, 0, 1), {}),
        (standard_simplex(1), (1, 0), {}),
        (standard_simplex(2), (1, 0, 0), {}),
        (standard_simplex(3), (1, 0, 0, 0), {}),
        (torus7(), (1, 2, 1), {}),
        (projective_plane6(), (1, 0, 0), {1: [2]}),
    ]
    ok = True
    for c, want_betti, want_torsion in cases:
        cc = chain_complex(c)
        profile = homology(cc)
        ok = ok and profile.betti == want_betti
        for k in range(cc.top_degree + 1):
            ok = ok and list(profile.torsion[k]) == want_torsion.get(k, [])
        # oracle 1: rational elimination for Betti numbers
        bnds = [cc.boundary(k).to_lists()
                for k in range(1, cc.top_degree + 1)]
        ok = ok and list(profile.betti) == betti_from_boundaries(cc.dims, bnds)
        # oracle 2: independent integer SNF for torsion
        for k in range(cc.top_degree):
            oracle = [d for d in snf_divisors(cc.boundary(k + 1).to_lists())
                      if d > 1]
            ok = ok and list(profile.torsion[k]) == oracle
    _report("02 known-space homology", ok)


def test_criterion_03_euler_poincare():
    """Alternating simplex counts equal alternating Betti numbers."""
    rng = random.Random(103)
    complexes = [random_complex(rng) for _ in range(120)]
    complexes += [sphere(q) for q in range(3)]
    complexes += [standard_simplex(q) for q in range(5)]
    complexes += [torus7(), projective_plane6()]
    ok = True
    for c in complexes:
        betti = homology(chain_complex(c)).betti
        ok = ok and euler_characteristic(c) \
            == sum((-1) ** k * b for k, b in enumerate(betti))
    _report("03 Euler-Poincare", ok)


def test_criterion_04_carrier_acyclicity():
    """Stock carriers are acyclic; a broken one is flagged."""
    ok = True
    domains = [standard_simplex(q) for q in range(4)] \
        + [sphere(q) for q in range(3)]
    for c in domains:
        ok = ok and check_acyclic_carrier(identity_carrier(c)).acyclic
        ok = ok and check_acyclic_carrier(barycentric_carrier(c)).acyclic
    broken = CarrierMap(domain=closure([(0,)]),
                        assignment={(0,): sphere(1)})
    report = check_acyclic_carrier(broken)
    ok = ok and not report.acyclic and report.violations[0][0] == (0,)
    _report("04 carrier acyclicity", ok)


def test_criterion_05_homotopy_solver():
    """Rotation is homotopic to the identity on the circle; reflection
    is not; induced H_1 matrices are (+1) and (-1)."""
    circle = sphere(1)

    def vm(mapping):
        return VertexMap(source=circle, target=circle, mapping=mapping)

    identity = induced_chain_map(vm({0: 0, 1: 1, 2: 2}))
    rotation = induced_chain_map(vm({0: 1, 1: 2, 2: 0}))
    reflection = induced_chain_map(vm({0: 0, 1: 2, 2: 1}))
    witness = solve_chain_homotopy(identity, rotation)
    ok = witness is not None \
        and verify_chain_homotopy(identity, rotation, witness)
    ok = ok and solve_chain_homotopy(identity, reflection) is None
    ok = ok and induced_map_on_homology(rotation)[1].to_lists() == [[1]]
    ok = ok and induced_map_on_homology(reflection)[1].to_lists() == [[-1]]
    _report("05 homotopy solver", ok)


def test_criterion_06_sheaf_oracle():
    """Constant-sheaf cohomology equals order-complex cohomology on 100
    random posets of at most 12 elements."""
    rng = random.Random(107)
    ok = True
    for _ in range(100):
        p = random_poset(rng, max_elements=12)
        dims = tuple(sheaf_cohomology(constant_sheaf(p)))
        betti = cohomology(chain_complex(order_complex(p))).betti
        ok = ok and dims == tuple(betti)
    _report("06 sheaf oracle", ok)


def test_criterion_07_incidence_grading():
    """Grade dimensions of known posets; products add grades."""
    chain3 = FinToposet.from_covers("abc", [("a", "b"), ("b", "c")])
    ok = incidence_decomposition(chain3).grades == (3, 2, 1)
    ok = ok and incidence_decomposition(diamond_poset()).grades == (4, 4, 1)
    rng = random.Random(109)
    for _ in range(50):
        p = random_poset(rng)
        prof = incidence_decomposition(p)
        grade_of = {iv: g for g, level in enumerate(prof.basis)
                    for iv in level}
        nonzero = [g for g, d in enumerate(prof.grades) if d]
        i, j = rng.choice(nonzero), rng.choice(nonzero)
        u = {rng.choice(prof.basis[i]): Fraction(rng.randint(1, 5))}
        v = {rng.choice(prof.basis[j]): Fraction(rng.randint(1, 5))}
        for interval in incidence_product(p, u, v):
            ok = ok and grade_of[interval] == i + j
    _report("07 incidence grading", ok)


def test_criterion_08_manifold_additivity():
    """Cohomology of a direct sum is the sum of summand cohomologies."""
    rng = random.Random(113)
    ok = True
    for _ in range(15):
        p = random_poset(rng, max_elements=8)
        ident = {x: x for x in p.elements}
        sheaves = [constant_sheaf(p, dim=rng.randint(1, 3))
                   for _ in range(rng.randint(1, 4))]
        total = protocol_manifold([(ident, s) for s in sheaves], p)
        per_summand = [sheaf_cohomology(s) for s in sheaves]
        want = tuple(sum(d[k] for d in per_summand)
                     for k in range(len(per_summand[0])))
        ok = ok and tuple(total.cohomology()) == want
    _report("08 manifold additivity", ok)


def test_criterion_09_recursion_fusion():
    """hylo_build equals materialize-then-fold bit-exactly on all shipped
    coalgebras; meta_build equals the two-phase pipeline on 100 random
    block streams."""
    ok = True
    alg = simplex_accumulator()
    co = face_layers_coalgebra()
    for q in range(5):
        ok = ok and hylo_build(q, co, alg) == fold(alg, materialize(co, q))
    co = subdivision_coalgebra()
    seeds = [(closure([(0, 1)]), k) for k in range(3)]
    seeds += [(sphere(1), 1), (standard_simplex(2), 1)]
    for seed in seeds:
        ok = ok and hylo_build(seed, co, alg) \
            == fold(alg, materialize(co, seed))
    rng = random.Random(127)
    for _ in range(100):
        stream = random_stream(rng, max_blocks=25)
        covers = [(p, b) for b, ps in stream for p in ps]
        poset = FinToposet.from_covers([b for b, _ in stream], covers)
        expected = sheaf_cochain_complex(constant_sheaf(poset))
        ok = ok and meta_build(iter(stream)) == expected
    _report("09 recursion fusion", ok)


def test_criterion_10_poincare_verdicts():
    """Duality verdicts on the five reference complexes."""
    ok = poincare_check(sphere(1)).verdict
    ok = ok and poincare_check(sphere(2)).verdict
    ok = ok and poincare_check(torus7()).verdict
    triangle = poincare_check(standard_simplex(2))
    ok = ok and not triangle.verdict and not triangle.dual_ok \
        and not triangle.pseudomanifold_ok
    rp2 = poincare_check(projective_plane6())
    ok = ok and not rp2.verdict and not rp2.orientable
    _report("10 Poincare verdicts", ok)


def test_criterion_11_fork_corollary():
    """Reference DAGs plus the graph formula on 200 random DAGs."""
    rep = fork_report(chain_dag(5))
    ok = (rep.tips, rep.cycle_rank) == (1, 0)
    rep = fork_report(diamond_dag())
    ok = ok and rep.cycle_rank == 1 and rep.tips == 1
    rep = fork_report(two_tip_tree())
    ok = ok and (rep.tips, rep.cycle_rank) == (2, 0)
    rng = random.Random(131)
    for _ in range(200):
        d = random_dag(rng, max_blocks=30)
        rep = fork_report(d)  # internally cross-checks betti_1
        comps = component_count(d.blocks, d.edges())
        ok = ok and rep.components == comps
        ok = ok and rep.cycle_rank == len(d.edges()) - len(d.blocks) + comps
    _report("11 fork corollary", ok)


def test_criterion_12_cli_determinism(capsys, tmp_path):
    """Byte-identical reports across 3 runs of every fixture command,
    plus the full exit-code matrix."""

    def fixture(name):
        return str(resources.files("chaintop.fixtures") / name)

    commands = [
        ["homology", "--input", fixture("sphere1.json")],
        ["homology", "--input", fixture("sphere2.json")],
        ["homology", "--input", fixture("simplex2.json")],
        ["homology", "--input", fixture("torus7.json")],
        ["homology", "--input", fixture("rp2_6.json")],
        ["homology", "--input", fixture("torus7.json"), "--ring", "Q"],
        ["homology", "--input", fixture("sphere1.json"), "--reduced"],
        ["cohomology", "--input", fixture("torus7.json")],
        ["acyclic", "--input", fixture("sphere2.json"), "--k", "1"],
        ["carrier-check", "--input", fixture("simplex2.json")],
        ["carrier-check", "--input", fixture("sphere1.json"),
         "--carrier", "identity"],
        ["chain-map-verify", "--input", fixture("sphere1_identity_map.json")],
        ["homotopy-solve", "--input", fixture("sphere1_rotation.json")],
        ["homotopy-solve", "--input", fixture("sphere1_reflection.json")],
        ["fork-report", "--input", fixture("chain5.json")],
        ["fork-report", "--input", fixture("diamond.json")],
        ["fork-report", "--input", fixture("two_tip.json")],
        ["order-complex", "--input", fixture("diamond.json")],
        ["order-complex", "--input", fixture("sorkin_circle.json")],
        ["incidence", "--input", fixture("sorkin_circle.json")],
        ["sheaf-cohomology", "--input", fixture("sorkin_sheaf.json")],
        ["tetrad", "--input", fixture("sorkin_circle.json")],
        ["manifold", "--input", fixture("manifold_sorkin.json")],
        ["hylo-build", "--input", fixture("simplex2.json"), "--rounds", "1"],
        ["duality-check", "--input", fixture("torus7.json")],
        ["protocol-check", "--input", fixture("protocol_spheres.json")],
    ]
    ok = True
    for argv in commands:
        outputs = []
        for _ in range(3):
            code = run(argv)
            captured = capsys.readouterr()
            ok = ok and code == 0
            outputs.append(captured.out)
            json.loads(captured.out)  # every report is valid JSON
        ok = ok and outputs[0] == outputs[1] == outputs[2]

    # exit-code matrix
    bad_json = tmp_path / "bad.json"
    bad_json.write_text("{ not json")
    cyclic = tmp_path / "cyclic.json"
    cyclic.write_text(json.dumps(
        {"blocks": [{"id": "a", "parents": ["b"]},
                    {"id": "b", "parents": ["a"]}]}))
    unknown_parent = tmp_path / "unknown.json"
    unknown_parent.write_text(json.dumps(
        {"blocks": [{"id": "a", "parents": ["ghost"]}]}))
    matrix = [
        (["homology", "--input", fixture("sphere1.json")], 0),
        (["homology", "--input", str(bad_json)], 2),
        (["homology", "--input", str(tmp_path / "missing.json")], 2),
        (["fork-report", "--input", str(unknown_parent)], 2),
        (["fork-report", "--input", str(cyclic)], 1),
        (["hylo-build", "--input", fixture("simplex2.json"),
          "--rounds", "3", "--depth", "1"], 1),
    ]
    for argv, want in matrix:
        code = run(argv)
        capsys.readouterr()
        ok = ok and code == want
    _report("12 CLI determinism", ok)
