import random

import pytest

from chaintop import (ChainHomotopy, ChainMap, ValidationError, VertexMap,
                      build_protocol_topology, chain_complex, closure,
                      identity_chain_map, induced_chain_map,
                      induced_map_on_homology, solve_chain_homotopy, sphere,
                      standard_simplex, verify_chain_homotopy,
                      verify_chain_map)
from chaintop.builtin import torus7
from chaintop.exact import Matrix

from conftest import random_complex


def _vm(source, target, mapping):
    return VertexMap(source=source, target=target, mapping=mapping)


def circle_identity():
    return _vm(sphere(1), sphere(1), {0: 0, 1: 1, 2: 2})


def circle_rotation():
    return _vm(sphere(1), sphere(1), {0: 1, 1: 2, 2: 0})


def circle_reflection():
    return _vm(sphere(1), sphere(1), {0: 0, 1: 2, 2: 1})


class TestVertexMaps:
    def test_non_simplicial_map_rejected(self):
        # sends an edge of the circle across the missing diagonal
        square = closure([(0, 1), (1, 2), (2, 3), (0, 3)])
        vm = _vm(square, square, {0: 0, 1: 2, 2: 1, 3: 3})
        with pytest.raises(ValidationError, match="not simplicial"):
            vm.validate()

    def test_missing_vertex_image_rejected(self):
        vm = _vm(sphere(1), sphere(1), {0: 0, 1: 1})
        with pytest.raises(ValidationError, match="no image"):
            vm.validate()

    def test_composition(self):
        comp = circle_rotation().compose(circle_rotation())
        assert comp.mapping == {0: 2, 1: 0, 2: 1}


class TestInducedChainMap:
    def test_identity_gives_identity_matrices(self):
        f = induced_chain_map(circle_identity())
        for k, d in enumerate(f.source.dims):
            assert f.mat(k) == Matrix.identity(d)

    def test_constant_map_collapses_edges(self):
        point = closure([(0,)])
        f = induced_chain_map(_vm(sphere(1), point, {0: 0, 1: 0, 2: 0}))
        assert f.mat(1).is_zero()
        assert f.mat(0).to_lists() == [[1, 1, 1]]

    def test_rotation_is_signed_permutation(self):
        f = induced_chain_map(circle_rotation())
        assert verify_chain_map(f)
        for k in range(2):
            m = f.mat(k)
            for j in range(m.cols):
                col = m.column(j)
                assert sorted(abs(v) for v in col) == [0] * (m.rows - 1) + [1]

    def test_zero_chain_map_verifies(self):
        cc = chain_complex(sphere(1))
        zero = ChainMap(source=cc, target=cc,
                        mats=tuple(Matrix.zeros(d, d) for d in cc.dims))
        assert verify_chain_map(zero)

    def test_perturbed_map_fails(self):
        f = induced_chain_map(circle_identity())
        rows = f.mat(1).to_lists()
        rows[0][0] += 1
        bad = ChainMap(source=f.source, target=f.target,
                       mats=(f.mat(0), Matrix.from_rows(rows, 3)))
        assert not verify_chain_map(bad)

    def test_functoriality_on_random_pairs(self):
        rng = random.Random(47)
        for _ in range(25):
            a = random_complex(rng, max_vertices=6, max_dim=3)
            b = standard_simplex(rng.randint(1, 4))
            c = standard_simplex(rng.randint(1, 4))
            w = _vm(a, b, {v: rng.choice(b.vertices) for v in a.vertices})
            v = _vm(b, c, {x: rng.choice(c.vertices) for x in b.vertices})
            lhs = induced_chain_map(v.compose(w))
            rhs = induced_chain_map(v).compose(induced_chain_map(w))
            for k in range(lhs.degrees):
                assert lhs.mat(k) == rhs.mat(k)


class TestChainHomotopy:
    def test_equal_maps_with_zero_homotopy(self):
        f = induced_chain_map(circle_identity())
        zero = ChainHomotopy(source=f.source, target=f.target, mats=())
        assert verify_chain_homotopy(f, f, zero)

    def test_solver_returns_zero_for_equal_maps(self):
        f = induced_chain_map(circle_identity())
        witness = solve_chain_homotopy(f, f)
        assert witness is not None
        assert all(m.is_zero() for m in witness.mats)

    def test_rotation_is_homotopic_to_identity(self):
        f = induced_chain_map(circle_identity())
        g = induced_chain_map(circle_rotation())
        witness = solve_chain_homotopy(f, g)
        assert witness is not None
        assert verify_chain_homotopy(f, g, witness)

    def test_reflection_is_not_homotopic_to_identity(self):
        f = induced_chain_map(circle_identity())
        g = induced_chain_map(circle_reflection())
        assert solve_chain_homotopy(f, g) is None

    def test_homotopic_maps_agree_on_homology(self):
        f = induced_chain_map(circle_identity())
        g = induced_chain_map(circle_rotation())
        assert induced_map_on_homology(f) == induced_map_on_homology(g)

    def test_deterministic_witness(self):
        f = induced_chain_map(circle_identity())
        g = induced_chain_map(circle_rotation())
        assert solve_chain_homotopy(f, g) == solve_chain_homotopy(f, g)

    def test_mismatched_endpoints_rejected(self):
        f = induced_chain_map(circle_identity())
        g = identity_chain_map(standard_simplex(2))
        with pytest.raises(ValueError):
            solve_chain_homotopy(f, g)


class TestInducedHomology:
    def test_identity_induces_identities(self):
        mats = induced_map_on_homology(identity_chain_map(sphere(1)))
        assert [m.to_lists() for m in mats] == [[[1]], [[1]]]

    def test_constant_map_to_point(self):
        point = closure([(0,)])
        f = induced_chain_map(_vm(sphere(1), point, {0: 0, 1: 0, 2: 0}))
        mats = induced_map_on_homology(f)
        assert mats[0].to_lists() == [[1]]
        assert mats[1].shape == (0, 1)  # H_1 of a point is 0

    def test_rotation_preserves_orientation(self):
        mats = induced_map_on_homology(induced_chain_map(circle_rotation()))
        assert mats[1].to_lists() == [[1]]

    def test_reflection_reverses_orientation(self):
        mats = induced_map_on_homology(induced_chain_map(circle_reflection()))
        assert mats[1].to_lists() == [[-1]]

    def test_torus_identity(self):
        f = identity_chain_map(torus7())
        mats = induced_map_on_homology(f)
        assert mats[1] == Matrix.identity(2)
        assert mats[2] == Matrix.identity(1)


class TestProtocolTopology:
    def test_identity_linked_triangles_are_acyclic(self):
        stages = [standard_simplex(2)] * 3
        idmap = _vm(standard_simplex(2), standard_simplex(2),
                    {0: 0, 1: 1, 2: 2})
        t = build_protocol_topology(stages, [idmap, idmap])
        for i in range(3):
            assert t.acyclic_up_to(i) == 2

    def test_circle_stage_flagged(self):
        inclusion = _vm(sphere(1), standard_simplex(2), {0: 0, 1: 1, 2: 2})
        t = build_protocol_topology([sphere(1), standard_simplex(2)],
                                    [inclusion])
        assert t.acyclic_up_to(0) == 0   # the circle is not 1-acyclic
        assert t.acyclic_up_to(1) == 2

    def test_singleton_topology(self):
        t = build_protocol_topology([standard_simplex(2)], [])
        assert t.links == () and len(t.stage_profiles) == 1

    def test_wrong_link_count_rejected(self):
        with pytest.raises(ValueError):
            build_protocol_topology([sphere(1), sphere(1)], [])

    def test_disconnected_link_rejected(self):
        idmap = _vm(sphere(1), sphere(1), {0: 0, 1: 1, 2: 2})
        with pytest.raises(ValidationError):
            build_protocol_topology([sphere(1), standard_simplex(2)], [idmap])
