import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chaintop import (ChainComplexRep, InvariantViolation, SimplicialComplex,
                      boundary_matrix, chain_complex, closure, embed_vertex,
                      face, make_simplex, sphere, standard_simplex)
from chaintop.exact import Matrix

from conftest import random_complex


class TestSimplexBasics:
    def test_make_simplex_normalizes(self):
        assert make_simplex([0, 2, 5]) == (0, 2, 5)

    def test_make_simplex_rejects_empty(self):
        with pytest.raises(ValueError):
            make_simplex([])

    def test_make_simplex_rejects_unsorted(self):
        with pytest.raises(ValueError):
            make_simplex([2, 1])

    def test_make_simplex_rejects_negative(self):
        with pytest.raises(ValueError):
            make_simplex([-1, 0])

    def test_face_deletes_first_vertex(self):
        assert face((0, 1, 2), 0) == (1, 2)

    def test_face_deletes_middle_vertex(self):
        assert face((0, 1, 2), 1) == (0, 2)

    def test_face_of_vertex_is_empty_simplex(self):
        assert face((5,), 0) == ()

    def test_face_index_out_of_range(self):
        with pytest.raises(ValueError):
            face((0, 1), 2)


class TestEmbedVertex:
    def test_unit_vector(self):
        assert embed_vertex(2, 1) == (0, 1, 0)

    def test_dimension_zero(self):
        assert embed_vertex(0, 0) == (1,)

    def test_last_coordinate(self):
        assert embed_vertex(3, 3) == (0, 0, 0, 1)

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            embed_vertex(2, 3)
        with pytest.raises(ValueError):
            embed_vertex(-1, 0)


class TestClosure:
    def test_triangle_closure_has_seven_simplices(self):
        assert len(closure([(0, 1, 2)])) == 7

    def test_empty_closure(self):
        c = closure([])
        assert len(c) == 0 and c.dimension == -1

    def test_circle_from_three_edges(self):
        c = closure([(0, 1), (1, 2), (0, 2)])
        assert c.dimension == 1 and len(c) == 6

    def test_closure_is_idempotent(self):
        gens = [(0, 1, 3), (1, 2), (4,)]
        once = closure(gens)
        assert closure(once.simplices) == once

    def test_non_closed_set_rejected(self):
        with pytest.raises(InvariantViolation):
            SimplicialComplex(frozenset({(0, 1)}))  # missing the vertices


class TestStandardComplexes:
    def test_standard_simplex_counts(self):
        assert len(standard_simplex(0)) == 1
        assert len(standard_simplex(2)) == 7
        assert len(standard_simplex(3)) == 15

    def test_sphere_one_is_triangle_boundary(self):
        assert sphere(1).counts() == (3, 3)

    def test_sphere_zero_is_two_points(self):
        c = sphere(0)
        assert c.counts() == (2,) and c.dimension == 0

    def test_sphere_two_counts(self):
        assert sphere(2).counts() == (4, 6, 4) and len(sphere(2)) == 14

    def test_negative_dimension_rejected(self):
        with pytest.raises(ValueError):
            standard_simplex(-1)
        with pytest.raises(ValueError):
            sphere(-1)


class TestBoundaryMatrix:
    def test_single_edge(self):
        m = boundary_matrix(closure([(0, 1)]), 1)
        assert m.to_lists() == [[-1], [1]]

    def test_circle_column_sums_vanish(self):
        m = boundary_matrix(sphere(1), 1)
        assert m.shape == (3, 3)
        for j in range(3):
            assert sum(m.column(j)) == 0

    def test_triangle_top_boundary(self):
        # basis of edges: (0,1), (0,2), (1,2)
        m = boundary_matrix(standard_simplex(2), 2)
        assert m.to_lists() == [[1], [-1], [1]]

    def test_degree_zero_maps_to_trivial_group(self):
        m = boundary_matrix(sphere(1), 0)
        assert m.shape == (0, 3)

    def test_degree_out_of_range(self):
        with pytest.raises(ValueError):
            boundary_matrix(sphere(1), 2)


class TestChainComplex:
    def test_triangle_dims_and_product(self):
        cc = chain_complex(standard_simplex(2))
        assert cc.dims == (3, 3, 1)
        assert (cc.boundary(1) * cc.boundary(2)).is_zero()

    def test_circle_dims(self):
        assert chain_complex(sphere(1)).dims == (3, 3)

    def test_single_vertex(self):
        cc = chain_complex(closure([(0,)]))
        assert cc.dims == (1,) and cc.boundaries == ()

    def test_empty_complex_rejected(self):
        with pytest.raises(ValueError):
            chain_complex(closure([]))

    def test_boundary_squared_zero_up_to_dim_six(self):
        for q in range(7):
            cc = chain_complex(standard_simplex(q))
            for k in range(1, q):
                assert (cc.boundary(k) * cc.boundary(k + 1)).is_zero()

    def test_out_of_range_boundaries_have_right_shapes(self):
        cc = chain_complex(sphere(1))
        assert cc.boundary(0).shape == (0, 3)
        assert cc.boundary(2).shape == (3, 0)
        assert cc.boundary(5).shape == (0, 0)

    def test_tampered_boundary_rejected(self):
        cc = chain_complex(standard_simplex(2))
        bad = Matrix.from_rows([[1], [0], [1]], 1)  # breaks D1*D2 = 0
        with pytest.raises(InvariantViolation):
            ChainComplexRep(dims=cc.dims, boundaries=(cc.boundary(1), bad),
                            basis=cc.basis)

    def test_shape_mismatch_rejected(self):
        cc = chain_complex(standard_simplex(2))
        with pytest.raises(InvariantViolation):
            ChainComplexRep(dims=(3, 2, 1), boundaries=cc.boundaries,
                            basis=cc.basis)


class TestDeterminism:
    def test_generator_order_does_not_matter(self):
        gens = [(0, 1, 2), (2, 3), (1, 4)]
        a = chain_complex(closure(gens))
        b = chain_complex(closure(list(reversed(gens))))
        assert a == b

    def test_random_complexes_build_identically(self):
        rng = random.Random(7)
        for _ in range(25):
            c = random_complex(rng)
            assert chain_complex(c) == chain_complex(closure(c.simplices))


@given(st.lists(st.lists(st.integers(min_value=0, max_value=8),
                         min_size=1, max_size=4, unique=True),
                min_size=1, max_size=5))
@settings(max_examples=60, deadline=None)
def test_closure_is_face_closed_property(gens):
    c = closure([tuple(sorted(g)) for g in gens])
    # __post_init__ would have raised if a face were missing; also check
    # that every generator made it in
    for g in gens:
        assert tuple(sorted(g)) in c
