import math

import numpy as np
import pytest
from hypothesis import given, settings

from graphmover.geometry import (CostParams, GeometricGraph, adjacency_lengths,
                                 hausdorff_vertices, perturb, translate,
                                 validate_graph)

from conftest import geometric_graphs


def test_cost_params_require_positive_coefficients():
    CostParams(4.5, 1.0)
    with pytest.raises(ValueError):
        CostParams(0.0, 1.0)
    with pytest.raises(ValueError):
        CostParams(1.0, -2.0)
    with pytest.raises(ValueError):
        CostParams(float("nan"), 1.0)


def test_graph_normalizes_edge_orientation_and_order():
    g = GeometricGraph.build([(0, 0), (1, 0), (0, 1)], [(2, 0), (1, 0)])
    assert g.edges == ((0, 1), (0, 2))
    assert g.dim == 2
    assert g.vertices[1] == (1.0, 0.0)


def test_graph_rejects_bad_vertices():
    with pytest.raises(ValueError):
        GeometricGraph(2, ((0.0, 0.0, 0.0),), ())
    with pytest.raises(ValueError):
        GeometricGraph(2, ((0.0, float("inf")),), ())
    with pytest.raises(ValueError):
        GeometricGraph(0, (), ())


def test_validate_planar_triangle_is_clean():
    g = GeometricGraph.build([(0, 0), (1, 0), (0, 1)], [(0, 1), (1, 2), (0, 2)])
    assert validate_graph(g, check_embedding=True) == []


def test_validate_reports_self_loop_duplicate_and_bad_index():
    g = GeometricGraph.build([(0, 0), (1, 0)], [(0, 0), (0, 1), (1, 0), (1, 5)])
    problems = validate_graph(g)
    assert any("self-loop" in p for p in problems)
    assert any("duplicate" in p for p in problems)
    assert any("out of range" in p for p in problems)


def test_validate_reports_interior_crossing_with_location():
    g = GeometricGraph.build([(0, 0), (2, 2), (0, 2), (2, 0)], [(0, 1), (2, 3)])
    problems = validate_graph(g, check_embedding=True)
    assert len(problems) == 1
    assert "interior crossing" in problems[0]
    assert "(1, 1)" in problems[0]
    # the same graph is clean without the embedding check
    assert validate_graph(g) == []


def test_validate_reports_endpoint_on_edge_interior():
    g = GeometricGraph.build([(0, 0), (2, 0), (1, 0), (1, 1)], [(0, 1), (2, 3)])
    problems = validate_graph(g, check_embedding=True)
    assert len(problems) == 1
    assert "interior" in problems[0]


def test_adjacency_lengths_zero_distance_twin_row():
    from graphmover.dataset import packaged_graph

    g = packaged_graph("figures/zero_gmd_twin_G")
    row = adjacency_lengths(g, 0)
    assert row == pytest.approx([0.0, 0.0, 0.0, 2.0, math.sqrt(2.0)])


def test_adjacency_lengths_subdivided_segment_middle_vertex(segment_pair):
    g, _ = segment_pair
    assert adjacency_lengths(g, 1) == pytest.approx([3.0, 0.0, 1.0])


def test_adjacency_lengths_isolated_vertex_and_range():
    g = GeometricGraph.build([(0, 0), (5, 5), (9, 1)], [(0, 2)])
    assert adjacency_lengths(g, 1).tolist() == [0.0, 0.0, 0.0]
    with pytest.raises(IndexError):
        adjacency_lengths(g, 3)
    with pytest.raises(IndexError):
        adjacency_lengths(g, -1)


@settings(max_examples=60, deadline=None)
@given(geometric_graphs())
def test_adjacency_matrix_is_symmetric_and_counts_each_edge_twice(g):
    mat = g.adjacency_length_matrix
    assert np.array_equal(mat, mat.T)
    total = sum(adjacency_lengths(g, i).sum() for i in range(g.n_vertices))
    assert total == pytest.approx(2.0 * g.total_edge_length(), abs=1e-9)


def test_hausdorff_identical_and_shared_sets(shared_vertex_pair):
    g, h = shared_vertex_pair
    assert hausdorff_vertices(g, h) == 0.0
    assert hausdorff_vertices(g, g) == 0.0


def test_hausdorff_three_four_five():
    a = GeometricGraph.build([(0, 0)], [])
    b = GeometricGraph.build([(3, 4)], [])
    assert hausdorff_vertices(a, b) == pytest.approx(5.0)


def test_hausdorff_rejects_empty_and_mixed_dim():
    g = GeometricGraph.build([(0, 0)], [])
    empty = GeometricGraph(2, (), ())
    line = GeometricGraph.build([(0,)], [], dim=1)
    with pytest.raises(ValueError):
        hausdorff_vertices(g, empty)
    with pytest.raises(ValueError):
        hausdorff_vertices(g, line)


def test_translate_zero_is_identity_and_preserves_lengths():
    g = GeometricGraph.build([(0, 0), (1, 0), (1, 1), (0, 1)],
                             [(0, 1), (1, 2), (2, 3), (0, 3)])
    assert translate(g, (0.0, 0.0)) == g
    moved = translate(g, (1.0, 0.0))
    assert moved.vertices[0] == (1.0, 0.0)
    assert np.allclose(moved.adjacency_length_matrix, g.adjacency_length_matrix)
    with pytest.raises(ValueError):
        translate(g, (1.0,))


def test_translate_shifts_hausdorff_by_step_size():
    rng = np.random.default_rng(5)
    for _ in range(20):
        pts = rng.uniform(0, 10, size=(4, 2))
        g = GeometricGraph.build(pts, [(0, 1), (2, 3)])
        gaps = [math.dist(pts[i], pts[j]) for i in range(4) for j in range(i + 1, 4)]
        step = 0.4 * min(gaps)
        if step <= 0:
            continue
        direction = rng.standard_normal(2)
        t = direction / np.linalg.norm(direction) * step
        assert hausdorff_vertices(g, translate(g, t)) == pytest.approx(step, abs=1e-9)


def test_perturb_zero_delta_same_seed_and_bound():
    g = GeometricGraph.build([(0, 0), (3, 1), (5, 5)], [(0, 1), (1, 2)])
    assert perturb(g, 0.0, seed=1) == g
    a = perturb(g, 0.7, seed=42)
    b = perturb(g, 0.7, seed=42)
    assert a == b
    assert a.edges == g.edges
    for old, new in zip(g.vertices, a.vertices):
        assert math.dist(old, new) <= 0.7 + 1e-12
    assert perturb(g, 0.7, seed=43) != a
    with pytest.raises(ValueError):
        perturb(g, -0.1, seed=0)


@settings(max_examples=40, deadline=None)
@given(geometric_graphs(max_vertices=5))
def test_translate_preserves_adjacency_vectors(g):
    # shifted coordinates round, so lengths agree to the last few ulps only
    moved = translate(g, (2.5, -1.25))
    for i in range(g.n_vertices):
        assert np.allclose(adjacency_lengths(g, i), adjacency_lengths(moved, i),
                           atol=1e-12, rtol=1e-12)
