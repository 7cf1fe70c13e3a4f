import math

import numpy as np
import pytest
from hypothesis import given, settings

from graphmover.geometry import CostParams, GeometricGraph, translate
from graphmover.ground_cost import deletion_cost, ground_cost_csv, ground_cost_matrix

from conftest import UNIT_COSTS, geometric_graphs
from helpers import naive_ground_cost


def test_matched_twin_vertices_cost_zero(zero_distance_pair):
    g, h = zero_distance_pair
    mat = ground_cost_matrix(g, h, UNIT_COSTS)
    # first vertex of G coincides with second vertex of H and their incident
    # length vectors agree entry for entry
    assert mat.entries[0, 1] == 0.0


def test_dummy_corner_is_zero(zero_distance_pair):
    g, h = zero_distance_pair
    mat = ground_cost_matrix(g, h, UNIT_COSTS)
    assert mat.entries[mat.m, mat.n] == 0.0


def test_segment_pair_middle_entry(segment_pair):
    g, h = segment_pair
    mat = ground_cost_matrix(g, h, UNIT_COSTS).entries
    # displacement |3-4| plus truncated length-vector difference |3-4| + |0-0|
    assert mat[1, 1] == pytest.approx(2.0, abs=1e-9)
    assert np.allclose(mat, naive_ground_cost(g, h, UNIT_COSTS), atol=1e-9)


def test_dimension_mismatch_rejected(segment_pair):
    g, _ = segment_pair
    square = GeometricGraph.build([(0, 0), (1, 1)], [(0, 1)])
    with pytest.raises(ValueError):
        ground_cost_matrix(g, square, UNIT_COSTS)


def test_degenerate_empty_sides():
    empty = GeometricGraph(2, (), ())
    h = GeometricGraph.build([(0, 0), (4, 0)], [(0, 1)])
    mat = ground_cost_matrix(empty, h, UNIT_COSTS)
    assert mat.entries.shape == (1, 3)
    assert mat.entries[0, :2] == pytest.approx([4.0, 4.0])
    assert mat.entries[0, 2] == 0.0
    both = ground_cost_matrix(empty, GeometricGraph(2, (), ()), UNIT_COSTS)
    assert both.entries.shape == (1, 1)
    assert both.entries[0, 0] == 0.0


def test_deletion_cost_examples():
    assert deletion_cost(np.zeros(4), UNIT_COSTS) == 0.0
    vec = np.array([0.0, 0.0, 0.0, 2.0, math.sqrt(2.0)])
    assert deletion_cost(vec, UNIT_COSTS) == pytest.approx(2.0 + math.sqrt(2.0))
    assert deletion_cost(np.array([3.0, 0.0, 1.0]), CostParams(1.0, 2.0)) == pytest.approx(8.0)


@settings(max_examples=40, deadline=None)
@given(geometric_graphs(max_vertices=5), geometric_graphs(max_vertices=5))
def test_matches_naive_oracle_and_transpose_symmetry(g, h):
    mat_gh = ground_cost_matrix(g, h, UNIT_COSTS).entries
    mat_hg = ground_cost_matrix(h, g, UNIT_COSTS).entries
    assert np.allclose(mat_gh, naive_ground_cost(g, h, UNIT_COSTS), atol=1e-9)
    assert np.allclose(mat_gh, mat_hg.T, atol=1e-9)


@settings(max_examples=30, deadline=None)
@given(geometric_graphs(max_vertices=5), geometric_graphs(max_vertices=5))
def test_scale_equivariance_and_translation_invariance(g, h):
    mat = ground_cost_matrix(g, h, UNIT_COSTS).entries
    scale = 3.0
    scaled = [GeometricGraph.build([tuple(scale * x for x in v) for v in q.vertices],
                                   q.edges, dim=q.dim) for q in (g, h)]
    mat_scaled = ground_cost_matrix(scaled[0], scaled[1], UNIT_COSTS).entries
    assert np.allclose(mat_scaled, scale * mat, rtol=1e-9, atol=1e-9)
    shifted = ground_cost_matrix(translate(g, (1.5, -2.0)),
                                 translate(h, (1.5, -2.0)), UNIT_COSTS).entries
    assert np.allclose(shifted, mat, atol=1e-9)


@settings(max_examples=30, deadline=None)
@given(geometric_graphs(max_vertices=5), geometric_graphs(max_vertices=5))
def test_real_entries_dominate_displacement_term(g, h):
    params = CostParams(2.0, 0.5)
    mat = ground_cost_matrix(g, h, params).entries
    for i in range(g.n_vertices):
        for j in range(h.n_vertices):
            gap = params.vertex_cost * math.dist(g.vertices[i], h.vertices[j])
            assert mat[i, j] >= gap - 1e-12
            assert mat[i, j] >= 0.0


def test_csv_dump_round_trips_shape(segment_pair):
    g, h = segment_pair
    mat = ground_cost_matrix(g, h, UNIT_COSTS)
    text = ground_cost_csv(mat, UNIT_COSTS)
    lines = text.strip().splitlines()
    assert lines[0] == "m,n,vertex_cost,edge_cost"
    assert lines[1].startswith("3,2,")
    rows = [[float(x) for x in line.split(",")] for line in lines[2:]]
    assert np.allclose(np.array(rows), mat.entries)
