"""Arrangements, vertex sets, the least map and zonotope lattice points."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from zonoforge.config import bases, make_config
from zonoforge.errors import (
    ConsistencyError,
    DimensionMismatch,
    DuplicatePoints,
    NotSimple,
    SamplingExhausted,
    UnknownBasis,
)
from zonoforge.geometry import (
    is_unimodular,
    least_space,
    make_arrangement,
    restriction_certificate,
    vertex_set,
    zonotope_lattice,
)
def test_vertices_of_the_example(ex25):
    arr = make_arrangement(ex25)
    points = {p for _, p in arr.vertices}
    one = Fraction(1)
    assert points == {
        (one, one, one),
        (one, one, -one),
        (one, -one, one),
        (-one, one, one),
    }
    assert arr.simple
    assert len(arr.vertices) == len(bases(ex25))


def test_offsets_taken_from_the_config(triangle):
    arr = make_arrangement(triangle)
    assert arr.offsets == (1, 2, 4)


def test_concurrent_lines_rejected():
    c = make_config([[1, 0, 1], [0, 1, 1]], lam=[1, 1, 2])
    with pytest.raises(NotSimple):
        make_arrangement(c)


def test_sampling_fills_holes():
    c = make_config([[1, 0, 1], [0, 1, 1]], lam=[1, None, None])
    arr = make_arrangement(c, seed=4)
    assert arr.offsets[0] == 1
    assert all(x is not None for x in arr.offsets)


def test_sampling_is_seed_deterministic():
    c = make_config([[1, 0, 1], [0, 1, 1]])
    a = make_arrangement(c, seed=12)
    b = make_arrangement(c, seed=12)
    other = make_arrangement(c, seed=13)
    assert a.offsets == b.offsets
    assert a.offsets != other.offsets


def test_sampling_cannot_fix_parallel_equal_offsets():
    # two copies of a column with equal fixed offsets stay concurrent no
    # matter what the sampled entries do
    c = make_config([[1, 1, 0], [0, 0, 1]], lam=[1, 1, None])
    with pytest.raises(SamplingExhausted):
        make_arrangement(c)


def test_explicit_offsets_override(triangle):
    arr = make_arrangement(triangle, offsets=[0, 0, 1])
    assert arr.offsets == (0, 0, 1)


def test_offsets_length_checked(triangle):
    with pytest.raises(DimensionMismatch):
        make_arrangement(triangle, offsets=[1, 2])


def test_vertex_set_selects_bases(ex25):
    arr = make_arrangement(ex25)
    pts = vertex_set(arr, [frozenset({0, 1, 2})])
    assert pts == ((Fraction(1), Fraction(1), Fraction(1)),)
    with pytest.raises(UnknownBasis):
        vertex_set(arr, [frozenset({0, 1})])


# -- least map -------------------------------------------------------------


def test_least_space_collinear_points():
    # three points on a line carry all univariate polynomials through degree 2
    space = least_space([(0,), (1,), (2,)])
    assert space.hilbert() == (1, 1, 1)


def test_least_space_affine_plane_points():
    space = least_space([(0, 0), (1, 0), (0, 1)])
    assert space.hilbert() == (1, 2)


def test_least_space_mixed_degrees():
    # three collinear points plus one off the line: 1, t1, t2, t1^2
    space = least_space([(0, 0), (1, 0), (2, 0), (0, 1)])
    assert space.hilbert() == (1, 2, 1)
    assert space.dim() == 4


def test_least_space_rejects_bad_input():
    with pytest.raises(DuplicatePoints):
        least_space([(0, 0), (0, 0)])
    with pytest.raises(DimensionMismatch):
        least_space([(0, 0), (1,)])


def test_least_space_single_point():
    space = least_space([(3, 5)])
    assert space.hilbert() == (1,)


def test_restriction_certificate(ex25):
    arr = make_arrangement(ex25)
    pts = [p for _, p in arr.vertices]
    space = least_space(pts)
    cert = restriction_certificate(pts, space)
    assert cert["passed"] and cert["invertible"] and cert["square"]
    assert cert["n_points"] == cert["dim_space"] == 4


def test_restriction_certificate_random_points():
    rng = random.Random(21)
    for _ in range(6):
        n = rng.randint(1, 3)
        count = rng.randint(1, 5)
        pts = set()
        while len(pts) < count:
            pts.add(tuple(rng.randint(-3, 3) for _ in range(n)))
        pts = sorted(pts)
        space = least_space(pts)
        assert space.dim() == len(pts)
        assert restriction_certificate(pts, space)["passed"]


# -- zonotope lattice -------------------------------------------------------


def test_unimodular_detection(ex25, triangle):
    assert is_unimodular(ex25)
    assert is_unimodular(triangle)
    assert not is_unimodular(make_config([[2]]))
    assert not is_unimodular(make_config([[1, 1], [0, 2]]))
    assert not is_unimodular(make_config([["1/2", 0], [0, 1]]))


def test_lattice_points_of_the_example(ex25):
    ok, points = zonotope_lattice(ex25)
    assert ok
    assert len(points) == 15
    # independent oracle: p = (a+d, b+d, c+d) with weights in [0, 1] is
    # feasible iff some d in [0, 1] fits under every coordinate
    expected = set()
    for p1 in range(3):
        for p2 in range(3):
            for p3 in range(3):
                lo = max(max(p1, p2, p3) - 1, 0)
                hi = min(min(p1, p2, p3), 1)
                if lo <= hi:
                    expected.add((p1, p2, p3))
    assert set(points) == expected


def test_lattice_points_unit_square(identity2):
    ok, points = zonotope_lattice(identity2)
    assert ok
    assert set(points) == {(0, 0), (0, 1), (1, 0), (1, 1)}


def test_lattice_points_doubled_segment():
    c = make_config([[1, 1, 0], [0, 0, 1]])
    ok, points = zonotope_lattice(c)
    assert ok
    assert set(points) == {(a, b) for a in range(3) for b in range(2)}


def test_lattice_refused_for_non_unimodular():
    ok, points = zonotope_lattice(make_config([[1, 1], [0, 2]]))
    assert not ok and points is None


def test_lattice_matches_brute_force_random():
    # cross-check the exact feasibility programs against the 0/1 weight
    # images, which are always lattice points of the zonotope
    rng = random.Random(9)
    checked = 0
    while checked < 6:
        cols = [(1, 0), (0, 1)]
        for _ in range(rng.randint(0, 2)):
            v = (rng.randint(-1, 1), rng.randint(-1, 1))
            if any(v):
                cols.append(v)
        rng.shuffle(cols)
        c = make_config([[col[i] for col in cols] for i in range(2)])
        if not is_unimodular(c):
            continue
        checked += 1
        ok, points = zonotope_lattice(c)
        assert ok
        pts = set(points)
        for mask in range(1 << c.ncols):
            image = [0, 0]
            for j in range(c.ncols):
                if mask >> j & 1:
                    image[0] += c.columns[j][0]
                    image[1] += c.columns[j][1]
            assert (int(image[0]), int(image[1])) in pts
