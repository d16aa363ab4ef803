import itertools
import json
from fractions import Fraction as F

import pytest

import delone


def test_squared_distance():
    assert delone.squared_distance([0, 0], [3, 4]) == 25
    assert delone.squared_distance([F(1, 2), 0], [0, 0]) == F(1, 4)
    with pytest.raises(TypeError):
        delone.squared_distance([0.5, 0], [0, 0])
    with pytest.raises(ValueError):
        delone.squared_distance([0, 0], [0, 0, 0])


def test_diameter_matches_python():
    pts = [[x, (x * x) % 7] for x in range(12)]
    expect = max((a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2 for a, b in itertools.combinations(pts, 2))
    assert delone.diameter_squared(pts) == expect


def test_lattice_window():
    pts = [[x, y] for x in range(8) for y in range(8)]
    w = delone.DeloneWindow(pts, [0, 0], [8, 8])
    assert len(w) == 64
    assert delone.packing_radius_sq(w) == F(1, 4)
    assert delone.covering_radius_sq(w, [0, 0], [1, 1]) == F(1, 2)
    rep = delone.is_delone(w, F(1, 2), 8)
    assert rep["holds"]


def test_fill_window():
    w = delone.DeloneWindow([[F(1, 2), F(1, 2)]], [-3, -3], [7, 7], fill="zd", blocks=[([0, 0], [1, 1])])
    assert w.contains([5, 5])
    assert not w.contains([0, 0])
    assert delone.packing_radius_sq(w) == F(1, 8)


def test_distortion_and_min():
    rep = delone.distortion([[0, 0], [1, 0], [3, 0]], [[0, 0], [2, 0], [3, 0]])
    assert rep["lambda_squared"] == 4
    A = [[0, 0], [2, 1], [5, 3]]
    B = [[p[0] + 4, p[1] - 1] for p in reversed(A)]
    m = delone.min_distortion(A, B)
    assert m["lambda_squared"] == 1
    assert m["permutation"] == [2, 1, 0]


def test_latticize():
    w = delone.DeloneWindow([[F(1, 3), 0], [F(1, 3), 3]], [0, 0], [4, 4])
    out = delone.latticize(w)
    assert out["sigma"] == 1
    assert out["points"][0] != out["points"][1]


def test_block_and_stack():
    b = delone.build_block()
    assert b["params"]["a"] == F(5, 6)
    assert len(b["points"]) == 80
    assert b["exceptional"] == 16
    assert all(holds for _, _, holds in b["counting"])
    assert json.loads(b["tiling_json"])["kind"] == "tiling"
    one = delone.stack_counts(1)
    for j in (2, 3):
        pts, ex = delone.stack_counts(j)
        assert pts == j * one[0]
        assert ex == j * one[1]


def test_family_and_witness():
    fam = delone.build_family("010", toy=True)
    assert fam["points"] == sum(b["points"] for b in fam["blocks"])
    assert len(fam["gaps"]) == 3
    doc = json.loads(fam["json"])
    assert doc["kind"] == "family"
    sep = delone.separation_witness("0111", "1111", 1, 1)
    assert sep["separated"]
    assert sep["ratio"] > sep["threshold"] > 1
    assert not delone.separation_witness("0111", "0111", 1, 1)["separated"]


def test_dichotomy():
    ident = delone.analyze_dichotomy(6, 3)
    assert ident["verdict"] == "case2"
    assert ident["counts"] == [9] * 5
    shear = delone.analyze_dichotomy(6, 3, map="shear", param=F(1, 4), slab=2)
    assert shear["verdict"] == "case1"


def test_partition():
    vp = delone.VoxelPartition([2, 2, 2], "PQQQQQQQ")
    assert vp.volume("P") == F(1, 8)
    assert vp.shared_boundary_area() == F(3, 4)
    assert vp.refined().shared_boundary_area() == F(3, 4)
    half = delone.VoxelPartition([2, 2], "PPQQ")
    rep = half.lemma5(F(1, 4))
    assert rep["status"] == "holds"
    assert rep["rhs"] == F(1, 8)
    with pytest.raises(ValueError):
        delone.VoxelPartition([2, 2], "PPQ")


def test_surface_and_scale():
    cubes = [([x, y], 1) for x in range(3) for y in range(3)]
    assert delone.cube_union_surface(cubes) == 12
    assert delone.alignment_scale_s_sq(F(1, 8), 2, 16) == 1
