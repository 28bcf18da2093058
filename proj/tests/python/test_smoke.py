import math
from fractions import Fraction

import pytest

import unknot_kit as uk


def test_trees():
    assert uk.ahu_code("(())") == "(())"
    assert not uk.trees_isomorphic("(()()())", "(((())))")
    assert [len(uk.enumerate_free_trees(n)) for n in range(1, 9)] == [1, 1, 1, 2, 3, 6, 11, 23]
    assert uk.cayley_lower_bound(7) == Fraction(16807, 5040)
    assert uk.tree_edges("(()())") == [(0, 1), (0, 2)]


def test_parse_error():
    with pytest.raises(uk.ParseError):
        uk.ahu_code("(()")
    with pytest.raises(uk.UnknotError):
        uk.enumerate_free_trees(0)


def test_multigraphs():
    assert uk.multigraphs_isomorphic(1, [(0, 0)], 1, [(0, 0)])
    assert not uk.multigraphs_isomorphic(2, [(0, 1), (0, 1)], 2, [(0, 1)])


def test_model_surface_round_trip(tmp_path):
    mesh = uk.generate_model_surface("((())())", genus=1, resolution=32)
    assert uk.isotopy_signature(mesh) == (1, uk.ahu_code("((())())"))
    assert uk.genus_and_boundary(mesh) == (1, 3)
    report = uk.validate_properly_embedded(mesh)
    assert report["properly_embedded"]
    assert not uk.self_intersects(mesh)

    path = tmp_path / "m.obj"
    uk.write_obj(path, mesh)
    assert uk.read_obj(path) == mesh

    side = uk.model_sidecar("((())())", genus=1, resolution=32)
    assert side["schema"] == "unknot-kit/1"
    assert len(side["features"]) == 4


def test_star_and_path_differ():
    star = uk.generate_model_surface("(()()())", resolution=32)
    path = uk.generate_model_surface("(((())))", resolution=32)
    assert not uk.isotopy_equivalent(star, path)
    assert uk.isotopy_equivalent(star, star)


def test_sphere_loops():
    def circle(z, n=48):
        r = math.sqrt(1 - z * z)
        return [(r * math.cos(2 * math.pi * k / n), r * math.sin(2 * math.pi * k / n), z) for k in range(n)]

    n, edges = uk.sphere_boundary_graph([circle(0.5), circle(-0.5)])
    assert n == 3 and len(edges) == 2
    with pytest.raises(uk.GeometryError):
        uk.sphere_boundary_graph([circle(0.5), circle(0.5)])


def test_shrinkers():
    expected = {"plane": 2, "sphere2": 1, "cylinder2": 3}
    for kind, vertices in expected.items():
        rep = uk.graph_at_infinity(uk.builtin_shrinker(kind), uk.SHRINKER_MIN_RADIUS, 12.0)
        assert rep["stabilized"]
        assert rep["vertices"] == vertices


def test_trimesh_from_lists():
    mesh = uk.TriMesh([(0, 0, 0), (1, 0, 0), (0, 1, 0)], [(0, 1, 2)])
    assert mesh.euler_characteristic() == 1
    with pytest.raises(uk.InvalidInput):
        uk.TriMesh([(0, 0, 0)], [(0, 1, 2)])
