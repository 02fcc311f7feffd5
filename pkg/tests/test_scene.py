import copy
import json

import pytest

from lsqt import (
    SceneValidationError,
    graph_from_scene,
    grid_graph,
    random_connected_graph,
    read_scene,
    run_pipeline,
    scene_to_json,
    validate_scene,
    write_scene,
)
from lsqt.scene import _round6, require_valid_scene


def scene_for(graph, **kw):
    return run_pipeline(graph, **kw).scene


def test_triangle_scene_shape(triangle):
    scene = scene_for(triangle, layout_kind="radial", dataset="triangle")
    assert len(scene["graph"]["backbone"]) == 2
    assert len(scene["graph"]["remainder"]) == 1
    assert scene["bundles"]["sizes"] == []
    assert validate_scene(scene) == []


def test_flare_scale_scene_split():
    g = random_connected_graph(220, 708, seed=0)
    scene = scene_for(g, layout_kind="radial", dataset="flare-syn")
    assert scene["graph"]["n"] == 220
    assert len(scene["graph"]["backbone"]) == 219
    assert len(scene["graph"]["remainder"]) == 708 - 219
    assert validate_scene(scene) == []


def test_scene_roundtrip_byte_identical(tmp_path, grid8):
    scene = scene_for(grid8, layout_kind="force", dataset="grid8")
    p1 = tmp_path / "a.json"
    p2 = tmp_path / "b.json"
    write_scene(scene, str(p1))
    write_scene(read_scene(str(p1)), str(p2))
    assert p1.read_bytes() == p2.read_bytes()


def test_scene_floats_six_significant_digits(grid8):
    scene = scene_for(grid8, layout_kind="force")
    text = scene_to_json(scene)
    parsed = json.loads(text)
    for arr in (parsed["layout"]["x"], parsed["layout"]["y"]):
        for v in arr:
            assert v == _round6(v)


def test_round6_idempotent():
    for x in (0.0, 1.0, -3.25, 0.1234564999, 1e-17, 12345678.9, -2 / 3):
        once = _round6(x)
        assert _round6(once) == once


def test_graph_block_round_trip(grid8):
    scene = scene_for(grid8, layout_kind="radial")
    g2 = graph_from_scene(scene)
    assert g2.n == grid8.n
    assert set(g2.edge_list()) == set(grid8.edge_list())


def test_labels_survive_scene():
    from lsqt import parse_edge_list

    g = parse_edge_list("alpha beta\nbeta gamma\ngamma alpha")
    scene = scene_for(g, layout_kind="radial")
    assert scene["graph"]["labels"] == ["alpha", "beta", "gamma"]
    assert graph_from_scene(scene).labels == ["alpha", "beta", "gamma"]


def corrupted_variants(scene):
    s = copy.deepcopy(scene)
    s["graph"]["backbone"][0] = [0, 999]
    yield "id out of range", s

    s = copy.deepcopy(scene)
    s["tree"]["parent"][max(scene["tree"]["roots"]) - 1] = 0  # arbitrary rewire
    yield "parent/backbone mismatch", s

    s = copy.deepcopy(scene)
    s["segmentation"]["paths"][0] = s["segmentation"]["paths"][0][:-1]
    yield "path endpoint mismatch", s

    s = copy.deepcopy(scene)
    if s["bundles"]["sizes"]:
        s["bundles"]["sizes"][0] += 1
        yield "bundle size mismatch", s

    s = copy.deepcopy(scene)
    s["layout"]["x"][0] = float("nan")
    yield "non-finite position", s

    s = copy.deepcopy(scene)
    del s["meta"]
    yield "missing block", s

    s = copy.deepcopy(scene)
    s["graph"]["remainder"].append(s["graph"]["backbone"][0])
    yield "backbone/remainder overlap", s


def test_validator_catches_corruption(grid8):
    scene = scene_for(grid8, layout_kind="force")
    assert validate_scene(scene) == []
    for name, bad in corrupted_variants(scene):
        problems = validate_scene(bad)
        assert problems, f"validator missed: {name}"
    with pytest.raises(SceneValidationError):
        require_valid_scene(next(corrupted_variants(scene))[1])


def test_validator_on_forest_scene():
    from lsqt import Graph

    g = Graph.from_edges([(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    scene = scene_for(g, layout_kind="radial")
    assert validate_scene(scene) == []
    assert scene["tree"]["roots"] == [0, 3]


def test_scene_meta_contents(grid8):
    scene = scene_for(
        grid8, layout_kind="radial", seed=4, tree_kind="lst", dataset="g8"
    )
    meta = scene["meta"]
    assert meta["dataset"] == "g8"
    assert meta["seed"] == 4
    assert meta["tree_kind"] == "lst"
    assert meta["tool"] == "lsqt"
    # timings never enter the scene: byte-identity across runs
    assert "timings" not in meta
