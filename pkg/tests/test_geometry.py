"""Directed-line distances, chirality, realization checks, lower bound."""

import json

import numpy as np
import pytest

from champagne.geometry import (
    DegeneratePairError,
    DirectedLine,
    GeometryError,
    InvalidConfigError,
    LineConfig,
    are_parallel,
    check_realization,
    chirality,
    chirality_graph,
    line_distance,
    load_config,
    lower_bound_config,
    rigid_transform,
    t_matrix,
)
from champagne.graphs import Graph, complement, switch

X_AXIS = DirectedLine(np.zeros(3), np.array([1.0, 0.0, 0.0]))
L2 = DirectedLine(np.array([0.0, 0.0, 1.0]), np.array([0.0, 1.0, 0.0]))
L3 = DirectedLine(np.array([1.0, 1.0, 0.0]), np.array([0.0, 0.0, 1.0]))
THREE = LineConfig(3, (X_AXIS, L2, L3))


def random_line(rng, dim=3):
    return DirectedLine.through(rng.normal(size=dim), rng.normal(size=dim))


def closest_approach(a, b):
    """Independent distance oracle: solve the two-parameter least squares."""
    g = np.array(
        [
            [a.direction @ a.direction, -(a.direction @ b.direction)],
            [-(a.direction @ b.direction), b.direction @ b.direction],
        ]
    )
    rhs = np.array([-(a.base - b.base) @ a.direction, (a.base - b.base) @ b.direction])
    t, s = np.linalg.lstsq(g, rhs, rcond=None)[0]
    return float(np.linalg.norm(a.base + t * a.direction - b.base - s * b.direction))


def test_directed_line_validation():
    with pytest.raises(GeometryError):
        DirectedLine(np.zeros(3), np.array([1.0, 1.0, 0.0]))
    with pytest.raises(GeometryError):
        DirectedLine(np.zeros(2), np.array([1.0, 0.0, 0.0]))
    with pytest.raises(GeometryError):
        DirectedLine(np.zeros(1), np.ones(1))
    with pytest.raises(GeometryError):
        DirectedLine.through(np.zeros(3), np.zeros(3))
    ln = DirectedLine.through(np.zeros(3), np.array([2.0, 0.0, 0.0]))
    assert np.allclose(ln.direction, [1, 0, 0])
    assert np.allclose(ln.reversed().direction, [-1, 0, 0])


def test_line_distance_examples():
    assert line_distance(X_AXIS, L2) == pytest.approx(1.0, abs=1e-15)
    assert line_distance(X_AXIS, L3) == pytest.approx(1.0, abs=1e-15)
    assert line_distance(L2, L3) == pytest.approx(1.0, abs=1e-15)
    offset_parallel = DirectedLine(np.array([5.0, 0.0, 1.0]), np.array([1.0, 0.0, 0.0]))
    assert line_distance(X_AXIS, offset_parallel) == pytest.approx(1.0, abs=1e-15)
    assert line_distance(X_AXIS, X_AXIS) == 0.0
    with pytest.raises(GeometryError):
        line_distance(X_AXIS, DirectedLine(np.zeros(4), np.array([1.0, 0, 0, 0])))


def test_line_distance_matches_least_squares_oracle():
    rng = np.random.default_rng(12)
    for _ in range(300):
        dim = int(rng.integers(2, 7))
        a, b = random_line(rng, dim), random_line(rng, dim)
        if are_parallel(a, b):
            continue
        assert line_distance(a, b) == pytest.approx(closest_approach(a, b), abs=1e-9)


def test_intersecting_lines_have_distance_zero():
    crossing = DirectedLine(np.zeros(3), np.array([0.0, 1.0, 0.0]))
    assert line_distance(X_AXIS, crossing) == pytest.approx(0.0, abs=1e-15)


def test_chirality_example_and_symmetries():
    assert chirality(X_AXIS, L2) == -1
    assert chirality(X_AXIS, L3) == 1
    rng = np.random.default_rng(3)
    seen = 0
    while seen < 200:
        a, b = random_line(rng), random_line(rng)
        try:
            sign = chirality(a, b)
        except DegeneratePairError:
            continue
        seen += 1
        assert sign == chirality(b, a)
        assert chirality(a.reversed(), b) == -sign
        assert chirality(a, b.reversed()) == -sign


def test_chirality_degeneracies():
    with pytest.raises(DegeneratePairError):
        chirality(X_AXIS, DirectedLine(np.array([0.0, 0.0, 1.0]), np.array([1.0, 0.0, 0.0])))
    with pytest.raises(DegeneratePairError):
        chirality(X_AXIS, DirectedLine(np.zeros(3), np.array([0.0, 1.0, 0.0])))
    with pytest.raises(GeometryError):
        chirality(
            DirectedLine(np.zeros(4), np.array([1.0, 0, 0, 0])),
            DirectedLine(np.zeros(4), np.array([0.0, 1, 0, 0])),
        )


def test_chirality_graph_of_bundled_config():
    graph, report = chirality_graph(THREE)
    assert graph == Graph.from_edges(3, [(0, 2)])
    assert report.valid and report.distances_ok and not report.has_parallel
    assert len(report.pairs) == 3
    assert {p["chirality"] for p in report.pairs} == {1, -1}


def test_reversing_a_line_switches_the_graph():
    base_graph, base_report = chirality_graph(THREE)
    for w in range(3):
        flipped, report = chirality_graph(THREE.reverse_line(w))
        assert flipped == switch(base_graph, w)
        assert report.valid == base_report.valid


def test_parallel_pair_is_flagged():
    cfg = LineConfig(
        3,
        (
            X_AXIS,
            DirectedLine(np.array([0.0, 0.0, 1.0]), np.array([1.0, 0.0, 0.0])),
            L2,
        ),
    )
    graph, report = chirality_graph(cfg)
    assert report.has_parallel and not report.valid
    flagged = [p for p in report.pairs if p["parallel"]]
    assert [(p["v"], p["w"]) for p in flagged] == [(0, 1)]
    assert not graph.has_edge(0, 1)


def test_rigid_motion_invariance():
    rng = np.random.default_rng(8)
    base_graph, base_report = chirality_graph(THREE)
    for _ in range(20):
        q, _ = np.linalg.qr(rng.normal(size=(3, 3)))
        if np.linalg.det(q) < 0:
            q[:, 0] = -q[:, 0]
        moved = rigid_transform(THREE, q, rng.normal(size=3))
        graph, report = chirality_graph(moved)
        assert graph == base_graph
        for before, after in zip(base_report.pairs, report.pairs):
            assert after["distance"] == pytest.approx(before["distance"], abs=1e-9)


def test_reflection_complements_the_graph():
    mirror = np.diag([1.0, 1.0, -1.0])
    graph, _ = chirality_graph(rigid_transform(THREE, mirror))
    base_graph, _ = chirality_graph(THREE)
    assert graph == complement(base_graph)


def test_rigid_transform_requires_orthogonal():
    with pytest.raises(GeometryError):
        rigid_transform(THREE, np.diag([2.0, 1.0, 1.0]))


def test_t_matrix_gram_identity():
    tm = t_matrix(THREE)
    assert tm.n == 3
    assert np.all(np.diag(tm.matrix) == 0)
    assert tm.gram_residual() <= 1e-12
    for v in range(3):
        for w in range(v + 1, 3):
            cross = np.cross(THREE.lines[v].direction, THREE.lines[w].direction)
            assert abs(tm.matrix[v, w]) == pytest.approx(
                float(np.linalg.norm(cross)), abs=1e-12
            )


def test_t_matrix_gram_identity_random_configs():
    rng = np.random.default_rng(21)
    for _ in range(50):
        lines = tuple(random_line(rng) for _ in range(4))
        cfg = LineConfig(3, lines)
        try:
            tm = t_matrix(cfg)
        except DegeneratePairError:
            continue
        assert tm.gram_residual() <= 1e-10


def test_t_matrix_rejects_parallel():
    cfg = LineConfig(
        3, (X_AXIS, DirectedLine(np.array([0.0, 0.0, 1.0]), np.array([1.0, 0.0, 0.0])))
    )
    with pytest.raises(DegeneratePairError):
        t_matrix(cfg)


def test_check_realization_bundled_config():
    report = check_realization(THREE)
    assert report.passed
    props = report.properties
    assert props["abs_matrix_signature"]["signature"] == [1, 0, 2]
    assert props["at_most_3_negative_eigenvalues"]["passed"]
    assert props["offdiagonal_nonzero"]["min_abs_entry"] == pytest.approx(1.0)
    assert props["sign_pattern_matches_chirality"]["mismatched_pairs"] == []


def test_check_realization_two_skew_lines():
    report = check_realization(LineConfig(3, (X_AXIS, L2)))
    assert report.passed
    assert report.properties["abs_matrix_signature"]["signature"] == [1, 0, 1]


def test_check_realization_rejects_wrong_distance():
    stretched = LineConfig(
        3, (X_AXIS, DirectedLine(np.array([0.0, 0.0, 2.0]), np.array([0.0, 1.0, 0.0])))
    )
    with pytest.raises(InvalidConfigError):
        check_realization(stretched)


def test_check_realization_preconditions():
    with pytest.raises(GeometryError):
        check_realization(LineConfig(3, (X_AXIS,)))
    four_d = LineConfig(
        4,
        (
            DirectedLine(np.zeros(4), np.array([1.0, 0, 0, 0])),
            DirectedLine(np.array([0.0, 0, 0, 1]), np.array([0.0, 1, 0, 0])),
        ),
    )
    with pytest.raises(GeometryError):
        check_realization(four_d)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_lower_bound_config(n):
    cfg = lower_bound_config(n)
    assert cfg.dim == n
    assert len(cfg) == 2 * n - 2
    worst = max(
        abs(line_distance(cfg.lines[i], cfg.lines[j]) - 1.0)
        for i in range(len(cfg))
        for j in range(i + 1, len(cfg))
    )
    assert worst <= 1e-12
    for i in range(n - 1):
        assert are_parallel(cfg.lines[2 * i], cfg.lines[2 * i + 1])
    for a in range(len(cfg)):
        for b in range(a + 1, len(cfg)):
            if a // 2 != b // 2:
                assert not are_parallel(cfg.lines[a], cfg.lines[b])


def test_lower_bound_config_rejects_small_dim():
    with pytest.raises(GeometryError):
        lower_bound_config(2)


def test_config_json_round_trip(tmp_path):
    obj = THREE.to_json_obj()
    again = LineConfig.from_json_obj(json.loads(json.dumps(obj)))
    assert again.dim == 3 and len(again) == 3
    for mine, theirs in zip(THREE.lines, again.lines):
        assert np.array_equal(mine.base, theirs.base)
        assert np.array_equal(mine.direction, theirs.direction)

    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(obj))
    assert len(load_config(str(path))) == 3
    with open(path, encoding="utf-8") as fh:
        assert len(load_config(fh)) == 3


def test_config_validation():
    with pytest.raises(GeometryError):
        LineConfig(4, (X_AXIS,))
    with pytest.raises(GeometryError):
        LineConfig.from_json_obj({"dim": 3})
    with pytest.raises(GeometryError):
        DirectedLine.from_json_obj({"base": [0, 0, 0]})
