"""Directed lines in R^d: distances, chirality, and realization checks.

A directed line is a base point plus a unit direction.  The distance
between two non-parallel lines is the norm of the base offset projected
onto the orthogonal complement of the two directions (the common
perpendicular); for parallel lines it is the point-to-line distance.

In R^3 two non-coplanar directed lines have a chirality in {+1, -1}: the
sign of <x_a cross x_b, y_a - y_b>.  A configuration of pairwise
unit-distance, pairwise non-parallel lines induces a graph with an edge
where the chirality is +1, and a symmetric matrix a_vw =
<x_v cross x_w, y_v - y_w> whose realizability constraints
(zero diagonal and only there, sign pattern = the graph, at most 3
negative eigenvalues, |a| of signature (1, n-1)) are checked numerically
here.  The matrix is a Gram matrix of the 6-vectors (y_v cross x_v, x_v)
under the split form of signature (3,3), which is where the eigenvalue
bound comes from; the factors are exposed so that identity can be tested.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .graphs import Graph
from .signature import signature_of_array

UNIT_TOL = 1e-12  # direction vectors must be unit to this tolerance
PARALLEL_TOL = 1e-12  # sine of angle below which lines count as parallel
DEGENERATE_TOL = 1e-12  # |<x cross x', dy>| below which chirality is refused
DISTANCE_TOL = 1e-9  # default tolerance for unit-distance validation


class GeometryError(ValueError):
    pass


class DegeneratePairError(GeometryError):
    pass


class InvalidConfigError(GeometryError):
    pass


@dataclass(frozen=True)
class DirectedLine:
    """Line base + R * direction, with a unit direction vector."""

    base: np.ndarray
    direction: np.ndarray

    def __post_init__(self):
        base = np.asarray(self.base, dtype=float)
        direction = np.asarray(self.direction, dtype=float)
        if base.ndim != 1 or direction.shape != base.shape:
            raise GeometryError("base and direction must be equal-length vectors")
        if base.size < 2:
            raise GeometryError("lines live in dimension >= 2")
        if abs(np.linalg.norm(direction) - 1.0) > UNIT_TOL:
            raise GeometryError(
                f"direction norm {np.linalg.norm(direction)} not unit within {UNIT_TOL}"
            )
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "direction", direction)

    @classmethod
    def through(cls, base, direction) -> "DirectedLine":
        """Build from an un-normalized direction."""
        direction = np.asarray(direction, dtype=float)
        norm = np.linalg.norm(direction)
        if norm == 0:
            raise GeometryError("direction must be nonzero")
        return cls(np.asarray(base, dtype=float), direction / norm)

    @property
    def dim(self) -> int:
        return self.base.size

    def reversed(self) -> "DirectedLine":
        return DirectedLine(self.base, -self.direction)

    def to_json_obj(self) -> dict:
        return {"base": list(map(float, self.base)),
                "dir": list(map(float, self.direction))}

    @classmethod
    def from_json_obj(cls, obj: dict) -> "DirectedLine":
        if not isinstance(obj, dict) or "base" not in obj or "dir" not in obj:
            raise GeometryError("line JSON needs 'base' and 'dir'")
        return cls(np.array(obj["base"], dtype=float),
                   np.array(obj["dir"], dtype=float))


@dataclass(frozen=True)
class LineConfig:
    dim: int
    lines: tuple[DirectedLine, ...]
    tolerance: float = DISTANCE_TOL

    def __post_init__(self):
        object.__setattr__(self, "lines", tuple(self.lines))
        for line in self.lines:
            if line.dim != self.dim:
                raise GeometryError(
                    f"line of dimension {line.dim} in a dimension-{self.dim} config"
                )

    def __len__(self) -> int:
        return len(self.lines)

    def reverse_line(self, index: int) -> "LineConfig":
        lines = list(self.lines)
        lines[index] = lines[index].reversed()
        return LineConfig(self.dim, tuple(lines), self.tolerance)

    def to_json_obj(self) -> dict:
        return {
            "dim": self.dim,
            "tolerance": self.tolerance,
            "lines": [line.to_json_obj() for line in self.lines],
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "LineConfig":
        if not isinstance(obj, dict) or "dim" not in obj or "lines" not in obj:
            raise GeometryError("config JSON needs 'dim' and 'lines'")
        return cls(
            int(obj["dim"]),
            tuple(DirectedLine.from_json_obj(entry) for entry in obj["lines"]),
            float(obj.get("tolerance", DISTANCE_TOL)),
        )


def load_config(path_or_stream) -> LineConfig:
    if hasattr(path_or_stream, "read"):
        return LineConfig.from_json_obj(json.load(path_or_stream))
    with open(path_or_stream, encoding="utf-8") as fh:
        return LineConfig.from_json_obj(json.load(fh))


def rigid_transform(cfg: LineConfig, matrix, shift=None) -> LineConfig:
    """Apply an orthogonal map plus translation to every line."""
    matrix = np.asarray(matrix, dtype=float)
    if not np.allclose(matrix.T @ matrix, np.eye(cfg.dim), atol=1e-12):
        raise GeometryError("transform matrix is not orthogonal")
    shift = np.zeros(cfg.dim) if shift is None else np.asarray(shift, dtype=float)
    lines = tuple(
        DirectedLine.through(matrix @ ln.base + shift, matrix @ ln.direction)
        for ln in cfg.lines
    )
    return LineConfig(cfg.dim, lines, cfg.tolerance)


def are_parallel(a: DirectedLine, b: DirectedLine) -> bool:
    # component of b's direction orthogonal to a's; zero iff parallel
    w = b.direction - np.dot(a.direction, b.direction) * a.direction
    return bool(np.linalg.norm(w) <= PARALLEL_TOL)


def line_distance(a: DirectedLine, b: DirectedLine) -> float:
    """Minimal distance between the two lines, any dimension."""
    if a.dim != b.dim:
        raise GeometryError("lines of different dimensions")
    dy = a.base - b.base
    if are_parallel(a, b):
        return float(np.linalg.norm(dy - np.dot(dy, a.direction) * a.direction))
    # orthonormalize {x_a, x_b} and remove both components
    u = a.direction
    w = b.direction - np.dot(u, b.direction) * u
    w /= np.linalg.norm(w)
    residue = dy - np.dot(dy, u) * u - np.dot(dy, w) * w
    return float(np.linalg.norm(residue))


def _signed_volume(a: DirectedLine, b: DirectedLine) -> float:
    return float(np.dot(np.cross(a.direction, b.direction), a.base - b.base))


def chirality(a: DirectedLine, b: DirectedLine) -> int:
    """Orientation sign of two non-coplanar directed lines in R^3."""
    if a.dim != 3 or b.dim != 3:
        raise GeometryError("chirality is defined only in R^3")
    cross = np.cross(a.direction, b.direction)
    if np.linalg.norm(cross) <= PARALLEL_TOL:
        raise DegeneratePairError("parallel lines have no chirality")
    volume = _signed_volume(a, b)
    if abs(volume) <= DEGENERATE_TOL:
        raise DegeneratePairError(
            "coplanar (intersecting) lines have no chirality"
        )
    return 1 if volume > 0 else -1


@dataclass
class ConfigReport:
    """Per-pair diagnostics for a line configuration."""

    dim: int
    count: int
    tolerance: float
    pairs: list = field(default_factory=list)
    distances_ok: bool = True
    has_parallel: bool = False
    has_coplanar: bool = False

    @property
    def valid(self) -> bool:
        return self.distances_ok and not self.has_parallel

    def to_json_obj(self) -> dict:
        return {
            "dim": self.dim,
            "count": self.count,
            "tolerance": self.tolerance,
            "valid": self.valid,
            "distances_ok": self.distances_ok,
            "has_parallel": self.has_parallel,
            "has_coplanar": self.has_coplanar,
            "pairs": self.pairs,
        }


def chirality_graph(cfg: LineConfig) -> tuple[Graph, ConfigReport]:
    """Graph with an edge per +1-chirality pair, plus a validity report.

    Parallel or coplanar pairs get no edge and are flagged in the report;
    validity requires every pairwise distance within tolerance of 1 and no
    parallel pair.
    """
    if cfg.dim != 3:
        raise GeometryError("chirality graphs are defined only in R^3")
    n = len(cfg.lines)
    report = ConfigReport(cfg.dim, n, cfg.tolerance)
    edges = []
    for v in range(n):
        for w in range(v + 1, n):
            a, b = cfg.lines[v], cfg.lines[w]
            dist = line_distance(a, b)
            parallel = are_parallel(a, b)
            coplanar = bool(parallel or abs(_signed_volume(a, b)) <= DEGENERATE_TOL)
            sign = None
            if not coplanar:
                sign = chirality(a, b)
                if sign > 0:
                    edges.append((v, w))
            entry = {
                "v": v,
                "w": w,
                "distance": dist,
                "parallel": parallel,
                "coplanar": coplanar,
                "chirality": sign,
            }
            report.pairs.append(entry)
            if abs(dist - 1.0) > cfg.tolerance:
                report.distances_ok = False
            report.has_parallel = report.has_parallel or parallel
            report.has_coplanar = report.has_coplanar or coplanar
    return Graph.from_edges(n, edges), report


@dataclass
class TMatrix:
    """The pairwise orientation matrix a_vw = <x_v cross x_w, y_v - y_w>
    together with its Gram factors (y_v cross x_v, x_v) in R^6."""

    matrix: np.ndarray
    factors: np.ndarray

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def gram_residual(self) -> float:
        """Max deviation of a_vw from the split-form Gram product."""
        q, x = self.factors[:, :3], self.factors[:, 3:]
        gram = q @ x.T + x @ q.T
        return float(np.abs(self.matrix - gram).max())


def t_matrix(cfg: LineConfig) -> TMatrix:
    if cfg.dim != 3:
        raise GeometryError("the orientation matrix is defined only in R^3")
    n = len(cfg.lines)
    matrix = np.zeros((n, n))
    factors = np.zeros((n, 6))
    for v, line in enumerate(cfg.lines):
        factors[v, :3] = np.cross(line.base, line.direction)
        factors[v, 3:] = line.direction
    for v in range(n):
        for w in range(v + 1, n):
            a, b = cfg.lines[v], cfg.lines[w]
            if are_parallel(a, b):
                raise DegeneratePairError(
                    f"lines {v} and {w} are parallel; orientation matrix undefined"
                )
            matrix[v, w] = matrix[w, v] = _signed_volume(a, b)
    return TMatrix(matrix, factors)


@dataclass
class RealizationReport:
    count: int
    max_distance_deviation: float
    properties: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(p["passed"] for p in self.properties.values())

    def to_json_obj(self) -> dict:
        return {
            "count": self.count,
            "max_distance_deviation": self.max_distance_deviation,
            "passed": self.passed,
            "properties": self.properties,
        }


def check_realization(cfg: LineConfig, tol: float | None = None) -> RealizationReport:
    """Check the four numeric constraints a unit-distance realization must
    satisfy: off-diagonal entries nonzero, sign pattern equal to the
    chirality graph, at most 3 negative eigenvalues, and |a| of signature
    (1, n-1).  Raises InvalidConfigError when distances stray from 1."""
    if cfg.dim != 3:
        raise GeometryError("realization checks are defined only in R^3")
    n = len(cfg.lines)
    if n < 2:
        raise GeometryError("realization checks need at least 2 lines")
    tol = cfg.tolerance if tol is None else tol
    deviation = 0.0
    for v in range(n):
        for w in range(v + 1, n):
            dist = line_distance(cfg.lines[v], cfg.lines[w])
            deviation = max(deviation, abs(dist - 1.0))
            if abs(dist - 1.0) > tol:
                raise InvalidConfigError(
                    f"lines {v} and {w} at distance {dist}, not 1 within {tol}"
                )
    tmat = t_matrix(cfg)
    graph, _ = chirality_graph(cfg)
    report = RealizationReport(n, deviation)

    offdiag = np.abs(tmat.matrix[~np.eye(n, dtype=bool)])
    margin = float(offdiag.min()) if offdiag.size else math.inf
    report.properties["offdiagonal_nonzero"] = {
        "passed": bool(margin > DEGENERATE_TOL),
        "min_abs_entry": margin,
    }

    mismatches = [
        (v, w)
        for v in range(n)
        for w in range(v + 1, n)
        if (tmat.matrix[v, w] > 0) != graph.has_edge(v, w)
    ]
    report.properties["sign_pattern_matches_chirality"] = {
        "passed": not mismatches,
        "mismatched_pairs": mismatches,
    }

    sig_t = signature_of_array(tmat.matrix)
    report.properties["at_most_3_negative_eigenvalues"] = {
        "passed": sig_t.n_minus <= 3,
        "signature": list(sig_t.as_tuple()),
    }

    sig_abs = signature_of_array(np.abs(tmat.matrix))
    report.properties["abs_matrix_signature"] = {
        "passed": sig_abs.as_tuple() == (1, 0, n - 1),
        "signature": list(sig_abs.as_tuple()),
        "expected": [1, 0, n - 1],
    }
    return report


# -- equidistant family in higher dimensions ---------------------------------


def _unit_simplex(m: int) -> np.ndarray:
    """m points in R^(m-1) with all pairwise distances exactly 1."""
    if m == 1:
        return np.zeros((1, 0))
    points = np.eye(m) / math.sqrt(2.0)
    basis, _ = np.linalg.qr((points[1:] - points[0]).T)
    return (points - points[0]) @ basis


def lower_bound_config(n: int) -> LineConfig:
    """2n-2 pairwise unit-distance lines in R^n.

    Take the n-1 vertices of a unit simplex in R^(n-2); over vertex i put
    two parallel planar lines at distance 1 with direction angle
    i*pi/(n-1).  Lines over the same vertex are parallel at distance 1;
    lines over different vertices have directions spanning the whole plane
    factor, so their distance collapses to the simplex edge length 1.
    """
    if n < 3:
        raise GeometryError("the construction needs dimension n >= 3")
    m = n - 1
    simplex = _unit_simplex(m)
    lines = []
    for i in range(m):
        theta = i * math.pi / m
        direction = np.concatenate([np.zeros(n - 2), [math.cos(theta), math.sin(theta)]])
        normal = np.concatenate([np.zeros(n - 2), [-math.sin(theta), math.cos(theta)]])
        anchor = np.concatenate([simplex[i], [0.0, 0.0]])
        lines.append(DirectedLine(anchor, direction))
        lines.append(DirectedLine(anchor + normal, direction))
    return LineConfig(n, tuple(lines))
