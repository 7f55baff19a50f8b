"""Instance generation, the log-odds weight transform, and serialization.

Grid instances mimic segmentation problems: a hidden partition of the grid
into contiguous regions drives per-edge boundary probabilities (high across
region boundaries, low inside, with noise and occasional clutter), which
the log-odds transform turns into signed weights.  Random planar instances
come from Delaunay triangulations of random points, sparsified by removing
edges that keep the graph connected; the embedding is read directly off
the coordinates.

Weights are rounded half-to-even to five decimals and serialized as decimal
strings, so instances round-trip bit exactly.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from decimal import ROUND_HALF_EVEN, Decimal

import numpy as np
from scipy.spatial import Delaunay

from .graph import PlanarGraph, build_graph

FORMAT_VERSION = 1


class DomainError(ValueError):
    pass


class ParseError(ValueError):
    pass


@dataclass(frozen=True)
class Instance:
    graph: PlanarGraph
    theta: np.ndarray
    name: str
    metadata: dict = field(default_factory=dict)


def gpb_to_theta(gpb: float, beta: float) -> float:
    """Log-odds transform: log((1-gpb)/gpb) + beta, natural log."""
    if not (0.0 < gpb < 1.0):
        raise DomainError(f"gpb must lie strictly inside (0, 1), got {gpb}")
    return math.log((1.0 - gpb) / gpb) + beta


def round_theta(theta) -> np.ndarray:
    """Round each weight half-to-even at 1e-5 (decimal semantics)."""
    arr = np.asarray(theta, dtype=float)
    q = Decimal("0.00001")
    out = np.array(
        [float(Decimal(repr(float(x))).quantize(q, rounding=ROUND_HALF_EVEN)) for x in arr.ravel()],
        dtype=float,
    )
    return out.reshape(arr.shape)


def rotation_from_positions(vertex_count, edges, pos):
    """CCW rotation system read off vertex coordinates."""
    incident = [[] for _ in range(vertex_count)]
    for k, (u, v) in enumerate(edges):
        incident[u].append(k)
        incident[v].append(k)
    rotation = []
    for v in range(vertex_count):
        x0, y0 = pos[v]

        def angle(k):
            a, b = edges[k]
            other = b if a == v else a
            return math.atan2(pos[other][1] - y0, pos[other][0] - x0)

        rotation.append(tuple(sorted(incident[v], key=angle)))
    return tuple(rotation)


@dataclass(frozen=True)
class UniformWeights:
    """Independent uniform weights on [a, b]."""

    a: float = -1.0
    b: float = 1.0

    def sample(self, rng, graph, midpoints, regions) -> np.ndarray:
        return rng.uniform(self.a, self.b, size=graph.edge_count)


@dataclass(frozen=True)
class GpbLikeWeights:
    """Boundary-probability weights over a hidden region partition.

    Edges inside a region get low boundary probability, edges across
    regions high, both with noise; `clutter` is the fraction of interior
    edges bumped into the ambiguous range (false boundary fragments).
    theta = log((1-gpb)/gpb) + beta.
    """

    beta: float
    clutter: float = 0.05

    def sample(self, rng, graph, midpoints, regions) -> np.ndarray:
        m = graph.edge_count
        tail, head = graph.tail, graph.head
        cross = regions[tail] != regions[head]
        gpb = np.where(
            cross,
            rng.normal(0.82, 0.10, size=m),
            rng.normal(0.16, 0.07, size=m),
        )
        bump = (~cross) & (rng.random(m) < self.clutter)
        gpb[bump] = rng.uniform(0.50, 0.75, size=int(bump.sum()))
        gpb = np.clip(gpb, 0.02, 0.98)
        return np.array([gpb_to_theta(g, self.beta) for g in gpb])


def _grid_topology(width: int, height: int):
    def vid(r, c):
        return r * width + c

    edges = []
    for r in range(height):
        for c in range(width):
            if c + 1 < width:
                edges.append((vid(r, c), vid(r, c + 1)))
            if r + 1 < height:
                edges.append((vid(r, c), vid(r + 1, c)))
    pos = [(c, r) for r in range(height) for c in range(width)]
    return edges, pos


def gen_grid(width: int, height: int, weight_model, seed: int) -> Instance:
    """Grid instance with a canonical embedding; deterministic in seed."""
    if width < 2 or height < 2:
        raise ValueError("grid must be at least 2x2")
    rng = np.random.Generator(np.random.Philox(key=seed))
    edges, pos = _grid_topology(width, height)
    graph = build_graph(width * height, edges, rotation_from_positions(len(pos), edges, pos))

    n_regions = max(2, (width * height) // 45)
    seeds = rng.uniform(0.0, 1.0, size=(n_regions, 2)) * [width - 1, height - 1]
    coords = np.asarray(pos, dtype=float)
    d2 = ((coords[:, None, :] - seeds[None, :, :]) ** 2).sum(axis=2)
    regions = np.argmin(d2, axis=1)

    midpoints = (coords[graph.tail] + coords[graph.head]) / 2.0
    theta = round_theta(weight_model.sample(rng, graph, midpoints, regions))
    name = f"grid{width}x{height}-{_model_tag(weight_model)}-s{seed}"
    meta = {
        "generator": "grid",
        "width": width,
        "height": height,
        "seed": seed,
        "weight_model": _model_tag(weight_model),
    }
    return Instance(graph=graph, theta=theta, name=name, metadata=meta)


def _model_tag(model) -> str:
    if isinstance(model, UniformWeights):
        return f"uniform({model.a},{model.b})"
    if isinstance(model, GpbLikeWeights):
        return f"gpb(beta={model.beta})"
    return type(model).__name__


def gen_random_planar(n: int, seed: int) -> Instance:
    """Random connected planar instance: sparsified Delaunay triangulation."""
    if n < 3:
        raise ValueError("need at least 3 vertices")
    rng = np.random.Generator(np.random.Philox(key=seed))
    while True:
        points = rng.random((n, 2))
        try:
            tri = Delaunay(points)
        except Exception:  # degenerate (collinear) sample: redraw
            continue
        if len(np.unique(tri.simplices)) == n:
            break
    pairs = set()
    for simplex in tri.simplices:
        for i in range(3):
            a, b = int(simplex[i]), int(simplex[(i + 1) % 3])
            pairs.add((min(a, b), max(a, b)))
    edges = sorted(pairs)

    target = int(rng.integers(n - 1, max(n, len(edges)) + 1))
    order = rng.permutation(len(edges))
    keep = [True] * len(edges)
    n_kept = len(edges)

    def connected_without(skip):
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        comp = n
        for j, (u, v) in enumerate(edges):
            if not keep[j] or j == skip:
                continue
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
                comp -= 1
        return comp == 1

    for j in order:
        if n_kept <= target:
            break
        if connected_without(int(j)):
            keep[int(j)] = False
            n_kept -= 1

    final_edges = [e for j, e in enumerate(edges) if keep[j]]
    graph = build_graph(n, final_edges, rotation_from_positions(n, final_edges, points))
    theta = round_theta(rng.uniform(-1.0, 1.0, size=len(final_edges)))
    return Instance(
        graph=graph,
        theta=theta,
        name=f"planar{n}-s{seed}",
        metadata={"generator": "random_planar", "n": n, "seed": seed},
    )


# -- serialization --------------------------------------------------------


def write_instance(instance: Instance, path) -> None:
    doc = {
        "format_version": FORMAT_VERSION,
        "name": instance.name,
        "vertex_count": instance.graph.vertex_count,
        "edges": [
            [int(u), int(v), repr(float(t))]
            for (u, v), t in zip(instance.graph.edges, instance.theta)
        ],
        "rotation": [list(r) for r in instance.graph.rotation],
        "metadata": instance.metadata,
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")


def read_instance(path) -> Instance:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: not valid JSON: {exc}") from exc
    for key in ("vertex_count", "edges", "rotation"):
        if key not in doc:
            raise ParseError(f"{path}: missing required field '{key}'")
    try:
        edges = [(int(u), int(v)) for u, v, _ in doc["edges"]]
        theta = np.array([float(t) for _, _, t in doc["edges"]], dtype=float)
        rotation = tuple(tuple(int(e) for e in r) for r in doc["rotation"])
        vertex_count = int(doc["vertex_count"])
    except (TypeError, ValueError, KeyError) as exc:
        raise ParseError(f"{path}: malformed field: {exc}") from exc
    graph = build_graph(vertex_count, edges, rotation)
    return Instance(
        graph=graph,
        theta=theta,
        name=str(doc.get("name", "unnamed")),
        metadata=dict(doc.get("metadata", {})),
    )
