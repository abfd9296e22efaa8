"""Signed small-world substrate for cascade simulations.

Builds Watts-Strogatz networks (ring lattice plus one-endpoint rewiring),
assigns per-node opinions, and labels edges homogeneous or non-homogeneous
to hit a target homogeneous-link fraction exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace

import numpy as np

from .errors import ParameterError
from .rng import as_generator


@dataclass(eq=False)
class SignedGraph:
    """Undirected simple graph with opinions on nodes and signs on edges.

    Attributes:
        node_count: number of nodes n; nodes are labeled 0..n-1.
        ring_degree: even lattice degree z; edge count is always n*z/2.
        rewiring_probability: the r used at construction time.
        opinions: float array of shape (n,), each value in [0, 1].
        edges: int array of shape (M, 2); no self loops, no duplicates.
        homogeneous: bool array of shape (M,); True marks a homogeneous edge.
    """

    node_count: int
    ring_degree: int
    rewiring_probability: float
    opinions: np.ndarray
    edges: np.ndarray
    homogeneous: np.ndarray

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def homogeneous_fraction(self) -> float:
        return float(np.mean(self.homogeneous)) if self.edge_count else 0.0

    def degrees(self) -> np.ndarray:
        """Degree of every node, via a tally of edge endpoints."""
        return np.bincount(self.edges.ravel(), minlength=self.node_count)

    def adjacency(self, homogeneous_only: bool = False) -> tuple[np.ndarray, np.ndarray]:
        """CSR-style (indptr, indices) neighbor arrays.

        With homogeneous_only=True only homogeneous edges contribute,
        which is the view cascade propagation uses.
        """
        edges = self.edges[self.homogeneous] if homogeneous_only else self.edges
        heads = np.concatenate([edges[:, 0], edges[:, 1]])
        tails = np.concatenate([edges[:, 1], edges[:, 0]])
        order = np.argsort(heads, kind="stable")
        indptr = np.zeros(self.node_count + 1, dtype=np.int64)
        np.cumsum(np.bincount(heads, minlength=self.node_count), out=indptr[1:])
        return indptr, tails[order]


def generate_small_world(n: int, z: int, r: float, seed) -> SignedGraph:
    """Generate a Watts-Strogatz small-world graph with uniform opinions.

    Starts from a ring lattice where every node connects to its z nearest
    neighbors (z/2 on each side), then visits each lattice edge once in
    canonical order and, with probability r, re-targets its far endpoint to
    a uniformly random node, resampling to avoid self loops and duplicate
    edges. Edge count n*z/2 is preserved exactly. All edges start out
    flagged homogeneous; use label_edges to set a different fraction.

    Args:
        n: node count, must exceed z.
        z: even ring degree, at least 2.
        r: rewiring probability in [0, 1].
        seed: int seed, SeedSequence, or Generator.

    Raises:
        ParameterError: z odd, z < 2, z >= n, or r outside [0, 1].
    """
    if z < 2 or z % 2 != 0:
        raise ParameterError(f"ring degree must be even and >= 2, got {z}")
    if n <= z:
        raise ParameterError(f"need n > z, got n={n}, z={z}")
    if not 0.0 <= r <= 1.0:
        raise ParameterError(f"rewiring probability must be in [0, 1], got {r}")

    rng = as_generator(seed)
    opinions = rng.uniform(0.0, 1.0, size=n)

    # Ring lattice in canonical order: distance j = 1..z/2, then node index.
    half = z // 2
    heads = np.tile(np.arange(n), half)
    offsets = np.repeat(np.arange(1, half + 1), n)
    tails = (heads + offsets) % n
    edge_list: list[tuple[int, int]] = list(zip(heads.tolist(), tails.tolist()))

    neighbors: list[set[int]] = [set() for _ in range(n)]
    for u, v in edge_list:
        neighbors[u].add(v)
        neighbors[v].add(u)

    rewire = rng.uniform(size=len(edge_list)) < r
    for k in np.nonzero(rewire)[0]:
        u, v = edge_list[k]
        if len(neighbors[u]) >= n - 1:
            continue  # u already adjacent to everyone else; nothing to rewire to
        w = int(rng.integers(n))
        while w == u or w in neighbors[u]:
            w = int(rng.integers(n))
        neighbors[u].remove(v)
        neighbors[v].remove(u)
        neighbors[u].add(w)
        neighbors[w].add(u)
        edge_list[k] = (u, w)

    edges = np.asarray(edge_list, dtype=np.int64)
    return SignedGraph(
        node_count=n,
        ring_degree=z,
        rewiring_probability=float(r),
        opinions=opinions,
        edges=edges,
        homogeneous=np.ones(len(edges), dtype=bool),
    )


def label_edges(g: SignedGraph, phi_hl: float, seed) -> SignedGraph:
    """Return a copy of g with round(phi_hl * M) edges flagged homogeneous.

    Flagged edges are chosen uniformly without replacement. Labelings under
    the same seed are nested across phi_hl values (a fixed random edge order
    is truncated at the target count), which supports monotonicity checks.
    """
    if not 0.0 <= phi_hl <= 1.0:
        raise ParameterError(f"phi_hl must be in [0, 1], got {phi_hl}")
    rng = as_generator(seed)
    m = g.edge_count
    k = round(phi_hl * m)
    order = rng.permutation(m)
    flags = np.zeros(m, dtype=bool)
    flags[order[:k]] = True
    return replace(g, homogeneous=flags)


def graph_to_dict(g: SignedGraph) -> dict:
    """JSON-ready document: {n, z, r, nodes:[{id, opinion}], edges:[{u, v, homogeneous}]}."""
    return {
        "n": g.node_count,
        "z": g.ring_degree,
        "r": g.rewiring_probability,
        "nodes": [{"id": i, "opinion": float(w)} for i, w in enumerate(g.opinions)],
        "edges": [
            {"u": int(u), "v": int(v), "homogeneous": bool(h)}
            for (u, v), h in zip(g.edges, g.homogeneous)
        ],
    }


def graph_from_dict(doc: dict) -> SignedGraph:
    n = int(doc["n"])
    nodes = sorted(doc["nodes"], key=lambda d: d["id"])
    if len(nodes) != n or [d["id"] for d in nodes] != list(range(n)):
        raise ParameterError("node list must cover ids 0..n-1 exactly")
    opinions = np.array([float(d["opinion"]) for d in nodes])
    if np.any((opinions < 0) | (opinions > 1)):
        raise ParameterError("opinions must lie in [0, 1]")
    edges = np.array([[int(d["u"]), int(d["v"])] for d in doc["edges"]], dtype=np.int64)
    edges = edges.reshape(-1, 2)
    if len(edges) and (np.any(edges < 0) or np.any(edges >= n)):
        raise ParameterError("edge endpoint out of range")
    if len(edges) and np.any(edges[:, 0] == edges[:, 1]):
        raise ParameterError("self loop in edge list")
    canon = {tuple(sorted(e)) for e in edges.tolist()}
    if len(canon) != len(edges):
        raise ParameterError("duplicate edge in edge list")
    homogeneous = np.array([bool(d["homogeneous"]) for d in doc["edges"]], dtype=bool)
    return SignedGraph(
        node_count=n,
        ring_degree=int(doc["z"]),
        rewiring_probability=float(doc["r"]),
        opinions=opinions,
        edges=edges,
        homogeneous=homogeneous,
    )


def save_graph(g: SignedGraph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(graph_to_dict(g), fh)


def load_graph(path) -> SignedGraph:
    with open(path, encoding="utf-8") as fh:
        return graph_from_dict(json.load(fh))
