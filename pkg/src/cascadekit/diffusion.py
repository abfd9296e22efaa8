"""Percolation-style cascade dynamics on a signed graph.

Each news item carries a fitness value and a first-sharer count. Seeds
share unconditionally; in synchronous rounds the item then spreads across
homogeneous edges to neighbors whose opinion lies within the sharing
threshold of the fitness. Every user shares at most once, so the sharer
set is the threshold-restricted reachability closure of the seeds.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .graph import SignedGraph
from .rng import as_generator, as_seed_sequence
from .stats import FittedDistribution
from .trees import SharingTree, TreeNode


@dataclass(frozen=True)
class NewsItem:
    """One piece of content: fitness in [0, 1] plus a seeded sharer count."""

    id: int
    fitness: float
    first_sharer_count: int


@dataclass
class CascadeOutcome:
    """Result of diffusing one item: its sharing tree and the round count."""

    news_id: int
    tree: SharingTree
    rounds: int


def sample_first_sharers(dist: FittedDistribution, m: int, seed) -> np.ndarray:
    """Draw m first-sharer counts, truncated to their integer part.

    Truncation can produce zeros, which model never-shared items.
    """
    if m < 0:
        raise ParameterError(f"news count must be >= 0, got {m}")
    draws = dist.sample(m, as_generator(seed))
    counts = np.floor(draws).astype(np.int64)
    if np.any(counts < 0):
        raise ParameterError("first-sharer distribution produced negative draws")
    return counts


def sample_news(count: int, dist: FittedDistribution, seed, max_count: int | None = None) -> list[NewsItem]:
    """Build a news batch: uniform fitness values plus sampled sharer counts.

    max_count clips each sharer count (at the node count of the target
    graph, typically), keeping heavy-tailed draws seedable.
    """
    rng = as_generator(seed)
    fitness = rng.uniform(0.0, 1.0, size=count)
    counts = sample_first_sharers(dist, count, rng)
    if max_count is not None:
        counts = np.minimum(counts, max_count)
    return [
        NewsItem(id=i, fitness=float(f), first_sharer_count=int(c))
        for i, (f, c) in enumerate(zip(fitness, counts))
    ]


def run_cascade(g: SignedGraph, news: NewsItem, delta: float, seed, _adj=None) -> CascadeOutcome:
    """Diffuse one news item and record its sharing tree.

    The first_sharer_count distinct seed nodes share at round 0 without any
    threshold check. Afterwards, every not-yet-sharing neighbor of a
    round-k sharer across a homogeneous edge shares at round k+1 iff
    |opinion - fitness| <= delta. When several round-k sharers reach the
    same new sharer, its tree parent is drawn uniformly among them. Seeds
    hang off the virtual page root (parent None).

    Raises:
        ParameterError: delta outside [0, 1] or more seeds than nodes.
    """
    if not 0.0 <= delta <= 1.0:
        raise ParameterError(f"sharing threshold must be in [0, 1], got {delta}")
    n = g.node_count
    m = news.first_sharer_count
    if m > n:
        raise ParameterError(f"cannot seed {m} first sharers in a graph of {n} nodes")
    rng = as_generator(seed)
    indptr, indices = g.adjacency(homogeneous_only=True) if _adj is None else _adj

    nodes: list[TreeNode] = []
    tree = SharingTree(news_id=news.id, category="synthetic", nodes=nodes,
                       virtual_root=True, page_sign=1)
    if m == 0:
        return CascadeOutcome(news_id=news.id, tree=tree, rounds=0)

    passes = np.abs(g.opinions - news.fitness) <= delta
    shared = np.zeros(n, dtype=bool)
    seeds = rng.choice(n, size=m, replace=False)
    shared[seeds] = True
    tree_id: dict[int, int] = {}
    for u in seeds:
        u = int(u)
        tree_id[u] = len(nodes)
        nodes.append(TreeNode(id=len(nodes), user=u, sigma=1.0, t=0, parent=None))

    frontier = [int(u) for u in seeds]
    round_k = 0
    while frontier:
        candidates: dict[int, list[int]] = {}
        for u in frontier:
            for v in indices[indptr[u]:indptr[u + 1]]:
                v = int(v)
                if not shared[v] and passes[v]:
                    candidates.setdefault(v, []).append(u)
        if not candidates:
            break
        round_k += 1
        frontier = []
        for v in sorted(candidates):
            parents = candidates[v]
            parent = parents[0] if len(parents) == 1 else parents[int(rng.integers(len(parents)))]
            shared[v] = True
            tree_id[v] = len(nodes)
            nodes.append(TreeNode(id=len(nodes), user=v, sigma=1.0, t=round_k, parent=tree_id[parent]))
            frontier.append(v)
    return CascadeOutcome(news_id=news.id, tree=tree, rounds=round_k)


def run_batch(g: SignedGraph, news_list, delta: float, seed) -> list[CascadeOutcome]:
    """Run one cascade per item with independent sub-seeds from a master seed.

    Deterministic given (graph, news list, delta, master seed); outcomes
    come back in news-list order.
    """
    ss = as_seed_sequence(seed)
    children = ss.spawn(len(news_list))
    adj = g.adjacency(homogeneous_only=True)
    return [
        run_cascade(g, item, delta, child, _adj=adj)
        for item, child in zip(news_list, children)
    ]
