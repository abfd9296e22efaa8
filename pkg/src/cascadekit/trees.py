"""Sharing-tree data model and per-cascade metrics.

A sharing tree records who reshared a news item from whom. Trees either
hang off a virtual page root (the publishing page, excluded from all node
counts) or are rooted at a real user. Metrics cover size, height, lifetime,
edge homogeneity, and root-to-leaf path classification.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field

from .errors import (
    OrphanParentError,
    SigmaRangeError,
    TimestampOrderError,
    TreeCycleError,
    TreeSchemaError,
    UndefinedMetricError,
)

CATEGORIES = ("science", "conspiracy", "troll", "synthetic")

# Sign the publishing page contributes to the first edge of a path. Science
# pages sit at the negative end of the polarization axis (sigma measures
# conspiracy-likeness), troll content is parody conspiracy.
DEFAULT_PAGE_SIGNS = {"science": -1, "conspiracy": 1, "troll": 1, "synthetic": 1}

PATH_HOMOGENEOUS = "homogeneous"
PATH_K_MINUS_1 = "k_minus_1_homogeneous"
PATH_NON_HOMOGENEOUS = "non_homogeneous"


@dataclass(frozen=True, slots=True)
class TreeNode:
    """One share event: tree-local id, sharing user, polarization, time, parent id."""

    id: int
    user: int | str
    sigma: float
    t: float
    parent: int | None


@dataclass
class SharingTree:
    """Oriented tree of successive shares of one news item.

    When virtual_root is True the (implicit) page node is the root: every
    node with parent None is a first sharer at depth 1. When False, exactly
    one node has parent None and is itself the root user at depth 0.
    """

    news_id: int | str
    category: str
    nodes: list[TreeNode] = field(default_factory=list)
    virtual_root: bool = True
    page_sign: int = 1

    def node_by_id(self) -> dict[int, TreeNode]:
        return {nd.id: nd for nd in self.nodes}

    def roots(self) -> list[TreeNode]:
        return [nd for nd in self.nodes if nd.parent is None]

    def leaves(self) -> list[TreeNode]:
        parents = {nd.parent for nd in self.nodes if nd.parent is not None}
        return [nd for nd in self.nodes if nd.id not in parents]

    def validate(self) -> None:
        """Check every structural invariant; raise a typed error on the first violation."""
        if self.category not in CATEGORIES:
            raise TreeSchemaError(f"tree {self.news_id}: unknown category {self.category!r}")
        if self.page_sign not in (-1, 1):
            raise TreeSchemaError(f"tree {self.news_id}: page_sign must be -1 or 1")
        by_id = {}
        for nd in self.nodes:
            if nd.id in by_id:
                raise TreeSchemaError(f"tree {self.news_id}: duplicate node id {nd.id}")
            by_id[nd.id] = nd
        if not self.virtual_root:
            n_roots = len(self.roots())
            if n_roots != 1:
                raise TreeSchemaError(
                    f"tree {self.news_id}: real-rooted tree needs exactly one parentless node, found {n_roots}"
                )
        for nd in self.nodes:
            if not -1.0 <= nd.sigma <= 1.0:
                raise SigmaRangeError(f"tree {self.news_id}: node {nd.id} has sigma {nd.sigma} outside [-1, 1]")
            if nd.parent is not None and nd.parent not in by_id:
                raise OrphanParentError(f"tree {self.news_id}: node {nd.id} references missing parent {nd.parent}")
        # Cycle check by walking parent links with tri-state marks.
        state: dict[int, int] = {}  # 1 = on current walk, 2 = cleared
        for nd in self.nodes:
            path = []
            cur = nd
            while state.get(cur.id, 0) != 2:
                if state.get(cur.id) == 1:
                    raise TreeCycleError(f"tree {self.news_id}: cycle through node {cur.id}")
                state[cur.id] = 1
                path.append(cur)
                if cur.parent is None:
                    break
                cur = by_id[cur.parent]
            for seen in path:
                state[seen.id] = 2
        for nd in self.nodes:
            if nd.parent is not None and nd.t < by_id[nd.parent].t:
                raise TimestampOrderError(
                    f"tree {self.news_id}: node {nd.id} shares at t={nd.t} before its parent"
                )


@dataclass(frozen=True)
class UserProfile:
    """Like counts per content class, from which polarization derives."""

    user_id: int | str
    likes_conspiracy: int
    likes_science: int

    @property
    def rho(self) -> float:
        total = self.likes_conspiracy + self.likes_science
        if total <= 0:
            raise UndefinedMetricError(f"user {self.user_id}: polarization undefined with zero likes")
        return self.likes_conspiracy / total


def user_polarization(profile: UserProfile) -> float:
    """Map the conspiracy-like fraction rho in [0, 1] onto sigma = 2*rho - 1."""
    return 2.0 * profile.rho - 1.0


def edge_homogeneity(sigma_i: float, sigma_j: float) -> float:
    """Product of the two endpoint polarizations; the edge is homogeneous iff > 0."""
    return sigma_i * sigma_j


def tree_size(tree: SharingTree) -> int:
    """Number of sharer nodes (the virtual page root never counts)."""
    return len(tree.nodes)


def _depths(tree: SharingTree) -> dict[int, int]:
    by_id = tree.node_by_id()
    base = 1 if tree.virtual_root else 0
    depth: dict[int, int] = {}
    for nd in tree.nodes:
        chain = []
        cur = nd
        while cur.id not in depth and cur.parent is not None:
            chain.append(cur)
            cur = by_id[cur.parent]
        d = depth.setdefault(cur.id, base) if cur.parent is None else depth[cur.id]
        for item in reversed(chain):
            d += 1
            depth[item.id] = d
    return depth


def tree_height(tree: SharingTree) -> int:
    """Maximum path length from the root; first sharers under a virtual root sit at depth 1."""
    return max(_depths(tree).values(), default=0)


def lifetime(tree: SharingTree) -> float:
    """Time between the first and last share (hours for data, steps for simulation)."""
    if not tree.nodes:
        raise UndefinedMetricError(f"tree {tree.news_id}: lifetime undefined for an empty tree")
    times = [nd.t for nd in tree.nodes]
    return max(times) - min(times)


def mean_edge_homogeneity(tree: SharingTree) -> float:
    """Mean sigma_i*sigma_j over sharer-to-sharer tree edges (virtual-root edges excluded)."""
    by_id = tree.node_by_id()
    values = [
        edge_homogeneity(by_id[nd.parent].sigma, nd.sigma)
        for nd in tree.nodes
        if nd.parent is not None
    ]
    if not values:
        raise UndefinedMetricError(f"tree {tree.news_id}: no edges between polarized nodes")
    return math.fsum(values) / len(values)


@dataclass(frozen=True)
class SharingPath:
    """Root-to-leaf path summary: length in edges plus homogeneity class."""

    leaf_id: int
    length: int
    kind: str


def path_length_profile(tree: SharingTree) -> list[SharingPath]:
    """Classify every root-to-leaf path.

    Edge signs are endpoint sigma products; under a virtual root the first
    edge uses the page sign in place of a user polarization. A path is
    homogeneous when all its edge signs are positive and (k-1)-homogeneous
    when only the first edge is discordant.
    """
    by_id = tree.node_by_id()
    out = []
    for leaf in tree.leaves():
        signs = []
        cur = leaf
        while cur.parent is not None:
            parent = by_id[cur.parent]
            signs.append(edge_homogeneity(parent.sigma, cur.sigma))
            cur = parent
        if tree.virtual_root:
            signs.append(edge_homogeneity(float(tree.page_sign), cur.sigma))
        signs.reverse()
        if all(s > 0 for s in signs):
            kind = PATH_HOMOGENEOUS
        elif signs and signs[0] <= 0 and all(s > 0 for s in signs[1:]):
            kind = PATH_K_MINUS_1
        else:
            kind = PATH_NON_HOMOGENEOUS
        out.append(SharingPath(leaf_id=leaf.id, length=len(signs), kind=kind))
    return out


def sharing_paths(tree: SharingTree) -> int:
    """Number of root-to-leaf paths, i.e. the number of leaves."""
    return len(tree.leaves())


def homogeneous_paths(tree: SharingTree) -> int:
    """Number of root-to-leaf paths whose edges are all homogeneous."""
    return sum(1 for p in path_length_profile(tree) if p.kind == PATH_HOMOGENEOUS)


# --- serialization -----------------------------------------------------------

def tree_to_dict(tree: SharingTree) -> dict:
    return {
        "news_id": tree.news_id,
        "category": tree.category,
        "root": {"virtual": tree.virtual_root, "page_sign": tree.page_sign},
        "nodes": [
            {"id": nd.id, "user": nd.user, "sigma": nd.sigma, "t": nd.t, "parent": nd.parent}
            for nd in tree.nodes
        ],
    }


def tree_from_dict(doc: dict) -> SharingTree:
    """Parse and validate one tree document; raises typed validation errors."""
    try:
        root = doc["root"]
        nodes = [
            TreeNode(
                id=int(nd["id"]),
                user=nd["user"],
                sigma=float(nd["sigma"]),
                t=float(nd["t"]) if isinstance(nd["t"], float) else nd["t"],
                parent=None if nd["parent"] is None else int(nd["parent"]),
            )
            for nd in doc["nodes"]
        ]
        tree = SharingTree(
            news_id=doc["news_id"],
            category=str(doc["category"]),
            nodes=nodes,
            virtual_root=bool(root["virtual"]),
            page_sign=int(root["page_sign"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise TreeSchemaError(f"malformed tree document: {exc}") from exc
    tree.validate()
    return tree


def trees_to_json(trees: list[SharingTree]) -> str:
    return json.dumps([tree_to_dict(t) for t in trees])


def trees_from_json(text: str) -> list[SharingTree]:
    try:
        docs = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TreeSchemaError(f"malformed JSON: {exc}") from exc
    if not isinstance(docs, list):
        raise TreeSchemaError("tree batch must be a JSON array")
    return [tree_from_dict(doc) for doc in docs]


def save_trees(trees: list[SharingTree], path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(trees_to_json(trees))


def load_trees(path) -> list[SharingTree]:
    with open(path, encoding="utf-8") as fh:
        return trees_from_json(fh.read())


# --- metric export -----------------------------------------------------------

METRIC_COLUMNS = (
    "news_id",
    "category",
    "size",
    "height",
    "lifetime",
    "mean_homogeneity",
    "paths",
    "homo_paths",
)


def metrics_row(tree: SharingTree) -> dict:
    """All per-tree metrics; undefined ones come back as None."""
    row = {
        "news_id": tree.news_id,
        "category": tree.category,
        "size": tree_size(tree),
        "height": tree_height(tree),
        "paths": sharing_paths(tree),
        "homo_paths": homogeneous_paths(tree),
    }
    for name, fn in (("lifetime", lifetime), ("mean_homogeneity", mean_edge_homogeneity)):
        try:
            row[name] = fn(tree)
        except UndefinedMetricError:
            row[name] = None
    return {col: row[col] for col in METRIC_COLUMNS}


def csv_cell(value):
    """Blank for None; repr for floats so they round-trip at full precision."""
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return value


def write_metrics_csv(trees: list[SharingTree], path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(METRIC_COLUMNS)
        for tree in trees:
            row = metrics_row(tree)
            writer.writerow([csv_cell(row[c]) for c in METRIC_COLUMNS])
