"""
Stable trees: dual graphs of boundary strata.

A stable tree is stored as its split system, the set of 2-block partitions
of the leaves cut out by its edges. Two trees are isomorphic (respecting
labels, and the involution for real trees) exactly when their split systems
agree, so equality and hashing are syntactic. Graph realizations are
produced on demand for JSON output and vertex queries.
"""
import logging
from collections import deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .exceptions import ArityError, InvolutionError, LabelError, UnstableTreeError
from .labels import (
    MINUS,
    PLUS,
    REAL,
    LabelSet,
    Leaf,
    Partition2,
    compatible,
    conjugate_glue_leaf_maps,
    glue_label_maps,
    real_glue_leaf_maps,
    real_leaf_set,
    restrict,
)

logger = logging.getLogger(__name__)

# Conjugate pairs of the second factor of a real-real gluing are appended
# after the pairs of the first factor.
PAIR_LABEL_CONVENTION = "append"


@dataclass(frozen=True)
class TreeGraph:
    """An explicit vertex/edge realization of a stable tree."""

    vertices: Tuple[int, ...]
    edges: Tuple[Tuple[int, int], ...]
    leaves: Mapping[Hashable, int]
    involution: Optional[Mapping[int, int]] = None

    def valence(self, vertex: int) -> int:
        incident = sum(1 for u, v in self.edges if vertex in (u, v))
        return incident + sum(1 for v in self.leaves.values() if v == vertex)


class _SplitTree:
    __slots__ = ("_ground", "_splits")

    def __init__(self, ground: FrozenSet[Hashable], splits: Iterable[Partition2]):
        splits = frozenset(splits)
        for split in splits:
            if not isinstance(split, Partition2):
                raise TypeError("splits must be Partition2 values, not type {}".format(type(split)))
            if split.ground != ground:
                raise LabelError("split {} does not partition the leaves of the tree".format(split))
            if split.min_block_size < 2:
                raise UnstableTreeError("split {} leaves a vertex of valence below 3".format(split))
        ordered = sorted(splits, key=Partition2.sort_key)
        for n, first in enumerate(ordered):
            for second in ordered[n + 1:]:
                if not compatible(first, second):
                    raise UnstableTreeError("splits {} and {} cannot both be edges".format(first, second))
        self._ground = ground
        self._splits = splits

    # PROPERTIES
    @property
    def ground(self) -> FrozenSet[Hashable]:
        return self._ground

    @property
    def splits(self) -> FrozenSet[Partition2]:
        return self._splits

    @property
    def n_edges(self) -> int:
        return len(self._splits)

    @property
    def n_vertices(self) -> int:
        return len(self._splits) + 1

    def sorted_splits(self) -> List[Partition2]:
        return sorted(self._splits, key=Partition2.sort_key)

    def __eq__(self, other):
        if type(self) is not type(other):
            return NotImplemented
        return self._ground == other._ground and self._splits == other._splits

    def __hash__(self):
        return hash((type(self).__name__, self._ground, self._splits))

    # GRAPH REALIZATION
    def _clusters(self) -> Tuple[Hashable, List[FrozenSet[Hashable]], List[int], Dict[Hashable, int]]:
        root = min(self._ground)
        rest = self._ground - {root}
        clusters = sorted(
            (s.block_without(root) for s in self._splits),
            key=lambda c: (-len(c), tuple(sorted(c))),
        )
        nodes = [rest] + clusters
        parents = [-1]
        for n, cluster in enumerate(nodes[1:], start=1):
            parent = min(
                (m for m in range(n) if cluster < nodes[m]),
                key=lambda m: len(nodes[m]),
            )
            parents.append(parent)
        leaves = {root: 0}
        for leaf in rest:
            leaves[leaf] = min(
                (m for m in range(len(nodes)) if leaf in nodes[m]),
                key=lambda m: len(nodes[m]),
            )
        return root, nodes, parents, leaves

    def _branches(self) -> List[FrozenSet[FrozenSet[Hashable]]]:
        root, nodes, parents, leaves = self._clusters()
        branches = []
        for n, node in enumerate(nodes):
            parts = {self._ground - node}
            parts.update(nodes[m] for m in range(len(nodes)) if parents[m] == n)
            parts.update(frozenset({leaf}) for leaf, v in leaves.items() if v == n and leaf != root)
            branches.append(frozenset(parts))
        return branches

    def _graph(self, with_involution: bool = False) -> TreeGraph:
        root, nodes, parents, leaves = self._clusters()
        edges = tuple((parents[n], n) for n in range(1, len(nodes)))
        involution = None
        if with_involution:
            branches = self._branches()
            index = {b: n for n, b in enumerate(branches)}
            involution = {}
            for n, parts in enumerate(branches):
                image = frozenset(frozenset(a.conjugate() for a in part) for part in parts)
                involution[n] = index[image]
        return TreeGraph(tuple(range(len(nodes))), edges, leaves, involution)


class ComplexStableTree(_SplitTree):
    """
    Dual graph of a stratum of the moduli space of ``n_labels`` marked points.

    Parameters
    ----------
    n_labels : int
        Number of marked points, at least 3.
    splits : iterable of Partition2
        One partition of [n_labels] per edge.
    """

    __slots__ = ("_n",)

    def __init__(self, n_labels: int, splits: Iterable[Partition2] = ()):
        if not isinstance(n_labels, int) or isinstance(n_labels, bool):
            raise TypeError("n_labels must be an integer, not type {}".format(type(n_labels)))
        if n_labels < 3:
            raise UnstableTreeError("a stable tree needs at least 3 labels, not {}".format(n_labels))
        super().__init__(LabelSet(n_labels).labels, splits)
        self._n = n_labels

    @property
    def n_labels(self) -> int:
        return self._n

    def sort_key(self) -> tuple:
        return ("complex", self._n, tuple(s.sort_key() for s in self.sorted_splits()))

    def to_graph(self) -> TreeGraph:
        return self._graph()

    def relabel(self, mapping: Mapping[int, int]) -> "ComplexStableTree":
        """Apply a permutation of [n_labels]."""
        if set(mapping) != set(self._ground) or set(mapping.values()) != set(self._ground):
            raise LabelError("relabeling must be a permutation of the labels")
        return ComplexStableTree(self._n, (s.map_labels(mapping) for s in self._splits))

    def __repr__(self):
        return "ComplexStableTree({}, [{}])".format(self._n, ", ".join(str(s) for s in self.sorted_splits()))


class RealStableTree(_SplitTree):
    """
    Dual graph of a stratum of the real moduli space with ``n_real`` real
    points and ``n_pairs`` conjugate pairs.

    The split system must be invariant under complex conjugation of the
    leaves; the involution on vertices is the one induced by it.
    """

    __slots__ = ("_n_real", "_n_pairs")

    def __init__(self, n_real: int, n_pairs: int, splits: Iterable[Partition2] = ()):
        if not isinstance(n_real, int) or isinstance(n_real, bool):
            raise TypeError("n_real must be an integer, not type {}".format(type(n_real)))
        if not isinstance(n_pairs, int) or isinstance(n_pairs, bool):
            raise TypeError("n_pairs must be an integer, not type {}".format(type(n_pairs)))
        if n_real < 0 or n_pairs < 0 or n_real + 2 * n_pairs < 3:
            raise UnstableTreeError(
                "a real stable tree needs k + 2l >= 3, got k={} and l={}".format(n_real, n_pairs)
            )
        super().__init__(real_leaf_set(n_real, n_pairs), splits)
        for split in self._splits:
            if split.conjugate() not in self._splits:
                raise InvolutionError("split {} has no conjugate edge".format(split))
        self._n_real = n_real
        self._n_pairs = n_pairs

    # PROPERTIES
    @property
    def n_real(self) -> int:
        return self._n_real

    @property
    def n_pairs(self) -> int:
        return self._n_pairs

    def sort_key(self) -> tuple:
        return (
            "real",
            self._n_real,
            self._n_pairs,
            tuple(s.sort_key() for s in self.sorted_splits()),
        )

    def to_graph(self) -> TreeGraph:
        return self._graph(with_involution=True)

    def vertex_leaves(self) -> List[Tuple[FrozenSet[Leaf], bool]]:
        """Leaves carried by each vertex and whether the involution fixes it."""
        graph = self.to_graph()
        result = []
        for vertex in graph.vertices:
            carried = frozenset(leaf for leaf, v in graph.leaves.items() if v == vertex)
            result.append((carried, graph.involution[vertex] == vertex))
        return result

    def relabel_pairs(self, mapping: Mapping[int, int]) -> "RealStableTree":
        """Permute the conjugate pair labels."""
        pairs = set(range(1, self._n_pairs + 1))
        if set(mapping) != pairs or set(mapping.values()) != pairs:
            raise LabelError("pair relabeling must be a permutation of [{}]".format(self._n_pairs))

        def move(leaf: Leaf) -> Leaf:
            return leaf if leaf.kind == REAL else Leaf(leaf.kind, mapping[leaf.index])

        return RealStableTree(self._n_real, self._n_pairs, (s.map_labels(move) for s in self._splits))

    def __repr__(self):
        return "RealStableTree({}, {}, [{}])".format(
            self._n_real, self._n_pairs, ", ".join(str(s) for s in self.sorted_splits())
        )


def one_vertex_tree(ell: int) -> ComplexStableTree:
    return ComplexStableTree(ell)


def one_vertex_real_tree(k: int, ell: int) -> RealStableTree:
    return RealStableTree(k, ell)


def edge_partitions(tree: ComplexStableTree) -> FrozenSet[Partition2]:
    """The partitions of [n] cut out by the edges of ``tree``."""
    if not isinstance(tree, ComplexStableTree):
        raise TypeError("tree must be a ComplexStableTree, not type {}".format(type(tree)))
    return tree.splits


# GLUING
def _graft(
    outer: _SplitTree,
    outer_map: Mapping[Hashable, Hashable],
    insertions: Sequence[Tuple[Hashable, _SplitTree, Hashable, Mapping[Hashable, Hashable]]],
) -> Tuple[FrozenSet[Hashable], List[Partition2]]:
    """
    Graft inner trees onto leaves of ``outer``.

    ``outer_map`` relabels the leaves of ``outer`` that survive. Each
    insertion (g, inner, root, inner_map) replaces leaf g of ``outer`` by
    ``inner`` attached through its leaf ``root``; ``inner_map`` relabels
    the remaining leaves of ``inner``.
    """
    blocks = {g: frozenset(inner_map.values()) for g, _, _, inner_map in insertions}
    expected = outer.ground - set(blocks)
    if set(outer_map) != expected:
        raise LabelError("outer relabeling does not cover the surviving leaves")
    ground = frozenset(outer_map.values()).union(*blocks.values())

    def expand(block):
        image = set()
        for leaf in block:
            if leaf in blocks:
                image |= blocks[leaf]
            else:
                image.add(outer_map[leaf])
        return frozenset(image)

    splits = [Partition2.from_blocks(expand(s.block_j), expand(s.block_k)) for s in outer.splits]
    for g, inner, root, inner_map in insertions:
        if set(inner_map) != inner.ground - {root}:
            raise LabelError("inner relabeling does not cover the leaves of the inserted tree")
        for split in inner.splits:
            side = frozenset(inner_map[a] for a in split.block_without(root))
            splits.append(Partition2.from_blocks(side, ground - side))
        splits.append(Partition2.from_blocks(blocks[g], ground - blocks[g]))
    return ground, splits


def _require(tree, cls, name):
    if not isinstance(tree, cls):
        raise TypeError("{} must be a {}, not type {}".format(name, cls.__name__, type(tree)))


def glue_complex(first: ComplexStableTree, i: int, second: ComplexStableTree) -> ComplexStableTree:
    """Identify leaf ``i`` of ``first`` with the last leaf of ``second``."""
    _require(first, ComplexStableTree, "first")
    _require(second, ComplexStableTree, "second")
    k = first.n_labels - 1
    ell = second.n_labels - 1
    map_first, map_second = glue_label_maps(k, ell, i)
    _, splits = _graft(first, map_first.as_dict(), [(i, second, second.n_labels, map_second.as_dict())])
    return ComplexStableTree(k + ell, splits)


def glue_real_real(first: RealStableTree, i: int, second: RealStableTree) -> RealStableTree:
    """
    Identify real leaf ``i`` of ``first`` with the last real leaf of ``second``.

    ``first`` has k+1 real leaves and l pairs, ``second`` k2+1 real leaves and
    l2 pairs; the result has k+k2 real leaves and l+l2 pairs.
    """
    _require(first, RealStableTree, "first")
    _require(second, RealStableTree, "second")
    k, ell = first.n_real - 1, first.n_pairs
    k2, ell2 = second.n_real - 1, second.n_pairs
    if k < 0 or k2 < 0:
        raise ArityError("both factors need a real leaf to glue along")
    if k + ell < 2 or k2 + ell2 < 2:
        raise ArityError(
            "real gluing needs k+l >= 2 on both factors, got {} and {}".format(k + ell, k2 + ell2)
        )
    map_first, map_second = real_glue_leaf_maps(k, ell, k2, ell2, i)
    _, splits = _graft(
        first,
        map_first.as_dict(),
        [(Leaf(REAL, i), second, Leaf(REAL, k2 + 1), map_second.as_dict())],
    )
    return RealStableTree(k + k2, ell + ell2, splits)


def glue_real_complex(real: RealStableTree, i: int, complex_tree: ComplexStableTree) -> RealStableTree:
    """
    Attach ``complex_tree`` at the ``+`` leaf of pair ``i`` and its mirror
    copy at the ``-`` leaf.
    """
    _require(real, RealStableTree, "real")
    _require(complex_tree, ComplexStableTree, "complex_tree")
    m = complex_tree.n_labels - 1
    map_real, map_plus, map_minus = conjugate_glue_leaf_maps(real.n_real, real.n_pairs, i, m)
    root = complex_tree.n_labels
    _, splits = _graft(
        real,
        map_real.as_dict(),
        [
            (Leaf(PLUS, i), complex_tree, root, map_plus.as_dict()),
            (Leaf(MINUS, i), complex_tree, root, map_minus.as_dict()),
        ],
    )
    return RealStableTree(real.n_real, real.n_pairs + m - 1, splits)


# MULTI-SITE GRAFTS
def graft_complex_all(outer: ComplexStableTree, inners: Sequence[Optional[ComplexStableTree]]) -> ComplexStableTree:
    """
    Graft one tree into every input of ``outer`` at once. None stands for
    the unit. Inputs of the i-th inner tree occupy a consecutive block.
    """
    _require(outer, ComplexStableTree, "outer")
    k = outer.n_labels - 1
    if len(inners) != k:
        raise ArityError("expected {} inner trees, got {}".format(k, len(inners)))
    sizes = [1 if t is None else t.n_labels - 1 for t in inners]
    total = sum(sizes)
    outer_map = {k + 1: total + 1}
    insertions = []
    offset = 0
    for slot, (inner, size) in enumerate(zip(inners, sizes), start=1):
        if inner is None:
            outer_map[slot] = offset + 1
        else:
            _require(inner, ComplexStableTree, "inner")
            insertions.append((slot, inner, inner.n_labels, {j: offset + j for j in range(1, size + 1)}))
        offset += size
    _, splits = _graft(outer, outer_map, insertions)
    return ComplexStableTree(total + 1, splits)


def graft_real_pairs(outer: RealStableTree, inners: Sequence[Optional[ComplexStableTree]]) -> RealStableTree:
    """
    Graft complex trees into the first ``len(inners)`` conjugate pairs of
    ``outer``. Remaining pairs keep their order after the new blocks.
    """
    _require(outer, RealStableTree, "outer")
    r, ell = outer.n_real, outer.n_pairs
    if len(inners) > ell:
        raise ArityError("expected at most {} inner trees, got {}".format(ell, len(inners)))
    outer_map = {Leaf(REAL, j): Leaf(REAL, j) for j in range(1, r + 1)}
    insertions = []
    offset = 0
    for p, inner in enumerate(inners, start=1):
        if inner is None:
            outer_map[Leaf(PLUS, p)] = Leaf(PLUS, offset + 1)
            outer_map[Leaf(MINUS, p)] = Leaf(MINUS, offset + 1)
            offset += 1
            continue
        _require(inner, ComplexStableTree, "inner")
        size = inner.n_labels - 1
        for kind in (PLUS, MINUS):
            insertions.append(
                (Leaf(kind, p), inner, inner.n_labels, {j: Leaf(kind, offset + j) for j in range(1, size + 1)})
            )
        offset += size
    done = len(inners)
    for p in range(done + 1, ell + 1):
        for kind in (PLUS, MINUS):
            outer_map[Leaf(kind, p)] = Leaf(kind, offset + p - done)
    _, splits = _graft(outer, outer_map, insertions)
    return RealStableTree(r, offset + ell - done, splits)


def graft_real_reals(outer: RealStableTree, inners: Sequence[Optional[RealStableTree]]) -> RealStableTree:
    """
    Graft real trees into the real inputs 1..k of ``outer`` (k+1 real leaves).

    Pairs of the inner trees are appended in the order of the right to left
    expansion: the last input first.
    """
    _require(outer, RealStableTree, "outer")
    k, ell = outer.n_real - 1, outer.n_pairs
    if len(inners) != k:
        raise ArityError("expected {} inner trees, got {}".format(k, len(inners)))
    real_sizes = [1 if t is None else t.n_real - 1 for t in inners]
    pair_sizes = [0 if t is None else t.n_pairs for t in inners]
    total = sum(real_sizes)
    outer_map = {Leaf(REAL, k + 1): Leaf(REAL, total + 1)}
    for p in range(1, ell + 1):
        outer_map[Leaf(PLUS, p)] = Leaf(PLUS, p)
        outer_map[Leaf(MINUS, p)] = Leaf(MINUS, p)
    insertions = []
    offset = 0
    for slot, inner in enumerate(inners, start=1):
        if inner is None:
            outer_map[Leaf(REAL, slot)] = Leaf(REAL, offset + 1)
        else:
            _require(inner, RealStableTree, "inner")
            pair_offset = ell + sum(pair_sizes[slot:])
            inner_map = {Leaf(REAL, a): Leaf(REAL, offset + a) for a in range(1, inner.n_real)}
            for b in range(1, inner.n_pairs + 1):
                inner_map[Leaf(PLUS, b)] = Leaf(PLUS, pair_offset + b)
                inner_map[Leaf(MINUS, b)] = Leaf(MINUS, pair_offset + b)
            insertions.append((Leaf(REAL, slot), inner, Leaf(REAL, inner.n_real), inner_map))
        offset += real_sizes[slot - 1]
    _, splits = _graft(outer, outer_map, insertions)
    return RealStableTree(total + 1, ell + sum(pair_sizes), splits)


# FORGETFUL MAPS
def forget_stabilize(tree: ComplexStableTree, subset: Iterable[int]) -> ComplexStableTree:
    """Forget the leaves outside ``subset``, stabilize and relabel by order."""
    _require(tree, ComplexStableTree, "tree")
    subset = frozenset(subset)
    if not subset <= tree.ground:
        raise LabelError("subset is not inside [{}]".format(tree.n_labels))
    if len(subset) < 3:
        raise UnstableTreeError("at least 3 labels must remain, not {}".format(len(subset)))
    relabel = {a: n for n, a in enumerate(sorted(subset), start=1)}
    splits = set()
    for split in tree.splits:
        kept = restrict(split, subset)
        if kept is not None:
            splits.add(kept.map_labels(relabel))
    return ComplexStableTree(len(subset), splits)


def forget_real_stabilize(tree: RealStableTree, reals: Iterable[int], pairs: Iterable[int]) -> RealStableTree:
    """Real analogue of :func:`forget_stabilize`, keeping the given real points and pairs."""
    _require(tree, RealStableTree, "tree")
    reals = sorted(set(reals))
    pairs = sorted(set(pairs))
    relabel = {Leaf(REAL, j): Leaf(REAL, n) for n, j in enumerate(reals, start=1)}
    for n, p in enumerate(pairs, start=1):
        relabel[Leaf(PLUS, p)] = Leaf(PLUS, n)
        relabel[Leaf(MINUS, p)] = Leaf(MINUS, n)
    subset = frozenset(relabel)
    if not subset <= tree.ground:
        raise LabelError("kept leaves are not leaves of the tree")
    splits = set()
    for split in tree.splits:
        kept = restrict(split, subset)
        if kept is not None:
            splits.add(kept.map_labels(relabel))
    return RealStableTree(len(reals), len(pairs), splits)


# GRAPH INPUT
def _splits_from_graph(vertices, edges, leaves) -> List[FrozenSet[Hashable]]:
    vertices = list(vertices)
    if len(set(vertices)) != len(vertices):
        raise UnstableTreeError("vertex ids are not unique")
    known = set(vertices)
    adjacency = {v: [] for v in vertices}
    for u, v in edges:
        if u not in known or v not in known:
            raise UnstableTreeError("edge ({}, {}) uses an unknown vertex".format(u, v))
        if u == v:
            raise UnstableTreeError("edge ({}, {}) is a loop".format(u, v))
        adjacency[u].append(v)
        adjacency[v].append(u)
    if not vertices:
        raise UnstableTreeError("a tree needs at least one vertex")
    if len(edges) != len(vertices) - 1:
        raise UnstableTreeError("a tree on {} vertices has {} edges, not {}".format(
            len(vertices), len(vertices) - 1, len(edges)))
    seen = {vertices[0]}
    queue = deque([vertices[0]])
    while queue:
        u = queue.popleft()
        for v in adjacency[u]:
            if v not in seen:
                seen.add(v)
                queue.append(v)
    if len(seen) != len(vertices):
        raise UnstableTreeError("the graph is not connected")
    for leaf, v in leaves.items():
        if v not in known:
            raise UnstableTreeError("leaf {} sits on an unknown vertex {}".format(leaf, v))
    for v in vertices:
        valence = len(adjacency[v]) + sum(1 for w in leaves.values() if w == v)
        if valence < 3:
            raise UnstableTreeError("vertex {} has valence {} < 3".format(v, valence))

    sides = []
    for u, v in edges:
        component = {u}
        queue = deque([u])
        while queue:
            a = queue.popleft()
            for b in adjacency[a]:
                if (a, b) in ((u, v), (v, u)) or b in component:
                    continue
                component.add(b)
                queue.append(b)
        sides.append(frozenset(leaf for leaf, w in leaves.items() if w in component))
    return sides


def complex_tree_from_graph(vertices, edges, leaves: Mapping[int, int]) -> ComplexStableTree:
    """Build a tree from an explicit graph, validating shape and stability."""
    labels = set(leaves)
    n = len(labels)
    if labels != set(range(1, n + 1)):
        raise LabelError("leaf labels must be exactly 1..{}".format(n))
    if n < 3:
        raise UnstableTreeError("a stable tree needs at least 3 labels, not {}".format(n))
    ground = frozenset(labels)
    sides = _splits_from_graph(vertices, edges, leaves)
    return ComplexStableTree(n, (Partition2.from_block(ground, side) for side in sides))


def real_tree_from_graph(
    vertices,
    edges,
    involution: Mapping[int, int],
    real_leaves: Mapping[int, int],
    pairs: Mapping[int, Tuple[int, int]],
) -> RealStableTree:
    """Build a real tree from an explicit graph with an involution."""
    n_real = len(real_leaves)
    n_pairs = len(pairs)
    if set(real_leaves) != set(range(1, n_real + 1)):
        raise LabelError("real leaf labels must be exactly 1..{}".format(n_real))
    if set(pairs) != set(range(1, n_pairs + 1)):
        raise LabelError("pair labels must be exactly 1..{}".format(n_pairs))
    vertices = list(vertices)
    if set(involution) != set(vertices) or set(involution.values()) != set(vertices):
        raise InvolutionError("the involution must be a permutation of the vertices")
    for v in vertices:
        if involution[involution[v]] != v:
            raise InvolutionError("the involution does not square to the identity at vertex {}".format(v))
    edge_set = {frozenset(e) for e in edges}
    for u, v in edges:
        if frozenset((involution[u], involution[v])) not in edge_set:
            raise InvolutionError("the involution does not map edge ({}, {}) to an edge".format(u, v))
    leaves = {}
    for j, v in real_leaves.items():
        if v in involution and involution[v] != v:
            raise InvolutionError("real leaf {} sits on a vertex swapped by the involution".format(j))
        leaves[Leaf(REAL, j)] = v
    for p, (plus, minus) in pairs.items():
        if plus in involution and involution[plus] != minus:
            raise InvolutionError("the involution does not exchange the leaves of pair {}".format(p))
        leaves[Leaf(PLUS, p)] = plus
        leaves[Leaf(MINUS, p)] = minus
    if n_real + 2 * n_pairs < 3:
        raise UnstableTreeError("a real stable tree needs k + 2l >= 3")
    ground = real_leaf_set(n_real, n_pairs)
    sides = _splits_from_graph(vertices, edges, leaves)
    return RealStableTree(n_real, n_pairs, (Partition2.from_block(ground, side) for side in sides))


# RANDOM TREES
def _random_split_system(rng: np.random.Generator, leaves: Sequence[Hashable], attempts: int, mirror: bool):
    ground = frozenset(leaves)
    splits = set()
    count = len(leaves)
    if count < 4:
        return splits
    for _ in range(attempts):
        size = int(rng.integers(2, count - 1))
        chosen = rng.choice(count, size=size, replace=False)
        candidate = Partition2.from_block(ground, (leaves[int(n)] for n in chosen))
        new = {candidate, candidate.conjugate()} if mirror else {candidate}
        if all(compatible(a, b) for a in new for b in splits | new):
            splits |= new
    return splits


def random_complex_tree(rng: np.random.Generator, n_labels: int, attempts: Optional[int] = None) -> ComplexStableTree:
    """A random stable tree on ``n_labels`` leaves built from a random split system."""
    leaves = list(range(1, n_labels + 1))
    splits = _random_split_system(rng, leaves, attempts or 2 * n_labels, mirror=False)
    return ComplexStableTree(n_labels, splits)


def random_real_tree(rng: np.random.Generator, n_real: int, n_pairs: int, attempts: Optional[int] = None) -> RealStableTree:
    """A random conjugation-invariant stable tree."""
    leaves = sorted(real_leaf_set(n_real, n_pairs))
    splits = _random_split_system(rng, leaves, attempts or 2 * len(leaves), mirror=True)
    return RealStableTree(n_real, n_pairs, splits)
