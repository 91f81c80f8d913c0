"""
Ring presentations of the moduli spaces.

``keel_presentation`` presents the cohomology of the complex moduli space
by boundary divisors D{J|K}. ``krasnov_presentation`` presents the mod 2
cohomology of the real points by the real divisors RD{J|K}, with the same
combinatorics in degree 1. The module also holds the forgetful pullbacks,
the omega classes, the map from strata to classes and the bookkeeping of
the real boundary submanifolds RE, RH and RD.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from itertools import combinations, product
from typing import FrozenSet, Iterable, List, Optional

from .exactalg import CoefficientField, Generator, QuotientRing, RingElement
from .exceptions import LabelError, UnstableTreeError
from .labels import MINUS, PLUS, REAL, Leaf, Partition2, compatible, make_partition2, restrict
from .trees import ComplexStableTree, RealStableTree, edge_partitions

logger = logging.getLogger(__name__)

KEEL_PREFIX = "D"
KRASNOV_PREFIX = "RD"


def divisor_partitions(ell: int) -> List[Partition2]:
    """All partitions of [ell] with both blocks of size at least 2, in canonical order."""
    others = range(2, ell + 1)
    result = []
    for size in range(1, ell - 2):
        for rest in combinations(others, size):
            result.append(make_partition2(ell, (1,) + rest))
    return sorted(result, key=Partition2.sort_key)


def _pullback(q: QuotientRing, ell: int, subset: FrozenSet[int], target: Partition2) -> RingElement:
    result = q.zero
    for generator in q.generators:
        if restrict(generator.key, subset) == target:
            result = result + q.gen(generator.key)
    return result


def _check_pullback_args(ell: int, subset: Iterable[int], target: Partition2) -> FrozenSet[int]:
    subset = frozenset(subset)
    if len(subset) != 4:
        raise LabelError("the forgetful map keeps exactly 4 labels, not {}".format(len(subset)))
    if not all(isinstance(a, int) and 1 <= a <= ell for a in subset):
        raise LabelError("labels {} are not inside [{}]".format(sorted(subset), ell))
    if not isinstance(target, Partition2):
        raise TypeError("target must be a Partition2, not type {}".format(type(target)))
    if target.ground != subset or target.min_block_size != 2:
        raise LabelError("{} is not a divisor of the 4-point space on {}".format(target, sorted(subset)))
    return subset


def _build(ell: int, prefix: str, degree: int, field: CoefficientField, socle: int, name: str) -> QuotientRing:
    partitions = divisor_partitions(ell)
    q = QuotientRing(
        [Generator(p, degree, prefix) for p in partitions],
        field=field,
        socle_degree=socle,
        name=name,
    )
    for n, first in enumerate(partitions):
        for second in partitions[n + 1:]:
            if not compatible(first, second):
                q.add_relation(q.gen(first) * q.gen(second))
    for a, b, c, d in combinations(range(1, ell + 1), 4):
        subset = frozenset((a, b, c, d))
        sides = [
            Partition2.from_blocks((a, b), (c, d)),
            Partition2.from_blocks((a, c), (b, d)),
            Partition2.from_blocks((a, d), (b, c)),
        ]
        pulled = [_pullback(q, ell, subset, side) for side in sides]
        for first, second in zip(pulled, pulled[1:]):
            relation = first - second
            if not relation.is_zero:
                q.add_relation(relation)
    logger.debug("built %s with %d generators and %d relations", name, len(q.generators), len(q.relations))
    return q


def keel_presentation(ell: int, field: CoefficientField = CoefficientField.RATIONAL) -> QuotientRing:
    """
    The cohomology ring of the complex moduli space with ``ell`` marked points.

    Generators are the boundary divisors in degree 2. Relations are the
    products of incompatible divisors and the equalities of the three
    pullbacks of a point along each forgetful map to 4 points.
    """
    if not isinstance(ell, int) or isinstance(ell, bool):
        raise TypeError("ell must be an integer, not type {}".format(type(ell)))
    if ell < 3:
        raise LabelError("the moduli space needs at least 3 marked points, not {}".format(ell))
    if not isinstance(field, CoefficientField):
        raise TypeError("field must be a CoefficientField, not type {}".format(type(field)))
    return _keel(ell, field)


@lru_cache(maxsize=None)
def _keel(ell: int, field: CoefficientField) -> QuotientRing:
    return _build(ell, KEEL_PREFIX, 2, field, 2 * (ell - 3), "keel({}, {})".format(ell, field.value))


@lru_cache(maxsize=None)
def krasnov_presentation(k: int) -> QuotientRing:
    """The mod 2 cohomology ring of the real moduli space with ``k`` real points."""
    if not isinstance(k, int) or isinstance(k, bool):
        raise TypeError("k must be an integer, not type {}".format(type(k)))
    if k < 3:
        raise LabelError("the real moduli space needs at least 3 real points, not {}".format(k))
    return _build(k, KRASNOV_PREFIX, 1, CoefficientField.GF2, k - 3, "krasnov({})".format(k))


def pullback_boundary(
    ell: int,
    subset: Iterable[int],
    target: Partition2,
    field: CoefficientField = CoefficientField.RATIONAL,
) -> RingElement:
    """Pull back the point ``target`` of the 4-point space along the map keeping ``subset``."""
    subset = _check_pullback_args(ell, subset, target)
    return _pullback(keel_presentation(ell, field), ell, subset, target)


def omega_class(k: int, a: int, b: int, c: int, d: int) -> RingElement:
    """The mod 2 class of the pullback of a point along the map keeping a, b, c, d."""
    labels = (a, b, c, d)
    if len(set(labels)) != 4:
        raise LabelError("omega needs four distinct labels, got {}".format(labels))
    target = Partition2.from_blocks((a, b), (c, d))
    subset = _check_pullback_args(k, labels, target)
    return _pullback(krasnov_presentation(k), k, subset, target)


def strata_class(tree: ComplexStableTree, ring: Optional[QuotientRing] = None) -> RingElement:
    """The product of the divisors of the edges of ``tree``."""
    if ring is None:
        ring = keel_presentation(tree.n_labels)
    result = ring.one
    for split in sorted(edge_partitions(tree), key=Partition2.sort_key):
        result = result * ring.gen(split)
    return result


def real_strata_class(tree: RealStableTree, ring: Optional[QuotientRing] = None) -> RingElement:
    """The mod 2 class of a stratum of the real moduli space without conjugate pairs."""
    if not isinstance(tree, RealStableTree):
        raise TypeError("tree must be a RealStableTree, not type {}".format(type(tree)))
    if tree.n_pairs:
        raise LabelError("only trees without conjugate pairs have a class in the Krasnov ring")
    if ring is None:
        ring = krasnov_presentation(tree.n_real)
    result = ring.one
    for split in tree.sorted_splits():
        result = result * ring.gen(split.map_labels(lambda leaf: leaf.index))
    return result


def complex_dimension(ell: int) -> int:
    return ell - 3


def real_dimension(k: int, ell: int) -> int:
    return k + 2 * ell - 3


def is_orientable_space(k: int, ell: int) -> bool:
    """The real moduli space is orientable iff k = 0 or k + 2l <= 4."""
    if not all(isinstance(v, int) and not isinstance(v, bool) for v in (k, ell)):
        return False
    if k < 0 or ell < 0 or k + 2 * ell < 3:
        return False
    return k == 0 or k + 2 * ell <= 4


# REAL BOUNDARY SUBMANIFOLDS
class IndexKind(Enum):
    RE = "RE"
    RH = "RH"
    RD2 = "RD2"
    RDGEN = "RDgen"


@dataclass(frozen=True)
class RealSubmanifoldIndex:
    """
    Index of a real boundary submanifold.

    ``pairs_j``/``pairs_k`` (and ``reals_j``/``reals_k`` for RH) are the two
    sides, stored in canonical order; ``pairs_i`` are the pairs of the
    central component of an RD index.
    """

    kind: IndexKind
    pairs_j: FrozenSet[int] = frozenset()
    pairs_k: FrozenSet[int] = frozenset()
    reals_j: FrozenSet[int] = frozenset()
    reals_k: FrozenSet[int] = frozenset()
    pairs_i: FrozenSet[int] = frozenset()

    def __post_init__(self):
        for name in ("pairs_j", "pairs_k", "reals_j", "reals_k", "pairs_i"):
            object.__setattr__(self, name, frozenset(getattr(self, name)))
        first = (tuple(sorted(self.reals_j)), tuple(sorted(self.pairs_j)))
        second = (tuple(sorted(self.reals_k)), tuple(sorted(self.pairs_k)))
        if second < first:
            object.__setattr__(self, "pairs_j", frozenset(second[1]))
            object.__setattr__(self, "pairs_k", frozenset(first[1]))
            object.__setattr__(self, "reals_j", frozenset(second[0]))
            object.__setattr__(self, "reals_k", frozenset(first[0]))

    @classmethod
    def re(cls, j: Iterable[int], k: Iterable[int]) -> "RealSubmanifoldIndex":
        return cls(IndexKind.RE, frozenset(j), frozenset(k))

    @classmethod
    def rh(cls, j: Iterable[int], k: Iterable[int], reals_j: Iterable[int] = (), reals_k: Iterable[int] = ()) -> "RealSubmanifoldIndex":
        return cls(IndexKind.RH, frozenset(j), frozenset(k), frozenset(reals_j), frozenset(reals_k))

    @classmethod
    def rd(cls, i: Iterable[int], j: Iterable[int], k: Iterable[int], general: bool = False) -> "RealSubmanifoldIndex":
        kind = IndexKind.RDGEN if general else IndexKind.RD2
        return cls(kind, frozenset(j), frozenset(k), pairs_i=frozenset(i))

    @property
    def codimension(self) -> int:
        return 2 if self.kind in (IndexKind.RD2, IndexKind.RDGEN) else 1

    def __str__(self):
        def block(labels):
            return "{" + ",".join(str(a) for a in sorted(labels)) + "}"

        if self.kind is IndexKind.RH and (self.reals_j or self.reals_k):
            return "RH_{{({},{}),({},{})}}".format(
                block(self.reals_j), block(self.pairs_j), block(self.reals_k), block(self.pairs_k)
            )
        if self.kind in (IndexKind.RD2, IndexKind.RDGEN):
            return "RD_{{{};{},{}}}".format(block(self.pairs_i), block(self.pairs_j), block(self.pairs_k))
        return "{}_{{{},{}}}".format(self.kind.value, block(self.pairs_j), block(self.pairs_k))


def validate_real_index(idx: RealSubmanifoldIndex, k: int, ell: int) -> bool:
    """Whether ``idx`` names a boundary submanifold of the real space with k real points and l pairs."""
    if not isinstance(idx, RealSubmanifoldIndex):
        return False
    if not all(isinstance(v, int) and not isinstance(v, bool) for v in (k, ell)):
        return False
    if k < 0 or ell < 0 or k + 2 * ell < 3:
        return False
    pairs = set(range(1, ell + 1))
    reals = set(range(1, k + 1))
    sides = (idx.pairs_i, idx.pairs_j, idx.pairs_k)
    if sum(len(s) for s in sides) != ell or set().union(*sides) != pairs:
        return False
    if idx.kind is IndexKind.RH:
        if len(idx.reals_j) + len(idx.reals_k) != k or (idx.reals_j | idx.reals_k) != reals:
            return False
        if idx.pairs_i:
            return False
        return (
            len(idx.reals_j) + 2 * len(idx.pairs_j) >= 2
            and len(idx.reals_k) + 2 * len(idx.pairs_k) >= 2
        )
    if idx.reals_j or idx.reals_k:
        return False
    if idx.kind is IndexKind.RE:
        return k == 0 and not idx.pairs_i and ell >= 2
    if len(idx.pairs_j) + len(idx.pairs_k) < 2:
        return False
    if idx.kind is IndexKind.RD2:
        return k == 0 and bool(idx.pairs_i)
    return k >= 1


def real_index_tree(idx: RealSubmanifoldIndex, k: int, ell: int) -> RealStableTree:
    """The dual graph of the generic curve of the submanifold ``idx``."""
    def leaves(kind, labels):
        return {Leaf(kind, a) for a in labels}

    ground = frozenset(Leaf(REAL, j) for j in range(1, k + 1)) | {
        Leaf(s, p) for p in range(1, ell + 1) for s in (PLUS, MINUS)
    }
    if idx.kind is IndexKind.RE:
        sides = [leaves(PLUS, idx.pairs_j) | leaves(MINUS, idx.pairs_k)]
        expected = 1
    elif idx.kind is IndexKind.RH:
        sides = [leaves(REAL, idx.reals_j) | leaves(PLUS, idx.pairs_j) | leaves(MINUS, idx.pairs_j)]
        expected = 1
    else:
        sides = [
            leaves(PLUS, idx.pairs_j) | leaves(MINUS, idx.pairs_k),
            leaves(MINUS, idx.pairs_j) | leaves(PLUS, idx.pairs_k),
        ]
        expected = 2
    if any(not side <= ground for side in sides):
        raise LabelError("index {} uses labels outside the space".format(idx))
    splits = [Partition2.from_block(ground, side) for side in sides if side]
    tree = RealStableTree(k, ell, splits)
    if tree.n_edges != expected:
        raise UnstableTreeError("the central component of {} is unstable".format(idx))
    return tree


def enumerate_real_indices(kind: IndexKind, k: int, ell: int) -> List[RealSubmanifoldIndex]:
    """All valid indices of the given kind, in a deterministic order."""
    found = set()
    pair_labels = range(1, ell + 1)
    if kind is IndexKind.RH:
        for real_sides in product((0, 1), repeat=k):
            for pair_sides in product((0, 1), repeat=ell):
                idx = RealSubmanifoldIndex.rh(
                    [p for p, s in zip(pair_labels, pair_sides) if s == 0],
                    [p for p, s in zip(pair_labels, pair_sides) if s == 1],
                    [j for j, s in zip(range(1, k + 1), real_sides) if s == 0],
                    [j for j, s in zip(range(1, k + 1), real_sides) if s == 1],
                )
                found.add(idx)
    elif kind is IndexKind.RE:
        for pair_sides in product((0, 1), repeat=ell):
            found.add(RealSubmanifoldIndex.re(
                [p for p, s in zip(pair_labels, pair_sides) if s == 0],
                [p for p, s in zip(pair_labels, pair_sides) if s == 1],
            ))
    else:
        for pair_sides in product((0, 1, 2), repeat=ell):
            found.add(RealSubmanifoldIndex.rd(
                [p for p, s in zip(pair_labels, pair_sides) if s == 0],
                [p for p, s in zip(pair_labels, pair_sides) if s == 1],
                [p for p, s in zip(pair_labels, pair_sides) if s == 2],
                general=kind is IndexKind.RDGEN,
            ))
    valid = [idx for idx in found if validate_real_index(idx, k, ell)]
    return sorted(valid, key=lambda idx: (
        sorted(idx.pairs_i), sorted(idx.reals_j), sorted(idx.pairs_j), sorted(idx.reals_k), sorted(idx.pairs_k)
    ))
