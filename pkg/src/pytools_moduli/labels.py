"""
Label-set combinatorics.

Boundary divisors of the moduli spaces are indexed by unordered 2-block
partitions of the marked points. This module holds those partitions, the
compatibility and restriction rules between them and the relabeling maps
used by every gluing immersion.
"""
from dataclasses import dataclass
from typing import Callable, Dict, FrozenSet, Hashable, Iterable, Iterator, Mapping, NamedTuple, Optional, Tuple, Union

from .exceptions import LabelError, SlotError

REAL = "r"
PLUS = "+"
MINUS = "-"
_KINDS = (REAL, PLUS, MINUS)


def _check_int(name: str, value) -> None:
    if not isinstance(value, int) or isinstance(value, bool):
        raise TypeError("{} must be an integer, not type {}".format(name, type(value)))


class Leaf(NamedTuple):
    """A leaf of a real tree: a real point ``r`` or one point of a conjugate pair."""

    kind: str
    index: int

    def __str__(self):
        if self.kind == REAL:
            return "r{}".format(self.index)
        return "{}{}".format(self.index, self.kind)

    @property
    def is_real(self) -> bool:
        return self.kind == REAL

    def conjugate(self) -> "Leaf":
        if self.kind == PLUS:
            return Leaf(MINUS, self.index)
        if self.kind == MINUS:
            return Leaf(PLUS, self.index)
        return self


def make_leaf(kind: str, index: int) -> Leaf:
    if kind not in _KINDS:
        raise LabelError("leaf kind must be one of {}, not {!r}".format(_KINDS, kind))
    _check_int("index", index)
    if index < 1:
        raise LabelError("leaf index must be positive, not {}".format(index))
    return Leaf(kind, index)


def real_leaf_set(n_real: int, n_pairs: int) -> FrozenSet[Leaf]:
    """All leaves of a real curve with ``n_real`` real points and ``n_pairs`` pairs."""
    _check_int("n_real", n_real)
    _check_int("n_pairs", n_pairs)
    if n_real < 0 or n_pairs < 0:
        raise LabelError("leaf counts must be non-negative")
    leaves = {Leaf(REAL, j) for j in range(1, n_real + 1)}
    for p in range(1, n_pairs + 1):
        leaves.add(Leaf(PLUS, p))
        leaves.add(Leaf(MINUS, p))
    return frozenset(leaves)


@dataclass(frozen=True)
class LabelSet:
    """The label set [size] = {1, ..., size}."""

    size: int

    def __post_init__(self):
        _check_int("size", self.size)
        if self.size < 1:
            raise LabelError("a label set needs at least one label, not {}".format(self.size))

    @property
    def labels(self) -> FrozenSet[int]:
        return frozenset(range(1, self.size + 1))

    def __iter__(self) -> Iterator[int]:
        return iter(range(1, self.size + 1))

    def __len__(self) -> int:
        return self.size

    def __contains__(self, label) -> bool:
        return isinstance(label, int) and not isinstance(label, bool) and 1 <= label <= self.size


@dataclass(frozen=True)
class Partition2:
    """
    An unordered 2-block partition of a finite set of sortable labels.

    The block holding the smallest label is always ``block_j``, so two
    partitions with the same blocks compare equal. Build instances through
    :meth:`from_blocks` or :func:`make_partition2`.
    """

    block_j: FrozenSet[Hashable]
    block_k: FrozenSet[Hashable]

    def __post_init__(self):
        if not isinstance(self.block_j, frozenset) or not isinstance(self.block_k, frozenset):
            raise TypeError("blocks must be frozensets")
        if not self.block_j:
            raise LabelError("the first block of a partition cannot be empty")
        if self.block_j & self.block_k:
            raise LabelError(
                "blocks {} and {} are not disjoint".format(
                    _format_block(self.block_j), _format_block(self.block_k)
                )
            )
        if self.block_k and min(self.block_k) < min(self.block_j):
            raise LabelError("blocks are not in canonical order, use Partition2.from_blocks")

    @classmethod
    def from_blocks(cls, first: Iterable, second: Iterable) -> "Partition2":
        first = frozenset(first)
        second = frozenset(second)
        if not first or (second and min(second) < min(first)):
            first, second = second, first
        return cls(first, second)

    @classmethod
    def from_block(cls, ground: Iterable, block: Iterable) -> "Partition2":
        ground = frozenset(ground)
        block = frozenset(block)
        if not block <= ground:
            raise LabelError("block {} is not inside the ground set".format(_format_block(block)))
        return cls.from_blocks(block, ground - block)

    # PROPERTIES
    @property
    def ground(self) -> FrozenSet[Hashable]:
        return self.block_j | self.block_k

    @property
    def blocks(self) -> Tuple[FrozenSet[Hashable], FrozenSet[Hashable]]:
        return (self.block_j, self.block_k)

    @property
    def min_block_size(self) -> int:
        return min(len(self.block_j), len(self.block_k))

    def sort_key(self) -> Tuple[tuple, tuple]:
        return (tuple(sorted(self.block_j)), tuple(sorted(self.block_k)))

    def block_containing(self, label) -> FrozenSet[Hashable]:
        if label in self.block_j:
            return self.block_j
        if label in self.block_k:
            return self.block_k
        raise LabelError("label {} is not in the ground set".format(label))

    def block_without(self, label) -> FrozenSet[Hashable]:
        """The block that does not contain ``label``."""
        return self.block_k if label in self.block_j else self.block_j

    # RELABELING
    def map_labels(self, mapping: Union[Mapping, Callable]) -> "Partition2":
        lookup = mapping.__getitem__ if isinstance(mapping, Mapping) else mapping
        return Partition2.from_blocks(
            (lookup(a) for a in self.block_j), (lookup(b) for b in self.block_k)
        )

    def conjugate(self) -> "Partition2":
        """Apply the complex conjugation of a real curve to every leaf."""
        return self.map_labels(Leaf.conjugate)

    def __str__(self):
        return "{{{}|{}}}".format(
            ",".join(str(a) for a in sorted(self.block_j)),
            ",".join(str(b) for b in sorted(self.block_k)),
        )


def _format_block(block) -> str:
    return "{" + ",".join(str(a) for a in sorted(block)) + "}"


def make_partition2(ell: int, block: Iterable[int], divisor: bool = True) -> Partition2:
    """
    Build the canonical partition {J, [ell] - J}.

    Parameters
    ----------
    ell : int
        Size of the label set.
    block : iterable of int
        The block J.
    divisor : bool
        Require both blocks to have at least two labels.

    Raises
    ------
    LabelError
        If J has labels outside [ell] or violates the divisor condition.
    """
    ground = LabelSet(ell)
    block = frozenset(block)
    outside = [a for a in block if a not in ground]
    if outside:
        raise LabelError(
            "labels {} are outside [{}]".format(", ".join(repr(a) for a in outside), ell)
        )
    complement = ground.labels - block
    if divisor and (len(block) < 2 or len(complement) < 2):
        raise LabelError(
            "divisor blocks need at least two labels each, got J={} and K={}".format(
                _format_block(block), _format_block(complement)
            )
        )
    return Partition2.from_blocks(block, complement)


def compatible(p: Partition2, q: Partition2) -> bool:
    """True iff the divisors of ``p`` and ``q`` meet, i.e. one block intersection is empty."""
    if not isinstance(p, Partition2) or not isinstance(q, Partition2):
        raise TypeError("compatible expects two Partition2 values")
    if p.ground != q.ground:
        raise LabelError("partitions {} and {} live on different ground sets".format(p, q))
    return any(not (a & b) for a in p.blocks for b in q.blocks)


def restrict(p: Partition2, subset: Iterable) -> Optional[Partition2]:
    """
    Restrict ``p`` to ``subset`` along the forgetful morphism.

    Returns None when one side keeps fewer than two labels; such divisors
    dominate the smaller moduli space.
    """
    subset = frozenset(subset)
    if not subset <= p.ground:
        raise LabelError("{} is not a subset of the ground set of {}".format(_format_block(subset), p))
    first = p.block_j & subset
    second = p.block_k & subset
    if len(first) < 2 or len(second) < 2:
        return None
    return Partition2.from_blocks(first, second)


@dataclass(frozen=True)
class LabelMap:
    """
    Injective relabeling of the non-node leaves of one gluing factor.

    ``pairs`` lists (source, target) assignments in source order; the node
    leaves of the factor are the ones left out.
    """

    source_arity: int
    target_arity: int
    pairs: Tuple[Tuple[Hashable, Hashable], ...]

    def __post_init__(self):
        targets = [t for _, t in self.pairs]
        if len(set(targets)) != len(targets):
            raise LabelError("label map is not injective")
        sources = [s for s, _ in self.pairs]
        if len(set(sources)) != len(sources):
            raise LabelError("label map assigns a source label twice")

    def as_dict(self) -> Dict[Hashable, Hashable]:
        return dict(self.pairs)

    def __call__(self, label):
        for source, target in self.pairs:
            if source == label:
                return target
        raise LabelError("label {} is not in the domain of the map".format(label))

    def domain(self) -> FrozenSet[Hashable]:
        return frozenset(s for s, _ in self.pairs)

    def image(self) -> FrozenSet[Hashable]:
        return frozenset(t for _, t in self.pairs)


def _label_map(source_arity: int, target_arity: int, assignment: Dict) -> LabelMap:
    return LabelMap(source_arity, target_arity, tuple(sorted(assignment.items())))


def glue_label_maps(k: int, ell: int, i: int) -> Tuple[LabelMap, LabelMap]:
    """
    Relabeling maps of the complex gluing at slot ``i``.

    The first factor has labels 1..k+1 and loses label ``i`` to the node; the
    second has labels 1..ell+1 and loses label ell+1. The images tile
    [k+ell].
    """
    for name, value in (("k", k), ("ell", ell), ("i", i)):
        _check_int(name, value)
    if k < 2 or ell < 2:
        raise LabelError("gluing needs arities of at least 2, got k={} and ell={}".format(k, ell))
    if not 1 <= i <= k:
        raise SlotError("slot {} is out of range [1, {}]".format(i, k))
    first = {j: j for j in range(1, i)}
    first.update({j: j + ell - 1 for j in range(i + 1, k + 2)})
    second = {j: j + i - 1 for j in range(1, ell + 1)}
    target = k + ell
    return _label_map(k + 1, target, first), _label_map(ell + 1, target, second)


def real_glue_leaf_maps(k: int, ell: int, k2: int, ell2: int, i: int) -> Tuple[LabelMap, LabelMap]:
    """
    Relabeling maps for gluing two real curves at real points.

    The first factor carries k+1 real points and ell pairs, the second k2+1
    real points and ell2 pairs. Real point ``i`` of the first factor meets
    the last real point of the second. Real labels follow the complex rule;
    pairs of the second factor are appended after those of the first.
    """
    for name, value in (("k", k), ("ell", ell), ("k2", k2), ("ell2", ell2), ("i", i)):
        _check_int(name, value)
    if k < 0 or ell < 0 or k2 < 0 or ell2 < 0:
        raise LabelError("leaf counts must be non-negative")
    if not 1 <= i <= k + 1:
        raise SlotError("real slot {} is out of range [1, {}]".format(i, k + 1))
    first = {Leaf(REAL, j): Leaf(REAL, j) for j in range(1, i)}
    first.update({Leaf(REAL, j): Leaf(REAL, j + k2 - 1) for j in range(i + 1, k + 2)})
    for p in range(1, ell + 1):
        first[Leaf(PLUS, p)] = Leaf(PLUS, p)
        first[Leaf(MINUS, p)] = Leaf(MINUS, p)
    second = {Leaf(REAL, j): Leaf(REAL, j + i - 1) for j in range(1, k2 + 1)}
    for p in range(1, ell2 + 1):
        second[Leaf(PLUS, p)] = Leaf(PLUS, ell + p)
        second[Leaf(MINUS, p)] = Leaf(MINUS, ell + p)
    target = (k + k2) + 2 * (ell + ell2)
    return (
        _label_map(k + 1 + 2 * ell, target, first),
        _label_map(k2 + 1 + 2 * ell2, target, second),
    )


def conjugate_glue_leaf_maps(n_real: int, n_pairs: int, i: int, m: int) -> Tuple[LabelMap, LabelMap, LabelMap]:
    """
    Relabeling maps for attaching a complex curve at conjugate pair ``i``.

    Returns the map of the real factor and the maps of the ``+`` and ``-``
    copies of the complex factor (labels 1..m, node m+1). Complex label j
    becomes pair j+i-1 and later pairs shift by m-1.
    """
    for name, value in (("n_real", n_real), ("n_pairs", n_pairs), ("i", i), ("m", m)):
        _check_int(name, value)
    if not 1 <= i <= n_pairs:
        raise SlotError("pair slot {} is out of range [1, {}]".format(i, n_pairs))
    if m < 2:
        raise LabelError("the complex factor needs arity at least 2, not {}".format(m))
    first = {Leaf(REAL, j): Leaf(REAL, j) for j in range(1, n_real + 1)}
    for p in range(1, n_pairs + 1):
        if p == i:
            continue
        shifted = p if p < i else p + m - 1
        first[Leaf(PLUS, p)] = Leaf(PLUS, shifted)
        first[Leaf(MINUS, p)] = Leaf(MINUS, shifted)
    plus = {j: Leaf(PLUS, j + i - 1) for j in range(1, m + 1)}
    minus = {j: Leaf(MINUS, j + i - 1) for j in range(1, m + 1)}
    target = n_real + 2 * (n_pairs + m - 1)
    return (
        _label_map(n_real + 2 * n_pairs, target, first),
        _label_map(m + 1, target, plus),
        _label_map(m + 1, target, minus),
    )
