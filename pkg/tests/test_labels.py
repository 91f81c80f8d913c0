import pytest

from pytools_moduli.exceptions import LabelError, SlotError
from pytools_moduli.labels import (
    MINUS,
    PLUS,
    REAL,
    LabelSet,
    Leaf,
    Partition2,
    compatible,
    conjugate_glue_leaf_maps,
    glue_label_maps,
    make_leaf,
    make_partition2,
    real_glue_leaf_maps,
    real_leaf_set,
    restrict,
)


def test_label_set():
    labels = LabelSet(4)
    assert list(labels) == [1, 2, 3, 4]
    assert len(labels) == 4
    assert 3 in labels and 5 not in labels and True not in labels
    with pytest.raises(LabelError):
        LabelSet(0)
    with pytest.raises(TypeError):
        LabelSet("4")


def test_make_partition2_is_canonical():
    p = make_partition2(4, {1, 2})
    assert p.block_j == frozenset({1, 2})
    assert p.block_k == frozenset({3, 4})
    assert make_partition2(4, {3, 4}) == p
    assert str(make_partition2(4, {3, 4})) == "{1,2|3,4}"
    assert hash(make_partition2(4, {3, 4})) == hash(p)


@pytest.mark.parametrize("block", [{1}, {1, 2, 3}, set()])
def test_make_partition2_divisor_mode_rejects_small_blocks(block):
    with pytest.raises(LabelError):
        make_partition2(4, block)


def test_make_partition2_outside_labels():
    with pytest.raises(LabelError):
        make_partition2(4, {1, 7})
    assert make_partition2(4, {1}, divisor=False).min_block_size == 1


def test_compatible():
    a = make_partition2(4, {1, 2})
    b = make_partition2(4, {1, 3})
    assert not compatible(a, b)
    assert not compatible(b, a)
    assert compatible(a, a)
    c = make_partition2(5, {1, 2})
    d = make_partition2(5, {1, 2, 5})
    assert compatible(c, d) and compatible(d, c)


def test_compatible_ground_mismatch():
    with pytest.raises(LabelError):
        compatible(make_partition2(4, {1, 2}), make_partition2(5, {1, 2}))


def test_restrict():
    s = {1, 2, 3, 4}
    assert restrict(make_partition2(5, {1, 2}), s) == make_partition2(4, {1, 2})
    assert restrict(make_partition2(5, {1, 5}), s) is None
    assert restrict(make_partition2(6, {1, 2, 5}), s) == make_partition2(4, {1, 2})
    with pytest.raises(LabelError):
        restrict(make_partition2(4, {1, 2}), {1, 2, 9})


@pytest.mark.parametrize(
    "k, ell, i, first, second",
    [
        (2, 2, 1, {2: 3, 3: 4}, {1: 1, 2: 2}),
        (2, 3, 2, {1: 1, 3: 5}, {1: 2, 2: 3, 3: 4}),
        (3, 2, 2, {1: 1, 3: 4, 4: 5}, {1: 2, 2: 3}),
    ],
)
def test_glue_label_maps(k, ell, i, first, second):
    m1, m2 = glue_label_maps(k, ell, i)
    assert m1.as_dict() == first
    assert m2.as_dict() == second
    assert m1(k + 1) == first[k + 1]


@pytest.mark.parametrize("k, ell", [(2, 2), (3, 4), (5, 2)])
def test_glue_label_maps_tile_target(k, ell):
    for i in range(1, k + 1):
        m1, m2 = glue_label_maps(k, ell, i)
        assert not (m1.image() & m2.image())
        assert m1.image() | m2.image() == frozenset(range(1, k + ell + 1))
        for m in (m1, m2):
            items = sorted(m.as_dict().items())
            assert [t for _, t in items] == sorted(t for _, t in items)


def test_glue_label_maps_errors():
    with pytest.raises(SlotError):
        glue_label_maps(2, 2, 3)
    with pytest.raises(LabelError):
        glue_label_maps(1, 2, 1)


def test_leaves():
    assert str(Leaf(REAL, 3)) == "r3"
    assert str(Leaf(PLUS, 2)) == "2+"
    assert Leaf(PLUS, 2).conjugate() == Leaf(MINUS, 2)
    assert Leaf(REAL, 1).conjugate() == Leaf(REAL, 1)
    assert len(real_leaf_set(2, 3)) == 8
    with pytest.raises(LabelError):
        make_leaf("x", 1)


def test_partition_conjugate():
    ground = real_leaf_set(0, 2)
    p = Partition2.from_block(ground, {Leaf(PLUS, 1), Leaf(PLUS, 2)})
    assert p.conjugate() == Partition2.from_block(ground, {Leaf(MINUS, 1), Leaf(MINUS, 2)})
    assert p.conjugate() == p


def test_real_glue_leaf_maps_append_pairs():
    first, second = real_glue_leaf_maps(1, 1, 1, 1, 2)
    assert first(Leaf(REAL, 1)) == Leaf(REAL, 1)
    assert first(Leaf(PLUS, 1)) == Leaf(PLUS, 1)
    assert second(Leaf(REAL, 1)) == Leaf(REAL, 2)
    assert second(Leaf(MINUS, 1)) == Leaf(MINUS, 2)
    assert not (first.image() & second.image())


def test_conjugate_glue_leaf_maps():
    base, plus, minus = conjugate_glue_leaf_maps(0, 3, 2, 3)
    assert base(Leaf(PLUS, 1)) == Leaf(PLUS, 1)
    assert base(Leaf(MINUS, 3)) == Leaf(MINUS, 5)
    assert [plus(j) for j in (1, 2, 3)] == [Leaf(PLUS, 2), Leaf(PLUS, 3), Leaf(PLUS, 4)]
    assert [minus(j) for j in (1, 2, 3)] == [Leaf(MINUS, 2), Leaf(MINUS, 3), Leaf(MINUS, 4)]
    with pytest.raises(SlotError):
        conjugate_glue_leaf_maps(0, 3, 4, 3)
