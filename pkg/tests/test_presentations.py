from itertools import combinations

import numpy as np
import pytest

from pytools_moduli.exactalg import CoefficientField, euler_characteristic, hilbert_function, macaulay_rank
from pytools_moduli.exceptions import LabelError, UnstableTreeError
from pytools_moduli.labels import REAL, Leaf, Partition2, glue_label_maps, make_partition2, real_leaf_set
from pytools_moduli.presentations import (
    IndexKind,
    RealSubmanifoldIndex,
    complex_dimension,
    divisor_partitions,
    enumerate_real_indices,
    is_orientable_space,
    keel_presentation,
    krasnov_presentation,
    omega_class,
    pullback_boundary,
    real_dimension,
    real_index_tree,
    real_strata_class,
    strata_class,
    validate_real_index,
)
from pytools_moduli.trees import (
    ComplexStableTree,
    RealStableTree,
    complex_tree_from_graph,
    edge_partitions,
    glue_complex,
    one_vertex_tree,
    random_complex_tree,
)


def dims(entries):
    return [(e.degree, e.dimension) for e in entries]


def test_keel_three_points_is_a_point():
    q = keel_presentation(3)
    assert q.generators == ()
    assert dims(hilbert_function(q)) == [(0, 1)]


def test_keel_four_points():
    q = keel_presentation(4)
    assert len(q.generators) == 3
    assert dims(hilbert_function(q)) == [(0, 1), (2, 1)]
    a, b, c = (q.gen(p) for p in divisor_partitions(4))
    assert q.equal(a, b) and q.equal(b, c)
    assert q.normal_form(a * b).is_zero
    assert not q.normal_form(a).is_zero


def test_keel_five_points():
    q = keel_presentation(5)
    assert len(q.generators) == 10
    entries = hilbert_function(q)
    assert dims(entries) == [(0, 1), (2, 5), (4, 1)]
    assert [macaulay_rank(q, d) for d in (0, 2, 4)] == [1, 5, 1]


@pytest.mark.slow
def test_keel_six_points():
    q = keel_presentation(6)
    entries = hilbert_function(q)
    assert dims(entries) == [(0, 1), (2, 16), (4, 16), (6, 1)]
    assert [macaulay_rank(q, e.degree) for e in entries] == [1, 16, 16, 1]


def test_keel_over_gf2():
    q = keel_presentation(5, CoefficientField.GF2)
    assert dims(hilbert_function(q)) == [(0, 1), (2, 5), (4, 1)]


def test_keel_presentation_is_cached():
    assert keel_presentation(5) is keel_presentation(5, CoefficientField.RATIONAL)


def test_keel_rejects_small_spaces():
    with pytest.raises(LabelError):
        keel_presentation(2)
    with pytest.raises(TypeError):
        keel_presentation(4.0)


def test_krasnov():
    q4 = krasnov_presentation(4)
    assert q4.field is CoefficientField.GF2
    assert dims(hilbert_function(q4)) == [(0, 1), (1, 1)]
    q5 = krasnov_presentation(5)
    entries = hilbert_function(q5)
    assert dims(entries) == [(0, 1), (1, 5), (2, 1)]
    assert euler_characteristic(entries) == -3
    assert [macaulay_rank(q5, d) for d in (0, 1, 2)] == [1, 5, 1]
    product = q5.gen(make_partition2(5, {1, 2})) * q5.gen(make_partition2(5, {1, 3}))
    assert q5.normal_form(product).is_zero


def test_pullback_boundary():
    q4 = keel_presentation(4)
    target = make_partition2(4, {1, 2})
    assert pullback_boundary(4, {1, 2, 3, 4}, target) == q4.gen(target)
    q5 = keel_presentation(5)
    s = {1, 2, 3, 4}
    expected = q5.gen(make_partition2(5, {1, 2})) + q5.gen(make_partition2(5, {3, 4}))
    assert pullback_boundary(5, s, Partition2.from_blocks({1, 2}, {3, 4})) == expected
    expected = q5.gen(make_partition2(5, {1, 3})) + q5.gen(make_partition2(5, {2, 4}))
    assert pullback_boundary(5, s, Partition2.from_blocks({1, 3}, {2, 4})) == expected


def test_pullback_boundary_errors():
    with pytest.raises(LabelError):
        pullback_boundary(5, {1, 2, 3}, Partition2.from_blocks({1, 2}, {3}))
    with pytest.raises(LabelError):
        pullback_boundary(5, {1, 2, 3, 4}, Partition2.from_blocks({1, 2}, {3, 5}))


def test_pullbacks_agree_in_every_four_subset():
    ell = 5
    q = keel_presentation(ell)
    for a, b, c, d in combinations(range(1, ell + 1), 4):
        sums = [
            pullback_boundary(ell, (a, b, c, d), Partition2.from_blocks(first, second))
            for first, second in (((a, b), (c, d)), ((a, c), (b, d)), ((a, d), (b, c)))
        ]
        assert q.equal(sums[0], sums[1])
        assert q.equal(sums[1], sums[2])


def test_omega_class():
    q4 = krasnov_presentation(4)
    assert omega_class(4, 1, 2, 3, 4) == q4.gen(make_partition2(4, {1, 2}))
    q5 = krasnov_presentation(5)
    expected = q5.gen(make_partition2(5, {1, 2})) + q5.gen(make_partition2(5, {3, 4}))
    assert omega_class(5, 1, 2, 3, 4) == expected
    forms = {str(q4.normal_form(omega_class(4, *labels))) for labels in ((1, 2, 3, 4), (1, 3, 2, 4), (1, 4, 2, 3))}
    assert len(forms) == 1
    with pytest.raises(LabelError):
        omega_class(5, 1, 1, 2, 3)


@pytest.mark.parametrize("k", [5, 6])
def test_omega_classes_agree_across_splits(k):
    q = krasnov_presentation(k)
    for a, b, c, d in combinations(range(1, k + 1), 4):
        forms = [omega_class(k, a, b, c, d), omega_class(k, a, c, b, d), omega_class(k, a, d, b, c)]
        for w in forms:
            assert w.degree == 1
            assert not q.normal_form(w).is_zero
        assert q.equal(forms[0], forms[1])
        assert q.equal(forms[1], forms[2])


def test_strata_class():
    q5 = keel_presentation(5)
    assert strata_class(one_vertex_tree(5)) == q5.one
    edge = ComplexStableTree(5, [make_partition2(5, {1, 2})])
    assert strata_class(edge) == q5.gen(make_partition2(5, {1, 2}))
    chain = complex_tree_from_graph([0, 1, 2], [(0, 1), (1, 2)], {1: 0, 2: 0, 3: 2, 4: 2, 5: 1})
    point = strata_class(chain)
    assert point == q5.gen(make_partition2(5, {1, 2})) * q5.gen(make_partition2(5, {3, 4}))
    assert not q5.normal_form(point).is_zero


def test_gluing_multiplies_by_the_new_divisor():
    glued = glue_complex(one_vertex_tree(4), 3, one_vertex_tree(3))
    q5 = keel_presentation(5)
    assert strata_class(glued) == q5.gen(make_partition2(5, {3, 4}))


def _relabel(split, n_labels, mapping, node, node_image):
    """Image of a factor split in the glued tree; the node leaf becomes ``node_image``."""
    block = set()
    for label in split.block_j:
        block |= node_image if label == node else {mapping(label)}
    return make_partition2(n_labels, block)


def _random_gluing(rng, max_labels):
    k = int(rng.integers(2, max_labels - 1))
    ell = int(rng.integers(2, max_labels - k + 1))
    i = int(rng.integers(1, k + 1))
    return random_complex_tree(rng, k + 1), i, random_complex_tree(rng, ell + 1)


def _glued_class(first, i, second):
    k, ell = first.n_labels - 1, second.n_labels - 1
    q = keel_presentation(k + ell)
    m1, m2 = glue_label_maps(k, ell, i)
    expected = q.gen(make_partition2(k + ell, m2.image()))
    for split in edge_partitions(first):
        expected = expected * q.gen(_relabel(split, k + ell, m1, i, set(m2.image())))
    for split in edge_partitions(second):
        expected = expected * q.gen(_relabel(split, k + ell, m2, ell + 1, set(m1.image())))
    return q, expected


def test_gluing_multiplies_by_the_relabeled_classes():
    rng = np.random.default_rng(8)
    for _ in range(200):
        first, i, second = _random_gluing(rng, 6)
        q, expected = _glued_class(first, i, second)
        assert strata_class(glue_complex(first, i, second), q) == expected


@pytest.mark.parametrize("max_labels", [5, pytest.param(6, marks=pytest.mark.slow)])
def test_glued_strata_classes_are_nonzero(max_labels):
    rng = np.random.default_rng(9)
    for _ in range(200):
        first, i, second = _random_gluing(rng, max_labels)
        q, expected = _glued_class(first, i, second)
        reduced = q.normal_form(strata_class(glue_complex(first, i, second), q))
        assert reduced == q.normal_form(expected)
        assert not reduced.is_zero


@pytest.mark.parametrize("ell", [4, 5, pytest.param(6, marks=pytest.mark.slow)])
def test_strata_classes_are_nonzero(ell):
    rng = np.random.default_rng(2)
    q = keel_presentation(ell)
    for _ in range(25):
        tree = random_complex_tree(rng, ell)
        assert not q.normal_form(strata_class(tree, q)).is_zero


def test_keel_hilbert_function_is_palindromic():
    for ell in (4, 5):
        values = [e.dimension for e in hilbert_function(keel_presentation(ell))]
        assert values == values[::-1]
        assert values[0] == values[-1] == 1


def test_real_strata_class():
    ground = real_leaf_set(5, 0)
    split = Partition2.from_block(ground, {Leaf(REAL, 1), Leaf(REAL, 2)})
    tree = RealStableTree(5, 0, [split])
    q5 = krasnov_presentation(5)
    assert real_strata_class(tree) == q5.gen(make_partition2(5, {1, 2}))
    with pytest.raises(LabelError):
        real_strata_class(RealStableTree(1, 2))


def test_dimensions_and_orientability():
    assert complex_dimension(5) == 2
    assert real_dimension(2, 3) == 5
    assert is_orientable_space(0, 7)
    assert not is_orientable_space(5, 0)
    assert is_orientable_space(2, 1)
    assert not is_orientable_space(3, 1)
    assert not is_orientable_space(1, 0)
    assert not is_orientable_space("0", 3)


def test_real_indices_of_three_pairs():
    assert validate_real_index(RealSubmanifoldIndex.rd({3}, {1, 2}, set()), 0, 3)
    assert len(enumerate_real_indices(IndexKind.RE, 0, 3)) == 4
    assert len(enumerate_real_indices(IndexKind.RD2, 0, 3)) == 6
    for idx in enumerate_real_indices(IndexKind.RD2, 0, 3):
        assert idx.codimension == 2
        assert real_index_tree(idx, 0, 3).n_edges == 2


def test_real_index_validation():
    assert not validate_real_index(RealSubmanifoldIndex.rd(set(), {1, 2}, {3}), 0, 3)
    assert not validate_real_index(RealSubmanifoldIndex.rd({1, 2}, {3}, set()), 0, 3)
    assert not validate_real_index(RealSubmanifoldIndex.re({1}, {2}), 0, 3)
    assert validate_real_index(RealSubmanifoldIndex.rh({1}, {2, 3}), 0, 3)
    assert not validate_real_index(RealSubmanifoldIndex.rh(set(), {1, 2, 3}), 0, 3)
    assert validate_real_index(RealSubmanifoldIndex.rh({1}, {2}, {1}, {2}), 2, 2)
    assert not validate_real_index("RE", 0, 3)


def test_real_index_canonical_sides():
    assert RealSubmanifoldIndex.re({2, 3}, {1}) == RealSubmanifoldIndex.re({1}, {2, 3})
    assert str(RealSubmanifoldIndex.rd({3}, set(), {1, 2})) == "RD_{{3};{},{1,2}}"


def test_real_index_trees():
    tree = real_index_tree(RealSubmanifoldIndex.re({1}, {2, 3}), 0, 3)
    [split] = tree.splits
    assert split == split.conjugate()
    swapped = [fixed for _, fixed in tree.vertex_leaves()]
    assert swapped == [False, False]
    tree = real_index_tree(RealSubmanifoldIndex.rh({1}, {2, 3}), 0, 3)
    assert all(fixed for _, fixed in tree.vertex_leaves())
    with pytest.raises(UnstableTreeError):
        real_index_tree(RealSubmanifoldIndex.rd({1, 2}, {3}, set()), 0, 3)


def test_rh_indices_are_valid_exactly_when_their_tree_is_stable():
    for idx in enumerate_real_indices(IndexKind.RH, 1, 2):
        assert real_index_tree(idx, 1, 2).n_edges == 1
