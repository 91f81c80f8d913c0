import numpy as np
import pytest

from pytools_moduli.exceptions import ArityError, InvolutionError, LabelError, SlotError, UnstableTreeError
from pytools_moduli.labels import MINUS, PLUS, REAL, Leaf, Partition2, make_partition2, real_leaf_set
from pytools_moduli.parsing import parse_tree, tree_from_dict, tree_to_dict, tree_to_json
from pytools_moduli.trees import (
    PAIR_LABEL_CONVENTION,
    ComplexStableTree,
    RealStableTree,
    complex_tree_from_graph,
    edge_partitions,
    forget_real_stabilize,
    forget_stabilize,
    glue_complex,
    glue_real_complex,
    glue_real_real,
    one_vertex_real_tree,
    one_vertex_tree,
    random_complex_tree,
    random_real_tree,
    real_tree_from_graph,
)


def pairs(kind, *indices):
    return {Leaf(kind, p) for p in indices}


def test_one_vertex_trees():
    tree = one_vertex_tree(4)
    assert tree.n_vertices == 1
    assert edge_partitions(tree) == frozenset()
    assert tree.to_graph().leaves == {1: 0, 2: 0, 3: 0, 4: 0}
    real = one_vertex_real_tree(0, 3)
    [(leaves, fixed)] = real.vertex_leaves()
    assert fixed
    assert leaves == real_leaf_set(0, 3)
    with pytest.raises(UnstableTreeError):
        one_vertex_tree(2)
    with pytest.raises(UnstableTreeError):
        one_vertex_real_tree(1, 0)


def test_glue_complex_smallest():
    tree = glue_complex(one_vertex_tree(3), 1, one_vertex_tree(3))
    assert tree.n_labels == 4
    assert edge_partitions(tree) == {make_partition2(4, {1, 2})}


def test_glue_complex_at_last_slot():
    tree = glue_complex(one_vertex_tree(4), 3, one_vertex_tree(3))
    assert edge_partitions(tree) == {make_partition2(5, {3, 4})}


def test_glue_complex_new_edge_is_image_of_second_factor():
    first = glue_complex(one_vertex_tree(3), 1, one_vertex_tree(3))
    tree = glue_complex(first, 2, one_vertex_tree(4))
    assert make_partition2(6, {2, 3, 4}) in edge_partitions(tree)
    assert make_partition2(6, {1, 2, 3, 4}) in edge_partitions(tree)
    assert tree.n_edges == 2


def test_glue_complex_associativity_witness():
    a, b, c = one_vertex_tree(3), one_vertex_tree(3), one_vertex_tree(3)
    left = glue_complex(glue_complex(a, 1, b), 1, c)
    right = glue_complex(a, 1, glue_complex(b, 1, c))
    assert left == right
    assert edge_partitions(left) == {make_partition2(5, {1, 2}), make_partition2(5, {1, 2, 3})}


def test_glue_complex_slot_errors():
    with pytest.raises(SlotError):
        glue_complex(one_vertex_tree(3), 3, one_vertex_tree(3))


def test_three_vertex_chain_from_graph():
    tree = complex_tree_from_graph([0, 1, 2], [(0, 1), (1, 2)], {1: 0, 2: 0, 3: 2, 4: 2, 5: 1})
    assert edge_partitions(tree) == {make_partition2(5, {1, 2}), make_partition2(5, {3, 4})}


@pytest.mark.parametrize(
    "vertices, edges, leaves",
    [
        ([0, 1], [(0, 1)], {1: 0, 2: 0, 3: 1}),
        ([0, 1, 2], [(0, 1), (1, 2), (2, 0)], {1: 0, 2: 1, 3: 2, 4: 0}),
        ([0, 1, 2], [(0, 1)], {1: 0, 2: 0, 3: 1, 4: 1, 5: 2}),
    ],
)
def test_invalid_graphs(vertices, edges, leaves):
    with pytest.raises(UnstableTreeError):
        complex_tree_from_graph(vertices, edges, leaves)


def test_glue_real_real_one_vertex():
    tree = glue_real_real(one_vertex_real_tree(3, 0), 1, one_vertex_real_tree(3, 0))
    assert (tree.n_real, tree.n_pairs) == (4, 0)
    ground = real_leaf_set(4, 0)
    assert tree.splits == {Partition2.from_block(ground, {Leaf(REAL, 1), Leaf(REAL, 2)})}
    assert all(fixed for _, fixed in tree.vertex_leaves())


def test_glue_real_real_appends_pairs():
    assert PAIR_LABEL_CONVENTION == "append"
    tree = glue_real_real(one_vertex_real_tree(2, 1), 2, one_vertex_real_tree(2, 1))
    assert (tree.n_real, tree.n_pairs) == (2, 2)
    ground = real_leaf_set(2, 2)
    inner = {Leaf(REAL, 2), Leaf(PLUS, 2), Leaf(MINUS, 2)}
    assert tree.splits == {Partition2.from_block(ground, inner)}


def test_glue_real_real_needs_arity_two():
    with pytest.raises(ArityError):
        glue_real_real(one_vertex_real_tree(1, 1), 1, one_vertex_real_tree(3, 0))


def test_glue_real_complex_matches_the_pictured_example():
    tree = glue_real_complex(one_vertex_real_tree(0, 3), 2, one_vertex_tree(4))
    assert (tree.n_real, tree.n_pairs) == (0, 5)
    layout = {leaves: fixed for leaves, fixed in tree.vertex_leaves()}
    assert layout == {
        frozenset(pairs(PLUS, 1, 5) | pairs(MINUS, 1, 5)): True,
        frozenset(pairs(PLUS, 2, 3, 4)): False,
        frozenset(pairs(MINUS, 2, 3, 4)): False,
    }


def test_glue_real_complex_shifts_later_pairs():
    tree = glue_real_complex(one_vertex_real_tree(0, 2), 1, one_vertex_tree(3))
    layout = {leaves: fixed for leaves, fixed in tree.vertex_leaves()}
    assert layout[frozenset(pairs(PLUS, 3) | pairs(MINUS, 3))]
    assert not layout[frozenset(pairs(PLUS, 1, 2))]
    assert not layout[frozenset(pairs(MINUS, 1, 2))]


def test_glue_real_complex_mirror_copy():
    tree = glue_real_complex(one_vertex_real_tree(1, 2), 2, one_vertex_tree(3))
    for split in tree.splits:
        assert split.conjugate() in tree.splits
    graph = tree.to_graph()
    for vertex, image in graph.involution.items():
        assert graph.involution[image] == vertex


def test_real_tree_requires_conjugation_invariance():
    ground = real_leaf_set(0, 3)
    split = Partition2.from_block(ground, pairs(PLUS, 1, 2))
    with pytest.raises(InvolutionError):
        RealStableTree(0, 3, [split])


def test_forget_stabilize():
    tree = ComplexStableTree(5, [make_partition2(5, {1, 2})])
    assert forget_stabilize(tree, {1, 2, 3, 4}) == ComplexStableTree(4, [make_partition2(4, {1, 2})])
    other = ComplexStableTree(5, [make_partition2(5, {1, 5})])
    assert forget_stabilize(other, {1, 2, 3, 4}) == one_vertex_tree(4)
    assert forget_stabilize(tree, range(1, 6)) == tree
    with pytest.raises(UnstableTreeError):
        forget_stabilize(tree, {1, 2})


def test_forget_stabilize_is_functorial():
    rng = np.random.default_rng(11)
    tree = random_complex_tree(rng, 7)
    s = {1, 2, 4, 5, 7}
    t = {2, 4, 7}
    once = forget_stabilize(tree, t)
    relabel = {a: n for n, a in enumerate(sorted(s), start=1)}
    twice = forget_stabilize(forget_stabilize(tree, s), {relabel[a] for a in t})
    assert once == twice


def test_forget_real_stabilize():
    tree = glue_real_complex(one_vertex_real_tree(0, 3), 2, one_vertex_tree(4))
    assert forget_real_stabilize(tree, [], [1, 5]) == one_vertex_real_tree(0, 2)
    expected = glue_real_complex(one_vertex_real_tree(0, 2), 2, one_vertex_tree(3))
    assert forget_real_stabilize(tree, [], [1, 2, 3]) == expected


def test_relabel_pairs():
    tree = glue_real_complex(one_vertex_real_tree(0, 2), 1, one_vertex_tree(3))
    moved = tree.relabel_pairs({1: 3, 2: 1, 3: 2})
    layout = {leaves: fixed for leaves, fixed in moved.vertex_leaves()}
    assert layout[frozenset(pairs(PLUS, 2) | pairs(MINUS, 2))]
    with pytest.raises(LabelError):
        tree.relabel_pairs({1: 1, 2: 1, 3: 3})


def test_complex_json_round_trip():
    tree = glue_complex(glue_complex(one_vertex_tree(3), 1, one_vertex_tree(3)), 3, one_vertex_tree(4))
    assert parse_tree(tree_to_json(tree)) == tree
    data = tree_to_dict(tree)
    assert sorted(data["leaves"]) == sorted(str(j) for j in range(1, 7))
    assert "real" not in data


def test_real_json_round_trip():
    tree = glue_real_complex(one_vertex_real_tree(1, 3), 2, one_vertex_tree(4))
    data = tree_to_dict(tree)
    assert set(data["real"]) == {"involution", "realLeaves", "pairs"}
    assert tree_from_dict(data) == tree


def test_real_tree_from_graph():
    tree = real_tree_from_graph(
        [0, 1, 2],
        [(0, 1), (0, 2)],
        {0: 0, 1: 2, 2: 1},
        {1: 0},
        {1: (0, 0), 2: (1, 2), 3: (1, 2)},
    )
    assert tree == glue_real_complex(one_vertex_real_tree(1, 2), 2, one_vertex_tree(3))


def test_real_tree_from_graph_rejects_real_leaf_on_swapped_vertex():
    with pytest.raises(InvolutionError):
        real_tree_from_graph(
            [0, 1, 2],
            [(0, 1), (0, 2)],
            {0: 0, 1: 2, 2: 1},
            {1: 1},
            {1: (0, 0), 2: (1, 2), 3: (1, 2)},
        )


def test_random_trees_are_reproducible():
    first = random_complex_tree(np.random.default_rng(5), 8)
    second = random_complex_tree(np.random.default_rng(5), 8)
    assert first == second
    real = random_real_tree(np.random.default_rng(5), 2, 3)
    for split in real.splits:
        assert split.conjugate() in real.splits
