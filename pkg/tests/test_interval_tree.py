import math

import numpy as np
import pytest

from topkstab import IntervalTree, Query, build_interval_tree, ingest, it_topk, oracle_topk, stab

from _util import brute_topk, ids, probe_values, random_instance


def walk(tree):
    """(node id, parent id, side) for every node, preorder."""
    out, stack = [], [(0, None, None)]
    while stack:
        u, parent, side = stack.pop()
        out.append((u, parent, side))
        node = tree.node(u)
        if node.right is not None:
            stack.append((node.right, u, "right"))
        if node.left is not None:
            stack.append((node.left, u, "left"))
    return out


def subtree_intervals(tree, u):
    node = tree.node(u)
    xs = list(node.a_left)
    for child in (node.left, node.right):
        if child is not None:
            xs += subtree_intervals(tree, child)
    return xs


class TestBuild:
    def test_d1_root(self, d1):
        tree = build_interval_tree(d1)
        root = tree.node(0)
        # endpoints 1,2,3,5,6,7,8,9 -> lower median 5
        assert root.center == 5.0
        assert ids(root.a_left) == [1, 4, 2]
        assert [x.r for x in root.a_right] == [5.0, 7.0, 8.0]
        assert root.left is None
        assert ids(tree.node(root.right).a_left) == [3]

    def test_single_interval(self):
        tree = IntervalTree(ingest([(0, 0.0, 1.0, 1.0)]))
        root = tree.node(0)
        assert ids(root.a_left) == [0] and root.left is None and root.right is None

    def test_two_disjoint(self):
        tree = IntervalTree(ingest([(0, 0.0, 1.0, 1.0), (1, 10.0, 11.0, 1.0)]))
        root = tree.node(0)
        # median of {0, 1, 10, 11} is 1
        assert root.center == 1.0 and ids(root.a_left) == [0]
        assert root.left is None and ids(tree.node(root.right).a_left) == [1]

    def test_empty(self):
        tree = IntervalTree(ingest([]))
        assert tree.root is None
        assert tree.topk(0.0, 3) == []
        assert tree.stab(0.0, lambda x: None) == (0, 0, 0)

    @pytest.mark.parametrize("seed", range(6))
    def test_node_invariants(self, seed):
        rng = np.random.default_rng(seed)
        ds = random_instance(rng, int(rng.integers(1, 1500)), pareto=seed % 2 == 0, grid=seed % 3 == 0)
        tree = IntervalTree(ds)
        seen = []
        for u, _, _ in walk(tree):
            node = tree.node(u)
            c = node.center
            assert len(node.a_left) == len(node.a_right) >= 1
            assert set(ids(node.a_left)) == set(ids(node.a_right))
            assert all(x.l <= c <= x.r for x in node.a_left)
            assert [x.l for x in node.a_left] == sorted(x.l for x in node.a_left)
            assert [x.r for x in node.a_right] == sorted(x.r for x in node.a_right)
            if node.left is not None:
                assert all(x.r < c for x in subtree_intervals(tree, node.left))
            if node.right is not None:
                assert all(x.l > c for x in subtree_intervals(tree, node.right))
            seen += ids(node.a_left)
        assert sorted(seen) == sorted(ids(ds.intervals))
        n = len(ds)
        assert tree.height <= 2 * math.ceil(math.log2(n + 1))


class TestStab:
    def test_d1_s4(self, d1):
        got = []
        m = stab(build_interval_tree(d1), 4, got.append)
        assert m == 3 and sorted(ids(got)) == [1, 2, 4]

    def test_d1_at_center(self, d1):
        tree = build_interval_tree(d1)
        got = []
        m, nodes, _ = tree.stab(5, got.append)
        assert sorted(ids(got)) == [1, 2, 4] and m == 3 and nodes == 1

    def test_d1_beyond(self, d1):
        assert stab(build_interval_tree(d1), 9.5, lambda x: None) == 0

    def test_exact_set_and_counters(self):
        rng = np.random.default_rng(21)
        for trial in range(25):
            ds = random_instance(rng, int(rng.integers(1, 800)), pareto=trial % 2 == 0, grid=trial % 2 == 1)
            tree = IntervalTree(ds)
            for s in probe_values(ds, rng, 10):
                got = []
                m, nodes, touches = tree.stab(s, got.append)
                want = [x.id for x in ds.intervals if x.l <= s <= x.r]
                assert sorted(ids(got)) == sorted(want)
                assert len(set(ids(got))) == len(got) == m
                assert nodes <= tree.height
                assert touches <= m + nodes


class TestTopK:
    def test_examples(self, d1, backend):
        tree = IntervalTree(d1, backend)
        assert ids(it_topk(tree, Query(4, 2))) == [2, 4]
        assert ids(it_topk(tree, Query(6, 1))) == [2]
        assert it_topk(tree, Query(-1, 5)) == []

    def test_equals_oracle(self, backend):
        rng = np.random.default_rng(3)
        for trial in range(40):
            ds = random_instance(rng, int(rng.integers(1, 1000)), pareto=trial % 2 == 0, grid=trial % 4 == 0)
            tree = IntervalTree(ds, backend)
            for s in probe_values(ds, rng, 10):
                k = int(rng.integers(1, 60))
                items, nodes, touches, trees = tree.search(s, k)
                assert ids(items) == ids(oracle_topk(ds, Query(s, k))) == ids(brute_topk(ds.intervals, s, k))
                assert nodes <= tree.height and trees == 1
