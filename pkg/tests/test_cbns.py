import random
import unittest

import networkx as nx
import numpy as np

from src.cnp.budget import SearchBudget
from src.cnp import kernels
from src.cnp.cbns import (
    LargeComponentIndex,
    NodeWeights,
    best_reinsertion,
    cbns,
    component_exchange,
    large_threshold,
    select_removal_node,
)
from src.cnp.errors import ContractError
from src.cnp.graph import ComponentLabeling, Graph
from src.cnp.solution import ExcessObjective, SolutionState
from tests.helpers import path_graph, random_graphs, reference_objective


def labeling_with_sizes(*sizes) -> ComponentLabeling:
    return ComponentLabeling(label=np.zeros(0, dtype=np.int64),
                             sizes=dict(enumerate(sizes)), count=len(sizes))


class LargeComponentTest(unittest.TestCase):

    def test_threshold_examples(self):
        self.assertEqual(large_threshold(labeling_with_sizes(10, 2)), 6)
        self.assertEqual(large_threshold(labeling_with_sizes(7)), 7)
        self.assertEqual(large_threshold(labeling_with_sizes(5, 5, 5)), 5)

    def test_threshold_without_components(self):
        with self.assertRaises(ContractError):
            large_threshold(labeling_with_sizes())

    def test_strictly_larger_components(self):
        # 크기 4 와 1 인 요소: L = 2
        state = SolutionState(path_graph(6), [4])
        index = LargeComponentIndex.from_state(state)
        self.assertEqual(index.threshold, 2)
        self.assertFalse(index.fallback)
        self.assertEqual([state.component_size(c) for c in index.large_ids], [4])

    def test_equal_sizes_fall_back_to_max_components(self):
        triangles = Graph.from_edges(9, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5),
                                         (6, 7), (7, 8), (6, 8)])
        state = SolutionState(triangles, [])
        index = LargeComponentIndex.from_state(state)
        self.assertTrue(index.fallback)
        self.assertEqual(len(index.large_ids), 3)


class SelectRemovalNodeTest(unittest.TestCase):

    def test_max_weight_wins(self):
        graph = Graph.from_edges(2, [(0, 1)])
        state = SolutionState(graph, [])
        weights = NodeWeights(2)
        weights.values[:] = [3, 1]
        chosen = select_removal_node(state, weights, random.Random(0), component=state.label[0])
        self.assertEqual(chosen, 0)
        self.assertEqual(weights[1], 2)
        self.assertEqual(weights[0], 3)

    def test_degree_breaks_weight_ties(self):
        graph = Graph.from_edges(4, [(0, 1), (1, 2), (1, 3)])
        state = SolutionState(graph, [])
        weights = NodeWeights(4)
        self.assertEqual(select_removal_node(state, weights, random.Random(0)), 1)
        self.assertEqual(weights.values.tolist(), [1, 0, 1, 1])

    def test_smallest_id_breaks_remaining_ties(self):
        graph = Graph.from_edges(2, [(0, 1)])
        for seed in range(5):
            state = SolutionState(graph, [])
            self.assertEqual(select_removal_node(state, NodeWeights(2), random.Random(seed)), 0)

    def test_singleton_component_via_fallback(self):
        graph = Graph.from_edges(3, [])
        state = SolutionState(graph, [])
        weights = NodeWeights(3)
        chosen = select_removal_node(state, weights, random.Random(1))
        self.assertIn(chosen, (0, 1, 2))
        self.assertEqual(weights.values.tolist(), [0, 0, 0])


class BestReinsertionTest(unittest.TestCase):

    def test_argmin_over_s(self):
        rng = random.Random(5)
        for graph in random_graphs(20, n_range=(8, 20), seed=5):
            nodes = rng.sample(range(graph.n), 4)
            state = SolutionState(graph, nodes, k=3)
            chosen = best_reinsertion(state)
            deltas = {u: state.delta_reinsert(u) for u in nodes}
            best = min(deltas.values())
            self.assertEqual(deltas[chosen], best)
            self.assertEqual(chosen, min(u for u, d in deltas.items() if d == best))

    def test_excluded_nodes_are_kept(self):
        # 0 은 고립 노드라 되돌려도 비용이 0
        graph = Graph.from_edges(6, [(1, 2), (2, 3), (4, 5)])
        state = SolutionState(graph, [0, 2, 4], k=2)
        self.assertEqual(best_reinsertion(state), 0)
        self.assertEqual(best_reinsertion(state, exclude={0}), 4)
        with self.assertRaises(ContractError):
            best_reinsertion(state, exclude={0, 2, 4})


class ComponentExchangeTest(unittest.TestCase):

    def test_exchange_never_returns_the_removed_node(self):
        # P5, S={2}: 1 을 옮긴 뒤 1 자신이 argmin 이므로 나머지 S 에서 되돌림
        state = SolutionState(path_graph(5), [2])
        u, v = component_exchange(state, NodeWeights(5), random.Random(0))
        self.assertIn(u, (1, 3))
        self.assertEqual(v, 2)
        self.assertEqual(state.nodes(), [u])
        self.assertEqual(state.objective, reference_objective(state.graph, [u]))

    def test_single_residual_component_still_moves(self):
        rng = random.Random(3)
        for graph in random_graphs(20, n_range=(8, 14), density_range=(0.4, 0.7), seed=3):
            state = SolutionState(graph, rng.sample(range(graph.n), 2))
            weights = NodeWeights(graph.n)
            for _ in range(20):
                before = state.nodes()
                u, v = component_exchange(state, weights, rng)
                self.assertNotEqual(u, v)
                self.assertNotEqual(state.nodes(), before)
                self.assertEqual(state.objective, reference_objective(graph, state.nodes()))

    def test_rejects_infeasible_state(self):
        state = SolutionState(path_graph(5), [2], k=2)
        with self.assertRaises(ContractError):
            component_exchange(state, NodeWeights(5), random.Random(0))


class CbnsTest(unittest.TestCase):

    def test_path_five_single_node(self):
        for start in range(5):
            state = SolutionState(path_graph(5), [start])
            result = cbns(state, max_iter=50, rng=random.Random(start))
            self.assertEqual(result.objective, 2)
            self.assertEqual(result.nodes(), [2])

    def test_never_worse_and_feasible(self):
        rng = random.Random(9)
        for graph in random_graphs(30, n_range=(10, 30), seed=9):
            k = rng.randint(1, graph.n // 3)
            state = SolutionState(graph, rng.sample(range(graph.n), k))
            start = state.objective
            result = cbns(state, max_iter=100, rng=rng)
            self.assertLessEqual(result.objective, start)
            self.assertEqual(result.size, k)
            self.assertEqual(result.objective, reference_objective(graph, result.nodes()))

    def test_optimal_input_stays_optimal(self):
        state = SolutionState(path_graph(5), [2])
        result = cbns(state, max_iter=20, rng=random.Random(0))
        self.assertEqual(result.objective, 2)

    def test_counts_steps_and_stops_on_target(self):
        budget = SearchBudget(target=2).start()
        state = SolutionState(path_graph(5), [0])
        result = cbns(state, max_iter=1000, rng=random.Random(0), budget=budget)
        self.assertEqual(result.objective, 2)
        self.assertEqual(budget.best_objective, 2)
        self.assertLess(budget.steps, 1000)
        self.assertGreater(budget.steps, 0)

    def test_stops_on_max_iter(self):
        budget = SearchBudget().start()
        state = SolutionState(path_graph(5), [2])
        cbns(state, max_iter=7, rng=random.Random(0), budget=budget)
        self.assertEqual(budget.steps, 7)

    def test_weights_reset_per_call(self):
        weights = NodeWeights(5)
        weights.values[:] = [9, 9, 9, 9, 9]
        state = SolutionState(path_graph(5), [2])
        cbns(state, weights, max_iter=1, rng=random.Random(0))
        self.assertLess(max(weights.values), 9)

    def test_without_weighting(self):
        rng = random.Random(4)
        for graph in random_graphs(10, n_range=(10, 25), seed=4):
            state = SolutionState(graph, rng.sample(range(graph.n), 3))
            start = state.objective
            result = cbns(state, max_iter=50, rng=rng, weighting=False)
            self.assertLessEqual(result.objective, start)
            self.assertEqual(result.objective, reference_objective(graph, result.nodes()))

    def test_swap_neighborhood(self):
        state = SolutionState(path_graph(5), [0])
        result = cbns(state, max_iter=5, rng=random.Random(0), neighborhood="swap")
        self.assertEqual(result.nodes(), [2])

    def test_excess_objective(self):
        graph = path_graph(5)
        state = SolutionState(graph, [0], objective=ExcessObjective(2))
        result = cbns(state, max_iter=50, rng=random.Random(0))
        self.assertEqual(result.objective, 0)
        self.assertEqual(reference_objective(graph, result.nodes(), cap=2), 0)

    def test_step_rate_on_large_sparse_graph(self):
        graph = Graph.from_networkx(nx.barabasi_albert_graph(5000, 1, seed=0), name="BA5000")
        rng = random.Random(0)
        state = SolutionState(graph, rng.sample(range(graph.n), 150))
        kernels.warmup()
        budget = SearchBudget(time_limit=2.0).start()
        cbns(state, max_iter=10 ** 9, rng=rng, budget=budget)
        self.assertGreaterEqual(budget.steps / budget.elapsed(), 1e4)

    def test_infeasible_state_rejected(self):
        state = SolutionState(path_graph(5), [2], k=2)
        with self.assertRaises(ContractError):
            cbns(state, rng=random.Random(0))

    def test_invalid_arguments(self):
        state = SolutionState(path_graph(5), [2])
        with self.assertRaises(ValueError):
            cbns(state, max_iter=0)
        with self.assertRaises(ValueError):
            cbns(state, neighborhood="ring")


if __name__ == "__main__":
    unittest.main()
