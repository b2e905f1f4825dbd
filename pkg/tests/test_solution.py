import random
import tempfile
import unittest
from pathlib import Path

from src.cnp.errors import ContractError, SolutionFormatError
from src.cnp.graph import components_of
from src.cnp.solution import (
    ExcessObjective,
    PairwiseObjective,
    SolutionState,
    delta_reinsert,
    evaluate,
    evaluate_excess,
    evaluate_pairwise,
    move_from_s,
    move_to_s,
    read_solution,
    write_solution,
)
from tests.helpers import path_graph, random_graph, reference_objective, star_graph


class ObjectiveTest(unittest.TestCase):

    def test_pairwise_values(self):
        objective = PairwiseObjective()
        self.assertEqual(objective.component_value(1), 0)
        self.assertEqual(objective.component_value(5), 10)

    def test_excess_values(self):
        objective = ExcessObjective(3)
        self.assertEqual(objective.component_value(3), 0)
        self.assertEqual(objective.component_value(7), 4)

    def test_excess_requires_positive_cap(self):
        with self.assertRaises(ValueError):
            ExcessObjective(0)

    def test_evaluate_from_labeling(self):
        graph = path_graph(5)
        labeling = components_of(graph, [False, False, True, False, False])
        self.assertEqual(evaluate_pairwise(labeling), 2)
        self.assertEqual(evaluate_excess(labeling, 1), 2)
        self.assertEqual(evaluate_excess(labeling, 2), 0)
        with self.assertRaises(ValueError):
            evaluate_excess(labeling, 0)

    def test_evaluate_empty_set(self):
        self.assertEqual(evaluate(path_graph(5), []), 10)
        self.assertEqual(evaluate(star_graph(9), [0]), 0)


class SolutionStateTest(unittest.TestCase):

    def test_initial_state(self):
        state = SolutionState(path_graph(5), [2])
        self.assertEqual(state.objective, 2)
        self.assertEqual(state.k, 1)
        self.assertEqual(state.component_count, 2)
        self.assertTrue(state.is_feasible())
        self.assertEqual(state.nodes(), [2])

    def test_delta_reinsert_does_not_change_state(self):
        state = SolutionState(path_graph(5), [2])
        self.assertEqual(state.delta_reinsert(2), 8)
        self.assertEqual(delta_reinsert(state, 2), 8)
        self.assertEqual(state.objective, 2)
        self.assertEqual(state.nodes(), [2])

    def test_move_round_trip(self):
        state = SolutionState(path_graph(5), [2])
        self.assertEqual(state.move_to_s(0), -1)
        self.assertEqual(state.size, 2)
        self.assertEqual(state.objective, 1)
        self.assertEqual(state.move_from_s(2), 5)
        self.assertEqual(state.objective, 6)
        self.assertEqual(state.nodes(), [0])

    def test_module_level_wrappers(self):
        state = SolutionState(path_graph(5), [2])
        move_to_s(state, 4)
        move_from_s(state, 2)
        self.assertEqual(state.nodes(), [4])
        self.assertEqual(state.objective, 6)

    def test_move_to_s_twice_is_contract_error(self):
        state = SolutionState(path_graph(5), [2])
        with self.assertRaises(ContractError):
            state.move_to_s(2)

    def test_move_beyond_k_plus_one_is_contract_error(self):
        state = SolutionState(path_graph(5), [2])
        state.move_to_s(0)
        with self.assertRaises(ContractError):
            state.move_to_s(4)

    def test_move_from_s_of_residual_node(self):
        state = SolutionState(path_graph(5), [2])
        with self.assertRaises(ContractError):
            state.move_from_s(0)
        with self.assertRaises(ContractError):
            state.delta_reinsert(0)

    def test_constructor_rejects_bad_nodes(self):
        with self.assertRaises(ContractError):
            SolutionState(path_graph(5), [5])
        with self.assertRaises(ContractError):
            SolutionState(path_graph(5), [1, 1])

    def test_isolated_reinsertion_gets_singleton_component(self):
        state = SolutionState(star_graph(3), [0, 1], k=2)
        state.move_from_s(1)
        self.assertEqual(state.component_count, 3)
        self.assertEqual(state.objective, 0)

    def test_merge_keeps_largest_label(self):
        graph = path_graph(7)
        state = SolutionState(graph, [2])
        big = state.label[5]
        state.move_from_s(2)
        self.assertEqual(state.label[0], big)
        self.assertEqual(state.component_count, 1)

    def test_split_labels_are_never_reused(self):
        state = SolutionState(path_graph(7), [], k=1)
        self.assertEqual(set(state.label.tolist()), {0})
        state.move_to_s(3)
        first = set(state.label.tolist()) - {-1}
        self.assertEqual(first, {1, 2})
        state.move_from_s(3)
        state.move_to_s(3)
        second = set(state.label.tolist()) - {-1}
        self.assertEqual(len(second), 2)
        self.assertTrue(min(second) > max(first))

    def test_size_queries(self):
        graph = path_graph(7)
        state = SolutionState(graph, [1])
        self.assertEqual(state.min_component_size(), 1)
        self.assertEqual(state.max_component_size(), 5)
        large = state.components_larger_than(3)
        self.assertEqual([state.component_size(c) for c in large], [5])
        self.assertEqual(len(state.components_of_size(1)), 1)

    def test_copy_is_independent(self):
        state = SolutionState(path_graph(5), [2])
        clone = state.copy()
        clone.move_to_s(0)
        self.assertEqual(state.size, 1)
        self.assertEqual(clone.size, 2)

    def test_excess_objective_state(self):
        state = SolutionState(path_graph(5), [], k=1, objective=ExcessObjective(2))
        self.assertEqual(state.objective, 3)
        self.assertEqual(state.move_to_s(2), -3)
        self.assertEqual(state.delta_reinsert(2), 3)


class IncrementalExactnessTest(unittest.TestCase):
    """무작위 이동을 반복하며 캐시된 값과 전체 재계산을 비교"""

    def _exercise(self, graph, k, cap, rng, operations):
        objective = ExcessObjective(cap) if cap else PairwiseObjective()
        state = SolutionState(graph, rng.sample(range(graph.n), k), k, objective)
        for _ in range(operations):
            residual = [u for u in range(graph.n) if not state.in_s[u]]
            grow = state.size <= state.k and residual and (state.size == 0 or rng.random() < 0.5)
            if grow:
                v = rng.choice(residual)
                state.move_to_s(v)
            else:
                u = rng.choice(state.s_list)
                predicted = state.delta_reinsert(u)
                before = state.objective
                state.move_from_s(u)
                self.assertEqual(state.objective - before, predicted)
            expected = reference_objective(graph, state.s_list, cap)
            self.assertEqual(state.objective, expected)
            self.assertEqual(sum(len(g) for g in state.members.values()), graph.n - state.size)

    def test_randomized_moves_match_recomputation(self):
        rng = random.Random(2024)
        total = 0
        for i in range(25):
            n = rng.randint(8, 40)
            graph = random_graph(n, rng.uniform(0.05, 0.4), seed=i)
            k = rng.randint(1, n // 3)
            cap = rng.choice([None, None, 2, 4])
            self._exercise(graph, k, cap, rng, 4000)
            total += 4000
        self.assertGreaterEqual(total, 10 ** 5)


class SolutionFileTest(unittest.TestCase):

    def test_write_then_read(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "out" / "p5.sol"
            write_solution(path, [3, 1], 4)
            self.assertEqual(path.read_text(encoding="utf-8"), "2 4\n1\n3\n")
            self.assertEqual(read_solution(path), (2, 4, [1, 3]))

    def test_read_malformed(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "bad.sol"
            path.write_text("2\n", encoding="utf-8")
            with self.assertRaises(SolutionFormatError):
                read_solution(path)
            path.write_text("1 2\nabc\n", encoding="utf-8")
            with self.assertRaises(SolutionFormatError):
                read_solution(path)

    def test_read_missing(self):
        with self.assertRaises(FileNotFoundError):
            read_solution("/nonexistent/solution.sol")


if __name__ == "__main__":
    unittest.main()
