import io
import logging
import tempfile
import unittest
from pathlib import Path

import networkx as nx
import numpy as np

from src.cnp.errors import GraphFormatError, GraphRangeError
from src.cnp.graph import (
    IN_S,
    Graph,
    components_of,
    dump_graph,
    load_graph,
    load_graph_file,
    sparsity_beta,
)
from tests.helpers import DATA_DIR, path_graph, random_graphs


def parse(text: str, **kwargs) -> Graph:
    return load_graph(io.StringIO(text), **kwargs)


class LoadGraphTest(unittest.TestCase):

    def test_basic_instance(self):
        graph = parse("# 주석\n\n4 3\n0 1\n1 2\n2 3\n")
        self.assertEqual(graph.n, 4)
        self.assertEqual(graph.m, 3)
        self.assertEqual(graph.edges(), [(0, 1), (1, 2), (2, 3)])
        self.assertEqual(graph.degrees, [1, 2, 2, 1])

    def test_c_comment_lines(self):
        graph = parse("c generated\n3 1\nc edge follows\n0 2\n")
        self.assertEqual(graph.edges(), [(0, 2)])

    def test_one_indexed(self):
        graph = parse("3 2\n1 2\n2 3\n", one_indexed=True)
        self.assertEqual(graph.edges(), [(0, 1), (1, 2)])

    def test_adjacency_is_sorted_and_symmetric(self):
        graph = parse("4 3\n3 0\n0 1\n2 0\n")
        self.assertEqual(graph.adjacency[0], [1, 2, 3])
        self.assertEqual(graph.adjacency[3], [0])

    def test_missing_header(self):
        with self.assertRaises(GraphFormatError):
            parse("# 비어 있음\n")

    def test_non_integer_token_reports_line(self):
        with self.assertRaises(GraphFormatError) as ctx:
            parse("3 2\n0 1\n1 x\n")
        self.assertEqual(ctx.exception.line_no, 3)

    def test_wrong_token_count(self):
        with self.assertRaises(GraphFormatError):
            parse("3 1\n0 1 2\n")

    def test_out_of_range_node(self):
        with self.assertRaises(GraphRangeError) as ctx:
            parse("3 1\n0 3\n")
        self.assertEqual(ctx.exception.line_no, 2)

    def test_negative_node(self):
        with self.assertRaises(GraphRangeError):
            parse("3 1\n-1 2\n")

    def test_self_loop_dropped_with_warning(self):
        with self.assertLogs("src.cnp.graph", level="WARNING") as logs:
            graph = parse("3 2\n0 0\n1 2\n")
        self.assertEqual(graph.edges(), [(1, 2)])
        self.assertTrue(any("self-loop" in line for line in logs.output))

    def test_self_loop_strict(self):
        with self.assertRaises(GraphFormatError):
            parse("3 2\n0 0\n1 2\n", strict=True)

    def test_duplicate_edges_merged_silently(self):
        with self.assertLogs("src.cnp.graph", level="DEBUG") as logs:
            graph = parse("3 3\n0 1\n1 0\n0 1\n")
        self.assertEqual(graph.m, 1)
        self.assertFalse([line for line in logs.output if line.startswith("WARNING")])

    def test_edge_count_mismatch_warns(self):
        with self.assertLogs("src.cnp.graph", level="WARNING"):
            graph = parse("3 5\n0 1\n")
        self.assertEqual(graph.m, 1)

    def test_edge_count_mismatch_strict(self):
        with self.assertRaises(GraphFormatError):
            parse("3 5\n0 1\n", strict=True)

    def test_isolated_nodes_kept(self):
        graph = parse("5 1\n0 1\n")
        self.assertEqual(graph.n, 5)
        self.assertEqual(graph.degrees, [1, 1, 0, 0, 0])

    def test_dump_then_parse_gives_same_graph(self):
        for graph in random_graphs(10, seed=3):
            buffer = io.StringIO()
            dump_graph(graph, buffer)
            buffer.seek(0)
            self.assertEqual(load_graph(buffer), graph)

    def test_load_graph_file(self):
        graph = load_graph_file(DATA_DIR / "instances" / "p5.txt")
        self.assertEqual(graph.name, "p5")
        self.assertEqual(graph.n, 5)
        self.assertEqual(graph.m, 4)

    def test_load_graph_file_missing(self):
        with tempfile.TemporaryDirectory() as tmp:
            with self.assertRaises(FileNotFoundError):
                load_graph_file(Path(tmp) / "none.txt")

    def test_graph_is_read_only(self):
        graph = path_graph(5)
        with self.assertRaises(ValueError):
            graph.indices[0] = 3


class ComponentsTest(unittest.TestCase):

    def test_path_middle_removed(self):
        graph = path_graph(5)
        mask = [False, False, True, False, False]
        labeling = components_of(graph, mask)
        self.assertEqual(labeling.count, 2)
        self.assertEqual(sorted(labeling.sizes.values()), [2, 2])
        self.assertEqual(labeling.label[2], IN_S)
        self.assertEqual(labeling.label[0], labeling.label[1])
        self.assertNotEqual(labeling.label[1], labeling.label[3])

    def test_everything_removed(self):
        graph = path_graph(3)
        labeling = components_of(graph, [True, True, True])
        self.assertEqual(labeling.count, 0)
        self.assertEqual(labeling.residual_size(), 0)

    def test_mask_length_mismatch(self):
        with self.assertRaises(ValueError):
            components_of(path_graph(3), [False, True])

    def test_matches_networkx(self):
        rng = np.random.default_rng(7)
        for graph in random_graphs(30, n_range=(5, 40), seed=11):
            mask = rng.random(graph.n) < 0.3
            labeling = components_of(graph, mask)
            g = graph.to_networkx()
            g.remove_nodes_from(np.flatnonzero(mask).tolist())
            expected = sorted(len(c) for c in nx.connected_components(g))
            self.assertEqual(sorted(labeling.sizes.values()), expected)
            self.assertEqual(labeling.residual_size(), graph.n - int(mask.sum()))


class GraphHelpersTest(unittest.TestCase):

    def test_networkx_round_trip(self):
        g = nx.petersen_graph()
        graph = Graph.from_networkx(g)
        self.assertEqual(graph.n, 10)
        self.assertEqual(graph.m, 15)
        self.assertTrue(nx.is_isomorphic(graph.to_networkx(), g))

    def test_sparsity_beta(self):
        graph = path_graph(4)
        self.assertAlmostEqual(sparsity_beta(graph), 2 * 3 / (4 * 5))
        self.assertEqual(sparsity_beta(Graph.from_edges(0, [])), 0.0)

    def test_from_edges_rejects_out_of_range(self):
        with self.assertRaises(GraphRangeError):
            Graph.from_edges(2, [(0, 2)])


if __name__ == "__main__":
    logging.basicConfig(level=logging.WARNING)
    unittest.main()
