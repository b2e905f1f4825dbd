"""테스트용 그래프 생성과 독립 검증 함수"""

import random
from pathlib import Path
from typing import Iterable, Optional

import networkx as nx

from src.cnp.graph import Graph

DATA_DIR = Path(__file__).resolve().parent.parent / "src" / "data"


def path_graph(n: int = 5) -> Graph:
    return Graph.from_networkx(nx.path_graph(n), name=f"P{n}")


def star_graph(leaves: int = 9) -> Graph:
    return Graph.from_networkx(nx.star_graph(leaves), name=f"star{leaves + 1}")


def complete_graph(n: int) -> Graph:
    return Graph.from_networkx(nx.complete_graph(n), name=f"K{n}")


def empty_graph(n: int) -> Graph:
    return Graph.from_edges(n, [], name=f"E{n}")


def random_graph(n: int, density: float, seed: int) -> Graph:
    return Graph.from_networkx(nx.gnp_random_graph(n, density, seed=seed), name=f"G{n}_{seed}")


def random_graphs(count: int, n_range=(6, 12), density_range=(0.2, 0.5), seed: int = 0):
    rng = random.Random(seed)
    for i in range(count):
        n = rng.randint(*n_range)
        density = rng.uniform(*density_range)
        yield random_graph(n, density, seed=seed * 1000 + i)


def reference_objective(graph: Graph, nodes: Iterable[int], cap: Optional[int] = None) -> int:
    """networkx 로 계산한 f (cap 이 있으면 f')"""
    g = graph.to_networkx()
    g.remove_nodes_from(list(nodes))
    total = 0
    for component in nx.connected_components(g):
        size = len(component)
        if cap is None:
            total += size * (size - 1) // 2
        elif size > cap:
            total += size - cap
    return total
