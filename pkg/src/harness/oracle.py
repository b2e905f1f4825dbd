"""완전 탐색 기반 최적해 (작은 인스턴스의 테스트 기준값)"""

import math
from itertools import combinations
from typing import List, Optional, Tuple

import numpy as np

from ..cnp.errors import SizeGuardError
from ..cnp.graph import Graph, components_of
from ..cnp.solution import Objective, PairwiseObjective

MAX_SUBSETS = 10 ** 6


def brute_force_optimum(graph: Graph, k: int, objective: Optional[Objective] = None,
                        max_subsets: int = MAX_SUBSETS) -> Tuple[int, List[int]]:
    """모든 K-부분집합을 열거해 최소 목적값과 사전순 첫 최적해를 반환"""
    if not 0 <= k <= graph.n:
        raise ValueError(f"K 는 0..{graph.n} 범위여야 합니다: {k}")
    total = math.comb(graph.n, k)
    if total > max_subsets:
        raise SizeGuardError(f"C({graph.n}, {k}) = {total} 가 한도 {max_subsets} 를 넘습니다")

    objective = objective or PairwiseObjective()
    best_value: Optional[int] = None
    best_nodes: List[int] = []
    mask = np.zeros(graph.n, dtype=bool)
    for subset in combinations(range(graph.n), k):
        mask[:] = False
        mask[list(subset)] = True
        labeling = components_of(graph, mask)
        value = sum(objective.component_value(s) for s in labeling.sizes.values())
        if best_value is None or value < best_value:
            best_value, best_nodes = value, list(subset)
            if value == 0:
                break
    return best_value, best_nodes
