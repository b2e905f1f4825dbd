"""컴포넌트 기반 이웃 탐색 (CBNS)

한 번의 교환은 두 단계로 나뉜다.
    1. 큰 연결 요소에서 가중치가 가장 큰 노드를 S 로 옮긴다 (|S| = K+1).
    2. 되돌렸을 때 목적값 증가가 가장 작은 S 의 노드를 잔여 그래프로 돌려보낸다.
       그 노드가 방금 옮긴 노드이면 나머지 S 중에서 고른다.

교환 루프는 `kernels.exchange_chunk` 에서 돌고, 청크 사이에 시간과 목표값을 확인한다.
"""

import logging
import random
from dataclasses import dataclass, field
from typing import Collection, List, Optional, Tuple

import numpy as np

from . import kernels
from .budget import SearchBudget
from .errors import ContractError
from .graph import ComponentLabeling
from .solution import SolutionState

logger = logging.getLogger(__name__)

NEIGHBORHOODS = ("component", "swap")

# 시간 확인 사이에 수행하는 교환 수
CHUNK_STEPS = 128


def _seed(rng: random.Random) -> int:
    return rng.randrange(1 << 31)


class NodeWeights:
    """노드별 가중치. 선택되지 못한 노드는 +1, 재삽입된 노드는 0."""

    def __init__(self, n: int):
        self.values = np.zeros(n, dtype=np.int64)

    def __getitem__(self, u: int) -> int:
        return int(self.values[u])

    def __len__(self) -> int:
        return len(self.values)

    def reset(self, u: Optional[int] = None) -> None:
        if u is None:
            self.values[:] = 0
        else:
            self.values[u] = 0


def large_threshold(labeling: ComponentLabeling) -> int:
    """L = floor((최대 요소 크기 + 최소 요소 크기) / 2)"""
    if labeling.count == 0:
        raise ContractError("연결 요소가 없어 임계값을 계산할 수 없습니다")
    sizes = labeling.sizes.values()
    return (max(sizes) + min(sizes)) // 2


@dataclass
class LargeComponentIndex:
    threshold: int
    large_ids: List[int] = field(default_factory=list)
    fallback: bool = False

    @classmethod
    def from_state(cls, state: SolutionState) -> "LargeComponentIndex":
        if state.component_count == 0:
            raise ContractError("연결 요소가 없어 임계값을 계산할 수 없습니다")
        threshold = (state.max_component_size() + state.min_component_size()) // 2
        large = state.components_larger_than(threshold)
        if large:
            return cls(threshold, large)
        # 모든 요소의 크기가 같으면 최대 크기 요소 전부를 후보로
        return cls(threshold, state.components_of_size(state.max_component_size()), fallback=True)


def pick_large_component(state: SolutionState, rng: random.Random) -> int:
    return rng.choice(LargeComponentIndex.from_state(state).large_ids)


def select_removal_node(state: SolutionState, weights: NodeWeights, rng: random.Random,
                        component: Optional[int] = None) -> int:
    """큰 요소 하나를 골라 가중치 최대 노드를 반환 (동률: 차수 최대, 그다음 id 최소)

    선택된 요소의 나머지 노드들은 가중치가 1 씩 오른다.
    """
    c = pick_large_component(state, rng) if component is None else component
    slot = state._slot(c)
    return int(kernels.select_removal(state.graph.degree, weights.values, state.arrays, slot))


def best_reinsertion(state: SolutionState, exclude: Optional[Collection[int]] = None) -> int:
    """argmin_{w ∈ S \\ exclude} delta_reinsert(w), 동률이면 id 최소"""
    if not exclude:
        g = state.graph
        best = int(kernels.best_reinsertion(g.indptr, g.indices, state.cap, state.arrays, -1))
        if best < 0:
            raise ContractError("S 가 비어 있습니다")
        return best
    candidates = [w for w in state.s_list if w not in exclude]
    if not candidates:
        raise ContractError("되돌릴 수 있는 노드가 없습니다")
    return min(candidates, key=lambda w: (state.delta_reinsert(w), w))


def component_exchange(state: SolutionState, weights: NodeWeights, rng: random.Random,
                       weighting: bool = True) -> Tuple[int, int]:
    """교환 한 번. (S 로 옮긴 노드, 되돌린 노드) 를 반환."""
    if not state.is_feasible() or state.size == 0 or state.component_count == 0:
        raise ContractError(f"|S| = {state.size}, K = {state.k} 상태에서는 교환할 수 없습니다")
    g = state.graph
    u, v = kernels.exchange_once(g.indptr, g.indices, g.degree, state.cap, state.arrays,
                                 weights.values, weighting, _seed(rng))
    return int(u), int(v)


def _swap_exchange(state: SolutionState) -> None:
    """모든 (v ∉ S, w ∈ S) 쌍을 평가해 가장 좋은 교환을 적용"""
    best = None
    for v in range(state.graph.n):
        if state.in_s[v]:
            continue
        state.move_to_s(v)
        base = state.objective
        for w in state.s_list:
            if w == v:
                continue
            candidate = (base + state.delta_reinsert(w), v, w)
            if best is None or candidate < best:
                best = candidate
        state.move_from_s(v)
    if best is None:
        return
    _, v, w = best
    state.move_to_s(v)
    state.move_from_s(w)


def _swap_search(state: SolutionState, max_iter: int, budget: Optional[SearchBudget],
                 best_objective: int, best_nodes: List[int]) -> Tuple[int, List[int]]:
    no_improve = 0
    while no_improve < max_iter and best_objective > 0:
        if budget is not None and (budget.time_expired() or budget.target_reached()):
            break
        _swap_exchange(state)
        if budget is not None:
            budget.step()
        if state.objective < best_objective:
            best_objective = state.objective
            best_nodes = state.s_list
            no_improve = 0
            if budget is not None:
                budget.observe(best_objective)
        else:
            no_improve += 1
    return best_objective, best_nodes


def cbns(state: SolutionState, weights: Optional[NodeWeights] = None, max_iter: int = 1000,
         rng: Optional[random.Random] = None, budget: Optional[SearchBudget] = None,
         weighting: bool = True, neighborhood: str = "component") -> SolutionState:
    """개선 없는 교환이 max_iter 번 이어지거나 예산이 끝날 때까지 탐색

    입력 상태를 직접 바꾸며, 탐색 중 찾은 최적 상태를 반환한다.
    """
    if max_iter < 1:
        raise ValueError(f"max_iter 는 1 이상이어야 합니다: {max_iter}")
    if neighborhood not in NEIGHBORHOODS:
        raise ValueError(f"알 수 없는 이웃 구조: {neighborhood}")
    if not state.is_feasible():
        raise ContractError(f"|S| = {state.size} 가 K = {state.k} 와 다릅니다")
    if state.size == 0 or state.component_count == 0:
        return state

    rng = rng or random.Random()
    if weights is None:
        weights = NodeWeights(state.graph.n)
    else:
        weights.reset()

    best_objective = state.objective
    best_nodes = state.s_list
    if budget is not None:
        budget.observe(best_objective)

    if neighborhood == "swap":
        best_objective, best_nodes = _swap_search(state, max_iter, budget, best_objective, best_nodes)
    else:
        kernels.warmup()
        g = state.graph
        floor = 0
        if budget is not None and budget.target is not None:
            floor = max(floor, budget.target)
        best_array = np.asarray(best_nodes, dtype=np.int64)
        no_improve = 0
        while no_improve < max_iter and best_objective > floor:
            if budget is not None and (budget.time_expired() or budget.target_reached()):
                break
            done, no_improve, found, best_at = kernels.exchange_chunk(
                g.indptr, g.indices, g.degree, state.cap, state.arrays, weights.values, weighting,
                _seed(rng), CHUNK_STEPS, max_iter, no_improve, best_objective, floor, best_array,
            )
            if budget is not None:
                if best_at >= 0:
                    budget.step(best_at + 1)
                    budget.observe(int(found))
                    budget.step(done - best_at - 1)
                else:
                    budget.step(done)
            best_objective = int(found)
        best_nodes = best_array.tolist()

    if state.objective != best_objective:
        state = SolutionState(state.graph, best_nodes, state.k, state.objective_fn)
    return state
