"""크기 제한 CNP (CC-CNP): 모든 잔여 요소가 W 이하가 되도록 하는 최소 K 탐색

탐욕 구성으로 얻은 K 에서 시작해 K 를 하나씩 줄이며 f' = 0 인 해를 MACNP 로 찾는다.
"""

import logging
import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np

from . import kernels
from .budget import SearchBudget
from .graph import Graph
from .memetic import MacnpParams, macnp
from .solution import ExcessObjective, SolutionState

logger = logging.getLogger(__name__)

# 동률 후보 중 실제로 제거해 평가해 볼 최대 개수
TIE_EVALUATIONS = 16


@dataclass
class CCParams:
    w: int
    inner: MacnpParams = field(default_factory=MacnpParams)
    level_time_limit: Optional[float] = None
    level_generations: Optional[int] = None

    def validate(self) -> "CCParams":
        if self.w < 1:
            raise ValueError(f"W 는 1 이상이어야 합니다: {self.w}")
        if self.level_time_limit is not None and self.level_time_limit <= 0:
            raise ValueError("K 단계 시간 제한은 양수여야 합니다")
        if self.level_generations is not None and self.level_generations < 0:
            raise ValueError("K 단계 세대 수는 0 이상이어야 합니다")
        self.inner.validate()
        return self


@dataclass
class LevelRecord:
    k: int
    excess: int
    seconds: float
    feasible: bool

    def to_dict(self, include_timing: bool = True) -> Dict:
        return {
            "k": self.k,
            "excess": self.excess,
            "seconds": round(self.seconds, 6) if include_timing else None,
            "feasible": self.feasible,
        }


@dataclass
class CCResult:
    w: int
    k_best: int
    nodes: List[int]
    initial_size: int
    steps: int = 0
    time_to_best: Optional[float] = None
    trajectory: List[LevelRecord] = field(default_factory=list)

    @property
    def objective(self) -> int:
        return self.k_best


def construct_initial(graph: Graph, w: int) -> List[int]:
    """W 를 넘는 요소가 없어질 때까지 최대 요소의 최고 차수 노드를 S 로 옮김

    차수가 같은 후보는 앞의 TIE_EVALUATIONS 개를 실제로 옮겨 보고 f' 가 가장 작은
    노드를 고른다. 그래도 같으면 id 가 작은 노드.
    """
    state = SolutionState(graph, [], graph.n, ExcessObjective(w))
    # 잔여 그래프에서의 차수가 곧 요소 내부 차수
    local = graph.degree.copy()
    while state.objective > 0:
        c = min(state.components_of_size(state.max_component_size()))
        group = np.asarray(state.component_nodes(c))
        top = local[group].max()
        tied = group[local[group] == top].tolist()
        if len(tied) == 1:
            chosen = tied[0]
        else:
            # id 만으로 고르면 P5, W=2 에서 노드 1 을 먼저 지워 |S0| = 2 가 된다
            scored = []
            for u in tied[:TIE_EVALUATIONS]:
                state.move_to_s(u)
                scored.append((state.objective, u))
                state.move_from_s(u)
            chosen = min(scored)[1]
        state.move_to_s(chosen)
        local[graph.neighbors(chosen)] -= 1
    logger.info("%s: 초기 구성 |S0| = %d (W=%d)", graph.name or "graph", state.size, w)
    return state.nodes()


def maccc(graph: Graph, cc_params: CCParams, rng: Optional[random.Random] = None,
          budget: Optional[SearchBudget] = None) -> CCResult:
    """K 를 줄여 가며 f' = 0 인 해를 찾고, 마지막으로 성공한 (K, S) 를 반환"""
    cc_params.validate()
    rng = rng or random.Random()
    budget = budget or SearchBudget(time_limit=3600.0)
    kernels.warmup()
    if budget.time_limit is None and cc_params.level_generations is None:
        raise ValueError("시간 제한이 없으면 K 단계 세대 수(level_generations)가 필요합니다")
    budget.start()

    nodes = construct_initial(graph, cc_params.w)
    result = CCResult(
        w=cc_params.w,
        k_best=len(nodes),
        nodes=nodes,
        initial_size=len(nodes),
        time_to_best=budget.elapsed(),
        trajectory=[LevelRecord(len(nodes), 0, budget.elapsed(), True)],
    )
    objective = ExcessObjective(cc_params.w)

    k = len(nodes)
    while True:
        k -= 1
        if k < 1 or budget.time_expired():
            break
        level = budget.child(cc_params.level_time_limit, cc_params.level_generations, target=0)
        started = budget.elapsed()
        run = macnp(graph, k, cc_params.inner, rng, level, objective)
        result.steps += run.steps
        feasible = run.objective == 0
        result.trajectory.append(LevelRecord(k, run.objective, budget.elapsed() - started, feasible))
        logger.info("%s: K=%d, f'=%d, %s", graph.name or "graph", k, run.objective,
                    "성공" if feasible else "실패")
        if not feasible:
            break
        result.k_best = k
        result.nodes = run.nodes
        result.time_to_best = budget.elapsed()
    return result
