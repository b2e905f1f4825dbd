"""MACNP: 개체군 초기화, 이중 백본 교차, CBNS 개선, 순위 기반 개체군 갱신"""

import itertools
import logging
import math
import random
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np
from scipy.stats import rankdata

from . import kernels
from .budget import SearchBudget
from .cbns import NEIGHBORHOODS, NodeWeights, best_reinsertion, cbns, pick_large_component
from .errors import ContractError, InitializationError
from .graph import Graph
from .solution import Objective, PairwiseObjective, SolutionState

logger = logging.getLogger(__name__)

CROSSOVERS = ("double", "single")

# 초기화에서 남은 K-부분집합을 나열해도 되는 C(n, K) 상한
ENUMERATION_LIMIT = 10 ** 4


@dataclass(frozen=True)
class Individual:
    nodes: Tuple[int, ...]
    objective: int

    @classmethod
    def from_state(cls, state: SolutionState) -> "Individual":
        return cls(tuple(state.nodes()), state.objective)

    @property
    def signature(self) -> Tuple[int, ...]:
        return self.nodes

    def __len__(self) -> int:
        return len(self.nodes)


@dataclass
class Population:
    members: List[Individual]
    capacity: int = 20
    pool_beta: float = 0.6
    n: int = 0

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, individual: Individual) -> bool:
        return any(m.signature == individual.signature for m in self.members)

    def signatures(self) -> Set[Tuple[int, ...]]:
        return {m.signature for m in self.members}

    def objectives(self) -> List[int]:
        return [m.objective for m in self.members]

    def best(self) -> Individual:
        return min(self.members, key=lambda m: (m.objective, m.nodes))


@dataclass
class BackbonePartition:
    common: List[int]      # X_A
    exclusive: List[int]   # X_B
    excluded: List[int]    # X_C


@dataclass
class MacnpParams:
    """MACNP 파라미터 (기본값은 벤치마크 실험에서 쓰는 설정)"""

    pop_size: int = 20
    max_iter: int = 1000
    p0: float = 0.85
    pool_beta: float = 0.6
    weighting: bool = True
    neighborhood: str = "component"
    crossover: str = "double"

    def validate(self) -> "MacnpParams":
        if self.pop_size < 2:
            raise ValueError(f"pop_size 는 2 이상이어야 합니다: {self.pop_size}")
        if self.max_iter < 1:
            raise ValueError(f"max_iter 는 1 이상이어야 합니다: {self.max_iter}")
        if not 0.0 < self.p0 < 1.0:
            raise ValueError(f"p0 는 (0, 1) 범위여야 합니다: {self.p0}")
        if not 0.0 <= self.pool_beta <= 1.0:
            raise ValueError(f"pool_beta 는 [0, 1] 범위여야 합니다: {self.pool_beta}")
        if self.neighborhood not in NEIGHBORHOODS:
            raise ValueError(f"알 수 없는 이웃 구조: {self.neighborhood}")
        if self.crossover not in CROSSOVERS:
            raise ValueError(f"알 수 없는 교차 연산: {self.crossover}")
        return self

    def to_dict(self) -> Dict:
        return {
            "pop_size": self.pop_size,
            "max_iter": self.max_iter,
            "p0": self.p0,
            "pool_beta": self.pool_beta,
            "weighting": self.weighting,
            "neighborhood": self.neighborhood,
            "crossover": self.crossover,
        }


@dataclass
class MacnpResult:
    best: Individual
    time_to_best: Optional[float]
    steps_to_best: int
    generation_to_best: int
    steps: int
    generations: int
    random_start_objective: int
    initial_objective: int
    population_size: int = 0
    history: List[Tuple[int, int]] = field(default_factory=list)

    @property
    def objective(self) -> int:
        return self.best.objective

    @property
    def nodes(self) -> List[int]:
        return list(self.best.nodes)


# -- 교차 ---------------------------------------------------------------------

def partition_backbones(s1: Iterable[int], s2: Iterable[int], n: int) -> BackbonePartition:
    a, b = set(s1), set(s2)
    common = a & b
    union = a | b
    return BackbonePartition(
        common=sorted(common),
        exclusive=sorted(union - common),
        excluded=[u for u in range(n) if u not in union],
    )


def inherit_backbones(partition: BackbonePartition, p0: float, rng: random.Random) -> List[int]:
    """X_A 전부와, X_B 의 각 원소를 id 오름차순으로 확률 p0 로 상속한 부분해"""
    if not 0.0 <= p0 <= 1.0:
        raise ValueError(f"p0 는 [0, 1] 범위여야 합니다: {p0}")
    inherited = list(partition.common)
    for x in partition.exclusive:
        if rng.random() < p0:
            inherited.append(x)
    return inherited


def repair(graph: Graph, nodes: Sequence[int], k: int, rng: random.Random,
           objective: Optional[Objective] = None, keep: Iterable[int] = ()) -> List[int]:
    """부분해를 정확히 K 개 노드로 맞춤

    부족하면 큰 요소에서 무작위 노드를 하나씩 추가하고,
    넘치면 keep 에 없는 노드 중 delta_reinsert 가 가장 작은 노드를 하나씩 되돌린다.
    """
    state = SolutionState(graph, nodes, k, objective)
    while state.size < k:
        c = pick_large_component(state, rng)
        state.move_to_s(rng.choice(state.component_nodes(c)))
    protected = set(keep)
    if len(protected) > k:
        protected = set()
    while state.size > k:
        state.move_from_s(best_reinsertion(state, exclude=protected))
    return state.nodes()


def double_backbone_crossover(graph: Graph, s1: Sequence[int], s2: Sequence[int], p0: float,
                              rng: random.Random, objective: Optional[Objective] = None,
                              mode: str = "double") -> List[int]:
    k = len(s1)
    if len(s2) != k:
        raise ContractError(f"부모 크기가 다릅니다: {len(s1)} != {k}")
    partition = partition_backbones(s1, s2, graph.n)
    if mode == "single":
        offspring = list(partition.common)
    else:
        offspring = inherit_backbones(partition, p0, rng)
    return repair(graph, offspring, k, rng, objective, keep=partition.common)


# -- 개체군 갱신 --------------------------------------------------------------

def solution_distance(s1: Iterable[int], s2: Iterable[int]) -> int:
    a = set(s1)
    return len(a) - len(a & set(s2))


def _average_distances(pool: List[Individual], n: int) -> np.ndarray:
    k = len(pool[0])
    membership = np.zeros((len(pool), n), dtype=np.int32)
    for i, ind in enumerate(pool):
        membership[i, list(ind.nodes)] = 1
    distance = k - membership @ membership.T
    np.fill_diagonal(distance, 0)
    return distance.sum(axis=1) / (len(pool) - 1)


def pool_scores(pool: List[Individual], pool_beta: float, n: int) -> np.ndarray:
    """beta * rank_f + (1 - beta) * rank_d (목적값 오름차순, 평균 거리 내림차순)"""
    rank_f = rankdata([ind.objective for ind in pool], method="min")
    rank_d = rankdata(-_average_distances(pool, n), method="min")
    return np.round(pool_beta * rank_f + (1.0 - pool_beta) * rank_d, 9)


def pool_update(population: Population, offspring: Individual) -> bool:
    """자식을 index 0 에 두고 가장 나쁜 개체를 찾아 교체. 자식이 들어갔으면 True."""
    if offspring in population:
        return False
    pool = [offspring] + population.members
    n = population.n or 1 + max(max(m.nodes, default=0) for m in pool)
    scores = pool_scores(pool, population.pool_beta, n).tolist()
    worst = max(range(len(pool)), key=lambda i: (scores[i], pool[i].objective, i))
    if worst == 0:
        return False
    population.members[worst - 1] = offspring
    return True


# -- 초기화와 메인 루프 -------------------------------------------------------

def _perturb(state: SolutionState, rng: random.Random) -> None:
    c = pick_large_component(state, rng)
    u = rng.choice(state.component_nodes(c))
    state.move_to_s(u)
    w = rng.choice(sorted(x for x in state.s_list if x != u))
    state.move_from_s(w)


def _unseen_subset(graph: Graph, k: int, seen: Set[Tuple[int, ...]], rng: random.Random,
                   objective: Optional[Objective], limit: int) -> Optional[SolutionState]:
    if math.comb(graph.n, k) > limit:
        return None
    unseen = [c for c in itertools.combinations(range(graph.n), k) if c not in seen]
    if not unseen:
        return None
    return SolutionState(graph, rng.choice(unseen), k, objective)


def init_population(graph: Graph, k: int, p: int, rng: random.Random,
                    budget: Optional[SearchBudget] = None, params: Optional[MacnpParams] = None,
                    objective: Optional[Objective] = None,
                    enumeration_limit: int = ENUMERATION_LIMIT) -> Tuple[Population, int]:
    """무작위 K-부분집합에 CBNS 를 적용한 서로 다른 개체 p 개 생성

    개선된 해가 기존 개체와 같으면 무작위 교환을 n·K 번까지 반복한다. 그래도 같고
    C(n, K) 가 enumeration_limit 이하이면 아직 없는 K-부분집합 하나를 무작위로 고른다.
    둘 다 실패하면 InitializationError. 시간 예산이 끝나도 개체 수는 줄이지 않는다
    (예산이 끝난 뒤의 CBNS 는 바로 반환한다).

    (개체군, 무작위 시작해 중 최소 목적값) 을 반환한다.
    """
    params = params or MacnpParams()
    if p < 2:
        raise ValueError(f"개체군 크기는 2 이상이어야 합니다: {p}")
    if not 1 <= k < graph.n:
        raise ValueError(f"K 는 1..{graph.n - 1} 범위여야 합니다: {k}")
    target = min(p, math.comb(graph.n, k))
    if target < p:
        logger.info("개체군 크기를 C(%d, %d) = %d 로 제한", graph.n, k, target)

    members: List[Individual] = []
    seen: Set[Tuple[int, ...]] = set()
    weights = NodeWeights(graph.n)
    random_start = None
    limit = graph.n * k

    while len(members) < target:
        state = SolutionState(graph, rng.sample(range(graph.n), k), k, objective)
        if random_start is None or state.objective < random_start:
            random_start = state.objective
        state = cbns(state, weights, params.max_iter, rng, budget,
                     weighting=params.weighting, neighborhood=params.neighborhood)

        attempts = 0
        while tuple(state.nodes()) in seen and attempts < limit:
            _perturb(state, rng)
            attempts += 1
            if budget is not None:
                budget.step()
                budget.observe(state.objective)
        if tuple(state.nodes()) in seen:
            state = _unseen_subset(graph, k, seen, rng, objective, enumeration_limit)
            if state is None:
                raise InitializationError(f"{limit}번 교환 후에도 서로 다른 해를 만들지 못했습니다 "
                                          f"(개체 {len(members)}/{target})")
            logger.debug("교환으로 새 해를 찾지 못해 남은 부분집합에서 선택: %s", state.nodes())
            if budget is not None:
                budget.observe(state.objective)

        individual = Individual.from_state(state)
        seen.add(individual.signature)
        members.append(individual)

    population = Population(members, capacity=len(members), pool_beta=params.pool_beta, n=graph.n)
    logger.info("개체군 초기화 완료: %d 개, 최소 f = %d", len(members), population.best().objective)
    return population, random_start


def _pick_parents(p: int, rng: random.Random) -> Tuple[int, int]:
    i = rng.randrange(p)
    j = rng.randrange(p)
    while j == i:
        j = rng.randrange(p)
    return i, j


def macnp(graph: Graph, k: int, params: Optional[MacnpParams] = None,
          rng: Optional[random.Random] = None, budget: Optional[SearchBudget] = None,
          objective: Optional[Objective] = None) -> MacnpResult:
    """예산이 끝날 때까지 교차 → CBNS → 개체군 갱신을 반복"""
    params = (params or MacnpParams()).validate()
    if not 1 <= k < graph.n:
        raise ValueError(f"K 는 1..{graph.n - 1} 범위여야 합니다: {k}")
    rng = rng or random.Random()
    budget = budget or SearchBudget(generations=100)
    objective = objective or PairwiseObjective()
    kernels.warmup()
    budget.start()

    population, random_start = init_population(graph, k, params.pop_size, rng, budget, params, objective)
    best = population.best()
    initial = best.objective
    history = [(0, best.objective)]
    weights = NodeWeights(graph.n)

    while len(population) >= 2 and not budget.expired():
        i, j = _pick_parents(len(population), rng)
        child_nodes = double_backbone_crossover(
            graph, population.members[i].nodes, population.members[j].nodes,
            params.p0, rng, objective, mode=params.crossover,
        )
        state = SolutionState(graph, child_nodes, k, objective)
        state = cbns(state, weights, params.max_iter, rng, budget,
                     weighting=params.weighting, neighborhood=params.neighborhood)
        child = Individual.from_state(state)
        budget.next_generation()

        if child.objective < best.objective:
            best = child
            history.append((budget.generation, best.objective))
            logger.info("%s 세대 %d: 새 최적 f = %d (%.2fs)",
                        graph.name or "graph", budget.generation, best.objective, budget.elapsed())
        pool_update(population, child)

    return MacnpResult(
        best=best,
        time_to_best=budget.time_to_best,
        steps_to_best=budget.steps_to_best,
        generation_to_best=budget.generation_to_best,
        steps=budget.steps,
        generations=budget.generation,
        random_start_objective=random_start,
        initial_objective=initial,
        population_size=len(population),
        history=history,
    )
