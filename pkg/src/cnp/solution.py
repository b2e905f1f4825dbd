"""해 상태: 삭제 집합 S, 잔여 연결 요소, 목적값의 증분 관리"""

from pathlib import Path
from typing import Dict, Iterable, List, Optional, Set, Tuple, Union

import numpy as np

from . import kernels
from .errors import ContractError, SolutionFormatError
from .graph import IN_S, ComponentLabeling, Graph, components_of


class PairwiseObjective:
    """쌍 연결도 f(S) = Σ C(|C_i|, 2)"""

    name = "pairwise"

    def component_value(self, size: int) -> int:
        return size * (size - 1) // 2

    def __repr__(self) -> str:
        return "PairwiseObjective()"


class ExcessObjective:
    """초과 노드 수 f'(S) = Σ max(|C_i| - W, 0)"""

    name = "excess"

    def __init__(self, cap: int):
        if cap < 1:
            raise ValueError(f"W 는 1 이상이어야 합니다: {cap}")
        self.cap = cap

    def component_value(self, size: int) -> int:
        return size - self.cap if size > self.cap else 0

    def __repr__(self) -> str:
        return f"ExcessObjective(cap={self.cap})"


Objective = Union[PairwiseObjective, ExcessObjective]


def evaluate_pairwise(labeling: ComponentLabeling) -> int:
    return sum(s * (s - 1) // 2 for s in labeling.sizes.values())


def evaluate_excess(labeling: ComponentLabeling, cap: int) -> int:
    if cap < 1:
        raise ValueError(f"W 는 1 이상이어야 합니다: {cap}")
    return sum(s - cap for s in labeling.sizes.values() if s > cap)


def evaluate(graph: Graph, nodes: Iterable[int], objective: Optional[Objective] = None) -> int:
    """노드 집합의 목적값을 처음부터 계산"""
    objective = objective or PairwiseObjective()
    mask = np.zeros(graph.n, dtype=bool)
    mask[list(nodes)] = True
    labeling = components_of(graph, mask)
    return sum(objective.component_value(s) for s in labeling.sizes.values())


class SolutionState:
    """S 와 G[V\\S] 의 연결 요소, 캐시된 목적값

    상태는 `kernels` 의 배열 묶음에 있고 이동은 numba 커널로 처리한다.
    라벨은 실행 동안 재사용하지 않는다. 병합 시에는 가장 큰 요소의 라벨을 유지하고,
    분할 시에는 제거된 노드의 이웃에서 시작하는 탐색으로 새 라벨을 붙인다.
    """

    def __init__(self, graph: Graph, nodes: Iterable[int], k: Optional[int] = None,
                 objective: Optional[Objective] = None):
        self.graph = graph
        self.objective_fn = objective or PairwiseObjective()
        self.cap = getattr(self.objective_fn, "cap", 0)
        nodes = list(nodes)
        seen = set()
        for u in nodes:
            if not 0 <= u < graph.n:
                raise ContractError(f"노드 {u} 가 범위를 벗어났습니다")
            if u in seen:
                raise ContractError(f"노드 {u} 가 중복되었습니다")
            seen.add(u)
        self.k = len(nodes) if k is None else k
        self.arrays = kernels.new_arrays(graph.n)
        kernels.fill_s(self.arrays, nodes)
        kernels.label_residual(graph.indptr, graph.indices, self.cap, self.arrays)

    @property
    def in_s(self) -> np.ndarray:
        return self.arrays[0]

    @property
    def _meta(self) -> np.ndarray:
        return self.arrays[13]

    def _slot(self, c: int) -> int:
        comp_id, active = self.arrays[6], self.arrays[7]
        slots = active[:self.component_count]
        hit = slots[comp_id[slots] == c]
        if hit.size == 0:
            raise ContractError(f"요소 {c} 가 없습니다")
        return int(hit[0])

    def _active_slots(self) -> np.ndarray:
        return self.arrays[7][:self.component_count]

    # -- 조회 ----------------------------------------------------------------

    @property
    def objective(self) -> int:
        return int(self._meta[kernels.OBJ])

    @property
    def size(self) -> int:
        """|S|"""
        return int(self._meta[kernels.S_COUNT])

    @property
    def s_list(self) -> List[int]:
        return self.arrays[10][:self.size].tolist()

    @property
    def label(self) -> np.ndarray:
        """노드별 요소 라벨 (S 는 IN_S)"""
        comp, comp_id = self.arrays[1], self.arrays[6]
        return np.where(comp >= 0, comp_id[comp], IN_S)

    @property
    def members(self) -> Dict[int, Set[int]]:
        groups: Dict[int, Set[int]] = {}
        for u, c in enumerate(self.label.tolist()):
            if c != IN_S:
                groups.setdefault(c, set()).add(u)
        return groups

    @property
    def component_count(self) -> int:
        return int(self._meta[kernels.N_COMP])

    def component_size(self, c: int) -> int:
        return int(self.arrays[5][self._slot(c)])

    def component_nodes(self, c: int) -> List[int]:
        """요소 c 의 노드 (id 오름차순)"""
        return np.flatnonzero(self.arrays[1] == self._slot(c)).tolist()

    def _sizes(self) -> np.ndarray:
        return self.arrays[5][self._active_slots()]

    def min_component_size(self) -> int:
        return int(self._sizes().min())

    def max_component_size(self) -> int:
        return int(self._sizes().max())

    def _ids_where(self, mask: np.ndarray) -> List[int]:
        slots = self._active_slots()[mask]
        sizes, ids = self.arrays[5][slots], self.arrays[6][slots]
        order = np.lexsort((ids, sizes))
        return ids[order].tolist()

    def components_larger_than(self, threshold: int) -> List[int]:
        """크기가 threshold 보다 큰 요소 id (크기, id 오름차순)"""
        return self._ids_where(self._sizes() > threshold)

    def components_of_size(self, size: int) -> List[int]:
        return self._ids_where(self._sizes() == size)

    def is_feasible(self) -> bool:
        return self.size == self.k

    def nodes(self) -> List[int]:
        return sorted(self.s_list)

    def labeling(self) -> ComponentLabeling:
        slots = self._active_slots()
        ids, sizes = self.arrays[6][slots].tolist(), self.arrays[5][slots].tolist()
        return ComponentLabeling(label=self.label, sizes=dict(zip(ids, sizes)), count=len(ids))

    def copy(self) -> "SolutionState":
        other = object.__new__(SolutionState)
        other.graph = self.graph
        other.objective_fn = self.objective_fn
        other.cap = self.cap
        other.k = self.k
        other.arrays = kernels.copy_arrays(self.arrays)
        return other

    def to_dict(self) -> Dict:
        return {
            "k": self.k,
            "objective": self.objective,
            "nodes": self.nodes(),
            "components": self.component_count,
        }

    # -- 이동 ----------------------------------------------------------------

    def delta_reinsert(self, u: int) -> int:
        """u 를 잔여 그래프로 되돌릴 때의 목적값 변화 f(S\\{u}) - f(S). 상태는 바꾸지 않음."""
        if not self.in_s[u]:
            raise ContractError(f"노드 {u} 는 S 에 없습니다")
        g = self.graph
        return int(kernels.delta_reinsert(g.indptr, g.indices, self.cap, self.arrays, u))

    def move_to_s(self, v: int) -> int:
        """잔여 노드 v 를 S 로 이동. 목적값 변화량을 반환."""
        if self.in_s[v]:
            raise ContractError(f"노드 {v} 는 이미 S 에 있습니다")
        if self.size > self.k:
            raise ContractError(f"|S| = {self.size} 가 이미 K+1 입니다")
        g = self.graph
        return int(kernels.move_to_s(g.indptr, g.indices, self.cap, self.arrays, v))

    def move_from_s(self, u: int) -> int:
        """S 의 노드 u 를 잔여 그래프로 되돌림. 목적값 변화량을 반환."""
        if not self.in_s[u]:
            raise ContractError(f"노드 {u} 는 S 에 없습니다")
        g = self.graph
        return int(kernels.move_from_s(g.indptr, g.indices, self.cap, self.arrays, u))


def delta_reinsert(state: SolutionState, u: int) -> int:
    return state.delta_reinsert(u)


def move_to_s(state: SolutionState, v: int) -> SolutionState:
    state.move_to_s(v)
    return state


def move_from_s(state: SolutionState, u: int) -> SolutionState:
    state.move_from_s(u)
    return state


def write_solution(path: Union[str, Path], nodes: Iterable[int], objective: int) -> None:
    """`K f` 한 줄 뒤에 노드 번호를 한 줄에 하나씩 기록"""
    nodes = sorted(nodes)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        f.write(f"{len(nodes)} {objective}\n")
        for u in nodes:
            f.write(f"{u}\n")


def read_solution(path: Union[str, Path]) -> Tuple[int, int, List[int]]:
    """해 파일 읽기. (K, f, nodes) 반환."""
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"해 파일을 찾을 수 없습니다: {path}")
    tokens = path.read_text(encoding="utf-8").split()
    if len(tokens) < 2:
        raise SolutionFormatError(f"헤더 'K f' 가 없습니다: {path}")
    try:
        values = [int(t, 10) for t in tokens]
    except ValueError:
        raise SolutionFormatError(f"정수가 아닌 값이 있습니다: {path}") from None
    k, objective, nodes = values[0], values[1], values[2:]
    return k, objective, nodes
