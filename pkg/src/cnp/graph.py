"""벤치마크 인스턴스 파싱과 잔여 그래프 연결 요소 계산

인스턴스 형식:
    # 주석 (또는 c 로 시작하는 줄)
    n m
    u v
    ...
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, TextIO, Tuple, Union

import networkx as nx
import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .errors import GraphFormatError, GraphRangeError

logger = logging.getLogger(__name__)

# S 에 속한 노드의 라벨
IN_S = -1


class Graph:
    """불변 무방향 희소 그래프 (offset + flat neighbor 배열)"""

    def __init__(self, n: int, indptr: np.ndarray, indices: np.ndarray, name: str = ""):
        self.n = n
        self.name = name
        self.indptr = indptr
        self.indices = indices
        self.indptr.setflags(write=False)
        self.indices.setflags(write=False)
        self.m = int(indices.size) // 2
        self.degree = np.diff(indptr)
        self.degree.setflags(write=False)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]], name: str = "") -> "Graph":
        """간선 목록으로 그래프 생성. 중복 간선은 하나로 합치고 self-loop 는 버림."""
        pairs = np.asarray(list(edges), dtype=np.int64).reshape(-1, 2)
        if pairs.size and (pairs.min() < 0 or pairs.max() >= n):
            raise GraphRangeError(f"노드 번호는 0..{n - 1} 범위여야 합니다")
        pairs = pairs[pairs[:, 0] != pairs[:, 1]]
        pairs = np.sort(pairs, axis=1)
        if pairs.size:
            pairs = np.unique(pairs, axis=0)

        src = np.concatenate([pairs[:, 0], pairs[:, 1]])
        dst = np.concatenate([pairs[:, 1], pairs[:, 0]])
        order = np.lexsort((dst, src))
        indices = dst[order].astype(np.int32)
        counts = np.bincount(src, minlength=n)
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(counts, out=indptr[1:])
        return cls(n, indptr, indices, name=name)

    @classmethod
    def from_networkx(cls, g: nx.Graph, name: str = "") -> "Graph":
        """networkx 그래프 변환 (노드는 정렬 순서대로 0..n-1 로 재번호)"""
        index = {node: i for i, node in enumerate(sorted(g.nodes()))}
        edges = [(index[u], index[v]) for u, v in g.edges()]
        return cls.from_edges(len(index), edges, name=name)

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges())
        return g

    @cached_property
    def adjacency(self) -> List[List[int]]:
        """노드별 정렬된 이웃 리스트 (탐색 루프용 파이썬 리스트)"""
        flat = self.indices.tolist()
        bounds = self.indptr.tolist()
        return [flat[bounds[u]:bounds[u + 1]] for u in range(self.n)]

    @cached_property
    def degrees(self) -> List[int]:
        return self.degree.tolist()

    @cached_property
    def csr(self) -> csr_matrix:
        data = np.ones(self.indices.size, dtype=np.int8)
        return csr_matrix((data, self.indices, self.indptr), shape=(self.n, self.n))

    def neighbors(self, u: int) -> np.ndarray:
        return self.indices[self.indptr[u]:self.indptr[u + 1]]

    def edges(self) -> List[Tuple[int, int]]:
        """u < v 인 간선 목록 (정렬됨)"""
        result = []
        for u, nbrs in enumerate(self.adjacency):
            result.extend((u, v) for v in nbrs if u < v)
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.n == other.n
            and np.array_equal(self.indptr, other.indptr)
            and np.array_equal(self.indices, other.indices)
        )

    def __repr__(self) -> str:
        return f"Graph(name={self.name!r}, n={self.n}, m={self.m})"


@dataclass
class ComponentLabeling:
    """잔여 그래프 G[V\\S] 의 연결 요소 라벨링"""

    label: np.ndarray
    sizes: Dict[int, int]
    count: int

    def residual_size(self) -> int:
        return sum(self.sizes.values())


def _is_comment(line: str) -> bool:
    return line.startswith("#") or line.startswith("c")


def _parse_pair(line: str, line_no: int) -> Tuple[int, int]:
    tokens = line.split()
    if len(tokens) != 2:
        raise GraphFormatError(f"정수 두 개가 필요합니다: {line!r}", line_no)
    try:
        return int(tokens[0], 10), int(tokens[1], 10)
    except ValueError:
        raise GraphFormatError(f"정수가 아닙니다: {line!r}", line_no) from None


def load_graph(source: TextIO, one_indexed: bool = False, strict: bool = False,
               name: str = "") -> Graph:
    """인스턴스 텍스트를 Graph 로 파싱"""
    header: Optional[Tuple[int, int]] = None
    edges: List[Tuple[int, int]] = []
    edge_lines = 0
    offset = 1 if one_indexed else 0

    for line_no, raw in enumerate(source, start=1):
        line = raw.strip()
        if not line or _is_comment(line):
            continue

        a, b = _parse_pair(line, line_no)
        if header is None:
            if a < 0 or b < 0:
                raise GraphFormatError("헤더 값은 음수일 수 없습니다", line_no)
            header = (a, b)
            continue

        edge_lines += 1
        u, v = a - offset, b - offset
        n = header[0]
        if not (0 <= u < n and 0 <= v < n):
            raise GraphRangeError(f"노드 번호 {a} {b} 가 범위를 벗어났습니다 (n={n})", line_no)
        if u == v:
            if strict:
                raise GraphFormatError(f"self-loop: {a} {b}", line_no)
            logger.warning("%s: %d번째 줄 self-loop %d 제거", name or "instance", line_no, a)
            continue
        edges.append((u, v))

    if header is None:
        raise GraphFormatError("'n m' 헤더가 없습니다")

    n, declared_m = header
    graph = Graph.from_edges(n, edges, name=name)
    if edge_lines != declared_m:
        if strict:
            raise GraphFormatError(f"간선 줄 수 {edge_lines} 가 헤더의 m={declared_m} 와 다릅니다")
        logger.warning("%s: 헤더 m=%d, 간선 줄 %d", name or "instance", declared_m, edge_lines)
    if graph.m != len(edges):
        logger.debug("%s: 중복 간선 %d 개 병합", name or "instance", len(edges) - graph.m)
    return graph


def load_graph_file(path: Union[str, Path], one_indexed: bool = False,
                    strict: bool = False) -> Graph:
    """파일에서 인스턴스 로드. 인스턴스 이름은 파일명(확장자 제외)."""
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"인스턴스 파일을 찾을 수 없습니다: {path}")
    with open(path, "r", encoding="utf-8") as f:
        return load_graph(f, one_indexed=one_indexed, strict=strict, name=path.stem)


def dump_graph(graph: Graph, stream: TextIO) -> None:
    """인스턴스 형식으로 직렬화 (0-based)"""
    stream.write(f"{graph.n} {graph.m}\n")
    for u, v in graph.edges():
        stream.write(f"{u} {v}\n")


def components_of(graph: Graph, in_s: Sequence[bool]) -> ComponentLabeling:
    """S 를 제거한 잔여 그래프의 연결 요소 라벨링 (O(n + m))"""
    mask = np.asarray(in_s, dtype=bool)
    if mask.shape != (graph.n,):
        raise ValueError(f"마스크 길이 {mask.size} 가 노드 수 {graph.n} 와 다릅니다")

    label = np.full(graph.n, IN_S, dtype=np.int64)
    residual = np.flatnonzero(~mask)
    if residual.size == 0:
        return ComponentLabeling(label=label, sizes={}, count=0)

    sub = graph.csr[residual][:, residual]
    count, sub_labels = connected_components(sub, directed=False)
    label[residual] = sub_labels
    sizes = np.bincount(sub_labels, minlength=count)
    return ComponentLabeling(
        label=label,
        sizes={c: int(s) for c, s in enumerate(sizes.tolist())},
        count=int(count),
    )


def sparsity_beta(graph: Graph) -> float:
    """희소도 지표 2m / (n(n+1))"""
    if graph.n == 0:
        return 0.0
    return 2.0 * graph.m / (graph.n * (graph.n + 1))
