"""해 파일 검증: 목적값을 처음부터 다시 계산해 기록된 값과 비교"""

from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Optional, Union

from ..cnp.errors import SolutionFormatError
from ..cnp.graph import Graph
from ..cnp.solution import ExcessObjective, PairwiseObjective, evaluate, read_solution


@dataclass
class Verdict:
    ok: bool
    mode: str
    k: int
    claimed: int
    recomputed: int

    @property
    def status(self) -> str:
        return "ok" if self.ok else "mismatch"

    def to_dict(self) -> Dict:
        return {
            "status": self.status,
            "mode": self.mode,
            "k": self.k,
            "claimed": self.claimed,
            "recomputed": self.recomputed,
        }


def validate_solution(graph: Graph, solution: Union[str, Path], mode: str = "cnp",
                      k: Optional[int] = None, w: Optional[int] = None) -> Verdict:
    """mode 가 cnp 이면 f, cccnp 이면 f' 를 다시 계산"""
    header_k, claimed, nodes = read_solution(solution)
    if len(nodes) != header_k:
        raise SolutionFormatError(f"헤더의 K={header_k} 와 노드 수 {len(nodes)} 가 다릅니다")
    expected_k = header_k if k is None else k
    if len(nodes) != expected_k:
        raise SolutionFormatError(f"|S| = {len(nodes)} 가 K = {expected_k} 와 다릅니다")
    bad = [u for u in nodes if not 0 <= u < graph.n]
    if bad:
        raise SolutionFormatError(f"범위를 벗어난 노드: {bad[:5]} (n={graph.n})")
    if len(set(nodes)) != len(nodes):
        raise SolutionFormatError("중복된 노드가 있습니다")

    if mode == "cccnp":
        if w is None:
            raise ValueError("cccnp 검증에는 W 가 필요합니다")
        objective = ExcessObjective(w)
    else:
        objective = PairwiseObjective()
    recomputed = evaluate(graph, nodes, objective)
    return Verdict(ok=recomputed == claimed, mode=mode, k=len(nodes),
                   claimed=claimed, recomputed=recomputed)
