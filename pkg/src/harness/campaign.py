"""시드 고정 다중 시행 실험 실행과 결과 집계"""

import json
import logging
import random
from dataclasses import dataclass, field
from pathlib import Path
from statistics import mean
from typing import Dict, List, Optional, Sequence, Union

import pandas as pd
from joblib import Parallel, delayed
from tqdm import tqdm

from ..cnp.budget import SearchBudget
from ..cnp.cccnp import CCParams, maccc
from ..cnp.graph import Graph, load_graph_file, sparsity_beta
from ..cnp.memetic import MacnpParams, macnp
from ..cnp.solution import write_solution
from .config import Settings
from .kbv import KBVEntry, KBVTable

logger = logging.getLogger(__name__)

MODES = ("cnp", "cccnp")


@dataclass
class CampaignConfig:
    instances: List[str]
    mode: str = "cnp"
    k: Optional[int] = None
    w: Optional[int] = None
    trials: int = 1
    base_seed: int = 0
    time_limit: Optional[float] = None
    generations: Optional[int] = None
    params: MacnpParams = field(default_factory=MacnpParams)
    level_time_limit: Optional[float] = None
    workers: int = 1
    one_indexed: bool = False
    strict: bool = False
    solution_dir: Optional[Path] = None
    progress: bool = True

    @property
    def include_timing(self) -> bool:
        """세대 수로 멈추는 실행은 시간 값을 기록하지 않는다 (재현 가능한 출력)"""
        return self.generations is None

    def validate(self) -> "CampaignConfig":
        if not self.instances:
            raise ValueError("인스턴스가 지정되지 않았습니다")
        if self.mode not in MODES:
            raise ValueError(f"알 수 없는 모드: {self.mode}")
        if self.trials < 1:
            raise ValueError(f"trials 는 1 이상이어야 합니다: {self.trials}")
        if self.workers < 1:
            raise ValueError(f"workers 는 1 이상이어야 합니다: {self.workers}")
        if self.time_limit is None and self.generations is None:
            raise ValueError("time_limit 또는 generations 중 하나는 필요합니다")
        if self.time_limit is not None and self.time_limit <= 0:
            raise ValueError(f"time_limit 은 양수여야 합니다: {self.time_limit}")
        if self.generations is not None and self.generations < 0:
            raise ValueError(f"generations 는 0 이상이어야 합니다: {self.generations}")
        if self.k is not None and self.k < 1:
            raise ValueError(f"K 는 1 이상이어야 합니다: {self.k}")
        if self.w is not None and self.w < 1:
            raise ValueError(f"W 는 1 이상이어야 합니다: {self.w}")
        self.params.validate()
        return self

    def budget(self) -> SearchBudget:
        if self.mode == "cccnp":
            # 세대 수는 K 단계마다 적용하고 시간 제한은 실행 전체에 적용
            return SearchBudget(time_limit=self.time_limit)
        return SearchBudget(time_limit=self.time_limit, generations=self.generations)

    def to_dict(self) -> Dict:
        return {
            "mode": self.mode,
            "trials": self.trials,
            "base_seed": self.base_seed,
            "time_limit": self.time_limit if self.include_timing else None,
            "generations": self.generations,
            "params": self.params.to_dict(),
        }


@dataclass
class TrialRecord:
    instance: str
    trial: int
    seed: int
    objective: int
    nodes: List[int]
    steps: int
    steps_to_best: int
    generations: int
    time_to_best: Optional[float]
    elapsed: float
    random_start_objective: Optional[int] = None
    initial_objective: Optional[int] = None
    trajectory: List[Dict] = field(default_factory=list)

    @property
    def steps_per_second(self) -> float:
        return self.steps / self.elapsed if self.elapsed > 0 else 0.0

    def to_dict(self, include_timing: bool = True) -> Dict:
        d = {
            "instance": self.instance,
            "trial": self.trial,
            "seed": self.seed,
            "objective": self.objective,
            "nodes": self.nodes,
            "steps": self.steps,
            "steps_to_best": self.steps_to_best,
            "generations": self.generations,
            "time_to_best": _timing(self.time_to_best, include_timing),
            "elapsed": _timing(self.elapsed, include_timing),
            "steps_per_second": _timing(self.steps_per_second, include_timing),
        }
        if self.random_start_objective is not None:
            d["random_start_objective"] = self.random_start_objective
            d["initial_objective"] = self.initial_objective
        if self.trajectory:
            d["trajectory"] = [
                dict(level, seconds=_timing(level["seconds"], include_timing))
                for level in self.trajectory
            ]
        return d


def _timing(value: Optional[float], include_timing: bool) -> Optional[float]:
    if not include_timing or value is None:
        return None
    return round(value, 6)


@dataclass
class RunReport:
    instance: str
    mode: str
    k: Optional[int]
    w: Optional[int]
    base_seed: int
    records: List[TrialRecord]
    kbv: Optional[int] = None
    kbv_best: Optional[int] = None
    optimal: bool = False
    sparsity_beta: Optional[float] = None

    @property
    def trials(self) -> int:
        return len(self.records)

    @property
    def seeds(self) -> List[int]:
        return [r.seed for r in self.records]

    @property
    def f_best(self) -> int:
        return min(r.objective for r in self.records)

    @property
    def f_avg(self) -> float:
        return mean(r.objective for r in self.records)

    @property
    def t_avg(self) -> Optional[float]:
        times = [r.time_to_best for r in self.records if r.time_to_best is not None]
        return mean(times) if times else None

    @property
    def steps(self) -> float:
        """최적값에 도달하기까지의 평균 교환 횟수"""
        return mean(r.steps_to_best for r in self.records)

    @property
    def gap(self) -> Optional[int]:
        return None if self.kbv is None else self.f_best - self.kbv

    @property
    def gap_avg(self) -> Optional[float]:
        return None if self.kbv is None else self.f_avg - self.kbv

    @property
    def best_record(self) -> TrialRecord:
        return min(self.records, key=lambda r: (r.objective, r.trial))

    def hits(self, target: int) -> int:
        return sum(1 for r in self.records if r.objective <= target)

    def summary(self, include_timing: bool = True) -> Dict:
        """CSV 와 표에 쓰는 한 줄 요약"""
        return {
            "instance": self.instance,
            "mode": self.mode,
            "k": self.k,
            "w": self.w,
            "trials": self.trials,
            "f_best": self.f_best,
            "f_avg": round(self.f_avg, 6),
            "t_avg": _timing(self.t_avg, include_timing),
            "steps": round(self.steps, 6),
            "kbv": self.kbv,
            "kbv_best": self.kbv_best,
            "optimal": self.optimal,
            "sparsity_beta": None if self.sparsity_beta is None else round(self.sparsity_beta, 6),
            "gap": self.gap,
            "gap_avg": None if self.gap_avg is None else round(self.gap_avg, 6),
        }

    def to_dict(self, include_timing: bool = True) -> Dict:
        d = self.summary(include_timing)
        d.update({
            "base_seed": self.base_seed,
            "seeds": self.seeds,
            "best_nodes": self.best_record.nodes,
            "records": [r.to_dict(include_timing) for r in self.records],
        })
        return d


def run_trial(graph: Graph, config: CampaignConfig, value: int, trial: int) -> TrialRecord:
    """시행 하나. value 는 cnp 모드에서 K, cccnp 모드에서 W."""
    seed = config.base_seed + trial
    rng = random.Random(seed)
    budget = config.budget()

    if config.mode == "cccnp":
        cc_params = CCParams(
            w=value,
            inner=config.params,
            level_time_limit=config.level_time_limit,
            level_generations=config.generations,
        )
        result = maccc(graph, cc_params, rng, budget)
        record = TrialRecord(
            instance=graph.name,
            trial=trial,
            seed=seed,
            objective=result.k_best,
            nodes=result.nodes,
            steps=result.steps,
            steps_to_best=result.steps,
            generations=len(result.trajectory) - 1,  # 시도한 K 단계 수
            time_to_best=result.time_to_best,
            elapsed=budget.elapsed(),
            trajectory=[level.to_dict() for level in result.trajectory],
        )
    else:
        result = macnp(graph, value, config.params, rng, budget)
        record = TrialRecord(
            instance=graph.name,
            trial=trial,
            seed=seed,
            objective=result.objective,
            nodes=result.nodes,
            steps=result.steps,
            steps_to_best=result.steps_to_best,
            generations=result.generations,
            time_to_best=result.time_to_best,
            elapsed=budget.elapsed(),
            random_start_objective=result.random_start_objective,
            initial_objective=result.initial_objective,
        )

    logger.info("%s 시행 %d (seed=%d): f=%d, %d steps, %.0f steps/sec",
                graph.name, trial, seed, record.objective, record.steps, record.steps_per_second)
    return record


def _resolve_value(config: CampaignConfig, entry: Optional[KBVEntry], name: str) -> int:
    if config.mode == "cccnp":
        value = config.w if config.w is not None else (entry.w if entry else None)
        label = "W"
    else:
        value = config.k if config.k is not None else (entry.k if entry else None)
        label = "K"
    if value is None:
        raise ValueError(f"{name}: {label} 값이 없고 KBV 표에도 없습니다")
    return value


def run_instance(graph: Graph, config: CampaignConfig, table: Optional[KBVTable] = None) -> RunReport:
    table = table or KBVTable.for_mode(config.mode)
    entry = table.get(graph.name)
    value = _resolve_value(config, entry, graph.name)
    # 명시적으로 다른 K/W 를 준 경우 표의 KBV 는 비교 대상이 아님
    same_setting = entry is not None and (
        (config.mode == "cnp" and entry.k == value) or (config.mode == "cccnp" and entry.w == value)
    )

    trials = range(config.trials)
    if config.progress:
        trials = tqdm(trials, desc=graph.name, total=config.trials)
    if config.workers > 1:
        records = Parallel(n_jobs=config.workers)(
            delayed(run_trial)(graph, config, value, i) for i in trials
        )
    else:
        records = [run_trial(graph, config, value, i) for i in trials]
    records.sort(key=lambda r: r.trial)

    report = RunReport(
        instance=graph.name,
        mode=config.mode,
        k=value if config.mode == "cnp" else None,
        w=value if config.mode == "cccnp" else None,
        base_seed=config.base_seed,
        records=records,
        kbv=entry.kbv if same_setting else None,
        kbv_best=entry.best if same_setting else None,
        optimal=entry.optimal if same_setting else False,
        sparsity_beta=sparsity_beta(graph),
    )
    if config.solution_dir is not None:
        best = report.best_record
        objective = best.objective if config.mode == "cnp" else 0
        write_solution(Path(config.solution_dir) / f"{graph.name}.sol", best.nodes, objective)
    return report


def run_campaign(config: CampaignConfig, settings: Optional[Settings] = None) -> List[RunReport]:
    config.validate()
    settings = settings or Settings.from_env()
    table = KBVTable.for_mode(config.mode)
    reports = []
    for name in config.instances:
        path = settings.instance_path(name)
        graph = load_graph_file(path, one_indexed=config.one_indexed, strict=config.strict)
        logger.info("%s: n=%d, m=%d", graph.name, graph.n, graph.m)
        reports.append(run_instance(graph, config, table))
    return reports


def reports_payload(reports: Sequence[RunReport], config: CampaignConfig) -> Dict:
    return {
        "config": config.to_dict(),
        "reports": [r.to_dict(config.include_timing) for r in reports],
    }


def write_json(reports: Sequence[RunReport], config: CampaignConfig, path: Union[str, Path]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    text = json.dumps(reports_payload(reports, config), ensure_ascii=False, indent=2, sort_keys=True)
    with open(path, "w", encoding="utf-8") as f:
        f.write(text + "\n")


def write_csv(reports: Sequence[RunReport], config: CampaignConfig, path: Union[str, Path]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    df = pd.DataFrame([r.summary(config.include_timing) for r in reports])
    df.to_csv(path, index=False)


def load_report_file(path: Union[str, Path]) -> List[Dict]:
    """JSON 보고서에서 인스턴스별 요약 목록을 읽음"""
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"보고서 파일을 찾을 수 없습니다: {path}")
    with open(path, "r", encoding="utf-8") as f:
        return json.load(f)["reports"]
