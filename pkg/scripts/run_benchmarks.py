"""벤치마크 인수 기준 실행 스크립트

벤치마크 디렉터리에 있는 인스턴스만 실행하고, 목표값 도달 횟수를 출력한다.
"""

import sys
import argparse
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional

# 프로젝트 루트를 경로에 추가
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.cnp.graph import load_graph_file
from src.harness.campaign import CampaignConfig, run_instance, write_json
from src.harness.cli import LOG_FORMAT
from src.harness.config import Settings
from src.harness.kbv import KBVTable
from src.harness.report import render_table


@dataclass
class Target:
    instance: str
    mode: str
    value: int          # cnp: K, cccnp: W
    target: int         # cnp: f, cccnp: K
    time_limit: float
    required: int       # 10 시행 중 필요한 성공 횟수


SUITES = {
    "optimal": [
        Target("BA500", "cnp", 50, 195, 120, 9),
        Target("BA1000", "cnp", 75, 558, 120, 9),
        Target("FF250", "cnp", 50, 194, 120, 9),
        Target("FF500", "cnp", 110, 257, 120, 9),
        Target("ER235", "cnp", 50, 295, 120, 9),
    ],
    "medium": [
        Target("ER466", "cnp", 80, 1524, 300, 7),
    ],
    "cccnp": [
        Target("BA500", "cccnp", 4, 47, 300, 9),
        Target("ER235", "cccnp", 7, 47, 300, 9),
        Target("BA1000", "cccnp", 5, 61, 300, 9),
    ],
}

SCALING_INSTANCE = "ER2344"
SCALING_K = 200
SCALING_TIME = 600.0
SCALING_IMPROVEMENT = 0.20
SCALING_STEP_RATE = 1e4


def find_instance(directory: Path, name: str) -> Optional[Path]:
    for candidate in (directory / name, directory / f"{name}.txt"):
        if candidate.exists():
            return candidate
    return None


def run_target(target: Target, directory: Path, trials: int, workers: int,
               out_dir: Optional[Path]) -> Optional[bool]:
    path = find_instance(directory, target.instance)
    if path is None:
        print(f"  건너뜀: {target.instance} 파일이 없습니다")
        return None

    graph = load_graph_file(path)
    config = CampaignConfig(
        instances=[str(path)],
        mode=target.mode,
        k=target.value if target.mode == "cnp" else None,
        w=target.value if target.mode == "cccnp" else None,
        trials=trials,
        time_limit=target.time_limit,
        workers=workers,
    ).validate()
    report = run_instance(graph, config, KBVTable.for_mode(target.mode))
    hits = report.hits(target.target)
    required = max(1, round(target.required * trials / 10))
    passed = hits >= required
    print(render_table([report]))
    print(f"  {target.instance} ({target.mode}): 목표 {target.target} 도달 {hits}/{trials} "
          f"(필요 {required}) → {'통과' if passed else '실패'}")
    if out_dir is not None:
        write_json([report], config, out_dir / f"{target.instance}_{target.mode}.json")
    return passed


def run_scaling(directory: Path, out_dir: Optional[Path]) -> Optional[bool]:
    path = find_instance(directory, SCALING_INSTANCE)
    if path is None:
        print(f"  건너뜀: {SCALING_INSTANCE} 파일이 없습니다")
        return None

    graph = load_graph_file(path)
    config = CampaignConfig(instances=[str(path)], k=SCALING_K, trials=1,
                            time_limit=SCALING_TIME).validate()
    report = run_instance(graph, config, KBVTable.for_mode("cnp"))
    record = report.records[0]
    improvement = 1.0 - record.objective / record.initial_objective
    rate = record.steps_per_second
    passed = improvement >= SCALING_IMPROVEMENT and rate >= SCALING_STEP_RATE
    print(f"  {SCALING_INSTANCE}: 초기 개체군 f = {record.initial_objective}, 최종 f = {record.objective}, "
          f"개선율 {improvement:.1%}")
    print(f"  교환 속도: {rate:.0f} steps/sec (기준 {SCALING_STEP_RATE:.0f}) → {'통과' if passed else '실패'}")
    if rate < SCALING_STEP_RATE:
        logging.getLogger(__name__).warning("교환 속도가 기준보다 낮습니다: %.0f steps/sec", rate)
    if out_dir is not None:
        write_json([report], config, out_dir / f"{SCALING_INSTANCE}_scaling.json")
    return passed


def main():
    settings = Settings.from_env()
    parser = argparse.ArgumentParser(
        description="벤치마크 인스턴스로 인수 기준을 확인합니다.",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
예시:
  python scripts/run_benchmarks.py --suite optimal --workers 4
  python scripts/run_benchmarks.py --benchmark-dir ~/cnp-benchmarks --suite all
        """,
    )
    parser.add_argument("--suite", choices=["optimal", "medium", "cccnp", "scaling", "all"], default="all")
    parser.add_argument("--benchmark-dir", type=str, default=str(settings.benchmark_dir))
    parser.add_argument("--trials", type=int, default=10)
    parser.add_argument("--workers", type=int, default=settings.workers)
    parser.add_argument("--out-dir", type=str, default=None, help="인스턴스별 JSON 보고서 저장 디렉터리")
    parser.add_argument("-v", "--verbose", action="store_true")
    args = parser.parse_args()

    logging.basicConfig(level=logging.INFO if args.verbose else settings.log_level, format=LOG_FORMAT)
    directory = Path(args.benchmark_dir)
    if not directory.exists():
        print(f"오류: 벤치마크 디렉터리를 찾을 수 없습니다: {directory}")
        sys.exit(1)
    out_dir = Path(args.out_dir) if args.out_dir else None

    suites: List[str] = list(SUITES) + ["scaling"] if args.suite == "all" else [args.suite]
    results = []
    for suite in suites:
        print("=" * 60)
        print(f"스위트: {suite}")
        print("=" * 60)
        if suite == "scaling":
            results.append(run_scaling(directory, out_dir))
            continue
        for target in SUITES[suite]:
            results.append(run_target(target, directory, args.trials, args.workers, out_dir))

    ran = [r for r in results if r is not None]
    print()
    print(f"통과 {sum(ran)}/{len(ran)}, 건너뜀 {len(results) - len(ran)}")
    sys.exit(0 if all(ran) else 1)


if __name__ == "__main__":
    main()
