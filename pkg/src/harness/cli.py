"""명령행 인터페이스: solve / validate / oracle / compare"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional

from ..cnp.errors import CNPError
from ..cnp.graph import load_graph_file
from ..cnp.memetic import MacnpParams
from ..cnp.solution import ExcessObjective
from .campaign import CampaignConfig, load_report_file, run_campaign, write_csv, write_json
from .config import Settings
from .oracle import brute_force_optimum
from .report import render_rows, render_table, write_table
from .stats import sign_test_wins
from .validate import validate_solution

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
EXIT_ERROR = 1
EXIT_MISMATCH = 2


def configure_logging(verbose: int, settings: Settings) -> None:
    if verbose >= 2:
        level = logging.DEBUG
    elif verbose == 1:
        level = logging.INFO
    else:
        level = getattr(logging, settings.log_level, logging.WARNING)
    logging.basicConfig(level=level, format=LOG_FORMAT)


def _add_instance_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--one-indexed", action="store_true", help="노드 번호가 1 부터 시작")
    parser.add_argument("--strict", action="store_true", help="self-loop 와 간선 수 불일치를 오류로 처리")


def build_parser(settings: Settings) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="임계 노드 문제(CNP / CC-CNP) 메메틱 솔버와 실험 도구",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
예시:
  python src/main.py solve --instance BA500 --k 50 --time-limit 60 --trials 10 --out results/ba500.json
  python src/main.py solve --instance ER235 --mode cccnp --w 7 --time-limit 300
  python src/main.py validate --instance BA500 --solution results/BA500.sol
  python src/main.py oracle --instance src/data/instances/p5.txt --k 1
  python src/main.py compare --a results/a.json --b results/b.json
        """,
    )
    parser.add_argument("-v", "--verbose", action="count", default=0, help="로그 상세도 (-v INFO, -vv DEBUG)")
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="MACNP / MACC-CNP 실행")
    solve.add_argument("--instance", "-i", action="append", required=True,
                       help="인스턴스 파일 또는 벤치마크 디렉터리 안의 이름 (여러 번 지정 가능)")
    solve.add_argument("--k", type=int, default=None, help="삭제할 노드 수 (기본: KBV 표)")
    solve.add_argument("--mode", choices=["cnp", "cccnp"], default="cnp")
    solve.add_argument("--w", type=int, default=None, help="cccnp 의 요소 크기 상한 (기본: KBV 표)")
    solve.add_argument("--time-limit", type=float, default=None,
                       help=f"시행당 시간 제한(초) (기본: {settings.time_limit:g})")
    solve.add_argument("--level-time-limit", type=float, default=None, help="cccnp 의 K 단계별 시간 제한(초)")
    solve.add_argument("--generations", type=int, default=None, help="세대 수로 종료 (재현 가능한 출력)")
    solve.add_argument("--trials", type=int, default=1)
    solve.add_argument("--seed", type=int, default=0, help="기본 시드 (시행 i 는 seed + i)")
    solve.add_argument("--pop-size", type=int, default=20)
    solve.add_argument("--max-iter", type=int, default=1000)
    solve.add_argument("--p0", type=float, default=0.85)
    solve.add_argument("--pool-beta", type=float, default=0.6)
    solve.add_argument("--no-weighting", action="store_true", help="노드 가중치 없이 무작위 제거")
    solve.add_argument("--neighborhood", choices=["component", "swap"], default="component")
    solve.add_argument("--crossover", choices=["double", "single"], default="double")
    solve.add_argument("--workers", type=int, default=settings.workers, help="병렬 시행 수")
    solve.add_argument("--out", type=str, default=None, help="JSON 보고서 경로")
    solve.add_argument("--csv", type=str, default=None, help="CSV 요약 경로")
    solve.add_argument("--table", type=str, default=None, help="결과 표(markdown) 경로")
    solve.add_argument("--solution-dir", type=str, default=None, help="인스턴스별 최적해 저장 디렉터리")
    solve.add_argument("--quiet", "-q", action="store_true", help="진행 표시줄 숨김")
    _add_instance_args(solve)

    validate = sub.add_parser("validate", help="해 파일의 목적값 재계산")
    validate.add_argument("--instance", "-i", required=True)
    validate.add_argument("--solution", "-s", required=True)
    validate.add_argument("--mode", choices=["cnp", "cccnp"], default="cnp")
    validate.add_argument("--k", type=int, default=None)
    validate.add_argument("--w", type=int, default=None)
    _add_instance_args(validate)

    oracle = sub.add_parser("oracle", help="완전 탐색 최적해 (작은 인스턴스)")
    oracle.add_argument("--instance", "-i", required=True)
    oracle.add_argument("--k", type=int, required=True)
    oracle.add_argument("--w", type=int, default=None, help="지정하면 f' 를 최소화")
    _add_instance_args(oracle)

    compare = sub.add_parser("compare", help="두 보고서의 부호 검정 비교")
    compare.add_argument("--a", required=True)
    compare.add_argument("--b", required=True)
    compare.add_argument("--field", choices=["f_best", "f_avg"], default="f_best")
    compare.add_argument("--alpha", type=float, default=0.05)
    return parser


def cmd_solve(args: argparse.Namespace, settings: Settings) -> int:
    params = MacnpParams(
        pop_size=args.pop_size,
        max_iter=args.max_iter,
        p0=args.p0,
        pool_beta=args.pool_beta,
        weighting=not args.no_weighting,
        neighborhood=args.neighborhood,
        crossover=args.crossover,
    )
    time_limit = args.time_limit
    if time_limit is None and args.generations is None:
        time_limit = settings.time_limit
    config = CampaignConfig(
        instances=args.instance,
        mode=args.mode,
        k=args.k,
        w=args.w,
        trials=args.trials,
        base_seed=args.seed,
        time_limit=time_limit,
        generations=args.generations,
        params=params,
        level_time_limit=args.level_time_limit,
        workers=args.workers,
        one_indexed=args.one_indexed,
        strict=args.strict,
        solution_dir=Path(args.solution_dir) if args.solution_dir else None,
        progress=not args.quiet,
    )

    print("=" * 60)
    print(f"{'MACC-CNP' if args.mode == 'cccnp' else 'MACNP'} 실행: {', '.join(args.instance)}")
    print("=" * 60)
    reports = run_campaign(config, settings)

    table = render_table(reports, config.include_timing)
    print(table)
    if args.out:
        write_json(reports, config, args.out)
        print(f"JSON 보고서: {args.out}")
    if args.csv:
        write_csv(reports, config, args.csv)
        print(f"CSV 요약: {args.csv}")
    if args.table:
        write_table(table, args.table)
        print(f"결과 표: {args.table}")
    return 0


def cmd_validate(args: argparse.Namespace, settings: Settings) -> int:
    graph = load_graph_file(settings.instance_path(args.instance), args.one_indexed, args.strict)
    verdict = validate_solution(graph, args.solution, args.mode, args.k, args.w)
    label = "f'" if args.mode == "cccnp" else "f"
    print(f"{verdict.status}: 기록된 {label} = {verdict.claimed}, 재계산 {label} = {verdict.recomputed} (K={verdict.k})")
    return 0 if verdict.ok else EXIT_MISMATCH


def cmd_oracle(args: argparse.Namespace, settings: Settings) -> int:
    graph = load_graph_file(settings.instance_path(args.instance), args.one_indexed, args.strict)
    objective = ExcessObjective(args.w) if args.w is not None else None
    value, nodes = brute_force_optimum(graph, args.k, objective)
    print(f"{graph.name}: K={args.k}, 최적값 = {value}")
    print(f"최적해: {' '.join(map(str, nodes))}")
    return 0


def cmd_compare(args: argparse.Namespace, settings: Settings) -> int:
    a = {r["instance"]: r for r in load_report_file(args.a)}
    b = {r["instance"]: r for r in load_report_file(args.b)}
    common = [name for name in a if name in b]
    missing = sorted(set(a) ^ set(b))
    if missing:
        logger.warning("한쪽 보고서에만 있는 인스턴스 제외: %s", ", ".join(missing))

    result = sign_test_wins([a[n][args.field] for n in common], [b[n][args.field] for n in common],
                            alpha=args.alpha)
    rows = [a[n] for n in common]
    mode = rows[0]["mode"] if rows else "cnp"
    print(render_rows(rows, mode, title=f"A: {args.a} / B: {args.b} ({args.field})", sign_test=result))
    print(json.dumps(result.to_dict(), ensure_ascii=False, sort_keys=True))
    return 0


COMMANDS = {
    "solve": cmd_solve,
    "validate": cmd_validate,
    "oracle": cmd_oracle,
    "compare": cmd_compare,
}


def main(argv: Optional[List[str]] = None) -> int:
    settings = Settings.from_env()
    parser = build_parser(settings)
    args = parser.parse_args(argv)
    configure_logging(args.verbose, settings)
    try:
        return COMMANDS[args.command](args, settings)
    except (CNPError, FileNotFoundError, ValueError) as e:
        print(f"오류: {e}", file=sys.stderr)
        return EXIT_ERROR
