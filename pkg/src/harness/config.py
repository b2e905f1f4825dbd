"""실행 환경 설정

프로젝트 루트의 .env 를 읽고, CLI 플래그가 없을 때의 기본값을 제공한다.
"""

import os
from dataclasses import dataclass
from pathlib import Path

from dotenv import load_dotenv

PROJECT_ROOT = Path(__file__).resolve().parent.parent.parent
DATA_DIR = PROJECT_ROOT / "src" / "data"

# 프로젝트 루트의 .env 로드
load_dotenv(PROJECT_ROOT / ".env")

DEFAULT_TIME_LIMIT = 3600.0


def _env_int(name: str, default: int) -> int:
    value = os.getenv(name)
    if value is None or value == "":
        return default
    try:
        return int(value)
    except ValueError:
        raise ValueError(f"{name} 는 정수여야 합니다: {value!r}") from None


def _env_float(name: str, default: float) -> float:
    value = os.getenv(name)
    if value is None or value == "":
        return default
    try:
        return float(value)
    except ValueError:
        raise ValueError(f"{name} 는 숫자여야 합니다: {value!r}") from None


@dataclass
class Settings:
    benchmark_dir: Path
    results_dir: Path
    time_limit: float = DEFAULT_TIME_LIMIT
    workers: int = 1
    log_level: str = "WARNING"

    @classmethod
    def from_env(cls) -> "Settings":
        return cls(
            benchmark_dir=Path(os.getenv("CNP_BENCHMARK_DIR", str(PROJECT_ROOT / "benchmarks"))),
            results_dir=Path(os.getenv("CNP_RESULTS_DIR", str(PROJECT_ROOT / "results"))),
            time_limit=_env_float("CNP_TIME_LIMIT", DEFAULT_TIME_LIMIT),
            workers=_env_int("CNP_WORKERS", 1),
            log_level=os.getenv("CNP_LOG_LEVEL", "WARNING").upper(),
        )

    def instance_path(self, name: str) -> Path:
        """인스턴스 이름 또는 경로를 파일 경로로 변환"""
        path = Path(name)
        if path.exists():
            return path
        for candidate in (self.benchmark_dir / name, self.benchmark_dir / f"{name}.txt",
                          DATA_DIR / "instances" / f"{name}.txt"):
            if candidate.exists():
                return candidate
        return path
