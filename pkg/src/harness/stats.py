"""두 알고리즘의 인스턴스별 결과 비교 (양측 부호 검정)"""

import math
from dataclasses import asdict, dataclass
from typing import Dict, Sequence, Tuple

from scipy.stats import binom

# 정규 근사 N/2 + 1.96 * sqrt(N)/2 로 구한 기존 비교 표의 임계값
PUBLISHED_CRITICAL_VALUES = {16: 12, 26: 18}


@dataclass
class SignTestResult:
    wins_a: float
    wins_b: float
    n: int
    critical_value: int
    source: str
    binomial_critical_value: int
    significant: bool

    def to_dict(self) -> Dict:
        return asdict(self)


def binomial_critical_value(n: int, alpha: float = 0.05) -> int:
    """양측 검정에서 유의한 최소 승수 c (2 * P(X >= c) <= alpha, X ~ B(n, 0.5))"""
    if n <= 0:
        return 1
    for c in range(math.ceil(n / 2), n + 1):
        if 2.0 * binom.sf(c - 1, n, 0.5) <= alpha:
            return c
    return n + 1


def critical_value(n: int, alpha: float = 0.05) -> Tuple[int, str]:
    """(임계값, 출처). 표에 있는 N 은 표 값을, 그 밖에는 이항분포로 계산."""
    if alpha == 0.05 and n in PUBLISHED_CRITICAL_VALUES:
        return PUBLISHED_CRITICAL_VALUES[n], "table"
    return binomial_critical_value(n, alpha), "binomial"


def sign_test_wins(results_a: Sequence[float], results_b: Sequence[float],
                   alpha: float = 0.05) -> SignTestResult:
    """값이 작은 쪽이 1승, 동률은 0.5 씩 나눈다"""
    if len(results_a) != len(results_b):
        raise ValueError(f"결과 길이가 다릅니다: {len(results_a)} != {len(results_b)}")
    wins_a = wins_b = 0.0
    for a, b in zip(results_a, results_b):
        if a < b:
            wins_a += 1.0
        elif b < a:
            wins_b += 1.0
        else:
            wins_a += 0.5
            wins_b += 0.5
    n = len(results_a)
    cv, source = critical_value(n, alpha)
    return SignTestResult(
        wins_a=wins_a,
        wins_b=wins_b,
        n=n,
        critical_value=cv,
        source=source,
        binomial_critical_value=binomial_critical_value(n, alpha),
        significant=n > 0 and wins_a >= cv,
    )
