"""탐색 종료 조건과 진행 기록"""

from time import perf_counter
from typing import Optional


class SearchBudget:
    """시간 제한, 세대 수 제한, 목표 목적값을 함께 관리

    교환(step) 횟수를 세고, 최적값을 처음 관측한 시점(시간, step, 세대)을 기록한다.
    """

    def __init__(self, time_limit: Optional[float] = None, generations: Optional[int] = None,
                 target: Optional[int] = None):
        if time_limit is not None and time_limit <= 0:
            raise ValueError("time_limit 은 양수여야 합니다")
        if generations is not None and generations < 0:
            raise ValueError("generations 는 0 이상이어야 합니다")
        self.time_limit = time_limit
        self.generations = generations
        self.target = target
        self.steps = 0
        self.generation = 0
        self.best_objective: Optional[int] = None
        self.time_to_best: Optional[float] = None
        self.steps_to_best = 0
        self.generation_to_best = 0
        self._start: Optional[float] = None
        self._deadline: Optional[float] = None

    def start(self) -> "SearchBudget":
        if self._start is None:
            self._start = perf_counter()
            if self.time_limit is not None:
                self._deadline = self._start + self.time_limit
        return self

    @property
    def started(self) -> bool:
        return self._start is not None

    def elapsed(self) -> float:
        if self._start is None:
            return 0.0
        return perf_counter() - self._start

    def remaining(self) -> Optional[float]:
        if self._deadline is None:
            return None
        return max(0.0, self._deadline - perf_counter())

    def time_expired(self) -> bool:
        return self._deadline is not None and perf_counter() >= self._deadline

    def target_reached(self) -> bool:
        return (
            self.target is not None
            and self.best_objective is not None
            and self.best_objective <= self.target
        )

    def expired(self) -> bool:
        """세대 루프 종료 여부"""
        if self.generations is not None and self.generation >= self.generations:
            return True
        return self.time_expired() or self.target_reached()

    def step(self, count: int = 1) -> None:
        self.steps += count

    def next_generation(self) -> None:
        self.generation += 1

    def observe(self, objective: int) -> bool:
        """목적값 관측. 전역 최적이 갱신되면 True."""
        if self.best_objective is not None and objective >= self.best_objective:
            return False
        self.best_objective = objective
        self.time_to_best = self.elapsed()
        self.steps_to_best = self.steps
        self.generation_to_best = self.generation
        return True

    def child(self, time_limit: Optional[float] = None, generations: Optional[int] = None,
              target: Optional[int] = None) -> "SearchBudget":
        """남은 시간 안에서 동작하는 하위 예산 (CC-CNP 의 K 단계용)"""
        remaining = self.remaining()
        if remaining is not None:
            time_limit = remaining if time_limit is None else min(time_limit, remaining)
            # 0 초 예산도 허용해야 하므로 아주 작은 값으로 대체
            time_limit = max(time_limit, 1e-9)
        return SearchBudget(time_limit=time_limit, generations=generations, target=target)
