"""솔버 예외 정의"""

from typing import Optional


class CNPError(Exception):
    """솔버 공통 예외"""


class GraphFormatError(CNPError, ValueError):
    """인스턴스 파일 형식 오류 (줄 번호 포함)"""

    def __init__(self, message: str, line_no: Optional[int] = None):
        self.line_no = line_no
        if line_no is not None:
            message = f"{line_no}번째 줄: {message}"
        super().__init__(message)


class GraphRangeError(GraphFormatError):
    """선언된 범위를 벗어난 노드 번호"""


class ContractError(CNPError, RuntimeError):
    """연산 전제조건 위반"""


class InitializationError(CNPError):
    """서로 다른 초기 해를 만들 수 없음"""


class SizeGuardError(CNPError, ValueError):
    """완전 탐색 대상이 너무 큼"""


class SolutionFormatError(CNPError, ValueError):
    """해 파일 형식 오류"""
