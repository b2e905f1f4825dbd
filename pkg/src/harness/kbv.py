"""벤치마크별 알려진 최적값(KBV) 표"""

import json
from dataclasses import dataclass
from pathlib import Path
from types import MappingProxyType
from typing import Dict, Mapping, Optional, Union

from .config import DATA_DIR

KBV_DIR = DATA_DIR / "kbv"


@dataclass(frozen=True)
class KBVEntry:
    name: str
    kbv: int
    best: int
    k: Optional[int] = None
    w: Optional[int] = None
    optimal: bool = False


class KBVTable:
    """인스턴스 이름 → KBV 항목 (읽기 전용). 이름 비교는 대소문자를 무시한다."""

    def __init__(self, entries: Mapping[str, KBVEntry]):
        self._entries = MappingProxyType(dict(entries))
        self._index = {name.lower(): name for name in entries}

    @classmethod
    def load(cls, path: Union[str, Path]) -> "KBVTable":
        path = Path(path)
        if not path.exists():
            raise FileNotFoundError(f"KBV 파일을 찾을 수 없습니다: {path}")
        with open(path, "r", encoding="utf-8") as f:
            raw: Dict[str, Dict] = json.load(f)
        entries = {
            name: KBVEntry(
                name=name,
                kbv=data["kbv"],
                best=data.get("best", data["kbv"]),
                k=data.get("k"),
                w=data.get("w"),
                optimal=data.get("optimal", False),
            )
            for name, data in raw.items()
        }
        return cls(entries)

    @classmethod
    def for_mode(cls, mode: str) -> "KBVTable":
        return cls.load(KBV_DIR / ("cccnp.json" if mode == "cccnp" else "cnp.json"))

    def get(self, name: str) -> Optional[KBVEntry]:
        key = self._index.get(name.lower())
        return self._entries[key] if key is not None else None

    def __contains__(self, name: str) -> bool:
        return name.lower() in self._index

    def __len__(self) -> int:
        return len(self._entries)

    def names(self):
        return list(self._entries)
