"""솔버 CLI 실행 스크립트"""

import sys
from pathlib import Path

# 프로젝트 루트를 경로에 추가
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.harness.cli import main

if __name__ == "__main__":
    sys.exit(main())
