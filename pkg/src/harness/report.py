"""사람이 읽는 결과 표 (Jinja2 템플릿)"""

from pathlib import Path
from typing import Dict, Optional, Sequence, Union

from jinja2 import Environment, FileSystemLoader

from .campaign import RunReport
from .stats import SignTestResult

templates_dir = Path(__file__).parent / "templates"
_env = Environment(loader=FileSystemLoader(str(templates_dir)), keep_trailing_newline=True)


def render_rows(rows: Sequence[Dict], mode: str, title: str = "결과",
                sign_test: Optional[SignTestResult] = None) -> str:
    template = _env.get_template("report.md.j2")
    return template.render(title=title, mode=mode, rows=rows, sign_test=sign_test)


def render_table(reports: Sequence[RunReport], include_timing: bool = True,
                 title: str = "결과") -> str:
    mode = reports[0].mode if reports else "cnp"
    return render_rows([r.summary(include_timing) for r in reports], mode, title)


def write_table(text: str, path: Union[str, Path]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        f.write(text)
