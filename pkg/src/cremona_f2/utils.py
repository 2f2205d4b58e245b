"""공용 유틸리티.

이 모듈은 logging 설정, rich 기반 출력, 결과 파일 저장 등
여러 모듈에서 함께 쓰는 보조 함수를 제공합니다.
"""

import json
import logging
import os
import tempfile
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Iterable, Sequence

from rich.console import Console
from rich.logging import RichHandler
from rich.panel import Panel
from rich.table import Table
from rich.text import Text

console = Console()

# ===== 유틸리티 함수 =====

def get_timestamp() -> str:
    """UTC 기준 ISO 8601 timestamp를 반환합니다 (certificate 전용)."""
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def get_current_dir() -> Path:
    """패키지 디렉토리를 반환합니다 (files/moduli.json 위치).

    zipapp처럼 __file__이 없는 환경에서는 작업 디렉토리로 대체합니다.

    Returns:
        현재 디렉토리를 나타내는 Path 객체
    """
    try:
        return Path(__file__).resolve().parent
    except NameError:  # __file__이 정의되지 않은 경우
        return Path.cwd()

# ===== LOGGING =====

def setup_logging(level: int | str = logging.INFO) -> None:
    """RichHandler로 패키지 logger를 설정합니다.

    여러 번 호출되어도 handler가 중복 등록되지 않습니다.
    """
    logger = logging.getLogger("cremona_f2")
    logger.setLevel(level)
    if not any(isinstance(h, RichHandler) for h in logger.handlers):
        handler = RichHandler(console=console, show_path=False, rich_tracebacks=True)
        handler.setFormatter(logging.Formatter("%(message)s", datefmt="[%X]"))
        logger.addHandler(handler)
    logger.propagate = False

# ===== 파일 출력 =====

def dumps_canonical(data: Any) -> str:
    """정렬된 key와 고정 들여쓰기로 JSON 문자열을 만듭니다.

    같은 입력은 항상 같은 byte 열을 만들어야 합니다.
    """
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def write_json_atomic(path: Path, data: Any) -> Path:
    """JSON 파일을 임시 파일에 쓴 뒤 rename하여 원자적으로 저장합니다.

    Args:
        path: 저장할 파일 경로
        data: JSON 직렬화 가능한 객체

    Returns:
        저장된 파일 경로
    """
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(dumps_canonical(data))
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise
    return path


def write_text_atomic(path: Path, text: str) -> Path:
    """텍스트 파일을 원자적으로 저장합니다."""
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise
    return path

# ===== RICH 출력 =====

def show_panel(body: str, title: str = "Result", border_style: str = "blue") -> None:
    """본문을 rich Panel로 출력합니다.

    Args:
        body: 출력할 문자열
        title: panel 제목
        border_style: 테두리 색
    """
    text = Text(body)
    text.highlight_regex(r"\b(PASS|ok)\b", style="bold green")
    text.highlight_regex(r"\b(FAIL|mismatch)\b", style="bold red")
    console.print(Panel(
        text,
        title=f"[bold green]{title}[/bold green]",
        border_style=border_style,
        padding=(1, 2),
    ))


def make_table(title: str, columns: Sequence[str], rows: Iterable[Sequence[Any]]) -> Table:
    """문자열로 변환한 행들로 rich Table을 만듭니다."""
    table = Table(title=title, show_lines=False)
    for col in columns:
        table.add_column(col)
    for row in rows:
        table.add_row(*("-" if v is None else str(v) for v in row))
    return table
