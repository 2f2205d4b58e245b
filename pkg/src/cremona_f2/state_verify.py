"""
검증 workflow와 CLI 실행 설정을 위한 State 정의 및 Pydantic Schema

Claim 하나의 결과는 Certificate로 저장되며, 같은 입력으로 다시 실행하면
같은 verdict와 witness가 나와야 합니다.
"""

import operator
from pathlib import Path
from typing import Annotated, Any, Literal, Optional

from pydantic import BaseModel, Field, model_validator
from typing_extensions import TypedDict

from cremona_f2.known_results import SUPPORTED_PAIRS, SURFACES

# ===== 구조화된 OUTPUT SCHEMA =====

class Certificate(BaseModel):
    """검증된 claim 하나의 기록."""

    schema_version: int = Field(default=1, alias="schema", description="Certificate 형식 버전")
    claim: str = Field(description="Claim 식별자 (suite.name)")
    suite: str = Field(description="Claim이 속한 suite")
    description: str = Field(description="Claim 내용")
    inputs: dict[str, Any] = Field(description="사용한 체의 modulus와 상수")
    verdict: bool = Field(description="Claim 성립 여부")
    witness: dict[str, Any] = Field(default_factory=dict, description="집계, 대표점 등 재현 가능한 근거")
    tool_version: str = Field(description="cremona_f2 버전")
    wall_clock: float = Field(description="실행 시간 (초)")
    timestamp: str = Field(description="UTC 실행 시각")

    model_config = {"populate_by_name": True}


class RunConfig(BaseModel):
    """CLI 한 번의 실행 설정."""

    command: Literal["classify", "verify", "emit-generators"]
    surface: Literal["P2", "Q", "D5", "D6", "all"] = Field(default="all")
    size: Optional[int] = Field(default=None, description="궤도 크기. None이면 지원하는 모든 크기")
    format: Literal["json", "csv", "text"] = Field(default="json")
    out: Path = Field(default=Path("."), description="results/, certificates/를 만들 디렉토리")
    workers: int = Field(default=1, ge=1, description="Filter 단계의 병렬 chunk 수")
    only: Optional[str] = Field(default=None, description="verify에서 실행할 suite")
    replay: Optional[Path] = Field(default=None, description="다시 실행할 certificate 파일")

    @model_validator(mode="after")
    def _check_pairs(self) -> "RunConfig":
        if self.command == "classify" and not self.pairs():
            raise ValueError(f"no supported classification for surface={self.surface} size={self.size}")
        return self

    def pairs(self) -> list[tuple[str, int]]:
        """설정에 해당하는 (surface, d) 목록 (지원 표의 순서)."""
        surfaces = SURFACES if self.surface == "all" else (self.surface,)
        return [
            (s, d) for s, d in SUPPORTED_PAIRS
            if s in surfaces and (self.size is None or d == self.size)
        ]

# ===== STATE 정의 =====

class VerifyState(TypedDict):
    """
    검증 workflow의 State.

    pending에 남은 suite를 하나씩 실행하고, 각 suite의 certificate는
    operator.add reducer로 누적됩니다. report는 claim id 순으로 정렬한 최종 목록입니다.
    """
    suites: list[str]
    pending: list[str]
    certificates: Annotated[list[Certificate], operator.add]
    report: list[Certificate]
    failed: list[str]


class VerifyInputState(TypedDict):
    """검증 graph의 입력."""
    suites: list[str]
