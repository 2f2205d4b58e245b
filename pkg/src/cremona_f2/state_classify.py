"""
궤도 분류 workflow를 위한 State 정의 및 Pydantic Schema

이 모듈은 classification graph가 주고받는 state와, 결과 파일로 직렬화되는
record (단계별 집계, 궤도류, 공개 대표점 대조 결과, 생성원 목록)를 정의합니다.
"""

import operator
from typing import Annotated, Optional

from pydantic import BaseModel, Field
from typing_extensions import TypedDict

from cremona_f2.errors import MismatchReport
from cremona_f2.frob import GOrbit
from cremona_f2.geom import ProjPoint
from cremona_f2.known_results import published_stages

# ===== 구조화된 OUTPUT SCHEMA =====

class StageCounts(BaseModel):
    """한 (surface, d) 분류의 단계별 집계.

    P²는 후보 점 단위로, 나머지 surface는 궤도 단위로 셉니다.
    """

    surface: str = Field(description="P2, Q, D5, D6 중 하나")
    size: int = Field(description="궤도 크기 d")
    step0: Optional[int] = Field(
        default=None,
        description="Step 0 집계. P² 홀수 d는 y의 Frobenius 대표 개수, 짝수 d는 없음, 나머지는 후보 점 개수",
    )
    candidates: int = Field(description="생성된 후보 점 개수")
    orbit_size: int = Field(description="궤도 크기가 정확히 d인 것의 개수")
    general_position: int = Field(description="General position을 통과한 개수")
    classes: int = Field(description="자기동형 중복 제거 후 남은 궤도류 개수")

    def published_columns(self) -> tuple[Optional[int], ...]:
        """공개 표와 같은 열 구성."""
        if self.surface == "P2":
            return (self.step0, self.general_position, self.classes)
        return (self.step0, self.orbit_size, self.general_position, self.classes)

    def matches_published(self) -> bool:
        return self.published_columns() == published_stages(self.surface, self.size)


class OrbitClass(BaseModel):
    """분류된 궤도류 한 개."""

    surface: str = Field(description="P2, Q, D5, D6 중 하나")
    size: int = Field(description="궤도 크기 d")
    field: str = Field(description="좌표가 사는 체의 registry key")
    representative: str = Field(description="대표점 (generator 지수 표기)")
    orbit: list[str] = Field(description="대표점에서 시작하는 Galois 궤도 전체")
    provenance: str = Field(description="대표점을 만든 후보 형태")


class MatchReport(BaseModel):
    """공개 대표점과 계산된 대표점의 전단사 대조 결과."""

    surface: str
    size: int
    matched: dict[str, int] = Field(
        default_factory=dict,
        description="공개 대표점 label → 대응하는 계산 대표점 index",
    )
    missing: list[str] = Field(
        default_factory=list,
        description="대응이 없거나 둘 이상인 공개 대표점 label",
    )
    extra: list[str] = Field(
        default_factory=list,
        description="어느 공개 대표점과도 대응하지 않거나 중복 대응된 계산 대표점",
    )

    @property
    def ok(self) -> bool:
        return not self.missing and not self.extra

    def raise_for_mismatch(self) -> None:
        """대조에 실패했으면 MismatchReport를 발생시킵니다."""
        if not self.ok:
            raise MismatchReport(
                f"{self.surface} d={self.size}: representatives do not match the published list",
                missing=self.missing,
                extra=self.extra,
            )


class InventoryRow(BaseModel):
    """생성원 목록의 한 줄."""

    table: str = Field(description="P2, Q, D6, D5 중 하나")
    kind: str = Field(description="automorphism, orbit 또는 geiser_5_plus_2")
    size: Optional[int] = Field(default=None, description="궤도 크기 d")
    count: int = Field(description="이 줄의 생성원 개수")
    representatives: list[list[str]] = Field(
        default_factory=list,
        description="각 생성원의 대표 궤도 (점 text 목록)",
    )


class Inventory(BaseModel):
    """생성원 집합 전체의 집계."""

    rows: list[InventoryRow]
    table_totals: dict[str, int]
    total: int

# ===== STATE 정의 =====

class Survivor(TypedDict):
    """필터 단계를 통과한 후보 한 개와 그 궤도."""
    label: str
    orbit: GOrbit


class ClassifyState(TypedDict):
    """
    한 (surface, d) 분류 run의 State.

    후보 생성부터 중복 제거까지 각 단계의 결과를 차례로 채우며,
    worker 수는 filter 단계의 chunk 분할에만 영향을 줍니다.
    """
    surface: str
    size: int
    workers: int
    candidates: list[tuple[str, ProjPoint]]
    sized: list[Survivor]
    positioned: list[Survivor]
    representatives: list[Survivor]
    counts: StageCounts
    classes: list[OrbitClass]
    match: MatchReport
    log: Annotated[list[str], operator.add]


class ClassifyInputState(TypedDict):
    """Classification graph의 입력."""
    surface: str
    size: int
    workers: int


class GeneratorsState(TypedDict):
    """
    생성원 목록 workflow의 State.

    지원하는 모든 (surface, d)를 분류한 결과와 5+2 Geiser 쌍을 모아
    하나의 Inventory로 정리합니다.
    """
    workers: int
    results: dict[tuple[str, int], ClassifyState]
    geiser: list
    inventory: Inventory
