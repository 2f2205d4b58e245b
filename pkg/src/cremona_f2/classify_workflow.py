"""궤도 분류 workflow.

이 모듈은 한 (surface, d) 분류를 다음 node로 이루어진 graph로 구현합니다:
1. generate_candidates: 후보 생성과 Step 0 집계
2. filter_orbit_size: 궤도 크기 필터 (chunk별 병렬 실행 후 입력 순서대로 병합)
3. filter_general_position: general position 필터 (chunk별 병렬)
4. dedup_by_automorphisms: L_all 중복 제거 (순차)
5. match_published: 공개 대표점 대조와 최종 점검

Worker 수는 filter 단계의 chunk 분할에만 쓰이며 결과는 worker 수와 무관합니다.
"""

import asyncio
import logging
from typing import Callable, Sequence, TypeVar

from langgraph.graph import END, START, StateGraph

from cremona_f2 import classify
from cremona_f2.frob import candidate_field, frobenius_representatives, labelled_candidates
from cremona_f2.state_classify import ClassifyInputState, ClassifyState, StageCounts

logger = logging.getLogger(__name__)

# ===== 설정 =====

# 기본 worker 수
DEFAULT_WORKERS = 1

T = TypeVar("T")
R = TypeVar("R")

# ===== 병렬 보조 함수 =====

def split_chunks(items: Sequence[T], workers: int) -> list[Sequence[T]]:
    """입력 순서를 유지하는 연속 chunk로 나눕니다."""
    workers = max(1, workers)
    step = -(-len(items) // workers) or 1
    return [items[i:i + step] for i in range(0, len(items), step)]


async def fan_out(func: Callable[[Sequence[T]], list[R]], items: Sequence[T], workers: int) -> list[R]:
    """Chunk마다 func를 thread에서 실행하고 입력 순서대로 이어 붙입니다.

    filter는 순수 Python 계산이라 GIL 아래에서 실행되므로 workers는 chunk 분할만 정하고
    실행 시간을 줄이지는 않습니다. 결과는 workers와 무관합니다.
    """
    coros = [asyncio.to_thread(func, chunk) for chunk in split_chunks(items, workers)]
    results = await asyncio.gather(*coros)
    return [r for part in results for r in part]

# ===== WORKFLOW NODE =====

async def generate_candidates(state: ClassifyState) -> dict:
    """후보 점을 생성합니다."""
    surface, d = state["surface"], state["size"]
    classify.check_pair(surface, d)
    candidates = await asyncio.to_thread(labelled_candidates, surface, d)
    return {
        "candidates": candidates,
        "log": [f"{surface} d={d}: {len(candidates)} candidates"],
    }


async def filter_orbit_size(state: ClassifyState) -> dict:
    """궤도 크기가 정확히 d인 후보만 남깁니다."""
    surface, d = state["surface"], state["size"]
    sized = await fan_out(
        lambda chunk: classify.filter_orbit_size(surface, d, chunk),
        state["candidates"],
        state.get("workers", DEFAULT_WORKERS),
    )
    sized = classify.one_per_orbit(surface, sized)
    return {"sized": sized, "log": [f"{surface} d={d}: {len(sized)} of orbit size {d}"]}


async def filter_general_position(state: ClassifyState) -> dict:
    """Surface별 general position 판정."""
    surface = state["surface"]
    positioned = await fan_out(
        lambda chunk: classify.filter_general_position(surface, chunk),
        state["sized"],
        state.get("workers", DEFAULT_WORKERS),
    )
    return {"positioned": positioned, "log": [f"{surface} d={state['size']}: {len(positioned)} in general position"]}


def _step0(surface: str, d: int, candidates: int) -> int | None:
    if surface != "P2":
        return candidates
    if d % 2 == 0:
        return None
    return len(frobenius_representatives(candidate_field(surface, d)))


async def dedup_by_automorphisms(state: ClassifyState) -> dict:
    """L_all 중복 제거 후 집계를 완성합니다."""
    surface, d = state["surface"], state["size"]
    representatives = await asyncio.to_thread(classify.dedup_by_automorphisms, surface, state["positioned"])
    counts = StageCounts(
        surface=surface,
        size=d,
        step0=_step0(surface, d, len(state["candidates"])),
        candidates=len(state["candidates"]),
        orbit_size=len(state["sized"]),
        general_position=len(state["positioned"]),
        classes=len(representatives),
    )
    return {
        "representatives": representatives,
        "counts": counts,
        "classes": [classify.to_orbit_class(surface, s) for s in representatives],
    }


async def match_published(state: ClassifyState) -> dict:
    """공개 대표점과 대조하고 궤도류를 다시 점검합니다."""
    surface, d = state["surface"], state["size"]
    reps = [s["orbit"].points[0] for s in state["representatives"]]
    report = await asyncio.to_thread(classify.match_published_representatives, surface, d, reps)
    bad = classify.audit_classes(surface, d, state["representatives"])
    for text in bad:
        logger.error("%s d=%d: class %s fails its audit", surface, d, text)
        report.extra.append(text)
    counts = state["counts"]
    verdict = "matches" if counts.matches_published() else "differs from"
    logger.info("%s d=%d: stage counts %s %s the published table", surface, d, counts.published_columns(), verdict)
    return {"match": report, "log": [f"{surface} d={d}: {counts.classes} classes"]}

# ===== GRAPH 구성 =====

classify_builder = StateGraph(ClassifyState, input_schema=ClassifyInputState)

classify_builder.add_node("generate_candidates", generate_candidates)
classify_builder.add_node("filter_orbit_size", filter_orbit_size)
classify_builder.add_node("filter_general_position", filter_general_position)
classify_builder.add_node("dedup_by_automorphisms", dedup_by_automorphisms)
classify_builder.add_node("match_published", match_published)

classify_builder.add_edge(START, "generate_candidates")
classify_builder.add_edge("generate_candidates", "filter_orbit_size")
classify_builder.add_edge("filter_orbit_size", "filter_general_position")
classify_builder.add_edge("filter_general_position", "dedup_by_automorphisms")
classify_builder.add_edge("dedup_by_automorphisms", "match_published")
classify_builder.add_edge("match_published", END)

classify_graph = classify_builder.compile()

# ===== 실행 보조 함수 =====

async def aclassify_orbits(surface: str, d: int, workers: int = DEFAULT_WORKERS) -> ClassifyState:
    """Graph를 실행하고 최종 state를 반환합니다."""
    return await classify_graph.ainvoke({"surface": surface, "size": d, "workers": workers})


def classify_orbits(surface: str, d: int, workers: int = DEFAULT_WORKERS) -> ClassifyState:
    """aclassify_orbits의 동기 버전."""
    return asyncio.run(aclassify_orbits(surface, d, workers))
