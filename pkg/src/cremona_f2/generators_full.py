"""생성원 목록 전체 workflow.

지원하는 (surface, d)를 모두 분류하고 5+2 Geiser 쌍을 센 뒤 생성원 목록을 만듭니다.
입력 state에 이미 있는 분류 결과는 다시 계산하지 않습니다.
"""

import asyncio
import logging

from langgraph.graph import END, START, StateGraph

from cremona_f2.classify import generator_inventory, geiser_pairs
from cremona_f2.classify_workflow import DEFAULT_WORKERS, aclassify_orbits
from cremona_f2.known_results import INVENTORY_ROWS, INVENTORY_TOTAL
from cremona_f2.state_classify import ClassifyState, GeneratorsState

logger = logging.getLogger(__name__)

# ===== WORKFLOW NODE =====

async def classify_all(state: GeneratorsState) -> dict:
    """목록에 필요한 (surface, d)를 병렬로 분류합니다."""
    results: dict[tuple[str, int], ClassifyState] = dict(state.get("results") or {})
    workers = state.get("workers", DEFAULT_WORKERS)
    missing = [pair for pairs in INVENTORY_ROWS.values() for pair in pairs if pair not in results]
    finished = await asyncio.gather(*(aclassify_orbits(s, d, workers) for s, d in missing))
    results.update(zip(missing, finished))
    return {"results": results}


async def count_geiser(state: GeneratorsState) -> dict:
    """5+2 Geiser 궤도 쌍의 류를 구합니다."""
    pairs = await asyncio.to_thread(geiser_pairs)
    return {"geiser": pairs}


def assemble_inventory(state: GeneratorsState) -> dict:
    """표별 개수와 대표 궤도를 모아 목록을 만듭니다."""
    classes = {pair: result["classes"] for pair, result in state["results"].items()}
    inventory = generator_inventory(classes, state["geiser"])
    logger.info("generator inventory: %s, total %d of %d", inventory.table_totals, inventory.total, INVENTORY_TOTAL)
    return {"inventory": inventory}

# ===== GRAPH 구성 =====

generators_builder = StateGraph(GeneratorsState)

generators_builder.add_node("classify_all", classify_all)
generators_builder.add_node("count_geiser", count_geiser)
generators_builder.add_node("assemble_inventory", assemble_inventory)

generators_builder.add_edge(START, "classify_all")
generators_builder.add_edge("classify_all", "count_geiser")
generators_builder.add_edge("count_geiser", "assemble_inventory")
generators_builder.add_edge("assemble_inventory", END)

generators_graph = generators_builder.compile()
