"""검증 suite workflow.

route node가 남은 suite를 하나씩 꺼내 해당 suite node로 보내고, suite node는
소속 claim을 병렬로 실행한 뒤 다시 route로 돌아옵니다. 모든 suite가 끝나면
finalize가 certificate를 claim id 순으로 정렬하고 실패한 claim을 모읍니다.
"""

import asyncio
from typing import Literal

from langgraph.graph import START, StateGraph
from langgraph.types import Command

from cremona_f2.claims import SUITES, claim_ids, run_claim
from cremona_f2.errors import UnknownClaim
from cremona_f2.state_verify import Certificate, VerifyInputState, VerifyState

SuiteNode = Literal["groups", "involutions", "families", "models", "counting", "links", "finalize"]

# ===== WORKFLOW NODE =====

def route(state: VerifyState) -> Command[SuiteNode]:
    """다음 suite로 이동하거나, 남은 suite가 없으면 finalize로 갑니다."""
    pending = state.get("pending")
    if pending is None:
        pending = list(state["suites"]) or list(SUITES)
        for suite in pending:
            if suite not in SUITES:
                raise UnknownClaim(f"unknown suite {suite!r}; known: {', '.join(SUITES)}")
    if not pending:
        return Command(goto="finalize", update={"pending": []})
    return Command(goto=pending[0], update={"pending": pending[1:]})


async def _run_suite(suite: str) -> list[Certificate]:
    coros = [asyncio.to_thread(run_claim, claim) for claim in claim_ids(suite)]
    return list(await asyncio.gather(*coros))


def _suite_node(suite: str):
    async def node(state: VerifyState) -> Command[Literal["route"]]:
        certificates = await _run_suite(suite)
        return Command(goto="route", update={"certificates": certificates})
    node.__name__ = f"run_{suite}"
    node.__doc__ = f"{suite} suite의 claim을 실행합니다."
    return node


def finalize(state: VerifyState) -> dict:
    """Certificate를 claim id 순으로 정렬하고 실패한 claim을 모읍니다."""
    report = sorted(state["certificates"], key=lambda c: c.claim)
    return {"report": report, "failed": [c.claim for c in report if not c.verdict]}

# ===== GRAPH 구성 =====

verify_builder = StateGraph(VerifyState, input_schema=VerifyInputState)

verify_builder.add_node("route", route)
for _suite in SUITES:
    verify_builder.add_node(_suite, _suite_node(_suite))
verify_builder.add_node("finalize", finalize)

verify_builder.add_edge(START, "route")
verify_builder.set_finish_point("finalize")

verify_graph = verify_builder.compile()

# ===== 실행 보조 함수 =====

async def averify_claims(suites: list[str] | None = None) -> VerifyState:
    """검증 graph를 실행합니다. suites가 비어 있으면 전체 suite를 실행합니다."""
    return await verify_graph.ainvoke({"suites": list(suites or [])})


def verify_claims(suites: list[str] | None = None) -> VerifyState:
    return asyncio.run(averify_claims(suites))
