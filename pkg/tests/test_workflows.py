import asyncio

import pytest
from langgraph.types import Command

from cremona_f2.classify_workflow import classify_orbits, fan_out, split_chunks
from cremona_f2.errors import UnknownClaim
from cremona_f2.generators_full import generators_graph
from cremona_f2.state_verify import Certificate
from cremona_f2.verify_workflow import finalize, route, verify_claims


def test_split_chunks_keeps_order():
    items = list(range(10))
    chunks = split_chunks(items, 3)
    assert len(chunks) == 3
    assert [x for c in chunks for x in c] == items
    assert split_chunks([], 4) == []
    assert split_chunks(items, 0) == [items]


def test_fan_out_merges_in_input_order():
    result = asyncio.run(fan_out(lambda chunk: [x * x for x in chunk], list(range(7)), 3))
    assert result == [x * x for x in range(7)]


def test_worker_count_does_not_change_results():
    one = classify_orbits("D6", 3, workers=1)
    four = classify_orbits("D6", 3, workers=4)
    assert one["classes"] == four["classes"]
    assert one["counts"] == four["counts"]
    assert len(one["log"]) == 4


def test_route_walks_the_requested_suites():
    first = route({"suites": ["groups", "links"]})
    assert isinstance(first, Command)
    assert first.goto == "groups"
    assert first.update == {"pending": ["links"]}
    last = route({"suites": ["groups"], "pending": []})
    assert last.goto == "finalize"


def test_route_rejects_unknown_suites():
    with pytest.raises(UnknownClaim):
        route({"suites": ["nope"]})


def _cert(claim, verdict):
    return Certificate(
        claim=claim,
        suite=claim.split(".")[0],
        description="",
        inputs={},
        verdict=verdict,
        tool_version="0",
        wall_clock=0.0,
        timestamp="",
    )


def test_finalize_sorts_and_collects_failures():
    state = {"certificates": [_cert("links.b", True), _cert("groups.a", False)]}
    result = finalize(state)
    assert [c.claim for c in result["report"]] == ["groups.a", "links.b"]
    assert result["failed"] == ["groups.a"]


@pytest.mark.slow
def test_verify_one_suite():
    state = verify_claims(["families"])
    assert [c.claim for c in state["report"]] == ["families.conic_identity", "families.samples"]
    assert state["failed"] == []


@pytest.mark.slow
def test_generators_graph():
    state = asyncio.run(generators_graph.ainvoke({"workers": 2}))
    inventory = state["inventory"]
    assert inventory.total == 111
    assert inventory.table_totals == {"P2": 54, "Q": 23, "D6": 18, "D5": 16}
