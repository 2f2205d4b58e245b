"""cremona-f2 명령행 도구.

세 개의 subcommand를 제공합니다:
- classify: (surface, d) 분류를 실행하고 results/<surface>_d<d>.json을 씁니다
- verify: 검증 suite를 실행하고 claim마다 certificates/<claim>.json을 씁니다
- emit-generators: 생성원 목록을 만들고 results/generators.json을 씁니다

Exit code는 0 (모두 일치), 2 (표와 불일치 또는 claim 실패), 1 (내부 오류)입니다.
"""

import argparse
import asyncio
import csv
import io
import json
import logging
import sys
from pathlib import Path
from typing import Any, Sequence

from pydantic import ValidationError

from cremona_f2 import __version__
from cremona_f2.classify_workflow import aclassify_orbits
from cremona_f2.claims import replay
from cremona_f2.errors import CremonaError
from cremona_f2.generators_full import generators_graph
from cremona_f2.known_results import INVENTORY_TOTAL, SURFACES, published_stages
from cremona_f2.state_classify import ClassifyState
from cremona_f2.state_verify import Certificate, RunConfig
from cremona_f2.utils import console, make_table, setup_logging, show_panel, write_json_atomic, write_text_atomic
from cremona_f2.verify_workflow import verify_claims

logger = logging.getLogger(__name__)

# ===== 설정 =====

# 결과 JSON 형식 버전
SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_MISMATCH = 2

# ===== 직렬화 =====

def classification_record(state: ClassifyState) -> dict[str, Any]:
    """분류 결과를 results JSON 형식으로 만듭니다 (timestamp 없음)."""
    counts = state["counts"]
    match = state["match"]
    classes = state["classes"]
    return {
        "schema": SCHEMA_VERSION,
        "surface": state["surface"],
        "size": state["size"],
        "field": classes[0].field if classes else None,
        "counts": counts.model_dump(),
        "published_stages": list(published_stages(state["surface"], state["size"])),
        "counts_match": counts.matches_published(),
        "classes": [c.model_dump() for c in classes],
        "match": {**match.model_dump(), "ok": match.ok},
    }


def classes_csv(state: ClassifyState) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["surface", "size", "field", "representative", "provenance", "orbit"])
    for c in state["classes"]:
        writer.writerow([c.surface, c.size, c.field, c.representative, c.provenance, " ".join(c.orbit)])
    return buffer.getvalue()

# ===== COMMAND =====

async def _classify_pairs(config: RunConfig) -> list[ClassifyState]:
    return list(await asyncio.gather(*(aclassify_orbits(s, d, config.workers) for s, d in config.pairs())))


def cmd_classify(config: RunConfig) -> int:
    """분류를 실행하고 결과를 씁니다. 모든 집계와 대표점이 공개 표와 맞으면 0."""
    states = asyncio.run(_classify_pairs(config))
    results_dir = config.out / "results"
    rows = []
    all_ok = True
    for state in states:
        record = classification_record(state)
        stem = f"{state['surface']}_d{state['size']}"
        if config.format == "csv":
            write_text_atomic(results_dir / f"{stem}.csv", classes_csv(state))
        else:
            write_json_atomic(results_dir / f"{stem}.json", record)
        ok = record["counts_match"] and record["match"]["ok"]
        all_ok &= ok
        counts = state["counts"]
        stages = "/".join("-" if v is None else str(v) for v in counts.published_columns())
        rows.append([state["surface"], state["size"], stages, "ok" if ok else "mismatch"])
    if config.format == "text" or not all_ok:
        console.print(make_table("Classification", ["surface", "d", "stages", "verdict"], rows))
    return EXIT_OK if all_ok else EXIT_MISMATCH


def _write_certificate(config: RunConfig, cert: Certificate) -> Path:
    return write_json_atomic(config.out / "certificates" / f"{cert.claim}.json", cert.model_dump(mode="json", by_alias=True))


def cmd_verify(config: RunConfig) -> int:
    """검증 suite를 실행하거나 저장된 certificate를 재현합니다."""
    if config.replay is not None:
        recorded = Certificate.model_validate(json.loads(config.replay.read_text(encoding="utf-8")))
        same, fresh = replay(recorded)
        verdict = "PASS" if same and fresh.verdict else "FAIL"
        show_panel(f"{fresh.claim}: {verdict} (reproduced={same})", title="Replay")
        return EXIT_OK if same and fresh.verdict else EXIT_MISMATCH

    state = verify_claims([config.only] if config.only else None)
    for cert in state["report"]:
        _write_certificate(config, cert)
    rows = [[c.claim, "PASS" if c.verdict else "FAIL", f"{c.wall_clock:.2f}s"] for c in state["report"]]
    console.print(make_table("Verification", ["claim", "verdict", "time"], rows))
    return EXIT_MISMATCH if state["failed"] else EXIT_OK


def cmd_emit_generators(config: RunConfig) -> int:
    """생성원 목록을 만들고 합계가 111인지 확인합니다."""
    state = asyncio.run(generators_graph.ainvoke({"workers": config.workers}))
    inventory = state["inventory"]
    write_json_atomic(config.out / "results" / "generators.json", {"schema": SCHEMA_VERSION, **inventory.model_dump()})
    rows = [[r.table, r.kind, r.size, r.count] for r in inventory.rows]
    rows.append(["total", "", "", inventory.total])
    if config.format == "text":
        console.print(make_table("Generators", ["table", "kind", "d", "count"], rows))
    return EXIT_OK if inventory.total == INVENTORY_TOTAL else EXIT_MISMATCH

# ===== ARGUMENT =====

def _size(value: str) -> int | None:
    if value == "all":
        return None
    try:
        return int(value)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"size must be an integer or 'all', got {value!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cremona-f2", description="GF(2) Cremona 생성원 계산")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="DEBUG logging")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv", "text"], default="json")
    common.add_argument("--out", type=Path, default=Path("."))
    common.add_argument(
        "--workers", type=int, default=1,
        help="filter 단계의 chunk 수 (thread 실행이라 GIL 때문에 속도는 거의 같음, 결과는 동일)",
    )

    classify = sub.add_parser("classify", parents=[common], help="궤도 분류")
    classify.add_argument("--surface", choices=[*SURFACES, "all"], default="all")
    classify.add_argument("--size", type=_size, default=None)
    classify.add_argument("--all", action="store_true", help="지원하는 모든 (surface, d)")

    verify = sub.add_parser("verify", parents=[common], help="검증 suite")
    verify.add_argument("--only", default=None, help="groups, involutions, families, models, counting, links")
    verify.add_argument("--replay", type=Path, default=None, help="다시 실행할 certificate")

    sub.add_parser("emit-generators", parents=[common], help="생성원 목록")
    return parser


def parse_config(argv: Sequence[str] | None = None) -> tuple[RunConfig, bool]:
    """명령행을 RunConfig로 변환합니다.

    Raises:
        ValidationError: 지원하지 않는 (surface, size) 또는 잘못된 worker 수
    """
    args = build_parser().parse_args(argv)
    fields: dict[str, Any] = {
        "command": args.command,
        "format": args.format,
        "out": args.out,
        "workers": args.workers,
    }
    if args.command == "classify":
        fields["surface"] = "all" if args.all else args.surface
        fields["size"] = None if args.all else args.size
    if args.command == "verify":
        fields["only"] = args.only
        fields["replay"] = args.replay
    return RunConfig(**fields), args.verbose


COMMANDS = {
    "classify": cmd_classify,
    "verify": cmd_verify,
    "emit-generators": cmd_emit_generators,
}


def main(argv: Sequence[str] | None = None) -> int:
    try:
        config, verbose = parse_config(argv)
    except ValidationError as exc:
        show_panel(str(exc), title="Invalid arguments", border_style="red")
        return EXIT_ERROR
    setup_logging(logging.DEBUG if verbose else logging.INFO)
    try:
        return COMMANDS[config.command](config)
    except CremonaError as exc:
        show_panel(f"{type(exc).__name__}: {exc}", title="Error", border_style="red")
        return EXIT_ERROR
    except Exception as exc:
        logger.exception("unexpected failure")
        show_panel(f"{type(exc).__name__}: {exc}", title="Error", border_style="red")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
