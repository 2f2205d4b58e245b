import csv
import json

import pytest

from cremona_f2 import __version__
from cremona_f2.claims import run_claim
from cremona_f2.cli import EXIT_ERROR, EXIT_MISMATCH, EXIT_OK, main, parse_config
from cremona_f2.utils import write_json_atomic


def test_parse_config_selects_pairs(tmp_path):
    config, verbose = parse_config(["classify", "--surface", "D6", "--size", "2", "--out", str(tmp_path)])
    assert config.pairs() == [("D6", 2)]
    assert not verbose
    config, _ = parse_config(["classify", "--surface", "Q"])
    assert config.pairs() == [("Q", 4), ("Q", 6), ("Q", 7)]
    config, _ = parse_config(["-v", "classify", "--all"])
    assert len(config.pairs()) == 13


def test_version(capsys):
    with pytest.raises(SystemExit):
        main(["--version"])
    assert __version__ in capsys.readouterr().out


def test_unsupported_pair_is_an_error(tmp_path):
    assert main(["classify", "--surface", "P2", "--size", "5", "--out", str(tmp_path)]) == EXIT_ERROR
    assert main(["classify", "--workers", "0", "--out", str(tmp_path)]) == EXIT_ERROR


def test_classify_writes_json(tmp_path):
    assert main(["classify", "--surface", "D6", "--size", "2", "--out", str(tmp_path)]) == EXIT_OK
    record = json.loads((tmp_path / "results" / "D6_d2.json").read_text(encoding="utf-8"))
    assert record["schema"] == 1
    assert record["counts_match"]
    assert record["match"]["ok"]
    assert record["published_stages"] == [21, 9, 9, 1]
    assert len(record["classes"]) == 1
    assert "timestamp" not in record


def test_classify_output_is_deterministic(tmp_path):
    first, second = tmp_path / "a", tmp_path / "b"
    main(["classify", "--surface", "P2", "--size", "3", "--out", str(first)])
    main(["classify", "--surface", "P2", "--size", "3", "--workers", "3", "--out", str(second)])
    assert (first / "results" / "P2_d3.json").read_bytes() == (second / "results" / "P2_d3.json").read_bytes()


def test_classify_writes_csv(tmp_path):
    assert main(["classify", "--surface", "D6", "--size", "3", "--format", "csv", "--out", str(tmp_path)]) == EXIT_OK
    with (tmp_path / "results" / "D6_d3.csv").open(encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 2
    assert {row["surface"] for row in rows} == {"D6"}


def test_verify_replay(tmp_path):
    cert = run_claim("groups.pgl2")
    path = write_json_atomic(tmp_path / "pgl2.json", cert.model_dump(mode="json", by_alias=True))
    assert main(["verify", "--replay", str(path)]) == EXIT_OK

    tampered = cert.model_dump(mode="json", by_alias=True)
    tampered["witness"]["order"] = 5
    write_json_atomic(path, tampered)
    assert main(["verify", "--replay", str(path)]) == EXIT_MISMATCH


def test_verify_unknown_suite(tmp_path):
    assert main(["verify", "--only", "nope", "--out", str(tmp_path)]) == EXIT_ERROR


@pytest.mark.slow
def test_verify_writes_certificates(tmp_path):
    assert main(["verify", "--only", "groups", "--out", str(tmp_path)]) == EXIT_OK
    written = sorted(p.name for p in (tmp_path / "certificates").iterdir())
    assert "groups.pgl3_order.json" in written
    cert = json.loads((tmp_path / "certificates" / "groups.pgl3_order.json").read_text(encoding="utf-8"))
    assert cert["verdict"] is True
    assert cert["schema"] == 1


@pytest.mark.slow
def test_emit_generators(tmp_path):
    assert main(["emit-generators", "--out", str(tmp_path), "--workers", "2"]) == EXIT_OK
    record = json.loads((tmp_path / "results" / "generators.json").read_text(encoding="utf-8"))
    assert record["total"] == 111
