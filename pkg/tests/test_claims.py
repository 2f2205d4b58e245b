import json

import pytest

from cremona_f2.claims import CLAIMS, SUITES, claim_ids, replay, run_claim
from cremona_f2.errors import UnknownClaim
from cremona_f2.state_verify import Certificate


def test_every_suite_has_claims():
    assert set(SUITES) == {spec.suite for spec in CLAIMS.values()}
    assert claim_ids() == sorted(CLAIMS)
    assert claim_ids("counting") == ["counting.brute_force", "counting.geiser_pairs", "counting.unique_size5"]
    with pytest.raises(UnknownClaim):
        claim_ids("nope")
    with pytest.raises(UnknownClaim):
        run_claim("groups.nope")


def test_certificate_contents():
    cert = run_claim("groups.pgl3_order")
    assert cert.verdict
    assert cert.suite == "groups"
    assert cert.witness == {"order": 168, "identity": True}
    assert cert.inputs == {"fields": {}}
    dumped = cert.model_dump(mode="json", by_alias=True)
    assert dumped["schema"] == 1
    assert Certificate.model_validate(json.loads(json.dumps(dumped))) == cert


def test_certificate_records_field_moduli():
    cert = run_claim("links.one_link_conjugation")
    assert cert.verdict
    assert cert.inputs == {"fields": {"F4": [1, 1, 1]}}


def test_replay_reproduces_the_witness():
    cert = run_claim("groups.pgl2")
    same, fresh = replay(cert)
    assert same
    assert fresh.witness == cert.witness


def test_replay_detects_a_tampered_witness():
    cert = run_claim("groups.pgl2")
    tampered = cert.model_copy(update={"witness": {"order": 7}})
    same, _ = replay(tampered)
    assert not same


@pytest.mark.slow
@pytest.mark.parametrize("claim", sorted(CLAIMS))
def test_claim_holds(claim):
    cert = run_claim(claim)
    assert cert.verdict, cert.witness
