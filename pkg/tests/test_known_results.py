import pytest

from cremona_f2.errors import UnsupportedPair
from cremona_f2.frob import SURFACE_MODEL, frob_model, orbit_size
from cremona_f2.known_results import (
    INVENTORY_AUTOMORPHISMS,
    INVENTORY_GEISER_5_PLUS_2,
    INVENTORY_ROWS,
    INVENTORY_TABLE_TOTALS,
    INVENTORY_TOTAL,
    SUPPORTED_PAIRS,
    class_count,
    published_representatives,
    published_stages,
)


def test_stage_tables():
    assert published_stages("P2", 7) == (20, 1680, 10)
    assert published_stages("Q", 4) == (225, 54, 0, 0)
    assert class_count("D6", 5) == 11
    with pytest.raises(UnsupportedPair):
        published_stages("P2", 5)


@pytest.mark.parametrize(("surface", "d"), SUPPORTED_PAIRS)
def test_one_representative_per_class(surface, d):
    reps = published_representatives(surface, d)
    assert len(reps) == class_count(surface, d)
    assert len({r.label for r in reps}) == len(reps)
    assert all(r.point.space == ("P1xP1" if surface == "Q" else "P2") for r in reps)


@pytest.mark.parametrize(("surface", "d"), SUPPORTED_PAIRS)
def test_representatives_have_the_stated_orbit_size(surface, d):
    model = frob_model(SURFACE_MODEL[surface])
    assert [orbit_size(model, r.point) for r in published_representatives(surface, d)] == [d] * class_count(surface, d)


def test_inventory_totals_are_consistent():
    per_table = {table: sum(class_count(s, d) for s, d in pairs) for table, pairs in INVENTORY_ROWS.items()}
    per_table["P2"] += INVENTORY_AUTOMORPHISMS + INVENTORY_GEISER_5_PLUS_2
    assert per_table == INVENTORY_TABLE_TOTALS
    assert sum(per_table.values()) == INVENTORY_TOTAL == 111
