from __future__ import annotations

import json

import pytest

from hamcayley import catalog as cat
from hamcayley.errors import ParseError
from hamcayley.group_core import subgroup_generated

REQUIRED = ["D4", "Q8", "D16", "M16", "ES32+", "Heis3", "Heis3xC2", "D4xC3", "Q8xC5"]


def test_required_groups_present():
    names = set(cat.builtin_names())
    assert set(REQUIRED) <= names


def test_five_ingested_variants():
    files = cat.ingested_files()
    assert len(files) == 5
    orders = sorted(cat.load_group(p).group.order for p in files)
    assert orders == [8, 8, 16, 24, 27]


def test_every_entry_validates(entries):
    for e in entries:
        rep = cat.validate_entry(e)
        assert rep.ok, str(rep)
        assert e.expected["nilpotent"] and e.expected["commutator_cyclic"]
        assert e.group.order <= 256


def test_suggested_sets_generate(entries):
    for e in entries:
        for names in e.suggested_generating_sets:
            assert subgroup_generated(e.group, e.elements_of(names)).order == e.group.order, (e.name, names)


def test_resolve_is_case_insensitive():
    assert cat.resolve("heis3").name == "Heis3"
    assert cat.resolve("d4_square").group.order == 8


def test_unknown_name_raises():
    with pytest.raises((KeyError, ParseError)):
        cat.resolve("NoSuchGroup")


def test_permutation_file_roundtrip(tmp_path):
    data = {"name": "C4", "points": 4, "generators": [[1, 2, 3, 0]], "names": ["t"]}
    path = tmp_path / "c4.json"
    path.write_text(json.dumps(data))
    e = cat.load_group(path)
    assert e.group.order == 4
    assert e.suggested_generating_sets == [["t"]]
    assert e.expected["commutator_order"] == 1


@pytest.mark.parametrize("bad", [
    {"points": 3, "generators": [[0, 0, 1]]},
    {"points": 3, "generators": [[1, 0, 2]], "names": ["a", "b"]},
    {"nothing": True},
    {"table": [[0, 1], [1, 1]]},
])
def test_malformed_files_rejected(bad):
    with pytest.raises(ParseError):
        cat.group_from_json(bad)


def test_expected_mismatch_is_reported():
    e = cat.build("D4")
    e.expected = dict(e.expected, commutator_order=4)
    rep = cat.validate_entry(e)
    assert not rep.ok
    assert "commutator_order" in str(rep)
