import json

import pytest

from simpdiff.fixtures import FIXTURE_DIR, build_fixture_documents, load_fixtures
from simpdiff.formats import (InputError, cosimplicial_from_json, dga_from_json, dga_to_json, dumps,
                              load_json, matrix_from_json, matrix_to_json, presentation_from_json,
                              presentation_to_json)
from simpdiff.linalg import Matrix


def test_shipped_fixtures_are_current():
    docs = build_fixture_documents()
    assert sorted(p.name for p in FIXTURE_DIR.glob("*.json")) == sorted(docs)
    for name, doc in docs.items():
        assert (FIXTURE_DIR / name).read_text() == dumps(doc), name


@pytest.mark.parametrize("name", ["heisenberg", "affine", "shifted", "odd_abelian", "twisted"])
def test_presentation_round_trip(fixtures, name):
    P = fixtures.presentations[name]
    doc = presentation_to_json(P)
    again = presentation_to_json(presentation_from_json(json.loads(dumps(doc))))
    assert again == doc


def test_dga_round_trip(fixtures):
    for name, Y in fixtures.dgas.items():
        doc = dga_to_json(Y)
        assert doc["kind"] == "dga_table"
        assert json.loads(dumps(doc)) == doc


def test_matrix_round_trip():
    M = Matrix.from_dense([[1, 0], [0, "1/2"]])
    assert matrix_from_json(matrix_to_json(M), 2, 2, "m") == M


def test_truncation_can_only_shrink(fixtures):
    doc = presentation_to_json(fixtures.presentations["shifted"])
    assert presentation_from_json(doc, truncation=2).truncation == 2
    with pytest.raises(InputError, match="exceeds"):
        presentation_from_json(doc, truncation=doc["truncation"] + 1)


def test_dumps_is_stable():
    assert dumps({"b": 1, "a": [1, 2]}) == '{\n  "a": [\n    1,\n    2\n  ],\n  "b": 1\n}\n'


@pytest.mark.parametrize("doc, fragment", [
    ({"kind": "mystery"}, "expected kind"),
    ({"kind": "framed", "tangent_ranks": [1], "truncation": 0}, "truncation"),
    ({"kind": "framed", "tangent_ranks": "one", "truncation": 2}, "tangent_ranks"),
    ({"kind": "framed", "tangent_ranks": [1, 1], "truncation": 2, "boundary": {"2": [["1", "2"]]}}, "boundary"),
    ({"kind": "framed", "tangent_ranks": [1], "truncation": 2, "parities": [[1]]}, "super"),
    ({"kind": "framed", "tangent_ranks": [1], "truncation": 2, "d0": {"1": []}}, "levels start at 2"),
    ({"kind": "group_law", "bracket": [[0, 1, 5, "1"]], "dimension": 2, "truncation": 2}, "out of range"),
    ({"kind": "group_law", "bracket": [[0, 1, 0, "1"], [1, 2, 1, "1"]], "dimension": 3, "truncation": 2}, "Jacobi"),
])
def test_malformed_presentations(doc, fragment):
    with pytest.raises(InputError, match=fragment):
        presentation_from_json(doc, "doc")


def test_bad_dga_is_rejected():
    doc = {"kind": "dga", "cap": 3,
           "generators": [{"name": "a", "degree": 1}, {"name": "b", "degree": 1}, {"name": "c", "degree": 1}],
           "differential": {"a": [{"coeff": "1", "factors": ["b", "c"]}],
                            "b": [{"coeff": "1", "factors": ["a", "b"]}]}}
    with pytest.raises(InputError):
        dga_from_json(doc, "doc")


def test_unknown_cosimplicial_model():
    with pytest.raises(InputError):
        cosimplicial_from_json({"kind": "cosimplicial", "model": "nope"}, "doc")


def test_load_json_reports_the_line(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{\n  "kind": "framed",\n  oops\n}\n')
    with pytest.raises(InputError, match="line 3"):
        load_json(p)
    with pytest.raises(InputError, match="cannot read"):
        load_json(tmp_path / "missing.json")


def test_corrupted_fixture_names_the_file(tmp_path):
    for p in FIXTURE_DIR.glob("*.json"):
        (tmp_path / p.name).write_text(p.read_text())
    (tmp_path / "shifted.json").write_text('{"kind": "framed", "tangent_ranks": [1]}')
    with pytest.raises(InputError, match="shifted.json"):
        load_fixtures(tmp_path)
