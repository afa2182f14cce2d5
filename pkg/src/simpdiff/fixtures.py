"""The shipped fixture directory and the builders that produce it.

Fixtures are plain JSON files.  ``build_fixture_documents`` regenerates them
from the corpus builders; the test-suite checks the shipped copies still match.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Optional

from .formats import (InputError, cosimplicial_from_json, dga_from_json, dumps, load_json,
                      presentation_from_json, presentation_to_json)

FIXTURE_DIR = Path(__file__).parent / "data"


@dataclass
class FixtureSet:
    presentations: Dict[str, object] = field(default_factory=dict)
    cosimplicial: Dict[str, object] = field(default_factory=dict)
    dgas: Dict[str, object] = field(default_factory=dict)


def load_fixtures(directory=None) -> FixtureSet:
    """Parse every ``*.json`` file; any failure names the offending file."""
    d = Path(directory) if directory is not None else FIXTURE_DIR
    if not d.is_dir():
        raise InputError(f"{d}: fixture directory not found")
    out = FixtureSet()
    files = sorted(d.glob("*.json"))
    if not files:
        raise InputError(f"{d}: no fixtures")
    for path in files:
        name = path.stem
        doc = load_json(path)
        kind = doc.get("kind")
        where = f"fixture {path.name}"
        if kind in ("framed", "group_law"):
            out.presentations[name] = presentation_from_json(doc, where)
        elif kind == "cosimplicial":
            out.cosimplicial[name] = cosimplicial_from_json(doc, where)
        elif kind == "dga_corpus":
            for t, entry in enumerate(doc.get("dgas", [])):
                label = entry.get("name", f"{name}{t}") if isinstance(entry, dict) else f"{name}{t}"
                out.dgas[label] = dga_from_json(entry, f"{where}.dgas[{t}]")
        else:
            raise InputError(f"{where}: unknown kind {kind!r}")
    return out


def _bracket_doc(basis, entries, truncation, max_level):
    return {"kind": "group_law", "basis": basis, "dimension": len(basis),
            "bracket": [[i, j, k, c] for i, j, k, c in entries],
            "truncation": truncation, "max_level": max_level}


def _gen(name, degree):
    return {"name": name, "degree": degree}


def _term(coeff, *factors):
    return {"coeff": coeff, "factors": list(factors)}


def _dga_corpus():
    def dga(name, gens, diff, cap):
        return {"name": name, "cap": cap, "generators": [_gen(*g) for g in gens], "differential": diff}

    return [
        dga("line", [("x", 1)], {}, 3),
        dga("plane", [("a", 1), ("b", 1)], {}, 3),
        dga("heisenberg", [("a", 1), ("b", 1), ("c", 1)], {"c": [_term("-1", "a", "b")]}, 3),
        dga("affine", [("u", 1), ("b", 1)], {"b": [_term("-1", "u", "b")]}, 3),
        dga("so3", [("a", 1), ("b", 1), ("c", 1)],
            {"a": [_term("-1", "b", "c")], "b": [_term("-1", "c", "a")], "c": [_term("-1", "a", "b")]}, 3),
        dga("polynomial", [("x", 2)], {}, 4),
        dga("contractible", [("a", 1), ("x", 2)], {"a": [_term("1", "x")]}, 4),
        dga("sphere", [("x", 2), ("y", 3)], {"y": [_term("1", "x", "x")]}, 4),
        dga("mixed", [("a", 1), ("b", 1), ("c", 2)], {"b": [_term("1", "c")]}, 3),
        dga("weil_line", [("x", 1), ("y", 2)], {"x": [_term("1", "y")]}, 4),
        dga("odd_three", [("x", 1), ("z", 3)], {}, 4),
        dga("abelian3", [("a", 1), ("b", 1), ("c", 1)], {}, 3),
    ]


def build_fixture_documents() -> Dict[str, dict]:
    """File name to JSON document for every shipped fixture."""
    from .corpus import frame_change
    from .presentation import linear_presentation
    from .linalg import Matrix

    docs: Dict[str, dict] = {}
    docs["abelian1.json"] = _bracket_doc(["x"], [], 4, 4)
    docs["abelian2.json"] = _bracket_doc(["x", "y"], [], 4, 4)
    docs["heisenberg.json"] = _bracket_doc(["a", "b", "c"], [(0, 1, 2, "1")], 4, 4)
    # BCH to second order is only associative up to weight 2 for so(3)
    docs["so3.json"] = _bracket_doc(["a", "b", "c"], [(0, 1, 2, "1"), (1, 2, 0, "1"), (2, 0, 1, "1")], 2, 2)
    docs["affine.json"] = {
        "kind": "group_law", "basis": ["u", "b"], "dimension": 2, "truncation": 4, "max_level": 4,
        "group_law": [
            [{"coeff": "1", "x": [[0, 1]]}, {"coeff": "1", "y": [[0, 1]]},
             {"coeff": "1", "x": [[0, 1]], "y": [[0, 1]]}],
            [{"coeff": "1", "x": [[1, 1]]}, {"coeff": "1", "y": [[1, 1]]},
             {"coeff": "1", "x": [[0, 1]], "y": [[1, 1]]}],
        ],
    }
    docs["shifted.json"] = presentation_to_json(
        linear_presentation([1, 1, 1], {2: Matrix.from_dense([[1]])}, 4, 4))
    docs["odd_abelian.json"] = presentation_to_json(linear_presentation([1], {}, 4, 4, parities=[[1]]))
    heis = presentation_from_json(_bracket_doc(["a", "b", "c"], [(0, 1, 2, "1")], 3, 3))
    docs["twisted.json"] = presentation_to_json(frame_change(heis, random.Random(7)))
    docs["odd_line.json"] = {"kind": "cosimplicial", "model": "odd_line", "level_cap": 5}
    docs["exterior_line.json"] = {
        "kind": "cosimplicial", "model": "denormalized", "level_cap": 3,
        "dga": {"cap": 3, "generators": [_gen("x", 1)], "differential": {}},
    }
    docs["abelian_cochains.json"] = {
        "kind": "cosimplicial", "model": "cochains", "level_cap": 3,
        "presentation": _bracket_doc(["x"], [], 4, 3),
    }
    docs["dgas.json"] = {"kind": "dga_corpus", "dgas": _dga_corpus()}
    return docs


def write_fixtures(directory=None) -> None:
    d = Path(directory) if directory is not None else FIXTURE_DIR
    d.mkdir(parents=True, exist_ok=True)
    for name, doc in build_fixture_documents().items():
        (d / name).write_text(dumps(doc))


if __name__ == "__main__":
    write_fixtures()
