"""JSON encodings of presentations, cosimplicial algebras, dg algebras and reports.

Rationals are written as ``"p/q"`` strings.  Reports are dumped with sorted
keys so identical inputs give identical bytes.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional

from .graded_poly import Generator, Poly
from .linalg import Matrix
from .rationals import format_rational, parse_rational

FORMAT_VERSION = 1


class InputError(ValueError):
    """Malformed or unusable input; the CLI maps it to exit code 1."""


def _fail(where: str, msg: str):
    raise InputError(f"{where}: {msg}")


def _rat(value, where: str) -> Fraction:
    try:
        return parse_rational(value)
    except ValueError as exc:
        _fail(where, str(exc))


def _int(value, where: str, minimum: Optional[int] = None) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        _fail(where, f"expected an integer, got {value!r}")
    if minimum is not None and value < minimum:
        _fail(where, f"must be at least {minimum}")
    return value


def _list(value, where: str) -> list:
    if not isinstance(value, list):
        _fail(where, f"expected a list, got {type(value).__name__}")
    return value


def _dict(value, where: str) -> dict:
    if not isinstance(value, dict):
        _fail(where, f"expected an object, got {type(value).__name__}")
    return value


def load_json(path) -> Dict[str, Any]:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise InputError(f"{p}: cannot read ({exc.strerror})") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{p}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc
    return _dict(doc, str(p))


def dumps(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def matrix_from_json(data, rows: int, cols: int, where: str) -> Matrix:
    data = _list(data, where)
    if len(data) != rows:
        _fail(where, f"expected {rows} rows, got {len(data)}")
    dense = []
    for i, row in enumerate(data):
        row = _list(row, f"{where}[{i}]")
        if len(row) != cols:
            _fail(f"{where}[{i}]", f"expected {cols} entries, got {len(row)}")
        dense.append([_rat(v, f"{where}[{i}][{j}]") for j, v in enumerate(row)])
    return Matrix.from_dense(dense, cols)


def matrix_to_json(m: Matrix) -> List[List[str]]:
    return [[format_rational(v) for v in row] for row in m.to_dense()]


# ---------------------------------------------------------------------------
# presentations


def _subset(value, where: str, n: Optional[int] = None) -> tuple:
    value = _list(value, where)
    out = tuple(_int(v, where, 1) for v in value)
    if list(out) != sorted(set(out)) or not out:
        _fail(where, "subset must be a nonempty increasing list")
    if n is not None and out[-1] > n:
        _fail(where, f"subset not inside 1..{n}")
    return out


def _coordinate(P_ranks, parity, value, where: str, n: int) -> Generator:
    from .presentation import coord

    value = _list(value, where)
    if len(value) != 2:
        _fail(where, "a coordinate is [subset, label]")
    alpha = _subset(value[0], where + ".subset", n)
    lab = _int(value[1], where + ".label", 0)
    k = len(alpha)
    if k > len(P_ranks) or lab >= P_ranks[k - 1]:
        _fail(where, f"label {lab} out of range in degree {k}")
    return coord(alpha, lab, parity(k, lab))


def poly_to_json(p: Poly) -> List[Dict[str, Any]]:
    out = []
    for m, c in p.sorted_terms():
        out.append({
            "coeff": format_rational(c),
            "monomial": [[list(g.key[1]), g.key[2], e] for g, e in m],
        })
    return out


def _poly_from_json(data, ranks, parity, n: int, truncation: int, where: str) -> Poly:
    from .graded_poly import mono_from_factors

    terms: Dict = {}
    for t, term in enumerate(_list(data, where)):
        tw = f"{where}[{t}]"
        term = _dict(term, tw)
        if "coeff" not in term or "monomial" not in term:
            _fail(tw, "a term needs 'coeff' and 'monomial'")
        c = _rat(term["coeff"], tw + ".coeff")
        factors = []
        for f, fac in enumerate(_list(term["monomial"], tw + ".monomial")):
            fw = f"{tw}.monomial[{f}]"
            fac = _list(fac, fw)
            if len(fac) != 3:
                _fail(fw, "a factor is [subset, label, exponent]")
            g = _coordinate(ranks, parity, fac[:2], fw, n)
            e = _int(fac[2], fw + ".exponent", 1)
            factors.extend([g] * e)
        s, m = mono_from_factors(factors)
        if s:
            terms[m] = terms.get(m, 0) + s * c
    return Poly(terms, truncation)


def presentation_from_json(doc: Dict[str, Any], where: str = "input", truncation: Optional[int] = None):
    """Build a presentation from a ``framed`` or ``group_law`` document."""
    from .presentation import FramedPresentation, PresentationError

    kind = doc.get("kind")
    if kind == "group_law":
        return _group_law_presentation(doc, where, truncation)
    if kind != "framed":
        _fail(where, f"expected kind 'framed' or 'group_law', got {kind!r}")
    ranks = [_int(r, f"{where}.tangent_ranks", 0) for r in _list(doc.get("tangent_ranks"), f"{where}.tangent_ranks")]
    W = _int(doc.get("truncation"), f"{where}.truncation", 1)
    if truncation is not None:
        if truncation > W:
            _fail(where, f"requested truncation {truncation} exceeds the stored {W}")
        W = truncation
    parities = None
    if "parities" in doc:
        parities = [[_int(v, f"{where}.parities", 0) for v in _list(row, f"{where}.parities")]
                    for row in _list(doc["parities"], f"{where}.parities")]
    if parities and any(v for row in parities for v in row) and doc.get("super") is not True:
        _fail(f"{where}.parities", "odd coordinates need \"super\": true")
    names = {}
    for k, v in _dict(doc.get("names", {}), f"{where}.names").items():
        names[int(k)] = [str(s) for s in _list(v, f"{where}.names.{k}")]
    boundary = {}
    for k, mat in _dict(doc.get("boundary", {}), f"{where}.boundary").items():
        try:
            kk = int(k)
        except ValueError:
            _fail(f"{where}.boundary", f"bad degree {k!r}")
        if not 2 <= kk <= len(ranks):
            _fail(f"{where}.boundary", f"degree {kk} outside 2..{len(ranks)}")
        boundary[kk] = matrix_from_json(mat, ranks[kk - 2], ranks[kk - 1], f"{where}.boundary.{k}")

    def parity(k, lab):
        return parities[k - 1][lab] % 2 if parities else 0

    d0 = {}
    for lev, entries in _dict(doc.get("d0", {}), f"{where}.d0").items():
        try:
            n = int(lev)
        except ValueError:
            _fail(f"{where}.d0", f"bad level {lev!r}")
        if n < 2:
            _fail(f"{where}.d0", "levels start at 2")
        images = {}
        for e, entry in enumerate(_list(entries, f"{where}.d0.{lev}")):
            ew = f"{where}.d0.{lev}[{e}]"
            entry = _dict(entry, ew)
            x = _coordinate(ranks, parity, entry.get("coordinate"), ew + ".coordinate", n - 1)
            images[x] = _poly_from_json(entry.get("poly"), ranks, parity, n, W, ew + ".poly")
        d0[n] = images
    try:
        return FramedPresentation(ranks, boundary, W, d0, parities, names)
    except PresentationError as exc:
        _fail(where, str(exc))


def _group_law_presentation(doc, where, truncation):
    from .oracles import GroupLaw, bch_order2, gx, gy, nerve_from_group_law

    W = truncation if truncation is not None else _int(doc.get("truncation"), f"{where}.truncation", 1)
    L = _int(doc.get("max_level", max(2, W)), f"{where}.max_level", 2)
    basis = [str(b) for b in _list(doc.get("basis", []), f"{where}.basis")]
    if "bracket" in doc:
        m = _int(doc.get("dimension", len(basis)), f"{where}.dimension", 1)
        c = [[[Fraction(0)] * m for _ in range(m)] for _ in range(m)]
        for t, entry in enumerate(_list(doc["bracket"], f"{where}.bracket")):
            ew = f"{where}.bracket[{t}]"
            entry = _list(entry, ew)
            if len(entry) != 4:
                _fail(ew, "a bracket entry is [i, j, k, coeff]")
            i, j, k = (_int(v, ew, 0) for v in entry[:3])
            if max(i, j, k) >= m:
                _fail(ew, "index out of range")
            v = _rat(entry[3], ew)
            c[i][j][k] += v
            c[j][i][k] -= v
        try:
            law = bch_order2(c, basis or None)
        except ValueError as exc:
            _fail(where, str(exc))
    elif "group_law" in doc:
        m = _int(doc.get("dimension", len(basis)), f"{where}.dimension", 1)
        comps = []
        rows = _list(doc["group_law"], f"{where}.group_law")
        if len(rows) != m:
            _fail(f"{where}.group_law", f"expected {m} components")
        for k, row in enumerate(rows):
            terms = {}
            for t, term in enumerate(_list(row, f"{where}.group_law[{k}]")):
                tw = f"{where}.group_law[{k}][{t}]"
                term = _dict(term, tw)
                factors = []
                for var, ctor in (("x", gx), ("y", gy)):
                    for pair in _list(term.get(var, []), f"{tw}.{var}"):
                        pair = _list(pair, f"{tw}.{var}")
                        i = _int(pair[0], tw, 0)
                        if i >= m:
                            _fail(tw, "variable index out of range")
                        factors.extend([ctor(i)] * _int(pair[1], tw, 1))
                mono = Poly.product_of(factors)
                for mm, cc in mono.terms.items():
                    terms[mm] = terms.get(mm, 0) + cc * _rat(term.get("coeff"), tw + ".coeff")
            comps.append(Poly(terms))
        law = GroupLaw(m, comps, basis or None)
    else:
        _fail(where, "a group law needs 'bracket' or 'group_law'")
    return nerve_from_group_law(law, W, L)


def presentation_to_json(P) -> Dict[str, Any]:
    doc: Dict[str, Any] = {
        "kind": "framed",
        "tangent_ranks": list(P.ranks),
        "truncation": P.truncation,
        "boundary": {str(k): matrix_to_json(m) for k, m in sorted(P.boundary.items())},
        "d0": {},
    }
    if P.parities is not None:
        doc["parities"] = [list(p) for p in P.parities]
        doc["super"] = P.is_super
    if P.names:
        doc["names"] = {str(k): v for k, v in P.names.items()}
    for n in sorted(P.d0):
        entries = []
        for x in P.coordinates(n - 1):
            entries.append({"coordinate": [list(x.key[1]), x.key[2]], "poly": poly_to_json(P.d0[n][x])})
        doc["d0"][str(n)] = entries
    return doc


# ---------------------------------------------------------------------------
# dg algebras and cosimplicial algebras


def dga_from_json(doc: Dict[str, Any], where: str = "input"):
    """A free graded-commutative dga: generators with degrees and differentials."""
    from .cosimplicial import dga_from_free

    cap = _int(doc.get("cap"), f"{where}.cap", 0)
    gens = {}
    order = []
    for t, g in enumerate(_list(doc.get("generators"), f"{where}.generators")):
        gw = f"{where}.generators[{t}]"
        g = _dict(g, gw)
        name = g.get("name")
        if not isinstance(name, str) or not name:
            _fail(gw, "generator needs a name")
        if name in gens:
            _fail(gw, f"duplicate generator {name!r}")
        deg = _int(g.get("degree"), gw + ".degree", 1)
        gens[name] = Generator(("g", t), deg, deg % 2, deg)
        order.append(name)
    diff = {}
    for name, terms in _dict(doc.get("differential", {}), f"{where}.differential").items():
        if name not in gens:
            _fail(f"{where}.differential", f"unknown generator {name!r}")
        acc = Poly({})
        for t, term in enumerate(_list(terms, f"{where}.differential.{name}")):
            tw = f"{where}.differential.{name}[{t}]"
            term = _dict(term, tw)
            factors = []
            for f in _list(term.get("factors", []), tw + ".factors"):
                if f not in gens:
                    _fail(tw, f"unknown generator {f!r}")
                factors.append(gens[f])
            acc = acc + Poly.product_of(factors, _rat(term.get("coeff"), tw + ".coeff"))
        diff[gens[name]] = acc
    for name, g in gens.items():
        diff.setdefault(g, Poly({}))
        if any(sum(h.degree * e for h, e in m) != g.degree + 1 for m in diff[g].terms):
            _fail(f"{where}.differential.{name}", "differential must raise degree by one")
    names = {g: n for n, g in gens.items()}
    try:
        Y = dga_from_free([gens[n] for n in order], diff, cap, lambda g: names[g])
    except ValueError as exc:
        _fail(where, str(exc))
    bad = Y.check()
    if bad:
        _fail(where, f"not a dg algebra: {bad[0]}")
    return Y


def dga_to_json(Y) -> Dict[str, Any]:
    product = []
    for (p, i, q, j), w in sorted(Y.product.items()):
        product.append([p, i, q, j, [[k, format_rational(c)] for k, c in sorted(w.items())]])
    return {
        "kind": "dga_table",
        "dims": list(Y.dims),
        "names": {str(k): v for k, v in sorted(Y.names.items())},
        "product": product,
        "differential": {str(p): matrix_to_json(m) for p, m in sorted(Y.differential.items())},
    }


def cosimplicial_from_json(doc: Dict[str, Any], where: str = "input"):
    """``kind: cosimplicial`` with ``model`` one of odd_line, denormalized, cochains, table."""
    from .cosimplicial import (CosimplicialError, FiniteCosimplicialAlgebra, cochain_algebra,
                               denormalized_dga, odd_line_model)

    if doc.get("kind") != "cosimplicial":
        _fail(where, f"expected kind 'cosimplicial', got {doc.get('kind')!r}")
    model = doc.get("model")
    cap = _int(doc.get("level_cap"), f"{where}.level_cap", 0)
    if model == "odd_line":
        return odd_line_model(cap)
    if model == "denormalized":
        Y = dga_from_json(_dict(doc.get("dga"), f"{where}.dga"), f"{where}.dga")
        return denormalized_dga(Y, cap)
    if model == "cochains":
        P = presentation_from_json(_dict(doc.get("presentation"), f"{where}.presentation"),
                                   f"{where}.presentation")
        if P.max_level < cap and cap >= 2:
            _fail(where, f"presentation only reaches level {P.max_level}")
        return cochain_algebra(P, cap)
    if model == "table":
        dims = [_int(d, f"{where}.dims", 0) for d in _list(doc.get("dims"), f"{where}.dims")]
        if len(dims) != cap + 1:
            _fail(where, "dims must list levels 0..level_cap")
        table: Dict = {}
        for t, entry in enumerate(_list(doc.get("product", []), f"{where}.product")):
            ew = f"{where}.product[{t}]"
            entry = _list(entry, ew)
            if len(entry) != 4:
                _fail(ew, "a product entry is [level, i, j, [[k, coeff], ...]]")
            n, i, j = (_int(v, ew, 0) for v in entry[:3])
            if n > cap or i >= dims[n] or j >= dims[n]:
                _fail(ew, "index out of range")
            vec = {}
            for pair in _list(entry[3], ew):
                k = _int(pair[0], ew, 0)
                if k >= dims[n]:
                    _fail(ew, "index out of range")
                vec[k] = _rat(pair[1], ew)
            table[(n, i, j)] = {k: v for k, v in vec.items() if v}
        cofaces = {}
        for n in range(1, cap + 1):
            mats = _list(_dict(doc.get("cofaces", {}), f"{where}.cofaces").get(str(n)), f"{where}.cofaces.{n}")
            cofaces[n] = [matrix_from_json(m, dims[n], dims[n - 1], f"{where}.cofaces.{n}[{i}]")
                          for i, m in enumerate(mats)]
        codegs = {}
        for n in range(cap):
            mats = _list(_dict(doc.get("codegeneracies", {}), f"{where}.codegeneracies").get(str(n)),
                         f"{where}.codegeneracies.{n}")
            codegs[n] = [matrix_from_json(m, dims[n], dims[n + 1], f"{where}.codegeneracies.{n}[{j}]")
                         for j, m in enumerate(mats)]
        try:
            return FiniteCosimplicialAlgebra(dims, lambda n, i, j: table.get((n, i, j), {}), cofaces, codegs)
        except CosimplicialError as exc:
            _fail(where, str(exc))
    _fail(where, f"unknown cosimplicial model {model!r}")
