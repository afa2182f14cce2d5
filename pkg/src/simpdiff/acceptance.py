"""The acceptance suite: ten exact checks, each reported as one line.

Every criterion returns ``(passed, detail)``.  ``run_acceptance`` times them
and formats ``PASS``/``FAIL`` lines; the CLI ``selftest`` and the test-suite
both go through it.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import comb
from typing import Callable, List, Optional, Sequence, Tuple

from .cochains import Cochain, covers, cup, delta, reduce_mod_Jhat
from .combinatorics import labeled_partitions, unravel
from .corpus import fuzz_presentations, random_complex
from .dold_kan import (ChainComplex, CochainComplex, check_cosimplicial_identities,
                       check_simplicial_identities, denormalize, denormalize_cochain, normalize,
                       normalize_cochain)
from .fixtures import FixtureSet, load_fixtures
from .graded_poly import Poly, monomials_in
from .lie import (bracket_table, ce_algebra, ce_differential_direct, ce_differential_via_delta,
                  check_d_squared, lie_bracket_constants, weil_extension)
from .linalg import Matrix
from .oracles import brute_unravel_sign, commutator_constants, free_graded_dimension, relation_span_rank
from .presentation import coord, linear_presentation

Outcome = Tuple[bool, str]


@dataclass
class Criterion:
    number: int
    key: str
    title: str
    run: Callable[[FixtureSet], Outcome]
    time_limit: Optional[float] = None


@dataclass
class CriterionResult:
    number: int
    key: str
    title: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return f"[{verdict}] {self.number:2d} {self.title} ({self.seconds:.2f}s): {self.detail}"


# ---------------------------------------------------------------------------
# 1


def c1_abelian_example(F: FixtureSet) -> Outcome:
    P = F.presentations["abelian1"]
    x = P.coordinate((1,), 0)
    y1, y2 = P.coordinate((1,), 0), P.coordinate((2,), 0)
    got = delta(P, Cochain(1, Poly.gen(x) ** 2)).poly
    want = Poly.product_of([y1, y2], Fraction(-2))
    if got != want:
        return False, f"delta(x^2) = {got.render()}"
    C = ce_algebra(P, 1)
    gens = [g for g in C.generators if g in C.differential]
    if len(gens) != 1 or gens[0].degree != 1 or gens[0].parity != 1:
        return False, f"unexpected generators {[C.name(g) for g in gens]}"
    if len(C.generators) != 1 or not C.differential[gens[0]].is_zero():
        return False, "CE algebra is not an exterior algebra with zero differential"
    return True, "delta(x^2) = -2 y1 y2; CE = Lambda(xi), d xi = 0"


# ---------------------------------------------------------------------------
# 2


def _upper_triangular_basis() -> List[Matrix]:
    e12 = Matrix.from_dense([[0, 1, 0], [0, 0, 0], [0, 0, 0]])
    e23 = Matrix.from_dense([[0, 0, 0], [0, 0, 1], [0, 0, 0]])
    e13 = Matrix.from_dense([[0, 0, 1], [0, 0, 0], [0, 0, 0]])
    return [e12, e23, e13]


def _so3_basis() -> List[Matrix]:
    # infinitesimal rotations about the three axes
    return [Matrix.from_dense([[0, 0, 0], [0, 0, -1], [0, 1, 0]]),
            Matrix.from_dense([[0, 0, 1], [0, 0, 0], [-1, 0, 0]]),
            Matrix.from_dense([[0, -1, 0], [1, 0, 0], [0, 0, 0]])]


def c2_brackets(F: FixtureSet) -> Outcome:
    H = ce_algebra(F.presentations["heisenberg"], 1)
    got = lie_bracket_constants(H)
    want = commutator_constants(_upper_triangular_basis())
    if got != want:
        return False, f"heisenberg constants {got} != {want}"
    table = bracket_table(H, 2, degrees=[1])
    if table.entries != {((1, 1), (0, 1)): {(1, 2): Fraction(1)}}:
        return False, f"heisenberg bracket table {table.entries}"
    S = ce_algebra(F.presentations["so3"], 1)
    got = lie_bracket_constants(S)
    want = commutator_constants(_so3_basis())
    ratio = None
    for a, b, k in product(range(3), repeat=3):
        if want[a][b][k]:
            r = got[a][b][k] / want[a][b][k]
            if ratio is None:
                ratio = r
            elif r != ratio:
                return False, "so(3) constants not proportional"
        elif got[a][b][k]:
            return False, "so(3) constants have extra entries"
    if not ratio:
        return False, "so(3) constants vanish"
    return True, f"[e_a, e_b] = e_c exactly; so(3) table = {ratio} x epsilon"


# ---------------------------------------------------------------------------
# 3


def _presentation_degree(P) -> int:
    """Largest degree whose differential the presentation determines, capped at 3."""
    top = max([k for k in range(1, len(P.ranks) + 1) if P.rank(k)] or [0])
    return min(3, top, P.truncation - 1, P.max_level - 1)


def _paths_agree(P) -> Optional[str]:
    for k in range(1, _presentation_degree(P) + 1):
        for lab in range(P.rank(k)):
            a = ce_differential_direct(P, k, lab)
            b = ce_differential_via_delta(P, k, lab)
            if a != b:
                return f"degree {k} label {lab}: {a.render()} vs {b.render()}"
    return None


def c3_dual_paths(F: FixtureSet, fuzz_count: int = 100) -> Outcome:
    checked = 0
    for name, P in sorted(F.presentations.items()):
        bad = _paths_agree(P)
        if bad:
            return False, f"fixture {name}: {bad}"
        checked += 1
    for label, P in fuzz_presentations(seed=2024, count=fuzz_count, max_rank=2, top_degree=3, truncation=4):
        bad = _paths_agree(P)
        if bad:
            return False, f"fuzzed {label}: {bad}"
        checked += 1
    return True, f"{checked} presentations ({fuzz_count} fuzzed), direct == via delta"


# ---------------------------------------------------------------------------
# 4


def c4_semifree(F: FixtureSet) -> Outcome:
    cases = 0
    for n in range(1, 5):
        for ranks in product(range(3), repeat=n):
            ranks = list(ranks)
            P = linear_presentation(ranks, {}, n, max(n, 2))
            images = set()
            for seq in labeled_partitions(n, ranks):
                m = Poly.product_of([P.coordinate(b, lab) for b, lab in seq])
                r = reduce_mod_Jhat(P, Cochain(n, m))
                images.update(r.terms)
            num, rk, corank = relation_span_rank(n, ranks)
            if len(images) != corank:
                return False, f"n={n} ranks={ranks}: reduction gives {len(images)}, relations {corank}"
            if corank != free_graded_dimension(n, ranks):
                return False, f"n={n} ranks={ranks}: corank {corank} is not the free dimension"
            cases += 1
    return True, f"{cases} (n, ranks) cases: reduced dimension == relation corank"


# ---------------------------------------------------------------------------
# 5


def _random_normalized(P, rng: random.Random, level: int) -> Cochain:
    coords = P.coordinates(level)
    pool = []
    for length in range(1, P.truncation + 1):
        pool.extend(m for m in monomials_in(coords, length) if covers(m, level))
        if len(pool) > 60:
            break
    terms = {}
    for m in rng.sample(pool, min(len(pool), rng.randint(1, 3))):
        terms[m] = Fraction(rng.randint(-3, 3) or 1, rng.choice([1, 2]))
    return Cochain(level, Poly(terms, P.truncation))


def c5_dga(F: FixtureSet, pairs: int = 100) -> Outcome:
    for name, P in sorted(F.presentations.items()):
        C = ce_algebra(P, _presentation_degree(P))
        rep = check_d_squared(C, 3)
        if not rep.ok:
            return False, f"fixture {name}: d^2 {rep.failures[0]}"
        if rep.certified_degree < 3:
            return False, f"fixture {name}: d^2 certified only through {rep.certified_degree}"
    even = [(n, P) for n, P in sorted(F.presentations.items())
            if not P.is_super and P.max_level >= 3 and P.truncation >= 3]
    rng = random.Random(99)
    for t in range(pairs):
        name, P = even[t % len(even)]
        p = rng.randint(1, 2)
        q = rng.randint(1, 3 - p)
        f, g = _random_normalized(P, rng, p), _random_normalized(P, rng, q)
        fg = reduce_mod_Jhat(P, cup(P, f, g))
        gf = reduce_mod_Jhat(P, cup(P, g, f))
        if fg != gf.scale((-1) ** (p * q)):
            return False, f"{name}: ve(f cup g) != (-1)^pq ve(g cup f) at levels {p},{q}"
        if fg != reduce_mod_Jhat(P, f) * reduce_mod_Jhat(P, g):
            return False, f"{name}: ve is not multiplicative at levels {p},{q}"
    return True, f"d^2 = 0 through degree 3 on {len(F.presentations)} fixtures; {pairs} cup pairs commute"


# ---------------------------------------------------------------------------
# 6


def _complexes(rng: random.Random):
    for top in (1, 2):
        for ranks in product(range(4), repeat=top):
            for _ in range(2):
                yield list(ranks), _random_boundary(rng, list(ranks))
    for _ in range(12):
        ranks, boundary = random_complex(rng, 3, 3)
        yield ranks, boundary


def _random_boundary(rng: random.Random, ranks):
    ranks_, boundary = ranks, {}
    if len(ranks_) == 2 and ranks_[0] and ranks_[1]:
        boundary[2] = Matrix.from_dense([[rng.randint(-2, 2) for _ in range(ranks_[1])] for _ in range(ranks_[0])])
        if boundary[2].is_zero():
            del boundary[2]
    return boundary


def c6_dold_kan(F: FixtureSet, levels: int = 5) -> Outcome:
    rng = random.Random(6)
    count = 0
    for ranks, boundary in _complexes(rng):
        E = ChainComplex([0] + ranks, boundary)
        V = denormalize(E, levels)
        bad = check_simplicial_identities(V)
        if bad:
            return False, f"ranks {ranks}: {bad[0]}"
        N, _ = normalize(V)
        for k in range(1, len(ranks) + 1):
            if N.ranks[k] != E.ranks[k] or N.d(k) != E.d(k):
                return False, f"ranks {ranks}: N(K(E)) differs in degree {k}"
        Y = CochainComplex([0] + ranks, {k - 1: m.transpose() for k, m in boundary.items()})
        X = denormalize_cochain(Y, levels)
        bad = check_cosimplicial_identities(X)
        if bad:
            return False, f"ranks {ranks}: {bad[0]}"
        M, _ = normalize_cochain(X)
        for k in range(len(ranks) + 1):
            if M.ranks[k] != Y.ranks[k] or (k < len(ranks) and M.d(k) != Y.d(k)):
                return False, f"ranks {ranks}: cochain round trip differs in degree {k}"
        count += 1
    return True, f"{count} complexes through level {levels}, both variances"


# ---------------------------------------------------------------------------
# 7


def _sh_aw_defect(X) -> Optional[str]:
    from .cosimplicial import DoldKanDecomposition, Normalization, aw_pair, sh_pure

    N = Normalization(X)
    D = DoldKanDecomposition(N)
    L = X.level_cap
    for p in range(L + 1):
        for q in range(L + 1 - p):
            for i, f in enumerate(N.bases[p]):
                for j, g in enumerate(N.bases[q]):
                    u, v = aw_pair(N, p, f, q, g)
                    got = sh_pure(D, p + q, u, v)
                    if got != {(p, i, q, j): Fraction(1)}:
                        return f"sh(aw(f_{p},{i} x g_{q},{j})) = {got}"
    return None


def c7_abstract(F: FixtureSet) -> Outcome:
    from .cosimplicial import counit_check, denormalized_dga, is_infinitesimal, odd_line_identities

    for name, X in sorted(F.cosimplicial.items()):
        bad = _sh_aw_defect(X)
        if bad:
            return False, f"{name}: {bad}"
    if len(F.dgas) < 10:
        return False, f"only {len(F.dgas)} dgas in the corpus"
    for name, Y in sorted(F.dgas.items()):
        inf = is_infinitesimal(denormalized_dga(Y))
        if not inf.infinitesimal:
            return False, f"K({name}) is not infinitesimal: {inf.witness}"
        rep = counit_check(Y)
        if not rep.ok:
            return False, f"counit on {name}: {rep.messages[0]}"
    X = F.cosimplicial["odd_line"]
    if X.level_cap < 5:
        return False, "odd line fixture stops below level 5"
    bad = odd_line_identities(X)
    if bad:
        return False, f"odd line: {bad[0]}"
    return (True, f"sh o aw = id on {len(F.cosimplicial)} models; counit on {len(F.dgas)} dgas; "
                  f"odd line identities through level {X.level_cap}")


# ---------------------------------------------------------------------------
# 8


def c8_unravel(F: FixtureSet, max_n: int = 6, labels: int = 3) -> Outcome:
    count = 0
    for n in range(1, max_n + 1):
        ranks = [labels] * n
        for seq in labeled_partitions(n, ranks):
            canon, sign = unravel(seq, n)
            bcanon, bsign = brute_unravel_sign(seq, n)
            if sign != bsign or (sign and tuple(canon) != tuple(bcanon)):
                return False, f"{seq}: unravel {canon},{sign} vs brute force {bcanon},{bsign}"
            count += 1
    return True, f"{count} labeled partitions agree with brute force"


# ---------------------------------------------------------------------------
# 9


def c9_vanest(F: FixtureSet) -> Outcome:
    from .cohomology import vanest_compare

    parts = []
    for name, m in (("abelian1", 1), ("abelian2", 2)):
        rep = vanest_compare(F.presentations[name], 2, 4)
        if not rep.isomorphism_through(2):
            bad = [r for r in rep.rows if not r.isomorphism][0]
            return False, f"{name}: not an isomorphism in degree {bad.degree}, weight {bad.weight}"
        totals = rep.totals()
        got = [totals[k][0] for k in range(3)]
        if got != [1, m, comb(m, 2)]:
            return False, f"{name}: cohomology ranks {got}"
        parts.append(f"R^{m}: {got}")
    return True, "isomorphisms through degree 2; " + ", ".join(parts)


# ---------------------------------------------------------------------------
# 10


def c10_weil(F: FixtureSet) -> Outcome:
    for m in (1, 2, 3):
        P = linear_presentation([m], {}, 2, 2)
        W = weil_extension(ce_algebra(P, 1))
        for p in range(5):
            for q in range(5 - p):
                want = comb(m, p - q) * comb(m + q - 1, q) if p >= q else 0
                got = len(W.monomials(p, q))
                if got != want:
                    return False, f"m={m}: W^({p},{q}) has {got} monomials, expected {want}"
    for name in ("abelian2", "heisenberg", "affine"):
        W = weil_extension(ce_algebra(F.presentations[name], 1))
        for g in W.generators:
            x = Poly.gen(g)
            if not W.d_v(W.d_v(x)).is_zero():
                return False, f"{name}: d_v^2 != 0"
            if not (W.d_h(W.d_v(x)) + W.d_v(W.d_h(x))).is_zero():
                return False, f"{name}: d_h d_v + d_v d_h != 0"
            if not W.d_h(W.d_h(x)).is_zero():
                return False, f"{name}: d_h^2 != 0"
    return True, "bigraded counts match for m = 1, 2, 3; d_v^2 = 0 and d_h, d_v anticommute"


CRITERIA: List[Criterion] = [
    Criterion(1, "example", "abelian example", c1_abelian_example, 1.0),
    Criterion(2, "bracket", "bracket recovery", c2_brackets, 1.0),
    Criterion(3, "paths", "dual computation paths", c3_dual_paths),
    Criterion(4, "semifree", "semi-freeness certificate", c4_semifree),
    Criterion(5, "dga", "dga certificate", c5_dga),
    Criterion(6, "dold-kan", "Dold-Kan round trips", c6_dold_kan),
    Criterion(7, "abstract", "aw/sh, counit and odd line", c7_abstract),
    Criterion(8, "unravel", "unravel sign soundness", c8_unravel, 10.0),
    Criterion(9, "vanest", "desk-scale van Est", c9_vanest, 5.0),
    Criterion(10, "weil", "Weil extension", c10_weil),
]


def select(filter_text: Optional[str] = None) -> List[Criterion]:
    if not filter_text:
        return list(CRITERIA)
    f = filter_text.lower()
    return [c for c in CRITERIA if f == str(c.number) or f in c.key or f in c.title.lower()]


def run_criterion(c: Criterion, fixtures: FixtureSet) -> CriterionResult:
    start = time.perf_counter()
    try:
        ok, detail = c.run(fixtures)
    except Exception as exc:  # a crash is a failed check, reported on its line
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    secs = time.perf_counter() - start
    if ok and c.time_limit is not None and secs > c.time_limit:
        ok, detail = False, f"took {secs:.2f}s, limit {c.time_limit}s"
    return CriterionResult(c.number, c.key, c.title, ok, detail, secs)


def run_acceptance(filter_text: Optional[str] = None, fixture_dir=None,
                   echo: Optional[Callable[[str], None]] = print) -> List[CriterionResult]:
    fixtures = load_fixtures(fixture_dir)
    out = []
    for c in select(filter_text):
        r = run_criterion(c, fixtures)
        if echo:
            echo(r.line())
        out.append(r)
    return out
