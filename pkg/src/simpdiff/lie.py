"""Differentiation of framed presentations to Chevalley-Eilenberg algebras.

Generators ``xi_n^j`` have degree ``n`` and stand for the top coordinate
``x_{iota_n, j}``.  The differential of ``xi_n^j`` is read off from the
zeroth face at level ``n + 1``: the linear part gives the dual of the boundary,
and every partition monomial contributes after unravelling to canonical form.

Bracket convention: the bracket constants are ``BRACKET_SIGN`` times the
coefficients of the differential, i.e. ``d xi^k = - sum_{a<b} [e_a, e_b]^k
xi^a xi^b`` for a Lie algebra.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from .cochains import (Cochain, InsufficientTruncation, NotNormalized, ce_generator, delta,
                       reduce_mod_Jhat)
from .combinatorics import classify_sequence, unravel
from .graded_poly import (Generator, Monomial, Poly, apply_derivation, mono_from_factors,
                          monomials_by)
from .presentation import FramedPresentation, PresentationError, coord

BRACKET_SIGN = -1


def _check_level(P: FramedPresentation, n: int) -> None:
    if n < 1:
        raise ValueError("generator degrees start at 1")
    if P.truncation < n + 1:
        raise InsufficientTruncation(
            f"the differential in degree {n} needs truncation at least {n + 1}, got {P.truncation}")
    if n + 1 > P.max_level or (n + 1) not in P.d0:
        raise PresentationError(f"the differential in degree {n} needs the zeroth face at level {n + 1}")


def ce_differential_direct(P: FramedPresentation, n: int, j: int) -> Poly:
    """``d xi_n^j`` straight from the zeroth face of the top coordinate."""
    _check_level(P, n)
    top = P.coordinate(tuple(range(1, n + 1)), j)
    image = P.d0[n + 1][top]
    lead = P.coordinate(tuple(range(2, n + 2)), j)
    out: Dict[Monomial, Fraction] = {}
    for m, c in image.terms.items():
        if m == ((lead, 1),):
            continue
        factors = []
        for g, e in m:
            factors.extend([g] * e)
        seq = tuple((g.key[1], g.key[2]) for g in factors)
        kind = classify_sequence([b for b, _ in seq], n + 1)
        if kind == "non-covering":
            raise NotNormalized(f"zeroth face term {Poly({m: 1}).render()} does not cover 1..{n + 1}")
        if kind == "overlap":
            continue
        canon, sign = unravel(seq, n + 1, P.parity)
        if not sign:
            continue
        # multilinear coefficient: partition monomials are square free
        coeff = Poly({m: c}).multilinear_coefficient(m)
        s, cm = mono_from_factors([ce_generator(P, len(b), lab) for b, lab in canon])
        if s:
            out[cm] = out.get(cm, 0) + sign * s * coeff
    return Poly(out)


def ce_differential_via_delta(P: FramedPresentation, n: int, j: int) -> Poly:
    """``d xi_n^j`` as the reduction of the full coboundary of the top coordinate."""
    _check_level(P, n)
    top = P.coordinate(tuple(range(1, n + 1)), j)
    return reduce_mod_Jhat(P, delta(P, Cochain(n, Poly.gen(top, truncation=P.truncation))))


@dataclass
class CEAlgebra:
    """Free graded-commutative algebra with a differential on generators."""

    generators: List[Generator]
    differential: Dict[Generator, Poly]
    names: Dict[Generator, str] = field(default_factory=dict)

    def name(self, g: Generator) -> str:
        if g in self.names:
            return self.names[g]
        key = g.key
        if key[0] in ("xi", "dxi"):
            return f"{key[0]}{key[1]}_{key[2]}"
        return "_".join(map(str, key))

    def d(self, p: Poly) -> Poly:
        missing = [g for g in p.generators() if g not in self.differential]
        if missing:
            raise KeyError(f"no differential known for {self.name(missing[0])}")
        return apply_derivation(p, self.differential)

    def render(self, p: Poly) -> str:
        return p.render(self.name)

    def degree_generators(self, n: int) -> List[Generator]:
        return [g for g in self.generators if g.degree == n]


def _ce_names(P: FramedPresentation, gens: Sequence[Generator]) -> Dict[Generator, str]:
    out = {}
    for g in gens:
        _, k, lab = g.key
        if P.names.get(k):
            out[g] = f"xi_{P.label_name(k, lab)}"
    return out


def ce_algebra(P: FramedPresentation, max_degree: int, method: str = "direct") -> CEAlgebra:
    """Generators in degrees ``1..max_degree + 1`` with differentials through ``max_degree``."""
    if method not in ("direct", "delta"):
        raise ValueError(f"unknown method {method!r}")
    fn = ce_differential_direct if method == "direct" else ce_differential_via_delta
    gens = [ce_generator(P, k, lab) for k in range(1, max_degree + 2) for lab in range(P.rank(k))]
    diff = {}
    for g in gens:
        k, lab = g.key[1], g.key[2]
        if k <= max_degree:
            diff[g] = fn(P, k, lab)
    # generators above the top degree of the tangent complex have zero rank
    return CEAlgebra(gens, diff, _ce_names(P, gens))


def ce_algebra_parallel(P: FramedPresentation, max_degree: int, threads: int = 1) -> CEAlgebra:
    """Same as :func:`ce_algebra` (direct path) with generators spread over threads."""
    if threads <= 1:
        return ce_algebra(P, max_degree)
    from concurrent.futures import ThreadPoolExecutor

    gens = [ce_generator(P, k, lab) for k in range(1, max_degree + 2) for lab in range(P.rank(k))]
    todo = [g for g in gens if g.key[1] <= max_degree]
    with ThreadPoolExecutor(max_workers=threads) as ex:
        results = list(ex.map(lambda g: ce_differential_direct(P, g.key[1], g.key[2]), todo))
    return CEAlgebra(gens, dict(zip(todo, results)), _ce_names(P, gens))


@dataclass
class DSquaredReport:
    certified_degree: int
    failures: List[Tuple[str, str]]
    skipped: List[str]

    @property
    def ok(self) -> bool:
        return not self.failures


def check_d_squared(C: CEAlgebra, up_to_degree: int) -> DSquaredReport:
    """Verify ``d(d m) = 0`` on every monomial of degree at most ``up_to_degree``.

    A monomial is checkable when the differentials of its generators, and of
    the generators appearing in those, are all known.
    """
    known = set(C.differential)
    checkable, skipped = [], []
    for g in C.generators:
        if g.degree > up_to_degree:
            continue
        if g in known and C.differential[g].generators() <= known:
            checkable.append(g)
        else:
            skipped.append(g)
    failures = []
    for deg in range(1, up_to_degree + 1):
        for m in monomials_by(checkable, lambda g: g.degree, deg):
            p = Poly({m: 1})
            dd = C.d(C.d(p))
            if not dd.is_zero():
                failures.append((C.render(p), C.render(dd)))
    certified = min([g.degree for g in skipped], default=up_to_degree + 1) - 1
    return DSquaredReport(certified, failures, [C.name(g) for g in skipped])


# ---------------------------------------------------------------------------
# brackets


@dataclass
class BracketTable:
    """``entries[(sizes, labels)][(n, j)]`` = bracket coefficient into ``A_n``."""

    arity: int
    entries: Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], Dict[Tuple[int, int], Fraction]]
    sign: int = BRACKET_SIGN


def bracket_table(C: CEAlgebra, arity: int, degrees: Optional[Sequence[int]] = None) -> BracketTable:
    """Collect the arity-``s`` components of the differential.

    ``degrees`` restricts the degrees ``n`` of the targets ``xi_n``.
    """
    entries: Dict = {}
    for g, dg in C.differential.items():
        n, j = g.key[1], g.key[2]
        if degrees is not None and n not in degrees:
            continue
        for m, c in dg.terms.items():
            factors = []
            for h, e in m:
                factors.extend([h] * e)
            if len(factors) != arity:
                continue
            sizes = tuple(h.key[1] for h in factors)
            labels = tuple(h.key[2] for h in factors)
            entries.setdefault((sizes, labels), {})[(n, j)] = BRACKET_SIGN * c
    return BracketTable(arity, entries)


def lie_bracket_constants(C: CEAlgebra) -> List[List[List[Fraction]]]:
    """``c[a][b][k]`` with ``[e_a, e_b] = sum_k c[a][b][k] e_k`` on degree one."""
    deg1 = sorted(C.degree_generators(1), key=lambda g: g.key)
    m = len(deg1)
    out = [[[Fraction(0)] * m for _ in range(m)] for _ in range(m)]
    table = bracket_table(C, 2, degrees=[1])
    for (sizes, labels), targets in table.entries.items():
        if sizes != (1, 1):
            continue
        a, b = labels
        for (_, k), c in targets.items():
            out[a][b][k] += c
            out[b][a][k] -= c
    return out


# ---------------------------------------------------------------------------
# gluing maps defined on coordinate subspaces


def inclusion_exclusion_extend(partials: Sequence[Sequence[Poly]],
                               kept: Sequence[set], ambient: Sequence[Generator]) -> List[Poly]:
    """Glue polynomial maps ``g_j`` defined on coordinate subspaces ``S_j``.

    ``kept[j]`` is the set of coordinates spanning ``S_j`` (the projection onto
    it zeroes the others, so projections commute).  Each ``g_j`` is a tuple of
    polynomials in those coordinates.  Returns
    ``sum_{alpha} (-1)^{|alpha|+1} g_alpha o pi_alpha`` after checking that the
    pieces agree on pairwise intersections.
    """
    k = len(partials)
    if k != len(kept):
        raise ValueError("one subspace per partial map")
    ambient = list(ambient)
    for j in range(k):
        if not all(p.generators() <= kept[j] for p in partials[j]):
            raise ValueError(f"map {j} uses coordinates outside its subspace")

    def restrict(poly: Poly, keep: set) -> Poly:
        return poly.filter(lambda m: all(g in keep for g, _ in m))

    for a, b in combinations(range(k), 2):
        inter = kept[a] & kept[b]
        for pa, pb in zip(partials[a], partials[b]):
            if restrict(pa, inter) != restrict(pb, inter):
                raise ValueError(f"maps {a} and {b} disagree on their intersection")
    width = len(partials[0]) if partials else 0
    out = [Poly({}) for _ in range(width)]
    for size in range(1, k + 1):
        for alpha in combinations(range(k), size):
            inter = set(ambient)
            for j in alpha:
                inter &= kept[j]
            sign = 1 if size % 2 else -1
            base = partials[alpha[0]]
            for t in range(width):
                out[t] = out[t] + restrict(base[t], inter).scale(sign)
    return out


# ---------------------------------------------------------------------------
# Weil algebra


@dataclass
class WeilAlgebra:
    """Generators ``xi`` (bidegree ``(n, 0)``) and ``dxi`` (bidegree ``(n, 1)``)."""

    base: CEAlgebra
    xi: List[Generator]
    dxi: Dict[Generator, Generator]
    dh_images: Dict[Generator, Poly]
    dv_images: Dict[Generator, Poly]

    @property
    def generators(self) -> List[Generator]:
        return list(self.xi) + [self.dxi[g] for g in self.xi]

    def bidegree(self, g: Generator) -> Tuple[int, int]:
        if g.key[0] == "dxi":
            return (g.key[1], 1)
        return (g.key[1], 0)

    def d_h(self, p: Poly) -> Poly:
        return apply_derivation(p, self.dh_images)

    def d_v(self, p: Poly) -> Poly:
        return apply_derivation(p, self.dv_images)

    def monomials(self, p: int, q: int) -> List[Monomial]:
        """Basis monomials of bidegree ``(p, q)``."""
        out = []
        for m in monomials_by(self.generators, lambda g: sum(self.bidegree(g)), p + q):
            bp = sum(self.bidegree(g)[0] * e for g, e in m)
            bq = sum(self.bidegree(g)[1] * e for g, e in m)
            if (bp, bq) == (p, q):
                out.append(m)
        return out


def weil_extension(C: CEAlgebra) -> WeilAlgebra:
    """Adjoin ``d_v``-partners: ``d_v xi = dxi`` and ``d_h dxi = -d_v(d_h xi)``."""
    xi = [g for g in C.generators if g in C.differential]
    dxi = {}
    for g in xi:
        _, n, lab = g.key
        dxi[g] = Generator(("dxi", n, lab), n + 1, (g.parity + 1) % 2, n)
    dv = {g: Poly.gen(dxi[g]) for g in xi}
    for g in xi:
        dv[dxi[g]] = Poly({})
    dh = {g: C.differential[g] for g in xi}
    # generators of dxi that fall outside the computed range have no partner
    for g in xi:
        image = C.differential[g]
        if not image.generators() <= set(xi):
            raise ValueError(f"differential of {C.name(g)} leaves the computed generators")
        dh[dxi[g]] = -apply_derivation(image, dv)
    names = dict(C.names)
    for g in xi:
        names[dxi[g]] = "d" + C.name(g)
    base = CEAlgebra(xi + [dxi[g] for g in xi], dict(C.differential), names)
    return WeilAlgebra(base, xi, dxi, dh, dv)
