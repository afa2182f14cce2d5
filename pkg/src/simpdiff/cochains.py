"""Polynomial cochains on a framed presentation.

A cochain of level ``n`` is a polynomial in the level-``n`` coordinates,
truncated at the presentation's weight cap.  ``delta``, the cup product, the
normalization retraction and the reduction onto the canonical basis of the
Chevalley-Eilenberg algebra live here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .combinatorics import classify_sequence, unravel
from .graded_poly import Generator, Monomial, Poly, mono_from_factors, mono_weight
from .presentation import FramedPresentation, PresentationError


class NotNormalized(ValueError):
    """A monomial fails to cover ``{1..n}``."""


class InsufficientTruncation(ValueError):
    """The truncation is too small for the requested computation."""


@dataclass
class Cochain:
    level: int
    poly: Poly

    def __add__(self, other: "Cochain") -> "Cochain":
        _same_level(self, other)
        return Cochain(self.level, self.poly + other.poly)

    def __sub__(self, other: "Cochain") -> "Cochain":
        _same_level(self, other)
        return Cochain(self.level, self.poly - other.poly)

    def __neg__(self) -> "Cochain":
        return Cochain(self.level, -self.poly)

    def scale(self, c) -> "Cochain":
        return Cochain(self.level, self.poly.scale(c))

    def __eq__(self, other) -> bool:
        return isinstance(other, Cochain) and self.level == other.level and self.poly == other.poly


def _same_level(a: Cochain, b: Cochain) -> None:
    if a.level != b.level:
        raise ValueError(f"cochains of levels {a.level} and {b.level}")


def ce_generator(P: FramedPresentation, degree: int, label: int) -> Generator:
    """The generator dual to ``A_degree`` with the given label."""
    par = (degree + P.parity(degree, label)) % 2
    return Generator(("xi", degree, label), degree, par, degree)


def ce_generators(P: FramedPresentation, max_degree: int) -> List[Generator]:
    return [ce_generator(P, k, lab) for k in range(1, max_degree + 1) for lab in range(P.rank(k))]


def face_pullback(P: FramedPresentation, f: Cochain, i: int) -> Cochain:
    """``f o d_i``, one level up."""
    n = f.level + 1
    return Cochain(n, P.pull_face(f.poly, n, i))


def degeneracy_pullback(P: FramedPresentation, f: Cochain, j: int) -> Cochain:
    """``f o s_j``, one level down."""
    n = f.level - 1
    if n < 0 or not 0 <= j <= n:
        raise ValueError(f"no degeneracy s{j} into level {f.level}")
    return Cochain(n, P.pull_degeneracy(f.poly, n, j))


def delta(P: FramedPresentation, f: Cochain) -> Cochain:
    """Simplicial coboundary ``sum (-1)^i f o d_i``."""
    n = f.level + 1
    acc = Poly({}, P.truncation)
    for i in range(n + 1):
        term = P.pull_face(f.poly, n, i)
        acc = acc + term if i % 2 == 0 else acc - term
    return Cochain(n, acc)


def cup(P: FramedPresentation, f: Cochain, g: Cochain) -> Cochain:
    """``f o (d_{p+1})^q  *  g o (d_0)^p`` at level ``p+q``."""
    p, q = f.level, g.level
    left = f.poly
    for t in range(q):
        left = P.pull_face(left, p + 1 + t, p + 1)
    right = g.poly
    for t in range(p):
        right = P.pull_face(right, q + 1 + t, 0)
    return Cochain(p + q, (left * right).truncate(P.truncation))


def covers(m: Monomial, n: int) -> bool:
    seen = set()
    for g, _ in m:
        seen.update(g.key[1])
    return len(seen) == n


def is_normalized(f: Cochain) -> bool:
    return all(covers(m, f.level) for m in f.poly.terms)


def normalize_retract(P: FramedPresentation, f: Cochain) -> Cochain:
    """Project onto cochains vanishing on every degenerate simplex.

    Applies ``1 - e_j`` for ``j = 1, ..., n`` where ``e_j`` pulls back along
    ``s_{j-1} d_j``.  The factor ``1 - e_j`` kills the restriction along
    ``s_{j-1}`` and can only spoil the one along ``s_j``, which the next
    factor repairs; so the increasing order ends normalized.
    """
    n = f.level
    g = f.poly
    for j in range(1, n + 1):
        down = P.pull_degeneracy(g, n - 1, j - 1)
        g = g - P.pull_face(down, n, j)
    return Cochain(n, g)


def total_order(f: Cochain) -> Optional[int]:
    """Smallest weight present, None for the zero cochain."""
    return f.poly.min_weight()


def reduce_mod_Jhat(P: FramedPresentation, f: Cochain) -> Poly:
    """Image of a normalized cochain in the Chevalley-Eilenberg algebra.

    Overlapping monomials die, partition monomials are unravelled to the
    canonical form and replaced by the matching product of generators.
    """
    n = f.level
    if n > 0 and P.truncation < n:
        raise InsufficientTruncation(f"level {n} needs truncation at least {n}")
    if n == 0:
        return Poly({(): f.poly.coefficient(())}) if f.poly.coefficient(()) else Poly({})
    out: Dict[Monomial, object] = {}
    cache = _reduction_cache(P)
    for m, c in f.poly.terms.items():
        hit = cache.get((n, m))
        if hit is None:
            hit = _reduce_monomial(P, n, m)
            cache[(n, m)] = hit
        sign, cm = hit
        if sign:
            out[cm] = out.get(cm, 0) + sign * c
    return Poly(out)


def _reduction_cache(P: FramedPresentation) -> Dict:
    cache = getattr(P, "_reduce_cache", None)
    if cache is None:
        cache = {}
        P._reduce_cache = cache
    return cache


def _reduce_monomial(P: FramedPresentation, n: int, m: Monomial) -> Tuple[int, Monomial]:
    factors = []
    for g, e in m:
        factors.extend([g] * e)
    seq = tuple((g.key[1], g.key[2]) for g in factors)
    kind = classify_sequence([b for b, _ in seq], n)
    if kind == "non-covering":
        raise NotNormalized(f"monomial {Poly({m: 1}).render()} does not cover 1..{n}")
    if kind == "overlap":
        return 0, ()
    canon, sign = unravel(seq, n, P.parity)
    if not sign:
        return 0, ()
    s, cm = mono_from_factors([ce_generator(P, len(b), lab) for b, lab in canon])
    return sign * s, cm
