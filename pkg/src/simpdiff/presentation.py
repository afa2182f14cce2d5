"""Framed presentations of formal simplicial manifolds.

At level ``n`` the coordinates are ``x_{alpha,l}``: ``alpha`` a nonempty
subset of ``{1..n}`` and ``l`` a label for a basis vector of ``A_{|alpha|}``,
the tangent complex in degree ``|alpha|``.  Only the zeroth face is data; the
other faces and all degeneracies act linearly through the Dold-Kan formulas.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .combinatorics import OrdinalMap, Subset, face_image
from .dold_kan import ChainComplex, dk_basis, dk_operator
from .graded_poly import Generator, Poly, linear_part, mono_length, mono_parity
from .linalg import Matrix


class PresentationError(ValueError):
    """Raised for malformed or inconsistent presentations."""


def coord(alpha: Subset, label: int, parity: int = 0) -> Generator:
    return Generator(("x", tuple(alpha), label), 0, parity, len(alpha))


class FramedPresentation:
    """A presentation truncated at polynomial weight ``truncation``.

    ``ranks[k-1]`` is the rank of the tangent complex in degree ``k``;
    ``boundary[k]`` (for ``k >= 2``) is the matrix of ``A_k -> A_{k-1}``.
    ``d0[n]`` maps every level ``n-1`` coordinate to its pullback along the
    zeroth face, a polynomial in level ``n`` coordinates.
    """

    def __init__(self, ranks: Sequence[int], boundary: Optional[Mapping[int, Matrix]],
                 truncation: int, d0: Mapping[int, Mapping[Generator, Poly]],
                 parities: Optional[Sequence[Sequence[int]]] = None,
                 names: Optional[Mapping[int, Sequence[str]]] = None):
        self.ranks = list(ranks)
        while self.ranks and self.ranks[-1] == 0:
            self.ranks.pop()
        if any(r < 0 for r in self.ranks):
            raise PresentationError("negative rank")
        self.boundary = dict(boundary or {})
        self.truncation = int(truncation)
        if self.truncation < 1:
            raise PresentationError("truncation must be at least 1")
        self.parities = [list(p) for p in parities] if parities is not None else None
        if self.parities is not None:
            for k, r in enumerate(self.ranks, start=1):
                if k > len(self.parities) or len(self.parities[k - 1]) != r:
                    raise PresentationError(f"parities missing for degree {k}")
        self.names = {int(k): list(v) for k, v in (names or {}).items()}
        self.d0 = {int(n): dict(m) for n, m in d0.items()}
        try:
            self.complex = ChainComplex([0] + self.ranks, dict(self.boundary))
        except ValueError as exc:
            raise PresentationError(str(exc)) from exc
        self._face_cache: Dict[Tuple[int, int], Dict[Generator, Poly]] = {}
        self._deg_cache: Dict[Tuple[int, int], Dict[Generator, Poly]] = {}
        self._coord_cache: Dict[int, List[Generator]] = {}

    # -- basic data ------------------------------------------------------------

    @property
    def max_level(self) -> int:
        return max(self.d0) if self.d0 else 1

    @property
    def top_degree(self) -> int:
        return len(self.ranks)

    @property
    def is_super(self) -> bool:
        return self.parities is not None and any(any(p) for p in self.parities)

    def rank(self, k: int) -> int:
        return self.ranks[k - 1] if 1 <= k <= len(self.ranks) else 0

    def parity(self, k: int, label: int) -> int:
        if self.parities is None:
            return 0
        return self.parities[k - 1][label] % 2

    def coordinate(self, alpha: Subset, label: int) -> Generator:
        return coord(alpha, label, self.parity(len(alpha), label))

    def coordinates(self, n: int) -> List[Generator]:
        out = self._coord_cache.get(n)
        if out is None:
            out = [self.coordinate(alpha, lab) for alpha, lab in dk_basis([0] + self.ranks, n)]
            self._coord_cache[n] = out
        return out

    def label_name(self, k: int, label: int) -> str:
        names = self.names.get(k)
        if names and label < len(names):
            return names[label]
        return str(label)

    def boundary_matrix(self, k: int) -> Matrix:
        """``A_k -> A_{k-1}``."""
        return self.complex.d(k)

    # -- structure maps as coordinate pullbacks ----------------------------------

    def _linear_pullback(self, theta: OrdinalMap) -> Dict[Generator, Poly]:
        ranks = [0] + self.ranks
        m = dk_operator(self.complex, theta)
        src = dk_basis(ranks, theta.target)
        tgt = dk_basis(ranks, theta.source)
        out: Dict[Generator, Poly] = {}
        for r, (alpha, lab) in enumerate(tgt):
            row = m.rows.get(r, {})
            terms = {((self.coordinate(*src[c]), 1),): v for c, v in row.items()}
            out[self.coordinate(alpha, lab)] = Poly(terms, self.truncation)
        return out

    def face_images(self, n: int, i: int) -> Dict[Generator, Poly]:
        """Pullback along ``d_i : G_n -> G_{n-1}`` on the coordinates of level ``n-1``."""
        if not 0 <= i <= n or n < 1:
            raise PresentationError(f"no face d{i} at level {n}")
        if i == 0:
            if n == 1:
                return {}
            if n not in self.d0:
                raise PresentationError(f"zeroth face at level {n} is not part of the presentation")
            return self.d0[n]
        key = (n, i)
        out = self._face_cache.get(key)
        if out is None:
            out = self._linear_pullback(OrdinalMap.coface(n, i))
            self._face_cache[key] = out
        return out

    def degeneracy_images(self, n: int, j: int) -> Dict[Generator, Poly]:
        """Pullback along ``s_j : G_n -> G_{n+1}`` on the coordinates of level ``n+1``."""
        key = (n, j)
        out = self._deg_cache.get(key)
        if out is None:
            out = self._linear_pullback(OrdinalMap.codegeneracy(n, j))
            self._deg_cache[key] = out
        return out

    def pull_face(self, f: Poly, n: int, i: int) -> Poly:
        """``f o d_i`` for ``f`` a function on level ``n-1``."""
        return f.substitute(self.face_images(n, i), self.truncation)

    def pull_degeneracy(self, f: Poly, n: int, j: int) -> Poly:
        """``f o s_j`` for ``f`` a function on level ``n+1``."""
        return f.substitute(self.degeneracy_images(n, j), self.truncation)

    def is_linear(self) -> bool:
        return all(mono_length(m) == 1 for polys in self.d0.values() for p in polys.values() for m in p.terms)


def linear_presentation(ranks: Sequence[int], boundary: Optional[Mapping[int, Matrix]],
                        truncation: int, max_level: int,
                        parities: Optional[Sequence[Sequence[int]]] = None,
                        names=None) -> FramedPresentation:
    """The presentation of ``K(A)`` itself: every face is linear."""
    stub = FramedPresentation(ranks, boundary, truncation, {}, parities, names)
    d0 = {n: stub._linear_pullback(OrdinalMap.coface(n, 0)) for n in range(2, max_level + 1)}
    return FramedPresentation(ranks, boundary, truncation, d0, parities, names)


# ---------------------------------------------------------------------------
# validation


@dataclass
class ValidationReport:
    failures: List[Tuple[str, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def add(self, identity: str, witness: str) -> None:
        self.failures.append((identity, witness))


def _first_difference(a: Poly, b: Poly) -> str:
    diff = a - b
    m, c = diff.sorted_terms()[0]
    return Poly({m: c}).render()


def validate_presentation(P: FramedPresentation) -> ValidationReport:
    """Check the simplicial identities that involve ``d_0``, up to truncation.

    Also checks that the linear part of ``d_0`` is the Dold-Kan one, that the
    remaining terms cover ``delta_0(alpha) u {1}``, and that parity is kept.
    """
    rep = ValidationReport()
    W = P.truncation
    L = P.max_level
    for n in range(2, L + 1):
        if n not in P.d0:
            rep.add(f"level {n}", "zeroth face missing")
    if not rep.ok:
        return rep
    for n in range(2, L + 1):
        images = P.d0[n]
        expected = P._linear_pullback(OrdinalMap.coface(n, 0))
        level_coords = set(P.coordinates(n))
        for x in P.coordinates(n - 1):
            if x not in images:
                rep.add(f"d0 at level {n}", f"no image for {x.key}")
                continue
            img = images[x]
            stray = img.generators() - level_coords
            if stray:
                rep.add(f"d0 at level {n}", f"{x.key} uses unknown coordinates {sorted(g.key for g in stray)}")
                continue
            lin = linear_part(img)
            if lin != expected[x].truncate(W):
                rep.add(f"linear part of d0 at level {n}", f"{x.key}: {_first_difference(lin, expected[x])}")
            alpha = x.key[1]
            need = set(face_image(alpha, 0)) | {1}
            for m in img.terms:
                if mono_length(m) < 2:
                    continue
                cover = set()
                for g, _ in m:
                    cover.update(g.key[1])
                if not need <= cover:
                    rep.add(f"leading term of d0 at level {n}", f"{x.key}: {Poly({m: 1}).render()}")
                    break
                if mono_parity(m) != x.parity:
                    rep.add(f"parity of d0 at level {n}", f"{x.key}: {Poly({m: 1}).render()}")
                    break
            if () in img.terms:
                rep.add(f"d0 at level {n}", f"{x.key} has a constant term")
    if not rep.ok:
        return rep

    # face identities d0 dj = d_{j-1} d0 (j >= 1), maps G_n -> G_{n-2}
    for n in range(3, L + 1):
        for j in range(1, n + 1):
            for x in P.coordinates(n - 2):
                lhs = P.pull_face(P.pull_face(Poly.gen(x, truncation=W), n - 1, 0), n, j)
                rhs = P.pull_face(P.pull_face(Poly.gen(x, truncation=W), n - 1, j - 1), n, 0)
                if lhs != rhs:
                    rep.add(f"d0 d{j} = d{j-1} d0 at level {n}", f"{x.key}: {_first_difference(lhs, rhs)}")
    # degeneracies: d0 s0 = id, d0 sj = s_{j-1} d0
    for n in range(1, L):
        for x in P.coordinates(n):
            gx = Poly.gen(x, truncation=W)
            up = P.pull_face(gx, n + 1, 0)
            if P.pull_degeneracy(up, n, 0) != gx:
                rep.add(f"d0 s0 = id at level {n}", f"{x.key}")
            for j in range(1, n + 1):
                lhs = P.pull_degeneracy(up, n, j)
                rhs = P.pull_face(P.pull_degeneracy(gx, n - 1, j - 1), n, 0) if n >= 2 else None
                if n == 1:
                    # s_0 d_0 on level 1 lands in level 0, a point
                    rhs = Poly({}, W)
                if lhs != rhs:
                    rep.add(f"d0 s{j} = s{j-1} d0 at level {n}", f"{x.key}: {_first_difference(lhs, rhs)}")
    return rep
