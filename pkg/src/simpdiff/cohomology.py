"""Cohomology of finite graded pieces and the van Est comparison.

For a presentation whose faces are all linear, the coboundary preserves the
number of factors of a monomial, so normalized polynomial cochains split into
finite complexes indexed by that number (called the weight below).  The same
is true of the Chevalley-Eilenberg algebra, and the reduction map respects the
splitting.  Each piece is compared exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .cochains import Cochain, ce_generators, covers, delta, reduce_mod_Jhat
from .graded_poly import Generator, Monomial, Poly, apply_derivation, monomials_in
from .linalg import EchelonBasis, Matrix, Vec, nullspace, rank
from .lie import ce_algebra
from .presentation import FramedPresentation, PresentationError, linear_presentation, validate_presentation


class NonlinearInput(ValueError):
    """Raised when the comparison is asked for a presentation with nonlinear faces."""


@dataclass
class GradedPieceComplex:
    """``bases[k]`` lists basis labels in degree ``k``; ``d[k]`` maps degree k to k+1."""

    bases: List[list]
    d: Dict[int, Matrix]

    def cohomology_ranks(self) -> List[int]:
        out = []
        top = len(self.bases) - 1
        for k in range(top + 1):
            dim = len(self.bases[k])
            rk_out = rank(self.d[k]) if k in self.d else None
            rk_in = rank(self.d[k - 1]) if k - 1 in self.d else 0
            if rk_out is None:
                out.append(None)
            else:
                out.append(dim - rk_out - rk_in)
        return out


def cohomology_ranks(C: GradedPieceComplex) -> List[Optional[int]]:
    """Ranks of cohomology; None in the top degree, where no outgoing map is known."""
    return C.cohomology_ranks()


def _cochain_basis(P: FramedPresentation, level: int, weight: int) -> List[Monomial]:
    if level == 0:
        return [()] if weight == 0 else []
    return [m for m in monomials_in(P.coordinates(level), weight) if covers(m, level)]


def _ce_basis(gens: Sequence[Generator], degree: int, weight: int) -> List[Monomial]:
    if weight == 0:
        return [()] if degree == 0 else []
    return [m for m in monomials_in([g for g in gens if g.degree <= degree], weight)
            if sum(g.degree * e for g, e in m) == degree]


@dataclass
class VanEstRow:
    degree: int
    weight: int
    cochain_rank: int
    ce_rank: int
    induced_rank: int
    chain_map: bool

    @property
    def isomorphism(self) -> bool:
        return self.chain_map and self.cochain_rank == self.ce_rank == self.induced_rank


@dataclass
class VanEstReport:
    rows: List[VanEstRow] = field(default_factory=list)

    def totals(self) -> Dict[int, Tuple[int, int]]:
        out: Dict[int, Tuple[int, int]] = {}
        for r in self.rows:
            a, b = out.get(r.degree, (0, 0))
            out[r.degree] = (a + r.cochain_rank, b + r.ce_rank)
        return out

    def isomorphism_through(self, degree: int) -> bool:
        return all(r.isomorphism for r in self.rows if r.degree <= degree)


def vanest_compare(P: FramedPresentation, max_degree: int, max_weight: int) -> VanEstReport:
    """Compare normalized polynomial cochains with the CE algebra, piece by piece."""
    if not P.is_linear():
        raise NonlinearInput("van Est comparison needs a presentation with linear faces")
    report = validate_presentation(P)
    if not report.ok:
        raise PresentationError(f"invalid presentation: {report.failures[0]}")
    top = max(1, len(P.ranks))
    # weights of monomials with max_weight factors stay below this cap
    W = max(max_weight * top, max_degree + 2)
    Q = linear_presentation(P.ranks, P.boundary, W, max_degree + 2, P.parities, P.names)
    C = ce_algebra(Q, max_degree + 1)
    gens = [g for g in C.generators if g in C.differential]
    out = VanEstReport()
    for w in range(max_weight + 1):
        cb = [_cochain_basis(Q, k, w) for k in range(max_degree + 2)]
        eb = [_ce_basis(gens, k, w) for k in range(max_degree + 2)]
        cidx = [{m: i for i, m in enumerate(b)} for b in cb]
        eidx = [{m: i for i, m in enumerate(b)} for b in eb]
        dc, de, ve = {}, {}, {}
        for k in range(max_degree + 1):
            M = Matrix(len(cb[k + 1]), len(cb[k]))
            for col, m in enumerate(cb[k]):
                img = delta(Q, Cochain(k, Poly({m: 1}, W))).poly
                for mm, c in img.terms.items():
                    M.set(cidx[k + 1][mm], col, c)
            dc[k] = M
            N = Matrix(len(eb[k + 1]), len(eb[k]))
            for col, m in enumerate(eb[k]):
                img = apply_derivation(Poly({m: 1}), C.differential)
                for mm, c in img.terms.items():
                    N.set(eidx[k + 1][mm], col, c)
            de[k] = N
        for k in range(max_degree + 2):
            V = Matrix(len(eb[k]), len(cb[k]))
            for col, m in enumerate(cb[k]):
                img = reduce_mod_Jhat(Q, Cochain(k, Poly({m: 1}, W)))
                for mm, c in img.terms.items():
                    V.set(eidx[k][mm], col, c)
            ve[k] = V
        for k in range(max_degree + 1):
            chain_map = ve[k + 1] @ dc[k] == de[k] @ ve[k]
            zc = nullspace(dc[k])
            bc_rank = rank(dc[k - 1]) if k >= 1 else 0
            ze_rank = len(nullspace(de[k]))
            be = EchelonBasis()
            if k >= 1:
                for col in de[k - 1].columns():
                    be.add(col)
            be_rank = len(be)
            for z in zc:
                be.add(ve[k].apply(z))
            induced = len(be) - be_rank
            out.rows.append(VanEstRow(k, w, len(zc) - bc_rank, ze_rank - be_rank, induced, chain_map))
    return out

