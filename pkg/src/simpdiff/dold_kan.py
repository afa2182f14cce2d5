"""Dold-Kan denormalization and normalization, both variances.

Level ``n`` of ``K(E)`` has basis ``(alpha, label)`` where ``alpha`` runs over
subsets of ``{1..n}`` (including the empty one) and ``label`` over a basis of
``E_{|alpha|}``.  The same indexing is used for the cosimplicial
denormalization ``Y_K`` of a cochain complex ``Y``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from .combinatorics import OrdinalMap, dk_action, face_image, degeneracy_image, Subset
from .linalg import Matrix, Vec, nullspace, solve, vec_iadd

BasisElt = Tuple[Subset, int]


def dk_basis(ranks: Sequence[int], n: int) -> List[BasisElt]:
    """Basis of level ``n``: ``ranks[k]`` is the rank in degree ``k``."""
    out = []
    for k in range(0, min(n, len(ranks) - 1) + 1):
        if ranks[k] == 0:
            continue
        for alpha in combinations(range(1, n + 1), k):
            for lab in range(ranks[k]):
                out.append((alpha, lab))
    return out


def dk_index(ranks: Sequence[int], n: int) -> Dict[BasisElt, int]:
    return {b: i for i, b in enumerate(dk_basis(ranks, n))}


def _matrix_shape_ok(m: Matrix, rows: int, cols: int, what: str) -> None:
    if m.shape != (rows, cols):
        raise ValueError(f"{what} has shape {m.shape}, expected {(rows, cols)}")


@dataclass
class ChainComplex:
    """Nonnegatively graded chain complex of finite rank.

    ``boundary[k]`` is the matrix of ``E_k -> E_{k-1}`` (rows index ``E_{k-1}``).
    Missing boundaries are zero.
    """

    ranks: List[int]
    boundary: Dict[int, Matrix] = field(default_factory=dict)

    def __post_init__(self):
        for k, m in self.boundary.items():
            if not 1 <= k < len(self.ranks):
                raise ValueError(f"boundary in degree {k} outside the complex")
            _matrix_shape_ok(m, self.ranks[k - 1], self.ranks[k], f"boundary {k}")
        for k in range(2, len(self.ranks)):
            if k in self.boundary and k - 1 in self.boundary:
                if not (self.boundary[k - 1] @ self.boundary[k]).is_zero():
                    raise ValueError(f"boundary does not square to zero in degree {k}")

    def d(self, k: int) -> Matrix:
        if k in self.boundary:
            return self.boundary[k]
        lo = self.ranks[k - 1] if 0 <= k - 1 < len(self.ranks) else 0
        hi = self.ranks[k] if 0 <= k < len(self.ranks) else 0
        return Matrix(lo, hi)

    @property
    def top(self) -> int:
        return len(self.ranks) - 1


@dataclass
class CochainComplex:
    """Nonnegatively graded cochain complex; ``differential[k] : Y^k -> Y^{k+1}``."""

    ranks: List[int]
    differential: Dict[int, Matrix] = field(default_factory=dict)

    def __post_init__(self):
        for k, m in self.differential.items():
            if not 0 <= k < len(self.ranks) - 1:
                raise ValueError(f"differential in degree {k} outside the complex")
            _matrix_shape_ok(m, self.ranks[k + 1], self.ranks[k], f"differential {k}")
        for k in range(len(self.ranks) - 2):
            if k in self.differential and k + 1 in self.differential:
                if not (self.differential[k + 1] @ self.differential[k]).is_zero():
                    raise ValueError(f"differential does not square to zero in degree {k}")

    def d(self, k: int) -> Matrix:
        if k in self.differential:
            return self.differential[k]
        src = self.ranks[k] if 0 <= k < len(self.ranks) else 0
        tgt = self.ranks[k + 1] if 0 <= k + 1 < len(self.ranks) else 0
        return Matrix(tgt, src)


# ---------------------------------------------------------------------------
# simplicial side


def dk_operator(E: ChainComplex, theta: OrdinalMap) -> Matrix:
    """Matrix of ``theta^* : K(E)_n -> K(E)_m`` for ``theta : [m] -> [n]``."""
    src = dk_basis(E.ranks, theta.target)
    tgt_index = dk_index(E.ranks, theta.source)
    out = Matrix(len(tgt_index), len(src))
    for col, (alpha, lab) in enumerate(src):
        act = dk_action(theta, alpha)
        if act is None:
            continue
        kind, beta = act
        if kind == "id":
            out.set(tgt_index[(beta, lab)], col, 1)
        else:
            k = len(alpha)
            bd = E.d(k)
            for row_lab, c in bd.column(lab).items():
                key = (beta, row_lab)
                out.set(tgt_index[key], col, out.get(tgt_index[key], col) + c)
    return out


def dk_face_matrix(E: ChainComplex, n: int, i: int) -> Matrix:
    """``d_i : K(E)_n -> K(E)_{n-1}``."""
    return dk_operator(E, OrdinalMap.coface(n, i))


def dk_degeneracy_matrix(E: ChainComplex, n: int, j: int) -> Matrix:
    """``s_j : K(E)_n -> K(E)_{n+1}``."""
    return dk_operator(E, OrdinalMap.codegeneracy(n, j))


@dataclass
class SimplicialVectorSpace:
    """Finite truncation: ``faces[n][i]`` and ``degeneracies[n][j]`` leave level n."""

    dims: List[int]
    faces: Dict[int, List[Matrix]]
    degeneracies: Dict[int, List[Matrix]]

    @property
    def top(self) -> int:
        return len(self.dims) - 1


def denormalize(E: ChainComplex, max_level: int) -> SimplicialVectorSpace:
    dims = [len(dk_basis(E.ranks, n)) for n in range(max_level + 1)]
    faces = {n: [dk_face_matrix(E, n, i) for i in range(n + 1)] for n in range(1, max_level + 1)}
    degs = {n: [dk_degeneracy_matrix(E, n, j) for j in range(n + 1)] for n in range(max_level)}
    return SimplicialVectorSpace(dims, faces, degs)


def check_simplicial_identities(V: SimplicialVectorSpace) -> List[str]:
    """Return a list of violated identities (empty when all hold)."""
    bad = []
    L = V.top
    F, S = V.faces, V.degeneracies
    for n in range(2, L + 1):
        for j in range(1, n + 1):
            for i in range(j):
                if F[n - 1][i] @ F[n][j] != F[n - 1][j - 1] @ F[n][i]:
                    bad.append(f"d{i}d{j}=d{j-1}d{i} at level {n}")
    for n in range(0, L - 1):
        for j in range(n + 1):
            for i in range(j + 1):
                if S[n + 1][i] @ S[n][j] != S[n + 1][j + 1] @ S[n][i]:
                    bad.append(f"s{i}s{j}=s{j+1}s{i} at level {n}")
    for n in range(0, L):
        ident = Matrix.identity(V.dims[n])
        for j in range(n + 1):
            for i in range(n + 2):
                lhs = F[n + 1][i] @ S[n][j]
                if i < j:
                    rhs = S[n - 1][j - 1] @ F[n][i]
                elif i in (j, j + 1):
                    rhs = ident
                else:
                    rhs = S[n - 1][j] @ F[n][i - 1]
                if lhs != rhs:
                    bad.append(f"d{i}s{j} at level {n}")
    return bad


def normalize(V: SimplicialVectorSpace) -> Tuple[ChainComplex, Dict[int, List[Vec]]]:
    """Moore complex: kernels of the positive faces, boundary ``d_0``.

    Returns the complex together with the chosen kernel basis per level.
    """
    bases: Dict[int, List[Vec]] = {0: [{i: Fraction(1)} for i in range(V.dims[0])]}
    for n in range(1, V.top + 1):
        rows = {}
        off = 0
        for i in range(1, n + 1):
            for r, row in V.faces[n][i].rows.items():
                rows[off + r] = row
            off += V.dims[n - 1]
        stacked = Matrix(off, V.dims[n], rows)
        bases[n] = nullspace(stacked)
    ranks = [len(bases[n]) for n in range(V.top + 1)]
    boundary = {}
    for n in range(1, V.top + 1):
        # express d_0 of each basis vector in the basis of level n-1
        tgt = Matrix.from_columns(V.dims[n - 1], bases[n - 1])
        m = Matrix(ranks[n - 1], ranks[n])
        for col, v in enumerate(bases[n]):
            img = V.faces[n][0].apply(v)
            coeffs = solve(tgt, img)
            if coeffs is None:
                raise ValueError("d0 does not preserve the normalized subspace")
            for r, c in coeffs.items():
                m.set(r, col, c)
        boundary[n] = m
    return ChainComplex(ranks, boundary), bases


# ---------------------------------------------------------------------------
# cosimplicial side


@dataclass
class CosimplicialVectorSpace:
    """``cofaces[n][i] : X^{n-1} -> X^n`` and ``codegeneracies[n][j] : X^{n+1} -> X^n``."""

    dims: List[int]
    cofaces: Dict[int, List[Matrix]]
    codegeneracies: Dict[int, List[Matrix]]

    @property
    def top(self) -> int:
        return len(self.dims) - 1


def codk_coface_matrix(Y: CochainComplex, n: int, i: int) -> Matrix:
    """``d^i : Y_K^{n-1} -> Y_K^n``."""
    src = dk_basis(Y.ranks, n - 1)
    idx = dk_index(Y.ranks, n)
    out = Matrix(len(idx), len(src))
    for col, (alpha, lab) in enumerate(src):
        if i == 0:
            out.set(idx[(face_image(alpha, 1), lab)], col, 1)
            k = len(alpha)
            beta = (1,) + face_image(alpha, 1)
            if k + 1 < len(Y.ranks):
                for r, c in Y.d(k).column(lab).items():
                    out.set(idx[(beta, r)], col, c)
        else:
            out.set(idx[(face_image(alpha, i), lab)], col, 1)
            if i in alpha:
                key = idx[(face_image(alpha, i + 1), lab)]
                out.set(key, col, out.get(key, col) + 1)
    return out


def codk_codegeneracy_matrix(Y: CochainComplex, n: int, j: int) -> Matrix:
    """``s^j : Y_K^{n+1} -> Y_K^n``."""
    src = dk_basis(Y.ranks, n + 1)
    idx = dk_index(Y.ranks, n)
    out = Matrix(len(idx), len(src))
    for col, (alpha, lab) in enumerate(src):
        if j + 1 in alpha:
            continue
        out.set(idx[(degeneracy_image(alpha, j + 1), lab)], col, 1)
    return out


def denormalize_cochain(Y: CochainComplex, max_level: int) -> CosimplicialVectorSpace:
    dims = [len(dk_basis(Y.ranks, n)) for n in range(max_level + 1)]
    cofaces = {n: [codk_coface_matrix(Y, n, i) for i in range(n + 1)] for n in range(1, max_level + 1)}
    codegs = {n: [codk_codegeneracy_matrix(Y, n, j) for j in range(n + 1)] for n in range(max_level)}
    return CosimplicialVectorSpace(dims, cofaces, codegs)


def check_cosimplicial_identities(X) -> List[str]:
    """Violated cosimplicial identities of anything with ``dims/cofaces/codegeneracies``."""
    bad = []
    L = len(X.dims) - 1
    D, S = X.cofaces, X.codegeneracies
    for n in range(2, L + 1):
        # d^j d^i = d^i d^{j-1} for i < j
        for j in range(1, n + 1):
            for i in range(j):
                if D[n][j] @ D[n - 1][i] != D[n][i] @ D[n - 1][j - 1]:
                    bad.append(f"d^{j}d^{i}=d^{i}d^{j-1} at level {n}")
    for n in range(0, L - 1):
        # s^j s^i = s^i s^{j+1} for i <= j, maps X^{n+2} -> X^n
        for j in range(n + 1):
            for i in range(j + 1):
                if S[n][j] @ S[n + 1][i] != S[n][i] @ S[n + 1][j + 1]:
                    bad.append(f"s^{j}s^{i}=s^{i}s^{j+1} at level {n}")
    for n in range(0, L):
        ident = Matrix.identity(X.dims[n])
        for j in range(n + 1):
            for i in range(n + 2):
                lhs = S[n][j] @ D[n + 1][i]
                if i < j:
                    rhs = D[n][i] @ S[n - 1][j - 1]
                elif i in (j, j + 1):
                    rhs = ident
                else:
                    rhs = D[n][i - 1] @ S[n - 1][j]
                if lhs != rhs:
                    bad.append(f"s^{j}d^{i} at level {n}")
    return bad


def normalize_cochain(X) -> Tuple[CochainComplex, Dict[int, List[Vec]]]:
    """Normalized cochains: joint kernel of the codegeneracies, ``d = sum (-1)^i d^i``."""
    L = len(X.dims) - 1
    bases: Dict[int, List[Vec]] = {}
    for n in range(L + 1):
        if n == 0:
            bases[0] = [{i: Fraction(1)} for i in range(X.dims[0])]
            continue
        rows = {}
        off = 0
        for j in range(n):
            for r, row in X.codegeneracies[n - 1][j].rows.items():
                rows[off + r] = row
            off += X.dims[n - 1]
        bases[n] = nullspace(Matrix(off, X.dims[n], rows))
    ranks = [len(bases[n]) for n in range(L + 1)]
    diff = {}
    for n in range(L):
        total = Matrix(X.dims[n + 1], X.dims[n])
        for i in range(n + 2):
            total = total + X.cofaces[n + 1][i].scale((-1) ** i)
        tgt = Matrix.from_columns(X.dims[n + 1], bases[n + 1])
        m = Matrix(ranks[n + 1], ranks[n])
        for col, v in enumerate(bases[n]):
            coeffs = solve(tgt, total.apply(v))
            if coeffs is None:
                raise ValueError("differential leaves the normalized subspace")
            for r, c in coeffs.items():
                m.set(r, col, c)
        diff[n] = m
    return CochainComplex(ranks, diff), bases


# ---------------------------------------------------------------------------
# Alexander-Whitney, shuffle, overlapping tensors

Tensor = Dict[Tuple[int, int], Fraction]


def shuffle_sign(alpha: Subset, beta: Subset) -> int:
    """Sign of ``e_alpha ^ e_beta = sign * e_{alpha u beta}`` (0 on overlap)."""
    if set(alpha) & set(beta):
        return 0
    inv = sum(1 for a in alpha for b in beta if a > b)
    return -1 if inv % 2 else 1


def tensor_of(u: Vec, v: Vec) -> Tensor:
    return {(i, j): a * b for i, a in u.items() for j, b in v.items()}


def apply_power(mats: Dict[int, List[Matrix]], start_level: int, index: int, times: int, v: Vec) -> Vec:
    """Apply the coface with fixed ``index`` ``times`` times starting at ``start_level``."""
    for t in range(times):
        v = mats[start_level + 1 + t][index].apply(v)
    return v


def aw(X, p: int, f: Vec, q: int, g: Vec) -> Tensor:
    """Alexander-Whitney: ``(d^{p+1})^q f (x) (d^0)^p g`` in ``X^{p+q} (x) X^{p+q}``."""
    left = f
    for t in range(q):
        left = X.cofaces[p + 1 + t][p + 1].apply(left)
    right = g
    for t in range(p):
        right = X.cofaces[q + 1 + t][0].apply(right)
    return tensor_of(left, right)


def sh_dk(ranks: Sequence[int], n: int, t: Tensor) -> Dict[Tuple[Tuple[int, int], Tuple[int, int]], Fraction]:
    """Shuffle map on a tensor written in the level-``n`` Dold-Kan basis.

    The result is keyed by ``((deg, label), (deg, label))`` pairs of normalized
    basis elements.  Overlapping and non-covering components die.
    """
    basis = dk_basis(ranks, n)
    out: Dict = {}
    full = set(range(1, n + 1))
    for (i, j), c in t.items():
        (a, la), (b, lb) = basis[i], basis[j]
        if set(a) | set(b) != full:
            continue
        s = shuffle_sign(a, b)
        if not s:
            continue
        key = ((len(a), la), (len(b), lb))
        nc = out.get(key, 0) + s * c
        if nc:
            out[key] = nc
        else:
            out.pop(key, None)
    return out


def overlapping_basis(ranks: Sequence[int], n: int) -> List[Tuple[BasisElt, BasisElt]]:
    """Pairs of level-``n`` basis elements whose subsets cover with overlap."""
    basis = dk_basis(ranks, n)
    full = set(range(1, n + 1))
    out = []
    for a in basis:
        for b in basis:
            sa, sb = set(a[0]), set(b[0])
            if sa | sb == full and sa & sb:
                out.append((a, b))
    return out
