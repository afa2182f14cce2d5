"""Abstract differentiation of finite cosimplicial algebras.

A :class:`FiniteCosimplicialAlgebra` is truncated at ``level_cap``: it lists
the dimension of each level, a basis product, and the coface and codegeneracy
matrices.  :func:`abstract_diff` normalizes it, quotients by the differential
ideal generated by squares of the degeneracy ideals and returns the resulting
dg algebra as a :class:`DGAlgebra`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .combinatorics import Subset, degeneracy_image
from .dold_kan import (CochainComplex, check_cosimplicial_identities, denormalize_cochain, dk_basis,
                       shuffle_sign)
from .graded_poly import Generator, Monomial, Poly, apply_derivation, mono_mul, mono_weight, monomials_by
from .linalg import EchelonBasis, Matrix, Vec, inverse, nullspace, nullspace_with_free, vec_iadd, vec_scale


class CosimplicialError(ValueError):
    pass


BasisProduct = Callable[[int, int, int], Vec]


class FiniteCosimplicialAlgebra:
    """Levels ``0..level_cap`` of a cosimplicial algebra.

    ``cofaces[n][i] : X^{n-1} -> X^n`` for ``n >= 1``; ``codegeneracies[n][j] :
    X^{n+1} -> X^n`` for ``n < level_cap``.  ``basis_product(n, i, j)`` is the
    product of basis vectors ``i`` and ``j`` of level ``n``.
    """

    def __init__(self, dims: Sequence[int], basis_product: BasisProduct,
                 cofaces: Dict[int, List[Matrix]], codegeneracies: Dict[int, List[Matrix]],
                 parities: Optional[Sequence[Sequence[int]]] = None, name: str = ""):
        self.dims = list(dims)
        self._product = basis_product
        self._cache: Dict[Tuple[int, int, int], Vec] = {}
        self.cofaces = cofaces
        self.codegeneracies = codegeneracies
        self.parities = parities
        self.name = name
        L = self.level_cap
        for n in range(1, L + 1):
            if len(cofaces.get(n, [])) != n + 1:
                raise CosimplicialError(f"level {n} needs {n + 1} cofaces")
            for m in cofaces[n]:
                if m.shape != (self.dims[n], self.dims[n - 1]):
                    raise CosimplicialError(f"coface into level {n} has shape {m.shape}")
        for n in range(L):
            if len(codegeneracies.get(n, [])) != n + 1:
                raise CosimplicialError(f"level {n} needs {n + 1} codegeneracies")
            for m in codegeneracies[n]:
                if m.shape != (self.dims[n], self.dims[n + 1]):
                    raise CosimplicialError(f"codegeneracy into level {n} has shape {m.shape}")

    @property
    def level_cap(self) -> int:
        return len(self.dims) - 1

    def basis_mul(self, n: int, i: int, j: int) -> Vec:
        key = (n, i, j)
        v = self._cache.get(key)
        if v is None:
            v = self._product(n, i, j)
            self._cache[key] = v
        return v

    def mul(self, n: int, u: Vec, v: Vec) -> Vec:
        out: Vec = {}
        for i, a in u.items():
            for j, b in v.items():
                vec_iadd(out, self.basis_mul(n, i, j), a * b)
        return out

    def coface(self, n: int, i: int, v: Vec) -> Vec:
        return self.cofaces[n][i].apply(v)

    def codegeneracy(self, n: int, j: int, v: Vec) -> Vec:
        return self.codegeneracies[n][j].apply(v)


def validate_cosimplicial(X: FiniteCosimplicialAlgebra, sample: Optional[int] = None,
                          rng: Optional[random.Random] = None) -> List[str]:
    """Cosimplicial identities plus multiplicativity of the structure maps.

    With ``sample`` only that many random basis pairs per level are checked.
    """
    bad = check_cosimplicial_identities(X)
    rng = rng or random.Random(0)
    for n in range(X.level_cap + 1):
        pairs = [(i, j) for i in range(X.dims[n]) for j in range(X.dims[n])]
        if sample is not None and len(pairs) > sample:
            pairs = rng.sample(pairs, sample)
        maps = []
        if n < X.level_cap:
            maps += [("coface", n + 1, i, X.cofaces[n + 1][i]) for i in range(n + 2)]
        if n >= 1:
            maps += [("codegeneracy", n - 1, j, X.codegeneracies[n - 1][j]) for j in range(n)]
        for kind, tgt, idx, M in maps:
            for i, j in pairs:
                lhs = M.apply(X.basis_mul(n, i, j))
                rhs = X.mul(tgt, M.column(i), M.column(j))
                if lhs != rhs:
                    bad.append(f"{kind} {idx} from level {n} is not multiplicative on ({i},{j})")
                    break
    return bad


# ---------------------------------------------------------------------------
# dg algebras


@dataclass
class DGAlgebra:
    """A dg algebra truncated above ``cap``: degree ``p`` has ``dims[p]`` basis vectors."""

    dims: List[int]
    product: Dict[Tuple[int, int, int, int], Vec]
    differential: Dict[int, Matrix]
    names: Dict[int, List[str]] = field(default_factory=dict)

    @property
    def cap(self) -> int:
        return len(self.dims) - 1

    def mul(self, p: int, u: Vec, q: int, v: Vec) -> Vec:
        out: Vec = {}
        if p + q > self.cap:
            return out
        for i, a in u.items():
            for j, b in v.items():
                w = self.product.get((p, i, q, j))
                if w:
                    vec_iadd(out, w, a * b)
        return out

    def d(self, p: int, v: Vec) -> Vec:
        if p >= self.cap:
            return {}
        return self.differential[p].apply(v)

    def check(self) -> List[str]:
        """d^2 = 0, Leibniz and associativity within the cap."""
        bad = []
        for p in range(self.cap - 1):
            if not (self.differential[p + 1] @ self.differential[p]).is_zero():
                bad.append(f"d^2 != 0 in degree {p}")
        unit = lambda p, i: {i: Fraction(1)}
        for p in range(self.cap + 1):
            for q in range(self.cap + 1 - p):
                for i in range(self.dims[p]):
                    for j in range(self.dims[q]):
                        a, b = unit(p, i), unit(q, j)
                        if p + q + 1 <= self.cap:
                            lhs = self.d(p + q, self.mul(p, a, q, b))
                            rhs = self.mul(p + 1, self.d(p, a), q, b)
                            vec_iadd(rhs, self.mul(p, a, q + 1, self.d(q, b)), (-1) ** p)
                            if lhs != rhs:
                                bad.append(f"Leibniz fails on ({p},{i})x({q},{j})")
                        for r in range(self.cap + 1 - p - q):
                            for k in range(self.dims[r]):
                                c = unit(r, k)
                                l1 = self.mul(p + q, self.mul(p, a, q, b), r, c)
                                l2 = self.mul(p, a, q + r, self.mul(q, b, r, c))
                                if l1 != l2:
                                    bad.append(f"associativity fails on degrees {p},{q},{r}")
                                    return bad
        return bad

    def is_graded_commutative(self) -> bool:
        for p in range(self.cap + 1):
            for q in range(self.cap + 1 - p):
                for i in range(self.dims[p]):
                    for j in range(self.dims[q]):
                        a, b = {i: Fraction(1)}, {j: Fraction(1)}
                        if self.mul(p, a, q, b) != vec_scale(self.mul(q, b, p, a), (-1) ** (p * q)):
                            return False
        return True


def dga_from_free(generators: Sequence[Generator], differential: Dict[Generator, Poly], cap: int,
                  name_of: Optional[Callable[[Generator], str]] = None) -> DGAlgebra:
    """Free graded-commutative algebra on positive-degree generators, cut above ``cap``."""
    for g in generators:
        if g.degree <= 0:
            raise ValueError("generators need positive degree")
        if g.parity != g.degree % 2:
            raise ValueError("generator parity must match its degree")
    bases: List[List[Monomial]] = [[()]]
    for p in range(1, cap + 1):
        bases.append(monomials_by(generators, lambda g: g.degree, p))
    index = [{m: i for i, m in enumerate(b)} for b in bases]
    dims = [len(b) for b in bases]
    product = {}
    for p in range(cap + 1):
        for q in range(cap + 1 - p):
            for i, a in enumerate(bases[p]):
                for j, b in enumerate(bases[q]):
                    s, m = mono_mul(a, b)
                    if s:
                        product[(p, i, q, j)] = {index[p + q][m]: Fraction(s)}
    diff = {}
    for p in range(cap):
        M = Matrix(dims[p + 1], dims[p])
        for col, m in enumerate(bases[p]):
            img = apply_derivation(Poly({m: 1}), differential)
            for mm, c in img.terms.items():
                if mm not in index[p + 1]:
                    raise ValueError("differential leaves the generated algebra")
                M.set(index[p + 1][mm], col, c)
        diff[p] = M
    namer = name_of or (lambda g: "_".join(map(str, g.key)))
    names = {p: [Poly({m: 1}).render(namer) for m in bases[p]] for p in range(cap + 1)}
    return DGAlgebra(dims, product, diff, names)


# ---------------------------------------------------------------------------
# models


def denormalized_dga(Y: DGAlgebra, level_cap: Optional[int] = None) -> FiniteCosimplicialAlgebra:
    """``K(Y)``: level ``n`` is spanned by ``y (x) e_alpha`` with ``|alpha| = deg y``."""
    L = Y.cap if level_cap is None else level_cap
    ranks = Y.dims + [0] * max(0, L + 1 - len(Y.dims))
    complex_ = CochainComplex(ranks, {p: Y.differential[p] for p in range(min(Y.cap, len(ranks) - 1))})
    V = denormalize_cochain(complex_, L)
    bases = [dk_basis(ranks, n) for n in range(L + 1)]
    indices = [{b: i for i, b in enumerate(basis)} for basis in bases]

    def prod(n, i, j):
        (a, la), (b, lb) = bases[n][i], bases[n][j]
        s = shuffle_sign(a, b)
        if not s:
            return {}
        w = Y.mul(len(a), {la: Fraction(1)}, len(b), {lb: Fraction(1)})
        union = tuple(sorted(a + b))
        return {indices[n][(union, k)]: s * c for k, c in w.items()}

    return FiniteCosimplicialAlgebra(V.dims, prod, V.cofaces, V.codegeneracies, name="K(Y)")


def odd_line_model(level_cap: int) -> FiniteCosimplicialAlgebra:
    """Functions on the nerve of the odd line: level ``n`` is ``Lambda[e_0..e_n]``.

    Basis: subsets of ``{0..n}``, ordered by size then lexicographically.
    ``d^i`` sends ``e_k`` to ``e_k`` (k < i) or ``e_{k+1}``; ``s^j`` sends
    ``e_k`` to ``e_k`` (k <= j) or ``e_{k-1}``.
    """
    L = level_cap
    bases = []
    for n in range(L + 1):
        basis = [s for k in range(n + 2) for s in combinations(range(n + 1), k)]
        bases.append(basis)
    indices = [{b: i for i, b in enumerate(basis)} for basis in bases]

    def wedge(a, b):
        if set(a) & set(b):
            return 0, ()
        inv = sum(1 for x in a for y in b if x > y)
        return (-1 if inv % 2 else 1), tuple(sorted(a + b))

    def prod(n, i, j):
        s, m = wedge(bases[n][i], bases[n][j])
        return {indices[n][m]: Fraction(s)} if s else {}

    def transport(n_src, n_tgt, fn):
        M = Matrix(len(bases[n_tgt]), len(bases[n_src]))
        for col, sub in enumerate(bases[n_src]):
            img = [fn(k) for k in sub]
            if len(set(img)) < len(img):
                continue
            # images stay increasing, so no sign
            M.set(indices[n_tgt][tuple(img)], col, 1)
        return M

    cofaces = {n: [transport(n - 1, n, lambda k, i=i: k if k < i else k + 1) for i in range(n + 1)]
               for n in range(1, L + 1)}
    codegs = {n: [transport(n + 1, n, lambda k, j=j: k if k <= j else k - 1) for j in range(n + 1)]
              for n in range(L)}
    parities = [[len(s) % 2 for s in basis] for basis in bases]
    X = FiniteCosimplicialAlgebra([len(b) for b in bases], prod, cofaces, codegs, parities, "odd line")
    X.subset_basis = bases
    X.subset_index = indices
    return X


def cochain_algebra(P, level_cap: int) -> FiniteCosimplicialAlgebra:
    """Polynomial functions on levels ``0..level_cap`` of a presentation, cut at its truncation."""
    W = P.truncation
    bases = []
    for n in range(level_cap + 1):
        coords = P.coordinates(n)
        basis: List[Monomial] = [()]
        if coords:
            for w in range(1, W + 1):
                basis += monomials_by(coords, lambda g: g.weight, w)
        bases.append(basis)
    indices = [{m: i for i, m in enumerate(b)} for b in bases]

    def prod(n, i, j):
        s, m = mono_mul(bases[n][i], bases[n][j])
        if not s or mono_weight(m) > W:
            return {}
        return {indices[n][m]: Fraction(s)}

    def to_matrix(n_src, n_tgt, pull):
        M = Matrix(len(bases[n_tgt]), len(bases[n_src]))
        for col, m in enumerate(bases[n_src]):
            img = pull(Poly({m: 1}, W))
            for mm, c in img.terms.items():
                M.set(indices[n_tgt][mm], col, c)
        return M

    cofaces = {n: [to_matrix(n - 1, n, lambda f, n=n, i=i: P.pull_face(f, n, i)) for i in range(n + 1)]
               for n in range(1, level_cap + 1)}
    codegs = {n: [to_matrix(n + 1, n, lambda f, n=n, j=j: P.pull_degeneracy(f, n, j)) for j in range(n + 1)]
              for n in range(level_cap)}
    parities = [[sum(g.parity * e for g, e in m) % 2 for m in b] for b in bases]
    X = FiniteCosimplicialAlgebra([len(b) for b in bases], prod, cofaces, codegs, parities, "cochains")
    X.monomial_basis = bases
    return X


def transport_basis(X: FiniteCosimplicialAlgebra, rng: random.Random) -> FiniteCosimplicialAlgebra:
    """The same algebra written in a random basis (unitriangular change per level)."""
    changes, inverses = [], []
    for n, d in enumerate(X.dims):
        T = Matrix.identity(d)
        for i in range(d):
            for j in range(i + 1, d):
                if rng.random() < 0.3:
                    T.set(i, j, rng.randint(-2, 2))
        changes.append(T)
        inverses.append(inverse(T))
    # new basis vector k is column k of T (in old coordinates)

    def prod(n, i, j):
        u, v = changes[n].column(i), changes[n].column(j)
        return inverses[n].apply(X.mul(n, u, v))

    cofaces = {n: [inverses[n] @ M @ changes[n - 1] for M in Ms] for n, Ms in X.cofaces.items()}
    codegs = {n: [inverses[n] @ M @ changes[n + 1] for M in Ms] for n, Ms in X.codegeneracies.items()}
    return FiniteCosimplicialAlgebra(X.dims, prod, cofaces, codegs, None, X.name + " (rebased)")


# ---------------------------------------------------------------------------
# normalization and the Dold-Kan decomposition


class Normalization:
    """Normalized cochains of ``X`` with their cup product and differential."""

    def __init__(self, X: FiniteCosimplicialAlgebra):
        self.X = X
        L = X.level_cap
        self.bases: List[List[Vec]] = []
        self.free_cols: List[List[int]] = []
        for n in range(L + 1):
            if n == 0:
                basis = [{i: Fraction(1)} for i in range(X.dims[0])]
                free = list(range(X.dims[0]))
            else:
                rows = {}
                off = 0
                for j in range(n):
                    for r, row in X.codegeneracies[n - 1][j].rows.items():
                        rows[off + r] = row
                    off += X.dims[n - 1]
                basis, free = nullspace_with_free(Matrix(off, X.dims[n], rows))
            self.bases.append(basis)
            # each basis vector is 1 on its own free column and 0 on the others
            self.free_cols.append(free)
        self.dims = [len(b) for b in self.bases]

    def embed(self, n: int, coords: Vec) -> Vec:
        out: Vec = {}
        for i, c in coords.items():
            vec_iadd(out, self.bases[n][i], c)
        return out

    def coords(self, n: int, v: Vec) -> Vec:
        """Coordinates of a normalized vector; raises if ``v`` is not normalized."""
        out = {i: v[col] for i, col in enumerate(self.free_cols[n]) if v.get(col)}
        if self.embed(n, out) != v:
            raise CosimplicialError(f"vector at level {n} is not normalized")
        return out

    def d(self, n: int, v: Vec) -> Vec:
        """``sum (-1)^i d^i`` from level ``n`` to ``n + 1`` (on X-vectors)."""
        out: Vec = {}
        for i in range(n + 2):
            vec_iadd(out, self.X.cofaces[n + 1][i].apply(v), (-1) ** i)
        return out

    def cup(self, p: int, f: Vec, q: int, g: Vec) -> Vec:
        left = f
        for t in range(q):
            left = self.X.cofaces[p + 1 + t][p + 1].apply(left)
        right = g
        for t in range(p):
            right = self.X.cofaces[q + 1 + t][0].apply(right)
        return self.X.mul(p + q, left, right)


class DoldKanDecomposition:
    """The isomorphism ``(X_N)_K -> X`` built from the structure maps.

    ``embedding(n, alpha)`` is the matrix of ``X_N^{|alpha|} -> X^n``.
    """

    def __init__(self, N: Normalization):
        self.N = N
        self.X = N.X
        self._emb: Dict[Tuple[int, Subset], Matrix] = {}
        self._inv: Dict[int, Tuple[List[Tuple[Subset, int]], Matrix]] = {}

    def embedding(self, n: int, alpha: Subset) -> Matrix:
        key = (n, alpha)
        hit = self._emb.get(key)
        if hit is not None:
            return hit
        k = len(alpha)
        X = self.X
        if alpha == tuple(range(1, n + 1)):
            M = Matrix.from_columns(X.dims[n], self.N.bases[n])
        else:
            missing = [t for t in range(1, n + 1) if t not in alpha]
            j = max(missing)
            if j == n:
                M = X.cofaces[n][n] @ self.embedding(n - 1, alpha)
            else:
                beta = degeneracy_image(alpha, j)
                other = tuple(sorted((set(alpha) - {j + 1}) | {j}))
                M = X.cofaces[n][j] @ self.embedding(n - 1, beta) - self.embedding(n, other)
        self._emb[key] = M
        return M

    def components(self, n: int) -> List[Tuple[Subset, int]]:
        comps = []
        for k in range(n + 1):
            if self.N.dims[k] == 0:
                continue
            for alpha in combinations(range(1, n + 1), k):
                comps.append((alpha, k))
        return comps

    def assembled(self, n: int) -> Tuple[List[Tuple[Subset, int]], Matrix]:
        """Columns ordered by (alpha, basis index); returns labels and matrix."""
        labels = []
        cols = []
        for alpha, k in self.components(n):
            M = self.embedding(n, alpha)
            for idx, col in enumerate(M.columns()):
                labels.append((alpha, idx))
                cols.append(col)
        return labels, Matrix.from_columns(self.X.dims[n], cols)

    def decompose(self, n: int, v: Vec) -> Dict[Subset, Vec]:
        """Split ``v`` into its ``alpha`` components (each in ``X_N`` coordinates)."""
        if n not in self._inv:
            labels, M = self.assembled(n)
            if M.nrows != M.ncols:
                raise CosimplicialError(f"level {n}: decomposition has {M.ncols} columns for {M.nrows} rows")
            self._inv[n] = (labels, inverse(M))
        labels, inv = self._inv[n]
        out: Dict[Subset, Vec] = {}
        for pos, c in inv.apply(v).items():
            alpha, idx = labels[pos]
            out.setdefault(alpha, {})[idx] = c
        return out


def aw_pair(N: Normalization, p: int, f: Vec, q: int, g: Vec) -> Tuple[Vec, Vec]:
    """Alexander-Whitney as a pure tensor: ``((d^{p+1})^q f, (d^0)^p g)``."""
    left = f
    for t in range(q):
        left = N.X.cofaces[p + 1 + t][p + 1].apply(left)
    right = g
    for t in range(p):
        right = N.X.cofaces[q + 1 + t][0].apply(right)
    return left, right


def sh_pure(D: DoldKanDecomposition, n: int, u: Vec, v: Vec) -> Dict[Tuple[int, int, int, int], Fraction]:
    """Shuffle map on ``u (x) v``: keys ``(|alpha|, i, |beta|, j)`` of normalized basis pairs."""
    cu = D.decompose(n, u)
    cv = D.decompose(n, v)
    full = set(range(1, n + 1))
    out: Dict = {}
    for a, ua in cu.items():
        for b, vb in cv.items():
            if set(a) | set(b) != full:
                continue
            s = shuffle_sign(a, b)
            if not s:
                continue
            for i, x in ua.items():
                for j, y in vb.items():
                    key = (len(a), i, len(b), j)
                    nv = out.get(key, 0) + s * x * y
                    if nv:
                        out[key] = nv
                    else:
                        out.pop(key, None)
    return out


@dataclass
class InfinitesimalReport:
    infinitesimal: bool
    witness: Optional[Tuple[int, Subset, int, Subset, int]] = None


def is_infinitesimal(X: FiniteCosimplicialAlgebra, N: Optional[Normalization] = None) -> InfinitesimalReport:
    """True when the product kills every overlapping tensor up to the cap.

    The witness is ``(level, alpha, i, beta, j)``: the product of basis vector
    ``i`` placed at ``alpha`` with basis vector ``j`` placed at ``beta``.
    """
    N = N or Normalization(X)
    D = DoldKanDecomposition(N)
    for n in range(1, X.level_cap + 1):
        full = set(range(1, n + 1))
        subs = [s for k in range(1, n + 1) for s in combinations(range(1, n + 1), k)]
        for a in subs:
            if N.dims[len(a)] == 0:
                continue
            Ma = D.embedding(n, a).columns()
            for b in subs:
                if set(a) | set(b) != full or not (set(a) & set(b)) or N.dims[len(b)] == 0:
                    continue
                Mb = D.embedding(n, b).columns()
                for i, u in enumerate(Ma):
                    for j, v in enumerate(Mb):
                        if X.mul(n, u, v):
                            return InfinitesimalReport(False, (n, a, i, b, j))
    return InfinitesimalReport(True)


# ---------------------------------------------------------------------------
# the functor N'


@dataclass
class AbstractResult:
    dga: DGAlgebra
    normalized_dims: List[int]
    ideal_dims: List[int]
    representatives: List[List[Vec]]


def abstract_diff(X: FiniteCosimplicialAlgebra, max_rounds: int = 20) -> AbstractResult:
    """``N'(X) = X_N / J``, with ``J`` the differential ideal generated by squares."""
    N = Normalization(X)
    L = X.level_cap
    ideal = [EchelonBasis() for _ in range(L + 1)]

    def add(n: int, v: Vec) -> bool:
        if not v:
            return False
        return ideal[n].add(N.coords(n, v))

    # squares of the degeneracy ideals, intersected with the normalized part
    for n in range(1, L + 1):
        for j in range(1, n + 1):
            ker = nullspace(X.codegeneracies[n - 1][j - 1])
            prods = EchelonBasis()
            for a in range(len(ker)):
                for b in range(a, len(ker)):
                    for w in (X.mul(n, ker[a], ker[b]), X.mul(n, ker[b], ker[a])):
                        if w:
                            prods.add(w)
            span = prods.basis()
            if not span:
                continue
            # combinations of span killed by every codegeneracy
            rows = {}
            off = 0
            for jj in range(n):
                cols = [X.codegeneracies[n - 1][jj].apply(w) for w in span]
                M = Matrix.from_columns(X.dims[n - 1], cols)
                for r, row in M.rows.items():
                    rows[off + r] = row
                off += X.dims[n - 1]
            for comb in nullspace(Matrix(off, len(span), rows)):
                v: Vec = {}
                for idx, c in comb.items():
                    vec_iadd(v, span[idx], c)
                add(n, v)

    # close under d and under cup with normalized basis elements
    for _ in range(max_rounds):
        grew = False
        for n in range(L + 1):
            for w in list(ideal[n].basis()):
                vec = N.embed(n, w)
                if n < L:
                    grew |= add(n + 1, N.d(n, vec))
                for p in range(L + 1 - n):
                    for a in N.bases[p]:
                        grew |= add(p + n, N.cup(p, a, n, vec))
                        grew |= add(n + p, N.cup(n, vec, p, a))
        if not grew:
            break
    else:
        raise CosimplicialError("ideal closure did not stabilize")

    # quotient: free coordinates outside the pivots of the ideal
    reps: List[List[Vec]] = []
    quotient_cols: List[List[int]] = []
    for n in range(L + 1):
        piv = set(ideal[n].pivots)
        cols = [c for c in range(N.dims[n]) if c not in piv]
        quotient_cols.append(cols)
        reps.append([N.embed(n, {c: Fraction(1)}) for c in cols])
    pos = [{c: i for i, c in enumerate(cols)} for cols in quotient_cols]

    def project(n: int, v: Vec) -> Vec:
        r = ideal[n].reduce(N.coords(n, v))
        return {pos[n][c]: x for c, x in r.items()}

    dims = [len(r) for r in reps]
    product = {}
    for p in range(L + 1):
        for q in range(L + 1 - p):
            for i, a in enumerate(reps[p]):
                for j, b in enumerate(reps[q]):
                    w = project(p + q, N.cup(p, a, q, b))
                    if w:
                        product[(p, i, q, j)] = w
    diff = {}
    for p in range(L):
        diff[p] = Matrix.from_columns(dims[p + 1], [project(p + 1, N.d(p, a)) for a in reps[p]])
    dga = DGAlgebra(dims, product, diff)
    return AbstractResult(dga, list(N.dims), [len(e) for e in ideal], reps)


@dataclass
class CounitReport:
    ok: bool
    messages: List[str]


def counit_check(Y: DGAlgebra, level_cap: Optional[int] = None) -> CounitReport:
    """``N'(K(Y))`` must give back ``Y`` through the top-cell identification."""
    L = Y.cap if level_cap is None else level_cap
    X = denormalized_dga(Y, L)
    msgs = []
    inf = is_infinitesimal(X)
    if not inf.infinitesimal:
        msgs.append(f"K(Y) is not infinitesimal: {inf.witness}")
    res = abstract_diff(X)
    if any(res.ideal_dims):
        msgs.append(f"nonzero ideal {res.ideal_dims}")
    ranks = Y.dims[: L + 1]
    if res.dga.dims != ranks:
        msgs.append(f"dimensions {res.dga.dims} != {ranks}")
        return CounitReport(False, msgs)
    # the representative of basis vector l in degree n must be y_l (x) e_{1..n}
    full_ranks = ranks + [0] * (L + 1 - len(ranks))
    for n in range(L + 1):
        idx = {b: i for i, b in enumerate(dk_basis(full_ranks, n))}
        for l, rep in enumerate(res.representatives[n]):
            if rep != {idx[(tuple(range(1, n + 1)), l)]: Fraction(1)}:
                msgs.append(f"representative {l} in degree {n} is not the top cell")
    for key, w in Y.product.items():
        p, i, q, j = key
        if p + q <= L and res.dga.product.get(key, {}) != w:
            msgs.append(f"product differs on {key}")
    for key, w in res.dga.product.items():
        if key not in Y.product and w:
            msgs.append(f"extra product on {key}")
    for p in range(L):
        if res.dga.differential[p] != Y.differential[p]:
            msgs.append(f"differential differs in degree {p}")
    return CounitReport(not msgs, msgs)


# ---------------------------------------------------------------------------
# odd line identities


def odd_line_elements(X: FiniteCosimplicialAlgebra, n: int) -> Dict[str, Vec]:
    """``pi_n = e_0...e_n``, ``Delta_n = prod (e_t - e_{t-1})`` and the ``e_i`` at level ``n``."""
    idx = X.subset_index[n]
    out = {"pi": {idx[tuple(range(n + 1))]: Fraction(1)}}
    delta = {idx[()]: Fraction(1)}
    for t in range(1, n + 1):
        lin = {idx[(t,)]: Fraction(1), idx[(t - 1,)]: Fraction(-1)}
        delta = X.mul(n, delta, lin)
    out["Delta"] = delta
    for i in range(n + 1):
        out[f"e{i}"] = {idx[(i,)]: Fraction(1)}
    return out


def odd_line_identities(X: FiniteCosimplicialAlgebra) -> List[str]:
    """Failures among the basic identities of the odd line (empty when all hold)."""
    N = Normalization(X)
    bad = []
    L = X.level_cap
    els = [odd_line_elements(X, n) for n in range(L + 1)]
    for n in range(L + 1):
        for name in ("pi", "Delta"):
            for j in range(n):
                if X.codegeneracies[n - 1][j].apply(els[n][name]):
                    bad.append(f"{name}_{n} is not normalized")
        for i in range(n + 1):
            if n >= 1 and X.mul(n, els[n][f"e{i}"], els[n]["Delta"]) != els[n]["pi"]:
                bad.append(f"e{i} Delta_{n} != pi_{n}")
        if n >= 1 and N.d(n - 1, els[n - 1]["pi"]) != els[n]["Delta"]:
            bad.append(f"d pi_{n-1} != Delta_{n}")
    for p in range(L + 1):
        for q in range(L + 1 - p):
            if N.cup(p, els[p]["Delta"], q, els[q]["Delta"]) != els[p + q]["Delta"]:
                bad.append(f"Delta_{p} cup Delta_{q} != Delta_{p+q}")
            if N.cup(p, els[p]["pi"], q, els[q]["pi"]):
                bad.append(f"pi_{p} cup pi_{q} != 0")
    return bad
