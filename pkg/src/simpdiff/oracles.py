"""Independent reference computations used to certify the engine.

Nothing in here calls the unravelling or the reduction code it is meant to
check.  The group-law helpers build presentations from first principles
(cumulative products in the bar picture of the nerve).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from .graded_poly import Generator, Poly
from .linalg import EchelonBasis, Matrix, solve
from .presentation import FramedPresentation, coord


def gx(i: int) -> Generator:
    return Generator(("gx", i), 0, 0, 1)


def gy(i: int) -> Generator:
    return Generator(("gy", i), 0, 0, 1)


@dataclass
class GroupLaw:
    """A formal group law ``m(x, y)`` on ``Q^dim`` given by polynomials.

    ``components[k]`` is a polynomial in the variables ``gx(i)``, ``gy(i)``.
    """

    dim: int
    components: List[Poly]
    names: Optional[List[str]] = None

    def apply(self, xs: Sequence[Poly], ys: Sequence[Poly], truncation: int) -> List[Poly]:
        images = {gx(i): xs[i] for i in range(self.dim)}
        images.update({gy(i): ys[i] for i in range(self.dim)})
        return [c.substitute(images, truncation) for c in self.components]

    def associativity_defect(self, truncation: int) -> List[Poly]:
        """``m(m(x,y),z) - m(x,m(y,z))`` up to the given weight."""
        x = [Poly.gen(Generator(("a", i), 0, 0, 1), truncation=truncation) for i in range(self.dim)]
        y = [Poly.gen(Generator(("b", i), 0, 0, 1), truncation=truncation) for i in range(self.dim)]
        z = [Poly.gen(Generator(("c", i), 0, 0, 1), truncation=truncation) for i in range(self.dim)]
        left = self.apply(self.apply(x, y, truncation), z, truncation)
        right = self.apply(x, self.apply(y, z, truncation), truncation)
        return [a - b for a, b in zip(left, right)]

    def is_associative(self, truncation: int) -> bool:
        return all(d.is_zero() for d in self.associativity_defect(truncation))


def check_lie_constants(c: Sequence[Sequence[Sequence[Fraction]]]) -> None:
    """Raise ValueError unless ``c[i][j][k]`` is antisymmetric and satisfies Jacobi."""
    m = len(c)
    for i in range(m):
        for j in range(m):
            for k in range(m):
                if c[i][j][k] != -c[j][i][k]:
                    raise ValueError("bracket constants are not antisymmetric")
    for a, b, d in product(range(m), repeat=3):
        for k in range(m):
            total = Fraction(0)
            for l in range(m):
                total += c[a][b][l] * c[l][d][k] + c[b][d][l] * c[l][a][k] + c[d][a][l] * c[l][b][k]
            if total:
                raise ValueError("bracket constants violate the Jacobi identity")


def bch_order2(c: Sequence[Sequence[Sequence]], names: Optional[List[str]] = None) -> GroupLaw:
    """``m(x,y) = x + y + [x,y]/2`` from structure constants ``[e_i,e_j] = sum c[i][j][k] e_k``."""
    c = [[[Fraction(v) for v in row] for row in mat] for mat in c]
    check_lie_constants(c)
    m = len(c)
    comps = []
    for k in range(m):
        terms = {((gx(k), 1),): Fraction(1), ((gy(k), 1),): Fraction(1)}
        for i in range(m):
            for j in range(m):
                if c[i][j][k]:
                    mono = ((gx(i), 1), (gy(j), 1))
                    terms[mono] = terms.get(mono, 0) + c[i][j][k] / 2
        comps.append(Poly(terms))
    return GroupLaw(m, comps, names)


def abelian_law(dim: int) -> GroupLaw:
    return GroupLaw(dim, [Poly.gen(gx(i)) + Poly.gen(gy(i)) for i in range(dim)])


def formal_inverse(law: GroupLaw, truncation: int) -> List[Poly]:
    """Polynomials ``i(x)`` in ``gx`` with ``m(x, i(x)) = 0`` up to the truncation."""
    x = [Poly.gen(gx(i), truncation=truncation) for i in range(law.dim)]
    inv = [-v for v in x]
    for _ in range(truncation + 1):
        mx = law.apply(x, inv, truncation)
        # m(x, i) = x + i + R(x, i), so i = -x - R(x, i)
        inv = [inv[k] - mx[k] for k in range(law.dim)]
    check = law.apply(x, inv, truncation)
    if any(not c.is_zero() for c in check):
        raise ValueError("formal inversion did not converge")
    return inv


def nerve_from_group_law(law: GroupLaw, truncation: int, max_level: int) -> FramedPresentation:
    """Presentation of the nerve in the frame of successive differences.

    A simplex is ``(g_1, ..., g_n)``; ``d_0`` drops ``g_1``, ``d_i`` multiplies
    ``g_i g_{i+1}`` and ``d_n`` drops ``g_n``.  With ``c_t = g_1 ... g_t`` the
    frame coordinates are ``y_t = c_t - c_{t-1}`` and ``d_0`` pulls ``c'_t``
    back to ``m(i(c_1), c_{t+1})``.
    """
    W = truncation
    inv = formal_inverse(law, W)
    m = law.dim
    d0 = {}
    for n in range(2, max_level + 1):
        y = [[Poly.gen(coord((t,), l), truncation=W) for l in range(m)] for t in range(1, n + 1)]
        c = []
        run = [Poly({}, W) for _ in range(m)]
        for t in range(n):
            run = [run[l] + y[t][l] for l in range(m)]
            c.append(run)
        # c[t-1] is c_t
        inv_c1 = [p.substitute({gx(l): c[0][l] for l in range(m)}, W) for p in inv]
        cprime = [[Poly({}, W) for _ in range(m)]]
        for t in range(1, n):
            cprime.append(law.apply(inv_c1, c[t], W))
        images = {}
        for t in range(1, n):
            for l in range(m):
                images[coord((t,), l)] = cprime[t][l] - cprime[t - 1][l]
        d0[n] = images
    names = {1: list(law.names)} if law.names else None
    return FramedPresentation([m], {}, W, d0, names=names)


def commutator_constants(mats: Sequence[Matrix]) -> List[List[List[Fraction]]]:
    """Structure constants of a matrix Lie algebra in the given basis."""
    m = len(mats)
    if m == 0:
        return []
    size = mats[0].nrows
    flat = []
    for X in mats:
        flat.append({i * size + j: v for i, r in X.rows.items() for j, v in r.items()})
    A = Matrix.from_columns(size * size, flat)
    out = [[[Fraction(0)] * m for _ in range(m)] for _ in range(m)]
    for i in range(m):
        for j in range(m):
            br = mats[i] @ mats[j] - mats[j] @ mats[i]
            vec = {a * size + b: v for a, r in br.rows.items() for b, v in r.items()}
            sol = solve(A, vec)
            if sol is None:
                raise ValueError("commutator leaves the span of the basis")
            for k, v in sol.items():
                out[i][j][k] = v
    return out


# ---------------------------------------------------------------------------
# unravelling by brute force


def _state(seq) -> frozenset:
    return frozenset(seq)


def _neighbours(state: frozenset, n: int):
    blocks = list(state)
    where = {}
    for idx, (b, _) in enumerate(blocks):
        for a in b:
            where[a] = idx
    for j in range(1, n):
        r, s = where[j], where[j + 1]
        if r == s:
            continue
        new = list(blocks)
        for idx in (r, s):
            b, lab = blocks[idx]
            new[idx] = (tuple(sorted(j + 1 if a == j else j if a == j + 1 else a for a in b)), lab)
        yield frozenset(new)


def _is_canonical_state(state: frozenset, n: int) -> Optional[tuple]:
    seq = sorted(state, key=lambda bl: bl[0][0])
    start = 1
    prev = None
    for b, lab in seq:
        if b != tuple(range(start, start + len(b))):
            return None
        start += len(b)
        if prev is not None and (len(b), lab) < prev:
            return None
        prev = (len(b), lab)
    return tuple(seq)


_class_cache: Dict[Tuple[frozenset, int], Tuple[Optional[tuple], Dict[frozenset, int]]] = {}


def brute_unravel_sign(seq, n: int) -> Tuple[Optional[tuple], int]:
    """Explore every allowed transposition from ``seq``.

    Coordinates commute, so a state is the set of its labeled blocks.  Each
    transposition costs a sign; reaching a state with both signs means the
    class is zero.  Returns ``(canonical sequence, sign of seq relative to it)``
    with sign 0 for a vanishing class.
    """
    start = _state(seq)
    key = (start, n)
    if key not in _class_cache:
        signs = {start: 1}
        queue = deque([start])
        zero = False
        while queue:
            st = queue.popleft()
            for nb in _neighbours(st, n):
                s = -signs[st]
                if nb in signs:
                    if signs[nb] != s:
                        zero = True
                else:
                    signs[nb] = s
                    queue.append(nb)
        canon = None
        for st in signs:
            c = _is_canonical_state(st, n)
            if c is not None:
                canon = (c, st)
                break
        if canon is None:
            raise AssertionError("no canonical representative found")
        cseq, cst = canon
        rel = {st: (0 if zero else s * signs[cst]) for st, s in signs.items()}
        for st in signs:
            _class_cache[(st, n)] = (cseq, rel)
    cseq, rel = _class_cache[key]
    return cseq, rel[start]


# ---------------------------------------------------------------------------
# relation span


def relation_span_rank(n: int, ranks: Sequence[int]) -> Tuple[int, int, int]:
    """Dimension count of partition monomials modulo the transposition relations.

    Returns ``(number of partition monomials, rank of relations, corank)``.
    Monomials are commutative products of coordinates, so they are sets of
    labeled blocks.
    """
    from .combinatorics import labeled_partitions  # plain enumeration

    monos = {}
    for seq in labeled_partitions(n, ranks):
        st = frozenset(seq)
        if st not in monos:
            monos[st] = len(monos)
    rel = EchelonBasis()
    for st, idx in monos.items():
        for nb in _neighbours(st, n):
            vec = {idx: Fraction(1)}
            j = monos[nb]
            vec[j] = vec.get(j, 0) + 1
            vec = {k: v for k, v in vec.items() if v}
            if vec:
                rel.add(vec)
    return len(monos), len(rel), len(monos) - len(rel)


def free_graded_dimension(n: int, ranks: Sequence[int]) -> int:
    """Dimension of degree ``n`` in the free graded-commutative algebra.

    ``ranks[k-1]`` generators sit in degree ``k``; odd ones square to zero.
    Computed with a generating-function product.
    """
    poly = [0] * (n + 1)
    poly[0] = 1
    for k, r in enumerate(ranks, start=1):
        for _ in range(r):
            new = [0] * (n + 1)
            for d, c in enumerate(poly):
                if not c:
                    continue
                if k % 2:
                    new[d] += c
                    if d + k <= n:
                        new[d + k] += c
                else:
                    e = 0
                    while d + e * k <= n:
                        new[d + e * k] += c
                        e += 1
            poly = new
    return poly[n]
