"""Builders for test inputs: random complexes, group laws, frame changes.

The frame change is the main source of nonlinear presentations.  A change of
frame is an automorphism ``phi_n`` of every level that commutes with the
positive faces and the degeneracies; the zeroth face transforms as
``phi_{n-1}^{-1} o d_0 o phi_n``.  Only the top coordinate of each level is
chosen freely (identity plus a random normalized polynomial); the others are
forced by compatibility with the positive faces.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .combinatorics import degeneracy_image
from .graded_poly import Generator, Poly, mono_from_factors, mono_parity, mono_weight
from .linalg import Matrix, nullspace
from .oracles import GroupLaw, abelian_law, bch_order2, gx, gy, nerve_from_group_law
from .presentation import FramedPresentation, coord, linear_presentation


def random_fraction(rng: random.Random, bound: int = 3) -> Fraction:
    while True:
        num = rng.randint(-bound, bound)
        if num:
            return Fraction(num, rng.choice([1, 1, 2, 3]))


def random_complex(rng: random.Random, max_rank: int, top_degree: int,
                   allow_zero_boundary: bool = True) -> Tuple[List[int], Dict[int, Matrix]]:
    """Ranks ``[r_1, ..., r_top]`` and boundaries with ``d o d = 0``."""
    ranks = [rng.randint(1, max_rank) for _ in range(top_degree)]
    boundary: Dict[int, Matrix] = {}
    for k in range(2, top_degree + 1):
        rows, cols = ranks[k - 2], ranks[k - 1]
        if allow_zero_boundary and rng.random() < 0.3:
            continue
        # columns must lie in the kernel of the previous boundary
        if k - 1 in boundary:
            kernel = nullspace(boundary[k - 1])
        else:
            kernel = [{i: Fraction(1)} for i in range(rows)]
        cols_v = []
        for _ in range(cols):
            v: Dict[int, Fraction] = {}
            for b in kernel:
                c = Fraction(rng.randint(-1, 1))
                for i, x in b.items():
                    v[i] = v.get(i, 0) + c * x
            cols_v.append({i: x for i, x in v.items() if x})
        m = Matrix.from_columns(rows, cols_v)
        if not m.is_zero():
            boundary[k] = m
    return ranks, boundary


def affine_law() -> GroupLaw:
    """``(u, b)(u', b') = (u + u' + u u', b + b' + u b')``: the ax+b group."""
    u, b = 0, 1
    comps = [
        Poly.gen(gx(u)) + Poly.gen(gy(u)) + Poly.product_of([gx(u), gy(u)]),
        Poly.gen(gx(b)) + Poly.gen(gy(b)) + Poly.product_of([gx(u), gy(b)]),
    ]
    return GroupLaw(2, comps, ["u", "b"])


def heisenberg_constants() -> List[List[List[int]]]:
    c = [[[0] * 3 for _ in range(3)] for _ in range(3)]
    c[0][1][2] = 1
    c[1][0][2] = -1
    return c


def so3_constants() -> List[List[List[int]]]:
    c = [[[0] * 3 for _ in range(3)] for _ in range(3)]
    for (a, b, k) in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        c[a][b][k] = 1
        c[b][a][k] = -1
    return c


def _random_poly(rng: random.Random, gens: Sequence[Generator], min_len: int, max_weight: int,
                 terms: int, accept) -> Poly:
    out: Dict = {}
    tries = 0
    while len(out) < terms and tries < 60 * terms:
        tries += 1
        length = rng.randint(min_len, max(min_len, max_weight))
        factors = [rng.choice(gens) for _ in range(length)]
        s, m = mono_from_factors(factors)
        if not s or mono_weight(m) > max_weight or not accept(m):
            continue
        out[m] = out.get(m, 0) + random_fraction(rng)
    return Poly(out)


def conjugate_law(law: GroupLaw, rng: random.Random, truncation: int, terms: int = 2) -> GroupLaw:
    """``phi^{-1}(m(phi x, phi y))`` for a random tangent-to-identity ``phi``."""
    W = truncation
    xs = [gx(i) for i in range(law.dim)]
    phi = [Poly.gen(g, truncation=W) + _random_poly(rng, xs, 2, W, terms, lambda m: True).truncate(W)
           for g in xs]
    # inverse by fixed point iteration: psi = x - (phi - x) o psi
    psi = [Poly.gen(g, truncation=W) for g in xs]
    for _ in range(W + 1):
        images = {xs[i]: psi[i] for i in range(law.dim)}
        psi = [Poly.gen(xs[i], truncation=W) - (phi[i] - Poly.gen(xs[i])).substitute(images, W)
               for i in range(law.dim)]
    phx = phi
    phy = [p.substitute({gx(i): Poly.gen(gy(i)) for i in range(law.dim)}, W) for p in phi]
    inner = law.apply(phx, phy, W)
    comps = [p.substitute({gx(i): inner[i] for i in range(law.dim)}, W) for p in psi]
    return GroupLaw(law.dim, comps, law.names)


# ---------------------------------------------------------------------------
# frame changes


def _top(n: int) -> Tuple[int, ...]:
    return tuple(range(1, n + 1))


def _covering(m, n: int) -> bool:
    seen = set()
    for g, _ in m:
        seen.update(g.key[1])
    return len(seen) == n


def frame_change(P: FramedPresentation, rng: random.Random, terms: int = 2) -> FramedPresentation:
    """Transport ``P`` along a random change of frame."""
    W, L = P.truncation, P.max_level
    phi: Dict[int, Dict[Generator, Poly]] = {}
    psi: Dict[int, Dict[Generator, Poly]] = {}
    for n in range(1, L + 1):
        coords = P.coordinates(n)
        level: Dict[Generator, Poly] = {}
        for lab in range(P.rank(n)):
            x = P.coordinate(_top(n), lab)
            extra = _random_poly(rng, coords, 2, W, terms,
                                 lambda m, n=n, x=x: _covering(m, n) and mono_parity(m) == x.parity)
            level[x] = Poly.gen(x, truncation=W) + extra.truncate(W)

        def solve_coord(x: Generator) -> Poly:
            if x in level:
                return level[x]
            alpha, lab = x.key[1], x.key[2]
            missing = [t for t in range(1, n + 1) if t not in alpha]
            j = max(missing)
            if j == n:
                # x = x o d_n for the same coordinate one level down
                val = P.pull_face(phi[n - 1][P.coordinate(alpha, lab)], n, n)
            else:
                beta = degeneracy_image(alpha, j)
                other = tuple(sorted((set(alpha) - {j + 1}) | {j}))
                val = P.pull_face(phi[n - 1][P.coordinate(beta, lab)], n, j) \
                    - solve_coord(P.coordinate(other, lab))
            level[x] = val
            return val

        for x in coords:
            solve_coord(x)
        phi[n] = level
        if n == L:
            continue  # the inverse is only needed below the top level
        # inverse: psi = x - (phi - x) o psi; every pass fixes one more weight
        inv = {x: Poly.gen(x, truncation=W) for x in coords}
        nonlin = {x: level[x] - Poly.gen(x) for x in coords}
        for _ in range(W - 1):
            inv = {x: Poly.gen(x, truncation=W) - nonlin[x].substitute(inv, W) for x in coords}
        psi[n] = inv
    d0 = {}
    for n in range(2, L + 1):
        images = {}
        for x in P.coordinates(n - 1):
            f = psi[n - 1][x].substitute(P.d0[n], W)
            images[x] = f.substitute(phi[n], W)
        d0[n] = images
    return FramedPresentation(P.ranks, P.boundary, W, d0, P.parities, P.names)


def product_presentation(P: FramedPresentation, Q: FramedPresentation) -> FramedPresentation:
    """Levelwise product: tangent complexes add, labels of ``Q`` shift up."""
    W = min(P.truncation, Q.truncation)
    L = min(P.max_level, Q.max_level)
    top = max(len(P.ranks), len(Q.ranks))
    ranks = [P.rank(k) + Q.rank(k) for k in range(1, top + 1)]
    boundary = {}
    for k in range(2, top + 1):
        mp, mq = P.boundary_matrix(k), Q.boundary_matrix(k)
        if mp.is_zero() and mq.is_zero():
            continue
        m = Matrix(ranks[k - 2], ranks[k - 1])
        for i, r in mp.rows.items():
            for j, v in r.items():
                m.set(i, j, v)
        for i, r in mq.rows.items():
            for j, v in r.items():
                m.set(i + P.rank(k - 1), j + P.rank(k), v)
        boundary[k] = m
    parities = None
    if P.parities is not None or Q.parities is not None:
        parities = [[P.parity(k, l) for l in range(P.rank(k))] + [Q.parity(k, l) for l in range(Q.rank(k))]
                    for k in range(1, top + 1)]

    def shift(g: Generator) -> Generator:
        _, alpha, lab = g.key
        k = len(alpha)
        return coord(alpha, lab + P.rank(k), g.parity)

    d0 = {}
    for n in range(2, L + 1):
        images = dict(P.d0[n])
        for x, img in Q.d0[n].items():
            images[shift(x)] = img.substitute({g: Poly.gen(shift(g)) for g in img.generators()}, W)
        d0[n] = {x: p.truncate(W) for x, p in images.items()}
    return FramedPresentation(ranks, boundary, W, d0, parities)


# ---------------------------------------------------------------------------
# corpora


def base_presentations(truncation: int = 4, max_level: int = 4) -> Dict[str, FramedPresentation]:
    """Deterministic fixtures used throughout the tests."""
    W, L = truncation, max_level
    out = {
        "abelian1": nerve_from_group_law(abelian_law(1), W, L),
        "abelian2": nerve_from_group_law(abelian_law(2), W, L),
        "heisenberg": nerve_from_group_law(bch_order2(heisenberg_constants(), ["a", "b", "c"]), W, L),
        "affine": nerve_from_group_law(affine_law(), W, L),
        "shifted": linear_presentation([1, 1, 1], {2: Matrix.from_dense([[1]])}, W, L),
        "odd_abelian": linear_presentation([1], {}, W, L, parities=[[1]]),
    }
    return out


def fuzz_presentations(seed: int, count: int, max_rank: int = 2, top_degree: int = 3,
                       truncation: int = 4) -> List[Tuple[str, FramedPresentation]]:
    """``count`` valid nonlinear presentations with ranks and degrees bounded as given."""
    rng = random.Random(seed)
    out = []
    for idx in range(count):
        kind = idx % 4
        # lean towards the largest truncation, which exercises the most terms
        W = max(2, truncation - rng.choice([0, 0, 1, 2]))
        if kind == 0:
            dim = rng.randint(1, max_rank)
            law = affine_law() if dim == 2 and rng.random() < 0.5 else abelian_law(dim)
            law = conjugate_law(law, rng, W)
            L = min(W, 4)
            P = nerve_from_group_law(law, W, L)
            label = f"law{idx}"
        else:
            top = rng.randint(1, top_degree)
            ranks, boundary = random_complex(rng, max_rank, top)
            L = max(2, min(W, top + 1))
            P = linear_presentation(ranks, boundary, W, L)
            label = f"complex{idx}"
            if kind == 3 and top == 1:
                Q = nerve_from_group_law(affine_law() if max_rank >= 2 else abelian_law(1), W, L)
                P = product_presentation(Q, linear_presentation([1], {}, W, L)) if max_rank >= 3 else Q
                label = f"product{idx}"
        P = frame_change(P, rng)
        out.append((label, P))
    return out
