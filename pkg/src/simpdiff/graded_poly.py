"""Sparse graded-commutative polynomials with exact coefficients.

A :class:`Generator` carries a sort key, a cohomological degree, a super
parity and a weight.  Commutation signs are decided by ``parity`` alone, so a
caller wanting the usual Koszul rule on degrees simply sets
``parity = degree mod 2``.

A monomial is a tuple of ``(generator, exponent)`` pairs sorted by generator
key; it stands for the ordered product of its factors.  Odd generators have
exponent 1.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Callable, Dict, Iterable, Iterator, List, Mapping, NamedTuple, Optional, Sequence, Tuple

from .rationals import format_rational


class Generator(NamedTuple):
    key: tuple
    degree: int = 0
    parity: int = 0
    weight: int = 1


Monomial = Tuple[Tuple[Generator, int], ...]
ONE_MONO: Monomial = ()


@lru_cache(maxsize=None)
def mono_weight(m: Monomial) -> int:
    return sum(g.weight * e for g, e in m)


@lru_cache(maxsize=None)
def mono_degree(m: Monomial) -> int:
    return sum(g.degree * e for g, e in m)


def mono_parity(m: Monomial) -> int:
    return sum(g.parity * e for g, e in m) % 2


def mono_length(m: Monomial) -> int:
    """Polynomial degree: the number of factors counted with multiplicity."""
    return sum(e for _, e in m)


@lru_cache(maxsize=1 << 20)
def mono_mul(a: Monomial, b: Monomial) -> Tuple[int, Monomial]:
    """Product ``a * b`` as ``(sign, monomial)``; sign 0 means it vanishes."""
    if not a:
        return 1, b
    if not b:
        return 1, a
    # odd factors of a at index >= i
    odd_suffix = [0] * (len(a) + 1)
    for i in range(len(a) - 1, -1, -1):
        g, e = a[i]
        odd_suffix[i] = odd_suffix[i + 1] + (1 if g.parity and e % 2 else 0)
    out: List[Tuple[Generator, int]] = []
    sign = 1
    i = j = 0
    while i < len(a) and j < len(b):
        ga, ea = a[i]
        gb, eb = b[j]
        if ga.key < gb.key:
            out.append(a[i])
            i += 1
        elif gb.key < ga.key:
            if gb.parity and eb % 2 and odd_suffix[i] % 2:
                sign = -sign
            out.append(b[j])
            j += 1
        else:
            if ga.parity:
                return 0, ()
            # even generator: commutes past everything
            out.append((ga, ea + eb))
            i += 1
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return sign, tuple(out)


def mono_from_factors(factors: Sequence[Generator]) -> Tuple[int, Monomial]:
    """Normal form of an ordered product of generators."""
    sign, m = 1, ONE_MONO
    for g in factors:
        s, m = mono_mul(m, ((g, 1),))
        if s == 0:
            return 0, ()
        sign *= s
    return sign, m


def expand_factors(m: Monomial) -> List[Generator]:
    out = []
    for g, e in m:
        out.extend([g] * e)
    return out


class Poly:
    """A polynomial: a dict from monomials to nonzero Fractions.

    ``truncation`` (an int or None) is a weight cap: terms of larger weight are
    dropped on construction and in every product.
    """

    __slots__ = ("terms", "truncation")

    def __init__(self, terms: Optional[Mapping[Monomial, object]] = None,
                 truncation: Optional[int] = None):
        self.truncation = truncation
        out: Dict[Monomial, Fraction] = {}
        if terms:
            for m, c in terms.items():
                if not c:
                    continue
                if truncation is not None and mono_weight(m) > truncation:
                    continue
                out[m] = c if isinstance(c, Fraction) else Fraction(c)
        self.terms = out

    @classmethod
    def _raw(cls, terms: Dict[Monomial, Fraction], truncation: Optional[int]) -> "Poly":
        p = cls.__new__(cls)
        p.terms = terms
        p.truncation = truncation
        return p

    @classmethod
    def const(cls, c, truncation: Optional[int] = None) -> "Poly":
        return cls({ONE_MONO: Fraction(c)}, truncation)

    @classmethod
    def gen(cls, g: Generator, c=1, truncation: Optional[int] = None) -> "Poly":
        return cls({((g, 1),): Fraction(c)}, truncation)

    @classmethod
    def mono(cls, m: Monomial, c=1, truncation: Optional[int] = None) -> "Poly":
        return cls({m: Fraction(c)}, truncation)

    @classmethod
    def product_of(cls, factors: Sequence[Generator], c=1,
                   truncation: Optional[int] = None) -> "Poly":
        s, m = mono_from_factors(factors)
        return cls({m: s * Fraction(c)} if s else {}, truncation)

    # -- basic structure ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[Tuple[Monomial, Fraction]]:
        return iter(self.terms.items())

    def coefficient(self, m: Monomial) -> Fraction:
        return self.terms.get(m, Fraction(0))

    def generators(self) -> set:
        return {g for m in self.terms for g, _ in m}

    def min_weight(self) -> Optional[int]:
        if not self.terms:
            return None
        return min(mono_weight(m) for m in self.terms)

    def max_weight(self) -> Optional[int]:
        if not self.terms:
            return None
        return max(mono_weight(m) for m in self.terms)

    def _trunc(self, other: "Poly") -> Optional[int]:
        a, b = self.truncation, other.truncation
        if a is None:
            return b
        if b is None:
            return a
        return min(a, b)

    def truncate(self, w: Optional[int]) -> "Poly":
        if w is None:
            return Poly._raw(dict(self.terms), self.truncation)
        t = w if self.truncation is None else min(w, self.truncation)
        return Poly._raw({m: c for m, c in self.terms.items() if mono_weight(m) <= t}, t)

    def filter(self, pred: Callable[[Monomial], bool]) -> "Poly":
        return Poly._raw({m: c for m, c in self.terms.items() if pred(m)}, self.truncation)

    def homogeneous(self, weight: int) -> "Poly":
        return self.filter(lambda m: mono_weight(m) == weight)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        t = self._trunc(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            nc = out.get(m, 0) + c
            if nc:
                out[m] = nc
            else:
                out.pop(m, None)
        if t is not None and t != self.truncation or t is not None and t != other.truncation:
            out = {m: c for m, c in out.items() if mono_weight(m) <= t}
        return Poly._raw(out, t)

    def __neg__(self) -> "Poly":
        return Poly._raw({m: -c for m, c in self.terms.items()}, self.truncation)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def scale(self, c) -> "Poly":
        c = Fraction(c)
        if not c:
            return Poly._raw({}, self.truncation)
        return Poly._raw({m: c * v for m, v in self.terms.items()}, self.truncation)

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            return self.scale(other)
        t = self._trunc(other)
        out: Dict[Monomial, Fraction] = {}
        if t is None:
            for ma, ca in self.terms.items():
                for mb, cb in other.terms.items():
                    s, m = mono_mul(ma, mb)
                    if s:
                        nc = out.get(m, 0) + (ca * cb if s > 0 else -ca * cb)
                        if nc:
                            out[m] = nc
                        else:
                            del out[m]
        else:
            wb = [(mb, cb, mono_weight(mb)) for mb, cb in other.terms.items()]
            for ma, ca in self.terms.items():
                wa = mono_weight(ma)
                if wa > t:
                    continue
                for mb, cb, w in wb:
                    if wa + w > t:
                        continue
                    s, m = mono_mul(ma, mb)
                    if s:
                        nc = out.get(m, 0) + (ca * cb if s > 0 else -ca * cb)
                        if nc:
                            out[m] = nc
                        else:
                            del out[m]
        return Poly._raw(out, t)

    def __rmul__(self, other) -> "Poly":
        return self.scale(other)

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            raise ValueError("negative power")
        result = Poly.const(1, self.truncation)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        raise TypeError("Poly is not hashable")

    # -- substitution --------------------------------------------------------

    def substitute(self, images: Mapping[Generator, "Poly"],
                   truncation: Optional[int] = None, strict: bool = True) -> "Poly":
        """Apply the algebra map sending each generator to ``images[g]``.

        Generators missing from ``images`` raise KeyError when ``strict``,
        otherwise they are kept as they are.  Parity preservation is the
        caller's business.
        """
        t = truncation
        power_cache: Dict[Tuple[Generator, int], Poly] = {}

        def power(g, e):
            key = (g, e)
            p = power_cache.get(key)
            if p is None:
                if g in images:
                    base = images[g]
                elif strict:
                    raise KeyError(f"no image for generator {g.key}")
                else:
                    base = Poly.gen(g)
                base = base.truncate(t) if t is not None else base
                p = base if e == 1 else power(g, e - 1) * base
                if t is not None:
                    p = p.truncate(t)
                power_cache[key] = p
            return p

        acc: Dict[Monomial, Fraction] = {}
        prefix_cache: Dict[Monomial, Poly] = {}
        for m, c in self.terms.items():
            # reuse products of shared prefixes
            img = None
            for cut in range(len(m), 0, -1):
                hit = prefix_cache.get(m[:cut])
                if hit is not None:
                    img = hit
                    start = cut
                    break
            if img is None:
                img = Poly.const(1, t)
                start = 0
            for idx in range(start, len(m)):
                g, e = m[idx]
                img = img * power(g, e)
                if t is not None:
                    img = img.truncate(t)
                prefix_cache[m[: idx + 1]] = img
            for mm, cc in img.terms.items():
                nc = acc.get(mm, 0) + c * cc
                if nc:
                    acc[mm] = nc
                else:
                    del acc[mm]
        return Poly._raw(acc, t)

    # -- derivatives -----------------------------------------------------------

    def multilinear_coefficient(self, m: Monomial) -> Fraction:
        """The coefficient of ``m`` times the product of exponent factorials."""
        c = self.terms.get(m, Fraction(0))
        for _, e in m:
            c *= factorial(e)
        return c

    # -- display -------------------------------------------------------------

    def sorted_terms(self) -> List[Tuple[Monomial, Fraction]]:
        return sorted(self.terms.items(), key=lambda mc: (mono_weight(mc[0]), [(g.key, e) for g, e in mc[0]]))

    def render(self, namer: Optional[Callable[[Generator], str]] = None) -> str:
        if not self.terms:
            return "0"
        namer = namer or default_name
        parts = []
        for m, c in self.sorted_terms():
            factors = []
            for g, e in m:
                name = namer(g)
                factors.append(name if e == 1 else f"{name}^{e}")
            body = "*".join(factors)
            if not body:
                txt = format_rational(c)
            elif c == 1:
                txt = body
            elif c == -1:
                txt = "-" + body
            else:
                txt = f"{format_rational(c)}*{body}"
            parts.append(txt)
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __repr__(self) -> str:
        return f"Poly({self.render()})"


def default_name(g: Generator) -> str:
    key = g.key
    if key and key[0] == "x" and len(key) == 3:
        _, alpha, lab = key
        return "x{" + ",".join(map(str, alpha)) + "}_" + str(lab)
    if key and key[0] == "xi" and len(key) == 3:
        return f"xi{key[1]}_{key[2]}"
    return "_".join(str(k) for k in key)


def linear_part(p: Poly) -> Poly:
    return p.filter(lambda m: mono_length(m) == 1)


def nonlinear_part(p: Poly) -> Poly:
    return p.filter(lambda m: mono_length(m) >= 2)


def monomials_in(gens: Sequence[Generator], length: int) -> List[Monomial]:
    """All nonzero monomials with exactly ``length`` factors in ``gens``."""
    gens = sorted(gens, key=lambda g: g.key)
    out: List[Monomial] = []

    def rec(idx, remaining, acc):
        if remaining == 0:
            out.append(tuple(acc))
            return
        if idx == len(gens):
            return
        g = gens[idx]
        top = 1 if g.parity else remaining
        for e in range(min(top, remaining), 0, -1):
            acc.append((g, e))
            rec(idx + 1, remaining - e, acc)
            acc.pop()
        rec(idx + 1, remaining, acc)

    rec(0, length, [])
    return out


def monomials_by(gens: Sequence[Generator], grade: Callable[[Generator], int],
                 target: int) -> List[Monomial]:
    """Nonzero monomials whose total ``grade`` equals ``target``.

    Every generator must have positive grade.
    """
    gens = sorted(gens, key=lambda g: g.key)
    out: List[Monomial] = []
    for g in gens:
        if grade(g) <= 0:
            raise ValueError("grades must be positive")

    def rec(idx, remaining, acc):
        if remaining == 0:
            out.append(tuple(acc))
            return
        if idx == len(gens):
            return
        g = gens[idx]
        w = grade(g)
        top = 1 if g.parity else remaining // w
        for e in range(min(top, remaining // w), 0, -1):
            acc.append((g, e))
            rec(idx + 1, remaining - e * w, acc)
            acc.pop()
        rec(idx + 1, remaining, acc)

    rec(0, target, [])
    return out


def sum_polys(polys: Iterable[Poly], truncation: Optional[int] = None) -> Poly:
    acc: Dict[Monomial, Fraction] = {}
    for p in polys:
        for m, c in p.terms.items():
            nc = acc.get(m, 0) + c
            if nc:
                acc[m] = nc
            else:
                del acc[m]
    return Poly(acc, truncation)


def apply_derivation(p: Poly, images: Mapping[Generator, Poly], odd: bool = True,
                     truncation: Optional[int] = None) -> Poly:
    """Extend ``g -> images[g]`` to a derivation (odd derivations pick up Koszul signs).

    Generators missing from ``images`` are sent to zero.
    """
    acc: Dict[Monomial, Fraction] = {}
    for m, c in p.terms.items():
        factors = expand_factors(m)
        for i, g in enumerate(factors):
            img = images.get(g)
            if img is None or img.is_zero():
                continue
            sign = 1
            if odd and sum(f.parity for f in factors[:i]) % 2:
                sign = -1
            left = Poly.product_of(factors[:i], sign * c)
            right = Poly.product_of(factors[i + 1:])
            term = left * img * right
            for mm, cc in term.terms.items():
                nc = acc.get(mm, 0) + cc
                if nc:
                    acc[mm] = nc
                else:
                    del acc[mm]
    return Poly(acc, truncation)
