"""Combinatorics of the simplex category.

Subsets of ``{1..n}`` are sorted tuples of ints.  A labeled block sequence is a
tuple of ``(block, label)`` pairs; read left to right it names the ordered
product of coordinates ``x_{block,label}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterator, List, Optional, Sequence, Tuple

Subset = Tuple[int, ...]
Block = Tuple[Subset, int]
BlockSeq = Tuple[Block, ...]
ParityFn = Callable[[int, int], int]


@dataclass(frozen=True)
class OrdinalMap:
    """A monotone map ``[m] -> [n]`` given by its list of values."""

    source: int
    target: int
    values: Tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != self.source + 1:
            raise ValueError("wrong number of values")
        prev = 0
        for v in self.values:
            if v < prev or v > self.target:
                raise ValueError(f"not a monotone map into [{self.target}]: {self.values}")
            prev = v

    @classmethod
    def identity(cls, n: int) -> "OrdinalMap":
        return cls(n, n, tuple(range(n + 1)))

    @classmethod
    def coface(cls, n: int, i: int) -> "OrdinalMap":
        """``delta_i : [n-1] -> [n]``, the injection missing ``i``."""
        if not 0 <= i <= n:
            raise ValueError("coface index out of range")
        return cls(n - 1, n, tuple(t if t < i else t + 1 for t in range(n)))

    @classmethod
    def codegeneracy(cls, n: int, j: int) -> "OrdinalMap":
        """``sigma_j : [n+1] -> [n]``, hitting ``j`` twice."""
        if not 0 <= j <= n:
            raise ValueError("codegeneracy index out of range")
        return cls(n + 1, n, tuple(t if t <= j else t - 1 for t in range(n + 2)))

    def __call__(self, t: int) -> int:
        return self.values[t]

    def compose(self, other: "OrdinalMap") -> "OrdinalMap":
        """``self o other``."""
        if other.target != self.source:
            raise ValueError("maps do not compose")
        return OrdinalMap(other.source, self.target, tuple(self.values[v] for v in other.values))

    def is_injective(self) -> bool:
        return len(set(self.values)) == len(self.values)

    def is_surjective(self) -> bool:
        return set(self.values) == set(range(self.target + 1))

    def epi_mono(self) -> Tuple["OrdinalMap", "OrdinalMap"]:
        """Factor ``self = mono o epi``."""
        image = sorted(set(self.values))
        k = len(image) - 1
        pos = {v: idx for idx, v in enumerate(image)}
        epi = OrdinalMap(self.source, k, tuple(pos[v] for v in self.values))
        mono = OrdinalMap(k, self.target, tuple(image))
        return epi, mono


def surjection_of_subset(alpha: Subset, n: int) -> OrdinalMap:
    """The surjection ``[n] -> [|alpha|]`` stepping up exactly at ``alpha``."""
    vals = []
    c = 0
    members = set(alpha)
    for t in range(n + 1):
        if t in members:
            c += 1
        vals.append(c)
    return OrdinalMap(n, len(alpha), tuple(vals))


def subset_of_surjection(eps: OrdinalMap) -> Subset:
    return tuple(t for t in range(1, eps.source + 1) if eps.values[t] != eps.values[t - 1])


def apply_ordinal_to_subset(theta: OrdinalMap, alpha: Subset) -> Tuple[Subset, bool]:
    """Elementwise image of ``alpha`` (a subset of ``{1..source}``).

    Returns the image intersected with ``{1..target}`` and whether the size
    dropped, either by a collision or by landing on 0.
    """
    for a in alpha:
        if not 1 <= a <= theta.source:
            raise ValueError(f"{alpha} is not a subset of 1..{theta.source}")
    image = sorted({theta(a) for a in alpha} - {0})
    return tuple(image), len(image) < len(alpha)


def dk_action(theta: OrdinalMap, alpha: Subset) -> Optional[Tuple[str, Subset]]:
    """Action of ``theta : [m] -> [n]`` on the summand indexed by ``alpha``.

    ``alpha`` is a subset of ``{1..n}``.  The answer is ``("id", beta)`` when
    the summand maps identically onto the one indexed by ``beta``,
    ``("boundary", beta)`` when the boundary map intervenes, and None when the
    component vanishes.
    """
    comp = surjection_of_subset(alpha, theta.target).compose(theta)
    epi, mono = comp.epi_mono()
    beta = subset_of_surjection(epi)
    k = mono.target
    if mono.source == k:
        return ("id", beta)
    if mono.source == k - 1 and mono.values == tuple(range(1, k + 1)):
        return ("boundary", beta)
    return None


def face_image(alpha: Subset, i: int) -> Subset:
    """``delta_i`` applied elementwise (shift every element ``>= i`` up)."""
    return tuple(a if a < i else a + 1 for a in alpha)


def degeneracy_image(alpha: Subset, j: int) -> Subset:
    """``sigma_j`` applied elementwise; callers make sure it is injective on alpha."""
    return tuple(a if a <= j else a - 1 for a in alpha)


# ---------------------------------------------------------------------------
# block sequences


def classify_sequence(blocks: Sequence[Subset], n: int) -> str:
    """One of ``"non-covering"``, ``"overlap"`` or ``"partition"``."""
    seen = set()
    total = 0
    for b in blocks:
        seen.update(b)
        total += len(b)
    if seen != set(range(1, n + 1)):
        return "non-covering"
    return "partition" if total == n else "overlap"


def allowed_transposition(seq: BlockSeq, j: int) -> Optional[BlockSeq]:
    """Swap ``j`` and ``j+1`` if they sit in different blocks, else None."""
    rj = rj1 = None
    for r, (b, _) in enumerate(seq):
        if j in b:
            rj = r
        if j + 1 in b:
            rj1 = r
    if rj is None or rj1 is None or rj == rj1:
        return None
    out = list(seq)
    for r in (rj, rj1):
        b, lab = seq[r]
        nb = tuple(sorted(j + 1 if a == j else j if a == j + 1 else a for a in b))
        out[r] = (nb, lab)
    return tuple(out)


def _koszul_of_permutation(parities: Sequence[int], perm: Sequence[int]) -> int:
    """Sign of reordering factors ``f_0..f_k`` into ``f_perm[0], f_perm[1], ...``."""
    sign = 1
    for a in range(len(perm)):
        for b in range(a + 1, len(perm)):
            if perm[a] > perm[b] and parities[perm[a]] and parities[perm[b]]:
                sign = -sign
    return sign


def unravel(seq: BlockSeq, n: int, parity: Optional[ParityFn] = None) -> Tuple[BlockSeq, int]:
    """Bring a labeled partition to canonical form.

    Returns ``(canonical, sign)`` where ``sign`` is +1 or -1, or 0 when the
    class vanishes (two equal blocks whose swap costs a sign).  ``parity`` maps
    ``(block size, label)`` to the super parity of the coordinate; by default
    everything is even.
    """
    blocks = [b for b, _ in seq]
    if classify_sequence(blocks, n) != "partition":
        raise ValueError(f"not a labeled partition of 1..{n}: {seq}")
    par = parity or (lambda k, lab: 0)
    parities = [par(len(b), lab) % 2 for b, lab in seq]
    order = sorted(range(len(seq)), key=lambda r: (len(seq[r][0]), max(seq[r][0])))
    sign = _koszul_of_permutation(parities, order)
    cur = tuple(seq[r] for r in order)
    parities = [parities[r] for r in order]

    where = {}
    for r, (b, _) in enumerate(cur):
        for a in b:
            where[a] = r
    cur_list = [list(b) for b, _ in cur]
    labels = [lab for _, lab in cur]
    j = 1
    while j < n:
        r, r2 = where[j], where[j + 1]
        if r2 < r:
            # tau_j: j moves to the earlier block, j+1 to the later one
            cur_list[r][cur_list[r].index(j)] = j + 1
            cur_list[r2][cur_list[r2].index(j + 1)] = j
            where[j], where[j + 1] = r2, r
            sign = -sign
            j = 1
        else:
            j += 1
    blocks_final = [tuple(sorted(b)) for b in cur_list]

    # sort labels inside runs of equal block size (blocks stay in place)
    changed = True
    while changed:
        changed = False
        for r in range(len(labels) - 1):
            k = len(blocks_final[r])
            if len(blocks_final[r + 1]) != k:
                continue
            swap_sign = (-1) ** (k + parities[r] * parities[r + 1])
            if labels[r] == labels[r + 1]:
                if swap_sign == -1:
                    return tuple(zip(blocks_final, labels)), 0
                continue
            if labels[r] > labels[r + 1]:
                labels[r], labels[r + 1] = labels[r + 1], labels[r]
                parities[r], parities[r + 1] = parities[r + 1], parities[r]
                sign *= swap_sign
                changed = True
    return tuple(zip(blocks_final, labels)), sign


def is_canonical(seq: BlockSeq, n: int) -> bool:
    start = 1
    prev = None
    for b, lab in seq:
        if b != tuple(range(start, start + len(b))):
            return False
        start += len(b)
        if prev is not None:
            pk, plab = prev
            if len(b) < pk or (len(b) == pk and lab < plab):
                return False
        prev = (len(b), lab)
    return start == n + 1


def canonical_sequence(sizes: Sequence[int], labels: Sequence[int]) -> BlockSeq:
    out = []
    start = 1
    for k, lab in zip(sizes, labels):
        out.append((tuple(range(start, start + k)), lab))
        start += k
    return tuple(out)


# ---------------------------------------------------------------------------
# enumeration


def subsets(n: int, k: Optional[int] = None) -> Iterator[Subset]:
    """Nonempty subsets of ``{1..n}`` ordered by size then lexicographically."""
    sizes = [k] if k is not None else range(1, n + 1)
    for s in sizes:
        yield from combinations(range(1, n + 1), s)


def integer_partitions(n: int, max_part: Optional[int] = None) -> Iterator[Tuple[int, ...]]:
    """Partitions of ``n`` as non-decreasing tuples."""
    if max_part is None:
        max_part = n

    def rec(remaining, largest):
        if remaining == 0:
            yield ()
            return
        for part in range(min(remaining, largest), 0, -1):
            for rest in rec(remaining - part, part):
                yield rest + (part,)

    for p in rec(n, max_part):
        yield tuple(sorted(p))


def set_partitions(n: int) -> Iterator[Tuple[Subset, ...]]:
    """Set partitions of ``{1..n}``, blocks ordered by their minimum."""

    def rec(i, blocks):
        if i > n:
            yield tuple(tuple(b) for b in blocks)
            return
        for b in blocks:
            b.append(i)
            yield from rec(i + 1, blocks)
            b.pop()
        blocks.append([i])
        yield from rec(i + 1, blocks)
        blocks.pop()

    if n == 0:
        yield ()
        return
    yield from rec(1, [])


def labeled_partitions(n: int, ranks: Sequence[int]) -> Iterator[BlockSeq]:
    """Labeled set partitions of ``{1..n}`` (blocks ordered by minimum).

    ``ranks[k-1]`` is the number of labels available on a block of size k.
    """

    def rank_of(k):
        return ranks[k - 1] if k <= len(ranks) else 0

    for part in set_partitions(n):
        choices = [range(rank_of(len(b))) for b in part]
        if any(len(c) == 0 for c in choices):
            continue

        def rec(idx, acc):
            if idx == len(part):
                yield tuple(acc)
                return
            for lab in choices[idx]:
                acc.append((part[idx], lab))
                yield from rec(idx + 1, acc)
                acc.pop()

        yield from rec(0, [])


def canonical_labeled_partitions(n: int, ranks: Sequence[int],
                                 parity: Optional[ParityFn] = None) -> List[BlockSeq]:
    """All canonical labeled partitions that do not vanish.

    A repeated label on two blocks of size k vanishes when ``k + parity`` is
    odd (an odd square).
    """
    par = parity or (lambda k, lab: 0)

    def rank_of(k):
        return ranks[k - 1] if k <= len(ranks) else 0

    out = []
    for lam in integer_partitions(n):
        if any(rank_of(k) == 0 for k in lam):
            continue

        def rec(idx, acc):
            if idx == len(lam):
                yield tuple(acc)
                return
            k = lam[idx]
            lo = 0
            if idx > 0 and lam[idx - 1] == k:
                prev = acc[-1]
                lo = prev if (k + par(k, prev)) % 2 == 0 else prev + 1
            for lab in range(lo, rank_of(k)):
                acc.append(lab)
                yield from rec(idx + 1, acc)
                acc.pop()

        for labs in rec(0, []):
            out.append(canonical_sequence(lam, labs))
    return out


def decalage_reindex(p: int, q: int, direction: str, kind: str, index: int) -> int:
    """Reindex a face or degeneracy of one factor of ``[p] * [q] = [p+q+1]``.

    ``direction`` is ``"left"`` for operators on the ``[p]`` factor (vertices
    0..p) and ``"right"`` for the ``[q]`` factor (vertices p+1..p+q+1).
    """
    if kind not in ("face", "degeneracy"):
        raise ValueError(f"unknown kind {kind!r}")
    if direction == "left":
        level = p
        shift = 0
    elif direction == "right":
        level = q
        shift = p + 1
    else:
        raise ValueError(f"unknown direction {direction!r}")
    if not 0 <= index <= level:
        raise ValueError(f"{kind} index {index} out of range for level {level}")
    return index + shift
