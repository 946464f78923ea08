"""Symmetric-group machinery: permutations, cycle types, centralizers,
conjugacy classes, and the census of inequivalent pairs.

Eigenvalues of a convex combination of permutation matrices are invariant
under conjugating every term by one fixed permutation, and under reversing
the order of the terms.  The pair census enumerates one representative
``(sigma, tau)`` per equivalence class of ordered pairs under simultaneous
conjugation and reversal, which is what makes exhaustive pair scans feasible:
the class count grows like ``n!`` instead of ``(n!)^2``.

Orbit enumeration under centralizer generators stands in for explicit
double-coset routines: for a fixed canonical ``sigma``, the orbits of its
centralizer acting by conjugation on the conjugacy class of ``tau`` biject
with the double cosets of the two centralizers, so a breadth-first closure
per orbit is all that is needed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import permutations as _arrangements
from typing import Iterator, Sequence


class Permutation:
    """A bijection on {0, ..., n-1}, stored as a tuple of images.

    ``p.images[i]`` is the image of ``i``.  External formats (cycle strings,
    one-line exports) are 1-based; everything internal is 0-based.
    """

    __slots__ = ("images",)

    def __init__(self, images: Sequence[int]):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation of 0..{len(images) - 1}: {images!r}")
        self.images = images

    @property
    def n(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(n))

    @classmethod
    def from_one_line(cls, images: Sequence[int]) -> "Permutation":
        """Build from a 1-based one-line array (the on-disk format)."""
        return cls(i - 1 for i in images)

    def one_line(self) -> tuple[int, ...]:
        """1-based one-line array, for export."""
        return tuple(i + 1 for i in self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition: ``(p * q)(i) = p(q(i))``."""
        return compose(self, other)

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(inv)

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        """Disjoint cycles, each starting at its least element, sorted by it."""
        seen = [False] * self.n
        out = []
        for start in range(self.n):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            j = self.images[start]
            while j != start:
                cyc.append(j)
                seen[j] = True
                j = self.images[j]
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def is_even(self) -> bool:
        return (self.n - len(self.cycles(include_fixed=True))) % 2 == 0

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other: "Permutation") -> bool:
        return self.images < other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Permutation({format_cycles(self)!r}, n={self.n})"


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Composition ``p after q``: result(i) = p(q(i))."""
    if p.n != q.n:
        raise ValueError(f"degree mismatch: {p.n} != {q.n}")
    pi = p.images
    return Permutation([pi[j] for j in q.images])


def conjugate(p: Permutation, g: Permutation) -> Permutation:
    """Conjugation ``g p g^{-1}``; preserves the cycle type."""
    if p.n != g.n:
        raise ValueError(f"degree mismatch: {p.n} != {g.n}")
    return Permutation(_conjugate_images(p.images, g.images))


def _conjugate_images(p: tuple[int, ...], g: tuple[int, ...]) -> list[int]:
    # (g p g^-1)(g[i]) = g[p[i]]; no explicit inverse needed.
    out = [0] * len(p)
    for i, pi in enumerate(p):
        out[g[i]] = g[pi]
    return out


@dataclass(frozen=True, order=True)
class CycleType:
    """Descending partition of n listing disjoint-cycle lengths.

    Ordering is lexicographic on the descending parts, so e.g. the n-cycle
    type is the greatest type of degree n and the identity type the least.
    """

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(self.parts)
        if not parts or any(k < 1 for k in parts):
            raise ValueError(f"invalid cycle type parts: {parts!r}")
        if list(parts) != sorted(parts, reverse=True):
            raise ValueError(f"parts must be non-increasing: {parts!r}")
        object.__setattr__(self, "parts", parts)

    @property
    def degree(self) -> int:
        return sum(self.parts)

    def multiplicities(self) -> dict[int, int]:
        mult: dict[int, int] = {}
        for k in self.parts:
            mult[k] = mult.get(k, 0) + 1
        return mult

    def centralizer_order(self) -> int:
        """|C_{S_n}(p)| for p of this type: prod_k k^{m_k} * m_k!."""
        z = 1
        for k, m in self.multiplicities().items():
            z *= k**m * math.factorial(m)
        return z

    def class_size(self) -> int:
        return math.factorial(self.degree) // self.centralizer_order()

    def is_even(self) -> bool:
        return (self.degree - len(self.parts)) % 2 == 0

    def __repr__(self) -> str:
        return f"CycleType{self.parts}"


def cycle_type(p: Permutation) -> CycleType:
    lengths = sorted((len(c) for c in p.cycles(include_fixed=True)), reverse=True)
    return CycleType(tuple(lengths))


def all_cycle_types(n: int) -> list[CycleType]:
    """All cycle types of degree n, greatest first."""
    if n < 1:
        raise ValueError("degree must be positive")

    def rec(remaining: int, maxpart: int) -> Iterator[tuple[int, ...]]:
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, maxpart), 0, -1):
            for rest in rec(remaining - first, first):
                yield (first,) + rest

    return [CycleType(parts) for parts in rec(n, n)]


def canonical_cycle_form(t: CycleType) -> Permutation:
    """The representative of type t whose cycles fill consecutive index
    blocks in descending length order, each block a forward cycle."""
    images = []
    start = 0
    for k in t.parts:
        images.extend(range(start + 1, start + k))
        images.append(start)
        start += k
    return Permutation(images)


def conjugator_to_canonical(p: Permutation) -> Permutation:
    """Some g with ``conjugate(p, g) == canonical_cycle_form(cycle_type(p))``.

    Any cycle-order choice works; ties between equal-length cycles are broken
    by least element so the output is deterministic.
    """
    cycles = sorted(p.cycles(include_fixed=True), key=lambda c: (-len(c), c[0]))
    g = [0] * p.n
    pos = 0
    for cyc in cycles:
        for elem in cyc:
            g[elem] = pos
            pos += 1
    return Permutation(g)


def centralizer_generators(p: Permutation) -> list[Permutation]:
    """Generators of the centralizer of a permutation in canonical cycle form.

    One rotation per cycle block plus one swap per adjacent pair of
    equal-length blocks; together they generate the full centralizer, of
    order ``prod_k k^{m_k} * m_k!``.
    """
    t = cycle_type(p)
    if p != canonical_cycle_form(t):
        raise ValueError("centralizer_generators requires canonical cycle form")
    n = p.n
    gens: list[Permutation] = []
    starts = []
    pos = 0
    for k in t.parts:
        starts.append(pos)
        pos += k
    for k, s in zip(t.parts, starts):
        if k > 1:
            rot = list(range(n))
            for i in range(k):
                rot[s + i] = s + (i + 1) % k
            gens.append(Permutation(rot))
    for (k1, s1), (k2, s2) in zip(zip(t.parts, starts), zip(t.parts[1:], starts[1:])):
        if k1 == k2:
            swap = list(range(n))
            for i in range(k1):
                swap[s1 + i] = s2 + i
                swap[s2 + i] = s1 + i
            gens.append(Permutation(swap))
    return gens


def conjugacy_class(t: CycleType) -> Iterator[Permutation]:
    """All permutations of cycle type t, each exactly once."""
    for images in _class_images(t.degree, t.parts):
        yield Permutation(images)


def _class_images(n: int, parts: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    """Image tuples of the conjugacy class, in no particular order.

    The cycle through the least remaining element gets each distinct
    remaining length once; anchoring cycles at their minimum makes every
    permutation appear exactly once.
    """
    images = [0] * n
    mult: dict[int, int] = {}
    for k in parts:
        mult[k] = mult.get(k, 0) + 1

    def rec(remaining: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        if not remaining:
            yield tuple(images)
            return
        anchor = remaining[0]
        rest = remaining[1:]
        for length in sorted(mult):
            mult[length] -= 1
            if mult[length] == 0:
                del mult[length]
            if length == 1:
                images[anchor] = anchor
                yield from rec(rest)
            else:
                for tail in _arrangements(rest, length - 1):
                    images[anchor] = tail[0]
                    for a, b in zip(tail, tail[1:]):
                        images[a] = b
                    images[tail[-1]] = anchor
                    used = set(tail)
                    yield from rec(tuple(x for x in rest if x not in used))
            mult[length] = mult.get(length, 0) + 1

    yield from rec(tuple(range(n)))


# ---------------------------------------------------------------------------
# Cycle-notation parsing and printing (1-based, as in "(145)(23)").
# ---------------------------------------------------------------------------

def parse_cycles(text: str, n: int) -> Permutation:
    """Parse cycle notation into a permutation of degree n.

    Whitespace-insensitive; fixed points may be omitted; "()" or "" is the
    identity.  Points are single digits unless commas are used inside a
    cycle, which is required to express points >= 10.
    """
    if n < 1:
        raise ValueError("degree must be positive")
    s = "".join(text.split())
    cycles: list[list[int]] = []
    i = 0
    while i < len(s):
        if s[i] != "(":
            raise ValueError(f"expected '(' at position {i} in {text!r}")
        j = s.find(")", i)
        if j < 0:
            raise ValueError(f"unclosed cycle in {text!r}")
        body = s[i + 1 : j]
        if body:
            if "," in body:
                points = [int(tok) for tok in body.split(",") if tok != ""]
                if len(points) != body.count(",") + 1:
                    raise ValueError(f"empty entry in cycle {body!r}")
            else:
                if not body.isdigit():
                    raise ValueError(f"bad cycle body {body!r}")
                points = [int(ch) for ch in body]
            if len(points) > 1:
                cycles.append(points)
            elif points:
                cycles.append(points)
        i = j + 1
    images = list(range(n))
    seen: set[int] = set()
    for cyc in cycles:
        for pt in cyc:
            if not 1 <= pt <= n:
                raise ValueError(f"point {pt} out of range 1..{n}")
            if pt - 1 in seen:
                raise ValueError(f"point {pt} repeated; cycles must be disjoint")
            seen.add(pt - 1)
        for a, b in zip(cyc, cyc[1:]):
            images[a - 1] = b - 1
        images[cyc[-1] - 1] = cyc[0] - 1
    return Permutation(images)


def format_cycles(p: Permutation) -> str:
    """Cycle notation; fixed points omitted, identity printed as "()"."""
    cycles = p.cycles()
    if not cycles:
        return "()"
    sep = "," if p.n > 9 else ""
    return "".join("(" + sep.join(str(x + 1) for x in cyc) + ")" for cyc in cycles)


# ---------------------------------------------------------------------------
# The pair census.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PairClass:
    """Canonical representative of one equivalence class of ordered pairs."""

    sigma: Permutation
    tau: Permutation
    type_sigma: CycleType
    type_tau: CycleType
    class_index: int


@dataclass
class PairCensus:
    """Census of pair classes for one degree.

    ``a_n`` counts simultaneous-conjugation orbits on ordered pairs, ``b_n``
    those whose components share a cycle type; the class count satisfies
    ``count_total == (a_n + b_n) / 2``.
    """

    n: int
    classes: list[PairClass]
    a_n: int
    b_n: int
    count_total: int
    _types: list[CycleType] = field(repr=False, default_factory=list)
    _index: dict = field(repr=False, default_factory=dict)
    _gens: dict = field(repr=False, default_factory=dict)

    def class_by_index(self, idx: int) -> PairClass:
        return self.classes[idx]


def _orbit_partition(
    elements_sorted: list[tuple[int, ...]],
    gens: list[tuple[tuple[int, ...], tuple[int, ...]]],
) -> tuple[list[tuple[int, ...]], dict[tuple[int, ...], int]]:
    """Partition a conjugacy class into orbits under a list of conjugators.

    ``gens`` holds (g, g_inverse) image tuples.  Elements must be sorted so
    each orbit's representative (its seed) is its lexicographic minimum.
    """
    orbit_of: dict[tuple[int, ...], int] = {}
    reps: list[tuple[int, ...]] = []
    for seed in elements_sorted:
        if seed in orbit_of:
            continue
        oid = len(reps)
        reps.append(seed)
        orbit_of[seed] = oid
        stack = [seed]
        while stack:
            p = stack.pop()
            for g, ginv in gens:
                q = tuple([g[p[k]] for k in ginv])
                if q not in orbit_of:
                    orbit_of[q] = oid
                    stack.append(q)
    return reps, orbit_of


def _gen_pairs(perms: list[Permutation]) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    return [(g.images, g.inverse().images) for g in perms]


def _census_blocks(n: int):
    """Yield per-type-pair orbit data: (i, j, reps).

    ``i`` indexes sigma's type, ``j`` tau's, both into ``all_cycle_types(n)``
    (so i <= j means sigma's type is the greater).  Restricting to i <= j is
    the reversal reduction: a pair whose first component has the lesser type
    is classified through its reversal.  Same-type blocks keep one class per
    centralizer orbit; that convention is what the published class counts
    tally, even though for a few same-type orbits (e.g. (c, c^2) vs (c, c^3)
    for a 5-cycle c) the reversal maps one orbit onto a different one.

    Blocks stream in j-major order so each conjugacy class is generated once.
    """
    types = all_cycle_types(n)
    canon = [canonical_cycle_form(t) for t in types]
    gens = [_gen_pairs(centralizer_generators(c)) for c in canon]
    for j, tj in enumerate(types):
        class_j = sorted(_class_images(n, tj.parts))
        for i in range(j + 1):
            reps, _orbit_of = _orbit_partition(class_j, gens[i])
            yield i, j, reps


def inequivalent_pairs(n: int) -> PairCensus:
    """Enumerate one representative pair per equivalence class.

    Classes are indexed in (sigma-type, tau-type, representative) order,
    deterministic across runs.
    """
    if n < 2:
        raise ValueError("degree must be at least 2")
    types = all_cycle_types(n)
    blocks: dict[tuple[int, int], list[tuple[int, ...]]] = {}
    a_n = 0
    b_n = 0
    for i, j, reps in _census_blocks(n):
        blocks[(i, j)] = reps
        if i == j:
            a_n += len(reps)
            b_n += len(reps)
        else:
            a_n += 2 * len(reps)
    classes: list[PairClass] = []
    index: dict = {}
    for i, ti in enumerate(types):
        sigma = canonical_cycle_form(ti)
        for j in range(i, len(types)):
            reps = blocks.get((i, j))
            if reps is None:
                continue
            for rep in reps:
                idx = len(classes)
                classes.append(
                    PairClass(sigma, Permutation(rep), ti, types[j], idx)
                )
                index[(i, j, rep)] = idx
    census = PairCensus(
        n=n,
        classes=classes,
        a_n=a_n,
        b_n=b_n,
        count_total=len(classes),
        _types=types,
        _index=index,
    )
    return census


def count_inequivalent_pairs(n: int) -> tuple[int, int, int]:
    """(count_total, a_n, b_n) without materializing the class list."""
    if n < 2:
        raise ValueError("degree must be at least 2")
    total = 0
    a_n = 0
    b_n = 0
    for i, j, reps in _census_blocks(n):
        total += len(reps)
        if i == j:
            a_n += len(reps)
            b_n += len(reps)
        else:
            a_n += 2 * len(reps)
    return total, a_n, b_n


def _orbit_lex_min(
    x: tuple[int, ...],
    gens: list[tuple[tuple[int, ...], tuple[int, ...]]],
) -> tuple[int, ...]:
    best = x
    seen = {x}
    stack = [x]
    while stack:
        p = stack.pop()
        for g, ginv in gens:
            q = tuple([g[p[k]] for k in ginv])
            if q not in seen:
                seen.add(q)
                stack.append(q)
                if q < best:
                    best = q
    return best


def _census_gens(census: PairCensus, i: int):
    gens = census._gens.get(i)
    if gens is None:
        canon = canonical_cycle_form(census._types[i])
        gens = _gen_pairs(centralizer_generators(canon))
        census._gens[i] = gens
    return gens


def classify_pair(sigma: Permutation, tau: Permutation, census: PairCensus) -> int:
    """Class index of the census representative equivalent to (sigma, tau).

    The pair is reversed first when that puts the greater cycle type in
    front, mirroring how the census is keyed; equal-type pairs are
    classified in the orientation given.
    """
    if sigma.n != census.n or tau.n != census.n:
        raise ValueError(f"degree mismatch with census for n={census.n}")
    ts, tt = cycle_type(sigma), cycle_type(tau)
    if ts < tt:
        sigma, tau = tau, sigma
        ts, tt = tt, ts
    i = census._types.index(ts)
    j = census._types.index(tt)
    gens = _census_gens(census, i)
    g = conjugator_to_canonical(sigma)
    key = _orbit_lex_min(conjugate(tau, g).images, gens)
    return census._index[(i, j, key)]


def census_records(census: PairCensus) -> Iterator[dict]:
    """JSON-ready records, one per class; one-line arrays are 1-based."""
    for c in census.classes:
        yield {
            "n": census.n,
            "classIndex": c.class_index,
            "sigma": list(c.sigma.one_line()),
            "tau": list(c.tau.one_line()),
            "typeSigma": list(c.type_sigma.parts),
            "typeTau": list(c.type_tau.parts),
        }
