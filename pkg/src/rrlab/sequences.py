"""Finite sequences over ``{0, ..., d-1}`` and the predicates on sets of them.

Sequences are plain tuples of ints.  The alphabet ``d`` travels with
:class:`SeqSet`; functions that only need the digits take bare tuples.
Canonical order on sequences is by length, then lexicographic.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Callable, Iterable, Iterator, Mapping, Sequence

__all__ = [
    "Seq",
    "SeqSet",
    "seq_key",
    "is_prefix",
    "meet",
    "passing_number",
    "prec",
    "closure",
    "levels",
    "is_transversal",
    "is_antichain",
    "is_meet_closed",
    "is_closed_by_levels",
    "degrees",
    "SetReport",
    "classify_set",
    "PROPERTIES",
    "MapCheck",
    "check_map_property",
    "strong_similarity_map",
    "strongly_similar_subsets",
    "is_strong_subtree",
    "full_tree",
    "StrongDiagonalization",
    "strong_diagonalization",
]

Seq = tuple[int, ...]


def seq_key(s: Seq) -> tuple[int, Seq]:
    return (len(s), s)


@dataclass(frozen=True)
class SeqSet:
    d: int
    elements: frozenset[Seq]

    def __post_init__(self) -> None:
        if self.d < 2:
            raise ValueError(f"alphabet size must be at least 2, got {self.d}")
        for s in self.elements:
            if any(not 0 <= c < self.d for c in s):
                raise ValueError(f"sequence {s} has a digit outside [0, {self.d})")

    @classmethod
    def of(cls, d: int, elements: Iterable[Sequence[int]]) -> "SeqSet":
        return cls(d, frozenset(tuple(s) for s in elements))

    def sorted(self) -> list[Seq]:
        return sorted(self.elements, key=seq_key)

    def __iter__(self) -> Iterator[Seq]:
        return iter(self.sorted())

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, s: object) -> bool:
        return s in self.elements


def _elements(s: SeqSet | Iterable[Seq]) -> list[Seq]:
    if isinstance(s, SeqSet):
        return s.sorted()
    return sorted({tuple(x) for x in s}, key=seq_key)


def is_prefix(x: Seq, y: Seq) -> bool:
    return len(x) <= len(y) and y[: len(x)] == x


def meet(x: Seq, y: Seq) -> Seq:
    """Longest common prefix."""
    return x[: _meet_len(x, y)]


def _meet_len(x: Seq, y: Seq) -> int:
    # binary search with slice comparisons: images under diagonalization run long
    n = min(len(x), len(y))
    if x[:n] == y[:n]:
        return n
    lo, hi = 0, n
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if x[:mid] == y[:mid]:
            lo = mid
        else:
            hi = mid
    return lo


def passing_number(y: Seq, x: Seq) -> int:
    if len(y) <= len(x):
        raise ValueError(f"passing number needs |x| < |y|, got |x|={len(x)}, |y|={len(y)}")
    return y[len(x)]


def prec(x: Seq, y: Seq) -> bool:
    """``x`` branches off to the left of ``y``; only defined for incomparable sequences."""
    if is_prefix(x, y) or is_prefix(y, x):
        raise ValueError(f"{x} and {y} are comparable")
    k = _meet_len(x, y)
    return x[k] < y[k]


def closure(s: SeqSet | Iterable[Seq]) -> set[Seq]:
    elems = _elements(s)
    out = set(elems)
    for x, y in combinations(elems, 2):
        out.add(meet(x, y))
    return out


def levels(s: SeqSet | Iterable[Seq]) -> set[int]:
    return {len(x) for x in _elements(s)}


def is_transversal(s: SeqSet | Iterable[Seq]) -> bool:
    elems = _elements(s)
    return len({len(x) for x in elems}) == len(elems)


def is_antichain(s: SeqSet | Iterable[Seq]) -> bool:
    elems = _elements(s)
    return not any(is_prefix(x, y) for x, y in combinations(elems, 2))


def is_meet_closed(s: SeqSet | Iterable[Seq]) -> bool:
    elems = set(_elements(s))
    return all(meet(x, y) in elems for x, y in combinations(elems, 2))


def is_closed_by_levels(s: SeqSet | Iterable[Seq]) -> bool:
    elems = set(_elements(s))
    lv = sorted({len(x) for x in elems})
    return all(t[:l] in elems for t in elems for l in lv if l <= len(t))


def degrees(s: SeqSet | Iterable[Seq]) -> dict[Seq, int]:
    """Number of immediate successors of each element inside the set itself."""
    elems = set(_elements(s))
    lv = sorted({len(x) for x in elems}, reverse=True)
    out = {x: 0 for x in elems}
    for y in elems:
        for l in lv:
            if l < len(y) and y[:l] in elems:
                out[y[:l]] += 1
                break
    return out


def _strong_conditions(elems: list[Seq]) -> bool:
    """The two extra clauses that turn a diagonal set into a strongly diagonal one."""
    split_meets = set()
    for x, y in combinations(elems, 2):
        k = _meet_len(x, y)
        if x[k] not in (0, 1) or y[k] not in (0, 1):
            return False
        split_meets.add(x[:k])
    for w in split_meets:
        lw = len(w)
        for z in elems:
            if len(z) > lw and z[:lw] != w and z[lw] != 0:
                return False
    return True


@dataclass
class SetReport:
    closure: set[Seq]
    levels: set[int]
    transversal: bool
    closure_transversal: bool
    antichain: bool
    meet_closed: bool
    closed_by_levels: bool
    diagonal: bool
    strongly_diagonal: bool

    def flags(self) -> dict[str, bool]:
        return {
            "transversal": self.transversal,
            "closure_transversal": self.closure_transversal,
            "antichain": self.antichain,
            "meet_closed": self.meet_closed,
            "closed_by_levels": self.closed_by_levels,
            "diagonal": self.diagonal,
            "strongly_diagonal": self.strongly_diagonal,
        }


def classify_set(s: SeqSet | Iterable[Seq]) -> SetReport:
    elems = _elements(s)
    cl = closure(elems)
    antichain = is_antichain(elems)
    cl_transversal = is_transversal(cl)
    diagonal = antichain and cl_transversal and all(v <= 2 for v in degrees(cl).values())
    strongly = diagonal and _strong_conditions(elems)
    return SetReport(
        closure=cl,
        levels=levels(elems),
        transversal=is_transversal(elems),
        closure_transversal=cl_transversal,
        antichain=antichain,
        meet_closed=len(cl) == len(elems),
        closed_by_levels=is_closed_by_levels(elems),
        diagonal=diagonal,
        strongly_diagonal=strongly,
    )


# --- properties of maps between sequence sets -------------------------------

PROPERTIES = ("Order", "Level", "Level-imp", "Pnp", "Pnp-strong", "Lexico")


@dataclass
class MapCheck:
    ok: bool
    witness: tuple[Seq, ...] | None = None

    def __bool__(self) -> bool:
        return self.ok


def _check_pairs_of_pairs(R: list[Seq], f: Mapping[Seq, Seq], key: Callable, test: Callable) -> MapCheck:
    # group ordered pairs by the value the clause depends on; quantify over groups
    groups: dict = {}
    for x in R:
        for y in R:
            groups.setdefault(key(x, y), (x, y))
    items = list(groups.items())
    for ka, (x, y) in items:
        for kb, (z, u) in items:
            if not test(ka, kb):
                return MapCheck(False, (x, y, z, u))
    return MapCheck(True)


def check_map_property(f: Mapping[Seq, Seq], R: SeqSet | Iterable[Seq], prop: str) -> MapCheck:
    """Evaluate one map property on every tuple drawn from ``R``.

    The witness on failure is ``(x, y, z, u)`` for Order, Level and
    Level-imp, ``(x, z)`` for Pnp, ``(x, y, z)`` for Pnp-strong and
    ``(x, y)`` for Lexico.
    """
    elems = _elements(R)
    missing = [x for x in elems if x not in f]
    if missing:
        raise KeyError(f"{missing[0]} is outside the domain of the map")
    if prop not in PROPERTIES:
        raise ValueError(f"unknown property {prop!r}; expected one of {PROPERTIES}")

    if prop == "Order":
        def key(x, y):
            return (meet(x, y), meet(f[x], f[y]))

        def test(a, b):
            return is_prefix(a[0], b[0]) == is_prefix(a[1], b[1])
        return _check_pairs_of_pairs(elems, f, key, test)

    if prop in ("Level", "Level-imp"):
        def key(x, y):
            return (_meet_len(x, y), _meet_len(f[x], f[y]))

        if prop == "Level":
            def test(a, b):
                return (a[0] < b[0]) == (a[1] < b[1])
        else:
            def test(a, b):
                return not a[0] < b[0] or a[1] < b[1]
        return _check_pairs_of_pairs(elems, f, key, test)

    if prop == "Pnp":
        for x in elems:
            fx = len(f[x])
            for z in elems:
                if len(z) > len(x):
                    fz = f[z]
                    if len(fz) <= fx or z[len(x)] != fz[fx]:
                        return MapCheck(False, (x, z))
        return MapCheck(True)

    if prop == "Pnp-strong":
        seen: dict[tuple[int, int], tuple[Seq, Seq]] = {}
        for x in elems:
            for y in elems:
                seen.setdefault((_meet_len(x, y), _meet_len(f[x], f[y])), (x, y))
        for (k, fk), (x, y) in seen.items():
            for z in elems:
                if len(z) > k:
                    fz = f[z]
                    if len(fz) <= fk or z[k] != fz[fk]:
                        return MapCheck(False, (x, y, z))
        return MapCheck(True)

    # Lexico
    for x in elems:
        for y in elems:
            if x == y or is_prefix(x, y) or is_prefix(y, x):
                continue
            if prec(x, y):
                fx, fy = f[x], f[y]
                if is_prefix(fx, fy) or is_prefix(fy, fx) or not prec(fx, fy):
                    return MapCheck(False, (x, y))
    return MapCheck(True)


def _length_profile(elems: list[Seq]) -> list[int]:
    counts: dict[int, int] = {}
    for x in elems:
        counts[len(x)] = counts.get(len(x), 0) + 1
    return [counts[l] for l in sorted(counts)]


def strong_similarity_map(R: SeqSet | Iterable[Seq], S: SeqSet | Iterable[Seq]) -> dict[Seq, Seq] | None:
    """The strong similarity ``R -> S`` if there is one.

    Level and Lexico pin the only candidate: both sets sorted by length then
    lexicographically, zipped.  The candidate is then verified.
    """
    if isinstance(R, SeqSet) and isinstance(S, SeqSet) and R.d != S.d:
        return None
    r, s = _elements(R), _elements(S)
    if len(r) != len(s) or _length_profile(r) != _length_profile(s):
        return None
    f = dict(zip(r, s))
    for prop in ("Level", "Pnp-strong", "Order"):
        if not check_map_property(f, r, prop):
            return None
    return f


def strongly_similar_subsets(F: SeqSet | Iterable[Seq], T: SeqSet | Iterable[Seq]) -> list[tuple[Seq, ...]]:
    """All subsets of the finite set ``T`` strongly similar to ``F``, canonically sorted.

    Only finite ``T`` can be searched; each subset is a tuple in canonical order.
    """
    fe, te = _elements(F), _elements(T)
    profile = _length_profile(fe)
    by_len: dict[int, list[Seq]] = {}
    for t in te:
        by_len.setdefault(len(t), []).append(t)
    lens = sorted(by_len)
    out: list[tuple[Seq, ...]] = []

    def pick(level_choice: tuple[int, ...]) -> Iterator[tuple[Seq, ...]]:
        pools = [combinations(by_len[l], c) for l, c in zip(level_choice, profile)]
        for parts in product(*pools):
            yield tuple(x for part in parts for x in part)

    for level_choice in combinations(lens, len(profile)):
        if any(len(by_len[l]) < c for l, c in zip(level_choice, profile)):
            continue
        for cand in pick(level_choice):
            if strong_similarity_map(fe, cand) is not None:
                out.append(tuple(sorted(cand, key=seq_key)))
    return sorted(out, key=lambda c: [seq_key(x) for x in c])


def full_tree(d: int, depth: int) -> SeqSet:
    """Every sequence over ``d`` of length at most ``depth``."""
    return SeqSet(d, frozenset(x for l in range(depth + 1) for x in product(range(d), repeat=l)))


def is_strong_subtree(S: SeqSet | Iterable[Seq], T: SeqSet | Iterable[Seq], n: int) -> bool:
    """Membership of ``S`` among the ``n``-level strong subtrees of ``T``."""
    te = set(_elements(T))
    if not (is_meet_closed(te) and is_closed_by_levels(te)):
        raise ValueError("T must be meet closed and closed by levels")
    se = set(_elements(S))
    if not se <= te or len(levels(se)) != n:
        return False
    if not (is_meet_closed(se) and is_closed_by_levels(se)):
        return False
    sdeg, tdeg = degrees(se), degrees(te)
    return all(sdeg[s] in (0, tdeg[s]) for s in se)


# --- strong diagonalization -------------------------------------------------

class StrongDiagonalization:
    """An explicit strong diagonalization of the ``d``-ary tree, usable up to ``depth``.

    Levels of the image are laid out in blocks, one per domain length ``j``.
    Block ``j`` first spends ``d`` levels on every node ``w`` of length ``j``
    (in lexicographic order), peeling the bundle of sequences through ``w``
    apart one part at a time: ``w`` itself (digit 0) from its extensions
    (digit 1), then the extensions through ``w+(0,)`` (0) from the rest
    (1), and so on.  Sequences outside the part being split carry 0.  The
    block ends with one terminal level per node of length ``j``, again in
    lexicographic order; the image of ``w`` ends there and every longer
    sequence ``z`` carries its own digit ``z[j]``, shorter-or-equal ones 0.

    The layout does not depend on ``depth``, so images are computed lazily
    and agree across bounds.
    """

    def __init__(self, d: int, depth: int):
        if d < 2:
            raise ValueError(f"alphabet size must be at least 2, got {d}")
        if depth < 0:
            raise ValueError(f"depth bound must be nonnegative, got {depth}")
        self.d = d
        self.depth = depth
        self._cache: dict[Seq, Seq] = {}

    def block_start(self, j: int) -> int:
        d = self.d
        return (d + 1) * (d**j - 1) // (d - 1)

    def _rank(self, x: Seq) -> int:
        r = 0
        for c in x:
            r = r * self.d + c
        return r

    def __call__(self, x: Sequence[int]) -> Seq:
        x = tuple(x)
        hit = self._cache.get(x)
        if hit is not None:
            return hit
        if len(x) > self.depth:
            raise ValueError(f"{x} is longer than the domain depth {self.depth}")
        if any(not 0 <= c < self.d for c in x):
            raise ValueError(f"{x} has a digit outside [0, {self.d})")
        d = self.d
        out: list[int] = []
        n = len(x)
        for j in range(n + 1):
            nodes = d**j
            r = self._rank(x[:j])
            split = [0] * (nodes * d)
            if j < n:
                c = x[j]
                base = r * d
                # split 0 separates the prefix itself (0) from its extensions (1);
                # split t >= 1 separates part t-1 (0) from parts >= t (1)
                split[base] = 1
                for t in range(1, c + 1):
                    split[base + t] = 1
            out.extend(split)
            if j < n:
                out.extend([x[j]] * nodes)
            else:
                out.extend([0] * r)
        img = tuple(out)
        self._cache[x] = img
        return img

    def domain(self) -> Iterator[Seq]:
        for l in range(self.depth + 1):
            yield from product(range(self.d), repeat=l)

    @property
    def table(self) -> dict[Seq, Seq]:
        return {x: self(x) for x in self.domain()}

    def image(self, xs: Iterable[Sequence[int]]) -> frozenset[Seq]:
        return frozenset(self(x) for x in xs)

    def __repr__(self) -> str:
        return f"StrongDiagonalization(d={self.d}, depth={self.depth})"


def strong_diagonalization(d: int, depth: int) -> StrongDiagonalization:
    return StrongDiagonalization(d, depth)
