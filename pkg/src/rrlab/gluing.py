"""Triples ``(B, X, Y)`` of strongly diagonal sequence sets and their stretching.

``B`` is the union of two distinct copies ``X`` and ``Y`` of a fixed shape,
oriented so that the longest sequence of ``B`` outside ``X & Y`` lies in
``X``.  Two triples are equivalent when the strong similarity between their
``B`` parts carries ``X`` onto ``X'`` and ``Y`` onto ``Y'``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Mapping, Sequence

from .sequences import (
    Seq,
    SeqSet,
    StrongDiagonalization,
    classify_set,
    closure,
    seq_key,
    strong_similarity_map,
    strongly_similar_subsets,
)

__all__ = [
    "Triple",
    "Signature",
    "TripleError",
    "make_triple",
    "enumerate_triples",
    "triple_equiv",
    "equivalence_classes",
    "stretch",
    "stretch_sets",
    "stretch_variants",
    "signature",
    "realizations",
]

EQ, NEQ, ABSENT = "eq", "neq", "absent"


class TripleError(ValueError):
    pass


def _fs(xs: Iterable[Sequence[int]]) -> frozenset[Seq]:
    return frozenset(tuple(x) for x in xs)


def _sorted(xs: Iterable[Seq]) -> tuple[Seq, ...]:
    return tuple(sorted(xs, key=seq_key))


@dataclass(frozen=True)
class Triple:
    B: frozenset[Seq]
    X: frozenset[Seq]
    Y: frozenset[Seq]

    def key(self) -> tuple:
        return tuple([seq_key(s) for s in _sorted(part)] for part in (self.B, self.X, self.Y))

    def pivot(self) -> Seq:
        """Longest sequence of ``B`` outside ``X & Y``."""
        rest = self.B - (self.X & self.Y)
        if not rest:
            raise TripleError("X and Y coincide")
        return max(rest, key=seq_key)

    def problems(self, shape: Iterable[Seq] | None = None) -> list[str]:
        out = []
        if self.B != self.X | self.Y:
            out.append("B is not the union of X and Y")
        if self.X == self.Y:
            out.append("X equals Y")
            return out
        if self.pivot() not in self.X:
            out.append("the longest sequence outside X & Y is not in X")
        if shape is not None:
            if strong_similarity_map(shape, self.X) is None:
                out.append("X is not strongly similar to the shape")
            if strong_similarity_map(shape, self.Y) is None:
                out.append("Y is not strongly similar to the shape")
        elif strong_similarity_map(self.X, self.Y) is None:
            out.append("X and Y are not strongly similar")
        return out


def make_triple(X: Iterable[Sequence[int]], Y: Iterable[Sequence[int]]) -> Triple:
    x, y = _fs(X), _fs(Y)
    return Triple(x | y, x, y)


def enumerate_triples(ambient: SeqSet | Iterable[Seq], shape: SeqSet | Iterable[Seq]) -> list[Triple]:
    """All valid triples inside ``ambient`` whose parts are copies of ``shape``."""
    if not classify_set(ambient).strongly_diagonal:
        raise TripleError("ambient set is not strongly diagonal")
    copies = [frozenset(c) for c in strongly_similar_subsets(shape, ambient)]
    out = []
    for X, Y in permutations(copies, 2):
        t = Triple(X | Y, X, Y)
        if t.pivot() in X:
            out.append(t)
    return sorted(out, key=Triple.key)


def triple_equiv(t1: Triple, t2: Triple) -> bool:
    f = strong_similarity_map(t1.B, t2.B)
    if f is None:
        return False
    return {f[x] for x in t1.X} == t2.X and {f[y] for y in t1.Y} == t2.Y


def _level_profile(t: Triple) -> tuple[int, ...]:
    return tuple(sorted(len(s) for s in closure(t.B)))


def equivalence_classes(triples: Iterable[Triple]) -> list[Triple]:
    """One representative per class: least level profile of ``B``, then canonical key."""
    classes: list[list[Triple]] = []
    for t in triples:
        for members in classes:
            if triple_equiv(members[0], t):
                members.append(t)
                break
        else:
            classes.append([t])
    reps = [min(members, key=lambda t: (_level_profile(t), t.key())) for members in classes]
    return sorted(reps, key=lambda t: (_level_profile(t), t.key()))


def stretch(x: Seq, z: Seq) -> Seq:
    """Duplicate the digit at position ``|x|`` of sequences longer than ``x``."""
    if len(z) < len(x):
        return z
    if len(z) == len(x):
        raise TripleError(f"stretch undefined for {z}, which has the same length as {x}")
    k = len(x)
    return z[: k + 1] + z[k:]


def stretch_sets(t: Triple) -> list[Triple]:
    """The three stretched triples before diagonalization, ends ``x+(0,)``, ``x+(1,)``, ``x``."""
    bad = t.problems()
    if bad:
        raise TripleError("; ".join(bad))
    x = t.pivot()
    stretched_rest = {z: stretch(x, z) for z in t.B if z != x}
    out = []
    for end in (x + (0,), x + (1,), x):
        B = frozenset(stretched_rest.values()) | {end}
        X = frozenset(stretched_rest[z] for z in t.X if z != x) | {end}
        Y = frozenset(stretched_rest[z] for z in t.Y)
        out.append(Triple(B, X, Y))
    return out


def stretch_variants(t: Triple, diag: StrongDiagonalization) -> list[Triple]:
    """Three triples equivalent to ``t``, pushed through ``diag``.

    Their ``X`` parts form a delta-system and their ``Y`` parts coincide.
    """
    variants = stretch_sets(t)
    deepest = max(len(s) for v in variants for s in v.B)
    if deepest > diag.depth:
        raise TripleError(f"stretched sequences reach length {deepest}, beyond depth {diag.depth}")
    return [Triple(diag.image(v.B), diag.image(v.X), diag.image(v.Y)) for v in variants]


@dataclass(frozen=True)
class Signature:
    entries: tuple[str, ...]

    def __getitem__(self, i: int) -> str:
        return self.entries[i]

    def __len__(self) -> int:
        return len(self.entries)


def realizations(B: Iterable[Seq], rep: Triple) -> list[tuple[frozenset[Seq], frozenset[Seq]]]:
    """Pairs ``(X, Y)`` with ``(B, X, Y)`` equivalent to ``rep``."""
    b = _fs(B)
    f = strong_similarity_map(rep.B, b)
    if f is None:
        return []
    return [(frozenset(f[x] for x in rep.X), frozenset(f[y] for y in rep.Y))]


def signature(B: Iterable[Seq], classes: Sequence[Triple], colour: Mapping[frozenset[Seq], int]) -> Signature:
    """Per class: ``eq``/``neq`` according to the colours of its realizing pair, else ``absent``."""
    entries = []
    for rep in classes:
        pairs = realizations(B, rep)
        if not pairs:
            entries.append(ABSENT)
            continue
        X, Y = pairs[0]
        try:
            same = colour[X] == colour[Y]
        except KeyError as exc:
            raise KeyError(f"colouring undefined on copy {sorted(exc.args[0], key=seq_key)}") from None
        entries.append(EQ if same else NEQ)
    return Signature(tuple(entries))
