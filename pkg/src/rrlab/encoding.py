"""Reading a set of sequences as a simple binary structure.

For ``|x| < |y|`` the pair is labelled from the passing number ``q = y[|x|]``:
``q < m`` is the symmetric relation ``q``; otherwise ``q - m`` picks an
oriented relation and its direction, even values pointing at ``y``, odd
values at ``x``.  Two sequences of the same length get relation 0, pointing
from the left one to the right one when there are no symmetric relations.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Mapping

from .sequences import Seq, SeqSet, prec, seq_key
from .structures import Label, SimpleBinaryStructure

__all__ = [
    "EncodingParams",
    "seq_name",
    "decode",
    "passing_label",
    "extension_property_check",
    "extension_property_failures",
]


@dataclass(frozen=True)
class EncodingParams:
    n: int
    m: int

    def __post_init__(self) -> None:
        if not 0 <= self.m <= self.n:
            raise ValueError(f"need 0 <= m <= n, got n={self.n}, m={self.m}")
        if self.d < 2:
            raise ValueError(
                f"(n, m)=({self.n}, {self.m}) gives alphabet size {self.d} < 2; "
                "use structures.special_age for this age"
            )

    @property
    def d(self) -> int:
        return self.m + 2 * (self.n - self.m)

    @classmethod
    def matching(cls, d: int) -> list["EncodingParams"]:
        """Every ``(n, m)`` whose alphabet size is ``d``."""
        return [cls(n, 2 * n - d) for n in range((d + 1) // 2, d + 1) if 0 <= 2 * n - d <= n]


def seq_name(s: Seq) -> str:
    return ",".join(map(str, s)) if s else "()"


def passing_label(q: int, shorter: str, longer: str, p: EncodingParams, strict: bool = False) -> Label:
    """Label of a pair whose longer member passes the shorter one with digit ``q``.

    With ``strict`` the oriented index is the literal ``m + q/2`` (even case)
    or ``m + (q-1)/2`` (odd case), raising when it is not an integer in
    ``[m, n)``.
    """
    m = p.m
    if q < m:
        return Label.sym(q)
    even = (q - m) % 2 == 0
    if strict:
        num = q if even else q - 1
        if num % 2:
            raise ValueError(f"literal index m + {num}/2 is not an integer (m={m}, q={q})")
        i = m + num // 2
        if not m <= i < p.n:
            raise ValueError(f"literal index {i} falls outside [{m}, {p.n}) (q={q})")
    else:
        i = m + ((q - m) if even else (q - m - 1)) // 2
    return Label.dir(i, longer if even else shorter)


def decode(S: SeqSet, p: EncodingParams, strict: bool = False) -> SimpleBinaryStructure:
    if S.d != p.d:
        raise ValueError(f"sequence alphabet {S.d} does not match d={p.d} for (n, m)=({p.n}, {p.m})")
    elems = S.sorted()
    names = {s: seq_name(s) for s in elems}
    labels: dict[tuple[str, str], Label] = {}
    for a, x in enumerate(elems):
        for y in elems[a + 1:]:
            nx, ny = names[x], names[y]
            if len(x) < len(y):
                lab = passing_label(y[len(x)], nx, ny, p, strict)
            else:
                right = y if prec(x, y) else x
                lab = Label.sym(0) if p.m > 0 else Label.dir(0, names[right])
            labels[(min(nx, ny), max(nx, ny))] = lab
    return SimpleBinaryStructure(p.n, p.m, tuple(sorted(names.values())), labels)


def extension_property_check(
    V: SeqSet,
    F: Iterable[Seq],
    assignment: Mapping[Seq, int],
    depth_budget: int | None = None,
) -> Seq | None:
    """Find ``y`` in ``V`` passing every ``x`` in ``F`` with the assigned digit.

    Candidates are scanned longest first, then lexicographically; those
    longer than ``depth_budget`` are skipped.
    """
    fs = sorted({tuple(x) for x in F}, key=seq_key)
    elems = V.sorted()
    if not set(fs) <= V.elements:
        raise ValueError("F must be a subset of V")
    longest = max((len(v) for v in elems), default=-1)
    for x in fs:
        if len(x) >= longest:
            raise ValueError(f"{x} is not shorter than the longest element of V")
        digit = assignment[x]
        if not 0 <= digit < V.d:
            raise ValueError(f"assigned digit {digit} is outside [0, {V.d})")
    for y in sorted(elems, key=lambda s: (-len(s), s)):
        if depth_budget is not None and len(y) > depth_budget:
            continue
        if all(len(y) > len(x) and y[len(x)] == assignment[x] for x in fs):
            return y
    return None


def extension_property_failures(V: SeqSet, max_size: int, depth_budget: int | None = None
                                ) -> list[tuple[tuple[Seq, ...], tuple[int, ...]]]:
    """Every ``(F, digits)`` with ``|F| <= max_size`` that has no witness in ``V``.

    ``F`` ranges over subsets of ``V`` shorter than its longest element.
    """
    elems = V.sorted()
    longest = max((len(v) for v in elems), default=-1)
    eligible = [v for v in elems if len(v) < longest]
    out = []
    for size in range(max_size + 1):
        for F in combinations(eligible, size):
            for digits in product(range(V.d), repeat=size):
                if extension_property_check(V, F, dict(zip(F, digits)), depth_budget) is None:
                    out.append((F, digits))
    return out

