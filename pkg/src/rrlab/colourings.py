"""Colourings of the copies of a small structure and the delta-system machinery.

A delta-system is a family of at least two copies, each of which exceeds the
common intersection (the kernel) by a single vertex.  Its kernel therefore
has ``|C| - 1`` vertices, and the largest delta-system with a given kernel
is simply every copy containing it.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .structures import CopySet, SimpleBinaryStructure, enumerate_copies

__all__ = [
    "Copy",
    "Colouring",
    "DeltaSystem",
    "DeltaCheck",
    "ReductionState",
    "is_delta_system",
    "is_k_bounded",
    "maximal_delta_systems",
    "is_k_delta",
    "rainbow_copy_search",
    "plan_reduction",
    "reduce_colouring",
]

Copy = tuple[str, ...]


def _copies(cs: CopySet | Iterable[Sequence[str]]) -> tuple[Copy, ...]:
    if isinstance(cs, CopySet):
        return cs.copies
    return tuple(tuple(c) for c in cs)


@dataclass(frozen=True)
class Colouring:
    copies: tuple[Copy, ...]
    colours: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.copies) != len(self.colours):
            raise ValueError(f"{len(self.copies)} copies but {len(self.colours)} colours")
        if len(set(self.copies)) != len(self.copies):
            raise ValueError("copies must be distinct")
        if any(c < 0 for c in self.colours):
            raise ValueError("colours must be nonnegative integers")

    @classmethod
    def of(cls, cs: CopySet | Iterable[Sequence[str]], colours: Iterable[int] | Mapping[Copy, int]) -> "Colouring":
        copies = _copies(cs)
        if isinstance(colours, Mapping):
            return cls(copies, tuple(colours[c] for c in copies))
        return cls(copies, tuple(colours))

    @property
    def colour_of(self) -> dict[Copy, int]:
        return dict(zip(self.copies, self.colours))

    def __len__(self) -> int:
        return len(self.copies)


@dataclass(frozen=True)
class DeltaSystem:
    kernel: Copy
    members: tuple[Copy, ...]


def is_delta_system(members: Iterable[Iterable[str]]) -> bool:
    """Direct check: at least two distinct sets, each minus the common part is one vertex."""
    sets = [frozenset(m) for m in members]
    if len(sets) < 2 or len(set(sets)) != len(sets):
        return False
    kernel = frozenset.intersection(*sets)
    return all(len(s - kernel) == 1 for s in sets)


def is_k_bounded(c: Colouring, k: int) -> bool:
    return all(v <= k for v in Counter(c.colours).values())


def maximal_delta_systems(cs: CopySet | Iterable[Sequence[str]]) -> list[DeltaSystem]:
    """One system per kernel shared by at least two copies, sorted by kernel."""
    groups: dict[Copy, list[Copy]] = {}
    for copy in _copies(cs):
        for v in copy:
            kernel = tuple(u for u in copy if u != v)
            groups.setdefault(kernel, []).append(copy)
    return [
        DeltaSystem(kernel, tuple(sorted(members)))
        for kernel, members in sorted(groups.items())
        if len(members) >= 2
    ]


@dataclass
class DeltaCheck:
    ok: bool
    witness: DeltaSystem | None = None

    def __bool__(self) -> bool:
        return self.ok


def is_k_delta(c: Colouring, k: int, systems: list[DeltaSystem] | None = None) -> DeltaCheck:
    """No delta-system of ``k + 1`` copies is monochromatic.

    The witness is the first ``k + 1`` same-coloured members of the first
    offending maximal system.
    """
    colour = c.colour_of
    for system in systems if systems is not None else maximal_delta_systems(c.copies):
        by_colour: dict[int, list[Copy]] = {}
        for copy in system.members:
            by_colour.setdefault(colour[copy], []).append(copy)
        for col in sorted(by_colour):
            same = by_colour[col]
            if len(same) > k:
                return DeltaCheck(False, DeltaSystem(system.kernel, tuple(same[: k + 1])))
    return DeltaCheck(True)


def rainbow_copy_search(
    host: SimpleBinaryStructure,
    B: SimpleBinaryStructure,
    C: SimpleBinaryStructure,
    c: Colouring,
) -> Copy | None:
    """First copy of ``B`` (canonical order) whose ``C``-copies get pairwise distinct colours."""
    colour = c.colour_of
    size = len(C)
    for bstar in enumerate_copies(host, B).copies:
        seen: set[int] = set()
        rainbow = True
        for sub in combinations(bstar, size):
            col = colour.get(sub)
            if col is None:
                continue
            if col in seen:
                rainbow = False
                break
            seen.add(col)
        if rainbow:
            return bstar
    return None


@dataclass
class ReductionState:
    """Bookkeeping of the recolouring: which copy indices get fresh colours.

    ``chosen[colour]`` lists the indices picked for that colour in the order
    the systems were visited; ``steps`` records, per system index, the case
    taken for every colour reaching ``k + 1`` members (``"new"`` or
    ``"reuse"``).
    """

    k: int
    copies: tuple[Copy, ...]
    systems: list[DeltaSystem]
    chosen: dict[int, list[int]] = field(default_factory=dict)
    steps: list[dict[int, str]] = field(default_factory=list)
    offset: int = 0

    @property
    def recoloured(self) -> set[int]:
        return {n for idx in self.chosen.values() for n in idx}


def plan_reduction(c: Colouring, k: int) -> ReductionState:
    if k < 2:
        raise ValueError(f"k must be at least 2, got {k}")
    systems = maximal_delta_systems(c.copies)
    check = is_k_delta(c, k + 1, systems)
    if not check:
        raise ValueError(f"colouring is not {k + 1}-delta; monochromatic system {check.witness}")
    position = {copy: n for n, copy in enumerate(c.copies)}
    state = ReductionState(k, c.copies, systems, offset=max(c.colours, default=-1) + 1)
    for system in systems:
        idx = sorted(position[copy] for copy in system.members)
        by_colour: dict[int, list[int]] = {}
        for n in idx:
            by_colour.setdefault(c.colours[n], []).append(n)
        step: dict[int, str] = {}
        for col in sorted(by_colour):
            members = by_colour[col]
            if len(members) <= k:
                continue
            taken = state.chosen.setdefault(col, [])
            if any(n in taken for n in members):
                step[col] = "reuse"
            else:
                taken.append(members[0])
                step[col] = "new"
        state.steps.append(step)
    return state


def reduce_colouring(c: Colouring, k: int) -> Colouring:
    """Turn a ``(k+1)``-delta colouring into a ``k``-delta one.

    In every maximal system with ``k + 1`` copies of one colour, the least
    such copy is given a fresh colour unless an earlier system already
    recoloured one of them.  Fresh colours are ``max + 1 + index``.
    """
    state = plan_reduction(c, k)
    fresh = state.recoloured
    return Colouring(
        c.copies,
        tuple(state.offset + n if n in fresh else col for n, col in enumerate(c.colours)),
    )
