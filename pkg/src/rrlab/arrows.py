"""Exhaustive certification of rainbow arrows ``A -> (B)^C`` at small scale.

Whether a copy of ``B`` is rainbow depends only on which copies of ``C``
share a colour, so colourings are enumerated up to renaming: as set
partitions of the copies, written as restricted-growth strings.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, islice
from math import comb
from typing import Callable, Iterator, Sequence

from .colourings import Colouring, maximal_delta_systems
from .structures import CopySet, SimpleBinaryStructure, enumerate_copies

__all__ = [
    "BOUNDED",
    "DELTA",
    "DEFAULT_BUDGET",
    "BudgetExceeded",
    "ArrowQuery",
    "ArrowCertificate",
    "count_bounded_partitions",
    "restricted_growth_strings",
    "enumerate_colourings_canonical",
    "verify_arrow",
    "min_host_search",
    "default_budget",
]

BOUNDED, DELTA = "bounded", "delta"
DEFAULT_BUDGET = 10**7


class BudgetExceeded(RuntimeError):
    pass


def default_budget() -> int:
    env = os.environ.get("RRLAB_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


@dataclass(frozen=True)
class ArrowQuery:
    A: SimpleBinaryStructure
    B: SimpleBinaryStructure
    C: SimpleBinaryStructure
    k: int
    mode: str = BOUNDED

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError(f"k must be at least 1, got {self.k}")
        if self.mode not in (BOUNDED, DELTA):
            raise ValueError(f"mode must be {BOUNDED!r} or {DELTA!r}, got {self.mode!r}")
        params = {(s.n, s.m) for s in (self.A, self.B, self.C)}
        if len(params) != 1:
            raise ValueError(f"A, B and C must share (n, m); got {sorted(params)}")


@dataclass
class ArrowCertificate:
    holds: bool
    copies: tuple[tuple[str, ...], ...]
    witnesses: list[tuple[str, ...]] = field(default_factory=list)
    counterexample: Colouring | None = None
    colourings: int = 0
    ms: int | None = None

    @property
    def verdict(self) -> str:
        return "holds" if self.holds else "fails"

    def __bool__(self) -> bool:
        return self.holds


def count_bounded_partitions(size: int, k: int) -> int:
    """Set partitions of ``size`` items with every block of at most ``k`` items."""
    p = [1] + [0] * size
    for n in range(1, size + 1):
        p[n] = sum(comb(n - 1, s - 1) * p[n - s] for s in range(1, min(k, n) + 1))
    return p[size]


def restricted_growth_strings(
    size: int,
    k: int,
    groups: Sequence[Sequence[int]] = (),
) -> Iterator[tuple[int, ...]]:
    """Partitions whose blocks avoid ``k + 1`` members of any group, in lexicographic order.

    Pass a single group holding every item to bound block sizes by ``k``.
    """
    member_of: list[list[int]] = [[] for _ in range(size)]
    for g, items in enumerate(groups):
        for i in items:
            member_of[i].append(g)
    counts: dict[tuple[int, int], int] = {}
    word = [0] * size

    def place(i: int, top: int) -> Iterator[tuple[int, ...]]:
        if i == size:
            yield tuple(word)
            return
        for block in range(top + 1):
            keys = [(g, block) for g in member_of[i]]
            if any(counts.get(key, 0) >= k for key in keys):
                continue
            for key in keys:
                counts[key] = counts.get(key, 0) + 1
            word[i] = block
            yield from place(i + 1, max(top, block + 1))
            for key in keys:
                counts[key] -= 1

    yield from place(0, 0)


def _groups(copies: Sequence[tuple[str, ...]], mode: str) -> list[list[int]]:
    if mode == BOUNDED:
        return [list(range(len(copies)))]
    position = {c: i for i, c in enumerate(copies)}
    return [[position[c] for c in s.members] for s in maximal_delta_systems(copies)]


def enumerate_colourings_canonical(cs: CopySet | Sequence[tuple[str, ...]], k: int, mode: str = BOUNDED
                                   ) -> Iterator[Colouring]:
    """One colouring per renaming class admissible in ``mode``."""
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    copies = cs.copies if isinstance(cs, CopySet) else tuple(tuple(c) for c in cs)
    for word in restricted_growth_strings(len(copies), k, _groups(copies, mode)):
        yield Colouring(copies, word)


def _first_rainbow(word: Sequence[int], inside: Sequence[Sequence[int]]) -> int:
    for b, idx in enumerate(inside):
        seen = set()
        for i in idx:
            col = word[i]
            if col in seen:
                break
            seen.add(col)
        else:
            return b
    return -1


def _scan(chunk: list[tuple[int, ...]], inside: list[list[int]]) -> list[int]:
    out = []
    for word in chunk:
        b = _first_rainbow(word, inside)
        out.append(b)
        if b < 0:
            break
    return out


def _containment(copies: Sequence[tuple[str, ...]], bcopies: Sequence[tuple[str, ...]], size: int) -> list[list[int]]:
    position = {c: i for i, c in enumerate(copies)}
    return [
        [position[sub] for sub in combinations(b, size) if sub in position]
        for b in bcopies
    ]


def verify_arrow(q: ArrowQuery, budget: int | None = None, workers: int = 1, chunk: int = 20000
                 ) -> ArrowCertificate:
    """Decide the arrow by checking every admissible colouring up to renaming.

    Raises :class:`BudgetExceeded` rather than answering once more than
    ``budget`` colourings would have to be examined.
    """
    budget = default_budget() if budget is None else budget
    start = time.perf_counter()
    copies = enumerate_copies(q.A, q.C).copies
    bcopies = enumerate_copies(q.A, q.B).copies
    if q.mode == BOUNDED:
        total = count_bounded_partitions(len(copies), q.k)
        if total > budget:
            raise BudgetExceeded(f"{total} colourings exceed the budget of {budget}")
    inside = _containment(copies, bcopies, len(q.C))
    words = restricted_growth_strings(len(copies), q.k, _groups(copies, q.mode))

    witnesses: list[tuple[str, ...]] = []
    examined = 0
    failing: tuple[int, ...] | None = None

    def chunks() -> Iterator[list[tuple[int, ...]]]:
        nonlocal examined
        while True:
            block = list(islice(words, chunk))
            if not block:
                return
            examined += len(block)
            if examined > budget:
                raise BudgetExceeded(f"more than {budget} colourings; budget exceeded")
            yield block

    def absorb(block: list[tuple[int, ...]], found: list[int]) -> bool:
        nonlocal failing
        for word, b in zip(block, found):
            if b < 0:
                failing = word
                return False
            witnesses.append(bcopies[b])
        return True

    if workers <= 1:
        for block in chunks():
            if not absorb(block, _scan(block, inside)):
                break
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            pending: list = []
            stop = False
            for block in chunks():
                pending.append((block, pool.submit(_scan, block, inside)))
                if len(pending) >= 2 * workers:
                    b, fut = pending.pop(0)
                    if not absorb(b, fut.result()):
                        stop = True
                        break
            if not stop:
                for b, fut in pending:
                    if not absorb(b, fut.result()):
                        break
            for _, fut in pending:
                fut.cancel()

    count = len(witnesses) + (failing is not None)
    ms = int((time.perf_counter() - start) * 1000)
    if failing is not None:
        return ArrowCertificate(False, copies, [], Colouring(copies, failing), count, ms)
    return ArrowCertificate(True, copies, witnesses, None, count, ms)


def min_host_search(
    B: SimpleBinaryStructure,
    C: SimpleBinaryStructure,
    k: int,
    mode: str,
    host_family: Callable[[int], SimpleBinaryStructure],
    limit: int,
    start: int = 0,
    budget: int | None = None,
    workers: int = 1,
    on_result: Callable[[int, SimpleBinaryStructure, ArrowCertificate], None] | None = None,
) -> tuple[int, ArrowCertificate] | None:
    """Least index in ``start..limit`` whose host certifies the arrow."""
    for index in range(start, limit + 1):
        A = host_family(index)
        cert = verify_arrow(ArrowQuery(A, B, C, k, mode), budget=budget, workers=workers)
        if on_result is not None:
            on_result(index, A, cert)
        if cert.holds:
            return index, cert
    return None
