"""Finite simple binary relational structures.

A structure with ``n`` relations and symmetry number ``m`` assigns to every
unordered pair of distinct vertices exactly one label: ``sym(i)`` for a
symmetric relation ``i < m`` or ``dir(i, head)`` for an oriented relation
``m <= i < n`` pointing at ``head``.  Graphs live in ``(n, m) = (2, 2)`` with
``sym(1)`` as the edge and ``sym(0)`` as the non-edge; tournaments live in
``(1, 0)``.

Vertex identifiers are strings and every enumeration is sorted by their
lexicographic order.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Mapping, Sequence

__all__ = [
    "Label",
    "SimpleBinaryStructure",
    "CopySet",
    "Violation",
    "ValidationReport",
    "validate",
    "induced",
    "isomorphic",
    "enumerate_copies",
    "generate_random",
    "complete",
    "graph",
    "special_age",
    "label_count",
]


@dataclass(frozen=True, order=True)
class Label:
    kind: str  # "sym" or "dir"
    i: int
    head: str | None = None

    @classmethod
    def sym(cls, i: int) -> "Label":
        return cls("sym", i)

    @classmethod
    def dir(cls, i: int, head: str) -> "Label":
        return cls("dir", i, head)

    def __str__(self) -> str:
        if self.kind == "sym":
            return f"sym({self.i})"
        return f"dir({self.i}->{self.head})"


def _pair(u: str, v: str) -> tuple[str, str]:
    return (u, v) if u <= v else (v, u)


def label_count(n: int, m: int) -> int:
    """Number of distinct labels a single pair can carry in ``(n, m)``."""
    return m + 2 * (n - m)


@dataclass(frozen=True)
class SimpleBinaryStructure:
    """A finite structure; construction does not validate (see :func:`validate`)."""

    n: int
    m: int
    vertices: tuple[str, ...]
    labels: Mapping[tuple[str, str], Label] = field(default_factory=dict)

    @classmethod
    def build(
        cls,
        n: int,
        m: int,
        vertices: Iterable[str],
        labels: Mapping[tuple[str, str], Label] | Iterable[tuple[tuple[str, str], Label]] = (),
    ) -> "SimpleBinaryStructure":
        items = labels.items() if isinstance(labels, Mapping) else labels
        normalized = {_pair(u, v): lab for (u, v), lab in items}
        return cls(n, m, tuple(sorted(set(vertices))), normalized)

    def __len__(self) -> int:
        return len(self.vertices)

    def label(self, u: str, v: str) -> Label | None:
        return self.labels.get(_pair(u, v))

    @cached_property
    def index(self) -> dict[str, int]:
        return {v: k for k, v in enumerate(self.vertices)}

    @cached_property
    def codes(self) -> list[list[int]]:
        """Ordered-pair code matrix; equal codes mean equal labels seen from the first vertex.

        ``sym(i)`` is ``i``; ``dir(i)`` pointing away is ``n + 2i``, pointing
        towards the first vertex ``n + 2i + 1``; a missing label is ``-1``.
        """
        size = len(self.vertices)
        idx = self.index
        out = [[-1] * size for _ in range(size)]
        for (u, v), lab in self.labels.items():
            if u == v or u not in idx or v not in idx:
                continue
            a, b = idx[u], idx[v]
            if lab.kind == "sym":
                out[a][b] = out[b][a] = lab.i
            else:
                away = self.n + 2 * lab.i
                if lab.head == v:
                    out[a][b], out[b][a] = away, away + 1
                else:
                    out[a][b], out[b][a] = away + 1, away
        return out

    @cached_property
    def degree(self) -> tuple[int, ...]:
        """Count of pairs at each vertex that do not carry ``sym(0)``."""
        return tuple(sum(1 for c in row if c > 0) for row in self.codes)

    def edges(self) -> Iterator[tuple[str, str, Label]]:
        for (u, v) in sorted(self.labels):
            yield u, v, self.labels[(u, v)]


@dataclass(frozen=True)
class CopySet:
    host: SimpleBinaryStructure
    pattern: SimpleBinaryStructure
    copies: tuple[tuple[str, ...], ...]

    def __len__(self) -> int:
        return len(self.copies)

    def __iter__(self) -> Iterator[tuple[str, ...]]:
        return iter(self.copies)


@dataclass(frozen=True)
class Violation:
    item: str
    pair: tuple[str, str] | None
    message: str


@dataclass
class ValidationReport:
    violations: list[Violation]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def items(self) -> set[str]:
        return {v.item for v in self.violations}


def validate(s: SimpleBinaryStructure) -> ValidationReport:
    """Check the simplicity conditions and return every violation found.

    Items reported: ``params`` (bad ``n``/``m``), ``loop`` (a pair ``(v, v)``),
    ``unknown`` (label on a vertex outside the structure), ``index`` (symmetric
    label outside ``[0, m)`` or oriented label outside ``[m, n)``), ``head``
    (orientation head not in its pair), ``missing`` (unlabelled pair; only
    when ``n >= 1``, since the relation-free age labels nothing).
    """
    out: list[Violation] = []
    if not 0 <= s.m <= s.n:
        out.append(Violation("params", None, f"need 0 <= m <= n, got n={s.n}, m={s.m}"))
    known = set(s.vertices)
    for (u, v), lab in sorted(s.labels.items()):
        if u == v:
            out.append(Violation("loop", (u, v), f"vertex {u!r} is related to itself"))
            continue
        if u not in known or v not in known:
            out.append(Violation("unknown", (u, v), "pair mentions an unknown vertex"))
            continue
        if lab.kind == "sym":
            if not 0 <= lab.i < s.m:
                out.append(Violation("index", (u, v), f"sym({lab.i}) needs index below m={s.m}"))
        elif lab.kind == "dir":
            if not s.m <= lab.i < s.n:
                out.append(Violation("index", (u, v), f"dir({lab.i}) needs index in [{s.m}, {s.n})"))
            if lab.head not in (u, v):
                out.append(Violation("head", (u, v), f"head {lab.head!r} is not in the pair"))
        else:
            out.append(Violation("index", (u, v), f"unknown label kind {lab.kind!r}"))
    if s.n >= 1:
        for u, v in combinations(s.vertices, 2):
            if (u, v) not in s.labels:
                out.append(Violation("missing", (u, v), "pair carries no label"))
    return ValidationReport(out)


def induced(s: SimpleBinaryStructure, subset: Iterable[str]) -> SimpleBinaryStructure:
    keep = set(subset)
    unknown = keep - set(s.vertices)
    if unknown:
        raise KeyError(f"unknown vertices {sorted(unknown)}")
    labels = {p: lab for p, lab in s.labels.items() if p[0] in keep and p[1] in keep}
    return SimpleBinaryStructure(s.n, s.m, tuple(v for v in s.vertices if v in keep), labels)


def _signature(codes: list[list[int]], a: int) -> tuple[int, ...]:
    return tuple(sorted(c for j, c in enumerate(codes[a]) if j != a))


def isomorphic(s1: SimpleBinaryStructure, s2: SimpleBinaryStructure) -> dict[str, str] | None:
    """Return the lexicographically least label-preserving bijection ``s1 -> s2``, or None.

    Least means: vertices of ``s1`` in sorted order, each mapped to the
    smallest admissible vertex of ``s2``.
    """
    if (s1.n, s1.m) != (s2.n, s2.m) or len(s1) != len(s2):
        return None
    size = len(s1)
    c1, c2 = s1.codes, s2.codes
    sig1 = [_signature(c1, a) for a in range(size)]
    sig2 = [_signature(c2, b) for b in range(size)]
    if sorted(sig1) != sorted(sig2):
        return None
    image = [-1] * size
    used = [False] * size

    def extend(a: int) -> bool:
        if a == size:
            return True
        for b in range(size):
            if used[b] or sig1[a] != sig2[b]:
                continue
            if all(c1[a][p] == c2[b][image[p]] for p in range(a)):
                image[a] = b
                used[b] = True
                if extend(a + 1):
                    return True
                used[b] = False
        image[a] = -1
        return False

    if not extend(0):
        return None
    return {s1.vertices[a]: s2.vertices[image[a]] for a in range(size)}


def enumerate_copies(host: SimpleBinaryStructure, pattern: SimpleBinaryStructure) -> CopySet:
    """All vertex subsets of ``host`` inducing a copy of ``pattern``, canonically sorted."""
    if (host.n, host.m) != (pattern.n, pattern.m):
        raise ValueError(
            f"host has (n, m)=({host.n}, {host.m}) but pattern has ({pattern.n}, {pattern.m})"
        )
    k = len(pattern)
    hv = len(host)
    if k > hv:
        return CopySet(host, pattern, ())
    if k == 0:
        return CopySet(host, pattern, ((),))
    hc, pc = host.codes, pattern.codes
    # most constrained pattern vertices first
    order = sorted(range(k), key=lambda a: (-pattern.degree[a], a))

    def counts(codes: list[list[int]], a: int) -> dict[int, int]:
        out: dict[int, int] = {}
        for j, c in enumerate(codes[a]):
            if j != a:
                out[c] = out.get(c, 0) + 1
        return out

    pcount = [counts(pc, a) for a in range(k)]
    hcount = [counts(hc, b) for b in range(hv)]
    candidates = [
        [b for b in range(hv) if all(hcount[b].get(c, 0) >= t for c, t in pcount[a].items())]
        for a in range(k)
    ]
    found: set[frozenset[int]] = set()
    image = [-1] * k
    used = [False] * hv

    def extend(pos: int) -> None:
        if pos == k:
            found.add(frozenset(image))
            return
        a = order[pos]
        for b in candidates[a]:
            if used[b]:
                continue
            if all(pc[a][order[q]] == hc[b][image[order[q]]] for q in range(pos)):
                image[a] = b
                used[b] = True
                extend(pos + 1)
                used[b] = False
        image[a] = -1

    extend(0)
    copies = sorted(tuple(host.vertices[b] for b in sorted(sub)) for sub in found)
    return CopySet(host, pattern, tuple(copies))


def _names(count: int) -> list[str]:
    width = len(str(max(count - 1, 0)))
    return [f"{i:0{width}d}" for i in range(count)]


def _check_params(n: int, m: int) -> None:
    if not 0 <= m <= n:
        raise ValueError(f"need 0 <= m <= n, got n={n}, m={m}")


def generate_random(n: int, m: int, vertex_count: int, seed: int) -> SimpleBinaryStructure:
    """Each pair gets one of the ``m + 2(n - m)`` labels uniformly, independently."""
    _check_params(n, m)
    d = label_count(n, m)
    if d < 1:
        raise ValueError(f"(n, m)=({n}, {m}) admits no labels")
    if vertex_count < 0:
        raise ValueError("vertex_count must be nonnegative")
    rng = random.Random(seed)
    names = _names(vertex_count)
    labels: dict[tuple[str, str], Label] = {}
    for u, v in combinations(names, 2):
        q = rng.randrange(d)
        if q < m:
            labels[(u, v)] = Label.sym(q)
        else:
            labels[(u, v)] = Label.dir(m + (q - m) // 2, v if (q - m) % 2 == 0 else u)
    return SimpleBinaryStructure(n, m, tuple(names), labels)


def complete(size: int, n: int = 2, m: int = 2, label: Label | None = None,
             names: Sequence[str] | None = None) -> SimpleBinaryStructure:
    """All pairs carry one symmetric label (``sym(m - 1)`` by default; ``sym(1)`` for graphs)."""
    _check_params(n, m)
    if label is None:
        if m < 1:
            raise ValueError("complete structures need a symmetric relation (m >= 1)")
        label = Label.sym(m - 1)
    if label.kind != "sym":
        raise ValueError("complete structures use a symmetric label")
    vs = list(names) if names is not None else _names(size)
    return SimpleBinaryStructure(n, m, tuple(sorted(vs)),
                                 {(u, v): label for u, v in combinations(sorted(vs), 2)})


def graph(vertices: Iterable[str], edges: Iterable[tuple[str, str]]) -> SimpleBinaryStructure:
    """A simple graph as a ``(2, 2)`` structure: edges ``sym(1)``, non-edges ``sym(0)``."""
    vs = sorted(set(vertices))
    es = {_pair(u, v) for u, v in edges}
    labels = {(u, v): Label.sym(1 if (u, v) in es else 0) for u, v in combinations(vs, 2)}
    return SimpleBinaryStructure(2, 2, tuple(vs), labels)


def special_age(n: int, m: int, size: int) -> SimpleBinaryStructure:
    """Finite members of the two ages with fewer than two labels.

    ``(0, 0)`` has no relations at all; ``(1, 1)`` is the complete graph.
    """
    if (n, m) == (0, 0):
        return SimpleBinaryStructure(0, 0, tuple(_names(size)), {})
    if (n, m) == (1, 1):
        return complete(size, 1, 1, Label.sym(0))
    raise ValueError(f"(n, m)=({n}, {m}) is not a special age")
