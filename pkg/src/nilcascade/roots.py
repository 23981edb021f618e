"""Root systems A/B/C/D, computable linear orders, and finite windows.

Positive roots are value objects over positive integer indices:

  ``e<i>-e<j>``  difference roots  (``Root.diff(i, j)`` means eps_i - eps_j)
  ``e<i>+e<j>``  sum roots, stored with the canonical pair ``i < j``
  ``2e<i>``      doubled roots (type C only)
  ``e<i>``       short roots (type B only)

A linear order on the index set {1, 2, ...} is encoded by two index streams:
``top`` descends from the maximum side (``top[0]`` is the largest index, when
one exists) and ``bottom`` ascends from the minimum side (``bottom[0]`` is the
smallest).  Every index of the universe lies in exactly one stream.  Streams
are either explicit finite lists or infinite arithmetic progressions, which
keeps comparison, extrema, and counting decidable.  When both streams are
finite the order covers a finite universe (used for finite-rank algebras);
otherwise it must partition all of {1, 2, ...}.

A ``Window`` is a finite index set sorted descending by the order; position
``k`` (1-based) of the window corresponds to eps_k of the standard finite
root system of the same rank.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass

from .errors import OrderDomainError, ValidationError

SYSTEMS = ("A", "B", "C", "D")

_KIND_RANK = {"diff": 0, "sum": 1, "double": 2, "short": 3}

_ROOT_RE = re.compile(r"^(?:e(\d+)-e(\d+)|e(\d+)\+e(\d+)|2e(\d+)|e(\d+))$")


@dataclass(frozen=True)
class Root:
    """A positive root; use the named constructors, not the raw init."""

    kind: str
    i: int
    j: int = 0

    @staticmethod
    def diff(i: int, j: int) -> "Root":
        if i == j:
            raise ValidationError("bad-root", f"difference root needs distinct indices, got e{i}-e{j}")
        if i < 1 or j < 1:
            raise ValidationError("bad-root", f"root indices must be positive, got e{i}-e{j}")
        return Root("diff", i, j)

    @staticmethod
    def sum_(i: int, j: int) -> "Root":
        if i == j:
            raise ValidationError("bad-root", f"sum root needs distinct indices, got e{i}+e{j}")
        if i < 1 or j < 1:
            raise ValidationError("bad-root", f"root indices must be positive, got e{i}+e{j}")
        return Root("sum", min(i, j), max(i, j))

    @staticmethod
    def double(i: int) -> "Root":
        if i < 1:
            raise ValidationError("bad-root", f"root index must be positive, got 2e{i}")
        return Root("double", i)

    @staticmethod
    def short(i: int) -> "Root":
        if i < 1:
            raise ValidationError("bad-root", f"root index must be positive, got e{i}")
        return Root("short", i)

    def indices(self) -> tuple[int, ...]:
        if self.kind in ("diff", "sum"):
            return (self.i, self.j)
        return (self.i,)

    def sort_key(self) -> tuple[int, int, int]:
        return (_KIND_RANK[self.kind], self.i, self.j)

    def __str__(self) -> str:
        if self.kind == "diff":
            return f"e{self.i}-e{self.j}"
        if self.kind == "sum":
            return f"e{self.i}+e{self.j}"
        if self.kind == "double":
            return f"2e{self.i}"
        return f"e{self.i}"


def parse_root(text: str, path: str | None = None) -> Root:
    m = _ROOT_RE.match(text.strip())
    if not m:
        raise ValidationError("bad-root", f"cannot parse root {text!r}", path)
    di, dj, si, sj, ti, bi = m.groups()
    if di is not None:
        return Root.diff(int(di), int(dj))
    if si is not None:
        return Root.sum_(int(si), int(sj))
    if ti is not None:
        return Root.double(int(ti))
    return Root.short(int(bi))


def root_allowed(root: Root, system: str) -> bool:
    """Whether the root kind occurs in the given system's positive roots."""
    if root.kind == "diff":
        return True
    if root.kind == "sum":
        return system in ("B", "C", "D")
    if root.kind == "double":
        return system == "C"
    return system == "B"


def check_root(root: Root, system: str) -> Root:
    if not root_allowed(root, system):
        raise ValidationError("bad-root", f"root {root} does not occur in type {system}")
    return root


# ---------------------------------------------------------------------------
# Index streams and orders
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IndexStream:
    """A finite explicit list or an infinite arithmetic progression."""

    kind: str  # "list" | "arith"
    items: tuple[int, ...] = ()
    start: int = 0
    step: int = 0

    @staticmethod
    def explicit(items) -> "IndexStream":
        return IndexStream("list", tuple(int(x) for x in items))

    @staticmethod
    def arithmetic(start: int, step: int) -> "IndexStream":
        return IndexStream("arith", (), int(start), int(step))

    @staticmethod
    def empty() -> "IndexStream":
        return IndexStream("list", ())

    def check(self, path: str | None = None) -> None:
        if self.kind == "list":
            if any(x < 1 for x in self.items):
                raise ValidationError("bad-stream", "list stream items must be positive", path)
            if len(set(self.items)) != len(self.items):
                raise ValidationError("bad-stream", "list stream items must be distinct", path)
        elif self.kind == "arith":
            if self.start < 1 or self.step < 1:
                raise ValidationError("bad-stream", "arithmetic stream needs start >= 1 and step >= 1", path)
        else:
            raise ValidationError("bad-stream", f"unknown stream kind {self.kind!r}", path)

    @property
    def is_finite(self) -> bool:
        return self.kind == "list"

    def size(self) -> int | None:
        """Number of produced indices, or None for infinitely many."""
        return len(self.items) if self.kind == "list" else None

    def size_from(self, pos: int) -> int | None:
        """Number of indices at stream positions >= pos."""
        if self.kind == "arith":
            return None
        return max(0, len(self.items) - pos)

    def position(self, index: int) -> int | None:
        if self.kind == "list":
            try:
                return self.items.index(index)
            except ValueError:
                return None
        if index < self.start or (index - self.start) % self.step != 0:
            return None
        return (index - self.start) // self.step

    def element(self, pos: int) -> int | None:
        if pos < 0:
            return None
        if self.kind == "list":
            return self.items[pos] if pos < len(self.items) else None
        return self.start + pos * self.step

    def iterate(self):
        if self.kind == "list":
            yield from self.items
        else:
            yield from itertools.count(self.start, self.step)

    def to_json(self) -> dict:
        if self.kind == "list":
            return {"kind": "list", "items": list(self.items)}
        return {"kind": "arith", "start": self.start, "step": self.step}

    @staticmethod
    def from_json(data: dict, path: str | None = None) -> "IndexStream":
        if not isinstance(data, dict) or "kind" not in data:
            raise ValidationError("bad-stream", "stream must be an object with a 'kind'", path)
        if data["kind"] == "list":
            stream = IndexStream.explicit(data.get("items", []))
        elif data["kind"] == "arith":
            stream = IndexStream.arithmetic(data.get("start", 0), data.get("step", 0))
        else:
            raise ValidationError("bad-stream", f"unknown stream kind {data['kind']!r}", path)
        stream.check(path)
        return stream


GREATER, EQUAL, LESS = 1, 0, -1


@dataclass(frozen=True)
class OrderSpec:
    """A two-stream linear order on the index set, with eps_i > 0 built in."""

    system: str
    top: IndexStream
    bottom: IndexStream

    # -- factories ---------------------------------------------------------

    @staticmethod
    def natural(system: str) -> "OrderSpec":
        """eps_1 > eps_2 > eps_3 > ..."""
        return OrderSpec(system, IndexStream.arithmetic(1, 1), IndexStream.empty())

    @staticmethod
    def reverse_natural(system: str) -> "OrderSpec":
        """... > eps_3 > eps_2 > eps_1."""
        return OrderSpec(system, IndexStream.empty(), IndexStream.arithmetic(1, 1))

    @staticmethod
    def interleaved(system: str) -> "OrderSpec":
        """eps_1 > eps_3 > eps_5 > ... > eps_6 > eps_4 > eps_2."""
        return OrderSpec(system, IndexStream.arithmetic(1, 2), IndexStream.arithmetic(2, 2))

    @staticmethod
    def finite(system: str, items_desc) -> "OrderSpec":
        """Finite universe listed from the maximum down."""
        return OrderSpec(system, IndexStream.explicit(items_desc), IndexStream.empty())

    # -- validation ---------------------------------------------------------

    def check(self, path: str | None = None) -> "OrderSpec":
        if self.system not in SYSTEMS:
            raise ValidationError("bad-order", f"unknown system {self.system!r}", path)
        self.top.check(path)
        self.bottom.check(path)
        if self.top.is_finite and self.bottom.is_finite:
            overlap = set(self.top.items) & set(self.bottom.items)
            if overlap:
                raise ValidationError("bad-order", f"streams overlap at {sorted(overlap)}", path)
            return self
        # At least one arithmetic stream: the union must cover {1,2,...}
        # exactly once.  Beyond every explicit item and arithmetic start the
        # membership pattern is periodic with the lcm of the steps, so one
        # period past that bound decides the whole tail.
        steps = [s.step for s in (self.top, self.bottom) if s.kind == "arith"]
        period = math.lcm(*steps)
        bound = 0
        for s in (self.top, self.bottom):
            if s.kind == "list" and s.items:
                bound = max(bound, max(s.items))
            elif s.kind == "arith":
                bound = max(bound, s.start)
        for n in range(1, bound + 2 * period + 1):
            hits = (self.top.position(n) is not None) + (self.bottom.position(n) is not None)
            if hits == 0:
                raise ValidationError("bad-order", f"index {n} is not covered by either stream", path)
            if hits > 1:
                raise ValidationError("bad-order", f"index {n} is covered by both streams", path)
        return self

    # -- universe ------------------------------------------------------------

    @property
    def is_full(self) -> bool:
        return not (self.top.is_finite and self.bottom.is_finite)

    def universe(self) -> tuple[int, ...] | None:
        """The full index set for finite orders, None for infinite ones."""
        if self.is_full:
            return None
        return tuple(sorted(set(self.top.items) | set(self.bottom.items)))

    def contains(self, index: int) -> bool:
        return self.top.position(index) is not None or self.bottom.position(index) is not None

    # -- comparison and extrema ----------------------------------------------

    def compare(self, i: int, j: int) -> int:
        """+1 if eps_i > eps_j, 0 if equal, -1 otherwise."""
        if i == j:
            if not self.contains(i):
                raise OrderDomainError(f"index {i} is not covered by the order")
            return EQUAL
        pi_top, pj_top = self.top.position(i), self.top.position(j)
        pi_bot, pj_bot = self.bottom.position(i), self.bottom.position(j)
        if (pi_top is None and pi_bot is None) or (pj_top is None and pj_bot is None):
            missing = i if pi_top is None and pi_bot is None else j
            raise OrderDomainError(f"index {missing} is not covered by the order")
        if pi_top is not None and pj_top is not None:
            return GREATER if pi_top < pj_top else LESS
        if pi_bot is not None and pj_bot is not None:
            return GREATER if pi_bot > pj_bot else LESS
        return GREATER if pi_top is not None else LESS

    def greater(self, i: int, j: int) -> bool:
        return self.compare(i, j) == GREATER

    def max_remaining(self, excluded=()) -> int | None:
        """The order-largest index outside ``excluded``, if one exists.

        An infinite top stream always yields one within |excluded|+1 steps;
        an infinite bottom stream is an ascending chain with no largest
        element, so the answer there is None.
        """
        excluded = frozenset(excluded)
        for idx in itertools.islice(self.top.iterate(), len(excluded) + 1):
            if idx not in excluded:
                return idx
        if not self.bottom.is_finite:
            return None
        for idx in reversed(self.bottom.items):
            if idx not in excluded:
                return idx
        return None

    def min_remaining(self, excluded=()) -> int | None:
        excluded = frozenset(excluded)
        for idx in itertools.islice(self.bottom.iterate(), len(excluded) + 1):
            if idx not in excluded:
                return idx
        if not self.top.is_finite:
            return None
        for idx in reversed(self.top.items):
            if idx not in excluded:
                return idx
        return None

    def maximum(self) -> int | None:
        return self.max_remaining(())

    # -- counting (None means infinite) ---------------------------------------

    def count_geq(self, i: int) -> int | None:
        """|{s : eps_s >= eps_i}|."""
        pos = self.top.position(i)
        if pos is not None:
            return pos + 1
        pos = self.bottom.position(i)
        if pos is None:
            raise OrderDomainError(f"index {i} is not covered by the order")
        top_size = self.top.size()
        above_in_bottom = self.bottom.size_from(pos)
        if top_size is None or above_in_bottom is None:
            return None
        return top_size + above_in_bottom

    def count_leq(self, i: int) -> int | None:
        pos = self.bottom.position(i)
        if pos is not None:
            return pos + 1
        pos = self.top.position(i)
        if pos is None:
            raise OrderDomainError(f"index {i} is not covered by the order")
        bottom_size = self.bottom.size()
        below_in_top = self.top.size_from(pos)
        if bottom_size is None or below_in_top is None:
            return None
        return bottom_size + below_in_top

    def count_gt(self, i: int) -> int | None:
        c = self.count_geq(i)
        return None if c is None else c - 1

    def count_lt(self, i: int) -> int | None:
        c = self.count_leq(i)
        return None if c is None else c - 1

    # -- neighbors (some index strictly below/above, preferring adjacent) -----

    def strictly_below(self, i: int) -> int | None:
        pos = self.top.position(i)
        if pos is not None:
            nxt = self.top.element(pos + 1)
            if nxt is not None:
                return nxt
            if self.bottom.is_finite:
                return self.bottom.items[-1] if self.bottom.items else None
            return self.bottom.element(0)
        pos = self.bottom.position(i)
        if pos is None:
            raise OrderDomainError(f"index {i} is not covered by the order")
        return self.bottom.element(pos - 1) if pos >= 1 else None

    def strictly_above(self, i: int) -> int | None:
        pos = self.bottom.position(i)
        if pos is not None:
            nxt = self.bottom.element(pos + 1)
            if nxt is not None:
                return nxt
            if self.top.is_finite:
                return self.top.items[-1] if self.top.items else None
            return self.top.element(0)
        pos = self.top.position(i)
        if pos is None:
            raise OrderDomainError(f"index {i} is not covered by the order")
        return self.top.element(pos - 1) if pos >= 1 else None

    # -- serialization ---------------------------------------------------------

    def to_json(self) -> dict:
        return {"system": self.system, "top": self.top.to_json(), "bottom": self.bottom.to_json()}

    @staticmethod
    def from_json(data: dict, path: str | None = None) -> "OrderSpec":
        if not isinstance(data, dict):
            raise ValidationError("bad-order", "order must be a JSON object", path)
        for key in ("system", "top", "bottom"):
            if key not in data:
                raise ValidationError("bad-order", f"order is missing {key!r}", path)
        spec = OrderSpec(
            data["system"],
            IndexStream.from_json(data["top"], path),
            IndexStream.from_json(data["bottom"], path),
        )
        return spec.check(path)


# ---------------------------------------------------------------------------
# Windows
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Window:
    """A finite index set sorted descending by an order."""

    order: OrderSpec
    indices: tuple[int, ...]  # descending: indices[0] is the order-largest

    @staticmethod
    def build(order: OrderSpec, indices) -> "Window":
        idx = list(dict.fromkeys(int(x) for x in indices))
        if not idx:
            raise ValidationError("bad-window", "window must be nonempty")
        for x in idx:
            if not order.contains(x):
                raise OrderDomainError(f"window index {x} is not covered by the order")
        # insertion sort by the order; compare() is a strict total order
        sorted_idx: list[int] = []
        for x in idx:
            k = 0
            while k < len(sorted_idx) and order.greater(sorted_idx[k], x):
                k += 1
            sorted_idx.insert(k, x)
        if order.system == "D" and len(sorted_idx) < 2:
            raise ValidationError("bad-window", "type D needs window rank >= 2")
        return Window(order, tuple(sorted_idx))

    @staticmethod
    def standard(system: str, n: int) -> "Window":
        return Window.build(OrderSpec.natural(system), range(1, n + 1))

    @property
    def rank(self) -> int:
        return len(self.indices)

    def position(self, index: int) -> int:
        """1-based position; position 1 is the order-largest index."""
        try:
            return self.indices.index(index) + 1
        except ValueError:
            raise OrderDomainError(f"index {index} is not in the window")

    def relabel(self, k: int) -> int:
        """The window index at standard position k (1-based)."""
        return self.indices[k - 1]

    def contains(self, index: int) -> bool:
        return index in self.indices


# ---------------------------------------------------------------------------
# Positive roots
# ---------------------------------------------------------------------------

_MIN_RANK = {"A": 1, "B": 1, "C": 1, "D": 2}


def positive_roots(system: str, n: int) -> list[Root]:
    """Positive roots of the standard rank-n system, sorted by (kind, i, j)."""
    if system not in SYSTEMS:
        raise ValidationError("bad-system", f"unknown system {system!r}")
    if n < _MIN_RANK[system]:
        raise ValidationError("bad-rank", f"type {system} needs rank >= {_MIN_RANK[system]}, got {n}")
    roots = [Root.diff(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    if system in ("B", "C", "D"):
        roots += [Root.sum_(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    if system == "C":
        roots += [Root.double(i) for i in range(1, n + 1)]
    if system == "B":
        roots += [Root.short(i) for i in range(1, n + 1)]
    return sorted(roots, key=Root.sort_key)


def window_roots(window: Window) -> list[Root]:
    """Positive roots of Phi_M for the window, with actual indices."""
    order = window.order
    idx = window.indices
    n = len(idx)
    roots = [Root.diff(idx[a], idx[b]) for a in range(n) for b in range(a + 1, n)]
    if order.system in ("B", "C", "D"):
        roots += [Root.sum_(idx[a], idx[b]) for a in range(n) for b in range(a + 1, n)]
    if order.system == "C":
        roots += [Root.double(i) for i in idx]
    if order.system == "B":
        roots += [Root.short(i) for i in idx]
    return sorted(roots, key=Root.sort_key)
