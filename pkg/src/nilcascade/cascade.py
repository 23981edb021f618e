"""Kostant cascades: the inductive construction over an order, and the
closed-form finite cascades of the standard rank-n systems.

A cascade step consumes order-extremal indices from the unconsumed set and
emits one strongly orthogonal root: type A takes the maximum and the
minimum, C takes the maximum alone, B/D take the two largest.  The step
returns None as soon as a required extremum does not exist, and every later
step is then also None.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ValidationError
from .roots import OrderSpec, Root


@dataclass(frozen=True)
class CascadeState:
    consumed: frozenset
    emitted: tuple  # tuple[Root, ...]

    @staticmethod
    def initial() -> "CascadeState":
        return CascadeState(frozenset(), ())


@dataclass(frozen=True)
class CascadeResult:
    roots: tuple  # tuple[Root, ...]
    terminated: bool


def cascade_step(state: CascadeState, order: OrderSpec):
    """One step of the inductive table; None when the cascade has ended."""
    excluded = state.consumed
    if order.system == "A":
        i = order.max_remaining(excluded)
        j = order.min_remaining(excluded)
        if i is None or j is None or i == j:
            return None
        root = Root.diff(i, j)
        consumed = state.consumed | {i, j}
    elif order.system == "C":
        i = order.max_remaining(excluded)
        if i is None:
            return None
        root = Root.double(i)
        consumed = state.consumed | {i}
    else:  # B or D
        i = order.max_remaining(excluded)
        if i is None:
            return None
        j = order.max_remaining(excluded | {i})
        if j is None:
            return None
        root = Root.sum_(i, j)
        consumed = state.consumed | {i, j}
    return root, CascadeState(consumed, state.emitted + (root,))


def cascade(order: OrderSpec, limit: int) -> CascadeResult:
    """The first min(limit, |B|) cascade roots and whether the cascade ended."""
    if limit < 0:
        raise ValidationError("bad-limit", f"cascade limit must be >= 0, got {limit}")
    state = CascadeState.initial()
    roots = []
    for _ in range(limit):
        step = cascade_step(state, order)
        if step is None:
            return CascadeResult(tuple(roots), True)
        root, state = step
        roots.append(root)
    # probe one more step so the terminated flag is meaningful at the limit
    return CascadeResult(tuple(roots), cascade_step(state, order) is None)


def finite_cascade(system: str, n: int) -> tuple:
    """The maximal strongly orthogonal set of the standard rank-n system."""
    if n < 1 or (system == "D" and n < 2):
        raise ValidationError("bad-rank", f"no rank-{n} cascade for type {system}")
    if system == "A":
        return tuple(Root.diff(i, n - i + 1) for i in range(1, n // 2 + 1))
    if system == "C":
        return tuple(Root.double(i) for i in range(1, n + 1))
    roots = []
    for i in range(1, n // 2 + 1):
        roots.append(Root.diff(2 * i - 1, 2 * i))
        roots.append(Root.sum_(2 * i - 1, 2 * i))
    if system == "B" and n % 2 == 1:
        roots.append(Root.short(n))
    return tuple(roots)
