"""Matrix realizations of nilradicals and exact Lie brackets.

The standard rank-n algebra is realized by sparse matrices keyed by
(row label, column label).  Labels run 1..n for type A, 1..n,-n..-1 for
C/D, and 1..n,0,-n..-1 for B; every root vector is strictly upper
triangular in that label order.  Type B short-root vectors drop the
paper-normalization square root so that all structure constants stay
rational; the only visible consequence is that a bracket of two short
root vectors is half the classically normalized value.

A ``WindowAlgebra`` is the nilradical over a finite index window of an
order: roots carry actual indices, and brackets are computed by
relabeling through the window's order isomorphism onto the standard
rank-n system (structure constants are memoized per (system, rank)).

Elements are sparse root-coordinate vectors: ``LieVec = dict[Root, Fraction]``
with no stored zeros.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .errors import InternalError, ValidationError
from .roots import OrderSpec, Root, Window, positive_roots, window_roots

LieVec = dict  # Root -> Fraction

Mat = dict  # (row label, col label) -> Fraction


def vec_add(a: LieVec, b: LieVec, scale: Fraction = Fraction(1)) -> LieVec:
    out = dict(a)
    for root, coeff in b.items():
        new = out.get(root, Fraction(0)) + scale * coeff
        if new == 0:
            out.pop(root, None)
        else:
            out[root] = new
    return out


def vec_scale(a: LieVec, scale) -> LieVec:
    scale = Fraction(scale)
    if scale == 0:
        return {}
    return {root: coeff * scale for root, coeff in a.items()}


def matrix_size(system: str, n: int) -> int:
    return {"A": n, "B": 2 * n + 1, "C": 2 * n, "D": 2 * n}[system]


def matrix_labels(system: str, n: int) -> tuple[int, ...]:
    labels = list(range(1, n + 1))
    if system == "B":
        labels.append(0)
    if system in ("B", "C", "D"):
        labels.extend(range(-n, 0))
    return tuple(labels)


def realize_standard(root: Root, system: str, n: int) -> Mat:
    """The root-vector matrix of a standard positive root, as sparse entries."""
    i, j = root.i, root.j
    if root.kind == "diff":
        if not (1 <= i < j <= n):
            raise ValidationError("bad-root", f"{root} is not a positive root of {system} rank {n}")
        if system == "A":
            return {(i, j): Fraction(1)}
        return {(i, j): Fraction(1), (-j, -i): Fraction(-1)}
    if root.kind == "sum":
        if system not in ("B", "C", "D") or not (1 <= i < j <= n):
            raise ValidationError("bad-root", f"{root} is not a positive root of {system} rank {n}")
        if system == "C":
            return {(i, -j): Fraction(1), (j, -i): Fraction(1)}
        return {(i, -j): Fraction(1), (j, -i): Fraction(-1)}
    if root.kind == "double":
        if system != "C" or not (1 <= i <= n):
            raise ValidationError("bad-root", f"{root} is not a positive root of {system} rank {n}")
        return {(i, -i): Fraction(1)}
    # short
    if system != "B" or not (1 <= i <= n):
        raise ValidationError("bad-root", f"{root} is not a positive root of {system} rank {n}")
    return {(i, 0): Fraction(1), (0, -i): Fraction(-1)}


def lead_position(root: Root) -> tuple[int, int]:
    """The matrix position whose entry carries the root's coefficient (always 1)."""
    if root.kind == "diff":
        return (root.i, root.j)
    if root.kind == "sum":
        return (root.i, -root.j)
    if root.kind == "double":
        return (root.i, -root.i)
    return (root.i, 0)


def sparse_mul(a: Mat, b: Mat) -> Mat:
    by_row: dict[int, list[tuple[int, Fraction]]] = {}
    for (r, c), v in b.items():
        by_row.setdefault(r, []).append((c, v))
    out: Mat = {}
    for (r, c), v in a.items():
        for c2, v2 in by_row.get(c, ()):
            key = (r, c2)
            new = out.get(key, Fraction(0)) + v * v2
            if new == 0:
                out.pop(key, None)
            else:
                out[key] = new
    return out


def sparse_commutator(a: Mat, b: Mat) -> Mat:
    ab = sparse_mul(a, b)
    for key, v in sparse_mul(b, a).items():
        new = ab.get(key, Fraction(0)) - v
        if new == 0:
            ab.pop(key, None)
        else:
            ab[key] = new
    return ab


def expand_in_roots(mat: Mat, system: str, n: int) -> LieVec:
    """Write a matrix as a combination of root vectors; the residue must vanish."""
    remaining = dict(mat)
    out: LieVec = {}
    for root in standard_roots(system, n):
        coeff = remaining.get(lead_position(root), Fraction(0))
        if coeff == 0:
            continue
        out[root] = coeff
        for pos, v in realize_standard(root, system, n).items():
            new = remaining.get(pos, Fraction(0)) - coeff * v
            if new == 0:
                remaining.pop(pos, None)
            else:
                remaining[pos] = new
    if remaining:
        raise InternalError(f"matrix has a residue outside the root-vector span: {remaining}")
    return out


@lru_cache(maxsize=None)
def standard_roots(system: str, n: int) -> tuple[Root, ...]:
    return tuple(positive_roots(system, n))


@lru_cache(maxsize=None)
def _bracket_table(system: str, n: int) -> dict:
    """All brackets [e_a, e_b] of standard basis roots, as root coordinates."""
    roots = standard_roots(system, n)
    mats = {root: realize_standard(root, system, n) for root in roots}
    table = {}
    for a in roots:
        for b in roots:
            if a == b:
                continue
            comm = sparse_commutator(mats[a], mats[b])
            table[(a, b)] = tuple(sorted(expand_in_roots(comm, system, n).items(),
                                         key=lambda kv: kv[0].sort_key()))
    return table


def bracket_standard_roots(a: Root, b: Root, system: str, n: int) -> LieVec:
    if a == b:
        return {}
    return dict(_bracket_table(system, n)[(a, b)])


def height(root: Root, system: str, n: int) -> int:
    """Sum of simple-root coefficients in the standard rank-n system."""
    i, j = root.i, root.j
    if root.kind == "diff":
        return j - i
    if root.kind == "short":
        return n - i + 1
    if root.kind == "double":
        return 2 * (n - i) + 1
    # sum root
    if system == "B":
        return 2 * n - i - j + 2
    if system == "C":
        return 2 * n - i - j + 1
    return n - i if j == n else 2 * n - i - j


class WindowAlgebra:
    """The nilradical n_M over a finite window, with exact brackets."""

    def __init__(self, order: OrderSpec, indices):
        self.window = indices if isinstance(indices, Window) else Window.build(order, indices)
        self.order = order
        self.system = order.system
        self.rank = self.window.rank
        self.roots: tuple[Root, ...] = tuple(window_roots(self.window))
        self._root_set = frozenset(self.roots)
        # PBW basis order: height ascending (computed in the standard
        # relabeling), ties broken by (kind, indices)
        def pbw_key(root: Root):
            std = self.to_standard(root)
            return (height(std, self.system, self.rank), std.sort_key())
        self.pbw_roots: tuple[Root, ...] = tuple(sorted(self.roots, key=pbw_key))
        self._pbw_index = {root: k for k, root in enumerate(self.pbw_roots)}
        self._pbw_memo: dict = {}

    @staticmethod
    def standard(system: str, n: int) -> "WindowAlgebra":
        return WindowAlgebra(OrderSpec.natural(system), range(1, n + 1))

    @property
    def dim(self) -> int:
        return len(self.roots)

    def contains_root(self, root: Root) -> bool:
        return root in self._root_set

    def require_root(self, root: Root) -> Root:
        if root not in self._root_set:
            raise ValidationError("root-outside-window", f"root {root} is not in the window algebra")
        return root

    def pbw_position(self, root: Root) -> int:
        return self._pbw_index[self.require_root(root)]

    # -- relabeling through j_M -------------------------------------------------

    def to_standard(self, root: Root) -> Root:
        pos = self.window.position
        if root.kind == "diff":
            return Root.diff(pos(root.i), pos(root.j))
        if root.kind == "sum":
            return Root.sum_(pos(root.i), pos(root.j))
        if root.kind == "double":
            return Root.double(pos(root.i))
        return Root.short(pos(root.i))

    def from_standard(self, root: Root) -> Root:
        rel = self.window.relabel
        if root.kind == "diff":
            return Root.diff(rel(root.i), rel(root.j))
        if root.kind == "sum":
            return Root.sum_(rel(root.i), rel(root.j))
        if root.kind == "double":
            return Root.double(rel(root.i))
        return Root.short(rel(root.i))

    # -- brackets ----------------------------------------------------------------

    def bracket_roots(self, a: Root, b: Root) -> LieVec:
        self.require_root(a)
        self.require_root(b)
        std = bracket_standard_roots(self.to_standard(a), self.to_standard(b), self.system, self.rank)
        return {self.from_standard(root): coeff for root, coeff in std.items()}

    def bracket(self, x: LieVec, y: LieVec) -> LieVec:
        out: LieVec = {}
        for a, ca in x.items():
            for b, cb in y.items():
                if ca == 0 or cb == 0:
                    continue
                out = vec_add(out, self.bracket_roots(a, b), ca * cb)
        return out

    def structure_table(self) -> dict:
        """c(a, b) = [e_a, e_b] for every ordered pair of window roots."""
        return {(a, b): self.bracket_roots(a, b) for a in self.roots for b in self.roots}

    # -- matrices (standard labels) -----------------------------------------------

    def matrix_of(self, x: LieVec) -> Mat:
        out: Mat = {}
        for root, coeff in x.items():
            std = self.to_standard(self.require_root(root))
            for pos, v in realize_standard(std, self.system, self.rank).items():
                new = out.get(pos, Fraction(0)) + coeff * v
                if new == 0:
                    out.pop(pos, None)
                else:
                    out[pos] = new
        return out


def matrix_triples(root: Root, system: str, n: int) -> list[tuple[int, int, Fraction]]:
    """Printable sparse entries (row label, col label, value) of a root vector."""
    mat = realize_standard(root, system, n)
    return sorted(((r, c, v) for (r, c), v in mat.items()))
