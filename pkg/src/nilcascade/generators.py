"""Central and Poisson-central generators: determinant minors, Pfaffians,
canonical cascade generators, and the generator families of the rank ideals.

Type A minors are determinants in difference-root variables over a row
sequence I (descending) and a column sequence J (ascending from the minimum
side); type C uses sum-root variables with the doubled-root substitution on
index coincidences.  Types B/D use Pfaffians in sum-root variables,
normalized so that the matching e_{i1+i2} e_{i3+i4} ... has coefficient +1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .algebra import WindowAlgebra
from .cascade import CascadeState, cascade_step, finite_cascade
from .enveloping import PbwElement, symmetrize
from .errors import InternalError, ValidationError
from .poly import SymPoly, monomial
from .roots import OrderSpec, Root, Window


# ---------------------------------------------------------------------------
# Minors and Pfaffians
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MinorSpec:
    """Row/column index sequences for a xi minor (types A and C)."""

    system: str
    order: OrderSpec
    rows: tuple  # i_1, ..., i_k with eps_{i_1} > ... > eps_{i_k}
    cols: tuple  # A: j_1, ..., j_k ascending (j_1 lowest); C: descending

    def check(self) -> "MinorSpec":
        if self.system not in ("A", "C"):
            raise ValidationError("bad-minor", f"xi minors exist for types A and C, not {self.system}")
        if len(self.rows) != len(self.cols) or not self.rows:
            raise ValidationError("bad-minor", "row and column sequences must have equal positive length")
        greater = self.order.greater
        for a, b in zip(self.rows, self.rows[1:]):
            if not greater(a, b):
                raise ValidationError("bad-minor", f"row sequence not descending at {a},{b}")
        cols = self.cols
        if self.system == "A":
            for a, b in zip(cols, cols[1:]):
                if not greater(b, a):
                    raise ValidationError("bad-minor", f"column sequence not ascending at {a},{b}")
            if not greater(self.rows[-1], cols[-1]):
                raise ValidationError("bad-minor", "row block must lie strictly above the column block")
        else:
            for a, b in zip(cols, cols[1:]):
                if not greater(a, b):
                    raise ValidationError("bad-minor", f"column sequence not descending at {a},{b}")
        return self


def _minor_entry(spec: MinorSpec, s: int, t: int) -> tuple[Fraction, Root]:
    """(scale, root) of the (s, t) entry, 0-based."""
    k = len(spec.rows)
    i = spec.rows[s]
    j = spec.cols[k - 1 - t]
    if spec.system == "A":
        return Fraction(1), Root.diff(i, j)
    if i == j:
        return Fraction(2), Root.double(i)
    return Fraction(1), Root.sum_(i, j)


def xi_minor(spec: MinorSpec) -> SymPoly:
    spec.check()
    k = len(spec.rows)
    entries = [[_minor_entry(spec, s, t) for t in range(k)] for s in range(k)]
    terms: dict = {}
    for perm in itertools.permutations(range(k)):
        sign = _perm_sign(perm)
        coeff = Fraction(sign)
        roots = []
        for s in range(k):
            scale, root = entries[s][perm[s]]
            coeff *= scale
            roots.append(root)
        m = monomial(*roots)
        terms[m] = terms.get(m, Fraction(0)) + coeff
    return SymPoly(terms)


def _perm_sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        k = start
        while not seen[k]:
            seen[k] = True
            k = perm[k]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def xi_pfaffian(indices, order: OrderSpec) -> SymPoly:
    """Pfaffian in sum-root variables over a descending even-length sequence."""
    idx = tuple(indices)
    if len(idx) % 2 != 0 or not idx:
        raise ValidationError("bad-pfaffian", f"index sequence must have even positive length, got {len(idx)}")
    if len(set(idx)) != len(idx):
        raise ValidationError("bad-pfaffian", "index sequence has repeated indices")
    for a, b in zip(idx, idx[1:]):
        if not order.greater(a, b):
            raise ValidationError("bad-pfaffian", f"index sequence not descending at {a},{b}")
    return _pfaffian_expand(idx)


def _pfaffian_expand(idx: tuple) -> SymPoly:
    if not idx:
        return SymPoly.const(1)
    out = SymPoly.zero()
    first = idx[0]
    rest = idx[1:]
    sign = 1
    for k, partner in enumerate(rest):
        sub = rest[:k] + rest[k + 1:]
        term = SymPoly.var(Root.sum_(first, partner)) * _pfaffian_expand(sub)
        out = out + (term if sign > 0 else -term)
        sign = -sign
    return out


def pfaffian_square_matrix(indices) -> list[list[SymPoly]]:
    """The antisymmetrized matrix whose determinant is +-xi_I squared."""
    idx = tuple(indices)
    size = len(idx)
    rows = []
    for s in range(size):
        row = []
        for t in range(size):
            u, v = s, size - 1 - t
            if u == v:
                row.append(SymPoly.zero())
            else:
                entry = SymPoly.var(Root.sum_(idx[u], idx[v]))
                row.append(entry if u < v else -entry)
        rows.append(row)
    return rows


def poly_det(matrix: list[list[SymPoly]]) -> SymPoly:
    size = len(matrix)
    out = SymPoly.zero()
    for perm in itertools.permutations(range(size)):
        term = SymPoly.const(_perm_sign(perm))
        for s in range(size):
            term = term * matrix[s][perm[s]]
            if not term:
                break
        out = out + term
    return out


def pfaffian_square_check(indices, order: OrderSpec):
    """Verify xi_I^2 = +-det of the displayed matrix; report the sign used."""
    pf = xi_pfaffian(indices, order)
    square = pf * pf
    determinant = poly_det(pfaffian_square_matrix(indices))
    if square == determinant:
        return True, 1
    if square == -determinant:
        return True, -1
    return False, 0


# ---------------------------------------------------------------------------
# Canonical cascade generators
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CanonicalGenerator:
    beta: Root
    xi: SymPoly
    delta: PbwElement
    window: tuple  # minimal window N_k, sorted descending by the order


def _cascade_prefix_to(beta: Root, order: OrderSpec):
    """Run the cascade until beta is emitted; None if beta is not a cascade root."""
    targets = set(beta.indices())
    bound = 0
    for idx in targets:
        if not order.contains(idx):
            return None
        geq = order.count_geq(idx)
        leq = order.count_leq(idx)
        if order.system == "A":
            reach = min(c for c in (geq, leq) if c is not None)
        else:
            if geq is None:
                return None  # only ever consumed from the maximum side
            reach = geq
        bound = max(bound, reach)
    state = CascadeState.initial()
    for _ in range(bound + 1):
        step = cascade_step(state, order)
        if step is None:
            return None
        root, state = step
        if root == beta:
            return state
        if targets <= state.consumed:
            return None
    return None


def canonical_generator(beta: Root, order: OrderSpec) -> CanonicalGenerator:
    """xi_beta over the minimal window N_k, and its symmetrization Delta_beta."""
    state = _cascade_prefix_to(beta, order)
    if state is None:
        raise ValidationError("not-cascade-root", f"{beta} is not emitted by the cascade of this order")
    emitted = state.emitted
    if order.system == "A":
        rows = tuple(r.i for r in emitted)
        cols = tuple(r.j for r in emitted)
        xi = xi_minor(MinorSpec("A", order, rows, cols))
    elif order.system == "C":
        rows = tuple(r.i for r in emitted)
        xi = xi_minor(MinorSpec("C", order, rows, rows))
    else:
        seq = []
        for root in emitted:
            hi, lo = root.i, root.j
            if not order.greater(hi, lo):
                hi, lo = lo, hi
            seq.extend([hi, lo])
        xi = xi_pfaffian(tuple(seq), order)
    window = Window.build(order, state.consumed)
    algebra = WindowAlgebra(order, window)
    delta = symmetrize(xi, algebra)
    return CanonicalGenerator(beta, xi, delta, window.indices)


def finite_cascade_xi(system: str, n: int, beta: Root) -> SymPoly:
    """Closed-form xi for a finite-cascade root of the standard rank-n system.

    B/D difference roots and the odd-rank B short root belong to the finite
    cascade but have no xi formula; they are rejected.
    """
    if beta not in finite_cascade(system, n):
        raise ValidationError("not-cascade-root", f"{beta} is not in the rank-{n} cascade of type {system}")
    order = OrderSpec.natural(system)
    if system == "A":
        i = beta.i
        return xi_minor(MinorSpec("A", order, tuple(range(1, i + 1)),
                                  tuple(range(n, n - i, -1))))
    if system == "C":
        i = beta.i
        rows = tuple(range(1, i + 1))
        return xi_minor(MinorSpec("C", order, rows, rows))
    if beta.kind != "sum":
        raise ValidationError("no-xi-formula",
                              f"no closed xi formula is available for cascade root {beta}")
    return xi_pfaffian(tuple(range(1, beta.j + 1)), order)


def finite_cascade_with_xi(system: str, n: int):
    """The finite cascade roots that carry a xi formula, with those xis."""
    out = []
    for beta in finite_cascade(system, n):
        if system in ("B", "D") and beta.kind != "sum":
            continue
        out.append((beta, finite_cascade_xi(system, n, beta)))
    return out


# ---------------------------------------------------------------------------
# Upper-right pairs and the ideals I(p, k)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class UpperRightPair:
    kind: str  # "general" | "diagonal" | "maxrow"
    i: int = 0
    j: int = 0

    @staticmethod
    def general(i: int, j: int) -> "UpperRightPair":
        return UpperRightPair("general", i, j)

    @staticmethod
    def diagonal(i: int) -> "UpperRightPair":
        return UpperRightPair("diagonal", i)

    @staticmethod
    def maxrow(j: int) -> "UpperRightPair":
        return UpperRightPair("maxrow", 0, j)

    def check(self, order: OrderSpec) -> "UpperRightPair":
        if self.kind == "general":
            if order.system != "A":
                raise ValidationError("bad-pair", f"pair (i,j) with positive j needs type A, not {order.system}")
            if not order.greater(self.i, self.j):
                raise ValidationError("bad-pair", f"general pair needs eps_{self.i} > eps_{self.j}")
        elif self.kind == "diagonal":
            if order.system == "A":
                raise ValidationError("bad-pair", "diagonal pairs (i,-i) need type B, C or D")
            if not order.contains(self.i):
                raise ValidationError("bad-pair", f"index {self.i} is not covered by the order")
        else:
            if order.system not in ("B", "D"):
                raise ValidationError("bad-pair", "max-row pairs need type B or D")
            m = order.maximum()
            if m is None:
                raise ValidationError("bad-pair", "max-row pair needs an order with a maximal element")
            if self.j == m or not order.contains(self.j):
                raise ValidationError("bad-pair", f"max-row column bound {self.j} must differ from the maximum {m}")
        return self

    def __str__(self) -> str:
        if self.kind == "general":
            return f"({self.i},{self.j})"
        if self.kind == "diagonal":
            return f"({self.i},-{self.i})"
        return f"maxrow({self.j})"


def parse_pair(text: str) -> UpperRightPair:
    text = text.strip().replace(" ", "")
    if text.startswith("maxrow(") and text.endswith(")"):
        try:
            return UpperRightPair.maxrow(int(text[7:-1]))
        except ValueError:
            raise ValidationError("bad-pair", f"cannot parse pair {text!r}")
    if text.startswith("(") and text.endswith(")") and "," in text:
        left, right = text[1:-1].split(",", 1)
        try:
            i, j = int(left), int(right)
        except ValueError:
            raise ValidationError("bad-pair", f"cannot parse pair {text!r}")
        if j == -i:
            return UpperRightPair.diagonal(i)
        if j < 0:
            return UpperRightPair.maxrow(-j)
        return UpperRightPair.general(i, j)
    raise ValidationError("bad-pair", f"cannot parse pair {text!r}")


@dataclass(frozen=True)
class IdealGenerators:
    generators: tuple  # tuple[SymPoly, ...]
    is_zero_ideal: bool


def _is_zero_ideal(pair: UpperRightPair, k: int, order: OrderSpec) -> bool:
    if pair.kind == "general":
        above = order.count_geq(pair.i)
        below = order.count_leq(pair.j)
        return (above is not None and above < k) or (below is not None and below < k)
    if pair.kind == "diagonal":
        above = order.count_geq(pair.i)
        need = k if order.system == "C" else 2 * k
        return above is not None and above < need
    strictly_above = order.count_gt(pair.j)
    # the maximum itself never yields a generator, so a single element above
    # the bound means the ideal is zero
    return strictly_above is not None and strictly_above <= 1


def ideal_generators(pair: UpperRightPair, k: int, window: Window, order: OrderSpec) -> IdealGenerators:
    """Window truncation of the I(p, k) generator family, plus the zero flag."""
    pair.check(order)
    if k < 1:
        raise ValidationError("bad-pair", f"k must be >= 1, got {k}")
    if pair.kind == "maxrow" and k != 1:
        raise ValidationError("bad-pair", "max-row pairs admit only k = 1")
    zero = _is_zero_ideal(pair, k, order)
    gens: list[SymPoly] = []
    idx = window.indices  # descending
    if pair.kind == "general":
        region_rows = [a for a in idx if order.compare(a, pair.i) >= 0]
        region_cols = [a for a in idx if order.compare(a, pair.j) <= 0]
        for rows in itertools.combinations(region_rows, k):
            for cols_desc in itertools.combinations(region_cols, k):
                spec = MinorSpec("A", order, rows, tuple(reversed(cols_desc)))
                gens.append(xi_minor(spec))
    elif pair.kind == "diagonal":
        region = [a for a in idx if order.compare(a, pair.i) >= 0]
        if order.system == "C":
            for rows in itertools.combinations(region, k):
                for cols in itertools.combinations(region, k):
                    gens.append(xi_minor(MinorSpec("C", order, rows, cols)))
        else:
            for rows in itertools.combinations(region, 2 * k):
                gens.append(xi_pfaffian(rows, order))
    else:
        m = order.maximum()
        if m not in idx:
            raise ValidationError("bad-window", f"max-row pair needs the maximum {m} inside the window")
        for s in idx:
            if s != m and order.greater(s, pair.j):
                gens.append(SymPoly.var(Root.sum_(m, s)))
    return IdealGenerators(tuple(gens), zero)
