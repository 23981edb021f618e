"""Linear forms, the skew form beta_lambda, Vergne polarizations, and the
coadjoint action in two independent realizations.

Linear forms come in three families: finitely supported root-value maps,
Cauchy-pattern forms on type A (lambda(e_{i'-j'}) = 1/(a_{i'} + b_{j'}) for
arithmetic rational streams a, b), and explicit tables over a named finite
window.  A table packs all root values of Phi_M into one square matrix over
window positions: the strict upper triangle holds difference roots, the
strict lower triangle holds sum roots, and the diagonal holds doubled roots
(type C) or short roots (type B).

Linear forms are identified with matrices through the trace pairing
mu(x) = tr(Mx); the dual root-vector matrices are computed from that pairing
directly, so the matrix transport g.mu and the ad-series transport agree
exactly by construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .algebra import LieVec, WindowAlgebra, matrix_labels, realize_standard, sparse_mul, vec_add
from .errors import UnsupportedFamilyError, ValidationError
from .generators import MinorSpec, xi_minor
from .poly import SymPoly
from .rationals import format_rational, parse_rational
from .roots import OrderSpec, Root, parse_root


# ---------------------------------------------------------------------------
# Rational streams and linear forms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RationalStream:
    """The arithmetic sequence start, start+step, ... of exact rationals."""

    start: Fraction
    step: Fraction

    def value(self, i: int) -> Fraction:
        return self.start + (i - 1) * self.step

    def to_json(self) -> dict:
        return {"kind": "arith", "start": format_rational(self.start), "step": format_rational(self.step)}

    @staticmethod
    def from_json(data: dict, path: str | None = None) -> "RationalStream":
        if not isinstance(data, dict) or data.get("kind") != "arith":
            raise ValidationError("bad-stream", "rational stream must be {'kind':'arith',...}", path)
        return RationalStream(parse_rational(data.get("start", 0), path), parse_rational(data.get("step", 0), path))


def _has_nonnegative_solution(c: Fraction, da: Fraction, db: Fraction) -> bool:
    """Whether c + u*da + v*db = 0 has a solution with integers u, v >= 0."""
    denom = math.lcm(c.denominator, da.denominator, db.denominator)
    ci, ai, bi = int(c * denom), int(da * denom), int(db * denom)
    if (ai > 0) == (bi > 0):
        # same sign: u is bounded by the value the other terms must cancel
        u_max = (-ci) // ai if ai > 0 else ci // (-ai)
        for u in range(0, max(-1, u_max) + 1):
            rest = -(ci + u * ai)
            if rest % bi == 0 and rest // bi >= 0:
                return True
        return False
    # opposite signs: v = -(ci + u*ai)/bi is eventually nonnegative, so the
    # question is whether the congruence u*ai = -ci (mod |bi|) is solvable
    return (-ci) % math.gcd(ai, abs(bi)) == 0


@dataclass(frozen=True)
class LinearForm:
    kind: str  # "finsupport" | "cauchy" | "table"
    entries: tuple = ()  # ((Root, Fraction), ...)
    a: RationalStream | None = None
    b: RationalStream | None = None
    window: tuple = ()  # table window indices, descending by the order
    matrix: tuple = ()  # table rows, tuple of tuples of Fraction

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def fin_support(values: dict) -> "LinearForm":
        entries = tuple(sorted(((r, Fraction(v)) for r, v in values.items() if v != 0),
                               key=lambda kv: kv[0].sort_key()))
        return LinearForm("finsupport", entries=entries)

    @staticmethod
    def cauchy(a: RationalStream, b: RationalStream) -> "LinearForm":
        if a.step == 0 or b.step == 0:
            raise ValidationError("bad-form", "Cauchy streams need nonzero steps (distinct entries)")
        if _has_nonnegative_solution(a.start + b.start, a.step, b.step):
            raise ValidationError("bad-form", "Cauchy streams hit a_i + b_j = 0 for some i, j")
        return LinearForm("cauchy", a=a, b=b)

    @staticmethod
    def window_table(window, matrix) -> "LinearForm":
        window = tuple(int(x) for x in window)
        rows = tuple(tuple(Fraction(v) for v in row) for row in matrix)
        if len(rows) != len(window) or any(len(row) != len(window) for row in rows):
            raise ValidationError("bad-form", "table matrix must be square over the window")
        return LinearForm("table", window=window, matrix=rows)

    # -- evaluation ------------------------------------------------------------

    def support(self) -> dict:
        return dict(self.entries)

    def _table_value(self, root: Root, order: OrderSpec) -> Fraction:
        try:
            pos = {idx: k for k, idx in enumerate(self.window)}
            ks = [pos[i] for i in root.indices()]
        except KeyError:
            raise ValidationError("outside-domain", f"root {root} is outside the table window")
        if root.kind == "diff":
            r, c = ks
            if not order.greater(root.i, root.j):
                raise ValidationError("bad-root", f"{root} is not positive for this order")
            return self.matrix[r][c]
        if root.kind == "sum":
            r, c = max(ks), min(ks)
            return self.matrix[r][c]
        return self.matrix[ks[0]][ks[0]]

    def value(self, root: Root, order: OrderSpec) -> Fraction:
        if self.kind == "finsupport":
            return dict(self.entries).get(root, Fraction(0))
        if self.kind == "cauchy":
            if order.system != "A" or root.kind != "diff":
                raise UnsupportedFamilyError("Cauchy forms are defined on type A difference roots only")
            return 1 / (self.a.value(root.i) + self.b.value(root.j))
        return self._table_value(root, order)

    def evaluator(self, order: OrderSpec):
        cache = dict(self.entries) if self.kind == "finsupport" else None
        if cache is not None:
            return lambda root: cache.get(root, Fraction(0))
        return lambda root: self.value(root, order)

    def check_window(self, order: OrderSpec) -> None:
        """Table windows must be listed descending by the order."""
        if self.kind != "table":
            return
        for a, b in zip(self.window, self.window[1:]):
            if not order.greater(a, b):
                raise ValidationError("bad-form", f"table window not descending at {a},{b}")

    # -- serialization -----------------------------------------------------------

    def to_json(self) -> dict:
        if self.kind == "finsupport":
            return {"kind": "finsupport",
                    "entries": [{"root": str(r), "value": format_rational(v)} for r, v in self.entries]}
        if self.kind == "cauchy":
            return {"kind": "cauchy", "a": self.a.to_json(), "b": self.b.to_json()}
        return {"kind": "table", "window": list(self.window),
                "matrix": [[format_rational(v) for v in row] for row in self.matrix]}

    @staticmethod
    def from_json(data: dict, path: str | None = None) -> "LinearForm":
        if not isinstance(data, dict) or "kind" not in data:
            raise ValidationError("bad-form", "linear form must be an object with a 'kind'", path)
        kind = data["kind"]
        if kind == "finsupport":
            values: dict = {}
            for entry in data.get("entries", []):
                root = parse_root(entry["root"], path)
                values[root] = values.get(root, Fraction(0)) + parse_rational(entry["value"], path)
            return LinearForm.fin_support(values)
        if kind == "cauchy":
            return LinearForm.cauchy(RationalStream.from_json(data.get("a", {}), path),
                                     RationalStream.from_json(data.get("b", {}), path))
        if kind == "table":
            if "window" not in data or "matrix" not in data:
                raise ValidationError("bad-form", "table form needs 'window' and 'matrix'", path)
            matrix = [[parse_rational(v, path) for v in row] for row in data["matrix"]]
            return LinearForm.window_table(data["window"], matrix)
        raise ValidationError("bad-form", f"unknown linear form kind {kind!r}", path)


# ---------------------------------------------------------------------------
# The skew form and Vergne polarizations
# ---------------------------------------------------------------------------


def unit_basis(algebra: WindowAlgebra) -> list[LieVec]:
    return [{root: Fraction(1)} for root in algebra.pbw_roots]


def eval_on_vector(value_of, vec: LieVec) -> Fraction:
    return sum((coeff * value_of(root) for root, coeff in vec.items()), Fraction(0))


@dataclass(frozen=True)
class SkewForm:
    gram: tuple  # tuple of tuples of Fraction

    @property
    def size(self) -> int:
        return len(self.gram)

    def rank(self) -> int:
        return linalg.rank([list(row) for row in self.gram])


def gram(form: LinearForm, algebra: WindowAlgebra, basis: list | None = None) -> SkewForm:
    """Gram matrix of beta_lambda(x, y) = lambda([x, y]) over the basis."""
    vectors = basis if basis is not None else unit_basis(algebra)
    value_of = form.evaluator(algebra.order)
    size = len(vectors)
    rows = []
    for s in range(size):
        row = []
        for t in range(size):
            if t < s:
                row.append(-rows[t][s])
            elif t == s:
                row.append(Fraction(0))
            else:
                row.append(eval_on_vector(value_of, algebra.bracket(vectors[s], vectors[t])))
        rows.append(row)
    return SkewForm(tuple(tuple(r) for r in rows))


def beta_rank(form: LinearForm, algebra: WindowAlgebra, basis: list | None = None) -> int:
    return gram(form, algebra, basis).rank()


def beta_kernel(form: LinearForm, algebra: WindowAlgebra, basis: list | None = None) -> list[LieVec]:
    vectors = basis if basis is not None else unit_basis(algebra)
    sk = gram(form, algebra, basis)
    kernel = linalg.kernel_basis([list(row) for row in sk.gram])
    return [_combine(vectors, coords) for coords in kernel]


def _combine(vectors: list, coords) -> LieVec:
    out: LieVec = {}
    for coeff, vec in zip(coords, vectors):
        if coeff != 0:
            out = vec_add(out, vec, coeff)
    return out


def lower_central_series(algebra: WindowAlgebra, basis: list | None = None) -> list[list[LieVec]]:
    """C^1 = n, C^{k+1} = [n, C^k], down to the last nonzero term."""
    vectors = basis if basis is not None else unit_basis(algebra)
    series = [vectors]
    current = vectors
    while current:
        nxt_span = linalg.SpanBuilder(algebra.dim)
        nxt_vecs: list[LieVec] = []
        for b in vectors:
            for v in current:
                w = algebra.bracket(b, v)
                if w and nxt_span.add(_root_coords(w, algebra)):
                    nxt_vecs.append(w)
        if not nxt_vecs:
            break
        series.append(nxt_vecs)
        current = nxt_vecs
    return series


def _root_coords(vec: LieVec, algebra: WindowAlgebra) -> list[Fraction]:
    coords = [Fraction(0)] * algebra.dim
    for root, coeff in vec.items():
        coords[algebra.pbw_position(root)] = coeff
    return coords


def ideal_flag(algebra: WindowAlgebra, basis: list | None = None) -> list[LieVec]:
    """A complete flag of ideals: prefix spans of the returned vector list.

    The lower central series is refined from the deepest term outward; any
    subspace wedged between consecutive terms is automatically an ideal.
    Vectors are expressed in the coordinates of the chosen basis.
    """
    vectors = basis if basis is not None else unit_basis(algebra)
    dim = len(vectors)
    series = lower_central_series(algebra, basis)
    span = linalg.SpanBuilder(dim)
    flag: list[LieVec] = []
    for layer in reversed(series):
        for vec in layer:
            coords = _basis_coords(vec, vectors, algebra)
            if span.add(coords):
                flag.append(vec)
    if len(flag) != dim:
        raise ValidationError("bad-basis", "basis vectors are not linearly independent")
    return flag


def _basis_coords(vec: LieVec, vectors: list, algebra: WindowAlgebra) -> list[Fraction]:
    """Coordinates of vec in the span of the basis vectors (exact solve)."""
    columns = [_root_coords(v, algebra) for v in vectors]
    target = _root_coords(vec, algebra)
    rows = len(target)
    system = [[columns[c][r] for c in range(len(columns))] + [target[r]] for r in range(rows)]
    echelon, pivots = linalg.row_echelon(system)
    if len(columns) in pivots:
        raise ValidationError("bad-basis", "vector lies outside the span of the basis")
    coords = [Fraction(0)] * len(columns)
    for r, c in enumerate(pivots):
        coords[c] = echelon[r][-1]
    return coords


def vergne_polarization(form: LinearForm, algebra: WindowAlgebra, basis: list | None = None) -> list[LieVec]:
    """Basis of p = sum of kernels of beta_lambda restricted to the flag."""
    vectors = basis if basis is not None else unit_basis(algebra)
    flag = ideal_flag(algebra, basis)
    value_of = form.evaluator(algebra.order)
    dim = len(vectors)
    full = [[eval_on_vector(value_of, algebra.bracket(flag[s], flag[t])) for t in range(dim)]
            for s in range(dim)]
    span = linalg.SpanBuilder(algebra.dim)
    out: list[LieVec] = []
    for i in range(1, dim + 1):
        sub = [row[:i] for row in full[:i]]
        for coords in linalg.kernel_basis(sub):
            vec = _combine(flag[:i], coords)
            if vec and span.add(_root_coords(vec, algebra)):
                out.append(vec)
    return out


# ---------------------------------------------------------------------------
# Coadjoint action
# ---------------------------------------------------------------------------


def _dual_matrix(root: Root, system: str, n: int) -> dict:
    mat = realize_standard(root, system, n)
    norm = sum(v * v for v in mat.values())
    return {(c, r): v / norm for (r, c), v in mat.items()}


def _sparse_exp(mat: dict, labels) -> dict:
    out = {(l, l): Fraction(1) for l in labels}
    power = dict(mat)
    k = 1
    while power:
        for key, v in power.items():
            new = out.get(key, Fraction(0)) + v
            if new == 0:
                out.pop(key, None)
            else:
                out[key] = new
        k += 1
        power = {key: v / k for key, v in sparse_mul(power, mat).items()}
    return out


def coadjoint_matrix(x: LieVec, form: LinearForm, algebra: WindowAlgebra) -> dict:
    """Transport of the form by exp(x), computed as g.mu = (g mu g^-1)_low.

    Returns the transported values on every window root.  Only the strictly
    lower part of g mu g^-1 can meet a root vector under the trace pairing,
    so the projection is implicit in reading off tr(g mu g^-1 . e_alpha).
    """
    value_of = form.evaluator(algebra.order)
    system, n = algebra.system, algebra.rank
    labels = matrix_labels(system, n)
    big = algebra.matrix_of(x)
    g = _sparse_exp(big, labels)
    ginv = _sparse_exp({k: -v for k, v in big.items()}, labels)
    mu: dict = {}
    for root in algebra.roots:
        val = value_of(root)
        if val == 0:
            continue
        for pos, v in _dual_matrix(algebra.to_standard(root), system, n).items():
            new = mu.get(pos, Fraction(0)) + val * v
            if new == 0:
                mu.pop(pos, None)
            else:
                mu[pos] = new
    transported = sparse_mul(sparse_mul(g, mu), ginv)
    out = {}
    for root in algebra.roots:
        std = realize_standard(algebra.to_standard(root), system, n)
        total = sum((transported.get((c, r), Fraction(0)) * v for (r, c), v in std.items()), Fraction(0))
        out[root] = total
    return out


def coadjoint_series(x: LieVec, form: LinearForm, algebra: WindowAlgebra,
                     basis: list | None = None) -> list | dict:
    """Transport by exp(x) via (exp x).f (y) = sum f((-ad_x)^i y) / i!.

    With the default basis, returns {root: value}; with an explicit sub-basis
    (for subalgebras such as the Heisenberg ones), returns the list of values
    on the basis vectors.
    """
    value_of = form.evaluator(algebra.order)
    vectors = basis if basis is not None else unit_basis(algebra)
    values = []
    for y in vectors:
        total = eval_on_vector(value_of, y)
        current = y
        factorial = 1
        i = 0
        while current:
            i += 1
            factorial *= i
            current = {r: -c for r, c in algebra.bracket(x, current).items()}
            if current:
                total += eval_on_vector(value_of, current) / factorial
        values.append(total)
    if basis is not None:
        return values
    return {root: value for root, value in zip(algebra.pbw_roots, values)}


# ---------------------------------------------------------------------------
# Heisenberg subalgebras and A-type orbit invariants
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Heisenberg:
    """hei_n inside the standard A-type window of rank n + 2."""

    n: int
    algebra: WindowAlgebra
    xs: tuple
    ys: tuple
    z: dict

    @property
    def basis(self) -> list[LieVec]:
        return [dict(v) for v in self.xs + self.ys + (self.z,)]


def heisenberg(n: int) -> Heisenberg:
    if n < 1:
        raise ValidationError("bad-rank", f"hei_n needs n >= 1, got {n}")
    algebra = WindowAlgebra.standard("A", n + 2)
    xs = tuple({Root.diff(1, 1 + i): Fraction(1)} for i in range(1, n + 1))
    ys = tuple({Root.diff(1 + i, n + 2): Fraction(1)} for i in range(1, n + 1))
    z = {Root.diff(1, n + 2): Fraction(1)}
    return Heisenberg(n, algebra, xs, ys, z)


def orbit_xi_polys(algebra: WindowAlgebra) -> list[SymPoly]:
    """The corner minors xi_1..xi_[n/2] of an A-type window."""
    if algebra.system != "A":
        raise ValidationError("bad-system", "orbit invariants are defined for type A")
    idx = algebra.window.indices
    n = len(idx)
    out = []
    for i in range(1, n // 2 + 1):
        rows = idx[:i]
        cols = tuple(reversed(idx[n - i:]))
        out.append(xi_minor(MinorSpec("A", algebra.order, rows, cols)))
    return out


def orbit_invariants(form: LinearForm, algebra: WindowAlgebra) -> list[Fraction]:
    value_of = form.evaluator(algebra.order)
    return [xi.evaluate(value_of) for xi in orbit_xi_polys(algebra)]


def invariants_regular(values: list, n: int) -> bool:
    """The regularity condition: every needed invariant is nonzero."""
    m = n // 2
    needed = values if n % 2 == 1 else values[: m - 1]
    return all(v != 0 for v in needed)


def regular_orbit_ideal(form: LinearForm, algebra: WindowAlgebra):
    """Generators xi_i - c_i of the orbit ideal, or None off the regular set."""
    values = orbit_invariants(form, algebra)
    if not invariants_regular(values, algebra.rank):
        return None
    return [xi - SymPoly.const(c) for xi, c in zip(orbit_xi_polys(algebra), values)]
