"""The nontriviality criterion: region matrices of a linear form, exact
ranks, and the three-valued verdict on whether the primitive Poisson ideal
at the form is nonzero.

Region matrices [lambda]_p select an upper-right rectangle of the form's
values.  For type A the entry at (i', j') is the value on the difference
root; for B/C/D the off-diagonal entry is the value on the sum root,
oriented by the order (positive when the row index dominates) so that the
B/D region matrix is skew-symmetric and its rank matches the vanishing of
the Pfaffian generators; type C diagonals carry twice the doubled-root
value, B/D diagonals are zero.

"Rank not maximal" means: the rank is finite and either both region sizes
are infinite or the least finite size exceeds the rank.  A verdict witness
additionally requires the matching generator ideal to be nonzero, which for
B/D diagonal pairs strengthens the size bound by one (an odd-size
skew-symmetric region can never have full rank, so falling short of full
rank there certifies nothing).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .cascade import cascade
from .coadjoint import LinearForm
from .errors import UnsupportedFamilyError, ValidationError
from .generators import UpperRightPair, ideal_generators
from .roots import OrderSpec, Root, Window


# ---------------------------------------------------------------------------
# Region geometry
# ---------------------------------------------------------------------------


def _in_row_region(order: OrderSpec, pair: UpperRightPair, i: int) -> bool:
    if pair.kind == "general":
        return order.compare(i, pair.i) >= 0
    if pair.kind == "diagonal":
        return order.compare(i, pair.i) >= 0
    return i == order.maximum()


def _in_col_region(order: OrderSpec, pair: UpperRightPair, j: int) -> bool:
    if pair.kind == "general":
        return order.compare(j, pair.j) <= 0
    if pair.kind == "diagonal":
        return order.compare(j, pair.i) >= 0
    return order.compare(j, pair.j) > 0  # strict: the bound column is excluded


def region_sizes(order: OrderSpec, pair: UpperRightPair):
    """(row count, column count); None means infinite."""
    if pair.kind == "general":
        return order.count_geq(pair.i), order.count_leq(pair.j)
    if pair.kind == "diagonal":
        c = order.count_geq(pair.i)
        return c, c
    return 1, order.count_gt(pair.j)


def entry_value(form: LinearForm, order: OrderSpec, pair_kind: str, system: str,
                i: int, j: int) -> Fraction:
    """The [lambda]_p entry at row i, column j (both positive indices)."""
    if system == "A":
        return form.value(Root.diff(i, j), order)
    if i == j:
        if system == "C":
            return 2 * form.value(Root.double(i), order)
        return Fraction(0)
    value = form.value(Root.sum_(i, j), order)
    if system == "C":
        return value
    return value if order.greater(i, j) else -value


def lambda_matrix(form: LinearForm, pair: UpperRightPair, order: OrderSpec,
                  rows, cols) -> list[list[Fraction]]:
    """The requested finite submatrix of [lambda]_p, rows and columns sorted
    descending by the order."""
    pair.check(order)
    form.check_window(order)
    row_list = _sorted_desc(order, rows)
    col_list = _sorted_desc(order, cols)
    for i in row_list:
        if not _in_row_region(order, pair, i):
            raise ValidationError("outside-region", f"row {i} is outside the region of {pair}")
    for j in col_list:
        if not _in_col_region(order, pair, j):
            raise ValidationError("outside-region", f"column {j} is outside the region of {pair}")
    return [[entry_value(form, order, pair.kind, order.system, i, j) for j in col_list]
            for i in row_list]


def _sorted_desc(order: OrderSpec, indices) -> list[int]:
    out = list(dict.fromkeys(int(x) for x in indices))
    result: list[int] = []
    for x in out:
        k = 0
        while k < len(result) and order.greater(result[k], x):
            k += 1
        result.insert(k, x)
    return result


# ---------------------------------------------------------------------------
# Finite-support rank within a region
# ---------------------------------------------------------------------------


def _support_pairs(form: LinearForm, system: str) -> dict:
    """Index pairs (i, j) carrying nonzero entries of [lambda]_p matrices."""
    out: dict = {}
    for root, value in form.entries:
        if system == "A":
            if root.kind == "diff":
                out[(root.i, root.j)] = value
        else:
            if root.kind == "sum":
                out[(root.i, root.j)] = value
                out[(root.j, root.i)] = value
            elif root.kind == "double" and system == "C":
                out[(root.i, root.i)] = value
    return out


def support_rank(form: LinearForm, pair: UpperRightPair, order: OrderSpec) -> int:
    """Rank of [lambda]_p for a finitely supported form: all rows and columns
    outside the support's bounding set vanish, so the rank is that of the
    finite support submatrix inside the region."""
    system = order.system
    pairs = _support_pairs(form, system)
    if pair.kind == "maxrow":
        m = order.maximum()
        nonzero = any(i == m and j != m and _in_col_region(order, pair, j) and v != 0
                      for (i, j), v in pairs.items())
        return 1 if nonzero else 0
    inside = {(i, j): v for (i, j), v in pairs.items()
              if _in_row_region(order, pair, i) and _in_col_region(order, pair, j)}
    if not inside:
        return 0
    if pair.kind == "general":
        rows = sorted({i for i, _ in inside})
        cols = sorted({j for _, j in inside})
    else:
        support = sorted({i for ij in inside for i in ij})
        rows = cols = support
    matrix = [[entry_value(form, order, pair.kind, system, i, j) for j in cols] for i in rows]
    return linalg.rank(matrix)


def rank_not_maximal(form: LinearForm, pair: UpperRightPair, order: OrderSpec):
    """Decide "rank of [lambda]_p is not maximal"; returns (bool, info).

    Supports finitely supported forms (exact support-window rank) and
    type-A Cauchy forms (every minor is a nonzero Cauchy determinant, so the
    rank is maximal for every pair).
    """
    pair.check(order)
    if form.kind == "cauchy":
        if order.system != "A":
            raise UnsupportedFamilyError("Cauchy forms live on type A")
        return False, {"certificate": "cauchy-determinant", "pair": str(pair)}
    if form.kind != "finsupport":
        raise UnsupportedFamilyError(f"rank decision is not available for {form.kind!r} forms")
    rank = support_rank(form, pair, order)
    rows, cols = region_sizes(order, pair)
    finite_sizes = [s for s in (rows, cols) if s is not None]
    not_maximal = (not finite_sizes) or min(finite_sizes) > rank
    info = {"pair": str(pair), "rank": rank, "rows": rows, "cols": cols}
    return not_maximal, info


# ---------------------------------------------------------------------------
# Verdicts
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Verdict:
    kind: str  # "nonzero" | "zero" | "undetermined"
    witness: dict | None
    certificate: str
    window_report: tuple | None = None

    def to_json(self) -> dict:
        out = {"verdict": self.kind, "certificate": self.certificate}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.window_report is not None:
            out["window_report"] = list(self.window_report)
        return out


def _witness_k(pair: UpperRightPair, rank: int, order: OrderSpec):
    """The k for which the witness asserts I(p, k) vanishing on the form,
    or None when the matching ideal is zero (no certificate)."""
    rows, cols = region_sizes(order, pair)
    if pair.kind == "general" or (pair.kind == "diagonal" and order.system == "C"):
        k = rank + 1
        ok = all(s is None or s >= k for s in (rows, cols))
        return k if ok else None
    if pair.kind == "diagonal":
        if rank % 2 != 0:
            return None  # skew region ranks are even; nothing to certify
        k = rank // 2 + 1
        ok = cols is None or cols >= 2 * k
        return k if ok else None
    # maxrow: only rank 0 with at least one generator column besides the max
    if rank != 0:
        return None
    return 1 if (cols is None or cols >= 2) else None


def _pool_desc(order: OrderSpec, indices) -> list[int]:
    return _sorted_desc(order, indices)


def _candidate_pairs(form: LinearForm, order: OrderSpec) -> list[UpperRightPair]:
    system = order.system
    support_idx = set()
    for root, _ in form.entries:
        if system == "A" and root.kind == "diff":
            support_idx.update(root.indices())
        elif system != "A" and root.kind in ("sum", "double"):
            support_idx.update(root.indices())
    pool = _pool_desc(order, support_idx)
    pairs: list[UpperRightPair] = []
    if system == "A":
        rows = list(pool)
        cols = list(pool)
        if pool:
            above = order.strictly_above(pool[0])
            below = order.strictly_below(pool[-1])
            if above is not None:
                rows.insert(0, above)
            if below is not None:
                cols.append(below)
        else:
            seed = _seed_pair(order)
            if seed:
                rows, cols = [seed[0]], [seed[1]]
        for i in rows:
            for j in cols:
                if order.contains(i) and order.contains(j) and order.greater(i, j):
                    pairs.append(UpperRightPair.general(i, j))
        return pairs
    # B, C, D: diagonal candidates
    diag = list(pool)
    if pool:
        below = order.strictly_below(pool[-1])
        if below is not None:
            diag.append(below)
    else:
        fallback = order.maximum()
        if fallback is None:
            fallback = 1 if order.contains(1) else order.min_remaining(())
        if fallback is not None:
            diag.append(fallback)
    pairs.extend(UpperRightPair.diagonal(i) for i in diag)
    if system in ("B", "D"):
        m = order.maximum()
        if m is not None:
            partners = _pool_desc(order, {j for (i, j) in _support_pairs(form, system) if i == m and j != m})
            cols = [j for j in partners if j != m]
            bel = order.strictly_below(m)
            if bel is not None and bel not in cols:
                cols.append(bel)
            pairs.extend(UpperRightPair.maxrow(j) for j in cols)
    return pairs


def _seed_pair(order: OrderSpec):
    """Some valid (i, j) with eps_i > eps_j, for the empty-support search."""
    top = order.maximum()
    if top is not None:
        below = order.strictly_below(top)
        if below is not None:
            return (top, below)
        return None
    start = 1 if order.contains(1) else order.min_remaining(())
    if start is None:
        return None
    below = order.strictly_below(start)
    if below is not None:
        return (start, below)
    above = order.strictly_above(start)
    if above is not None:
        return (above, start)
    return None


def nontriviality_verdict(order: OrderSpec, form: LinearForm, max_window: int = 8) -> Verdict:
    """Decide whether the primitive Poisson ideal at the form is nonzero."""
    form.check_window(order)
    first = cascade(order, 1)
    if first.roots:
        return Verdict("nonzero", {"kind": "cascade", "root": str(first.roots[0])},
                       "cascade-nonempty")
    if form.kind == "cauchy":
        if order.system != "A":
            raise UnsupportedFamilyError("Cauchy forms live on type A")
        return Verdict("zero", None, "cauchy-all-minors-nonzero")
    if form.kind == "finsupport":
        for pair in _candidate_pairs(form, order):
            rank = support_rank(form, pair, order)
            k = _witness_k(pair, rank, order)
            if k is None:
                continue
            rows, cols = region_sizes(order, pair)
            witness = {"kind": "pair", "pair": str(pair), "k": k, "rank": rank,
                       "rows": "inf" if rows is None else rows,
                       "cols": "inf" if cols is None else cols}
            return Verdict("nonzero", witness, "rank-not-maximal")
        return Verdict("undetermined", None, "no-witness-found", ())
    # window tables describe the form on a finite window only; report ranks
    report = _window_ladder(form, order, max_window)
    return Verdict("undetermined", None, "window-table", tuple(report))


def _window_ladder(form: LinearForm, order: OrderSpec, max_window: int) -> list[dict]:
    idx = list(form.window)[:max_window]
    report = []
    pairs: list[UpperRightPair] = []
    if order.system == "A":
        pairs = [UpperRightPair.general(i, j) for i in idx for j in idx if order.greater(i, j)]
    else:
        pairs = [UpperRightPair.diagonal(i) for i in idx]
    for pair in pairs:
        ranks = []
        for size in range(2, len(idx) + 1, 2):
            sub = idx[:size]
            rows = [i for i in sub if _in_row_region(order, pair, i)]
            cols = [j for j in sub if _in_col_region(order, pair, j)]
            if not rows or not cols:
                continue
            matrix = lambda_matrix(form, pair, order, rows, cols)
            ranks.append({"window": len(sub), "rank": linalg.rank(matrix)})
        if ranks:
            report.append({"pair": str(pair), "ranks": ranks})
    return report


# ---------------------------------------------------------------------------
# The rank-locus equivalence (windowed)
# ---------------------------------------------------------------------------


def rank_locus_equivalence(form: LinearForm, pair: UpperRightPair, k: int,
                           window: Window, order: OrderSpec) -> bool:
    """Whether (all window generators of I(p,k) vanish at the form) iff
    (the window rank of [lambda]_p is below k'), with k' = 2k for B/D
    diagonal pairs and k otherwise."""
    gens = ideal_generators(pair, k, window, order)
    value_of = form.evaluator(order)
    all_vanish = all(g.evaluate(value_of) == 0 for g in gens.generators)
    rows = [i for i in window.indices if _in_row_region(order, pair, i)]
    cols = [j for j in window.indices if _in_col_region(order, pair, j)]
    if rows and cols:
        rank = linalg.rank(lambda_matrix(form, pair, order, rows, cols))
    else:
        rank = 0
    k_prime = 2 * k if (pair.kind == "diagonal" and order.system in ("B", "D")) else k
    return all_vanish == (rank < k_prime)
