"""The enveloping algebra U(n_M) in PBW normal form.

Elements are sparse combinations of PBW-ordered words: tuples of basis roots
nondecreasing in the algebra's basis order (positive roots sorted by height,
ties by index).  Out-of-order adjacent pairs are straightened with
``e_b e_a = e_a e_b + [e_b, e_a]``, which terminates because the algebra is
nilpotent: each rewrite either shortens the word or lowers its inversion
count.  Rewrites are memoized per algebra.

Symmetrization sends a degree-d monomial to the average of its d! orderings;
the degree is capped (default 8, override with NILCASCADE_MAX_DEGREE).
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass
from fractions import Fraction

from .errors import DegreeCapError
from .poly import SymPoly, monomial, monomial_letters
from .roots import Root

Word = tuple  # tuple[Root, ...]

DEFAULT_DEGREE_CAP = 8


def degree_cap() -> int:
    raw = os.environ.get("NILCASCADE_MAX_DEGREE")
    return int(raw) if raw else DEFAULT_DEGREE_CAP


class PbwElement:
    """Element of U(n_M): sparse map from PBW-ordered words to coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = {w: Fraction(c) for w, c in (terms or {}).items() if c != 0}

    @staticmethod
    def zero() -> "PbwElement":
        return PbwElement()

    @staticmethod
    def const(value) -> "PbwElement":
        return PbwElement({(): Fraction(value)})

    @staticmethod
    def generator(root: Root) -> "PbwElement":
        return PbwElement({(root,): Fraction(1)})

    def __add__(self, other: "PbwElement") -> "PbwElement":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, Fraction(0)) + c
        return PbwElement(out)

    def __sub__(self, other: "PbwElement") -> "PbwElement":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, Fraction(0)) - c
        return PbwElement(out)

    def __mul__(self, other) -> "PbwElement":
        if isinstance(other, (int, Fraction)):
            return PbwElement({w: c * other for w, c in self.terms.items()})
        raise TypeError("use pbw_mul(u, v, algebra) for products in U(n)")

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, PbwElement) and self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def top_degree_part(self) -> SymPoly:
        """The leading associated-graded piece, read back in S(n)."""
        d = self.degree()
        return SymPoly({monomial(*w): c for w, c in self.terms.items() if len(w) == d})

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=lambda w: (len(w), tuple(r.sort_key() for r in w))):
            c = self.terms[w]
            if not w:
                parts.append(f"{c}")
                continue
            body = "*".join(f"({root})" for root in w)
            coeff = "" if c == 1 else ("-" if c == -1 else f"{c}*")
            parts.append(f"{coeff}{body}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"PbwElement({self})"

    def to_json(self) -> list:
        out = []
        for w in sorted(self.terms, key=lambda w: (len(w), tuple(r.sort_key() for r in w))):
            out.append({
                "coeff": f"{self.terms[w].numerator}/{self.terms[w].denominator}",
                "word": [str(root) for root in w],
            })
        return out


def _normalize_word(word: Word, algebra) -> dict:
    memo = algebra._pbw_memo
    cached = memo.get(word)
    if cached is not None:
        return cached
    pos = algebra.pbw_position
    descent = next((k for k in range(len(word) - 1) if pos(word[k]) > pos(word[k + 1])), None)
    if descent is None:
        result = {word: Fraction(1)}
        memo[word] = result
        return result
    k = descent
    swapped = word[:k] + (word[k + 1], word[k]) + word[k + 2:]
    out = dict(_normalize_word(swapped, algebra))
    for z, cz in algebra.bracket_roots(word[k], word[k + 1]).items():
        shorter = word[:k] + (z,) + word[k + 2:]
        for w, c in _normalize_word(shorter, algebra).items():
            new = out.get(w, Fraction(0)) + cz * c
            if new == 0:
                out.pop(w, None)
            else:
                out[w] = new
    memo[word] = out
    return out


def pbw_normalize(value, algebra) -> PbwElement:
    """Normal form of a word (tuple of roots) or of a PbwElement."""
    if isinstance(value, PbwElement):
        items = value.terms.items()
    else:
        items = [(tuple(algebra.require_root(r) for r in value), Fraction(1))]
    out: dict = {}
    for word, coeff in items:
        for w, c in _normalize_word(tuple(word), algebra).items():
            out[w] = out.get(w, Fraction(0)) + coeff * c
    return PbwElement(out)


def pbw_mul(u: PbwElement, v: PbwElement, algebra) -> PbwElement:
    out: dict = {}
    for w1, c1 in u.terms.items():
        for w2, c2 in v.terms.items():
            for w, c in _normalize_word(w1 + w2, algebra).items():
                out[w] = out.get(w, Fraction(0)) + c1 * c2 * c
    return PbwElement(out)


def symmetrize(f: SymPoly, algebra) -> PbwElement:
    """The canonical symmetrization S(n) -> U(n), x^k -> x^k."""
    cap = degree_cap()
    out = PbwElement.zero()
    for m, coeff in f.terms.items():
        letters = monomial_letters(m)
        d = len(letters)
        if d > cap:
            raise DegreeCapError(f"symmetrization degree {d} exceeds the cap {cap}")
        if d == 0:
            out = out + PbwElement.const(coeff)
            continue
        arrangements = sorted(set(itertools.permutations(letters)),
                              key=lambda w: tuple(r.sort_key() for r in w))
        # each distinct arrangement occurs (prod of multiplicities!) times
        # among the d! orderings
        repeats = Fraction(1)
        for _, exp in m:
            repeats *= math.factorial(exp)
        weight = coeff * repeats / math.factorial(d)
        for word in arrangements:
            term = pbw_normalize(word, algebra)
            out = out + PbwElement({w: weight * c for w, c in term.terms.items()})
    return out


@dataclass(frozen=True)
class CentralityReport:
    central: bool
    witness: Root | None = None
    commutator: PbwElement | None = None


def is_central(u: PbwElement, algebra) -> CentralityReport:
    """Whether u commutes with every basis generator; on failure, a witness."""
    for gamma in algebra.pbw_roots:
        gen = PbwElement.generator(gamma)
        comm = pbw_mul(u, gen, algebra) - pbw_mul(gen, u, algebra)
        if comm:
            return CentralityReport(False, gamma, comm)
    return CentralityReport(True)
